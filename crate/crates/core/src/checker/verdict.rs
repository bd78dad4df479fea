//! Whether a supersingular K3 surface with Artin invariant σ in
//! characteristic p carries an Enriques involution.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::case::{build_case, CaseCertificate};
use crate::arithmetic::{arth, find_d, is_odd_prime, legendre, verify_norm_bound, wants_square, GAMMA2_DISC};
use crate::discriminant::DiscriminantGroup;
use crate::error::{Error, Result};
use crate::glue::coprime_complement_disc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "Yes",
            Answer::No => "No",
            Answer::Unknown => "Unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Reason {
    /// The Kummer surface of a product of supersingular elliptic curves; cited.
    KummerSigma1,
    ConstructedCase {
        d: i64,
        certificate: Box<CaseCertificate>,
        /// Invariant factors of `l(K) = (Z/p)^{2σ} ⊕ l(NS)`.
        #[serde(with = "crate::linalg::bigint_vec_serde")]
        k_invariant_factors: Vec<BigInt>,
    },
    /// σ ≥ 6; at σ = 6 carries `Arth(p, 6, d(Γ(2)))`, which is always false.
    SigmaBoundExceeded { arth_gamma2: Option<bool> },
    NoValidD,
    /// A construction check failed; never expected.
    CaseFailed { d: i64, failed: Vec<String> },
}

impl Reason {
    fn tag(&self) -> &'static str {
        match self {
            Reason::KummerSigma1 => "KummerSigma1",
            Reason::ConstructedCase { .. } => "ConstructedCase",
            Reason::SigmaBoundExceeded { .. } => "SigmaBoundExceeded",
            Reason::NoValidD => "NoValidD",
            Reason::CaseFailed { .. } => "CaseFailed",
        }
    }
}

/// The parity rule used to choose `d`, beside Arth applied to `d(NS)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArthCrosscheck {
    pub d: i64,
    pub d_ns: i64,
    /// `(−d/p) = +1` for even σ, `−1` for odd σ.
    pub parity_rule: bool,
    /// `Arth(p, σ, d(NS))`.
    pub arth_ns: bool,
}

impl ArthCrosscheck {
    pub fn agree(&self) -> bool {
        self.parity_rule == self.arth_ns
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub p: i64,
    pub sigma: u32,
    pub answer: Answer,
    pub reason: Reason,
    pub arth_crosscheck: Option<ArthCrosscheck>,
}

impl Verdict {
    pub fn d(&self) -> Option<i64> {
        match &self.reason {
            Reason::ConstructedCase { d, .. } | Reason::CaseFailed { d, .. } => Some(*d),
            _ => None,
        }
    }

    pub fn certificate(&self) -> Option<&CaseCertificate> {
        match &self.reason {
            Reason::ConstructedCase { certificate, .. } => Some(certificate),
            _ => None,
        }
    }
}

/// `4^a` in `d(T(X_{σ,d})) = 4^a d`.
fn t_factor(sigma: u32) -> i64 {
    match sigma {
        2 => 16,
        3 => 256,
        _ => 1024,
    }
}

fn crosscheck(p: i64, sigma: u32, d: i64) -> Result<ArthCrosscheck> {
    let want = if wants_square(sigma)? { 1 } else { -1 };
    let d_ns = -t_factor(sigma) * d;
    Ok(ArthCrosscheck {
        d,
        d_ns,
        parity_rule: legendre(-d, p)? == want,
        arth_ns: arth(p, sigma, d_ns)?,
    })
}

#[derive(Clone)]
struct CaseData {
    cert: CaseCertificate,
    dg_ns: Option<DiscriminantGroup>,
}

fn case_data(sigma: u32, d: i64) -> Result<CaseData> {
    let cert = build_case(sigma, d)?;
    let dg_ns = if cert.passed {
        Some(DiscriminantGroup::of_lattice(&cert.neron_severi_lattice()?)?)
    } else {
        None
    };
    Ok(CaseData { cert, dg_ns })
}

fn validate(p: i64, sigma: u32) -> Result<()> {
    if !is_odd_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if !(1..=10).contains(&sigma) {
        return Err(Error::SigmaOutOfRange(sigma));
    }
    Ok(())
}

fn decide_with<F>(p: i64, sigma: u32, case: F) -> Result<Verdict>
where
    F: FnOnce(u32, i64) -> Result<CaseData>,
{
    validate(p, sigma)?;
    let verdict = |answer, reason, arth_crosscheck| Verdict {
        p,
        sigma,
        answer,
        reason,
        arth_crosscheck,
    };
    if sigma == 1 {
        return Ok(verdict(Answer::Yes, Reason::KummerSigma1, None));
    }
    if sigma >= 6 {
        let arth_gamma2 = if sigma == 6 { Some(arth(p, 6, GAMMA2_DISC)?) } else { None };
        return Ok(verdict(Answer::No, Reason::SigmaBoundExceeded { arth_gamma2 }, None));
    }
    let Some(d) = find_d(p, sigma)? else {
        return Ok(verdict(Answer::Unknown, Reason::NoValidD, None));
    };
    let cross = crosscheck(p, sigma, d)?;
    let data = case(sigma, d)?;
    match (&data.dg_ns, verify_norm_bound(p, d)) {
        (Some(dg_ns), true) => {
            let lp = DiscriminantGroup::abstract_group(&vec![BigInt::from(p); 2 * sigma as usize]);
            let k = coprime_complement_disc(dg_ns, &lp)?;
            Ok(verdict(
                Answer::Yes,
                Reason::ConstructedCase {
                    d,
                    certificate: Box::new(data.cert),
                    k_invariant_factors: k.invariant_factors(),
                },
                Some(cross),
            ))
        }
        _ => Ok(verdict(
            Answer::Unknown,
            Reason::CaseFailed {
                d,
                failed: data.cert.failed_checks().map(|c| c.name.clone()).collect(),
            },
            Some(cross),
        )),
    }
}

pub fn decide_enriques(p: i64, sigma: u32) -> Result<Verdict> {
    decide_with(p, sigma, case_data)
}

/// Verdicts for every odd prime `p ≤ pmax` and `σ ∈ 1..=10`.
#[derive(Clone, Debug)]
pub struct Survey {
    pub pmax: i64,
    pub rows: Vec<Verdict>,
    /// `(p, σ)` in the range `p = 19` or `p > 23` where `Yes ⇔ σ ≤ 5` fails.
    pub violations: Vec<(i64, u32)>,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    p: i64,
    sigma: u32,
    answer: String,
    reason: &'a str,
    d: Option<i64>,
    parity_rule: Option<bool>,
    arth_ns: Option<bool>,
}

impl Survey {
    pub fn answer(&self, p: i64, sigma: u32) -> Option<Answer> {
        self.rows
            .iter()
            .find(|v| v.p == p && v.sigma == sigma)
            .map(|v| v.answer)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for v in &self.rows {
            let x = v.arth_crosscheck.as_ref();
            w.serialize(CsvRow {
                p: v.p,
                sigma: v.sigma,
                answer: v.answer.to_string(),
                reason: v.reason.tag(),
                d: v.d(),
                parity_rule: x.map(|c| c.parity_rule),
                arth_ns: x.map(|c| c.arth_ns),
            })
            .map_err(|e| Error::Parse(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        let primes: BTreeSet<i64> = self.rows.iter().map(|v| v.p).collect();
        out.push_str(&format!("odd primes p <= {}: {}\n", self.pmax, primes.len()));
        out.push_str("p     sigma=1..10\n");
        for p in &primes {
            let cells: Vec<&str> = (1..=10)
                .map(|s| match self.answer(*p, s) {
                    Some(Answer::Yes) => "Y",
                    Some(Answer::No) => "N",
                    _ => "?",
                })
                .collect();
            out.push_str(&format!("{p:<5} {}\n", cells.join(" ")));
        }
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        for v in &self.rows {
            *counts.entry(v.answer.to_string()).or_default() += 1;
        }
        let parts: Vec<String> = counts.iter().map(|(k, n)| format!("{k}: {n}")).collect();
        out.push_str(&format!("{}\n", parts.join(", ")));
        let disagree = self
            .rows
            .iter()
            .filter(|v| v.arth_crosscheck.as_ref().is_some_and(|c| !c.agree()))
            .count();
        out.push_str(&format!(
            "parity rule and Arth on d(NS) disagree on {disagree} Yes rows (even sigma, p = 1 mod 4)\n"
        ));
        if self.violations.is_empty() {
            out.push_str("Yes <=> sigma <= 5 holds for p = 19 and every 23 < p <= pmax\n");
        } else {
            out.push_str(&format!("Yes <=> sigma <= 5 FAILS at {:?}\n", self.violations));
        }
        out
    }
}

pub fn survey(pmax: i64) -> Result<Survey> {
    if pmax < 3 {
        return Err(Error::Parse(format!("pmax must be at least 3, got {pmax}")));
    }
    let primes: Vec<i64> = (3..=pmax).filter(|&p| is_odd_prime(p)).collect();
    let mut needed = BTreeSet::new();
    for &p in &primes {
        for sigma in 2..=5 {
            if let Some(d) = find_d(p, sigma)? {
                needed.insert((sigma, d));
            }
        }
    }
    let cache: BTreeMap<(u32, i64), CaseData> = needed
        .into_par_iter()
        .map(|(s, d)| case_data(s, d).map(|c| ((s, d), c)))
        .collect::<Result<_>>()?;
    let rows: Vec<Verdict> = primes
        .par_iter()
        .flat_map_iter(|&p| (1..=10).map(move |s| (p, s)))
        .map(|(p, s)| decide_with(p, s, |s, d| Ok(cache[&(s, d)].clone())))
        .collect::<Result<_>>()?;
    let violations = rows
        .iter()
        .filter(|v| v.p == 19 || v.p > 23)
        .filter(|v| (v.answer == Answer::Yes) != (v.sigma <= 5) || v.answer == Answer::Unknown)
        .map(|v| (v.p, v.sigma))
        .collect();
    Ok(Survey {
        pmax,
        rows,
        violations,
    })
}
