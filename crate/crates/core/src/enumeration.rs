//! Short vectors of definite lattices by Fincke-Pohst enumeration over
//! an exact rational LDLᵀ factorization.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Definiteness, IntegralLattice};
use crate::linalg::IntMatrix;

/// All nonzero vectors with `|(v,v)| ≤ bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortVectorReport {
    pub bound: BigInt,
    /// `(coordinates, norm)`, each `v` with positive leading entry followed
    /// by `−v`, representatives in lexicographic order.
    pub vectors: Vec<(Vec<BigInt>, BigInt)>,
    /// Signed norm of smallest absolute value, if any vector was found.
    pub min_norm: Option<BigInt>,
    pub counts: BTreeMap<BigInt, usize>,
}

/// `Q(x) = Σᵢ dᵢ (xᵢ + Σ_{j>i} μᵢⱼ xⱼ)²` for a positive definite form.
struct Factorization {
    diag: Vec<BigRational>,
    mu: Vec<Vec<BigRational>>,
}

fn factor_positive(g: &IntMatrix) -> Factorization {
    let n = g.rows();
    let mut q: Vec<Vec<BigRational>> = g
        .row_iter()
        .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let v = &q[k][l] - &q[k][i] * &q[i][l];
                q[k][l] = v;
            }
        }
    }
    Factorization {
        diag: (0..n).map(|i| q[i][i].clone()).collect(),
        mu: q,
    }
}

/// Smallest integer `s ≥ 0` with `s² ≥ r`.
fn sqrt_ceil(r: &BigRational) -> BigInt {
    let c = r.ceil().to_integer();
    if !c.is_positive() {
        return BigInt::zero();
    }
    let s = c.sqrt();
    if &s * &s >= c {
        s
    } else {
        s + 1
    }
}

fn positive_gram(lattice: &IntegralLattice) -> Result<(IntMatrix, Definiteness)> {
    match lattice.definiteness()? {
        Some(Definiteness::Positive) => Ok((lattice.gram().clone(), Definiteness::Positive)),
        Some(Definiteness::Negative) => Ok((
            lattice.gram().scale(&BigInt::from(-1)),
            Definiteness::Negative,
        )),
        None => {
            let (plus, minus) = lattice.signature()?;
            Err(Error::Indefinite { plus, minus })
        }
    }
}

/// Calls `visit` on every nonzero `x` with `Q(x) ≤ bound` (Q positive definite).
fn enumerate<F: FnMut(&[BigInt])>(g: &IntMatrix, bound: &BigInt, mut visit: F) {
    let n = g.rows();
    if n == 0 {
        return;
    }
    let f = factor_positive(g);
    let mut x = vec![BigInt::zero(); n];
    let budget = BigRational::from_integer(bound.clone());
    descend(&f, n - 1, &budget, &mut x, &mut visit);
}

fn descend<F: FnMut(&[BigInt])>(
    f: &Factorization,
    level: usize,
    budget: &BigRational,
    x: &mut Vec<BigInt>,
    visit: &mut F,
) {
    let n = x.len();
    let mut centre = BigRational::zero();
    for j in level + 1..n {
        if !x[j].is_zero() {
            centre -= &f.mu[level][j] * BigRational::from_integer(x[j].clone());
        }
    }
    let d = &f.diag[level];
    let radius = sqrt_ceil(&(budget / d));
    let lo = centre.floor().to_integer() - &radius;
    let hi = centre.ceil().to_integer() + &radius;
    let mut xi = lo;
    while xi <= hi {
        let off = BigRational::from_integer(xi.clone()) - &centre;
        let used = d * &off * &off;
        if &used <= budget {
            x[level] = xi.clone();
            let rest = budget - used;
            if level == 0 {
                if x.iter().any(|c| !c.is_zero()) {
                    visit(x);
                }
            } else {
                descend(f, level - 1, &rest, x, visit);
            }
        }
        xi += 1;
    }
    x[level] = BigInt::zero();
}

fn leading_positive(v: &[BigInt]) -> bool {
    v.iter().find(|c| !c.is_zero()).is_some_and(Signed::is_positive)
}

/// Complete list of nonzero vectors with `|(v,v)| ≤ bound` in a definite lattice.
pub fn short_vectors(lattice: &IntegralLattice, bound: u64) -> Result<ShortVectorReport> {
    let (pos, def) = positive_gram(lattice)?;
    let bound = BigInt::from(bound);
    let mut reps: Vec<Vec<BigInt>> = Vec::new();
    enumerate(&pos, &bound, |v| {
        if leading_positive(v) {
            reps.push(v.to_vec());
        }
    });
    reps.sort();
    let mut vectors = Vec::with_capacity(2 * reps.len());
    let mut counts = BTreeMap::new();
    for v in reps {
        let norm = lattice.norm(&v);
        let neg: Vec<BigInt> = v.iter().map(|c| -c).collect();
        *counts.entry(norm.clone()).or_insert(0) += 2;
        vectors.push((v, norm.clone()));
        vectors.push((neg, norm));
    }
    let min_norm = counts.keys().min_by_key(|k| k.abs()).cloned();
    debug_assert!(match def {
        Definiteness::Negative => counts.keys().all(|k| k.is_negative()),
        Definiteness::Positive => counts.keys().all(|k| k.is_positive()),
    });
    Ok(ShortVectorReport {
        bound,
        vectors,
        min_norm,
        counts,
    })
}

/// Nonzero norm of smallest absolute value, signed per the form.
pub fn min_norm(lattice: &IntegralLattice) -> Result<BigInt> {
    let (pos, _) = positive_gram(lattice)?;
    if lattice.rank() == 0 {
        return Err(Error::Dimension("rank-0 lattice has no nonzero vectors".into()));
    }
    // a basis vector already attains its own diagonal entry
    let cap = pos.diag().into_iter().min().expect("rank ≥ 1");
    let mut best: Option<BigInt> = None;
    enumerate(&pos, &cap, |v| {
        let n = lattice.norm(v);
        if best.as_ref().is_none_or(|b| n.abs() < b.abs()) {
            best = Some(n);
        }
    });
    Ok(best.expect("basis vectors lie within the cap"))
}

/// Number of vectors of norm exactly `t`.
pub fn count_norm(lattice: &IntegralLattice, t: i64) -> Result<usize> {
    let (pos, _) = positive_gram(lattice)?;
    let target = BigInt::from(t);
    let mut count = 0;
    enumerate(&pos, &target.abs(), |v| {
        if lattice.norm(v) == target {
            count += 1;
        }
    });
    Ok(count)
}

/// Gram ≡ 0 mod 2 with diagonal ≡ 0 mod 4: every norm is then divisible
/// by 4, so no vector has norm ±2.
pub fn norms_divisible_by_four(lattice: &IntegralLattice) -> bool {
    let g = lattice.gram();
    let four = BigInt::from(4);
    g.entries().iter().all(|x| x.is_even()) && g.diag().iter().all(|x| x.is_multiple_of(&four))
}
