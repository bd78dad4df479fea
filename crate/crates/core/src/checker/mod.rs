//! The Enriques-involution pipeline: the Γ(2)-in-Λ construction, the
//! per-(σ, d) case certificates, and verdicts for `(p, σ)`.

mod case;
mod k3;
mod verdict;

pub use case::{build_case, source_gram, verify_certificate, CaseCertificate, K3Record, Verification};
pub use k3::{gamma2_basis, gamma2_complement_basis, gamma2_in_k3, u2_e8_2, Gamma2Report};
pub use verdict::{decide_enriques, survey, Answer, ArthCrosscheck, Reason, Survey, Verdict};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::linalg::{bigint_to_cell, IntMatrix};

/// A named boolean result with the data needed to recompute it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Value,
}

impl Check {
    fn new(name: &str, passed: bool, witness: Value) -> Self {
        Self {
            name: name.to_string(),
            passed,
            witness,
        }
    }
}

fn big(x: &BigInt) -> Value {
    bigint_to_cell(x)
}

fn bigs(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(big).collect())
}

fn matrix(m: &IntMatrix) -> Value {
    Value::Array(m.row_iter().map(bigs).collect())
}

/// Cyclic orders, largest first, as the discriminant formulas are written.
fn descending(mut xs: Vec<BigInt>) -> Vec<BigInt> {
    xs.sort_by(|a, b| b.cmp(a));
    xs
}
