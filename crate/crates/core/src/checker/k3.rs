//! `Γ(2) ↪ Λ` by the diagonal embedding and its orthogonal complement.

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::json;

use super::{big, bigs, descending, Check};
use crate::discriminant::DiscriminantGroup;
use crate::embedding::LatticeEmbedding;
use crate::error::Result;
use crate::glue::glue_data;
use crate::lattice::{Builtin, IntegralLattice};
use crate::linalg::IntMatrix;

/// Coordinates of Λ = U³ ⊕ E8²: hyperbolic pairs at 0, 2, 4, E8 blocks at 6 and 14.
const U1: usize = 0;
const U2: usize = 2;
const U3: usize = 4;
const E8A: usize = 6;
const E8B: usize = 14;
const RANK: usize = 22;

fn unit_row(entries: &[(usize, i64)]) -> Vec<BigInt> {
    let mut row = vec![BigInt::from(0); RANK];
    for &(i, c) in entries {
        row[i] = BigInt::from(c);
    }
    row
}

fn rows_matrix(rows: Vec<Vec<BigInt>>) -> IntMatrix {
    IntMatrix::from_big_rows(rows, RANK).expect("rows have length 22")
}

/// `u ↦ u₁ + u₂`, `v ↦ v₁ + v₂`, `e ↦ (e, e)`.
pub fn gamma2_basis() -> IntMatrix {
    let mut rows = vec![
        unit_row(&[(U1, 1), (U2, 1)]),
        unit_row(&[(U1 + 1, 1), (U2 + 1, 1)]),
    ];
    rows.extend((0..8).map(|i| unit_row(&[(E8A + i, 1), (E8B + i, 1)])));
    rows_matrix(rows)
}

/// Basis of the complement with Gram exactly `U ⊕ U(2) ⊕ E8(2)`; rows
/// `2..12` realise the `U(2) ⊕ E8(2)` summand in the order `x, y, e₁..e₈`.
pub fn gamma2_complement_basis() -> IntMatrix {
    let mut rows = vec![
        unit_row(&[(U3, 1)]),
        unit_row(&[(U3 + 1, 1)]),
        unit_row(&[(U1, 1), (U2, -1)]),
        unit_row(&[(U1 + 1, 1), (U2 + 1, -1)]),
    ];
    rows.extend((0..8).map(|i| unit_row(&[(E8A + i, 1), (E8B + i, -1)])));
    rows_matrix(rows)
}

/// `U(2) ⊕ E8(2)` with basis `x, y, e₁, …, e₈`.
pub fn u2_e8_2() -> IntegralLattice {
    IntegralLattice::hyperbolic()
        .twist(2)
        .direct_sum(&IntegralLattice::e8().twist(2))
        .with_label("U(2)+E8(2)")
}

fn u_plus_ambient() -> IntegralLattice {
    IntegralLattice::hyperbolic().direct_sum(&u2_e8_2())
}

#[derive(Clone, Debug, Serialize)]
pub struct Gamma2Report {
    /// Complement computed as an integer kernel, in Λ coordinates.
    pub complement: IntMatrix,
    pub checks: Vec<Check>,
}

impl Gamma2Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn gamma2_in_k3() -> Result<Gamma2Report> {
    let lambda = IntegralLattice::builtin(Builtin::LambdaK3);
    let emb = LatticeEmbedding::new(lambda.clone(), gamma2_basis())?;
    let mut checks = Vec::new();

    let g2 = emb.sublattice();
    let gamma_twist = IntegralLattice::builtin(Builtin::Gamma).twist(2);
    let dg = DiscriminantGroup::of_lattice(&g2)?;
    let inv = descending(dg.invariant_factors());
    checks.push(Check::new(
        "gamma2_gram",
        g2.gram() == gamma_twist.gram() && g2.discriminant() == BigInt::from(-1024),
        json!({"discriminant": big(&g2.discriminant()), "invariant_factors": bigs(&inv)}),
    ));
    let idx = emb.saturation_index();
    checks.push(Check::new(
        "gamma2_primitive",
        idx == BigInt::from(1),
        json!({"saturation_index": big(&idx)}),
    ));

    let comp = emb.orthogonal_complement().embedding;
    let c = comp.sublattice();
    let target = u_plus_ambient();
    checks.push(Check::new(
        "complement_rank",
        c.rank() == 12,
        json!({"rank": c.rank()}),
    ));
    let (plus, minus) = c.signature()?;
    checks.push(Check::new(
        "complement_signature",
        (plus, minus) == (2, 10),
        json!({"signature": [plus, minus]}),
    ));
    checks.push(Check::new(
        "complement_even",
        c.is_even(),
        json!({"even": c.is_even()}),
    ));
    checks.push(Check::new(
        "complement_discriminant",
        c.discriminant() == target.discriminant(),
        json!({"value": big(&c.discriminant()), "expected": big(&target.discriminant())}),
    ));
    let cinv = descending(DiscriminantGroup::of_lattice(&c)?.invariant_factors());
    checks.push(Check::new(
        "complement_divisors",
        cinv == vec![BigInt::from(2); 10],
        json!({"invariant_factors": bigs(&cinv)}),
    ));
    let explicit = LatticeEmbedding::new(lambda.clone(), gamma2_complement_basis())?;
    let same_span = explicit.same_span(&comp);
    let gram_matches = explicit.sublattice().gram() == target.gram();
    checks.push(Check::new(
        "explicit_isometry",
        same_span && gram_matches,
        json!({"same_span": same_span, "gram_matches": gram_matches}),
    ));
    let glue = glue_data(&lambda, emb.basis(), comp.basis())?;
    let order = glue.order().clone();
    checks.push(Check::new(
        "glue_order",
        order == BigInt::from(1024),
        json!({"order": big(&order), "invariants": bigs(glue.invariants())}),
    ));

    Ok(Gamma2Report {
        complement: comp.basis().clone(),
        checks,
    })
}
