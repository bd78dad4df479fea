//! Glue between a primitive sublattice and its orthogonal complement, and
//! the criterion for extending `φ ⊕ ψ` across the glue.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::abelian::{FiniteAbelianGroup, Subgroup};
use crate::discriminant::{mod_two, DiscriminantGroup};
use crate::error::{Error, Result};
use crate::lattice::IntegralLattice;
use crate::linalg::{IntMatrix, RatMatrix};

/// The glue group `S = L/(M ⊕ M⊥)` and the isomorphism `γ: S₁ → S₂`.
///
/// `γ` is stored as its graph: every generator of `S` is a pair
/// `(s₁, γ(s₁))` in the canonical coordinates of `l(M)` and `l(M⊥)`.
#[derive(Clone, Debug)]
pub struct GlueData {
    pub dg_m: DiscriminantGroup,
    pub dg_mperp: DiscriminantGroup,
    pub pairs: Vec<(Vec<BigInt>, Vec<BigInt>)>,
    s: Subgroup,
    s1: Subgroup,
    s2: Subgroup,
}

impl GlueData {
    pub fn order(&self) -> &BigInt {
        self.s.order()
    }

    /// Invariant factors of `S`.
    pub fn invariants(&self) -> &[BigInt] {
        self.s.invariants()
    }

    pub fn s1(&self) -> &Subgroup {
        &self.s1
    }

    pub fn s2(&self) -> &Subgroup {
        &self.s2
    }

    pub fn is_trivial(&self) -> bool {
        self.s.is_trivial()
    }

    fn sum_group(&self) -> FiniteAbelianGroup {
        self.dg_m.group().direct_sum(&self.dg_mperp.group())
    }
}

/// Computes the glue of `L` over `M ⊕ M⊥`, where both pieces are given by
/// basis rows in the coordinates of `ambient` and together span a
/// finite-index sublattice.
pub fn glue_data(
    ambient: &IntegralLattice,
    m_basis: &IntMatrix,
    mperp_basis: &IntMatrix,
) -> Result<GlueData> {
    let r = m_basis.rows();
    let stacked = m_basis.vstack(mperp_basis)?;
    if !stacked.is_square() || stacked.cols() != ambient.rank() {
        return Err(Error::Dimension(
            "sublattice and complement must have complementary ranks".into(),
        ));
    }
    let g = ambient.gram();
    let gram_m = m_basis.congruence(g)?;
    let gram_mp = mperp_basis.congruence(g)?;
    if !m_basis.checked_mul(g)?.checked_mul(&mperp_basis.transpose())?.is_zero() {
        return Err(Error::Dimension("the two pieces are not orthogonal".into()));
    }
    let m = IntegralLattice::new(gram_m)?;
    let mp = IntegralLattice::new(gram_mp)?;
    let dg_m = DiscriminantGroup::of_lattice(&m)?;
    let dg_mperp = DiscriminantGroup::of_lattice(&mp)?;
    let inv = RatMatrix::from_int(&stacked)
        .inverse()
        .ok_or(Error::Degenerate)?;

    // each ambient basis vector, written in the sum basis, projects to l(M) ⊕ l(M⊥)
    let mut pairs: Vec<(Vec<BigInt>, Vec<BigInt>)> = Vec::new();
    for row in inv.to_rows() {
        let (c1, c2): (Vec<BigRational>, Vec<BigRational>) =
            (row[..r].to_vec(), row[r..].to_vec());
        let a = dg_m.coords_of(m.gram(), &c1)?;
        let b = dg_mperp.coords_of(mp.gram(), &c2)?;
        if a.iter().chain(&b).all(Zero::is_zero) || pairs.iter().any(|p| p.0 == a && p.1 == b) {
            continue;
        }
        pairs.push((a, b));
    }
    let sum = dg_m.group().direct_sum(&dg_mperp.group());
    let joined: Vec<Vec<BigInt>> = pairs
        .iter()
        .map(|(a, b)| a.iter().chain(b).cloned().collect())
        .collect();
    let s = sum.subgroup(&joined);
    let s1 = dg_m.group().subgroup(&pairs.iter().map(|p| p.0.clone()).collect::<Vec<_>>());
    let s2 = dg_mperp
        .group()
        .subgroup(&pairs.iter().map(|p| p.1.clone()).collect::<Vec<_>>());
    if s1.order() != s.order() {
        return Err(Error::ProjectionNotInjective("l(M)"));
    }
    if s2.order() != s.order() {
        return Err(Error::ProjectionNotInjective("l(M⊥)"));
    }
    for (a, b) in &pairs {
        let q = dg_m.q(a).expect("lattice form") + dg_mperp.q(b).expect("lattice form");
        let q = mod_two(&q);
        if !q.is_zero() {
            return Err(Error::NotIsotropic { value: q });
        }
    }
    Ok(GlueData {
        dg_m,
        dg_mperp,
        pairs,
        s,
        s1,
        s2,
    })
}

/// A group endomorphism given by the images of the canonical generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupEndo {
    images: Vec<Vec<BigInt>>,
}

impl GroupEndo {
    pub fn from_images(images: Vec<Vec<BigInt>>) -> Self {
        Self { images }
    }

    pub fn scalar(k: usize, c: i64) -> Self {
        let images = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| if i == j { BigInt::from(c) } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        Self { images }
    }

    pub fn identity(k: usize) -> Self {
        Self::scalar(k, 1)
    }

    pub fn negation(k: usize) -> Self {
        Self::scalar(k, -1)
    }

    pub fn images(&self) -> &[Vec<BigInt>] {
        &self.images
    }

    /// Fails if some generator of order `n` maps to an element whose order
    /// does not divide `n`.
    pub fn check_homomorphism(&self, group: &FiniteAbelianGroup) -> Result<()> {
        if self.images.len() != group.rank() {
            return Err(Error::Dimension("endomorphism size".into()));
        }
        for (i, (img, n)) in self.images.iter().zip(group.orders()).enumerate() {
            if img.len() != group.rank() || !group.scale(n, img).iter().all(Zero::is_zero) {
                return Err(Error::NotHomomorphism(i));
            }
        }
        Ok(())
    }

    pub fn apply(&self, group: &FiniteAbelianGroup, x: &[BigInt]) -> Vec<BigInt> {
        let mut acc = group.zero();
        for (c, img) in x.iter().zip(&self.images) {
            acc = group.add(&acc, &group.scale(c, img));
        }
        acc
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self, group: &FiniteAbelianGroup) -> Self {
        Self {
            images: other.images.iter().map(|x| self.apply(group, x)).collect(),
        }
    }
}

/// Whether `φ ⊕ ψ` on `M ⊕ M⊥` extends to an isometry of the overlattice,
/// given the induced maps `φ̄` on `l(M)` and `ψ̄` on `l(M⊥)`: they must
/// preserve `S₁` and `S₂` and satisfy `γ ∘ φ̄ = ψ̄ ∘ γ`.
pub fn extends_to(phibar: &GroupEndo, psibar: &GroupEndo, glue: &GlueData) -> Result<bool> {
    let g1 = glue.dg_m.group();
    let g2 = glue.dg_mperp.group();
    phibar.check_homomorphism(&g1)?;
    psibar.check_homomorphism(&g2)?;
    let sum = glue.sum_group();
    for (a, b) in &glue.pairs {
        let pa = phibar.apply(&g1, a);
        let pb = psibar.apply(&g2, b);
        if !glue.s1.contains(&pa) || !glue.s2.contains(&pb) {
            return Ok(false);
        }
        // (φ̄ s₁, ψ̄ γ s₁) lies on the graph of γ iff γ φ̄ s₁ = ψ̄ γ s₁
        let image: Vec<BigInt> = pa.into_iter().chain(pb).collect();
        if !glue.s.contains(&sum.reduce(&image)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `l(M⊥) ≅ l(M)(−1) ⊕ l(L)` for a primitive `M ⊂ L` with coprime
/// discriminant orders. The `l(M)` part carries the negated form.
pub fn coprime_complement_disc(
    dg_m: &DiscriminantGroup,
    dg_l: &DiscriminantGroup,
) -> Result<DiscriminantGroup> {
    let a = dg_m.order();
    let b = dg_l.order();
    if !a.gcd(&b).is_one() {
        return Err(Error::NotCoprime(a, b));
    }
    Ok(dg_m.negated().orthogonal_sum(dg_l))
}
