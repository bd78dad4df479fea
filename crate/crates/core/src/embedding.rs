//! Sublattices presented by basis rows in ambient coordinates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::discriminant::{mod_two, DiscriminantGroup};
use crate::error::{Error, Result};
use crate::lattice::IntegralLattice;
use crate::linalg::{bilinear, hnf, hnf_lower, kernel_basis, snf, vec_mat, IntMatrix, RatMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeEmbedding {
    ambient: IntegralLattice,
    basis: IntMatrix,
}

/// Result of [`LatticeEmbedding::orthogonal_complement`].
#[derive(Clone, Debug)]
pub struct Complement {
    pub embedding: LatticeEmbedding,
    /// The sublattice was degenerate, so the complement meets it.
    pub degenerate: bool,
}

impl LatticeEmbedding {
    pub fn new(ambient: IntegralLattice, basis: IntMatrix) -> Result<Self> {
        if basis.rows() > 0 && basis.cols() != ambient.rank() {
            return Err(Error::Dimension(format!(
                "basis has {} columns, ambient rank is {}",
                basis.cols(),
                ambient.rank()
            )));
        }
        let basis = if basis.rows() == 0 {
            IntMatrix::zeros(0, ambient.rank())
        } else {
            basis
        };
        if basis.rank() != basis.rows() {
            return Err(Error::DependentBasis);
        }
        Ok(Self { ambient, basis })
    }

    pub fn ambient(&self) -> &IntegralLattice {
        &self.ambient
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// The sublattice with its induced form.
    pub fn sublattice(&self) -> IntegralLattice {
        let gram = self
            .basis
            .congruence(self.ambient.gram())
            .expect("shapes checked at construction");
        IntegralLattice::new(gram).expect("congruent Gram matrices are symmetric")
    }

    /// Index of the sublattice in its saturation.
    pub fn saturation_index(&self) -> BigInt {
        snf(&self.basis).divisors.iter().product()
    }

    pub fn is_primitive(&self) -> bool {
        self.saturation_index().is_one()
    }

    /// The primitive sublattice with the same rational span.
    pub fn saturate(&self) -> Self {
        if self.is_primitive() {
            return self.clone();
        }
        // (span⊥)⊥ for the standard dot product is the saturated span
        let perp = kernel_basis(&self.basis.transpose());
        let sat = if perp.rows() == 0 {
            IntMatrix::identity(self.ambient.rank())
        } else {
            kernel_basis(&perp.transpose())
        };
        Self {
            ambient: self.ambient.clone(),
            basis: sat,
        }
    }

    /// `{v ∈ L : (v, m) = 0 for all m ∈ M}`, always primitive.
    pub fn orthogonal_complement(&self) -> Complement {
        let n = self.ambient.rank();
        let basis = if self.rank() == 0 {
            IntMatrix::identity(n)
        } else {
            let pairing = self
                .ambient
                .gram()
                .checked_mul(&self.basis.transpose())
                .expect("shapes checked at construction");
            kernel_basis(&pairing)
        };
        let degenerate = self.sublattice().discriminant().is_zero();
        Complement {
            embedding: Self {
                ambient: self.ambient.clone(),
                basis,
            },
            degenerate,
        }
    }

    /// Integer coordinates of an ambient vector in this basis.
    pub fn coordinates_of(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        solve_integer(&self.basis, v).ok_or(Error::NotInSublattice)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates_of(v).is_ok()
    }

    /// Re-expresses another embedding into the same ambient in the
    /// coordinates of this sublattice.
    pub fn restrict(&self, inner: &IntMatrix) -> Result<LatticeEmbedding> {
        let rows = inner
            .row_iter()
            .map(|r| self.coordinates_of(r))
            .collect::<Result<Vec<_>>>()?;
        let basis = IntMatrix::from_big_rows(rows, self.rank())?;
        LatticeEmbedding::new(self.sublattice(), basis)
    }

    /// Same lattice, compared through Hermite forms of the bases.
    pub fn same_span(&self, other: &Self) -> bool {
        self.ambient.gram() == other.ambient.gram() && hnf(&self.basis).h == hnf(&other.basis).h
    }
}

/// `[L : M ⊕ M⊥]` from basis matrices: `|det [B_M; B_M⊥]|`.
pub fn sum_index(m: &IntMatrix, mperp: &IntMatrix) -> Result<BigInt> {
    let stacked = m.vstack(mperp)?;
    if !stacked.is_square() {
        return Err(Error::NotSquare {
            rows: stacked.rows(),
            cols: stacked.cols(),
        });
    }
    Ok(stacked.det()?.abs())
}

/// Integer solution `c` of `c · b = v`, if one exists.
pub fn solve_integer(b: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    if v.len() != b.cols() {
        return None;
    }
    let f = hnf(b);
    let mut rest = v.to_vec();
    let mut c = vec![BigInt::zero(); f.rank];
    for (i, &col) in f.pivots.iter().enumerate() {
        let p = f.h.get(i, col);
        let q = &rest[col] / p;
        if &q * p != rest[col] {
            return None;
        }
        for (j, r) in rest.iter_mut().enumerate() {
            *r -= &q * f.h.get(i, j);
        }
        c[i] = q;
    }
    if !rest.iter().all(Zero::is_zero) {
        return None;
    }
    // c·H = v and H = U·B, so the answer is c·U restricted to the nonzero rows
    let u_top = f.u.select_rows(&(0..f.rank).collect::<Vec<_>>());
    Some(u_top.left_apply(&c))
}

/// An overlattice `L ⊇ M` built from glue vectors in `M*`.
#[derive(Clone, Debug)]
pub struct Overlattice {
    pub lattice: IntegralLattice,
    /// Basis of `L` in `M`-coordinates is `basis / denom`.
    pub basis: IntMatrix,
    pub denom: BigInt,
    /// `[L : M]`.
    pub index: BigInt,
}

impl Overlattice {
    /// Rows: the original basis of `M` written in the basis of `L`.
    pub fn sublattice_coords(&self) -> IntMatrix {
        let inv = RatMatrix::from_int(&self.basis)
            .inverse()
            .expect("overlattice basis is nonsingular");
        let d = BigRational::from_integer(self.denom.clone());
        let rows = inv
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|x| (x * &d).to_integer()).collect())
            .collect();
        IntMatrix::from_big_rows(rows, self.basis.cols()).expect("square")
    }
}

/// Lattice generated by `M` and rational glue vectors (in `M`-coordinates).
///
/// The generated subgroup of `l(M)` must be isotropic; the result is even
/// whenever `M` is. The basis is chosen in lower Hermite form, so glue
/// vectors tend to appear among the first basis rows.
pub fn overlattice(m: &IntegralLattice, glue: &[Vec<BigRational>]) -> Result<Overlattice> {
    let n = m.rank();
    let g = m.gram();
    for (index, v) in glue.iter().enumerate() {
        if v.len() != n {
            return Err(Error::Dimension(format!("glue vector {index} has wrong length")));
        }
        if !vec_mat(v, g).iter().all(BigRational::is_integer) {
            return Err(Error::NotInDual { index });
        }
        let q = mod_two(&bilinear(v, g, v));
        if !q.is_zero() {
            return Err(Error::NotIsotropic { value: q });
        }
    }
    for (i, x) in glue.iter().enumerate() {
        for y in &glue[i + 1..] {
            let b = bilinear(x, g, y);
            if !b.is_integer() {
                return Err(Error::GlueNotOrthogonal { value: b });
            }
        }
    }
    let mut rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from_integer(BigInt::from((i == j) as i64)))
                .collect()
        })
        .collect();
    rows.extend(glue.iter().cloned());
    let (num, denom) = RatMatrix::from_rows(rows, n).to_common_denominator();
    let f = hnf_lower(&num);
    let mut basis = f.h.select_rows(&(0..n).collect::<Vec<_>>());
    if basis.det()?.abs() == denom.pow(n as u32) {
        // trivial glue: keep the original basis
        basis = IntMatrix::identity(n).scale(&denom);
    }
    let scaled = basis.congruence(g)?;
    let d2 = &denom * &denom;
    let mut gram = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let x = scaled.get(i, j);
            if !(x % &d2).is_zero() {
                return Err(Error::NonIntegralGram);
            }
            gram.set(i, j, x / &d2);
        }
    }
    let index = denom.pow(n as u32) / basis.det()?.abs();
    Ok(Overlattice {
        lattice: IntegralLattice::new(gram)?,
        basis,
        denom,
        index,
    })
}

/// Checks `[L:M]²·|d(L)| = |d(M)|`.
pub fn index_identity_holds(m: &IntegralLattice, over: &Overlattice) -> bool {
    &over.index * &over.index * over.lattice.discriminant().abs() == m.discriminant().abs()
}

/// Discriminant group of `M` seen from inside the overlattice: the
/// isotropic subgroup `L/M ⊂ l(M)` in generator coordinates.
pub fn glue_subgroup(m: &IntegralLattice, over: &Overlattice) -> Result<Vec<Vec<BigInt>>> {
    let dg = DiscriminantGroup::of_lattice(m)?;
    let d = BigRational::from_integer(over.denom.clone());
    over.basis
        .row_iter()
        .map(|r| {
            let y: Vec<BigRational> = r
                .iter()
                .map(|x| BigRational::from_integer(x.clone()) / &d)
                .collect();
            dg.coords_of(m.gram(), &y)
        })
        .collect()
}
