//! Integral lattices presented by Gram matrices.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// The negative-definite E8 form: half of the standard E8(2) basis matrix.
const E8_ROWS: [[i64; 8]; 8] = [
    [-2, 1, 0, 0, 0, 0, 0, 0],
    [1, -2, 1, 0, 0, 0, 0, 0],
    [0, 1, -2, 1, 1, 0, 0, 0],
    [0, 0, 1, -2, 0, 0, 0, 0],
    [0, 0, 1, 0, -2, 1, 0, 0],
    [0, 0, 0, 0, 1, -2, 1, 0],
    [0, 0, 0, 0, 0, 1, -2, 1],
    [0, 0, 0, 0, 0, 0, 1, -2],
];

/// A free Z-module with a symmetric integral bilinear form.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralLattice {
    gram: IntMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    /// Hyperbolic plane.
    U,
    E8,
    /// U ⊕ E8, the Enriques lattice.
    Gamma,
    /// U³ ⊕ E8², the K3 lattice.
    LambdaK3,
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "U" => Ok(Self::U),
            "E8" => Ok(Self::E8),
            "Gamma" => Ok(Self::Gamma),
            "LambdaK3" | "Lambda" | "K3" => Ok(Self::LambdaK3),
            other => Err(Error::UnknownLattice(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Definiteness {
    Positive,
    Negative,
}

impl IntegralLattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(Self { gram, label: None })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn empty() -> Self {
        Self {
            gram: IntMatrix::zeros(0, 0),
            label: None,
        }
    }

    pub fn builtin(which: Builtin) -> Self {
        match which {
            Builtin::U => Self::new(IntMatrix::from_rows(&[[0, 1], [1, 0]]))
                .unwrap()
                .with_label("U"),
            Builtin::E8 => Self::new(IntMatrix::from_rows(&E8_ROWS))
                .unwrap()
                .with_label("E8"),
            Builtin::Gamma => Self::builtin(Builtin::U)
                .direct_sum(&Self::builtin(Builtin::E8))
                .with_label("Gamma"),
            Builtin::LambdaK3 => {
                let u = Self::builtin(Builtin::U);
                let e8 = Self::builtin(Builtin::E8);
                u.direct_sum(&u)
                    .direct_sum(&u)
                    .direct_sum(&e8)
                    .direct_sum(&e8)
                    .with_label("LambdaK3")
            }
        }
    }

    /// Looks a builtin up by name (`U`, `E8`, `Gamma`, `LambdaK3`).
    pub fn by_name(name: &str) -> Result<Self> {
        Ok(Self::builtin(name.parse()?))
    }

    pub fn hyperbolic() -> Self {
        Self::builtin(Builtin::U)
    }

    pub fn e8() -> Self {
        Self::builtin(Builtin::E8)
    }

    /// Diagonal lattice; zero entries are rejected.
    pub fn diagonal(entries: &[i64]) -> Result<Self> {
        if let Some(index) = entries.iter().position(|&e| e == 0) {
            return Err(Error::ZeroDiagonal { index });
        }
        let big: Vec<BigInt> = entries.iter().map(|&e| BigInt::from(e)).collect();
        Self::new(IntMatrix::diagonal(&big))
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    /// L(n): the form scaled by `n`.
    pub fn twist(&self, n: u64) -> Self {
        let gram = self.gram.scale(&BigInt::from(n));
        let label = self.label.as_ref().map(|l| format!("{l}({n})"));
        Self { gram, label }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let label = match (&self.label, &other.label) {
            (Some(a), Some(b)) => Some(format!("{a}+{b}")),
            _ => None,
        };
        Self {
            gram: self.gram.block_diag(&other.gram),
            label,
        }
    }

    /// Signed determinant of the Gram matrix.
    pub fn discriminant(&self) -> BigInt {
        self.gram.det().expect("Gram matrix is square")
    }

    pub fn is_even(&self) -> bool {
        self.gram.diag().iter().all(|x| x.is_even())
    }

    pub fn is_unimodular(&self) -> bool {
        self.discriminant().abs() == BigInt::from(1)
    }

    /// `(x, y)` for integer coordinate rows.
    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        self.gram
            .left_apply(x)
            .iter()
            .zip(y)
            .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm(&self, x: &[BigInt]) -> BigInt {
        self.pair(x, x)
    }

    /// Sylvester signature `(positive, negative)` by exact congruence
    /// diagonalization over the rationals.
    pub fn signature(&self) -> Result<(usize, usize)> {
        let n = self.rank();
        let mut a: Vec<Vec<BigRational>> = self
            .gram
            .row_iter()
            .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
            .collect();
        let (mut plus, mut minus) = (0, 0);
        let mut k = 0;
        while k < n {
            if let Some(p) = (k..n).find(|&i| !a[i][i].is_zero()) {
                swap_sym(&mut a, k, p);
                let pivot = a[k][k].clone();
                if pivot.is_positive() {
                    plus += 1;
                } else {
                    minus += 1;
                }
                for i in k + 1..n {
                    if a[i][k].is_zero() {
                        continue;
                    }
                    let f = &a[i][k] / &pivot;
                    for j in k..n {
                        let v = &a[i][j] - &f * &a[k][j];
                        a[i][j] = v;
                    }
                }
                for i in k + 1..n {
                    a[i][k] = BigRational::zero();
                    a[k][i] = BigRational::zero();
                }
                k += 1;
                continue;
            }
            // every remaining diagonal entry vanishes: split off a hyperbolic block
            let Some((i, j)) = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_zero())
            else {
                return Err(Error::Degenerate);
            };
            swap_sym(&mut a, k, i);
            swap_sym(&mut a, k + 1, if j == k { i } else { j });
            let b = a[k][k + 1].clone();
            plus += 1;
            minus += 1;
            // A' = C − W B⁻¹ Wᵀ with B = [[0, b], [b, 0]], B⁻¹ = [[0, 1/b], [1/b, 0]]
            let w: Vec<(BigRational, BigRational)> = (k + 2..n)
                .map(|r| (a[r][k].clone(), a[r][k + 1].clone()))
                .collect();
            for (ri, r) in (k + 2..n).enumerate() {
                for (ci, c) in (k + 2..n).enumerate() {
                    let (wr0, wr1) = &w[ri];
                    let (wc0, wc1) = &w[ci];
                    let corr = (wr0 * wc1 + wr1 * wc0) / &b;
                    a[r][c] = &a[r][c] - corr;
                }
            }
            for r in k + 2..n {
                for c in [k, k + 1] {
                    a[r][c] = BigRational::zero();
                    a[c][r] = BigRational::zero();
                }
            }
            k += 2;
        }
        Ok((plus, minus))
    }

    pub fn definiteness(&self) -> Result<Option<Definiteness>> {
        let (plus, minus) = self.signature()?;
        Ok(match (plus, minus) {
            (p, 0) if p > 0 => Some(Definiteness::Positive),
            (0, m) if m > 0 => Some(Definiteness::Negative),
            _ => None,
        })
    }

    pub fn is_negative_definite(&self) -> bool {
        matches!(self.definiteness(), Ok(Some(Definiteness::Negative)))
    }
}

fn swap_sym(a: &mut [Vec<BigRational>], i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

impl fmt::Debug for IntegralLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IntegralLattice")
            .field("label", &self.label)
            .field("gram", &self.gram)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn builtins() {
        let u = IntegralLattice::hyperbolic();
        assert_eq!(u.gram(), &IntMatrix::from_rows(&[[0, 1], [1, 0]]));
        let gamma = IntegralLattice::builtin(Builtin::Gamma);
        assert_eq!(gamma.rank(), 10);
        assert_eq!(gamma.discriminant(), big(-1));
        let k3 = IntegralLattice::builtin(Builtin::LambdaK3);
        assert_eq!(k3.rank(), 22);
        assert_eq!(k3.signature().unwrap(), (3, 19));
        assert_eq!(k3.discriminant(), big(-1));
        assert!(matches!(
            IntegralLattice::by_name("E7"),
            Err(Error::UnknownLattice(_))
        ));
    }

    #[test]
    fn diagonal_lattices() {
        let m21 = IntegralLattice::diagonal(&[4, -4]).unwrap();
        assert_eq!(m21.gram(), &IntMatrix::from_rows(&[[4, 0], [0, -4]]));
        let n41 = IntegralLattice::diagonal(&[-4, -4, -4, -4]).unwrap();
        assert_eq!(n41.discriminant(), big(256));
        assert_eq!(IntegralLattice::diagonal(&[-4, -4]).unwrap().rank(), 2);
        assert!(matches!(
            IntegralLattice::diagonal(&[1, 0]),
            Err(Error::ZeroDiagonal { index: 1 })
        ));
        let m23 = IntegralLattice::diagonal(&[12, -4]).unwrap();
        assert_eq!(m23.discriminant(), big(-48));
    }

    #[test]
    fn twists() {
        let u2 = IntegralLattice::hyperbolic().twist(2);
        assert_eq!(u2.gram(), &IntMatrix::from_rows(&[[0, 2], [2, 0]]));
        let e8_2 = IntegralLattice::e8().twist(2);
        assert_eq!(e8_2.gram().get(2, 4), &big(2));
        assert!(e8_2.gram().diag().iter().all(|x| *x == big(-4)));
        assert!(e8_2.is_even());
        let l = IntegralLattice::e8();
        assert_eq!(l.twist(1).gram(), l.gram());
    }

    #[test]
    fn direct_sums() {
        let gamma2 = IntegralLattice::hyperbolic()
            .twist(2)
            .direct_sum(&IntegralLattice::e8().twist(2));
        assert_eq!(gamma2.rank(), 10);
        assert_eq!(gamma2.discriminant(), big(-1024));
        assert_eq!(gamma2.signature().unwrap(), (1, 9));
        let l = IntegralLattice::e8();
        assert_eq!(l.direct_sum(&IntegralLattice::empty()).gram(), l.gram());
    }

    #[test]
    fn signatures() {
        assert_eq!(IntegralLattice::hyperbolic().signature().unwrap(), (1, 1));
        assert_eq!(IntegralLattice::e8().signature().unwrap(), (0, 8));
        let deg = IntegralLattice::new(IntMatrix::from_rows(&[[0, 0], [0, 0]])).unwrap();
        assert!(matches!(deg.signature(), Err(Error::Degenerate)));
        let deg = IntegralLattice::new(IntMatrix::from_rows(&[[1, 1], [1, 1]])).unwrap();
        assert!(matches!(deg.signature(), Err(Error::Degenerate)));
    }

    #[test]
    fn hyperbolic_block_with_coupling() {
        // det = 12 and the leading block has det -1, so the Schur complement is negative
        let g = IntegralLattice::new(IntMatrix::from_rows(&[[0, 1, 2], [1, 0, 3], [2, 3, 0]]))
            .unwrap();
        assert_eq!(g.signature().unwrap(), (1, 2));
    }

    #[test]
    fn evenness() {
        assert!(IntegralLattice::hyperbolic().is_even());
        assert!(!IntegralLattice::diagonal(&[1]).unwrap().is_even());
    }

    #[test]
    fn rejects_asymmetric() {
        assert!(matches!(
            IntegralLattice::new(IntMatrix::from_rows(&[[0, 1], [2, 0]])),
            Err(Error::NotSymmetric)
        ));
    }

    fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
        // product of elementary operations keeps |det| = 1
        proptest::collection::vec((0..n, 0..n, -3i64..=3), 0..12).prop_map(move |ops| {
            let mut m = IntMatrix::identity(n);
            for (i, j, k) in ops {
                if i != j {
                    m.add_row_multiple(i, j, &BigInt::from(k));
                }
            }
            m
        })
    }

    fn sym(n: usize) -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec(-4i64..=4, n * (n + 1) / 2).prop_map(move |v| {
            let mut m = IntMatrix::zeros(n, n);
            let mut it = v.into_iter();
            for i in 0..n {
                for j in i..n {
                    let x = BigInt::from(it.next().unwrap());
                    m.set(i, j, x.clone());
                    m.set(j, i, x);
                }
            }
            m
        })
    }

    /// Counts sign changes of leading principal minors after a generic
    /// congruence; used only when every leading minor is nonzero.
    fn minor_signature(g: &IntMatrix) -> Option<(usize, usize)> {
        let n = g.rows();
        let mut prev = BigInt::from(1);
        let (mut p, mut m) = (0, 0);
        for k in 1..=n {
            let idx: Vec<usize> = (0..k).collect();
            let sub = g.select_rows(&idx).transpose().select_rows(&idx);
            let d = sub.det().unwrap();
            if d.is_zero() {
                return None;
            }
            if (d.is_positive()) == (prev.is_positive()) {
                p += 1;
            } else {
                m += 1;
            }
            prev = d;
        }
        Some((p, m))
    }

    proptest! {
        #[test]
        fn signature_is_congruence_invariant(
            (g, u) in (1usize..=6).prop_flat_map(|n| (sym(n), unimodular(n)))
        ) {
            let l = IntegralLattice::new(g.clone()).unwrap();
            prop_assume!(!l.discriminant().is_zero());
            let conj = IntegralLattice::new(u.congruence(&g).unwrap()).unwrap();
            let s = l.signature().unwrap();
            prop_assert_eq!(conj.signature().unwrap(), s);
            prop_assert_eq!(s.0 + s.1, l.rank());
            if let Some(oracle) = minor_signature(&g) {
                prop_assert_eq!(s, oracle);
            }
        }

        #[test]
        fn twist_scales_discriminant(g in (1usize..=5).prop_flat_map(sym), n in 1u64..=4) {
            let l = IntegralLattice::new(g).unwrap();
            prop_assume!(!l.discriminant().is_zero());
            let t = l.twist(n);
            prop_assert_eq!(
                t.discriminant(),
                l.discriminant() * BigInt::from(n).pow(l.rank() as u32)
            );
            prop_assert_eq!(t.signature().unwrap(), l.signature().unwrap());
            if n % 2 == 0 || l.is_even() {
                prop_assert!(t.is_even());
            }
        }
    }
}
