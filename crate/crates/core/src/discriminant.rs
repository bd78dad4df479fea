//! Discriminant groups `l(L) = L*/L` with their torsion bilinear and
//! quadratic forms.
//!
//! Generators are stored in canonical primary form: one cyclic factor of
//! prime-power order per generator, ordered by prime, then exponent, then
//! generator coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::abelian::{factor, invariant_factors, primary_orders, FiniteAbelianGroup};
use crate::error::{Error, Result};
use crate::lattice::IntegralLattice;
use crate::linalg::{bilinear, snf, vec_mat, IntMatrix};

/// `b_L` on generator pairs (mod 1) and `q_L` on generators (mod 2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionForm {
    pub bform: Vec<Vec<BigRational>>,
    pub qvals: Vec<BigRational>,
}

#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    divisors: Vec<BigInt>,
    generators: Vec<Vec<BigRational>>,
    form: Option<TorsionForm>,
    /// Coordinates of `y ∈ L*` are `(y·G)·coord_map` reduced by `divisors`.
    coord_map: Option<IntMatrix>,
}

pub fn mod_one(x: &BigRational) -> BigRational {
    x - x.floor()
}

pub fn mod_two(x: &BigRational) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    x - (x / &two).floor() * two
}

impl DiscriminantGroup {
    pub fn of_lattice(lattice: &IntegralLattice) -> Result<Self> {
        let g = lattice.gram();
        if lattice.discriminant().is_zero() {
            return Err(Error::Degenerate);
        }
        let n = lattice.rank();
        let f = snf(g);
        struct Part {
            order: BigInt,
            prime: BigInt,
            exp: u32,
            gen: Vec<BigRational>,
            col: Vec<BigInt>,
        }
        let mut parts = Vec::new();
        for (i, s) in f.divisors.iter().enumerate() {
            if s.is_one() {
                continue;
            }
            // U·G·V = S, so row i of U over s generates a cyclic factor of order s
            let chain_gen: Vec<BigRational> = f
                .u
                .row(i)
                .iter()
                .map(|x| BigRational::new(x.clone(), s.clone()))
                .collect();
            let chain_col: Vec<BigInt> = (0..n).map(|r| f.v.get(r, i).clone()).collect();
            for (p, e) in factor(s) {
                let pe = p.pow(e);
                let cof = s / &pe;
                let inv = mod_inverse(&cof, &pe);
                let scale = BigRational::from_integer(cof.clone());
                parts.push(Part {
                    order: pe,
                    prime: p,
                    exp: e,
                    gen: chain_gen.iter().map(|x| x * &scale).collect(),
                    col: chain_col.iter().map(|x| x * &inv).collect(),
                });
            }
        }
        parts.sort_by(|a, b| {
            (&a.prime, a.exp)
                .cmp(&(&b.prime, b.exp))
                .then_with(|| a.gen.cmp(&b.gen))
        });
        let k = parts.len();
        let mut coord_map = IntMatrix::zeros(n, k);
        for (j, part) in parts.iter().enumerate() {
            for (r, x) in part.col.iter().enumerate() {
                coord_map.set(r, j, x.clone());
            }
        }
        let generators: Vec<Vec<BigRational>> = parts.iter().map(|p| p.gen.clone()).collect();
        let divisors: Vec<BigInt> = parts.into_iter().map(|p| p.order).collect();
        let bform = generators
            .iter()
            .map(|x| generators.iter().map(|y| mod_one(&bilinear(x, g, y))).collect())
            .collect();
        let qvals = generators.iter().map(|x| mod_two(&bilinear(x, g, x))).collect();
        Ok(Self {
            divisors,
            generators,
            form: Some(TorsionForm { bform, qvals }),
            coord_map: Some(coord_map),
        })
    }

    /// Group structure only, with no form and no lattice behind it.
    pub fn abstract_group(orders: &[BigInt]) -> Self {
        let divisors = primary_orders(orders)
            .into_iter()
            .map(|(p, e)| p.pow(e))
            .collect();
        Self {
            divisors,
            generators: Vec::new(),
            form: None,
            coord_map: None,
        }
    }

    /// Prime-power orders of the canonical generators.
    pub fn divisors(&self) -> &[BigInt] {
        &self.divisors
    }

    pub fn invariant_factors(&self) -> Vec<BigInt> {
        invariant_factors(&self.divisors)
    }

    pub fn primary_orders(&self) -> Vec<(BigInt, u32)> {
        primary_orders(&self.divisors)
    }

    pub fn generators(&self) -> &[Vec<BigRational>] {
        &self.generators
    }

    pub fn form(&self) -> Option<&TorsionForm> {
        self.form.as_ref()
    }

    pub fn qvals(&self) -> Option<&[BigRational]> {
        self.form.as_ref().map(|f| f.qvals.as_slice())
    }

    pub fn order(&self) -> BigInt {
        self.divisors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.divisors.is_empty()
    }

    pub fn group(&self) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(self.divisors.clone())
    }

    /// Same abstract group (equal elementary-divisor multisets).
    pub fn same_group(&self, other: &Self) -> bool {
        self.primary_orders() == other.primary_orders()
    }

    /// Coordinates of a dual vector `y` (in lattice-basis coordinates).
    pub fn coords_of(&self, gram: &IntMatrix, y: &[BigRational]) -> Result<Vec<BigInt>> {
        let map = self
            .coord_map
            .as_ref()
            .ok_or_else(|| Error::Dimension("abstract group has no coordinates".into()))?;
        let yg = vec_mat(y, gram);
        if !yg.iter().all(BigRational::is_integer) {
            return Err(Error::NotInDual { index: 0 });
        }
        let z: Vec<BigInt> = yg.into_iter().map(|x| x.to_integer()).collect();
        Ok(self.group().reduce(&map.left_apply(&z)))
    }

    /// Rational representative `Σ cᵢ gᵢ` of a coordinate vector.
    pub fn element(&self, coords: &[BigInt]) -> Vec<BigRational> {
        let n = self.generators.first().map_or(0, Vec::len);
        let mut out = vec![BigRational::zero(); n];
        for (c, g) in coords.iter().zip(&self.generators) {
            let c = BigRational::from_integer(c.clone());
            for (o, x) in out.iter_mut().zip(g) {
                *o += &c * x;
            }
        }
        out
    }

    pub fn b(&self, x: &[BigInt], y: &[BigInt]) -> Option<BigRational> {
        let f = self.form.as_ref()?;
        let mut acc = BigRational::zero();
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                acc += BigRational::from_integer(xi * yj) * &f.bform[i][j];
            }
        }
        Some(mod_one(&acc))
    }

    pub fn q(&self, x: &[BigInt]) -> Option<BigRational> {
        let f = self.form.as_ref()?;
        let mut acc = BigRational::zero();
        for (i, xi) in x.iter().enumerate() {
            acc += BigRational::from_integer(xi * xi) * &f.qvals[i];
            for (j, xj) in x.iter().enumerate().skip(i + 1) {
                acc += BigRational::from_integer(BigInt::from(2) * xi * xj) * &f.bform[i][j];
            }
        }
        Some(mod_two(&acc))
    }

    /// The same group with `b` and `q` negated.
    pub fn negated(&self) -> Self {
        let form = self.form.as_ref().map(|f| TorsionForm {
            bform: f
                .bform
                .iter()
                .map(|r| r.iter().map(|x| mod_one(&-x)).collect())
                .collect(),
            qvals: f.qvals.iter().map(|x| mod_two(&-x)).collect(),
        });
        Self {
            form,
            ..self.clone()
        }
    }

    /// Orthogonal direct sum of torsion forms; generators are dropped when
    /// the two pieces do not live in one lattice. The result keeps the
    /// canonical (prime, exponent) order.
    pub fn orthogonal_sum(&self, other: &Self) -> Self {
        let k1 = self.divisors.len();
        let k2 = other.divisors.len();
        let mut order: Vec<usize> = (0..k1 + k2).collect();
        let key = |i: usize| -> (BigInt, u32) {
            let d = if i < k1 { &self.divisors[i] } else { &other.divisors[i - k1] };
            factor(d).into_iter().next().unwrap_or((BigInt::one(), 0))
        };
        order.sort_by_key(|&i| key(i));
        let divisors: Vec<BigInt> = order
            .iter()
            .map(|&i| if i < k1 { self.divisors[i].clone() } else { other.divisors[i - k1].clone() })
            .collect();
        let form = match (&self.form, &other.form) {
            (Some(a), Some(b)) => {
                let entry = |i: usize, j: usize| -> BigRational {
                    match (i < k1, j < k1) {
                        (true, true) => a.bform[i][j].clone(),
                        (false, false) => b.bform[i - k1][j - k1].clone(),
                        _ => BigRational::zero(),
                    }
                };
                Some(TorsionForm {
                    bform: order
                        .iter()
                        .map(|&i| order.iter().map(|&j| entry(i, j)).collect())
                        .collect(),
                    qvals: order
                        .iter()
                        .map(|&i| if i < k1 { a.qvals[i].clone() } else { b.qvals[i - k1].clone() })
                        .collect(),
                })
            }
            _ => None,
        };
        Self {
            divisors,
            generators: Vec::new(),
            form,
            coord_map: None,
        }
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let eg = a.extended_gcd(m);
    debug_assert!(eg.gcd.is_one());
    eg.x.mod_floor(m)
}
