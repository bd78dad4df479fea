use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::IntMatrix;

/// Dense rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: m.entries().iter().cloned().map(BigRational::from_integer).collect(),
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>, cols: usize) -> Self {
        let n = rows.len();
        let data: Vec<BigRational> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), n * cols);
        Self { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = a * rhs.get(k, j);
                    out.data[i * rhs.cols + j] += v;
                }
            }
        }
        out
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            inv.set(i, i, BigRational::one());
        }
        for c in 0..n {
            let p = (c..n).find(|&r| !a.get(r, c).is_zero())?;
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                    inv.data.swap(p * n + j, c * n + j);
                }
            }
            let pivot = a.get(c, c).clone();
            for j in 0..n {
                let v = a.get(c, j) / &pivot;
                a.set(c, j, v);
                let w = inv.get(c, j) / &pivot;
                inv.set(c, j, w);
            }
            for r in 0..n {
                if r == c || a.get(r, c).is_zero() {
                    continue;
                }
                let f = a.get(r, c).clone();
                for j in 0..n {
                    let v = a.get(r, j) - &f * a.get(c, j);
                    a.set(r, j, v);
                    let w = inv.get(r, j) - &f * inv.get(c, j);
                    inv.set(r, j, w);
                }
            }
        }
        Some(inv)
    }

    /// Splits into an integer numerator matrix and a positive common denominator.
    pub fn to_common_denominator(&self) -> (IntMatrix, BigInt) {
        let denom = self
            .data
            .iter()
            .fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
        let data = self
            .data
            .iter()
            .map(|x| (x * BigRational::from_integer(denom.clone())).to_integer())
            .collect();
        (IntMatrix::new(self.rows, self.cols, data).expect("shape"), denom)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(BigRational::is_integer)
    }
}

/// Row vector times integer matrix, over the rationals.
pub fn vec_mat(x: &[BigRational], m: &IntMatrix) -> Vec<BigRational> {
    assert_eq!(x.len(), m.rows());
    let mut out = vec![BigRational::zero(); m.cols()];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, o) in out.iter_mut().enumerate() {
            let e = m.get(i, j);
            if !e.is_zero() {
                *o += xi * BigRational::from_integer(e.clone());
            }
        }
    }
    out
}

/// `x · G · yᵀ` for rational row vectors.
pub fn bilinear(x: &[BigRational], gram: &IntMatrix, y: &[BigRational]) -> BigRational {
    vec_mat(x, gram)
        .iter()
        .zip(y)
        .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trips() {
        let m = IntMatrix::from_rows(&[[0, 1], [4, -1]]);
        let r = RatMatrix::from_int(&m);
        let inv = r.inverse().unwrap();
        let (num, den) = inv.to_common_denominator();
        assert_eq!(den, BigInt::from(4));
        assert_eq!(num, IntMatrix::from_rows(&[[1, 1], [4, 0]]));
        let id = r.mul(&inv);
        assert!(id.is_integral());
        assert_eq!(id.to_common_denominator().0, IntMatrix::identity(2));
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = RatMatrix::from_int(&IntMatrix::from_rows(&[[1, 2], [2, 4]]));
        assert!(m.inverse().is_none());
    }
}
