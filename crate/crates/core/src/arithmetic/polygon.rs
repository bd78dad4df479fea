//! Newton and Hodge polygons of the second crystalline cohomology of a K3 surface.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rank of the second cohomology of a K3 surface.
pub const B2: u32 = 22;

/// Height of the formal Brauer group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Height {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(h) => write!(f, "{h}"),
            Height::Infinite => f.write_str("inf"),
        }
    }
}

/// Slopes with multiplicities, ascending by slope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    slopes: Vec<(BigRational, u32)>,
}

impl NewtonPolygon {
    pub fn new(mut slopes: Vec<(BigRational, u32)>) -> Result<Self> {
        slopes.retain(|(_, m)| *m > 0);
        slopes.sort_by(|a, b| a.0.cmp(&b.0));
        if slopes.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidPolygon("repeated slope".into()));
        }
        let total: u32 = slopes.iter().map(|(_, m)| m).sum();
        if total != B2 {
            return Err(Error::InvalidPolygon(format!(
                "multiplicities sum to {total}, expected {B2}"
            )));
        }
        let np = Self { slopes };
        if !np.is_symmetric() {
            return Err(Error::InvalidPolygon("slopes are not symmetric about 1".into()));
        }
        Ok(np)
    }

    /// Skips validation; for testing `polygon_lies_above` on bad input.
    pub fn unchecked(slopes: Vec<(BigRational, u32)>) -> Self {
        Self { slopes }
    }

    pub fn slopes(&self) -> &[(BigRational, u32)] {
        &self.slopes
    }

    pub fn multiplicity(&self, slope: &BigRational) -> u32 {
        self.slopes
            .iter()
            .find(|(s, _)| s == slope)
            .map_or(0, |(_, m)| *m)
    }

    /// Multiplicity of `α` equals multiplicity of `2 − α`.
    pub fn is_symmetric(&self) -> bool {
        let two = BigRational::from_integer(BigInt::from(2));
        self.slopes
            .iter()
            .all(|(s, m)| self.multiplicity(&(&two - s)) == *m)
    }

    /// Heights of the polygon at abscissas `0..=22`.
    pub fn vertices(&self) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero()];
        let mut y = BigRational::zero();
        for (s, m) in &self.slopes {
            for _ in 0..*m {
                y += s;
                out.push(y.clone());
            }
        }
        out
    }
}

impl fmt::Display for NewtonPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.slopes.iter().map(|(s, m)| format!("({s},{m})")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Slopes 0, 1, 2 with multiplicities 1, 20, 1.
pub fn hodge_polygon() -> NewtonPolygon {
    NewtonPolygon {
        slopes: vec![(rat(0, 1), 1), (rat(1, 1), 20), (rat(2, 1), 1)],
    }
}

/// `{(1−1/h, h), (1, 22−2h), (1+1/h, h)}`, or all slopes 1 for infinite height.
pub fn newton_slopes(h: Height) -> Result<NewtonPolygon> {
    match h {
        Height::Infinite => NewtonPolygon::new(vec![(BigRational::one(), B2)]),
        Height::Finite(0) => Err(Error::InvalidPolygon("height must be positive".into())),
        Height::Finite(h) => {
            let mid = i64::from(B2) - 2 * i64::from(h);
            if mid <= 0 {
                return Err(Error::HeightTooLarge { h, multiplicity: mid });
            }
            let hh = i64::from(h);
            NewtonPolygon::new(vec![
                (rat(hh - 1, hh), h),
                (BigRational::one(), mid as u32),
                (rat(hh + 1, hh), h),
            ])
        }
    }
}

/// Compares against the Hodge polygon at every integer abscissa.
pub fn polygon_lies_above(np: &NewtonPolygon) -> bool {
    let ours = np.vertices();
    let hodge = hodge_polygon().vertices();
    ours.len() == hodge.len() && ours.iter().zip(&hodge).all(|(a, b)| a >= b)
}
