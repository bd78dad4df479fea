//! Quadratic residues, the Arth condition and the Enriques bounds.

mod polygon;

pub use polygon::{hodge_polygon, newton_slopes, polygon_lies_above, Height, NewtonPolygon};

use crate::error::{Error, Result};

/// Rank of `Γ(2)`; the Néron-Severi lattice of a K3 cover has at least this rank.
pub const GAMMA2_RANK: i64 = 10;
/// `d(Γ(2)) = −2¹⁰`.
pub const GAMMA2_DISC: i64 = -1024;

pub fn is_odd_prime(p: i64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut f = 3;
    while f * f <= p {
        if p % f == 0 {
            return false;
        }
        f += 2;
    }
    true
}

fn check_prime(p: i64) -> Result<()> {
    if is_odd_prime(p) {
        Ok(())
    } else {
        Err(Error::NotOddPrime(p))
    }
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m = u128::from(m);
    let mut b = u128::from(base) % m;
    let mut acc = 1u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Legendre symbol `(a/p)` by Euler's criterion.
pub fn legendre(a: i64, p: i64) -> Result<i8> {
    check_prime(p)?;
    let r = a.rem_euclid(p) as u64;
    if r == 0 {
        return Ok(0);
    }
    let p = p as u64;
    Ok(if pow_mod(r, (p - 1) / 2, p) == 1 { 1 } else { -1 })
}

/// `Arth(p, σ, d)`: `((−1)^{σ+1} d / p) = −1`.
pub fn arth(p: i64, sigma: u32, d: i64) -> Result<bool> {
    check_prime(p)?;
    if !(1..=10).contains(&sigma) {
        return Err(Error::SigmaOutOfRange(sigma));
    }
    let two_d = d.checked_mul(2).ok_or_else(|| Error::Parse("d overflows".into()))?;
    if two_d % p == 0 {
        return Err(Error::PrimeDividesDiscriminant { p, two_d });
    }
    let signed = if sigma % 2 == 1 { d } else { -d };
    Ok(legendre(signed, p)? == -1)
}

/// Whether `−d` must be a square (`true`) or a non-square mod `p` for `σ`.
pub fn wants_square(sigma: u32) -> Result<bool> {
    match sigma {
        2 | 4 => Ok(true),
        3 | 5 => Ok(false),
        s => Err(Error::SigmaOutOfRange(s)),
    }
}

/// Smallest `d` with `8d < p`, `p ∤ d` and `−d` a square (σ even) or a
/// non-square (σ odd) modulo `p`.
pub fn find_d(p: i64, sigma: u32) -> Result<Option<i64>> {
    check_prime(p)?;
    let want = if wants_square(sigma)? { 1 } else { -1 };
    for d in (1..).take_while(|d| 8 * d < p) {
        if d % p != 0 && legendre(-d, p)? == want {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// `p > 8d`: then a norm divisible by `4dp`, scaled by `1/(4d)²`, is below −2.
pub fn verify_norm_bound(p: i64, d: i64) -> bool {
    p > 8 * d
}

/// Height and Artin-invariant bounds for K3 surfaces covering an Enriques surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusBounds {
    pub max_height: u32,
    pub max_artin: u32,
    pub derivation: Vec<String>,
}

fn is_perfect_square(n: i64) -> bool {
    n >= 0 && {
        let r = (n as f64).sqrt() as i64;
        (r.saturating_sub(1)..=r + 1).any(|s| s * s == n)
    }
}

pub fn frobenius_bounds_enriques() -> FrobeniusBounds {
    let mut derivation = Vec::new();
    let max_height = (1..=10u32)
        .take_while(|&h| 22 - 2 * i64::from(h) >= GAMMA2_RANK)
        .last()
        .expect("h = 1 qualifies");
    derivation.push(format!(
        "slope-1 multiplicity 22-2h >= {GAMMA2_RANK}: 22-2*{max_height} = {} and 22-2*{} = {}",
        22 - 2 * max_height,
        max_height + 1,
        22 - 2 * (max_height + 1)
    ));
    let rank_cap = (1..=10u32)
        .take_while(|&s| 22 - 2 * i64::from(s) >= GAMMA2_RANK)
        .last()
        .expect("sigma = 1 qualifies");
    derivation.push(format!(
        "rank 22-2*sigma >= {GAMMA2_RANK} forces sigma <= {rank_cap}"
    ));
    // at maximal rank the Arth symbol has argument (−1)^{σ+1} d(Γ(2))
    let sign = if (rank_cap + 1) % 2 == 0 { 1 } else { -1 };
    let arg = sign * GAMMA2_DISC;
    let max_artin = if is_perfect_square(arg) {
        derivation.push(format!(
            "sigma = {rank_cap}: (-1)^{} * ({GAMMA2_DISC}) = {arg} is a perfect square, Arth fails for every p",
            rank_cap + 1
        ));
        rank_cap - 1
    } else {
        rank_cap
    };
    FrobeniusBounds {
        max_height,
        max_artin,
        derivation,
    }
}
