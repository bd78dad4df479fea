//! Finite abelian groups `⊕ Z/nᵢ` and their subgroups, in coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::{hnf, snf, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    orders: Vec<BigInt>,
}

/// Subgroup generated by a list of elements.
#[derive(Clone, Debug)]
pub struct Subgroup {
    /// Hermite basis of the preimage lattice in `Zᵏ` (generators plus relations).
    basis: IntMatrix,
    order: BigInt,
    invariants: Vec<BigInt>,
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<BigInt>) -> Self {
        assert!(orders.iter().all(|n| n.is_positive()), "orders must be positive");
        Self { orders }
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> BigInt {
        self.orders.iter().product()
    }

    pub fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.rank()]
    }

    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.rank());
        x.iter().zip(&self.orders).map(|(a, n)| a.mod_floor(n)).collect()
    }

    pub fn add(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.reduce(&s)
    }

    pub fn scale(&self, k: &BigInt, x: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = x.iter().map(|a| a * k).collect();
        self.reduce(&s)
    }

    pub fn is_zero(&self, x: &[BigInt]) -> bool {
        self.reduce(x).iter().all(Zero::is_zero)
    }

    pub fn element_order(&self, x: &[BigInt]) -> BigInt {
        x.iter()
            .zip(&self.orders)
            .fold(BigInt::one(), |acc, (a, n)| acc.lcm(&(n / a.gcd(n))))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut orders = self.orders.clone();
        orders.extend(other.orders.iter().cloned());
        Self { orders }
    }

    pub fn subgroup(&self, gens: &[Vec<BigInt>]) -> Subgroup {
        let k = self.rank();
        let mut rows: Vec<Vec<BigInt>> = gens.iter().map(|g| self.reduce(g)).collect();
        for (i, n) in self.orders.iter().enumerate() {
            let mut r = vec![BigInt::zero(); k];
            r[i] = n.clone();
            rows.push(r);
        }
        let m = IntMatrix::from_big_rows(rows, k).expect("rectangular");
        let f = hnf(&m);
        debug_assert_eq!(f.rank, k);
        let basis = f.h.select_rows(&(0..k).collect::<Vec<_>>());
        let covolume: BigInt = basis.diag().iter().product();
        let order = self.order() / covolume;
        // relations expressed in the subgroup basis; their Smith form gives the structure
        let rel_rows: Vec<Vec<BigInt>> = self
            .orders
            .iter()
            .enumerate()
            .map(|(i, n)| {
                let mut r = vec![BigInt::zero(); k];
                r[i] = n.clone();
                solve_upper(&basis, &r).expect("relations lie in the subgroup preimage")
            })
            .collect();
        let invariants = if k == 0 {
            Vec::new()
        } else {
            let x = IntMatrix::from_big_rows(rel_rows, k).expect("rectangular");
            snf(&x)
                .divisors
                .into_iter()
                .filter(|d| !d.is_one())
                .collect()
        };
        Subgroup {
            basis,
            order,
            invariants,
        }
    }
}

impl Subgroup {
    pub fn order(&self) -> &BigInt {
        &self.order
    }

    /// Invariant factors `d₁ | d₂ | …`, all greater than one.
    pub fn invariants(&self) -> &[BigInt] {
        &self.invariants
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        solve_upper(&self.basis, x).is_some()
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }
}

/// Integer solution `c` of `c · h = x` for square upper-triangular `h`.
fn solve_upper(h: &IntMatrix, x: &[BigInt]) -> Option<Vec<BigInt>> {
    let k = h.rows();
    let mut rest = x.to_vec();
    let mut c = vec![BigInt::zero(); k];
    for i in 0..k {
        let (q, r) = rest[i].div_rem(h.get(i, i));
        if !r.is_zero() {
            return None;
        }
        for j in i..k {
            rest[j] -= &q * h.get(i, j);
        }
        c[i] = q;
    }
    Some(c)
}

/// Trial-division factorization of a positive integer.
pub fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while n.is_multiple_of(&p) {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// Multiset of prime-power orders of `⊕ Z/nᵢ`, sorted by prime then exponent.
pub fn primary_orders(orders: &[BigInt]) -> Vec<(BigInt, u32)> {
    let mut out: Vec<(BigInt, u32)> = orders.iter().flat_map(factor).collect();
    out.sort();
    out
}

/// Invariant factors `d₁ | d₂ | …` (all > 1) of `⊕ Z/nᵢ`.
pub fn invariant_factors(orders: &[BigInt]) -> Vec<BigInt> {
    let primary = primary_orders(orders);
    let mut by_prime: Vec<(BigInt, Vec<u32>)> = Vec::new();
    for (p, e) in primary {
        match by_prime.last_mut() {
            Some((q, es)) if *q == p => es.push(e),
            _ => by_prime.push((p, vec![e])),
        }
    }
    let len = by_prime.iter().map(|(_, es)| es.len()).max().unwrap_or(0);
    let mut out = vec![BigInt::one(); len];
    for (p, mut es) in by_prime {
        es.sort_unstable_by(|a, b| b.cmp(a));
        // largest exponents go to the last invariant factor
        for (slot, e) in es.into_iter().enumerate() {
            out[len - 1 - slot] *= p.pow(e);
        }
    }
    out
}
