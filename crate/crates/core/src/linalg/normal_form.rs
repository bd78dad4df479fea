//! Hermite and Smith normal forms over the integers, and integer kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Row Hermite normal form `u · m = h`.
#[derive(Clone, Debug)]
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Number of nonzero rows of `h`; they come first.
    pub rank: usize,
    /// Pivot column of each nonzero row.
    pub pivots: Vec<usize>,
}

/// Smith normal form `u · m · v = s`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Diagonal of `s`, nonnegative, each dividing the next.
    pub divisors: Vec<BigInt>,
}

/// Row-style Hermite normal form: echelon, positive pivots, entries above
/// each pivot reduced into `[0, pivot)`, zero rows last.
pub fn hnf(m: &IntMatrix) -> Hnf {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        for i in r + 1..rows {
            if h.get(i, c).is_zero() {
                continue;
            }
            let a = h.get(r, c).clone();
            let b = h.get(i, c).clone();
            let eg = a.extended_gcd(&b);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let a_g = &a / &g;
            let b_g = &b / &g;
            let neg_b = -&b_g;
            // [[s, t], [-b/g, a/g]] has determinant one.
            h.combine_rows(r, i, [&s, &t, &neg_b, &a_g]);
            u.combine_rows(r, i, [&s, &t, &neg_b, &a_g]);
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        let pivot = h.get(r, c).clone();
        for i in 0..r {
            let q = -h.get(i, c).div_floor(&pivot);
            h.add_row_multiple(i, r, &q);
            u.add_row_multiple(i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    Hnf {
        h,
        u,
        rank: r,
        pivots,
    }
}

/// Hermite form with pivots taken from the last column backwards.
///
/// Useful when generators listed in the trailing coordinates should come
/// out as early basis rows.
pub fn hnf_lower(m: &IntMatrix) -> Hnf {
    let cols = m.cols();
    let reversed = reverse_cols(m);
    let mut out = hnf(&reversed);
    out.h = reverse_cols(&out.h);
    out.pivots = out.pivots.iter().map(|&c| cols - 1 - c).collect();
    out
}

fn reverse_cols(m: &IntMatrix) -> IntMatrix {
    let mut r = m.clone();
    let c = m.cols();
    for j in 0..c / 2 {
        r.swap_cols(j, c - 1 - j);
    }
    r
}

/// Smith normal form with both unimodular transforms.
pub fn snf(m: &IntMatrix) -> Snf {
    let rows = m.rows();
    let cols = m.cols();
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let n = rows.min(cols);
    for t in 0..n {
        loop {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = s.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| x.abs() < s.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish_snf(s, u, v);
            };
            s.swap_rows(t, bi);
            u.swap_rows(t, bi);
            s.swap_cols(t, bj);
            v.swap_cols(t, bj);
            let pivot = s.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = -s.get(i, t).div_floor(&pivot);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= s.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let q = -s.get(t, j).div_floor(&pivot);
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= s.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !s.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    finish_snf(s, u, v)
}

fn finish_snf(mut s: IntMatrix, mut u: IntMatrix, v: IntMatrix) -> Snf {
    let n = s.rows().min(s.cols());
    for t in 0..n {
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    let divisors = s.diag();
    Snf { s, u, v, divisors }
}

/// Basis of the left integer kernel `{x : x · m = 0}`, in Hermite form.
///
/// The result is saturated: it spans every integer vector of the rational
/// kernel. Rows are `m.rows()`-dimensional; zero rows means injective.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let f = hnf(m);
    let idx: Vec<usize> = (f.rank..m.rows()).collect();
    let k = f.u.select_rows(&idx);
    if k.rows() == 0 {
        return IntMatrix::zeros(0, m.rows());
    }
    let kf = hnf(&k);
    kf.h.select_rows(&(0..kf.rank).collect::<Vec<_>>())
}
