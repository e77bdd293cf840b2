//! Exact rational helpers shared by the signature and enumeration code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

pub(crate) type Matrix = Vec<Vec<BigRational>>;

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn to_rational_matrix(m: &[Vec<i64>]) -> Matrix {
    m.iter().map(|row| row.iter().map(|&x| rat(x)).collect()).collect()
}

/// `floor(sqrt(x))` for a nonnegative rational.
pub(crate) fn floor_sqrt(x: &BigRational) -> BigInt {
    debug_assert!(!x.is_negative());
    x.floor().to_integer().sqrt()
}

/// All integers `k` with `q * (k - center)^2 <= bound`, in increasing order.
/// `q` must be positive.
pub(crate) fn integers_in_ellipse(
    q: &BigRational,
    center: &BigRational,
    bound: &BigRational,
) -> impl Iterator<Item = BigInt> {
    let (lo, hi) = if bound.is_negative() {
        (BigInt::from(1), BigInt::from(0))
    } else {
        let s = floor_sqrt(&(bound / q));
        (
            center.floor().to_integer() - &s - 1,
            center.ceil().to_integer() + &s + 1,
        )
    };
    let q = q.clone();
    let center = center.clone();
    let bound = bound.clone();
    num_iter_range(lo, hi).filter(move |k| {
        let diff = BigRational::from_integer(k.clone()) - &center;
        &q * &diff * &diff <= bound
    })
}

fn num_iter_range(lo: BigInt, hi: BigInt) -> impl Iterator<Item = BigInt> {
    let mut cur = lo;
    std::iter::from_fn(move || {
        if cur > hi {
            None
        } else {
            let out = cur.clone();
            cur += 1;
            Some(out)
        }
    })
}

/// Solve `a x = rhs` for square nonsingular `a` by Gauss-Jordan elimination.
pub(crate) fn solve(a: &Matrix, rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut m: Matrix = a
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            let mut row = row.clone();
            row.push(r.clone());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let delta = &f * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

/// Decomposition of a positive definite form as
/// `Q(x) = sum_i q[i][i] * (x_i + sum_{j>i} q[i][j] x_j)^2`.
///
/// Returns `None` if a pivot is not positive.
pub(crate) fn definite_decomposition(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut q = a.clone();
    for i in 0..n {
        if !q[i][i].is_positive() {
            return None;
        }
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let delta = &q[k][i] * &q[i][l];
                q[k][l] -= delta;
            }
        }
    }
    Some(q)
}

pub(crate) fn big_to_i64(x: &BigInt) -> crate::Result<i64> {
    x.to_i64().ok_or(crate::Error::Overflow)
}

pub(crate) fn gcd_all(xs: &[i64]) -> i64 {
    xs.iter().fold(0i64, |g, &x| g.gcd(&x))
}
