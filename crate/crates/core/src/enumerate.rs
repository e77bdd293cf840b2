//! Finite enumeration of classes of fixed square and bounded degree in a
//! lattice of signature `(1, n)`.
//!
//! Fix a reference class `B` with `B^2 > 0` and let `g = G B` be the degree
//! functional `v -> v . B`. A unimodular change of basis `U` brings `g` to
//! `(h, 0, ..., 0)` with `h = gcd(g)`, so classes of degree `d` are exactly
//! `U (d / h, y)` with `y` free in `Z^(n-1)`, and the trailing `n - 1` basis
//! vectors span `B^perp`, on which the form is negative definite. Writing the
//! transformed Gram matrix as
//!
//! ```text
//!   [ a    n^T ]
//!   [ n    -N  ]      (N positive definite)
//! ```
//!
//! the condition `v^2 = c` for `v = U (t, y)` becomes
//! `(y - z)^T N (y - z) = t^2 a - c + t^2 n^T N^-1 n` with `z = t N^-1 n`,
//! an exact-norm problem in a definite lattice that is solved by a
//! Fincke-Pohst style recursion with rational centers and exact bounds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{
    big_to_i64, definite_decomposition, floor_sqrt, integers_in_ellipse, solve, Matrix,
};
use crate::lattice::{check_len, is_primitive, DivisorClass, IntegralLattice};
use crate::{Error, Result};

/// Search for classes `v` with `v^2 = square` and
/// `degree_min <= v . reference <= degree_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationQuery {
    pub square: i64,
    pub degree_min: i64,
    pub degree_max: i64,
    pub reference: DivisorClass,
    /// Keep only classes whose coordinates have gcd 1.
    pub primitive_only: bool,
}

impl EnumerationQuery {
    pub fn new(square: i64, degree_min: i64, degree_max: i64, reference: DivisorClass) -> Result<Self> {
        if degree_min > degree_max {
            return Err(Error::InvalidWindow {
                min: degree_min,
                max: degree_max,
            });
        }
        Ok(EnumerationQuery {
            square,
            degree_min,
            degree_max,
            reference,
            primitive_only: false,
        })
    }

    pub fn primitive(mut self) -> Self {
        self.primitive_only = true;
        self
    }

    fn validate(&self, lattice: &IntegralLattice) -> Result<i64> {
        if self.degree_min > self.degree_max {
            return Err(Error::InvalidWindow {
                min: self.degree_min,
                max: self.degree_max,
            });
        }
        check_len(lattice.rank(), self.reference.len())?;
        let sig = lattice.signature();
        if !sig.is_hyperbolic() {
            return Err(Error::WrongSignature {
                positives: sig.positives,
                negatives: sig.negatives,
                expected_negatives: lattice.rank() - 1,
            });
        }
        let b2 = lattice.self_intersection(&self.reference)?;
        if b2 <= 0 {
            return Err(Error::ReferenceNotPositive { square: b2 });
        }
        Ok(b2)
    }
}

/// Precomputed data for the per-degree subproblems of one reference class.
struct DegreeSlicer {
    /// Unimodular basis change, columns are the new basis vectors.
    basis: Vec<Vec<BigInt>>,
    /// gcd of the degree functional.
    content: i64,
    /// `a` = square of the first new basis vector.
    head: BigRational,
    /// `N^-1 n`.
    shift: Vec<BigRational>,
    /// `n^T N^-1 n`.
    shift_norm: BigRational,
    /// Decomposition of `N`.
    decomposition: Matrix,
}

impl DegreeSlicer {
    fn new(lattice: &IntegralLattice, reference: &DivisorClass) -> Result<Self> {
        let functional = lattice.dual_vector(reference)?;
        let n = functional.len();
        let (basis, content) = unimodular_completion(&functional);

        let gram: Vec<Vec<BigInt>> = lattice
            .gram()
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let transformed = congruent(&gram, &basis);
        let head = BigRational::from_integer(transformed[0][0].clone());
        let off: Vec<BigRational> = (1..n)
            .map(|j| BigRational::from_integer(transformed[0][j].clone()))
            .collect();
        let definite: Matrix = (1..n)
            .map(|i| {
                (1..n)
                    .map(|j| BigRational::from_integer(-transformed[i][j].clone()))
                    .collect()
            })
            .collect();

        let (shift, shift_norm, decomposition) = if n == 1 {
            (Vec::new(), BigRational::zero(), Vec::new())
        } else {
            let decomposition =
                definite_decomposition(&definite).expect("B^perp is negative definite");
            let shift = solve(&definite, &off).expect("definite matrix is invertible");
            let shift_norm = off
                .iter()
                .zip(&shift)
                .fold(BigRational::zero(), |acc, (a, b)| acc + a * b);
            (shift, shift_norm, decomposition)
        };
        Ok(DegreeSlicer {
            basis,
            content,
            head,
            shift,
            shift_norm,
            decomposition,
        })
    }

    /// All `v` with `v^2 = square` and `v . B = degree`.
    fn classes_of_degree(&self, square: i64, degree: i64) -> Result<Vec<DivisorClass>> {
        if degree % self.content != 0 {
            return Ok(Vec::new());
        }
        let t = BigRational::from_integer(BigInt::from(degree / self.content));
        let target = &t * &t * (&self.head + &self.shift_norm) - BigRational::from_integer(square.into());
        if target.is_negative() {
            return Ok(Vec::new());
        }
        let center: Vec<BigRational> = self.shift.iter().map(|s| s * &t).collect();

        let mut tails = Vec::new();
        let m = center.len();
        let mut y = vec![BigInt::zero(); m];
        self.descend(m, &center, &target, &BigRational::zero(), &mut y, &mut tails);

        let t_int = t.to_integer();
        let mut out = Vec::with_capacity(tails.len());
        for tail in tails {
            let coords: Vec<i64> = self
                .basis
                .iter()
                .map(|row| {
                    let mut s = &row[0] * &t_int;
                    for (k, yk) in tail.iter().enumerate() {
                        s += &row[k + 1] * yk;
                    }
                    big_to_i64(&s)
                })
                .collect::<Result<_>>()?;
            out.push(DivisorClass::new(coords));
        }
        Ok(out)
    }

    /// Fills coordinates `level-1, ..., 0` of `y` given the higher ones.
    fn descend(
        &self,
        level: usize,
        center: &[BigRational],
        target: &BigRational,
        partial: &BigRational,
        y: &mut Vec<BigInt>,
        out: &mut Vec<Vec<BigInt>>,
    ) {
        if level == 0 {
            if partial == target {
                out.push(y.clone());
            }
            return;
        }
        let i = level - 1;
        let q = &self.decomposition;
        let mut c = center[i].clone();
        for j in level..y.len() {
            let w = BigRational::from_integer(y[j].clone()) - &center[j];
            c -= &q[i][j] * w;
        }
        let remaining = target - partial;
        for yi in integers_in_ellipse(&q[i][i], &c, &remaining) {
            let u = BigRational::from_integer(yi.clone()) - &c;
            let next = partial + &q[i][i] * &u * &u;
            y[i] = yi;
            self.descend(i, center, target, &next, y, out);
        }
        y[i] = BigInt::zero();
    }
}

/// Unimodular `U` (as rows of a matrix whose columns are basis vectors) with
/// `g^T U = (h, 0, ..., 0)`, `h = gcd(g) > 0`.
fn unimodular_completion(g: &[i64]) -> (Vec<Vec<BigInt>>, i64) {
    let n = g.len();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    let mut a: Vec<BigInt> = g.iter().map(|&x| BigInt::from(x)).collect();

    // move a nonzero entry to the front
    if let Some(k) = a.iter().position(|x| !x.is_zero()) {
        a.swap(0, k);
        for row in u.iter_mut() {
            row.swap(0, k);
        }
    }
    for j in 1..n {
        if a[j].is_zero() {
            continue;
        }
        let e = a[0].extended_gcd(&a[j]);
        let (x, y, d) = (e.x, e.y, e.gcd);
        let p = &a[j] / &d;
        let q = &a[0] / &d;
        // [col0, colj] <- [col0, colj] * [[x, -p], [y, q]], determinant 1
        for row in u.iter_mut() {
            let c0 = row[0].clone();
            let cj = row[j].clone();
            row[0] = &x * &c0 + &y * &cj;
            row[j] = -&p * &c0 + &q * &cj;
        }
        a[0] = d;
        a[j] = BigInt::zero();
    }
    if a[0].is_negative() {
        for row in u.iter_mut() {
            row[0] = -row[0].clone();
        }
        a[0] = -a[0].clone();
    }
    let h = big_to_i64(&a[0]).expect("gcd bounded by input");
    (u, h)
}

fn congruent(g: &[Vec<BigInt>], u: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = g.len();
    let gu: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(BigInt::zero(), |s, k| s + &g[i][k] * &u[k][j]))
                .collect()
        })
        .collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(BigInt::zero(), |s, k| s + &u[k][i] * &gu[k][j]))
                .collect()
        })
        .collect()
}

/// Every nonzero class `v` with `v^2 = query.square` and degree in the query
/// window, sorted lexicographically.
///
/// The lattice must have signature `(1, rank - 1)`; the zero vector is never
/// returned.
pub fn enumerate_classes(lattice: &IntegralLattice, query: &EnumerationQuery) -> Result<Vec<DivisorClass>> {
    query.validate(lattice)?;
    let slicer = DegreeSlicer::new(lattice, &query.reference)?;
    let mut out = Vec::new();
    for d in query.degree_min..=query.degree_max {
        for v in slicer.classes_of_degree(query.square, d)? {
            if v.is_zero() {
                continue;
            }
            if query.primitive_only && !is_primitive(&v)? {
                continue;
            }
            debug_assert_eq!(lattice.self_intersection(&v).ok(), Some(query.square));
            debug_assert_eq!(lattice.pairing(&v, &query.reference).ok(), Some(d));
            out.push(v);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Smallest box half-width guaranteed to contain every solution of `query`.
///
/// Uses the positive definite majorant `M(v) = 2 (v.B)^2 - B^2 v^2`: every
/// solution has `M(v) = 2 d^2 - B^2 c <= R`, and on the ellipsoid `M(v) <= R`
/// each coordinate obeys `v_i^2 <= R (M^-1)_ii`.
pub fn provable_box_bound(lattice: &IntegralLattice, query: &EnumerationQuery) -> Result<i64> {
    let b2 = query.validate(lattice)?;
    let n = lattice.rank();
    let g = lattice.dual_vector(&query.reference)?;
    let majorant: Matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let v = 2 * g[i] as i128 * g[j] as i128
                        - b2 as i128 * lattice.gram()[i][j] as i128;
                    BigRational::from_integer(BigInt::from(v))
                })
                .collect()
        })
        .collect();
    let radius = [query.degree_min, query.degree_max]
        .iter()
        .map(|&d| 2 * d as i128 * d as i128 - b2 as i128 * query.square as i128)
        .max()
        .unwrap();
    if radius < 0 {
        return Ok(0);
    }
    let radius = BigRational::from_integer(BigInt::from(radius));
    let mut bound = BigInt::zero();
    for i in 0..n {
        let mut e = vec![BigRational::zero(); n];
        e[i] = BigRational::one();
        let col = solve(&majorant, &e).expect("majorant is definite");
        let b = floor_sqrt(&(&radius * &col[i]));
        bound = bound.max(b);
    }
    big_to_i64(&bound)
}

/// Exhaustive search over the box `[-box_bound, box_bound]^rank`.
///
/// Independent of [`enumerate_classes`]; meant as a test oracle. Fails if
/// `box_bound` is below [`provable_box_bound`].
pub fn brute_force_classes(
    lattice: &IntegralLattice,
    query: &EnumerationQuery,
    box_bound: i64,
) -> Result<Vec<DivisorClass>> {
    let required = provable_box_bound(lattice, query)?;
    if box_bound < required {
        return Err(Error::BoxTooSmall {
            given: box_bound,
            required,
        });
    }
    let n = lattice.rank();
    let mut coords = vec![-box_bound; n];
    let mut out = Vec::new();
    loop {
        let v = DivisorClass::new(coords.clone());
        if !v.is_zero() && lattice.self_intersection(&v)? == query.square {
            let d = lattice.pairing(&v, &query.reference)?;
            if (query.degree_min..=query.degree_max).contains(&d)
                && (!query.primitive_only || is_primitive(&v)?)
            {
                out.push(v);
            }
        }
        // odometer
        let mut k = n;
        loop {
            if k == 0 {
                out.sort();
                return Ok(out);
            }
            k -= 1;
            if coords[k] < box_bound {
                coords[k] += 1;
                break;
            }
            coords[k] = -box_bound;
        }
    }
}
