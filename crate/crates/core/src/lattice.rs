//! Integral lattices, divisor classes and exact invariants of the intersection form.

use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{gcd_all, to_rational_matrix};
use crate::{Error, Result};

/// A class in a lattice, given by its coordinates in the lattice basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisorClass(Vec<i64>);

impl DivisorClass {
    pub fn new(coords: Vec<i64>) -> Self {
        DivisorClass(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass(vec![0; rank])
    }

    pub fn scaled(&self, k: i64) -> Result<Self> {
        self.0
            .iter()
            .map(|&x| x.checked_mul(k).ok_or(Error::Overflow))
            .collect::<Result<_>>()
            .map(DivisorClass)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        check_len(self.len(), other.len())?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_add(b).ok_or(Error::Overflow))
            .collect::<Result<_>>()
            .map(DivisorClass)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scaled(-1)?)
    }

    pub fn neg(&self) -> Self {
        DivisorClass(self.0.iter().map(|x| -x).collect())
    }

    /// Exact division by `k`, if every coordinate is divisible.
    pub fn divided(&self, k: i64) -> Option<Self> {
        if k == 0 || self.0.iter().any(|x| x % k != 0) {
            return None;
        }
        Some(DivisorClass(self.0.iter().map(|x| x / k).collect()))
    }
}

impl From<Vec<i64>> for DivisorClass {
    fn from(coords: Vec<i64>) -> Self {
        DivisorClass(coords)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSignature {
    pub positives: usize,
    pub negatives: usize,
}

impl LatticeSignature {
    pub fn is_hyperbolic(&self) -> bool {
        self.positives == 1
    }
}

impl fmt::Display for LatticeSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.positives, self.negatives)
    }
}

/// A nondegenerate symmetric bilinear form on `Z^rank`.
///
/// Basis labels are carried along for display and never take part in any
/// computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralLattice {
    gram: Vec<Vec<i64>>,
    labels: Vec<String>,
}

impl IntegralLattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let rank = gram.len();
        if rank == 0 {
            return Err(Error::EmptyLattice);
        }
        for (row, entries) in gram.iter().enumerate() {
            if entries.len() != rank {
                return Err(Error::NotSquare {
                    row,
                    len: entries.len(),
                    expected: rank,
                });
            }
        }
        for i in 0..rank {
            for j in i + 1..rank {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        let lattice = IntegralLattice {
            gram,
            labels: Vec::new(),
        };
        if lattice.inertia().zeros > 0 {
            return Err(Error::Degenerate);
        }
        Ok(lattice)
    }

    /// `diag(entries)`.
    pub fn diagonal(entries: &[i64]) -> Result<Self> {
        let n = entries.len();
        let gram = (0..n)
            .map(|i| (0..n).map(|j| if i == j { entries[i] } else { 0 }).collect())
            .collect();
        Self::new(gram)
    }

    /// The hyperbolic plane `U`.
    pub fn hyperbolic_plane() -> Self {
        Self::new(vec![vec![0, 1], vec![1, 0]]).expect("U is nondegenerate")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        check_len(self.rank(), labels.len())?;
        self.labels = labels;
        Ok(self)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[i][i] % 2 == 0)
    }

    /// `v^T G w`.
    pub fn pairing(&self, v: &DivisorClass, w: &DivisorClass) -> Result<i64> {
        check_len(self.rank(), v.len())?;
        check_len(self.rank(), w.len())?;
        let mut acc: i128 = 0;
        for (i, &vi) in v.coords().iter().enumerate() {
            if vi == 0 {
                continue;
            }
            let row: i128 = self.gram[i]
                .iter()
                .zip(w.coords())
                .map(|(&g, &wj)| g as i128 * wj as i128)
                .sum();
            acc = acc
                .checked_add(vi as i128 * row)
                .ok_or(Error::Overflow)?;
        }
        i64::try_from(acc).map_err(|_| Error::Overflow)
    }

    pub fn self_intersection(&self, v: &DivisorClass) -> Result<i64> {
        self.pairing(v, v)
    }

    /// The linear functional `w -> v . w`, i.e. `G v`.
    pub fn dual_vector(&self, v: &DivisorClass) -> Result<Vec<i64>> {
        check_len(self.rank(), v.len())?;
        self.gram
            .iter()
            .map(|row| {
                let s: i128 = row
                    .iter()
                    .zip(v.coords())
                    .map(|(&g, &x)| g as i128 * x as i128)
                    .sum();
                i64::try_from(s).map_err(|_| Error::Overflow)
            })
            .collect()
    }

    pub fn signature(&self) -> LatticeSignature {
        let inertia = self.inertia();
        LatticeSignature {
            positives: inertia.positives,
            negatives: inertia.negatives,
        }
    }

    pub fn determinant(&self) -> BigRational {
        // every congruence step has determinant +-1 and is applied on both
        // sides, so the pivot product is the determinant
        let (pivots, zeros) = congruence_diagonalize(to_rational_matrix(&self.gram));
        if zeros > 0 {
            return BigRational::zero();
        }
        pivots.iter().fold(crate::arith::rat(1), |acc, p| acc * p)
    }

    pub fn is_primitive(&self, v: &DivisorClass) -> Result<bool> {
        check_len(self.rank(), v.len())?;
        is_primitive(v)
    }

    pub(crate) fn inertia(&self) -> Inertia {
        let (pivots, zeros) = congruence_diagonalize(to_rational_matrix(&self.gram));
        Inertia {
            positives: pivots.iter().filter(|p| p.is_positive()).count(),
            negatives: pivots.iter().filter(|p| p.is_negative()).count(),
            zeros,
        }
    }
}

impl fmt::Display for IntegralLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .gram
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Inertia {
    pub positives: usize,
    pub negatives: usize,
    pub zeros: usize,
}

/// Symmetric Gaussian elimination over the rationals.
///
/// Returns the nonzero diagonal pivots of a congruent diagonal matrix and the
/// number of zero diagonal entries. When every remaining diagonal entry is zero
/// but some off-diagonal entry `a_ij` is not, the basis change `e_i -> e_i + e_j`
/// produces the pivot `2 a_ij`.
fn congruence_diagonalize(mut a: Vec<Vec<BigRational>>) -> (Vec<BigRational>, usize) {
    let n = a.len();
    let mut pivots = Vec::with_capacity(n);
    for k in 0..n {
        let diag = (k..n).find(|&i| !a[i][i].is_zero());
        let pivot_index = match diag {
            Some(i) => i,
            None => {
                let off = (k..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_zero());
                match off {
                    Some((i, j)) => {
                        for c in 0..n {
                            let t = a[j][c].clone();
                            a[i][c] += t;
                        }
                        for r in 0..n {
                            let t = a[r][j].clone();
                            a[r][i] += t;
                        }
                        i
                    }
                    None => return (pivots, n - k),
                }
            }
        };
        a.swap(k, pivot_index);
        for row in a.iter_mut() {
            row.swap(k, pivot_index);
        }
        let p = a[k][k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &p;
            for c in k..n {
                let delta = &f * &a[k][c];
                a[i][c] -= delta;
            }
            for r in k..n {
                let delta = &f * &a[r][k];
                a[r][i] -= delta;
            }
        }
        pivots.push(p);
    }
    (pivots, 0)
}

/// True iff the gcd of the coordinates is 1.
pub fn is_primitive(v: &DivisorClass) -> Result<bool> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(gcd_all(v.coords()) == 1)
}

pub fn pairing(lattice: &IntegralLattice, v: &DivisorClass, w: &DivisorClass) -> Result<i64> {
    lattice.pairing(v, w)
}

pub fn self_intersection(lattice: &IntegralLattice, v: &DivisorClass) -> Result<i64> {
    lattice.self_intersection(v)
}

pub fn signature(lattice: &IntegralLattice) -> LatticeSignature {
    lattice.signature()
}

/// Reasons a lattice (or a lattice with a chosen ample class) is rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    OddLattice { index: usize, value: i64 },
    Signature { positives: usize, negatives: usize },
    NonPositiveSquare { square: i64 },
    RootOrthogonal { class: DivisorClass },
    IsotropicOrthogonal { class: DivisorClass },
    Arithmetic { message: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OddLattice { index, value } => {
                write!(f, "odd lattice: diagonal entry {index} is {value}")
            }
            Violation::Signature {
                positives,
                negatives,
            } => write!(
                f,
                "signature ({positives}, {negatives}) is not (1, {})",
                positives + negatives - 1
            ),
            Violation::NonPositiveSquare { square } => {
                write!(f, "ample class has square {square} <= 0")
            }
            Violation::RootOrthogonal { class } => {
                write!(f, "(-2)-class {class} is orthogonal to the ample class")
            }
            Violation::IsotropicOrthogonal { class } => {
                write!(f, "isotropic class {class} is orthogonal to the ample class")
            }
            Violation::Arithmetic { message } => write!(f, "{message}"),
        }
    }
}

/// Checks the conditions every K3 Picard lattice satisfies: an even form of
/// signature `(1, rank - 1)`.
pub fn validate_k3_lattice(lattice: &IntegralLattice) -> std::result::Result<(), Vec<Violation>> {
    let mut violations: Vec<Violation> = (0..lattice.rank())
        .filter(|&i| lattice.gram[i][i] % 2 != 0)
        .map(|i| Violation::OddLattice {
            index: i,
            value: lattice.gram[i][i],
        })
        .collect();
    let sig = lattice.signature();
    if !sig.is_hyperbolic() {
        violations.push(Violation::Signature {
            positives: sig.positives,
            negatives: sig.negatives,
        });
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    fn class(v: &[i64]) -> DivisorClass {
        DivisorClass::new(v.to_vec())
    }

    fn lat(g: &[&[i64]]) -> IntegralLattice {
        IntegralLattice::new(g.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn hyperbolic_pairing() {
        let u = IntegralLattice::hyperbolic_plane();
        assert_eq!(u.pairing(&class(&[1, 0]), &class(&[0, 1])).unwrap(), 1);
        assert_eq!(u.self_intersection(&class(&[1, 1])).unwrap(), 2);
    }

    #[test]
    fn degree_62_lattice_pairing() {
        let l = lat(&[&[2, 5], &[5, 10]]);
        assert_eq!(l.self_intersection(&class(&[1, 2])).unwrap(), 62);
        assert_eq!(l.self_intersection(&class(&[1, 0])).unwrap(), 2);
    }

    #[test]
    fn unigonal_pairing() {
        let l = lat(&[&[-2, 1], &[1, 0]]);
        for m in 0..50 {
            assert_eq!(l.self_intersection(&class(&[1, m])).unwrap(), 2 * m - 2);
        }
        assert_eq!(l.self_intersection(&class(&[1, 0])).unwrap(), -2);
    }

    #[test]
    fn dimension_mismatch() {
        let u = IntegralLattice::hyperbolic_plane();
        assert_eq!(
            u.pairing(&class(&[1, 0, 0]), &class(&[0, 1])),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn signatures() {
        let sig = |l: &IntegralLattice| {
            let s = l.signature();
            (s.positives, s.negatives)
        };
        assert_eq!(sig(&IntegralLattice::hyperbolic_plane()), (1, 1));
        assert_eq!(
            sig(&IntegralLattice::diagonal(&[1, -1, -1, -1, -1]).unwrap()),
            (1, 4)
        );
        assert_eq!(sig(&lat(&[&[2, 5], &[5, 10]])), (1, 1));
        // all-zero diagonal forces the e_i + e_j pivot
        assert_eq!(
            sig(&lat(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -2]])),
            (1, 2)
        );
    }

    #[test]
    fn determinant_is_exact() {
        assert_eq!(lat(&[&[2, 5], &[5, 10]]).determinant(), rat(-5));
        assert_eq!(IntegralLattice::hyperbolic_plane().determinant(), rat(-1));
        assert_eq!(lat(&[&[-2, 1], &[1, 0]]).determinant(), rat(-1));
    }

    #[test]
    fn rejects_bad_gram() {
        assert_eq!(IntegralLattice::new(vec![]), Err(Error::EmptyLattice));
        assert_eq!(
            IntegralLattice::new(vec![vec![0, 1], vec![2, 0]]),
            Err(Error::NotSymmetric { row: 0, col: 1 })
        );
        assert_eq!(
            IntegralLattice::new(vec![vec![1, 1], vec![1, 1]]),
            Err(Error::Degenerate)
        );
        assert!(matches!(
            IntegralLattice::new(vec![vec![1, 1], vec![1]]),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&class(&[1, 21])).unwrap());
        assert!(!is_primitive(&class(&[6])).unwrap());
        assert!(!is_primitive(&class(&[2, 4])).unwrap());
        assert!(is_primitive(&class(&[-1, 0])).unwrap());
        assert_eq!(is_primitive(&class(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn k3_validation() {
        assert_eq!(validate_k3_lattice(&IntegralLattice::hyperbolic_plane()), Ok(()));
        let odd = IntegralLattice::diagonal(&[1, -1, -1, -1, -1]).unwrap();
        let v = validate_k3_lattice(&odd).unwrap_err();
        assert!(v.contains(&Violation::OddLattice { index: 0, value: 1 }));
        let definite = IntegralLattice::diagonal(&[2, 2]).unwrap();
        assert_eq!(
            validate_k3_lattice(&definite),
            Err(vec![Violation::Signature {
                positives: 2,
                negatives: 0
            }])
        );
    }

    fn small_gram(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec(-6i64..=6, n * n).prop_map(move |e| {
            let mut g = vec![vec![0; n]; n];
            for i in 0..n {
                for j in i..n {
                    g[i][j] = e[i * n + j];
                    g[j][i] = e[i * n + j];
                }
            }
            g
        })
    }

    /// Random unimodular matrix as a product of elementary shears and swaps.
    fn unimodular(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec((0..n, 0..n, -2i64..=2), 0..8).prop_map(move |ops| {
            let mut t: Vec<Vec<i64>> = (0..n)
                .map(|i| (0..n).map(|j| (i == j) as i64).collect())
                .collect();
            for (i, j, k) in ops {
                if i == j {
                    // column negation
                    for row in t.iter_mut() {
                        row[i] = -row[i];
                    }
                } else {
                    for row in t.iter_mut() {
                        row[j] += k * row[i];
                    }
                }
            }
            t
        })
    }

    fn congruent(g: &[Vec<i64>], t: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = g.len();
        let mut out = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0;
                for a in 0..n {
                    for b in 0..n {
                        s += t[a][i] * g[a][b] * t[b][j];
                    }
                }
                out[i][j] = s;
            }
        }
        out
    }

    proptest! {
        #[test]
        fn pairing_is_bilinear_and_symmetric(
            g in small_gram(3),
            v in proptest::collection::vec(-20i64..=20, 3),
            w in proptest::collection::vec(-20i64..=20, 3),
            u in proptest::collection::vec(-20i64..=20, 3),
            a in -5i64..=5,
            b in -5i64..=5,
        ) {
            // pairing itself does not need nondegeneracy; build the lattice
            // directly to cover degenerate samples too.
            let l = IntegralLattice { gram: g, labels: Vec::new() };
            let (v, w, u) = (class(&v), class(&w), class(&u));
            let comb = v.scaled(a).unwrap().checked_add(&w.scaled(b).unwrap()).unwrap();
            prop_assert_eq!(
                l.pairing(&comb, &u).unwrap(),
                a * l.pairing(&v, &u).unwrap() + b * l.pairing(&w, &u).unwrap()
            );
            prop_assert_eq!(l.pairing(&v, &w).unwrap(), l.pairing(&w, &v).unwrap());
        }

        #[test]
        fn signature_is_congruence_invariant(g in small_gram(4), t in unimodular(4)) {
            let l = IntegralLattice { gram: g.clone(), labels: Vec::new() };
            let m = IntegralLattice { gram: congruent(&g, &t), labels: Vec::new() };
            prop_assert_eq!(l.inertia(), m.inertia());
            prop_assert_eq!(l.determinant(), m.determinant());
        }

        #[test]
        fn primitive_iff_no_integral_quotient(v in proptest::collection::vec(-30i64..=30, 1..4)) {
            let c = class(&v);
            prop_assume!(!c.is_zero());
            let max = v.iter().map(|x| x.abs()).max().unwrap();
            let divisible = (2..=max).any(|k| c.divided(k).is_some());
            prop_assert_eq!(is_primitive(&c).unwrap(), !divisible);
        }
    }
}
