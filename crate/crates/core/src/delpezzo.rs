//! Lines on del Pezzo surfaces of degree at most 7 and the cone they span.
//!
//! A del Pezzo surface of degree `d` is modeled by `Z^{10-d}` with basis
//! `H, E_1, ..., E_{9-d}` and form `diag(1, -1, ..., -1)`. Only the lattice is
//! modeled, so the points blown up are in general position.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::enumerate::{enumerate_classes, EnumerationQuery};
use crate::lattice::{check_len, DivisorClass, IntegralLattice};
use crate::{Error, Result};

/// Degrees whose ample cone is tested against the lines.
pub const AMPLE_TEST_DEGREES: std::ops::RangeInclusive<i64> = 5..=7;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelPezzoLattice {
    degree: i64,
    lattice: IntegralLattice,
    canonical: DivisorClass,
}

impl DelPezzoLattice {
    /// Degrees 1 through 7.
    pub fn new(degree: i64) -> Result<Self> {
        if !(1..=7).contains(&degree) {
            return Err(Error::UnsupportedDegree(degree));
        }
        let rank = (10 - degree) as usize;
        let mut diag = vec![-1; rank];
        diag[0] = 1;
        let mut labels = vec!["H".to_string()];
        labels.extend((1..rank).map(|i| format!("E{i}")));
        let lattice = IntegralLattice::diagonal(&diag)?.with_labels(labels)?;
        let mut k = vec![1; rank];
        k[0] = -3;
        Ok(DelPezzoLattice {
            degree,
            lattice,
            canonical: DivisorClass::new(k),
        })
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn lattice(&self) -> &IntegralLattice {
        &self.lattice
    }

    /// `K = -3H + E_1 + ... + E_n`.
    pub fn canonical(&self) -> &DivisorClass {
        &self.canonical
    }

    pub fn anticanonical(&self) -> DivisorClass {
        self.canonical.neg()
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn hyperplane(&self) -> DivisorClass {
        self.basis(0)
    }

    /// `E_i` for `1 <= i <= 9 - degree`.
    pub fn exceptional(&self, i: usize) -> DivisorClass {
        assert!(i >= 1 && i < self.rank(), "no exceptional class E{i}");
        self.basis(i)
    }

    fn basis(&self, i: usize) -> DivisorClass {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        DivisorClass::new(v)
    }

    /// `aH - sum b_i E_i` from `(a, [b_1, ..])`.
    pub fn class(&self, h: i64, e: &[i64]) -> Result<DivisorClass> {
        check_len(self.rank() - 1, e.len())?;
        let mut v = vec![h];
        v.extend(e.iter().map(|b| -b));
        Ok(DivisorClass::new(v))
    }

    pub fn pairing(&self, a: &DivisorClass, b: &DivisorClass) -> Result<i64> {
        self.lattice.pairing(a, b)
    }

    fn check_ample_degree(&self) -> Result<()> {
        if AMPLE_TEST_DEGREES.contains(&self.degree) {
            Ok(())
        } else {
            Err(Error::UnsupportedDegree(self.degree))
        }
    }
}

/// A class `C` with `C^2 = -1` and `C . (-K) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MinusOneCurve {
    pub class: DivisorClass,
}

impl std::fmt::Display for MinusOneCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let c = self.class.coords();
        let mut out = String::new();
        match c[0] {
            0 => {}
            1 => out.push('H'),
            h => out.push_str(&format!("{h}H")),
        }
        for (i, &x) in c.iter().enumerate().skip(1) {
            let term = match x {
                0 => continue,
                1 => format!("E{i}"),
                -1 => format!("-E{i}"),
                x => format!("{x}E{i}"),
            };
            if !out.is_empty() && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
        }
        f.write_str(&out)
    }
}

/// Classical order: `E_1, ..., E_n`, then `H - E_i - E_j` by `(i, j)`, then
/// conics through five points, and so on.
fn standard_key(c: &DivisorClass) -> (i64, Vec<i64>, Vec<i64>) {
    let v = c.coords();
    (v[0], v[1..].iter().map(|x| -x.abs()).collect(), v.to_vec())
}

/// All `(-1)`-classes, in the classical order (so `E_1` comes first).
pub fn minus_one_curves(dp: &DelPezzoLattice) -> Vec<MinusOneCurve> {
    let query = EnumerationQuery::new(-1, 1, 1, dp.anticanonical())
        .expect("window 1..=1 is valid");
    let mut classes = enumerate_classes(&dp.lattice, &query)
        .expect("-K is a positive class of a hyperbolic lattice");
    classes.sort_by_cached_key(standard_key);
    classes.into_iter().map(|class| MinusOneCurve { class }).collect()
}

/// Intersection graph of a set of lines: an edge joins two lines meeting in a
/// point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualGraph {
    pub vertices: Vec<MinusOneCurve>,
    pub adjacency: Vec<Vec<usize>>,
}

pub fn dual_graph(dp: &DelPezzoLattice, curves: &[MinusOneCurve]) -> Result<DualGraph> {
    let n = curves.len();
    let mut adjacency = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            match dp.pairing(&curves[i].class, &curves[j].class)? {
                0 => {}
                1 => {
                    adjacency[i].push(j);
                    adjacency[j].push(i);
                }
                p => return Err(Error::UnexpectedIntersection(i, j, p)),
            }
        }
    }
    Ok(DualGraph {
        vertices: curves.to_vec(),
        adjacency,
    })
}

impl DualGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self
            .adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, nb)| nb.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
            .collect();
        out.sort();
        out
    }

    /// The common vertex degree, if the graph is regular.
    pub fn regularity(&self) -> Option<usize> {
        let first = self.adjacency.first()?.len();
        self.adjacency.iter().all(|nb| nb.len() == first).then_some(first)
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.distances(0).iter().all(Option::is_some)
    }

    fn distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(dist[u].unwrap() + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Length of a shortest cycle; `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        let n = self.vertex_count();
        let mut best: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adjacency[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    pub fn is_cycle(&self) -> bool {
        self.vertex_count() >= 3 && self.regularity() == Some(2) && self.is_connected()
    }

    pub fn is_path(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 || !self.is_connected() || self.edge_count() + 1 != n {
            return false;
        }
        self.adjacency.iter().all(|nb| nb.len() <= 2)
    }

    /// 10 vertices, 3-regular, girth 5: these characterize the Petersen graph.
    pub fn is_petersen(&self) -> bool {
        self.vertex_count() == 10 && self.regularity() == Some(3) && self.girth() == Some(5)
    }
}

fn line_degrees(dp: &DelPezzoLattice, l: &DivisorClass) -> Result<Vec<(MinusOneCurve, i64)>> {
    dp.check_ample_degree()?;
    check_len(dp.rank(), l.len())?;
    minus_one_curves(dp)
        .into_iter()
        .map(|c| {
            let d = dp.pairing(l, &c.class)?;
            Ok((c, d))
        })
        .collect()
}

/// `L` is nef iff it has nonnegative degree on every line (degrees 5 to 7).
pub fn dp_is_nef(dp: &DelPezzoLattice, l: &DivisorClass) -> Result<bool> {
    Ok(line_degrees(dp, l)?.iter().all(|(_, d)| *d >= 0))
}

/// `L` is ample iff it has positive degree on every line (degrees 5 to 7).
pub fn dp_is_ample(dp: &DelPezzoLattice, l: &DivisorClass) -> Result<bool> {
    Ok(line_degrees(dp, l)?.iter().all(|(_, d)| *d > 0))
}

/// `L = a(-K) + M` with `a` the least degree of `L` on a line and `M` nef of
/// degree 0 on `contracted`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmpleDecomposition {
    pub a: i64,
    pub m: DivisorClass,
    pub contracted: MinusOneCurve,
}

/// Splits an ample `L` as `a(-K) + M`. Among the lines where `L` has least
/// degree, `contracted` is the first in the classical order.
pub fn decompose_ample(dp: &DelPezzoLattice, l: &DivisorClass) -> Result<AmpleDecomposition> {
    let degrees = line_degrees(dp, l)?;
    if degrees.iter().any(|(_, d)| *d <= 0) {
        return Err(Error::NotAmple);
    }
    let a = degrees.iter().map(|(_, d)| *d).min().expect("every del Pezzo here has lines");
    let contracted = degrees
        .into_iter()
        .find(|(_, d)| *d == a)
        .map(|(c, _)| c)
        .unwrap();
    let m = l.checked_sub(&dp.anticanonical().scaled(a)?)?;
    Ok(AmpleDecomposition { a, m, contracted })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dp(d: i64) -> DelPezzoLattice {
        DelPezzoLattice::new(d).unwrap()
    }

    #[test]
    fn anticanonical_degree() {
        for d in 1..=7 {
            let x = dp(d);
            assert_eq!(x.lattice().self_intersection(x.canonical()).unwrap(), d);
        }
        assert_eq!(DelPezzoLattice::new(8), Err(Error::UnsupportedDegree(8)));
        assert_eq!(DelPezzoLattice::new(0), Err(Error::UnsupportedDegree(0)));
    }

    #[test]
    fn line_counts() {
        let counts: Vec<_> = (1..=7).map(|d| minus_one_curves(&dp(d)).len()).collect();
        assert_eq!(counts, vec![240, 56, 27, 16, 10, 6, 3]);
    }

    #[test]
    fn quintic_lines_in_classical_order() {
        let x = dp(5);
        let names: Vec<_> = minus_one_curves(&x).iter().map(ToString::to_string).collect();
        assert_eq!(
            names,
            [
                "E1", "E2", "E3", "E4", "H-E1-E2", "H-E1-E3", "H-E1-E4", "H-E2-E3", "H-E2-E4",
                "H-E3-E4"
            ]
        );
    }

    #[test]
    fn graphs() {
        let graph = |d| {
            let x = dp(d);
            dual_graph(&x, &minus_one_curves(&x)).unwrap()
        };
        let g5 = graph(5);
        assert_eq!((g5.vertex_count(), g5.edge_count()), (10, 15));
        assert_eq!(g5.regularity(), Some(3));
        assert_eq!(g5.girth(), Some(5));
        assert!(g5.is_petersen());
        let g6 = graph(6);
        assert!(g6.is_cycle() && g6.vertex_count() == 6);
        assert_eq!(g6.girth(), Some(6));
        let g7 = graph(7);
        assert!(g7.is_path());
        assert_eq!((g7.vertex_count(), g7.edge_count(), g7.girth()), (3, 2, None));
        assert!(!g6.is_petersen() && !g7.is_cycle());
    }

    #[test]
    fn unexpected_pairings_are_reported() {
        let x = dp(2);
        let e1 = MinusOneCurve { class: x.exceptional(1) };
        let cubic = MinusOneCurve { class: x.class(3, &[2, 1, 1, 1, 1, 1, 1]).unwrap() };
        assert_eq!(dual_graph(&x, &[e1.clone(), cubic]), Err(Error::UnexpectedIntersection(0, 1, 2)));
        assert_eq!(dual_graph(&x, &[e1.clone(), e1]), Err(Error::UnexpectedIntersection(0, 1, -1)));
    }

    #[test]
    fn ampleness() {
        let x = dp(5);
        let k = x.anticanonical();
        assert!(dp_is_ample(&x, &k).unwrap());
        let l12 = x.class(1, &[1, 1, 0, 0]).unwrap();
        assert!(!dp_is_ample(&x, &l12).unwrap());
        assert!(!dp_is_nef(&x, &l12).unwrap());
        let k_plus_h = k.checked_add(&x.hyperplane()).unwrap();
        assert!(dp_is_ample(&x, &k_plus_h).unwrap());
        assert!(dp_is_nef(&x, &x.hyperplane()).unwrap());
        assert!(!dp_is_ample(&x, &x.hyperplane()).unwrap());
        assert_eq!(dp_is_ample(&dp(4), &dp(4).anticanonical()), Err(Error::UnsupportedDegree(4)));
    }

    #[test]
    fn decompositions() {
        let x = dp(5);
        let k = x.anticanonical();
        let e1 = minus_one_curves(&x)[0].clone();
        assert_eq!(e1.class, x.exceptional(1));

        let d = decompose_ample(&x, &k.scaled(2).unwrap()).unwrap();
        assert_eq!((d.a, d.m.is_zero(), &d.contracted), (2, true, &e1));

        let d = decompose_ample(&x, &k.checked_add(&x.hyperplane()).unwrap()).unwrap();
        assert_eq!((d.a, &d.m, &d.contracted), (1, &x.hyperplane(), &e1));

        let d = decompose_ample(&x, &k.scaled(3).unwrap().checked_add(&x.hyperplane()).unwrap()).unwrap();
        assert_eq!((d.a, &d.m, &d.contracted), (3, &x.hyperplane(), &e1));
        assert_eq!(x.pairing(&d.m, &d.contracted.class).unwrap(), 0);

        assert_eq!(decompose_ample(&x, &x.hyperplane()), Err(Error::NotAmple));
    }
}
