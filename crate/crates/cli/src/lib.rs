//! Library side of the `k3bott` command: input documents, reports and the
//! text produced by each subcommand.

pub mod report;
pub mod spec;

use std::fmt::Write as _;

use k3bott::delpezzo::{dual_graph, minus_one_curves, DelPezzoLattice, AMPLE_TEST_DEGREES};
use k3bott::{enumerate_classes, DivisorClass, EnumerationQuery};
use serde::{Deserialize, Serialize};

pub use report::{analyze, exit_code, render_text, Report, INPUT_ERROR};
pub use spec::{InputError, SurfaceSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRow {
    pub class: DivisorClass,
    pub square: i64,
    pub degree: i64,
}

/// Classes of the given square with degree in `[min, max]` against the
/// spec's ample class.
pub fn enumerate(spec: &SurfaceSpec, square: i64, min: i64, max: i64) -> Result<Vec<ClassRow>, InputError> {
    let (lattice, ample) = spec.lattice_and_ample()?;
    let query = EnumerationQuery::new(square, min, max, ample.clone())
        .map_err(|e| InputError::new("--degree-min", e))?;
    let classes = enumerate_classes(&lattice, &query).map_err(|e| InputError::new("", e))?;
    classes
        .into_iter()
        .map(|class| {
            let degree = lattice.pairing(&class, &ample).map_err(|e| InputError::new("", e))?;
            Ok(ClassRow { class, square, degree })
        })
        .collect()
}

pub fn render_classes(rows: &[ClassRow]) -> String {
    let mut out = String::new();
    for r in rows {
        let _ = writeln!(out, "{}  square {}  degree {}", r.class, r.square, r.degree);
    }
    let _ = writeln!(out, "{} classes", rows.len());
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DelPezzoSummary {
    pub degree: i64,
    pub curves: Vec<String>,
    pub classes: Vec<DivisorClass>,
    pub edges: Vec<(usize, usize)>,
    pub regularity: Option<usize>,
    pub girth: Option<usize>,
    pub petersen: bool,
    pub cycle: bool,
    pub path: bool,
}

pub fn delpezzo(degree: i64) -> Result<DelPezzoSummary, InputError> {
    if !AMPLE_TEST_DEGREES.contains(&degree) {
        return Err(InputError::new(
            "--degree",
            format!(
                "{degree} is outside {}..={}",
                AMPLE_TEST_DEGREES.start(),
                AMPLE_TEST_DEGREES.end()
            ),
        ));
    }
    let dp = DelPezzoLattice::new(degree).map_err(|e| InputError::new("--degree", e))?;
    let curves = minus_one_curves(&dp);
    let graph = dual_graph(&dp, &curves).map_err(|e| InputError::new("", e))?;
    Ok(DelPezzoSummary {
        degree,
        curves: curves.iter().map(ToString::to_string).collect(),
        classes: curves.iter().map(|c| c.class.clone()).collect(),
        edges: graph.edges(),
        regularity: graph.regularity(),
        girth: graph.girth(),
        petersen: graph.is_petersen(),
        cycle: graph.is_cycle(),
        path: graph.is_path(),
    })
}

pub fn render_delpezzo(s: &DelPezzoSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "del Pezzo surface of degree {}: {} (-1)-curves", s.degree, s.curves.len());
    for (i, (name, class)) in s.curves.iter().zip(&s.classes).enumerate() {
        let neighbours: Vec<String> = s
            .edges
            .iter()
            .filter_map(|&(a, b)| match (a == i, b == i) {
                (true, _) => Some(b.to_string()),
                (_, true) => Some(a.to_string()),
                _ => None,
            })
            .collect();
        let _ = writeln!(out, "{i:>2}  {name:<12} {class}  meets {}", neighbours.join(" "));
    }
    let _ = writeln!(out, "edges: {}", s.edges.len());
    match s.regularity {
        Some(k) => {
            let _ = writeln!(out, "regular of degree {k}");
        }
        None => {
            let _ = writeln!(out, "not regular");
        }
    }
    match s.girth {
        Some(g) => {
            let _ = writeln!(out, "girth: {g}");
        }
        None => {
            let _ = writeln!(out, "girth: none (acyclic)");
        }
    }
    let yes = |b: bool| if b { "yes" } else { "no" };
    let _ = writeln!(out, "Petersen: {}", yes(s.petersen));
    if s.cycle {
        let _ = writeln!(out, "shape: {}-cycle", s.curves.len());
    } else if s.path {
        let _ = writeln!(out, "shape: path");
    }
    out
}
