use std::fmt;

use serde::{Deserialize, Serialize};

use super::KodairaType;
use crate::lattice::{is_primitive, DivisorClass};
use crate::positivity::{is_nef, PolarizedLattice};

/// Total length of the non-smooth locus of an elliptic K3 surface.
pub const SINGULAR_LOCUS_DEGREE: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularFiber {
    #[serde(rename = "type")]
    pub kind: KodairaType,
    pub count: u32,
}

/// An elliptic fibration given by its fiber class and the multiset of its
/// singular fibers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationData {
    pub fiber_class: DivisorClass,
    pub singular_fibers: Vec<SingularFiber>,
}

impl FibrationData {
    pub fn new(fiber_class: DivisorClass, fibers: &[(KodairaType, u32)]) -> Self {
        FibrationData {
            fiber_class,
            singular_fibers: fibers
                .iter()
                .map(|&(kind, count)| SingularFiber { kind, count })
                .collect(),
        }
    }

    pub fn has(&self, kind: KodairaType) -> bool {
        self.singular_fibers
            .iter()
            .any(|f| f.kind == kind && f.count > 0)
    }

    pub fn s_degree_total(&self) -> u64 {
        self.singular_fibers
            .iter()
            .map(|f| f.kind.s_degree() as u64 * f.count as u64)
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FibrationViolation {
    Dimension { expected: usize, found: usize },
    NotIsotropic { square: i64 },
    NotPrimitive,
    NotNef,
    NonPositiveDegree { degree: i64 },
    ZeroCount { fiber: KodairaType },
    SingularLocusDegree { total: u64 },
    Inadmissible { fiber: KodairaType, degree: i64 },
}

impl fmt::Display for FibrationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FibrationViolation::Dimension { expected, found } => {
                write!(f, "fiber class has {found} coordinates, lattice rank is {expected}")
            }
            FibrationViolation::NotIsotropic { square } => {
                write!(f, "fiber class has square {square}, expected 0")
            }
            FibrationViolation::NotPrimitive => write!(f, "fiber class is not primitive"),
            FibrationViolation::NotNef => write!(f, "fiber class is not nef"),
            FibrationViolation::NonPositiveDegree { degree } => {
                write!(f, "fiber class has degree {degree} against the polarization")
            }
            FibrationViolation::ZeroCount { fiber } => write!(f, "fiber type {fiber} has count 0"),
            FibrationViolation::SingularLocusDegree { total } => write!(
                f,
                "singular fibers contribute {total} to the non-smooth locus, expected {SINGULAR_LOCUS_DEGREE}"
            ),
            FibrationViolation::Inadmissible { fiber, degree } => write!(
                f,
                "fiber type {fiber} has {} components, more than the fiber degree {degree}",
                fiber.component_count()
            ),
        }
    }
}

/// Checks that the fiber class is a primitive nef isotropic class of positive
/// degree `r`, that the singular fibers add up to a non-smooth locus of degree
/// 24, and that every fiber type has at most `r` components.
pub fn validate_fibration(
    polarized: &PolarizedLattice,
    data: &FibrationData,
) -> Result<(), Vec<FibrationViolation>> {
    let lattice = polarized.lattice();
    let e = &data.fiber_class;
    if e.len() != lattice.rank() {
        return Err(vec![FibrationViolation::Dimension {
            expected: lattice.rank(),
            found: e.len(),
        }]);
    }
    let mut violations = Vec::new();
    // overflow in these pairings means the class cannot be a low-degree fiber
    let square = lattice.self_intersection(e).unwrap_or(i64::MIN);
    let degree = polarized.degree(e).unwrap_or(i64::MIN);
    if square != 0 {
        violations.push(FibrationViolation::NotIsotropic { square });
    }
    if degree < 1 {
        violations.push(FibrationViolation::NonPositiveDegree { degree });
    }
    if !is_primitive(e).unwrap_or(false) {
        violations.push(FibrationViolation::NotPrimitive);
    }
    if square == 0 && degree >= 1 && !is_nef(polarized, e).map(|n| n.is_nef()).unwrap_or(false) {
        violations.push(FibrationViolation::NotNef);
    }
    for fiber in &data.singular_fibers {
        if fiber.count == 0 {
            violations.push(FibrationViolation::ZeroCount { fiber: fiber.kind });
        }
        if degree >= 1 && !fiber.kind.admissible_for_degree(degree) {
            violations.push(FibrationViolation::Inadmissible {
                fiber: fiber.kind,
                degree,
            });
        }
    }
    let total = data.s_degree_total();
    if total != SINGULAR_LOCUS_DEGREE as u64 {
        violations.push(FibrationViolation::SingularLocusDegree { total });
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}
