use thiserror::Error;

use crate::k3::FibrationViolation;
use crate::lattice::Violation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("gram matrix is empty")]
    EmptyLattice,

    #[error("gram matrix is not square (row {row} has {len} entries, expected {expected})")]
    NotSquare { row: usize, len: usize, expected: usize },

    #[error("gram matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("gram matrix is degenerate")]
    Degenerate,

    #[error("the zero vector has no primitivity")]
    ZeroVector,

    #[error("integer overflow in lattice arithmetic")]
    Overflow,

    #[error("expected signature (1, {expected_negatives}), found ({positives}, {negatives})")]
    WrongSignature {
        positives: usize,
        negatives: usize,
        expected_negatives: usize,
    },

    #[error("reference class must have positive square, found {square}")]
    ReferenceNotPositive { square: i64 },

    #[error("empty degree window [{min}, {max}]")]
    InvalidWindow { min: i64, max: i64 },

    #[error("box bound {given} is below the provable coordinate bound {required}")]
    BoxTooSmall { given: i64, required: i64 },

    #[error("invalid polarization: {}", join(.0))]
    InvalidPolarization(Vec<Violation>),

    #[error("self-intersection {0} must be even")]
    OddSquare(i64),

    #[error("degree {0} must be even and positive")]
    InvalidDegree(i64),

    #[error("multiple {0} must be positive")]
    InvalidMultiple(i64),

    #[error("very ampleness criterion needs B^2 >= 4, found {0}")]
    SquareTooSmall(i64),

    #[error("fiber class {0:?} is not a nef primitive isotropic class of degree at most 4")]
    UnknownFiberClass(Vec<i64>),

    #[error("invalid fibration data: {}", join(.0))]
    InvalidFibration(Vec<FibrationViolation>),

    #[error("del Pezzo degree {0} is outside the supported range")]
    UnsupportedDegree(i64),

    #[error("class is not ample")]
    NotAmple,

    #[error("lines {0} and {1} meet with multiplicity {2}")]
    UnexpectedIntersection(usize, usize, i64),
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
