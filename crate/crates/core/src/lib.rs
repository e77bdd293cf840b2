//! Exact lattice computations deciding the vanishing of `H^1(X, Omega^1 (x) B)`
//! for polarized K3 surfaces, together with the cone-of-lines machinery of
//! low-degree del Pezzo surfaces.

#![allow(clippy::needless_range_loop)]

mod arith;
pub mod delpezzo;
pub mod enumerate;
mod error;
pub mod k3;
pub mod lattice;
pub mod positivity;

pub use enumerate::{brute_force_classes, enumerate_classes, provable_box_bound, EnumerationQuery};
pub use error::{Error, Result};
pub use lattice::{
    is_primitive, pairing, self_intersection, signature, validate_k3_lattice, DivisorClass,
    IntegralLattice, LatticeSignature, Violation,
};
pub use positivity::PolarizedLattice;
