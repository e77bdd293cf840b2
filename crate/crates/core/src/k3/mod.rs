//! The decision procedure for `H^1(X, Omega^1 (x) B)` on a polarized K3
//! surface, together with the elliptic fibration data it consumes.

mod fibration;
mod kodaira;
mod rules;
mod verdict;

pub use fibration::{validate_fibration, FibrationData, FibrationViolation, SingularFiber, SINGULAR_LOCUS_DEGREE};
pub use kodaira::{KodairaType, ParseKodairaError};
pub use rules::{
    converse_threshold, registry, RuleId, HIGH_DEGREE_THRESHOLD, LOW_PENCIL_DEGREE, PROKHOROV_BOUND,
    RIEMANN_ROCH_THRESHOLD,
};
pub use verdict::{
    bott_verdict, euler_char_line_bundle, euler_char_omega_twist, propagate_multiples, rank_one_verdict,
    BottVanishing, Propagation, Reason, Status, Verdict,
};
