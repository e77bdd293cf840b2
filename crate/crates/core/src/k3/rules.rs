use serde::{Deserialize, Serialize};

/// The criteria the decision procedure can invoke.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleId {
    RiemannRoch,
    DegreeTwentyTwo,
    RankOneClassification,
    DoubleSexticSextuple,
    NoLowDegreePencil,
    FanoWindow,
    #[serde(rename = "anticanonical-degree-62")]
    AnticanonicalDegree62,
    SpecialFiber,
    UnigonalCriterion,
    EllipticConverse,
    EllipticWindow,
    MissingFiberData,
    MultiplePropagation,
}

impl RuleId {
    pub const ALL: [RuleId; 13] = [
        RuleId::RiemannRoch,
        RuleId::DegreeTwentyTwo,
        RuleId::RankOneClassification,
        RuleId::DoubleSexticSextuple,
        RuleId::NoLowDegreePencil,
        RuleId::FanoWindow,
        RuleId::AnticanonicalDegree62,
        RuleId::SpecialFiber,
        RuleId::UnigonalCriterion,
        RuleId::EllipticConverse,
        RuleId::EllipticWindow,
        RuleId::MissingFiberData,
        RuleId::MultiplePropagation,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::RiemannRoch => "riemann-roch",
            RuleId::DegreeTwentyTwo => "degree-twenty-two",
            RuleId::RankOneClassification => "rank-one-classification",
            RuleId::DoubleSexticSextuple => "double-sextic-sextuple",
            RuleId::NoLowDegreePencil => "no-low-degree-pencil",
            RuleId::FanoWindow => "fano-window",
            RuleId::AnticanonicalDegree62 => "anticanonical-degree-62",
            RuleId::SpecialFiber => "special-fiber",
            RuleId::UnigonalCriterion => "unigonal-criterion",
            RuleId::EllipticConverse => "elliptic-converse",
            RuleId::EllipticWindow => "elliptic-window",
            RuleId::MissingFiberData => "missing-fiber-data",
            RuleId::MultiplePropagation => "multiple-propagation",
        }
    }

    /// Human-readable statement of the criterion.
    pub fn citation(self) -> &'static str {
        match self {
            RuleId::RiemannRoch => {
                "Riemann-Roch: chi(X, Omega^1 (x) B) = B^2 - 20, so H^1 != 0 and Bott vanishing fails when B^2 < 20"
            }
            RuleId::DegreeTwentyTwo => {
                "every polarized K3 surface of degree 22 has H^1(X, Omega^1 (x) B) != 0"
            }
            RuleId::RankOneClassification => {
                "Picard number 1 and degree 20 or at least 24: H^1(X, Omega^1 (x) B) = 0 and X satisfies Bott vanishing (all multiples of B)"
            }
            RuleId::DoubleSexticSextuple => {
                "double cover of P^2 branched along a very general sextic, B = 6A of degree 72: anticanonical section of P(1,1,1,3), so H^1(X, Omega^1 (x) B) != 0"
            }
            RuleId::NoLowDegreePencil => {
                "B^2 >= 74 and no curve E with E^2 = 0 and 1 <= B.E <= 4: H^1(X, Omega^1 (x) B) = 0 (Prokhorov: (-K_Y)^3 <= 72 for Gorenstein canonical Fano 3-folds)"
            }
            RuleId::FanoWindow => {
                "no curve E with E^2 = 0 and 1 <= B.E <= 4: H^1 != 0 iff B^2 < 20 or X is an anticanonical section of a Fano 3-fold with isolated canonical Gorenstein singularities and B = -K_Y|X; Prokhorov's bound (-K_Y)^3 <= 72 leaves 20 <= B^2 <= 72 open"
            }
            RuleId::AnticanonicalDegree62 => {
                "lattice [[2,5],[5,10]] of an anticanonical section of P(O + O(2)) over P^2: degree 62, no isotropic classes, H^1(X, Omega^1 (x) B) != 0 for that surface"
            }
            RuleId::SpecialFiber => {
                "elliptic pencil E with r = B.E: a type II fiber (r = 1), type III fiber (r = 2) or type IV fiber (r = 3) forces H^1(X, Omega^1 (x) B) != 0"
            }
            RuleId::UnigonalCriterion => {
                "unigonal (B.E = 1): H^1(X, Omega^1 (x) B) != 0 iff B^2 <= 38 or some fiber is of type II; the 24 nodes impose independent conditions on |B + 2E| iff B^2 >= 40"
            }
            RuleId::EllipticConverse => {
                "elliptic pencil E with r = B.E and no special fiber: H^1(X, Omega^1 (x) B) = 0 when r = 2 and B^2 >= 92, r = 3 and B^2 >= 140, or r = 4 and B^2 >= 194"
            }
            RuleId::EllipticWindow => {
                "elliptic pencil of degree 2, 3 or 4 without special fibers below the converse threshold: not decided"
            }
            RuleId::MissingFiberData => {
                "the answer depends on the singular fibers of this elliptic pencil, which the Picard lattice does not determine"
            }
            RuleId::MultiplePropagation => {
                "B basepoint-free and ample with H^1(X, Omega^1 (x) B) = 0: H^1(X, Omega^1 (x) B^j) = 0 for all j >= 1"
            }
        }
    }
}

impl std::fmt::Display for RuleId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `(rule id, citation)` for every implemented criterion.
pub fn registry() -> Vec<(RuleId, &'static str)> {
    RuleId::ALL.iter().map(|&r| (r, r.citation())).collect()
}

/// B^2 below which Riemann-Roch forces nonvanishing.
pub const RIEMANN_ROCH_THRESHOLD: i64 = 20;
/// Largest anticanonical degree of a Gorenstein canonical Fano 3-fold.
pub const PROKHOROV_BOUND: i64 = 72;
/// B^2 from which the absence of low-degree pencils forces vanishing.
pub const HIGH_DEGREE_THRESHOLD: i64 = 74;
/// Largest B.E of an elliptic pencil that can obstruct vanishing.
pub const LOW_PENCIL_DEGREE: i64 = 4;

/// B^2 from which an elliptic pencil of degree `r` without special fibers
/// forces vanishing.
pub fn converse_threshold(r: i64) -> Option<i64> {
    match r {
        1 => Some(40),
        2 => Some(92),
        3 => Some(140),
        4 => Some(194),
        _ => None,
    }
}
