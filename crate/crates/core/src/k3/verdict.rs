use serde::{Deserialize, Serialize};

use super::fibration::{validate_fibration, FibrationData};
use super::rules::{
    converse_threshold, RuleId, HIGH_DEGREE_THRESHOLD, LOW_PENCIL_DEGREE, PROKHOROV_BOUND,
    RIEMANN_ROCH_THRESHOLD,
};
use super::KodairaType;
use crate::lattice::DivisorClass;
use crate::positivity::{
    find_low_degree_elliptic, saint_donat_basepoint_free, EllipticPencil, PolarizedLattice,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Vanishes,
    Fails,
    Undetermined,
    NeedsFiberData,
}

/// Whether the surface satisfies Bott vanishing for every ample line bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BottVanishing {
    Holds,
    Fails,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reason {
    pub rule: RuleId,
    pub citation: String,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<DivisorClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<[i64; 2]>,
}

impl Reason {
    pub fn new(rule: RuleId, detail: impl Into<String>) -> Self {
        Reason {
            rule,
            citation: rule.citation().to_string(),
            detail: detail.into(),
            class: None,
            window: None,
        }
    }

    pub fn with_class(mut self, class: DivisorClass) -> Self {
        self.class = Some(class);
        self
    }

    pub fn with_window(mut self, lo: i64, hi: i64) -> Self {
        self.window = Some([lo, hi]);
        self
    }
}

/// Answer to "is H^1(X, Omega^1 (x) B) zero?" with the rules that decided it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub bott_vanishing: BottVanishing,
    pub reasons: Vec<Reason>,
}

impl Verdict {
    fn new(status: Status, reasons: Vec<Reason>) -> Self {
        let bott_vanishing = if status == Status::Fails {
            BottVanishing::Fails
        } else {
            BottVanishing::Unknown
        };
        Verdict {
            status,
            bott_vanishing,
            reasons,
        }
    }

    /// Rules cited by the reasons, in order.
    pub fn rules(&self) -> Vec<RuleId> {
        self.reasons.iter().map(|r| r.rule).collect()
    }

    pub fn cites(&self, rule: RuleId) -> bool {
        self.reasons.iter().any(|r| r.rule == rule)
    }
}

fn even(b2: i64) -> Result<i64> {
    if b2 % 2 != 0 {
        return Err(Error::OddSquare(b2));
    }
    Ok(b2)
}

/// chi(X, L) = 2 + L^2/2 on a K3 surface.
pub fn euler_char_line_bundle(b_squared: i64) -> Result<i64> {
    Ok(2 + even(b_squared)? / 2)
}

/// chi(X, Omega^1 (x) B) = B^2 - 20 on a K3 surface.
pub fn euler_char_omega_twist(b_squared: i64) -> Result<i64> {
    even(b_squared)?
        .checked_sub(20)
        .ok_or(Error::Overflow)
}

fn riemann_roch(b2: i64) -> Reason {
    Reason::new(
        RuleId::RiemannRoch,
        format!("B^2 = {b2} < 20, so chi(Omega^1 (x) B) = {} < 0", b2 - 20),
    )
}

fn fano_window(b2: i64) -> Reason {
    Reason::new(
        RuleId::FanoWindow,
        format!(
            "B^2 = {b2} lies in the window {RIEMANN_ROCH_THRESHOLD}..={PROKHOROV_BOUND} and there is no elliptic pencil of degree at most {LOW_PENCIL_DEGREE}; nonvanishing is a Noether-Lefschetz condition"
        ),
    )
    .with_window(RIEMANN_ROCH_THRESHOLD, PROKHOROV_BOUND)
}

fn no_low_pencil(b2: i64) -> Reason {
    Reason::new(
        RuleId::NoLowDegreePencil,
        format!("B^2 = {b2} >= {HIGH_DEGREE_THRESHOLD} and no isotropic class of degree 1..=4"),
    )
}

/// Verdict for `B = kA` on a K3 surface of Picard number 1 with `A^2 = 2a`.
pub fn rank_one_verdict(degree_2a: i64, multiple_k: i64) -> Result<Verdict> {
    if degree_2a <= 0 || degree_2a % 2 != 0 {
        return Err(Error::InvalidDegree(degree_2a));
    }
    if multiple_k < 1 {
        return Err(Error::InvalidMultiple(multiple_k));
    }
    let b2 = multiple_k
        .checked_mul(multiple_k)
        .and_then(|k2| k2.checked_mul(degree_2a))
        .ok_or(Error::Overflow)?;
    let generator_vanishes = degree_2a == 20 || degree_2a >= 24;
    // Bott vanishing for X is decided by the generator: A itself is ample.
    let bott = if generator_vanishes {
        BottVanishing::Holds
    } else {
        BottVanishing::Fails
    };
    let classification = || {
        Reason::new(
            RuleId::RankOneClassification,
            format!("Picard number 1 with generator of degree {degree_2a}; B = {multiple_k}A"),
        )
    };

    let (status, mut reasons) = if b2 < RIEMANN_ROCH_THRESHOLD {
        (Status::Fails, vec![riemann_roch(b2)])
    } else if multiple_k == 1 && degree_2a == 22 {
        (
            Status::Fails,
            vec![Reason::new(RuleId::DegreeTwentyTwo, "B is primitive of degree 22")],
        )
    } else if generator_vanishes {
        let mut reasons = vec![classification()];
        if multiple_k > 1 && b2 >= HIGH_DEGREE_THRESHOLD {
            reasons.push(no_low_pencil(b2));
        }
        (Status::Vanishes, reasons)
    } else if b2 >= HIGH_DEGREE_THRESHOLD {
        (Status::Vanishes, vec![no_low_pencil(b2)])
    } else if degree_2a == 2 && multiple_k == 6 {
        (
            Status::Fails,
            vec![Reason::new(
                RuleId::DoubleSexticSextuple,
                "B = 6A on a double sextic plane, B^2 = 72",
            )],
        )
    } else {
        (Status::Undetermined, vec![fano_window(b2)])
    };
    if status != Status::Fails && bott == BottVanishing::Fails && multiple_k > 1 {
        let rule = if degree_2a < RIEMANN_ROCH_THRESHOLD {
            RuleId::RiemannRoch
        } else {
            RuleId::DegreeTwentyTwo
        };
        reasons.push(Reason::new(
            rule,
            format!(
                "does not affect B itself: the ample generator A has A^2 = {degree_2a} and H^1(Omega^1 (x) A) != 0, so X fails Bott vanishing"
            ),
        ));
    }
    Ok(Verdict {
        status,
        bott_vanishing: bott,
        reasons,
    })
}

/// Outcome for a single elliptic pencil of low degree.
#[derive(Debug, Clone, PartialEq, Eq)]
struct PencilOutcome {
    status: Status,
    reason: Reason,
}

fn bad_fiber(r: i64) -> Option<KodairaType> {
    match r {
        1 => Some(KodairaType::II),
        2 => Some(KodairaType::III),
        3 => Some(KodairaType::IV),
        _ => None,
    }
}

fn pencil_outcome(b2: i64, pencil: &EllipticPencil, data: Option<&FibrationData>) -> PencilOutcome {
    let r = pencil.degree;
    let class = pencil.class.clone();
    let threshold = converse_threshold(r).expect("pencil degree is between 1 and 4");
    let converse_rule = if r == 1 {
        RuleId::UnigonalCriterion
    } else {
        RuleId::EllipticConverse
    };
    let out = |status, reason: Reason| PencilOutcome {
        status,
        reason: reason.with_class(class.clone()),
    };

    if let (Some(bad), Some(data)) = (bad_fiber(r), data) {
        if data.has(bad) {
            let rule = if r == 1 {
                RuleId::UnigonalCriterion
            } else {
                RuleId::SpecialFiber
            };
            return out(
                Status::Fails,
                Reason::new(
                    rule,
                    format!("elliptic pencil E of degree {r} has a fiber of type {bad}"),
                ),
            );
        }
    }
    if r == 1 && b2 < threshold {
        return out(
            Status::Fails,
            Reason::new(
                RuleId::UnigonalCriterion,
                format!("unigonal with B^2 = {b2} <= 38"),
            ),
        );
    }
    if bad_fiber(r).is_some() && data.is_none() {
        let needed = bad_fiber(r).unwrap();
        return out(
            Status::NeedsFiberData,
            Reason::new(
                RuleId::MissingFiberData,
                format!(
                    "elliptic pencil E of degree {r}: the answer depends on whether a fiber of type {needed} occurs"
                ),
            ),
        );
    }
    if b2 >= threshold {
        let detail = if r == 4 {
            format!("elliptic pencil E of degree 4 and B^2 = {b2} >= {threshold}")
        } else {
            format!(
                "elliptic pencil E of degree {r} without fibers of type {} and B^2 = {b2} >= {threshold}",
                bad_fiber(r).unwrap()
            )
        };
        return out(Status::Vanishes, Reason::new(converse_rule, detail));
    }
    out(
        Status::Undetermined,
        Reason::new(
            RuleId::EllipticWindow,
            format!("elliptic pencil E of degree {r} and B^2 = {b2} < {threshold}"),
        )
        .with_window(RIEMANN_ROCH_THRESHOLD, threshold - 2),
    )
}

fn is_degree_62_example(polarized: &PolarizedLattice) -> bool {
    polarized.lattice().gram() == [vec![2, 5], vec![5, 10]] && polarized.ample_square() == 62
}

/// Decides `H^1(X, Omega^1 (x) B)` from the lattice, the polarization and
/// optional singular-fiber data for the elliptic pencils of degree at most 4.
pub fn bott_verdict(
    polarized: &PolarizedLattice,
    fibrations: Option<&[FibrationData]>,
) -> Result<Verdict> {
    let b2 = polarized.ample_square();
    let b = polarized.ample();
    let fibrations = fibrations.unwrap_or(&[]);

    let pencils = find_low_degree_elliptic(polarized, LOW_PENCIL_DEGREE)?;
    for data in fibrations {
        if !pencils.iter().any(|p| p.class == data.fiber_class) {
            return Err(Error::UnknownFiberClass(data.fiber_class.coords().to_vec()));
        }
        validate_fibration(polarized, data).map_err(Error::InvalidFibration)?;
    }

    if b2 < RIEMANN_ROCH_THRESHOLD {
        return Ok(Verdict::new(Status::Fails, vec![riemann_roch(b2)]));
    }
    if polarized.rank() == 1 {
        let a = polarized.lattice().gram()[0][0];
        return rank_one_verdict(a, b.coords()[0].abs());
    }
    let primitive = polarized.lattice().is_primitive(b)?;
    if primitive && b2 == 22 {
        return Ok(Verdict::new(
            Status::Fails,
            vec![Reason::new(RuleId::DegreeTwentyTwo, "B is primitive of degree 22")],
        ));
    }

    if pencils.is_empty() {
        if b2 >= HIGH_DEGREE_THRESHOLD {
            return Ok(Verdict::new(Status::Vanishes, vec![no_low_pencil(b2)]));
        }
        let mut reasons = vec![fano_window(b2)];
        if is_degree_62_example(polarized) {
            reasons.push(Reason::new(
                RuleId::AnticanonicalDegree62,
                "this lattice and polarization match the anticanonical degree-62 example; a surface realizing it has H^1 != 0, but the lattice alone does not decide",
            ));
        }
        return Ok(Verdict::new(Status::Undetermined, reasons));
    }

    let outcomes: Vec<PencilOutcome> = pencils
        .iter()
        .map(|p| {
            let data = fibrations.iter().find(|d| d.fiber_class == p.class);
            pencil_outcome(b2, p, data)
        })
        .collect();
    let any = |s| outcomes.iter().any(|o| o.status == s);
    let status = if any(Status::Fails) {
        Status::Fails
    } else if outcomes.iter().all(|o| o.status == Status::Vanishes) {
        Status::Vanishes
    } else if any(Status::NeedsFiberData) {
        Status::NeedsFiberData
    } else {
        Status::Undetermined
    };
    let reasons = match status {
        Status::Fails => outcomes
            .into_iter()
            .filter(|o| o.status == Status::Fails)
            .map(|o| o.reason)
            .collect(),
        _ => outcomes.into_iter().map(|o| o.reason).collect(),
    };
    Ok(Verdict::new(status, reasons))
}

/// Outcome of trying to extend vanishing from `B` to all of its multiples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Propagation {
    AllMultiples { rule: RuleId, citation: String },
    NoClaim { reason: String },
}

impl Propagation {
    pub fn is_claim(&self) -> bool {
        matches!(self, Propagation::AllMultiples { .. })
    }
}

/// If `H^1(X, Omega^1 (x) B) = 0` and `|B|` is basepoint-free, the vanishing
/// holds for every positive multiple of `B`.
pub fn propagate_multiples(polarized: &PolarizedLattice, base_vanishes: bool) -> Propagation {
    if !base_vanishes {
        return Propagation::NoClaim {
            reason: "vanishing for B itself is not established".to_string(),
        };
    }
    match saint_donat_basepoint_free(polarized) {
        Ok(sd) if sd.holds() => Propagation::AllMultiples {
            rule: RuleId::MultiplePropagation,
            citation: RuleId::MultiplePropagation.citation().to_string(),
        },
        Ok(sd) => Propagation::NoClaim {
            reason: format!("|B| is not basepoint-free: {sd:?}"),
        },
        Err(e) => Propagation::NoClaim {
            reason: format!("basepoint-freeness could not be decided: {e}"),
        },
    }
}
