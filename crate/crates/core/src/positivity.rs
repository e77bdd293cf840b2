//! The ample chamber of a K3 lattice: polarization checks, nefness,
//! low-degree elliptic pencils and Saint-Donat's linear system criteria.
//!
//! Effectivity is decided purely by the sign of the degree against the
//! polarization: a `(-2)`-class or an isotropic class is effective iff it
//! has positive degree. On a K3 surface realizing the lattice with `B` ample
//! this is forced by Riemann-Roch.

use serde::{Deserialize, Serialize};

use crate::enumerate::{enumerate_classes, EnumerationQuery};
use crate::lattice::{check_len, validate_k3_lattice, DivisorClass, IntegralLattice, Violation};
use crate::{Error, Result};

/// A K3 lattice together with a class `B` in the interior of a chamber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizedLattice {
    lattice: IntegralLattice,
    ample: DivisorClass,
    ample_square: i64,
}

impl PolarizedLattice {
    pub fn new(lattice: IntegralLattice, ample: DivisorClass) -> Result<Self> {
        let mut violations = validate_k3_lattice(&lattice).err().unwrap_or_default();
        if violations.is_empty() {
            if let Err(v) = validate_polarization(&lattice, &ample) {
                violations = v;
            }
        }
        if !violations.is_empty() {
            return Err(Error::InvalidPolarization(violations));
        }
        let ample_square = lattice.self_intersection(&ample)?;
        Ok(PolarizedLattice {
            lattice,
            ample,
            ample_square,
        })
    }

    pub fn lattice(&self) -> &IntegralLattice {
        &self.lattice
    }

    pub fn ample(&self) -> &DivisorClass {
        &self.ample
    }

    pub fn ample_square(&self) -> i64 {
        self.ample_square
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// `D . B`.
    pub fn degree(&self, d: &DivisorClass) -> Result<i64> {
        self.lattice.pairing(d, &self.ample)
    }
}

/// Representative of `{v, -v}` whose first nonzero coordinate is positive.
fn sign_normalized(classes: Vec<DivisorClass>) -> Vec<DivisorClass> {
    let mut out: Vec<_> = classes
        .into_iter()
        .filter(|v| v.coords().iter().find(|&&x| x != 0).is_some_and(|&x| x > 0))
        .collect();
    out.sort();
    out
}

/// Checks that `B^2 > 0` and that no `(-2)`-class or nonzero isotropic class
/// is orthogonal to `B`, i.e. that `B` lies in the interior of a chamber.
pub fn validate_polarization(
    lattice: &IntegralLattice,
    ample: &DivisorClass,
) -> std::result::Result<(), Vec<Violation>> {
    let arithmetic = |e: Error| {
        vec![Violation::Arithmetic {
            message: e.to_string(),
        }]
    };
    check_len(lattice.rank(), ample.len()).map_err(arithmetic)?;
    let square = lattice.self_intersection(ample).map_err(arithmetic)?;
    if square <= 0 {
        return Err(vec![Violation::NonPositiveSquare { square }]);
    }
    let sig = lattice.signature();
    if !sig.is_hyperbolic() {
        return Err(vec![Violation::Signature {
            positives: sig.positives,
            negatives: sig.negatives,
        }]);
    }
    let orthogonal = |c: i64| -> std::result::Result<Vec<DivisorClass>, Vec<Violation>> {
        let q = EnumerationQuery::new(c, 0, 0, ample.clone()).map_err(arithmetic)?;
        enumerate_classes(lattice, &q)
            .map(sign_normalized)
            .map_err(arithmetic)
    };
    let mut violations: Vec<Violation> = orthogonal(-2)?
        .into_iter()
        .map(|class| Violation::RootOrthogonal { class })
        .collect();
    violations.extend(
        orthogonal(0)?
            .into_iter()
            .map(|class| Violation::IsotropicOrthogonal { class }),
    );
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// Why a class fails to be nef.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum NefViolation {
    /// `D . B < 0`.
    NegativeDegree { degree: i64 },
    /// `D^2 < 0`, so `D` lies outside the closed positive cone.
    NegativeSquare { square: i64 },
    /// An effective class `class` (a `(-2)`-class of positive degree) with
    /// `D . class < 0`.
    Wall { class: DivisorClass, pairing: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Nefness {
    Nef,
    NotNef(NefViolation),
}

impl Nefness {
    pub fn is_nef(&self) -> bool {
        matches!(self, Nefness::Nef)
    }
}

/// Largest degree `C . B` of an effective `(-2)`-class `C` that can pair
/// negatively with a class `D` of degree `delta = D . B > 0` and square
/// `t = D^2 >= 0`; `None` when no such class exists.
///
/// The Gram matrix of `B, D, C` in a lattice of signature `(1, n)` has
/// nonnegative determinant. Writing `k = C . B` and `s = C . D <= -1`,
///
/// ```text
/// det = -2 b t - b s^2 + 2 delta^2 + 2 delta s k - t k^2 >= 0
/// ```
///
/// (with `b = B^2`), hence `2 delta |s| k + t k^2 <= 2 delta^2 - 2 b t - b s^2`
/// and, using `|s| >= 1`,
///
/// ```text
/// k <= (2 delta^2 - b (2t + 1)) / (2 delta).
/// ```
///
/// The same determinant with `C^2 = 0` reads `-b s^2 + 2 delta s k - t k^2`,
/// which is negative, so no effective isotropic class can pair negatively
/// with such a `D`.
pub fn nef_search_bound(ample_square: i64, delta: i64, square: i64) -> Option<i64> {
    assert!(delta > 0 && square >= 0);
    let numerator = 2 * (delta as i128).pow(2) - ample_square as i128 * (2 * square as i128 + 1);
    let bound = numerator.div_euclid(2 * delta as i128);
    if bound < 1 {
        None
    } else {
        Some(i64::try_from(bound).unwrap_or(i64::MAX))
    }
}

/// Tests `D . C >= 0` for every effective `(-2)`-class and every effective
/// isotropic class, inside the closed positive cone.
///
/// Classes with `D^2 < 0` or `D . B < 0` are reported as not nef directly.
/// Otherwise the only possible witnesses are `(-2)`-classes of degree at most
/// [`nef_search_bound`], which are enumerated exactly; the returned witness is
/// the one of least degree (lexicographically least among those).
pub fn is_nef(polarized: &PolarizedLattice, d: &DivisorClass) -> Result<Nefness> {
    let lattice = &polarized.lattice;
    check_len(lattice.rank(), d.len())?;
    if d.is_zero() {
        return Ok(Nefness::Nef);
    }
    let delta = polarized.degree(d)?;
    if delta < 0 {
        return Ok(Nefness::NotNef(NefViolation::NegativeDegree { degree: delta }));
    }
    let square = lattice.self_intersection(d)?;
    if square < 0 || delta == 0 {
        // delta = 0 with d != 0 forces d^2 < 0 by the Hodge index theorem
        return Ok(Nefness::NotNef(NefViolation::NegativeSquare { square }));
    }
    let Some(bound) = nef_search_bound(polarized.ample_square, delta, square) else {
        return Ok(Nefness::Nef);
    };
    let roots = enumerate_classes(
        lattice,
        &EnumerationQuery::new(-2, 1, bound, polarized.ample.clone())?,
    )?;
    let mut worst: Option<(i64, DivisorClass, i64)> = None;
    for c in roots {
        let pairing = lattice.pairing(d, &c)?;
        if pairing < 0 {
            let k = polarized.degree(&c)?;
            if worst.as_ref().is_none_or(|(wk, wc, _)| (k, &c) < (*wk, wc)) {
                worst = Some((k, c, pairing));
            }
        }
    }
    Ok(match worst {
        Some((_, class, pairing)) => Nefness::NotNef(NefViolation::Wall { class, pairing }),
        None => Nefness::Nef,
    })
}

/// `D` is ample iff it is nef, `D^2 > 0`, and no `(-2)`-class is orthogonal to it.
pub fn is_ample(polarized: &PolarizedLattice, d: &DivisorClass) -> Result<bool> {
    if !is_nef(polarized, d)?.is_nef() {
        return Ok(false);
    }
    Ok(validate_polarization(&polarized.lattice, d).is_ok())
}

/// A primitive nef isotropic class, i.e. the fiber class of an elliptic
/// fibration, with its degree against the polarization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllipticPencil {
    pub class: DivisorClass,
    pub degree: i64,
}

/// All elliptic fiber classes `E` with `1 <= E . B <= max_degree`, sorted by
/// degree and then lexicographically.
pub fn find_low_degree_elliptic(polarized: &PolarizedLattice, max_degree: i64) -> Result<Vec<EllipticPencil>> {
    if max_degree < 1 {
        return Ok(Vec::new());
    }
    let query = EnumerationQuery::new(0, 1, max_degree, polarized.ample.clone())?.primitive();
    let mut out = Vec::new();
    for class in enumerate_classes(&polarized.lattice, &query)? {
        if is_nef(polarized, &class)?.is_nef() {
            let degree = polarized.degree(&class)?;
            out.push(EllipticPencil { class, degree });
        }
    }
    out.sort_by(|a, b| (a.degree, &a.class).cmp(&(b.degree, &b.class)));
    Ok(out)
}

/// Outcome of a Saint-Donat test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SaintDonat {
    Holds,
    /// An elliptic curve `E` with `E . B = degree` small enough to obstruct.
    EllipticPencil { class: DivisorClass, degree: i64 },
    /// `B = 2E` with `E^2 = 2`.
    TwiceGenusTwo { half: DivisorClass },
    /// A `(-2)`-class orthogonal to `B`.
    OrthogonalRoot { class: DivisorClass },
}

impl SaintDonat {
    pub fn holds(&self) -> bool {
        matches!(self, SaintDonat::Holds)
    }
}

/// `B` fails to be basepoint-free iff some elliptic curve has degree 1.
pub fn saint_donat_basepoint_free(polarized: &PolarizedLattice) -> Result<SaintDonat> {
    Ok(match find_low_degree_elliptic(polarized, 1)?.into_iter().next() {
        Some(p) => SaintDonat::EllipticPencil {
            class: p.class,
            degree: p.degree,
        },
        None => SaintDonat::Holds,
    })
}

/// Very ampleness for `B^2 >= 4`: fails iff there is an elliptic curve of
/// degree 1 or 2, or `B = 2E` with `E^2 = 2`. The orthogonal `(-2)`-class case
/// cannot occur for a valid polarization; see [`saint_donat_very_ample_raw`].
pub fn saint_donat_very_ample(polarized: &PolarizedLattice) -> Result<SaintDonat> {
    if polarized.ample_square < 4 {
        return Err(Error::SquareTooSmall(polarized.ample_square));
    }
    if let Some(p) = find_low_degree_elliptic(polarized, 2)?.into_iter().next() {
        return Ok(SaintDonat::EllipticPencil {
            class: p.class,
            degree: p.degree,
        });
    }
    if let Some(half) = polarized.ample.divided(2) {
        if polarized.lattice.self_intersection(&half)? == 2 {
            return Ok(SaintDonat::TwiceGenusTwo { half });
        }
    }
    Ok(SaintDonat::Holds)
}

/// Very ampleness for a nef class `B` that may lie on a wall.
pub fn saint_donat_very_ample_raw(lattice: &IntegralLattice, ample: &DivisorClass) -> Result<SaintDonat> {
    validate_k3_lattice(lattice).map_err(Error::InvalidPolarization)?;
    let square = lattice.self_intersection(ample)?;
    if square < 4 {
        return Err(Error::SquareTooSmall(square));
    }
    let roots = enumerate_classes(lattice, &EnumerationQuery::new(-2, 0, 0, ample.clone())?)?;
    if let Some(class) = sign_normalized(roots).into_iter().next() {
        return Ok(SaintDonat::OrthogonalRoot { class });
    }
    saint_donat_very_ample(&PolarizedLattice::new(lattice.clone(), ample.clone())?)
}
