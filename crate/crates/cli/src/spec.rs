//! The surface description read by every subcommand.

use std::fmt;
use std::path::Path;

use k3bott::k3::FibrationData;
use k3bott::positivity::{find_low_degree_elliptic, is_ample, validate_polarization};
use k3bott::k3::validate_fibration;
use k3bott::{validate_k3_lattice, DivisorClass, IntegralLattice, PolarizedLattice};
use serde::{Deserialize, Serialize};

/// A malformed input document; `field` is a path such as
/// `fibrations[0].singular_fibers[1].type`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub field: String,
    pub message: String,
}

impl InputError {
    pub fn new(field: impl Into<String>, message: impl fmt::Display) -> Self {
        InputError {
            field: field.into(),
            message: message.to_string(),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.field, self.message)
        }
    }
}

impl std::error::Error for InputError {}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankOneSpec {
    /// `A^2` of the generator.
    pub degree: i64,
    /// `k` in `B = kA`.
    pub multiple: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ample: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line_bundle: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fibrations: Vec<FibrationData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_one: Option<RankOneSpec>,
}

impl SurfaceSpec {
    pub fn from_json(text: &str) -> Result<Self, InputError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let field = if path == "." { String::new() } else { path };
            InputError::new(field, e.into_inner())
        })
    }

    pub fn read(path: &Path) -> Result<Self, InputError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| InputError::new("", format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// The lattice and the class spanning the chamber, without checking
    /// that it is a K3 polarization.
    pub fn lattice_and_ample(&self) -> Result<(IntegralLattice, DivisorClass), InputError> {
        match (&self.rank_one, &self.gram, &self.ample) {
            (Some(_), Some(_), _) | (Some(_), _, Some(_)) => Err(InputError::new(
                "rank_one",
                "give either rank_one or gram and ample, not both",
            )),
            (Some(r), None, None) => {
                if r.degree <= 0 || r.degree % 2 != 0 {
                    return Err(InputError::new(
                        "rank_one.degree",
                        format!("{} must be even and positive", r.degree),
                    ));
                }
                if r.multiple < 1 {
                    return Err(InputError::new(
                        "rank_one.multiple",
                        format!("{} must be positive", r.multiple),
                    ));
                }
                let lattice = IntegralLattice::new(vec![vec![r.degree]]).expect("nonzero 1x1 form");
                Ok((lattice, DivisorClass::new(vec![r.multiple])))
            }
            (None, Some(gram), Some(ample)) => {
                let lattice = IntegralLattice::new(gram.clone()).map_err(|e| InputError::new("gram", e))?;
                if ample.len() != lattice.rank() {
                    return Err(InputError::new(
                        "ample",
                        format!("has {} coordinates, lattice rank is {}", ample.len(), lattice.rank()),
                    ));
                }
                Ok((lattice, DivisorClass::new(ample.clone())))
            }
            (None, None, _) => Err(InputError::new("gram", "missing (or give rank_one)")),
            (None, Some(_), None) => Err(InputError::new("ample", "missing")),
        }
    }

    /// Checks the whole document and returns the polarized lattice of the
    /// line bundle under study.
    pub fn resolve(&self) -> Result<Resolved, InputError> {
        let (lattice, ample) = self.lattice_and_ample()?;
        let lattice_field = if self.rank_one.is_some() { "rank_one" } else { "gram" };
        validate_k3_lattice(&lattice).map_err(|v| InputError::new(lattice_field, join(&v)))?;
        let ample_field = if self.rank_one.is_some() { "rank_one.multiple" } else { "ample" };
        validate_polarization(&lattice, &ample).map_err(|v| InputError::new(ample_field, join(&v)))?;
        let chamber = PolarizedLattice::new(lattice.clone(), ample.clone())
            .map_err(|e| InputError::new(ample_field, e))?;

        let polarized = match &self.line_bundle {
            None => chamber,
            Some(_) if self.rank_one.is_some() => {
                return Err(InputError::new("line_bundle", "not allowed with rank_one"));
            }
            Some(l) => {
                let l = DivisorClass::new(l.clone());
                if l.len() != lattice.rank() {
                    return Err(InputError::new(
                        "line_bundle",
                        format!("has {} coordinates, lattice rank is {}", l.len(), lattice.rank()),
                    ));
                }
                let ample = is_ample(&chamber, &l).map_err(|e| InputError::new("line_bundle", e))?;
                if !ample {
                    return Err(InputError::new(
                        "line_bundle",
                        format!("{l} is not ample in the chamber of {}", chamber.ample()),
                    ));
                }
                PolarizedLattice::new(lattice.clone(), l).map_err(|e| InputError::new("line_bundle", e))?
            }
        };

        let pencils = find_low_degree_elliptic(&polarized, 4).map_err(|e| InputError::new("", e))?;
        for (i, data) in self.fibrations.iter().enumerate() {
            let field = format!("fibrations[{i}]");
            validate_fibration(&polarized, data).map_err(|v| InputError::new(&field, join(&v)))?;
            if !pencils.iter().any(|p| p.class == data.fiber_class) {
                return Err(InputError::new(
                    format!("{field}.fiber_class"),
                    format!("{} is not an elliptic fiber class of degree at most 4", data.fiber_class),
                ));
            }
            if self.fibrations[..i].iter().any(|d| d.fiber_class == data.fiber_class) {
                return Err(InputError::new(
                    format!("{field}.fiber_class"),
                    format!("{} is listed twice", data.fiber_class),
                ));
            }
        }
        Ok(Resolved {
            polarized,
            fibrations: self.fibrations.clone(),
        })
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

pub struct Resolved {
    pub polarized: PolarizedLattice,
    pub fibrations: Vec<FibrationData>,
}
