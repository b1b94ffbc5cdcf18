//! JSON rotation spec files.
//!
//! ```json
//! {
//!   "dim": 3,
//!   "planes": [ { "a": [1, 0, 0], "b": [0, 1, 0], "angle_degrees": 90 } ],
//!   "axis": [0, 0, 1],
//!   "seed": 7
//! }
//! ```
//!
//! Each plane carries exactly one of `angle_degrees` or `angle_radians`.
//! `axis` and `seed` are optional.

use std::path::Path;

use planerot_core::rotation::{PlaneSpec, Repair, RotationSpec};
use planerot_core::Vector;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Top-level spec file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    /// Ambient dimension.
    pub dim: usize,
    /// Planes of rotation.
    pub planes: Vec<PlaneEntry>,
    /// Fixed axis for odd dimensions.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis: Option<Vec<f64>>,
    /// Seed for randomized commands.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// One plane entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaneEntry {
    /// First spanning vector.
    pub a: Vec<f64>,
    /// Second spanning vector.
    pub b: Vec<f64>,
    /// Angle in degrees.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle_degrees: Option<f64>,
    /// Angle in radians.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle_radians: Option<f64>,
}

impl PlaneEntry {
    /// The angle in radians.
    pub fn radians(&self) -> Option<f64> {
        match (self.angle_degrees, self.angle_radians) {
            (Some(d), None) => Some(d.to_radians()),
            (None, Some(r)) => Some(r),
            _ => None,
        }
    }
}

impl SpecFile {
    /// Parses JSON text, checking the angle-key rule.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let spec: SpecFile =
            serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        for (i, plane) in spec.planes.iter().enumerate() {
            if plane.radians().is_none() {
                return Err(CliError::Parse(format!(
                    "planes[{i}]: exactly one of `angle_degrees` or `angle_radians` is required"
                )));
            }
        }
        Ok(spec)
    }

    /// Reads and parses a spec file.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        Self::parse(&read(path)?)
    }

    /// Builds the validated library spec.
    pub fn to_rotation_spec(&self, repair: Repair) -> Result<RotationSpec, CliError> {
        let vector = |field: String, xs: &[f64]| -> Result<Vector, CliError> {
            if xs.len() != self.dim {
                return Err(CliError::Spec(format!(
                    "{field} has {} entries, expected dim = {}",
                    xs.len(),
                    self.dim
                )));
            }
            Vector::from_slice(xs).map_err(|e| CliError::spec(field, e))
        };
        let planes = self
            .planes
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let a = vector(format!("planes[{i}].a"), &p.a)?;
                let b = vector(format!("planes[{i}].b"), &p.b)?;
                let angle = p.radians().expect("checked at parse time");
                PlaneSpec::new(a, b, angle, repair)
                    .map_err(|e| CliError::spec(format!("planes[{i}]"), e))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let axis = self
            .axis
            .as_deref()
            .map(|c| vector("axis".into(), c))
            .transpose()?;
        RotationSpec::new(self.dim, planes, axis, repair).map_err(|e| CliError::spec("spec", e))
    }
}

pub(crate) fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}
