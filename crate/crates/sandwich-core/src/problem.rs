//! JSON problem files and their resolution into engine inputs.
//!
//! A problem file names the ambient dimension and whichever pieces the
//! command at hand needs: the bounds `S` and `P`, the prescribed subspace
//! `M` with values `f0`, an optional restriction subspace `E1`, and an
//! optional direction order for the extension engine. Sections are optional
//! at the parsing level so one schema serves every command; resolution
//! enforces presence and consistency.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Error;
use crate::functional::{FunctionalClass, FunctionalSpec};
use crate::subspace::{PartialLinearFunctional, Subspace};
use crate::vector::{Matrix, Vector};

/// One functional in a problem file. The polyhedral kinds carry generator
/// lists; the norm kinds carry a linear part `v` and a matrix part `G` for
/// `<v, x> +- |Gx|`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpecDef {
    MaxLinear { generators: Vec<Vec<f64>> },
    MinLinear { generators: Vec<Vec<f64>> },
    NormPlusLinear { linear_part: Vec<f64>, matrix_part: Vec<Vec<f64>> },
    LinearMinusNorm { linear_part: Vec<f64>, matrix_part: Vec<Vec<f64>> },
}

impl SpecDef {
    pub fn to_spec(&self, dim: usize) -> Result<FunctionalSpec, Error> {
        let spec = match self {
            SpecDef::MaxLinear { generators } => {
                FunctionalSpec::max_linear(to_vectors(generators))?
            }
            SpecDef::MinLinear { generators } => {
                FunctionalSpec::min_linear(to_vectors(generators))?
            }
            SpecDef::NormPlusLinear {
                linear_part,
                matrix_part,
            } => FunctionalSpec::norm_plus_linear(
                Vector::new(linear_part.clone()),
                Matrix::from_rows(matrix_part.clone())?,
            )?,
            SpecDef::LinearMinusNorm {
                linear_part,
                matrix_part,
            } => FunctionalSpec::linear_minus_norm(
                Vector::new(linear_part.clone()),
                Matrix::from_rows(matrix_part.clone())?,
            )?,
        };
        if spec.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: spec.dim(),
            });
        }
        Ok(spec)
    }

    /// Build a definition back from a spec, for writing problem files.
    pub fn from_spec(spec: &FunctionalSpec) -> Self {
        use crate::functional::FunctionalForm;
        match spec.form() {
            FunctionalForm::MaxLinear { generators } => SpecDef::MaxLinear {
                generators: from_vectors(generators),
            },
            FunctionalForm::MinLinear { generators } => SpecDef::MinLinear {
                generators: from_vectors(generators),
            },
            FunctionalForm::NormPlusLinear {
                linear_part,
                matrix_part,
            } => SpecDef::NormPlusLinear {
                linear_part: linear_part.as_slice().to_vec(),
                matrix_part: matrix_part.rows().to_vec(),
            },
            FunctionalForm::LinearMinusNorm {
                linear_part,
                matrix_part,
            } => SpecDef::LinearMinusNorm {
                linear_part: linear_part.as_slice().to_vec(),
                matrix_part: matrix_part.rows().to_vec(),
            },
        }
    }

    fn class(&self) -> FunctionalClass {
        match self {
            SpecDef::MaxLinear { .. } | SpecDef::NormPlusLinear { .. } => {
                FunctionalClass::Sublinear
            }
            SpecDef::MinLinear { .. } | SpecDef::LinearMinusNorm { .. } => {
                FunctionalClass::Superlinear
            }
        }
    }
}

fn to_vectors(rows: &[Vec<f64>]) -> Vec<Vector> {
    rows.iter().cloned().map(Vector::new).collect()
}

fn from_vectors(vectors: &[Vector]) -> Vec<Vec<f64>> {
    vectors.iter().map(|v| v.as_slice().to_vec()).collect()
}

/// A subspace given by a spanning list of vectors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisDef {
    pub basis: Vec<Vec<f64>>,
}

impl BasisDef {
    pub fn to_subspace(&self, dim: usize) -> Result<Subspace, Error> {
        Subspace::new(dim, to_vectors(&self.basis))
    }

    pub fn from_subspace(sub: &Subspace) -> Self {
        BasisDef {
            basis: from_vectors(sub.basis()),
        }
    }
}

/// The on-disk problem description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub dim: usize,
    #[serde(rename = "S", skip_serializing_if = "Option::is_none")]
    pub s: Option<SpecDef>,
    #[serde(rename = "P", skip_serializing_if = "Option::is_none")]
    pub p: Option<SpecDef>,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none")]
    pub m: Option<BasisDef>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f0: Option<Vec<f64>>,
    #[serde(rename = "E1", skip_serializing_if = "Option::is_none")]
    pub e1: Option<BasisDef>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<Vec<f64>>>,
}

/// A fully validated problem, ready for the engine.
#[derive(Clone, Debug)]
pub struct ResolvedProblem {
    pub s: FunctionalSpec,
    pub p: FunctionalSpec,
    pub f0: PartialLinearFunctional,
    pub restriction: Option<Subspace>,
    pub order: Option<Vec<Vector>>,
}

impl ProblemFile {
    pub fn from_json_str(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("problem file: {e}")))
    }

    /// Canonical JSON text: keys sorted, no whitespace. Digests of this are
    /// stable across field order in the source file.
    pub fn canonical_json(&self) -> String {
        let value: Value =
            serde_json::to_value(self).expect("problem files always serialize");
        value.to_string()
    }

    /// Resolve everything a sandwich command needs. `M` and `f0` default to
    /// the trivial subspace when both are absent.
    pub fn resolve(&self) -> Result<ResolvedProblem, Error> {
        if self.dim == 0 {
            return Err(Error::InvalidInput(
                "the ambient dimension must be at least 1".into(),
            ));
        }
        let s = self.resolve_side(FunctionalClass::Sublinear)?;
        let p = self.resolve_side(FunctionalClass::Superlinear)?;

        let f0 = match (&self.m, &self.f0) {
            (None, None) => PartialLinearFunctional::trivial(self.dim),
            (Some(m), Some(values)) => {
                let sub = m.to_subspace(self.dim)?;
                if sub.rank() != values.len() {
                    return Err(Error::InvalidInput(format!(
                        "f0 has {} values for a basis of {} vectors",
                        values.len(),
                        sub.rank()
                    )));
                }
                PartialLinearFunctional::new(sub, values.clone())?
            }
            (Some(_), None) => {
                return Err(Error::InvalidInput(
                    "M given without prescribed values f0".into(),
                ))
            }
            (None, Some(_)) => {
                return Err(Error::InvalidInput(
                    "f0 given without the subspace M".into(),
                ))
            }
        };

        let restriction = match &self.e1 {
            None => None,
            Some(def) => {
                let e = def.to_subspace(self.dim)?;
                if !f0.subspace().is_subspace_of(&e) {
                    return Err(Error::InvalidInput(
                        "M must lie inside the restriction E1".into(),
                    ));
                }
                Some(e)
            }
        };

        let order = match &self.order {
            None => None,
            Some(rows) => {
                let vs = to_vectors(rows);
                for v in &vs {
                    if v.dim() != self.dim {
                        return Err(Error::DimensionMismatch {
                            expected: self.dim,
                            found: v.dim(),
                        });
                    }
                }
                Some(vs)
            }
        };

        Ok(ResolvedProblem {
            s,
            p,
            f0,
            restriction,
            order,
        })
    }

    /// Resolve only the named side, for the classical commands.
    pub fn resolve_side(&self, class: FunctionalClass) -> Result<FunctionalSpec, Error> {
        let (def, name) = match class {
            FunctionalClass::Sublinear => (&self.s, "S"),
            FunctionalClass::Superlinear => (&self.p, "P"),
        };
        let Some(def) = def else {
            return Err(Error::InvalidInput(format!(
                "the problem file has no {name} section"
            )));
        };
        if def.class() != class {
            return Err(Error::InvalidInput(format!(
                "{name} must be {class}, got a {} kind",
                def.class()
            )));
        }
        def.to_spec(self.dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FULL: &str = r#"{
        "dim": 2,
        "S": {"kind": "max_linear", "generators": [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]]},
        "P": {"kind": "min_linear", "generators": [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]]},
        "M": {"basis": [[1.0, 0.0]]},
        "f0": [0.5]
    }"#;

    #[test]
    fn round_trips_and_resolves() {
        let pf = ProblemFile::from_json_str(FULL).unwrap();
        let resolved = pf.resolve().unwrap();
        assert_eq!(resolved.s.dim(), 2);
        assert_eq!(resolved.f0.subspace().rank(), 1);
        assert!(resolved.restriction.is_none());

        let text = serde_json::to_string(&pf).unwrap();
        let again = ProblemFile::from_json_str(&text).unwrap();
        assert_eq!(pf, again);
    }

    #[test]
    fn canonical_text_ignores_field_order() {
        let pf = ProblemFile::from_json_str(FULL).unwrap();
        let shuffled = r#"{
            "f0": [0.5],
            "M": {"basis": [[1.0, 0.0]]},
            "P": {"kind": "min_linear", "generators": [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]]},
            "S": {"kind": "max_linear", "generators": [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]]},
            "dim": 2
        }"#;
        let other = ProblemFile::from_json_str(shuffled).unwrap();
        assert_eq!(pf.canonical_json(), other.canonical_json());
    }

    #[test]
    fn class_mismatch_is_rejected() {
        let swapped = r#"{
            "dim": 1,
            "S": {"kind": "min_linear", "generators": [[1.0]]},
            "P": {"kind": "min_linear", "generators": [[1.0]]}
        }"#;
        let pf = ProblemFile::from_json_str(swapped).unwrap();
        assert!(matches!(pf.resolve(), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn partial_requirements_are_per_command() {
        let classical_only = r#"{
            "dim": 3,
            "S": {"kind": "norm_plus_linear", "linear_part": [0.0, 0.0, 0.0],
                  "matrix_part": [[1.0,0.0,0.0],[0.0,1.0,0.0],[0.0,0.0,1.0]]}
        }"#;
        let pf = ProblemFile::from_json_str(classical_only).unwrap();
        assert!(pf.resolve_side(FunctionalClass::Sublinear).is_ok());
        assert!(pf.resolve().is_err(), "P is required for the full problem");
    }

    #[test]
    fn mismatched_f0_and_malformed_sections_fail() {
        let bad_len = r#"{
            "dim": 2,
            "S": {"kind": "max_linear", "generators": [[1.0, 0.0]]},
            "P": {"kind": "min_linear", "generators": [[0.0, -1.0]]},
            "M": {"basis": [[1.0, 0.0]]},
            "f0": [0.5, 0.25]
        }"#;
        let pf = ProblemFile::from_json_str(bad_len).unwrap();
        assert!(pf.resolve().is_err());

        assert!(ProblemFile::from_json_str("{ not json").is_err());
        let unknown_key = r#"{"dim": 1, "extra": true}"#;
        assert!(ProblemFile::from_json_str(unknown_key).is_err());
    }

    #[test]
    fn restriction_must_contain_the_subspace() {
        let out_of_plane = r#"{
            "dim": 3,
            "S": {"kind": "max_linear", "generators": [[1.0, 0.0, 0.0]]},
            "P": {"kind": "min_linear", "generators": [[1.0, 0.0, 0.0]]},
            "M": {"basis": [[0.0, 0.0, 1.0]]},
            "f0": [1.0],
            "E1": {"basis": [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]}
        }"#;
        let pf = ProblemFile::from_json_str(out_of_plane).unwrap();
        assert!(matches!(pf.resolve(), Err(Error::InvalidInput(_))));
    }
}
