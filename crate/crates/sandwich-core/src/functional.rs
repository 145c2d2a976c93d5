//! Sublinear and superlinear functionals in closed form, plus the axiom checker.
//!
//! Four shapes are supported. `max_linear` and `min_linear` are the polyhedral
//! pair (pointwise max/min of finitely many linear functionals); the other two
//! add or subtract a Euclidean seminorm `|Gx|` to a linear part. The polyhedral
//! shapes admit exact linear-programming treatment downstream, the norm shapes
//! go through numeric minimization.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::sample::VectorSampler;
use crate::vector::{Matrix, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionalClass {
    Sublinear,
    Superlinear,
}

impl std::fmt::Display for FunctionalClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FunctionalClass::Sublinear => write!(f, "sublinear"),
            FunctionalClass::Superlinear => write!(f, "superlinear"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FunctionalForm {
    /// `x -> max_i <g_i, x>`; sublinear for any finite generator set.
    MaxLinear { generators: Vec<Vector> },
    /// `x -> min_j <g_j, x>`; superlinear.
    MinLinear { generators: Vec<Vector> },
    /// `x -> <v, x> + |Gx|_2`; sublinear.
    NormPlusLinear { linear_part: Vector, matrix_part: Matrix },
    /// `x -> <v, x> - |Gx|_2`; superlinear.
    LinearMinusNorm { linear_part: Vector, matrix_part: Matrix },
}

/// A concrete functional together with the class it claims to belong to.
///
/// The constructors set the class tag implied by the shape; `with_class` can
/// mislabel a spec on purpose so `check_axioms` has something to refute.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionalSpec {
    form: FunctionalForm,
    class: FunctionalClass,
    dim: usize,
}

impl FunctionalSpec {
    pub fn max_linear(generators: Vec<Vector>) -> Result<Self, Error> {
        let dim = Self::validate_generators(&generators)?;
        Ok(Self {
            form: FunctionalForm::MaxLinear { generators },
            class: FunctionalClass::Sublinear,
            dim,
        })
    }

    pub fn min_linear(generators: Vec<Vector>) -> Result<Self, Error> {
        let dim = Self::validate_generators(&generators)?;
        Ok(Self {
            form: FunctionalForm::MinLinear { generators },
            class: FunctionalClass::Superlinear,
            dim,
        })
    }

    pub fn norm_plus_linear(linear_part: Vector, matrix_part: Matrix) -> Result<Self, Error> {
        let dim = Self::validate_norm_shape(&linear_part, &matrix_part)?;
        Ok(Self {
            form: FunctionalForm::NormPlusLinear {
                linear_part,
                matrix_part,
            },
            class: FunctionalClass::Sublinear,
            dim,
        })
    }

    pub fn linear_minus_norm(linear_part: Vector, matrix_part: Matrix) -> Result<Self, Error> {
        let dim = Self::validate_norm_shape(&linear_part, &matrix_part)?;
        Ok(Self {
            form: FunctionalForm::LinearMinusNorm {
                linear_part,
                matrix_part,
            },
            class: FunctionalClass::Superlinear,
            dim,
        })
    }

    /// The Euclidean norm on `R^dim`, the most common sublinear bound.
    pub fn euclidean_norm(dim: usize) -> Self {
        Self::norm_plus_linear(Vector::zeros(dim), Matrix::identity(dim))
            .expect("identity norm shape is always valid")
    }

    /// Override the class tag. Evaluation is unaffected; only `check_axioms`
    /// and class validation look at the tag.
    pub fn with_class(mut self, class: FunctionalClass) -> Self {
        self.class = class;
        self
    }

    fn validate_generators(generators: &[Vector]) -> Result<usize, Error> {
        let first = generators
            .first()
            .ok_or_else(|| Error::InvalidInput("generator list must be nonempty".into()))?;
        let dim = first.dim();
        if dim == 0 {
            return Err(Error::InvalidInput("generators must have dimension >= 1".into()));
        }
        for g in generators {
            g.check_dim(dim)?;
        }
        Ok(dim)
    }

    fn validate_norm_shape(linear_part: &Vector, matrix_part: &Matrix) -> Result<usize, Error> {
        let dim = linear_part.dim();
        if dim == 0 {
            return Err(Error::InvalidInput("linear part must have dimension >= 1".into()));
        }
        if matrix_part.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: matrix_part.ncols(),
            });
        }
        Ok(dim)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn class(&self) -> FunctionalClass {
        self.class
    }

    pub fn form(&self) -> &FunctionalForm {
        &self.form
    }

    /// Generators when the shape is polyhedral.
    pub fn generators(&self) -> Option<&[Vector]> {
        match &self.form {
            FunctionalForm::MaxLinear { generators } | FunctionalForm::MinLinear { generators } => {
                Some(generators)
            }
            _ => None,
        }
    }

    pub fn is_polyhedral(&self) -> bool {
        self.generators().is_some()
    }

    pub fn evaluate(&self, x: &Vector) -> Result<f64, Error> {
        x.check_dim(self.dim)?;
        Ok(self.eval(x))
    }

    /// Evaluation without the dimension gate, for hot loops that already
    /// validated their inputs.
    pub(crate) fn eval(&self, x: &Vector) -> f64 {
        self.eval_slice(x.as_slice())
    }

    pub(crate) fn eval_slice(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        let dot = |g: &Vector| -> f64 { g.iter().zip(x).map(|(a, b)| a * b).sum() };
        match &self.form {
            FunctionalForm::MaxLinear { generators } => generators
                .iter()
                .map(dot)
                .fold(f64::NEG_INFINITY, f64::max),
            FunctionalForm::MinLinear { generators } => {
                generators.iter().map(dot).fold(f64::INFINITY, f64::min)
            }
            FunctionalForm::NormPlusLinear {
                linear_part,
                matrix_part,
            } => dot(linear_part) + matrix_part.mul_vec_norm(x),
            FunctionalForm::LinearMinusNorm {
                linear_part,
                matrix_part,
            } => dot(linear_part) - matrix_part.mul_vec_norm(x),
        }
    }

    /// The reflected functional `x -> -f(-x)`.
    ///
    /// It swaps the class: the reflection of a sublinear `S` is the largest
    /// superlinear functional below `S`, and vice versa. In closed form the
    /// generator set and the norm data are reused unchanged:
    /// `-max_i <g_i, -x> = min_i <g_i, x>` and
    /// `-(<v, -x> + |G(-x)|) = <v, x> - |Gx|`.
    pub fn dual_negate(&self) -> FunctionalSpec {
        let form = match &self.form {
            FunctionalForm::MaxLinear { generators } => FunctionalForm::MinLinear {
                generators: generators.clone(),
            },
            FunctionalForm::MinLinear { generators } => FunctionalForm::MaxLinear {
                generators: generators.clone(),
            },
            FunctionalForm::NormPlusLinear {
                linear_part,
                matrix_part,
            } => FunctionalForm::LinearMinusNorm {
                linear_part: linear_part.clone(),
                matrix_part: matrix_part.clone(),
            },
            FunctionalForm::LinearMinusNorm {
                linear_part,
                matrix_part,
            } => FunctionalForm::NormPlusLinear {
                linear_part: linear_part.clone(),
                matrix_part: matrix_part.clone(),
            },
        };
        let class = match self.class {
            FunctionalClass::Sublinear => FunctionalClass::Superlinear,
            FunctionalClass::Superlinear => FunctionalClass::Sublinear,
        };
        FunctionalSpec {
            form,
            class,
            dim: self.dim,
        }
    }
}

/// A linear functional `x -> <coeffs, x>` on the whole ambient space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearFunctional {
    pub coeffs: Vector,
}

impl LinearFunctional {
    pub fn new(coeffs: Vector) -> Self {
        Self { coeffs }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.dim()
    }

    pub fn evaluate(&self, x: &Vector) -> Result<f64, Error> {
        x.check_dim(self.dim())?;
        Ok(self.coeffs.dot(x))
    }
}

/// Outcome of a sampled axiom check.
///
/// `worst_margin` is the smallest slack seen over all samples; a nonnegative
/// value (up to tolerance) means every sample satisfied the axioms.
#[derive(Clone, Debug)]
pub struct PropertyReport {
    pub property: String,
    pub samples: usize,
    pub worst_margin: f64,
    pub witness_x: Vector,
    pub witness_y: Option<Vector>,
    pub witness_alpha: Option<f64>,
}

/// Sample the defining inequalities of the declared class.
///
/// For a sublinear tag the slacks are `f(x) + f(y) - f(x+y)` (subadditivity)
/// and `-|f(ax) - a f(x)|` for `a > 0` (positive homogeneity); the superlinear
/// tag mirrors the first slack. The report keeps the worst slack and the
/// inputs that produced it.
pub fn check_axioms(
    spec: &FunctionalSpec,
    sampler: &mut VectorSampler,
    count: usize,
) -> Result<PropertyReport, Error> {
    let dim = spec.dim();
    let mut worst = f64::INFINITY;
    let mut witness_x = Vector::zeros(dim);
    let mut witness_y = None;
    let mut witness_alpha = None;

    for _ in 0..count.max(1) {
        let x = sampler.ambient(dim);
        let y = sampler.ambient(dim);
        let alpha = sampler.alpha();

        let fx = spec.eval(&x);
        let fy = spec.eval(&y);
        let fxy = spec.eval(&(&x + &y));
        let additivity_slack = match spec.class() {
            FunctionalClass::Sublinear => fx + fy - fxy,
            FunctionalClass::Superlinear => fxy - fx - fy,
        };
        if additivity_slack < worst {
            worst = additivity_slack;
            witness_x = x.clone();
            witness_y = Some(y.clone());
            witness_alpha = None;
        }

        let homogeneity_slack = -(spec.eval(&x.scale(alpha)) - alpha * fx).abs();
        if homogeneity_slack < worst {
            worst = homogeneity_slack;
            witness_x = x;
            witness_y = None;
            witness_alpha = Some(alpha);
        }
    }

    Ok(PropertyReport {
        property: format!("{}-axioms", spec.class()),
        samples: count.max(1),
        worst_margin: worst,
        witness_x,
        witness_y,
        witness_alpha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abs_spec() -> FunctionalSpec {
        FunctionalSpec::max_linear(vec![Vector::new(vec![1.0]), Vector::new(vec![-1.0])]).unwrap()
    }

    #[test]
    fn evaluates_norm_plus_linear() {
        let s = FunctionalSpec::euclidean_norm(4);
        let x = Vector::new(vec![10.0, 0.0, 0.0, 1.0]);
        assert!((s.evaluate(&x).unwrap() - 101f64.sqrt()).abs() < 1e-12);
        assert_eq!(s.evaluate(&Vector::zeros(4)).unwrap(), 0.0);
    }

    #[test]
    fn evaluates_max_linear() {
        // max(-3, 3) on the one-dimensional pair {1, -1}.
        let s = abs_spec();
        assert_eq!(s.evaluate(&Vector::new(vec![-3.0])).unwrap(), 3.0);
    }

    #[test]
    fn rejects_dimension_mismatch() {
        let s = FunctionalSpec::euclidean_norm(3);
        assert!(matches!(
            s.evaluate(&Vector::zeros(2)),
            Err(Error::DimensionMismatch { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn rejects_empty_generators() {
        assert!(FunctionalSpec::max_linear(vec![]).is_err());
    }

    #[test]
    fn dual_negate_of_norm_is_negative_norm() {
        let s = FunctionalSpec::euclidean_norm(2);
        let p = s.dual_negate();
        assert_eq!(p.class(), FunctionalClass::Superlinear);
        let grid = [-3.0, -1.0, 0.0, 0.5, 2.0];
        for &a in &grid {
            for &b in &grid {
                let x = Vector::new(vec![a, b]);
                let expected = -s.eval(&(-&x));
                assert!((p.eval(&x) - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn dual_negate_of_abs_keeps_generators() {
        let p = abs_spec().dual_negate();
        assert!(matches!(p.form(), FunctionalForm::MinLinear { .. }));
        for t in [-2.5, -1.0, 0.0, 0.25, 3.0] {
            let x = Vector::new(vec![t]);
            assert!((p.eval(&x) - (-t.abs())).abs() < 1e-12);
        }
    }

    #[test]
    fn dual_negate_is_an_involution() {
        let specs = [
            FunctionalSpec::euclidean_norm(3),
            abs_spec(),
            FunctionalSpec::linear_minus_norm(
                Vector::new(vec![0.0, 1.0]),
                Matrix::from_rows(vec![vec![1.0, 0.0]]).unwrap(),
            )
            .unwrap(),
        ];
        let mut sampler = VectorSampler::new(11);
        for s in &specs {
            let twice = s.dual_negate().dual_negate();
            for _ in 0..64 {
                let x = sampler.ambient(s.dim());
                assert!((s.eval(&x) - twice.eval(&x)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn axioms_hold_for_euclidean_norm() {
        let s = FunctionalSpec::euclidean_norm(3);
        let mut sampler = VectorSampler::new(5);
        let report = check_axioms(&s, &mut sampler, 1000).unwrap();
        assert!(
            report.worst_margin >= -1e-9,
            "euclidean norm should satisfy its axioms, worst margin {}",
            report.worst_margin
        );
    }

    #[test]
    fn axioms_hold_for_linear_minus_norm() {
        // <e2, x> - |x1| is superlinear on R^2.
        let p = FunctionalSpec::linear_minus_norm(
            Vector::new(vec![0.0, 1.0]),
            Matrix::from_rows(vec![vec![1.0, 0.0]]).unwrap(),
        )
        .unwrap();
        let mut sampler = VectorSampler::new(17);
        let report = check_axioms(&p, &mut sampler, 1000).unwrap();
        assert!(report.worst_margin >= -1e-9, "worst margin {}", report.worst_margin);
    }

    #[test]
    fn axioms_refute_a_mislabeled_spec() {
        // min(x, -x) tagged sublinear: subadditivity fails on mixed signs.
        let mislabeled = FunctionalSpec::min_linear(vec![
            Vector::new(vec![1.0]),
            Vector::new(vec![-1.0]),
        ])
        .unwrap()
        .with_class(FunctionalClass::Sublinear);
        let mut sampler = VectorSampler::new(23);
        let report = check_axioms(&mislabeled, &mut sampler, 1000).unwrap();
        assert!(
            report.worst_margin < -1e-6,
            "mislabeled spec must be refuted, got margin {}",
            report.worst_margin
        );
        assert!(report.witness_y.is_some() || report.witness_alpha.is_some());
    }
}
