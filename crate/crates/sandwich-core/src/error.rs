use thiserror::Error;

use crate::extension::ExtensionStep;
use crate::infconv::ConditionReport;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector lies outside the subspace (projection residual {residual:.3e})")]
    NotInSubspace { residual: f64 },

    #[error("basis vector {index} is linearly dependent on the preceding ones (residual {residual:.3e})")]
    DependentBasis { index: usize, residual: f64 },

    #[error("direction already lies in the subspace (projection residual {residual:.3e})")]
    DirectionInSubspace { residual: f64 },

    #[error("{0}")]
    InvalidInput(String),

    #[error("linear program solver breakdown: {0}")]
    SolverBreakdown(String),

    /// The one-direction feasibility window came up empty: no value for the
    /// new coefficient keeps the partial functional between the two bounds.
    #[error("extension infeasible along step {step}: window [{lo}, {hi}] is empty (gap {gap:.3e})")]
    InfeasibleExtension {
        step: usize,
        lo: f64,
        hi: f64,
        gap: f64,
        bounds: [f64; 4],
        trace: Vec<ExtensionStep>,
    },

    #[error("condition ({id}) does not hold (worst margin {margin:.3e})", id = report.condition, margin = report.worst_margin)]
    ConditionFailed { report: ConditionReport },

    #[error("grid oracle limited to {max} search dimensions, got {dim}")]
    GridTooLarge { dim: usize, max: usize },
}
