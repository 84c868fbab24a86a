use gaudin_poly::PolyError;
use thiserror::Error;

use crate::WeightConfig;

#[derive(Debug, Error)]
pub enum GaudinError {
    #[error("admissible range is empty for {0}")]
    EmptyRange(WeightConfig),
    #[error("H2 and H3 have a pole at u = 1")]
    PoleAtOne,
    #[error("point is not on the curve: |f| = {residual:e} exceeds {tolerance:e}")]
    OffCurve { residual: f64, tolerance: f64 },
    #[error("weight triples differ: {0:?} vs {1:?}")]
    WeightMismatch([u32; 3], [u32; 3]),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("elimination was inconclusive: {0}")]
    InconclusiveElimination(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("roots not separated at {precision} bits: {detail}")]
    SeparationFailure { precision: u32, detail: String },
    #[error("root iteration did not converge at {precision} bits after {iterations} iterations")]
    ConvergenceFailure { precision: u32, iterations: usize },
    #[error("continuation step fell below {min_step:e} near u = {at}")]
    StepCollapse { min_step: f64, at: String },
    #[error("ambiguous sheet matching near u = {at} (ratio {ratio:.3})")]
    MatchAmbiguity { at: String, ratio: f64 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl GaudinError {
    /// True for failures of the floating-point machinery, as opposed to
    /// inputs that violate a mathematical precondition.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            GaudinError::SeparationFailure { .. }
                | GaudinError::ConvergenceFailure { .. }
                | GaudinError::StepCollapse { .. }
                | GaudinError::MatchAmbiguity { .. }
                | GaudinError::OffCurve { .. }
        )
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            GaudinError::EmptyRange(_) => "EmptyRange",
            GaudinError::PoleAtOne => "PoleAtOne",
            GaudinError::OffCurve { .. } => "OffCurve",
            GaudinError::WeightMismatch(..) => "WeightMismatch",
            GaudinError::InvalidWeights(_) => "InvalidWeights",
            GaudinError::InconclusiveElimination(_) => "InconclusiveElimination",
            GaudinError::PreconditionFailed(_) => "PreconditionFailed",
            GaudinError::SeparationFailure { .. } => "SeparationFailure",
            GaudinError::ConvergenceFailure { .. } => "ConvergenceFailure",
            GaudinError::StepCollapse { .. } => "StepCollapse",
            GaudinError::MatchAmbiguity { .. } => "MatchAmbiguity",
            GaudinError::Poly(_) => "DegenerateInput",
        }
    }
}

pub type Result<T, E = GaudinError> = std::result::Result<T, E>;
