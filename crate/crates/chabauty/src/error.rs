//! Error types shared across the crate.

use thiserror::Error;

/// Errors from subgroup construction, classification and queries.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum SubgroupError {
    #[error("operation undefined on stratum `{0}`")]
    WrongStratum(&'static str),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("exact coordinates required: {0}")]
    ExactInputRequired(String),
    #[error("mixed quadratic radicands are not supported ({0} vs {1})")]
    MixedRadicands(u32, u32),
    #[error("enumeration cap exceeded ({0})")]
    EnumerationCap(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Errors from the metric engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricError {
    #[error("enumeration cap exceeded ({0} pieces/samples)")]
    EnumerationCap(usize),
    #[error("bisection bracket failure: predicate false at eps_max = {0}")]
    BracketFailure(f64),
    #[error("invalid configuration: {0}")]
    BadConfig(String),
    #[error("family member {index} is not a lattice")]
    NonLattice { index: usize },
    #[error(transparent)]
    Subgroup(SubgroupError),
}

impl From<SubgroupError> for MetricError {
    fn from(e: SubgroupError) -> Self {
        match e {
            SubgroupError::EnumerationCap(n) => MetricError::EnumerationCap(n),
            other => MetricError::Subgroup(other),
        }
    }
}

/// Errors from numerical invariant computations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum InvariantError {
    #[error("operation undefined on stratum `{0}`")]
    WrongStratum(&'static str),
    #[error("tolerance {tol} infeasible within enumeration cap {cap}")]
    TolInfeasible { tol: f64, cap: usize },
    #[error("iteration did not converge (final residual {residual})")]
    NoConvergence { residual: f64 },
    #[error(transparent)]
    Subgroup(#[from] SubgroupError),
}
