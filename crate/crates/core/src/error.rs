use thiserror::Error;

use crate::symbols::Word;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse number {0:?}")]
    Parse(String),
    #[error("invalid number field: {0}")]
    BadField(String),
    #[error("values from different number fields {0} and {1}")]
    FieldMismatch(String, String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MapError {
    #[error("map has no branches")]
    NoBranches,
    #[error("branch {0} has an empty domain")]
    EmptyDomain(usize),
    #[error("branch domains {0} and {1} overlap")]
    OverlappingDomains(usize, usize),
    #[error("gap between branch {0} and branch {1}")]
    GapBetweenBranches(usize, usize),
    #[error("branch domains do not cover the ambient interval")]
    UncoveredInterval,
    #[error("branch {0} is not strictly monotone")]
    NonMonotoneBranch(usize),
    #[error("image of branch {0} escapes the ambient interval")]
    ImageEscapesInterval(usize),
    #[error("invalid sided point: {0}")]
    InvalidSidedPoint(String),
    #[error("point {0} lies within tolerance of a partition endpoint")]
    TolExceeded(String),
    #[error("exact mode requires affine branches")]
    NotAffine,
    #[error("bad map specification: {0}")]
    Spec(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KneadingError {
    #[error("comparison undecidable from the known prefixes")]
    Undecidable,
    #[error("cylinder budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("operation requires exact arithmetic")]
    NotExact,
    #[error("operation requires affine branches")]
    NotAffine,
    #[error(transparent)]
    Map(#[from] MapError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiagramError {
    #[error("follower sets undecidable at the probe depth for word {0:?}")]
    UndecidableAtDepth(Word),
    #[error("word {0:?} is not admissible")]
    NotAdmissible(Word),
    #[error("map is not a normalized unimodal map: {0}")]
    NotUnimodal(String),
    #[error("vertex sequence is not a path: no arrow {0} -> {1}")]
    NotAPath(usize, usize),
    #[error("vertex {0} is out of range")]
    NoSuchVertex(usize),
    #[error(transparent)]
    Kneading(#[from] KneadingError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ShiftError {
    #[error("graph has no cycle")]
    NoCycle,
    #[error("vertex {0} is out of range")]
    NoSuchVertex(usize),
    #[error("component {0} is not strongly connected with a cycle")]
    TrivialComponent(usize),
    #[error("power iteration did not converge after {0} iterations")]
    NonConvergence(usize),
    #[error("inconsistent return series: {0}")]
    InconsistentSeries(String),
    #[error("component is not positive recurrent")]
    NotPositiveRecurrent,
    #[error("operation requires affine branches")]
    NotAffine,
    #[error("graph too large for exact elimination ({0} vertices)")]
    TooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PeriodicError {
    #[error("diagram is incomplete; loop counts would be censored")]
    IncompleteDiagram,
    #[error("word budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("truncation prevents certification: {0}")]
    DepthLimited(String),
    #[error("n = {n} is not a multiple of the period {period}")]
    PeriodMismatch { n: usize, period: usize },
    #[error(transparent)]
    Kneading(#[from] KneadingError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Shift(#[from] ShiftError),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// Top-level error for the CLI and report assembly.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Kneading(#[from] KneadingError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Shift(#[from] ShiftError),
    #[error(transparent)]
    Periodic(#[from] PeriodicError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
