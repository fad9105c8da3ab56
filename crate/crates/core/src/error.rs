use thiserror::Error;

/// Errors raised across the toolkit.
///
/// Diagram validation failures carry the offending arc or crossing so a
/// caller can point at the bad record in the input file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arc {0} does not appear exactly once as an incoming and once as an outgoing slot")]
    DanglingArc(u32),
    #[error("component {component} is inconsistent with crossing adjacency at arc {arc}")]
    InconsistentCycle { component: usize, arc: u32 },
    #[error("crossing {0} has a sign that is inconsistent with a planar diagram")]
    BadSign(usize),
    #[error("component index {index} out of range (diagram has {count} components)")]
    ComponentOutOfRange { index: usize, count: usize },
    #[error("graph is not a forest; cycle through vertices {0:?}")]
    NotAForest(Vec<usize>),
    #[error("invalid graph: {0}")]
    BadGraph(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("polynomial variables do not match: {0} vs {1}")]
    VariableMismatch(char, char),
    #[error("diagram has {crossings} crossings, budget is {budget}")]
    CrossingBudgetExceeded { crossings: usize, budget: usize },
    #[error("bad basepoint: {0}")]
    BadBasepoint(String),
    #[error("expected {expected} components, found {found}")]
    ComponentCountMismatch { expected: usize, found: usize },
    #[error("empty component selection")]
    EmptySelection,
    #[error("path RAAG operation requires m >= 4 (m = {0})")]
    RequiresMAtLeast4(usize),
    #[error("(u, v) is not a solution of the conjugation equation")]
    NotASolution,
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
