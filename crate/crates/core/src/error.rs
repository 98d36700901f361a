use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("no violating set of size <= {budget} exists")]
    BudgetExceeded { budget: usize },
    #[error("{what} size {size} exceeds cap {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },
    #[error("vertex set cannot be spanned without forbidden edges")]
    Disconnected,
    #[error("tree count {t} out of range 1..={k}")]
    InvalidT { t: usize, k: usize },
    #[error("perfect matching requested on {0} vertices")]
    OddSet(usize),
    #[error("multigraph is not Eulerian: {0}")]
    NotEulerian(String),
    #[error("invalid path endpoints {s}, {t}")]
    InvalidEndpoints { s: usize, t: usize },
    #[error("subset is not metric: w({a},{c}) > w({a},{b}) + w({b},{c})")]
    NotMetric { a: usize, b: usize, c: usize },
    #[error("walk does not visit vertex {0}")]
    IncompleteCover(usize),
    #[error("structure check failed: {0}")]
    StructureViolated(String),
    #[error("odd-degree count in tree {tree} is odd")]
    ParityViolated { tree: usize },
    #[error("shortcut at {apex} between {prev} and {next} would increase weight")]
    ShortcutIncrease { prev: usize, apex: usize, next: usize },
    #[error("instance generation failed: {0}")]
    GenerationFailed(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Errors that only mean "this guess is not the right one".
    pub fn is_skippable(&self) -> bool {
        matches!(
            self,
            Error::StructureViolated(_) | Error::ParityViolated { .. } | Error::NotEulerian(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
