use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("coefficient m = {0} is not a finite integer >= 3")]
    InvalidCoefficient(u32),
    #[error("ball of radius {radius} is too small: {reason}")]
    BallTooSmall { radius: u32, reason: String },
    #[error("vertex budget of {budget} exceeded")]
    BudgetExceeded { budget: usize },
    #[error("vertex {0} is not in the ball")]
    VertexOutsideBall(String),
    #[error("element is elliptic on the tree; it has no axis")]
    Elliptic,
    #[error("invalid defining graph: {0}")]
    InvalidGraph(String),
    #[error("graph is not 2-dimensional: triangle {0:?} has 1/m sum > 1")]
    NotTwoDimensional([String; 3]),
    #[error("unknown link vertex '{0}'")]
    UnknownVertex(String),
    #[error("precondition refused: {0}")]
    Refused(Refusal),
    #[error("gluing of '{label}' along {simplex} fails the local-group rule")]
    Gluing { label: String, simplex: String },
    #[error("strip enumeration exceeded {0} strips")]
    StripOverflow(usize),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("i/o: {0}")]
    Io(String),
}

/// Why the witness pipeline declined a defining graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Refusal {
    RankTooSmall,
    Disconnected,
    NotTwoDimensional,
    Reducible,
    RightAngled,
}

impl std::fmt::Display for Refusal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let msg = match self {
            Refusal::RankTooSmall => "rank is below 3",
            Refusal::Disconnected => {
                "graph is disconnected; the group is a free product of its component groups"
            }
            Refusal::NotTwoDimensional => "graph is not 2-dimensional",
            Refusal::Reducible => "group is reducible (a direct product)",
            Refusal::RightAngled => {
                "graph is right angled; use the known result for right-angled Artin groups"
            }
        };
        f.write_str(msg)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
