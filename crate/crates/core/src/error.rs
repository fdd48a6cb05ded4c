use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("N must be at least 1")]
    InvalidDegree,
    #[error("alpha = {0} lies outside [0, 1]")]
    AlphaOutOfRange(String),
    #[error("no positivity regime holds: {0}")]
    RegimeViolation(String),
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("negative off-diagonal entry u_{0}")]
    NegativeOffdiagonal(usize),
    #[error("bisection did not converge for eigenvalue {0}")]
    ConvergenceFailure(usize),
    #[error("block splitting needs alpha in {{0, 1}}")]
    NotDegenerate,
    #[error("explicit form of degree {0} divides by alpha = 0")]
    AlphaZeroBranch(usize),
    #[error("bi-lattice nodes {0} and {1} coincide")]
    CollidingNodes(usize, usize),
    #[error("P_N vanishes at node {0}")]
    ZeroAtNode(usize),
    #[error("D(x) has a pole at x = {0}")]
    PoleAtX(String),
    #[error("closed form is singular: {0}")]
    Singular(String),
    #[error("malformed coefficient table: {0}")]
    TableShape(String),
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
