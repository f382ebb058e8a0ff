use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("square root requested on the branch cut: {0}")]
    BranchCut(String),
    #[error("zero tangential frequency: interface symbols divide by A")]
    ZeroFrequency,
    #[error("Lopatinskii degeneracy: |det L| = {0:e} below floor")]
    Degenerate(f64),
    #[error("surface symbol degeneracy: |L(lambda, xi')| = {0:e} below floor")]
    SurfaceDegenerate(f64),
    #[error("x_n = {x_n} lies on the wrong side for the requested phase")]
    WrongSide { x_n: f64 },
    #[error("derivative order {0} not supported (max 3)")]
    DerivativeOrder(u32),
    #[error("S^theta variant 5 with k = n is excluded; use the A B^-2 omega_n weighting")]
    ExcludedTerm,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("data growth rate {rate} is not below contour abscissa {gamma}")]
    Growth { rate: f64, gamma: f64 },
    #[error("inconsistent resolvent ratio: right-hand side vanishes but solution does not")]
    Inconsistent,
    #[error("config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
