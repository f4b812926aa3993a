use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("degenerate domain: no interior nodes after rasterization")]
    DegenerateDomain,

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("no positive region: the plus mask of the weight is empty")]
    NoPositiveRegion,

    #[error("no negative region: the minus mask of the weight is empty")]
    NoNegativeRegion,

    #[error("infeasible packing: {0}")]
    InfeasiblePacking(String),

    #[error(
        "ball of radius {radius} at node ({i}, {j}) leaves the domain (clearance {clearance})"
    )]
    BallOutsideDomain {
        i: usize,
        j: usize,
        radius: f64,
        clearance: f64,
    },

    #[error("balls overlap: center separation {separation} < 2 * {radius}")]
    OverlappingBalls { separation: f64, radius: f64 },

    #[error("invalid exponent p = {0}: need 2 <= p <= 64")]
    InvalidExponent(f64),

    #[error("zero-order coefficient must be positive on every inside node (found {value} at node {node})")]
    NonPositiveCoefficient { node: usize, value: f64 },

    #[error(
        "cannot seed positive weighted mass: every cone down to one cell has nonpositive mass"
    )]
    CannotSeedPositiveMass,

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("field violates the Dirichlet condition at node {0}")]
    NotDirichlet(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    /// Process exit code for the command-line front end.
    ///
    /// 1 usage/config, 2 numeric failure, 3 infeasible geometry.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidGrid(_)
            | Error::InvalidShape(_)
            | Error::InvalidExponent(_)
            | Error::NonPositiveCoefficient { .. }
            | Error::GridMismatch(_)
            | Error::NotDirichlet(_)
            | Error::Parse(_)
            | Error::Config(_)
            | Error::Io(_) => 1,
            Error::CannotSeedPositiveMass | Error::Numeric(_) => 2,
            Error::DegenerateDomain
            | Error::NoPositiveRegion
            | Error::NoNegativeRegion
            | Error::InfeasiblePacking(_)
            | Error::BallOutsideDomain { .. }
            | Error::OverlappingBalls { .. } => 3,
        }
    }
}
