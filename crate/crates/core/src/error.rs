use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid tabulated profile: {0}")]
    InvalidTable(String),

    #[error("operation requires a square well or square barrier profile")]
    NotSquare,

    #[error("energy {energy} is not a scattering energy (must exceed the rest energy {rest})")]
    NotScattering { energy: f64, rest: f64 },

    #[error("trial energy {0} has a non-decaying tail at the grid boundary")]
    NonDecayingTail(f64),

    #[error(
        "bisection did not converge after {iterations} iterations on bracket [{lower}, {upper}]"
    )]
    NoConvergence {
        lower: f64,
        upper: f64,
        iterations: usize,
    },

    #[error("state at E = {energy} has {nodes} nodes, inconsistent with {parity} parity")]
    NodeParity {
        energy: f64,
        nodes: usize,
        parity: &'static str,
    },

    #[error("cannot normalize or count nodes of an all-zero sample vector")]
    ZeroNorm,

    #[error("slice width {width} too coarse for local wave number {wave_number} (product must stay below 0.1)")]
    SliceTooCoarse { width: f64, wave_number: f64 },

    #[error("spectra differ in length: barrier has {barrier} states, well has {well}")]
    SpectrumLengthMismatch { barrier: usize, well: usize },

    #[error("at control value {control}: {source}")]
    Sweep {
        control: f64,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
