use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a state space needs at least one mode")]
    ZeroModes,

    #[error("mode index {mode} out of range for {modes} modes")]
    ModeOutOfRange { mode: usize, modes: usize },

    #[error("mode count mismatch: {left} vs {right}")]
    ModeMismatch { left: usize, right: usize },

    #[error("occupation vector has length {got}, expected {expected}")]
    WrongLength { expected: usize, got: usize },

    #[error("state is not normalized (norm² = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("all amplitudes are zero")]
    ZeroAmplitudes,

    #[error("matrix is not square or has unsupported dimension ({rows}×{cols})")]
    BadDimension { rows: usize, cols: usize },

    #[error("matrix is not unitary (max |U†U − I| = {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("unitary of dimension {dim} at mode offset {offset} does not fit in {modes} modes")]
    OffsetOutOfRange { dim: usize, offset: usize, modes: usize },

    #[error("photon-number sector {photons} exceeds the cap of {cap}")]
    PhotonCapExceeded { photons: u32, cap: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("solver did not reach residual {tolerance:e}; best residual {best_residual:e}")]
    SolverFailed { tolerance: f64, best_residual: f64 },
}
