use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid mode layout: {0}")]
    InvalidLayout(String),

    #[error("unknown mode label `{0}`")]
    UnknownMode(String),

    #[error("mode label `{0}` appears in both states")]
    LabelCollision(String),

    #[error("beamsplitter needs two distinct modes, got `{0}` twice")]
    IdenticalModes(String),

    #[error("occupation {occupation:?} does not fit layout (cutoff {cutoff}, {modes} modes)")]
    InvalidOccupation {
        occupation: Vec<u32>,
        cutoff: usize,
        modes: usize,
    },

    #[error("all amplitudes are zero")]
    ZeroState,

    #[error("state norm {0} deviates from 1")]
    NotNormalized(f64),

    #[error("cutoff {cutoff} too small: truncated tail {tail:e} exceeds {tolerance:e}")]
    CutoffTooSmall {
        cutoff: usize,
        tail: f64,
        tolerance: f64,
    },

    #[error("mixture components use different mode layouts")]
    LayoutMismatch,

    #[error("invalid mixture weights: {0}")]
    InvalidWeights(String),

    #[error("density matrix rejected: {0}")]
    InvalidDensity(String),

    #[error("expected modes {expected:?}, found {found:?}")]
    WrongLayout {
        expected: Vec<String>,
        found: Vec<String>,
    },

    #[error("coincidence denominator {0:e} vanishes; E and the correlation amplitudes are undefined")]
    ZeroCoincidence(f64),

    #[error("mean photon number of mode `{0}` vanishes")]
    ZeroIntensity(String),

    #[error("optimal local oscillator degenerates: <n1 n2> = {0:e}")]
    DegenerateLo(f64),

    #[error("cat parameters make the state or its coherence functions singular")]
    CatDegenerate,

    #[error("negative correlator {0:e} beyond roundoff")]
    NegativeCorrelator(f64),

    #[error("backends disagree by {0:e}")]
    BackendMismatch(f64),

    #[error("phase search reached {found} but the analytic optimum is {analytic}")]
    OptimizerShortfall { found: f64, analytic: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("denominator {0:e} of the amplitude estimate vanishes")]
    ZeroDenominator(f64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable tag, used by the CLI error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidLayout(_) => "invalid_layout",
            Error::UnknownMode(_) => "unknown_mode",
            Error::LabelCollision(_) => "label_collision",
            Error::IdenticalModes(_) => "identical_modes",
            Error::InvalidOccupation { .. } => "invalid_occupation",
            Error::ZeroState => "zero_state",
            Error::NotNormalized(_) => "not_normalized",
            Error::CutoffTooSmall { .. } => "cutoff_too_small",
            Error::LayoutMismatch => "layout_mismatch",
            Error::InvalidWeights(_) => "invalid_weights",
            Error::InvalidDensity(_) => "invalid_density",
            Error::WrongLayout { .. } => "wrong_layout",
            Error::ZeroCoincidence(_) => "zero_coincidence",
            Error::ZeroIntensity(_) => "zero_intensity",
            Error::DegenerateLo(_) => "degenerate_lo",
            Error::CatDegenerate => "cat_degenerate",
            Error::NegativeCorrelator(_) => "negative_correlator",
            Error::BackendMismatch(_) => "backend_mismatch",
            Error::OptimizerShortfall { .. } => "optimizer_shortfall",
            Error::InvalidParams(_) => "invalid_params",
            Error::ZeroDenominator(_) => "zero_denominator",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
        }
    }
}
