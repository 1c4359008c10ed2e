use crate::phase::PhaseTrack;

/// Errors produced by signal construction, analysis, and decomposition.
#[derive(Debug, thiserror::Error)]
pub enum OmdError {
    /// Input samples cannot form a valid signal (wrong length, non-finite
    /// values, non-positive sample period).
    #[error("invalid signal: {0}")]
    InvalidSignal(String),

    /// A frequency band interval violates 1 <= lo <= hi <= l-1.
    #[error("invalid band [{lo}, {hi}] for half-length {half_len}")]
    InvalidBand { lo: usize, hi: usize, half_len: usize },

    /// Phase is undefined for an identically zero signal.
    #[error("zero signal has no phase")]
    ZeroSignal,

    /// Companion construction requires a pure even (or pure odd) input.
    #[error("signal is not pure {expected}: opposite-parity norm ratio {ratio:.2e}")]
    NotPureParity { expected: &'static str, ratio: f64 },

    /// Frequency-sign classification needs at least one valid track point.
    #[error("no valid points above the amplitude floor")]
    NoValidPoints,

    /// The seed band's projection does not have single-signed instantaneous
    /// frequency; the offending track is attached for inspection.
    #[error("seed is not inside a mode")]
    SeedNotMode { track: Box<PhaseTrack> },

    /// The band search accepted more extensions than allowed.
    #[error("band search exceeded {limit} expansions")]
    MaxExpansionsExceeded { limit: usize },

    /// No admissible resampling period exists for the requested cutoff.
    #[error("inadmissible trend cutoff: {0}")]
    InadmissibleCutoff(String),

    /// The trend system is too ill-conditioned to solve reliably.
    #[error("trend system condition {cond:.2e} exceeds 1e12; use a larger resample period / lower cutoff")]
    IllConditioned { cond: f64 },

    /// Trend evaluation outside the principal interval is refused.
    #[error("t = {t} lies outside the principal interval [-{half_span}, {half_span}]")]
    TrendDomain { t: f64, half_span: f64 },

    /// A configuration value is out of its documented range.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, OmdError>;
