//! Orthogonal mode decomposition for finite, uniformly sampled real
//! signals.
//!
//! A signal of odd length `n = 2l+1` on step Δ is identified with its
//! band-limited sinc interpolant on the principal interval [−lΔ, lΔ].
//! Splitting by parity gives an even and an odd component whose spectra
//! play the roles of the real and imaginary axes of an analytic signal;
//! everything else builds on that pairing:
//!
//! - [`spectrum`] — axis spectra on the natural resolution grid
//!   ε = π/(lΔ) and the sign-constant lobes they decompose into;
//! - [`projection`] — orthogonal projection onto bands of whole
//!   resolution units;
//! - [`phase`] — instantaneous amplitude/phase/frequency of a parity
//!   pair, with companion constructions for single-parity signals;
//! - [`search`] — the band-growing mode search and full decomposition;
//! - [`trend`] — low-frequency trend fitting by coarse resampling;
//! - [`examples`] — the built-in example signals.
//!
//! All numeric routines are pure functions over immutable inputs.

pub mod error;
pub mod examples;
pub mod phase;
pub mod projection;
pub mod search;
pub mod signal;
pub mod spectrum;
pub mod trend;

pub use error::{OmdError, Result};
pub use examples::{example_signal, sawtooth, EXAMPLE0_SEED};
pub use phase::{
    auto_phase_track, classify_frequency_sign, companion_even_source, companion_odd_source,
    compute_phase_track, CompanionCoefficients, CompanionKind, FreqSign, PhaseTrack,
    AMP_FLOOR_REL,
};
pub use projection::{
    band_basis, band_coefficients, project_band, project_band_oracle, BandBasis, BandInterval,
};
pub use search::{
    decompose_axis, decompose_full, search_mode, DecompositionResult, ExpansionOrder, Mode,
    ModeReport, SearchConfig,
};
pub use signal::{parity_decompose, DiscreteSignal, ParityPair};
pub use spectrum::{compute_axis_spectra, detect_lobes, Axis, AxisSpectrum, Lobe};
pub use trend::{choose_resample_period, eval_trend, fit_trend, TrendFit};
