//! Discrete signals on symmetric grids and their band-limited interpolants.
//!
//! A signal holds `n = 2l + 1` real samples at times `k·Δ` for
//! `k = -l..=l`. Its sinc interpolant
//!
//! ```text
//! Ψ_u(t) = Σ_k u(k) · sinc(Ω_Δ (t - kΔ)),   Ω_Δ = π/Δ
//! ```
//!
//! is the unique band-limited function through the samples and is the
//! continuous object all phase and trend analysis works on.

use crate::error::{OmdError, Result};

/// Normalized cardinal sine `sin(x)/x` with `sinc(0) = 1`.
///
/// Near zero the direct quotient loses accuracy; a 2-term Taylor
/// expansion covers `|x| < 1e-8` (error below 1e-33 there).
#[inline]
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Derivative of [`sinc`]: `(x·cos x - sin x)/x²`, with the Taylor
/// guard `-x/3` on the same `|x| < 1e-8` branch.
#[inline]
pub fn dsinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        -x / 3.0
    } else {
        (x * x.cos() - x.sin()) / (x * x)
    }
}

/// A finite, odd-length, uniformly sampled real signal centered at t = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSignal {
    samples: Vec<f64>,
    dt: f64,
}

impl DiscreteSignal {
    /// Builds a signal from samples at `k = -l..=l` and sample period `dt`.
    ///
    /// Errors on even or too-short length, non-finite samples, or `dt <= 0`.
    /// Callers holding an even-length record decide themselves whether to
    /// drop a sample (the CLI does, with a warning) — the library never
    /// silently truncates.
    pub fn new(samples: Vec<f64>, dt: f64) -> Result<Self> {
        if samples.len() < 3 {
            return Err(OmdError::InvalidSignal(format!(
                "need at least 3 samples, got {}",
                samples.len()
            )));
        }
        if samples.len().is_multiple_of(2) {
            return Err(OmdError::InvalidSignal(format!(
                "length must be odd, got {}",
                samples.len()
            )));
        }
        if !dt.is_finite() || dt <= 0.0 {
            return Err(OmdError::InvalidSignal(format!("sample period {dt} must be positive")));
        }
        if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
            return Err(OmdError::InvalidSignal(format!("non-finite sample at index {i}")));
        }
        Ok(Self { samples, dt })
    }

    /// Number of samples `n = 2l + 1`.
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false // constructor enforces n >= 3
    }

    /// Half-length `l`.
    pub fn half_len(&self) -> usize {
        (self.samples.len() - 1) / 2
    }

    /// Sample period Δ in seconds.
    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Samples in grid order, index `j` holding `u(j - l)`.
    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// Sample at signed grid offset `k ∈ -l..=l`.
    pub fn sample(&self, k: i64) -> f64 {
        let l = self.half_len() as i64;
        debug_assert!(k >= -l && k <= l);
        self.samples[(k + l) as usize]
    }

    /// Half of the principal interval: `T = l·Δ`.
    pub fn half_span(&self) -> f64 {
        self.half_len() as f64 * self.dt
    }

    /// Angular Nyquist rate `Ω_Δ = π/Δ` (rad/s).
    pub fn nyquist(&self) -> f64 {
        std::f64::consts::PI / self.dt
    }

    /// Frequency resolution unit `ε = π/(lΔ)` (rad/s), i.e. `1/T` Hz.
    pub fn resolution(&self) -> f64 {
        std::f64::consts::PI / (self.half_len() as f64 * self.dt)
    }

    /// Grid times `kΔ` for `k = -l..=l`.
    pub fn times(&self) -> Vec<f64> {
        let l = self.half_len() as i64;
        (-l..=l).map(|k| k as f64 * self.dt).collect()
    }

    /// Evaluates the sinc interpolant `Ψ_u(t)`.
    ///
    /// Exact at grid nodes (each kernel term is 1 at its own node and 0 at
    /// the others).
    pub fn interpolant_eval(&self, t: f64) -> f64 {
        let l = self.half_len() as i64;
        let om = self.nyquist();
        let mut acc = 0.0;
        for (j, &u) in self.samples.iter().enumerate() {
            let k = j as i64 - l;
            acc += u * sinc(om * (t - k as f64 * self.dt));
        }
        acc
    }

    /// Evaluates the interpolant derivative `Ψ'_u(t)`.
    pub fn interpolant_derivative_eval(&self, t: f64) -> f64 {
        let l = self.half_len() as i64;
        let om = self.nyquist();
        let mut acc = 0.0;
        for (j, &u) in self.samples.iter().enumerate() {
            let k = j as i64 - l;
            acc += u * om * dsinc(om * (t - k as f64 * self.dt));
        }
        acc
    }

    /// Euclidean norm of the sample vector.
    pub fn norm(&self) -> f64 {
        self.samples.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Sample energy `Σ u(k)²`.
    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|v| v * v).sum()
    }

    /// Pointwise difference `self - other`. Panics if grids differ.
    pub fn subtract(&self, other: &DiscreteSignal) -> DiscreteSignal {
        assert_eq!(self.samples.len(), other.samples.len(), "grid length mismatch");
        assert_eq!(self.dt, other.dt, "sample period mismatch");
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| a - b)
            .collect();
        DiscreteSignal { samples, dt: self.dt }
    }

    /// Pointwise sum `self + other`. Panics if grids differ.
    pub fn add(&self, other: &DiscreteSignal) -> DiscreteSignal {
        assert_eq!(self.samples.len(), other.samples.len(), "grid length mismatch");
        assert_eq!(self.dt, other.dt, "sample period mismatch");
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| a + b)
            .collect();
        DiscreteSignal { samples, dt: self.dt }
    }

    /// Zero signal on the same grid.
    pub fn zeros_like(&self) -> DiscreteSignal {
        DiscreteSignal { samples: vec![0.0; self.samples.len()], dt: self.dt }
    }

    /// Builds a signal on the same grid from raw samples (length checked).
    pub fn with_samples(&self, samples: Vec<f64>) -> DiscreteSignal {
        assert_eq!(samples.len(), self.samples.len(), "grid length mismatch");
        DiscreteSignal { samples, dt: self.dt }
    }
}

/// Even/odd split of a signal: `u = even + odd` with
/// `even(k) = even(-k)` and `odd(k) = -odd(-k)`.
#[derive(Debug, Clone)]
pub struct ParityPair {
    pub even: DiscreteSignal,
    pub odd: DiscreteSignal,
}

/// Splits `u` into its even and odd parts,
/// `even = (u + reverse(u))/2`, `odd = (u - reverse(u))/2`.
pub fn parity_decompose(u: &DiscreteSignal) -> ParityPair {
    let s = u.samples();
    let n = s.len();
    let mut even = vec![0.0; n];
    let mut odd = vec![0.0; n];
    for j in 0..n {
        let r = s[n - 1 - j];
        even[j] = 0.5 * (s[j] + r);
        odd[j] = 0.5 * (s[j] - r);
    }
    ParityPair {
        even: DiscreteSignal { samples: even, dt: u.dt() },
        odd: DiscreteSignal { samples: odd, dt: u.dt() },
    }
}
