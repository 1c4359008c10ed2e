//! Axis spectra and lobe detection.
//!
//! The even part of a signal is a combination of sampled cosines, the odd
//! part of sampled sines. Their frequency content is described by two real
//! curves on `[0, Ω_Δ]`:
//!
//! ```text
//! Fre(ω) = u(0) + Σ_{k=1..l} 2·u_e(k)·cos(ωkΔ)     (real axis)
//! Fim(ω) =        Σ_{k=1..l} 2·u_o(k)·sin(ωkΔ)     (imaginary axis)
//! ```
//!
//! Sign-constant intervals of these curves ("lobes") locate harmonic
//! components; lobes of principal width seed the mode search.

use crate::error::{OmdError, Result};
use crate::signal::{parity_decompose, DiscreteSignal};

/// Which axis curve a lobe or mode belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// Mixed-parity signal (whole-signal search).
    Full,
    /// Even part / cosine components, curve `Fre`.
    Real,
    /// Odd part / sine components, curve `Fim`.
    Imaginary,
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Axis::Full => write!(f, "full"),
            Axis::Real => write!(f, "real"),
            Axis::Imaginary => write!(f, "imaginary"),
        }
    }
}

/// Both axis curves sampled on a uniform grid over `[0, Ω_Δ]`.
#[derive(Debug, Clone)]
pub struct AxisSpectrum {
    /// Angular frequency grid, `omega[0] = 0`, last = `Ω_Δ`, step `ε/oversample`.
    pub omega: Vec<f64>,
    /// Real-axis curve `Fre` on the grid.
    pub fre: Vec<f64>,
    /// Imaginary-axis curve `Fim` on the grid (`fim[0]` is exactly 0).
    pub fim: Vec<f64>,
    /// Resolution unit ε = π/(lΔ) rad/s.
    pub resolution: f64,
    /// Grid points per ε.
    pub oversample: usize,
}

impl AxisSpectrum {
    /// Grid step in rad/s.
    pub fn step(&self) -> f64 {
        self.resolution / self.oversample as f64
    }

    pub fn curve(&self, axis: Axis) -> &[f64] {
        match axis {
            Axis::Real => &self.fre,
            Axis::Imaginary => &self.fim,
            Axis::Full => panic!("no single curve for the full axis"),
        }
    }
}

/// Computes both axis spectra on a grid of step `ε/oversample`.
///
/// `oversample >= 8` keeps the grid step at or below ε/8 so that no
/// half-wave of width ε is ever missed between grid points.
pub fn compute_axis_spectra(u: &DiscreteSignal, oversample: usize) -> Result<AxisSpectrum> {
    if oversample < 8 {
        return Err(OmdError::InvalidConfig(format!(
            "spectrum oversample must be >= 8, got {oversample}"
        )));
    }
    let l = u.half_len();
    let dt = u.dt();
    let eps = u.resolution();
    let p = parity_decompose(u);
    let npts = l * oversample + 1;
    let mut omega = Vec::with_capacity(npts);
    let mut fre = Vec::with_capacity(npts);
    let mut fim = Vec::with_capacity(npts);
    for j in 0..npts {
        let w = j as f64 * eps / oversample as f64;
        let mut re = p.even.sample(0);
        let mut im = 0.0;
        for k in 1..=l {
            let (s, c) = (w * k as f64 * dt).sin_cos();
            re += 2.0 * p.even.sample(k as i64) * c;
            im += 2.0 * p.odd.sample(k as i64) * s;
        }
        omega.push(w);
        fre.push(re);
        fim.push(if j == 0 { 0.0 } else { im });
    }
    Ok(AxisSpectrum { omega, fre, fim, resolution: eps, oversample })
}

/// A maximal sign-constant interval of an axis curve.
#[derive(Debug, Clone)]
pub struct Lobe {
    /// Lower boundary (rad/s); a zero crossing refined by linear
    /// interpolation, or 0 / Ω_Δ at the grid ends.
    pub lo: f64,
    /// Upper boundary (rad/s).
    pub hi: f64,
    pub axis: Axis,
    /// Grid frequency of the largest-magnitude point inside the lobe.
    pub peak_freq: f64,
    /// Signed curve value at the peak.
    pub peak_value: f64,
    /// Width >= 1.5ε — wide enough to hold a harmonic component.
    pub is_principal: bool,
    /// Lobe is cut off by the grid boundary (starts at 0 or ends at Ω_Δ).
    pub touches_boundary: bool,
}

impl Lobe {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Multi-component test: a single full-window tone's lobe is exactly
    /// 2ε wide, so anything beyond that (with a hair of float slack)
    /// holds more than one component.
    pub fn is_multi_component(&self, resolution: f64) -> bool {
        self.width() > 2.0 * resolution * (1.0 + 1e-6)
    }
}

/// Detects all lobes of one axis curve.
///
/// Ripple below `1e-12 · max|curve|` is clamped to zero first so that
/// floating-point noise cannot split a lobe. Boundaries interior to the
/// grid are linearly interpolated zero crossings. An all-zero curve has
/// no lobes. Results are sorted by `lo` (construction order).
pub fn detect_lobes(spectrum: &AxisSpectrum, axis: Axis) -> Vec<Lobe> {
    let curve = spectrum.curve(axis);
    let w = &spectrum.omega;
    let eps = spectrum.resolution;
    let max_abs = curve.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
    if max_abs == 0.0 {
        return Vec::new();
    }
    let clamp = 1e-12 * max_abs;
    let c: Vec<f64> = curve.iter().map(|&v| if v.abs() < clamp { 0.0 } else { v }).collect();

    let n = c.len();
    let mut lobes = Vec::new();
    let mut i = 0;
    while i < n {
        if c[i] == 0.0 {
            i += 1;
            continue;
        }
        let sign = c[i].signum();
        let mut j = i;
        while j + 1 < n && c[j + 1].signum() == sign && c[j + 1] != 0.0 {
            j += 1;
        }
        let lo = if i == 0 {
            w[0]
        } else if c[i - 1] == 0.0 {
            w[i - 1]
        } else {
            // linear interpolation of the sign change in [w[i-1], w[i]]
            w[i - 1] + (w[i] - w[i - 1]) * c[i - 1] / (c[i - 1] - c[i])
        };
        let hi = if j == n - 1 {
            w[n - 1]
        } else if c[j + 1] == 0.0 {
            w[j + 1]
        } else {
            w[j] + (w[j + 1] - w[j]) * c[j] / (c[j] - c[j + 1])
        };
        let mut pk = i;
        for q in i..=j {
            if c[q].abs() > c[pk].abs() {
                pk = q;
            }
        }
        lobes.push(Lobe {
            lo,
            hi,
            axis,
            peak_freq: w[pk],
            peak_value: c[pk],
            is_principal: (hi - lo) >= 1.5 * eps,
            touches_boundary: i == 0 || j == n - 1,
        });
        i = j + 1;
    }
    lobes
}
