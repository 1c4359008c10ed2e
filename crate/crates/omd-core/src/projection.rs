//! Orthogonal projection onto frequency bands of the interpolation space.
//!
//! The sampled trigonometric family
//!
//! ```text
//! s_v(k) = sin(vπk/l),  c_v(k) = cos(vπk/l),   k = -l..=l
//! ```
//!
//! spans the interpolation space; band `[i, m]` (in resolution units ε)
//! selects columns `v = i..=m` of both families. Distinct sampled sines
//! and cosines are mutually orthogonal except for a ±1 coupling between
//! cosine pairs, so the basis is well conditioned and least squares via
//! QR is stable far beyond what an explicit normal-equations inverse
//! would allow.

use crate::error::{OmdError, Result};
use crate::signal::DiscreteSignal;
use nalgebra::{DMatrix, DVector};

/// A band of whole resolution units: `lo..=hi` with `1 <= lo <= hi <= l-1`.
///
/// Single-bin bands (`lo == hi`) are allowed — they seed the search for
/// isolated tones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BandInterval {
    lo: usize,
    hi: usize,
}

impl BandInterval {
    pub fn new(lo: usize, hi: usize, half_len: usize) -> Result<Self> {
        if lo < 1 || lo > hi || hi > half_len.saturating_sub(1) {
            return Err(OmdError::InvalidBand { lo, hi, half_len });
        }
        Ok(Self { lo, hi })
    }

    /// Lower bin index (inclusive).
    pub fn lo(&self) -> usize {
        self.lo
    }

    /// Upper bin index (inclusive).
    pub fn hi(&self) -> usize {
        self.hi
    }

    /// Number of bins spanned.
    pub fn bins(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn contains(&self, bin: usize) -> bool {
        self.lo <= bin && bin <= self.hi
    }

    /// Band edges in rad/s for resolution unit `eps`.
    pub fn edges(&self, eps: f64) -> (f64, f64) {
        (self.lo as f64 * eps, self.hi as f64 * eps)
    }
}

/// The sampled sine/cosine columns of a band, in the order
/// `sin(i), cos(i), sin(i+1), cos(i+1), …, sin(m), cos(m)`.
#[derive(Debug, Clone)]
pub struct BandBasis {
    matrix: DMatrix<f64>,
    band: BandInterval,
}

impl BandBasis {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn band(&self) -> BandInterval {
        self.band
    }

    pub fn rows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.ncols()
    }
}

/// Builds the `n × 2p` band basis for a grid of half-length `l`.
pub fn band_basis(half_len: usize, band: BandInterval) -> BandBasis {
    let l = half_len;
    let n = 2 * l + 1;
    let p = band.bins();
    let mut mat = DMatrix::zeros(n, 2 * p);
    for (bi, v) in (band.lo..=band.hi).enumerate() {
        for j in 0..n {
            let k = j as i64 - l as i64;
            let x = v as f64 * std::f64::consts::PI * k as f64 / l as f64;
            mat[(j, 2 * bi)] = x.sin();
            mat[(j, 2 * bi + 1)] = x.cos();
        }
    }
    BandBasis { matrix: mat, band }
}

/// Projects `u` orthogonally onto the span of the band basis.
///
/// Least squares through a QR factorization; the basis is never
/// normal-equation-squared or inverted. The result lives on the same grid.
pub fn project_band(u: &DiscreteSignal, band: BandInterval) -> Result<DiscreteSignal> {
    let basis = band_basis(u.half_len(), band);
    let coeffs = solve_lstsq(&basis, u)?;
    let proj = basis.matrix() * coeffs;
    Ok(u.with_samples(proj.as_slice().to_vec()))
}

/// Band coefficients for `u` in basis column order.
pub fn band_coefficients(u: &DiscreteSignal, band: BandInterval) -> Result<DVector<f64>> {
    let basis = band_basis(u.half_len(), band);
    solve_lstsq(&basis, u)
}

fn solve_lstsq(basis: &BandBasis, u: &DiscreteSignal) -> Result<DVector<f64>> {
    let rhs = DVector::from_column_slice(u.samples());
    let qr = basis.matrix().clone().qr();
    let q = qr.q();
    let r = qr.r();
    let qtb = q.transpose() * rhs;
    r.solve_upper_triangular(&qtb).ok_or_else(|| {
        OmdError::InvalidConfig("band basis is numerically rank deficient".into())
    })
}

/// Brute-force reference projection through dense normal equations.
///
/// Exists to cross-check `project_band`; only intended for small grids
/// (`n <= 101`) where forming `GᵀG` explicitly is still accurate.
pub fn project_band_oracle(u: &DiscreteSignal, band: BandInterval) -> Result<DiscreteSignal> {
    let basis = band_basis(u.half_len(), band);
    let g = basis.matrix();
    let rhs = DVector::from_column_slice(u.samples());
    let gram = g.transpose() * g;
    let gtb = g.transpose() * &rhs;
    let coeffs = gram
        .lu()
        .solve(&gtb)
        .ok_or_else(|| OmdError::InvalidConfig("normal equations singular".into()))?;
    let proj = g * coeffs;
    Ok(u.with_samples(proj.as_slice().to_vec()))
}
