//! Instantaneous amplitude, phase, and frequency of a parity pair.
//!
//! A pair `(u_even, u_odd)` plays the role of the real and imaginary
//! parts of an analytic signal: with `Ψ_e`, `Ψ_o` their band-limited
//! interpolants,
//!
//! ```text
//! A(t)  = hypot(Ψ_e, Ψ_o)
//! φ(t)  = atan2(Ψ_o, Ψ_e)          (unwrapped along the grid)
//! ω(t)  = (Ψ_o′ Ψ_e − Ψ_e′ Ψ_o) / A²
//! ```
//!
//! ω is evaluated from the derivative quotient directly, never by
//! differencing φ, so it stays finite and smooth through rapid phase
//! motion as long as the amplitude is bounded away from zero. Points
//! where `A` drops below a fixed fraction of its maximum carry no
//! trustworthy phase and are masked out via `valid`.

use crate::error::{OmdError, Result};
use crate::signal::{DiscreteSignal, ParityPair};

/// Fraction of the peak amplitude below which phase and frequency are
/// treated as unreliable.
pub const AMP_FLOOR_REL: f64 = 0.05;

/// Relative norm below which one parity component is considered absent
/// and the companion construction takes over.
pub const PARITY_ZERO_REL: f64 = 1e-12;

/// Sampled instantaneous quantities along a refined time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseTrack {
    /// Evaluation times, symmetric about zero.
    pub t: Vec<f64>,
    /// Instantaneous amplitude A(t) ≥ 0.
    pub amplitude: Vec<f64>,
    /// Unwrapped phase φ(t) in radians.
    pub phase: Vec<f64>,
    /// Instantaneous angular frequency ω(t) in rad/s.
    pub omega: Vec<f64>,
    /// Whether the amplitude at this point clears the floor.
    pub valid: Vec<bool>,
    /// The absolute amplitude floor that was applied.
    pub amp_floor: f64,
}

impl PhaseTrack {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// Indices of valid points.
    pub fn valid_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.valid
            .iter()
            .enumerate()
            .filter_map(|(i, &v)| v.then_some(i))
    }

    pub fn valid_count(&self) -> usize {
        self.valid.iter().filter(|&&v| v).count()
    }
}

/// Sign of the instantaneous frequency over the valid points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreqSign {
    /// ω(t) > tol at every valid point.
    Positive,
    /// ω(t) < -tol at every valid point.
    Negative,
    /// Neither bound holds everywhere.
    Mixed,
}

impl std::fmt::Display for FreqSign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FreqSign::Positive => write!(f, "positive"),
            FreqSign::Negative => write!(f, "negative"),
            FreqSign::Mixed => write!(f, "mixed"),
        }
    }
}

/// Which construction produced a set of companion coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompanionKind {
    /// Even source: companion is the least-squares sine counterpart.
    EvenSource,
    /// Odd source: companion is the cosine counterpart.
    OddSource,
}

impl std::fmt::Display for CompanionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CompanionKind::EvenSource => write!(f, "even source"),
            CompanionKind::OddSource => write!(f, "odd source"),
        }
    }
}

/// Coefficients of a companion expansion on the sampled trig family.
///
/// `coeffs[v]` multiplies frequency `vπ/(lΔ)`; slots outside the family
/// actually fitted are zero (`v = 0` for an even source's sine companion,
/// `v = 0` and `v = l` for an odd source's cosine companion).
#[derive(Debug, Clone, PartialEq)]
pub struct CompanionCoefficients {
    pub kind: CompanionKind,
    pub coeffs: Vec<f64>,
}

/// Computes amplitude/phase/frequency for a parity pair on a grid refined
/// `oversample` times relative to the sampling step.
///
/// Requires `oversample >= 4`; errors if both components are identically
/// zero.
pub fn compute_phase_track(pair: &ParityPair, oversample: usize) -> Result<PhaseTrack> {
    if oversample < 4 {
        return Err(OmdError::InvalidConfig(format!(
            "phase oversample must be at least 4, got {oversample}"
        )));
    }
    let e = &pair.even;
    let o = &pair.odd;
    if e.norm() == 0.0 && o.norm() == 0.0 {
        return Err(OmdError::ZeroSignal);
    }
    let l = e.half_len() as i64;
    let dt = e.dt();
    let os = oversample as i64;
    let m = l * os;

    let count = (2 * m + 1) as usize;
    let mut t = Vec::with_capacity(count);
    let mut amplitude = Vec::with_capacity(count);
    let mut phase_wrapped = Vec::with_capacity(count);
    let mut omega = Vec::with_capacity(count);

    for j in -m..=m {
        let tj = j as f64 * dt / os as f64;
        let ve = e.interpolant_eval(tj);
        let vo = o.interpolant_eval(tj);
        let de = e.interpolant_derivative_eval(tj);
        let d_o = o.interpolant_derivative_eval(tj);
        let a2 = ve * ve + vo * vo;
        t.push(tj);
        amplitude.push(a2.sqrt());
        phase_wrapped.push(vo.atan2(ve));
        omega.push(if a2 > 0.0 { (d_o * ve - de * vo) / a2 } else { 0.0 });
    }

    let phase = unwrap_phase(&phase_wrapped);
    let max_a = amplitude.iter().cloned().fold(0.0, f64::max);
    let amp_floor = AMP_FLOOR_REL * max_a;
    let valid = amplitude.iter().map(|&a| a >= amp_floor).collect();

    Ok(PhaseTrack {
        t,
        amplitude,
        phase,
        omega,
        valid,
        amp_floor,
    })
}

/// Standard phase unwrap: removes 2π jumps between consecutive samples.
fn unwrap_phase(wrapped: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(wrapped.len());
    let mut offset = 0.0;
    let mut prev = None;
    for &w in wrapped {
        if let Some(p) = prev {
            let mut d = w + offset - p;
            while d > std::f64::consts::PI {
                offset -= 2.0 * std::f64::consts::PI;
                d -= 2.0 * std::f64::consts::PI;
            }
            while d < -std::f64::consts::PI {
                offset += 2.0 * std::f64::consts::PI;
                d += 2.0 * std::f64::consts::PI;
            }
        }
        let v = w + offset;
        out.push(v);
        prev = Some(v);
    }
    out
}

/// Builds the odd companion of an (essentially) even signal.
///
/// The source is expanded on sampled cosines `cos(vπk/l)`, `v = 0..=l`,
/// whose Gram matrix is `l·I + ssᵀ` with `s_v = (−1)^v`; the rank-one
/// update inverts in closed form, so the fit is exact arithmetic up to
/// roundoff. The companion replaces each cosine with the sine of the
/// same frequency.
pub fn companion_even_source(u: &DiscreteSignal) -> Result<(DiscreteSignal, CompanionCoefficients)> {
    let parts = crate::signal::parity_decompose(u);
    let en = parts.even.norm();
    let on = parts.odd.norm();
    if on > PARITY_ZERO_REL * en {
        return Err(OmdError::NotPureParity {
            expected: "even",
            ratio: if en > 0.0 { on / en } else { f64::INFINITY },
        });
    }
    let e = &parts.even;
    let l = e.half_len();
    let n = (2 * l + 1) as f64;
    let lf = l as f64;

    // y_v = Σ_k u_e(k) cos(vπk/l), sum over all k = -l..=l
    let mut y = vec![0.0; l + 1];
    for (v, yv) in y.iter_mut().enumerate() {
        let mut acc = 0.0;
        for k in -(l as i64)..=l as i64 {
            let x = v as f64 * std::f64::consts::PI * k as f64 / lf;
            acc += e.sample(k) * x.cos();
        }
        *yv = acc;
    }

    // Sherman–Morrison: (l·I + ssᵀ)⁻¹ y = y/l − s (sᵀy) / (l·n)
    let sty: f64 = y
        .iter()
        .enumerate()
        .map(|(v, &yv)| if v % 2 == 0 { yv } else { -yv })
        .sum();
    let mut c = vec![0.0; l + 1];
    for (v, cv) in c.iter_mut().enumerate() {
        let sv = if v % 2 == 0 { 1.0 } else { -1.0 };
        *cv = y[v] / lf - sv * sty / (lf * n);
    }

    // companion samples: Σ_{v>=1} c_v sin(vπk/l)
    let mut comp = vec![0.0; 2 * l + 1];
    for (j, s) in comp.iter_mut().enumerate() {
        let k = j as i64 - l as i64;
        let mut acc = 0.0;
        for (v, &cv) in c.iter().enumerate().skip(1) {
            let x = v as f64 * std::f64::consts::PI * k as f64 / lf;
            acc += cv * x.sin();
        }
        *s = acc;
    }

    Ok((
        e.with_samples(comp),
        CompanionCoefficients {
            kind: CompanionKind::EvenSource,
            coeffs: c,
        },
    ))
}

/// Builds the even companion of an (essentially) odd signal.
///
/// Sampled sines `sin(vπk/l)`, `v = 1..=l-1`, are exactly orthogonal
/// with squared norm `l`, so the expansion is a plain scaled inner
/// product. The companion replaces each sine with the cosine of the
/// same frequency.
pub fn companion_odd_source(u: &DiscreteSignal) -> Result<(DiscreteSignal, CompanionCoefficients)> {
    let parts = crate::signal::parity_decompose(u);
    let en = parts.even.norm();
    let on = parts.odd.norm();
    if en > PARITY_ZERO_REL * on {
        return Err(OmdError::NotPureParity {
            expected: "odd",
            ratio: if on > 0.0 { en / on } else { f64::INFINITY },
        });
    }
    let o = &parts.odd;
    let l = o.half_len();
    let lf = l as f64;

    let mut c = vec![0.0; l + 1];
    for (v, cv) in c.iter_mut().enumerate().take(l).skip(1) {
        let mut acc = 0.0;
        for k in -(l as i64)..=l as i64 {
            let x = v as f64 * std::f64::consts::PI * k as f64 / lf;
            acc += o.sample(k) * x.sin();
        }
        *cv = acc / lf;
    }

    let mut comp = vec![0.0; 2 * l + 1];
    for (j, s) in comp.iter_mut().enumerate() {
        let k = j as i64 - l as i64;
        let mut acc = 0.0;
        for (v, &cv) in c.iter().enumerate().take(l).skip(1) {
            let x = v as f64 * std::f64::consts::PI * k as f64 / lf;
            acc += cv * x.cos();
        }
        *s = acc;
    }

    Ok((
        o.with_samples(comp),
        CompanionCoefficients {
            kind: CompanionKind::OddSource,
            coeffs: c,
        },
    ))
}

/// Phase track of a general signal, dispatching on parity content.
///
/// If one parity component is negligible (relative norm below
/// [`PARITY_ZERO_REL`]) the missing quadrature is synthesized by the
/// companion construction; otherwise the signal's own parity parts form
/// the pair. Returned alongside the track are the companion coefficients
/// when a companion was built.
pub fn auto_phase_track(
    u: &DiscreteSignal,
    oversample: usize,
) -> Result<(PhaseTrack, Option<CompanionCoefficients>)> {
    let parts = crate::signal::parity_decompose(u);
    let en = parts.even.norm();
    let on = parts.odd.norm();
    if en == 0.0 && on == 0.0 {
        return Err(OmdError::ZeroSignal);
    }
    if on <= PARITY_ZERO_REL * en {
        let (comp, coeffs) = companion_even_source(u)?;
        let pair = ParityPair {
            even: parts.even,
            odd: comp,
        };
        let track = compute_phase_track(&pair, oversample)?;
        Ok((track, Some(coeffs)))
    } else if en <= PARITY_ZERO_REL * on {
        let (comp, coeffs) = companion_odd_source(u)?;
        let pair = ParityPair {
            even: comp,
            odd: parts.odd,
        };
        let track = compute_phase_track(&pair, oversample)?;
        Ok((track, Some(coeffs)))
    } else {
        let track = compute_phase_track(&parts, oversample)?;
        Ok((track, None))
    }
}

/// Classifies the sign of ω over the valid points of a track.
///
/// `tol` may be negative, which loosens rather than tightens the bound.
/// Errors if the track has no valid points at all.
pub fn classify_frequency_sign(track: &PhaseTrack, tol: f64) -> Result<FreqSign> {
    let mut any = false;
    let mut all_pos = true;
    let mut all_neg = true;
    for i in track.valid_indices() {
        any = true;
        if track.omega[i] <= tol {
            all_pos = false;
        }
        if track.omega[i] >= -tol {
            all_neg = false;
        }
    }
    if !any {
        return Err(OmdError::NoValidPoints);
    }
    Ok(if all_pos {
        FreqSign::Positive
    } else if all_neg {
        FreqSign::Negative
    } else {
        FreqSign::Mixed
    })
}
