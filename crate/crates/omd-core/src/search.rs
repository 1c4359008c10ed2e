//! Iterative band-boundary search and signal decomposition.
//!
//! A *mode* is the orthogonal projection of the signal onto a band of
//! whole resolution units whose instantaneous frequency is single-signed
//! wherever the amplitude is trustworthy. The search starts from a seed
//! band (usually the snapped support of a principal spectral lobe) and
//! grows it one adjacent lobe at a time, accepting an extension only if
//!
//! 1. the extension is not blocked by bins already consumed by an
//!    earlier mode,
//! 2. it adds a non-negligible share of the extended band's energy, and
//! 3. the extended projection's frequency keeps the seed's sign.
//!
//! Narrow lobes — at most a couple of resolution units wide — are
//! complete single-component modes already and are never grown; growth
//! is reserved for genuinely wide lobes (short-time or swept components
//! whose energy leaks across many bins).

use crate::error::{OmdError, Result};
use crate::phase::{auto_phase_track, classify_frequency_sign, FreqSign, PhaseTrack};
use crate::projection::{project_band, BandInterval};
use crate::signal::{parity_decompose, DiscreteSignal};
use crate::spectrum::{compute_axis_spectra, detect_lobes, Axis, Lobe};
use crate::trend::{eval_trend, fit_trend, TrendFit};
use std::collections::BTreeSet;

/// Minimum share of the extended band's energy an extension must add.
///
/// Calibrated so that a wide lobe absorbs the sidelobe train of a
/// short-time component while narrowband tones nearby stay untouched.
pub const ENERGY_GAIN_MIN: f64 = 0.00225;

/// Raw lobe widths above this many resolution units mark a lobe as wide
/// (eligible for band growth).
pub const WIDE_LOBE_FACTOR: f64 = 2.5;

/// Lobe edges within this fraction of a bin snap to the nearest bin
/// edge; anything further rounds inward.
pub const SNAP_TOL_BINS: f64 = 0.1;

/// A principal lobe seeds a mode only if its peak reaches this fraction
/// of the largest principal-lobe peak on the same axis.
pub const PEAK_FRACTION: f64 = 0.25;

/// Relative norm below which an axis component (or either parity part)
/// is treated as numerically absent.
pub const AXIS_ZERO_REL: f64 = 1e-12;

/// Which band edge the search tries to grow first in each round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExpansionOrder {
    /// Try the lower edge, then the upper, restarting after any success.
    #[default]
    LowerFirst,
    /// Upper edge first.
    UpperFirst,
    /// Evaluate both edges and keep the extension whose frequency track
    /// stays further from zero (larger minimum |ω| over valid points).
    BestFirst,
}

impl std::fmt::Display for ExpansionOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExpansionOrder::LowerFirst => write!(f, "lower-first"),
            ExpansionOrder::UpperFirst => write!(f, "upper-first"),
            ExpansionOrder::BestFirst => write!(f, "best-first"),
        }
    }
}

/// Tuning knobs for the band search.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Cap on accepted band extensions; `None` means `2l`.
    pub max_expansions: Option<usize>,
    /// ω must clear this bound (rad/s) at every valid point to count as
    /// single-signed. May be negative to tolerate small excursions.
    pub sign_tolerance: f64,
    /// Grid refinement shared by spectra and phase tracks.
    pub oversample: usize,
    pub expansion_order: ExpansionOrder,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            max_expansions: None,
            sign_tolerance: 0.0,
            oversample: 8,
            expansion_order: ExpansionOrder::LowerFirst,
        }
    }
}

/// One extracted mode: a band-limited projection with its phase track.
#[derive(Debug, Clone)]
pub struct Mode {
    pub signal: DiscreteSignal,
    pub band: BandInterval,
    /// Which component the mode was extracted from.
    pub axis: Axis,
    pub freq_sign: FreqSign,
    /// Phase track of the final band's projection.
    pub track: PhaseTrack,
    /// Number of accepted band extensions.
    pub expansions: usize,
}

impl Mode {
    /// Band edges in Hz.
    pub fn band_hz(&self) -> (f64, f64) {
        let eps_hz = self.signal.resolution() / (2.0 * std::f64::consts::PI);
        self.band.edges(eps_hz)
    }
}

/// Per-mode summary row of a full decomposition.
#[derive(Debug, Clone)]
pub struct ModeReport {
    pub band: BandInterval,
    pub band_hz: (f64, f64),
    pub axis: Axis,
    pub freq_sign: FreqSign,
    /// Mode energy as a fraction of the input signal energy.
    pub energy_fraction: f64,
    pub expansions: usize,
}

/// Output of a full decomposition.
#[derive(Debug, Clone)]
pub struct DecompositionResult {
    pub trend: Option<DiscreteSignal>,
    pub trend_fit: Option<TrendFit>,
    pub modes: Vec<Mode>,
    pub residual: DiscreteSignal,
    pub report: Vec<ModeReport>,
}

/// Snaps a frequency interval (rad/s) to whole bins: edges within
/// [`SNAP_TOL_BINS`] of a bin round to it, everything else rounds
/// inward. The result is clamped to `[1, l-1]` and may be inverted for
/// degenerate sub-resolution inputs — callers check.
fn snap_bins(lo: f64, hi: f64, eps: f64, l: usize) -> (usize, usize) {
    let blo = lo / eps;
    let bhi = hi / eps;
    let i = if (blo - blo.round()).abs() <= SNAP_TOL_BINS {
        blo.round() as i64
    } else {
        blo.ceil() as i64
    };
    let m = if (bhi - bhi.round()).abs() <= SNAP_TOL_BINS {
        bhi.round() as i64
    } else {
        bhi.floor() as i64
    };
    (i.max(1) as usize, m.min(l as i64 - 1).max(0) as usize)
}

/// Sign of the track if single-signed; `None` for mixed or trackless.
fn sign_of(track: &PhaseTrack, tol: f64) -> Option<FreqSign> {
    match classify_frequency_sign(track, tol) {
        Ok(FreqSign::Positive) => Some(FreqSign::Positive),
        Ok(FreqSign::Negative) => Some(FreqSign::Negative),
        _ => None,
    }
}

/// Finds the band of the lobe adjacent to the current edge, if its
/// snapped support touches the edge exactly and crosses no consumed bin.
fn adjacent_band(
    lobes_sorted: &[&Lobe],
    consumed: &BTreeSet<usize>,
    eps: f64,
    l: usize,
    lower: bool,
    i: usize,
    m: usize,
) -> Option<(usize, usize)> {
    let scan: Box<dyn Iterator<Item = &&Lobe>> = if lower {
        Box::new(lobes_sorted.iter().rev())
    } else {
        Box::new(lobes_sorted.iter())
    };
    for lb in scan {
        let (li, lm) = snap_bins(lb.lo, lb.hi, eps, l);
        if lower && lm == i && li < i {
            if (li..i).any(|v| consumed.contains(&v)) {
                return None;
            }
            return Some((li, m));
        }
        if !lower && li == m && lm > m {
            if (m + 1..=lm).any(|v| consumed.contains(&v)) {
                return None;
            }
            return Some((i, lm));
        }
    }
    None
}

struct SearchOutcome {
    mode: DiscreteSignal,
    band: BandInterval,
    sign: FreqSign,
    track: PhaseTrack,
    expansions: usize,
}

/// Core search loop. `seed_bins` is inclusive; `wide` overrides the
/// width test when the caller has already decided growth eligibility
/// (e.g. after trimming consumed bins off a lobe).
fn run_search(
    u: &DiscreteSignal,
    seed_bins: (usize, usize),
    lobes: &[Lobe],
    consumed: &BTreeSet<usize>,
    wide: Option<bool>,
    cfg: &SearchConfig,
) -> Result<SearchOutcome> {
    let l = u.half_len();
    let eps = u.resolution();
    let limit = cfg.max_expansions.unwrap_or(2 * l);

    let (mut i, mut m) = seed_bins;
    let mut wide = wide;
    if i == m {
        // Single-bin seed: widen to the containing lobe so every bin
        // inside the same lobe starts from the same band. A bin sitting
        // exactly on a shared edge resolves to the stronger lobe.
        let freq = i as f64 * eps;
        let holder = lobes
            .iter()
            .filter(|lb| lb.lo <= freq && freq <= lb.hi)
            .max_by(|a, b| a.peak_value.abs().total_cmp(&b.peak_value.abs()));
        if let Some(lb) = holder {
            let (wi, wm) = snap_bins(lb.lo, lb.hi, eps, l);
            debug_assert!(wi <= wm);
            i = wi;
            m = wm;
            wide.get_or_insert(lb.width() > WIDE_LOBE_FACTOR * eps);
        }
    }
    let wide = wide.unwrap_or((m as f64 - i as f64) > WIDE_LOBE_FACTOR);

    let band = BandInterval::new(i, m, l)?;
    let mut mode = project_band(u, band)?;
    let (mut track, _) = auto_phase_track(&mode, cfg.oversample)?;
    let sign = match sign_of(&track, cfg.sign_tolerance) {
        Some(s) => s,
        None => {
            return Err(OmdError::SeedNotMode {
                track: Box::new(track),
            })
        }
    };
    let mut energy = mode.energy();
    let mut expansions = 0usize;

    if wide {
        let mut sorted: Vec<&Lobe> = lobes.iter().collect();
        sorted.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        let try_extend = |ci: usize,
                          cm: usize,
                          energy: f64|
         -> Result<Option<(DiscreteSignal, f64, PhaseTrack)>> {
            let cand = BandInterval::new(ci, cm, l)?;
            let mode2 = project_band(u, cand)?;
            let e2 = mode2.energy();
            if e2 - energy < ENERGY_GAIN_MIN * e2 {
                return Ok(None);
            }
            let (track2, _) = match auto_phase_track(&mode2, cfg.oversample) {
                Ok(t) => t,
                Err(OmdError::ZeroSignal) => return Ok(None),
                Err(e) => return Err(e),
            };
            if sign_of(&track2, cfg.sign_tolerance) != Some(sign) {
                return Ok(None);
            }
            Ok(Some((mode2, e2, track2)))
        };

        let sides: [bool; 2] = match cfg.expansion_order {
            ExpansionOrder::UpperFirst => [false, true],
            _ => [true, false],
        };
        loop {
            let mut accepted: Option<(usize, usize, DiscreteSignal, f64, PhaseTrack)> = None;
            if cfg.expansion_order == ExpansionOrder::BestFirst {
                // evaluate both sides, keep the one further from zero frequency
                let mut best_min_omega = f64::NEG_INFINITY;
                for lower in [true, false] {
                    if let Some((ci, cm)) =
                        adjacent_band(&sorted, consumed, eps, l, lower, i, m)
                    {
                        if let Some((mode2, e2, track2)) = try_extend(ci, cm, energy)? {
                            let min_w = track2
                                .valid_indices()
                                .map(|ix| track2.omega[ix].abs())
                                .fold(f64::INFINITY, f64::min);
                            if min_w > best_min_omega {
                                best_min_omega = min_w;
                                accepted = Some((ci, cm, mode2, e2, track2));
                            }
                        }
                    }
                }
            } else {
                for lower in sides {
                    if let Some((ci, cm)) =
                        adjacent_band(&sorted, consumed, eps, l, lower, i, m)
                    {
                        if let Some((mode2, e2, track2)) = try_extend(ci, cm, energy)? {
                            accepted = Some((ci, cm, mode2, e2, track2));
                            break;
                        }
                    }
                }
            }
            match accepted {
                Some((ci, cm, mode2, e2, track2)) => {
                    if expansions >= limit {
                        return Err(OmdError::MaxExpansionsExceeded { limit });
                    }
                    debug_assert!(ci <= i && cm >= m && (ci < i || cm > m));
                    i = ci;
                    m = cm;
                    mode = mode2;
                    energy = e2;
                    track = track2;
                    expansions += 1;
                }
                None => break,
            }
        }
    }

    Ok(SearchOutcome {
        mode,
        band: BandInterval::new(i, m, l)?,
        sign,
        track,
        expansions,
    })
}

/// Searches for the mode containing `seed`, growing the band while the
/// projection stays single-signed.
///
/// Operates on the signal as a whole: phase comes from the projection's
/// own parity pair (or a companion when one parity is absent), and lobes
/// of both axis spectra guide the growth. Errors with `SeedNotMode` —
/// carrying the offending track — when even the seed band's projection
/// has mixed-sign frequency.
pub fn search_mode(u: &DiscreteSignal, seed: BandInterval, cfg: &SearchConfig) -> Result<Mode> {
    let spectrum = compute_axis_spectra(u, cfg.oversample)?;
    let mut lobes = detect_lobes(&spectrum, Axis::Real);
    lobes.extend(detect_lobes(&spectrum, Axis::Imaginary));
    let out = run_search(u, (seed.lo(), seed.hi()), &lobes, &BTreeSet::new(), None, cfg)?;
    Ok(Mode {
        signal: out.mode,
        band: out.band,
        axis: Axis::Full,
        freq_sign: out.sign,
        track: out.track,
        expansions: out.expansions,
    })
}

/// Principal-lobe seeds for one axis, strongest first.
///
/// Candidates are non-DC lobes of principal width; the peak threshold is
/// referenced to the candidates only, so narrow ripple or a decaying
/// trend comb cannot set the bar.
fn seed_lobes(lobes: &[Lobe]) -> Vec<&Lobe> {
    let cands: Vec<&Lobe> = lobes
        .iter()
        .filter(|lb| lb.lo > 1e-12 && lb.is_principal)
        .collect();
    let max_peak = cands
        .iter()
        .map(|lb| lb.peak_value.abs())
        .fold(0.0, f64::max);
    let mut picked: Vec<&Lobe> = cands
        .into_iter()
        .filter(|lb| lb.peak_value.abs() >= PEAK_FRACTION * max_peak)
        .collect();
    picked.sort_by(|a, b| b.peak_value.abs().total_cmp(&a.peak_value.abs()));
    picked
}

/// Splits `lo..=hi` into maximal runs of unconsumed bins and picks the
/// run holding the lobe peak (±half a bin), falling back to the longest.
fn free_run(
    lo: usize,
    hi: usize,
    consumed: &BTreeSet<usize>,
    peak_bin: f64,
) -> Option<(usize, usize)> {
    let mut runs: Vec<(usize, usize)> = Vec::new();
    let mut cur: Option<(usize, usize)> = None;
    for v in lo..=hi {
        if consumed.contains(&v) {
            if let Some(r) = cur.take() {
                runs.push(r);
            }
        } else {
            cur = Some(match cur {
                Some((s, _)) => (s, v),
                None => (v, v),
            });
        }
    }
    if let Some(r) = cur {
        runs.push(r);
    }
    if runs.is_empty() {
        return None;
    }
    runs.iter()
        .find(|(s, e)| *s as f64 - 0.5 <= peak_bin && peak_bin <= *e as f64 + 0.5)
        .or_else(|| runs.iter().max_by_key(|(s, e)| (e - s, std::cmp::Reverse(*s))))
        .copied()
}

fn decompose_axis_impl(
    component: &DiscreteSignal,
    axis: Axis,
    cfg: &SearchConfig,
    ref_norm: f64,
) -> Result<(Vec<Mode>, DiscreteSignal)> {
    if axis == Axis::Full {
        return Err(OmdError::InvalidConfig(
            "decompose_axis takes the real or imaginary axis".into(),
        ));
    }
    let l = component.half_len();
    let eps = component.resolution();
    if component.norm() <= AXIS_ZERO_REL * ref_norm {
        return Ok((Vec::new(), component.clone()));
    }
    let spectrum = compute_axis_spectra(component, cfg.oversample)?;
    let lobes = detect_lobes(&spectrum, axis);
    if lobes.is_empty() {
        return Ok((Vec::new(), component.clone()));
    }

    let mut work = component.clone();
    let mut modes: Vec<Mode> = Vec::new();
    let mut consumed: BTreeSet<usize> = BTreeSet::new();

    for lb in seed_lobes(&lobes) {
        let (i0, m0) = snap_bins(lb.lo, lb.hi, eps, l);
        if i0 > m0 {
            continue;
        }
        // Bins claimed by earlier (stronger) modes are off limits; seed
        // from what is left of this lobe, and a trimmed seed never grows.
        let peak_bin = lb.peak_freq / eps;
        let Some((s, e)) = free_run(i0, m0, &consumed, peak_bin) else {
            continue;
        };
        let trimmed = s != i0 || e != m0;
        let wide = lb.width() > WIDE_LOBE_FACTOR * eps && !trimmed;
        let outcome = match run_search(&work, (s, e), &lobes, &consumed, Some(wide), cfg) {
            Ok(o) => o,
            Err(OmdError::SeedNotMode { .. }) => continue,
            Err(e) => return Err(e),
        };
        consumed.extend(outcome.band.lo()..=outcome.band.hi());
        work = work.subtract(&outcome.mode);
        modes.push(Mode {
            signal: outcome.mode,
            band: outcome.band,
            axis,
            freq_sign: outcome.sign,
            track: outcome.track,
            expansions: outcome.expansions,
        });
    }
    Ok((modes, work))
}

/// Extracts every mode of one axis component, strongest lobe first.
///
/// `component` must be pure even (real axis) or pure odd (imaginary
/// axis); the companion construction supplies the missing parity for
/// phase computation. A numerically zero component yields no modes.
pub fn decompose_axis(
    component: &DiscreteSignal,
    axis: Axis,
    cfg: &SearchConfig,
) -> Result<Vec<Mode>> {
    let (modes, _) = decompose_axis_impl(component, axis, cfg, component.norm())?;
    Ok(modes)
}

/// Full pipeline: per-axis modes, then an optional low-frequency trend
/// fitted to what the modes leave behind.
///
/// `trend_cutoff` is in rad/s. The residual satisfies
/// `trend + Σ modes + residual == u` exactly by construction.
pub fn decompose_full(
    u: &DiscreteSignal,
    trend_cutoff: Option<f64>,
    cfg: &SearchConfig,
) -> Result<DecompositionResult> {
    let parts = parity_decompose(u);
    let ref_norm = u.norm();
    let (modes_e, _) = decompose_axis_impl(&parts.even, Axis::Real, cfg, ref_norm)?;
    let (modes_o, _) = decompose_axis_impl(&parts.odd, Axis::Imaginary, cfg, ref_norm)?;
    let mut modes = modes_e;
    modes.extend(modes_o);

    let mut remainder = u.clone();
    for m in &modes {
        remainder = remainder.subtract(&m.signal);
    }

    let (trend, trend_fit) = match trend_cutoff {
        Some(cutoff) => {
            let fit = fit_trend(&remainder, cutoff)?;
            let vals = remainder
                .times()
                .into_iter()
                .map(|t| eval_trend(&fit, t))
                .collect::<Result<Vec<f64>>>()?;
            (Some(remainder.with_samples(vals)), Some(fit))
        }
        None => (None, None),
    };
    let residual = match &trend {
        Some(tr) => remainder.subtract(tr),
        None => remainder,
    };

    let total_energy = u.energy();
    let report = modes
        .iter()
        .map(|m| ModeReport {
            band: m.band,
            band_hz: m.band_hz(),
            axis: m.axis,
            freq_sign: m.freq_sign,
            energy_fraction: if total_energy > 0.0 {
                m.signal.energy() / total_energy
            } else {
                0.0
            },
            expansions: m.expansions,
        })
        .collect();

    Ok(DecompositionResult {
        trend,
        trend_fit,
        modes,
        residual,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn make(l: usize, dt: f64, f: impl Fn(f64) -> f64) -> DiscreteSignal {
        DiscreteSignal::new(
            (-(l as i64)..=l as i64).map(|k| f(k as f64 * dt)).collect(),
            dt,
        )
        .unwrap()
    }

    fn corr(a: &DiscreteSignal, b: &[f64]) -> f64 {
        let num: f64 = a.samples().iter().zip(b).map(|(x, y)| x * y).sum();
        let na = a.norm();
        let nb: f64 = b.iter().map(|v| v * v).sum::<f64>().sqrt();
        if na > 0.0 && nb > 0.0 {
            num / (na * nb)
        } else {
            0.0
        }
    }

    #[test]
    fn snap_rounds_near_edges_and_inward_otherwise() {
        let eps = 1.0;
        assert_eq!(snap_bins(3.95, 8.05, eps, 100), (4, 8)); // within 0.1 → round
        assert_eq!(snap_bins(3.5, 8.5, eps, 100), (4, 8)); // inward
        assert_eq!(snap_bins(0.2, 99.9, eps, 100), (1, 99)); // clamped
    }

    #[test]
    fn pure_tone_is_one_mode_with_tiny_residual() {
        let l = 100;
        let u = make(l, 0.01, |t| (2.0 * PI * 5.0 * t).sin());
        let seed = BandInterval::new(10, 10, l).unwrap();
        let mode = search_mode(&u, seed, &SearchConfig::default()).unwrap();
        assert!(mode.band.contains(10));
        assert_eq!(mode.freq_sign, FreqSign::Positive);
        assert_eq!(mode.expansions, 0);
        let resid = u.subtract(&mode.signal).norm();
        assert!(resid <= 1e-9 * u.norm(), "residual {resid}");
    }

    #[test]
    fn four_tone_cluster_is_one_mode_from_any_inside_bin() {
        // two sines + two cosines packed into 2.5–3 Hz: one mode
        let l = 100;
        let u = make(l, 0.01, |t| {
            1.3 * (6.0 * PI * t).sin()
                + (5.0 * PI * t).sin()
                + 1.5 * (6.0 * PI * t).cos()
                + (5.0 * PI * t).cos()
        });
        let cfg = SearchConfig::default();
        let seed = BandInterval::new(5, 6, l).unwrap();
        let mode = search_mode(&u, seed, &cfg).unwrap();
        let resid = u.subtract(&mode.signal).norm() / u.norm();
        assert!(resid <= 1e-12, "residual {resid}");

        // single-bin seeds widen to the containing lobe; same band for all
        let mut bands = Vec::new();
        for bin in 4..=7 {
            let m = search_mode(&u, BandInterval::new(bin, bin, l).unwrap(), &cfg).unwrap();
            assert!(u.subtract(&m.signal).norm() / u.norm() <= 1e-12);
            bands.push((m.band.lo(), m.band.hi()));
        }
        assert!(bands.windows(2).all(|w| w[0] == w[1]), "bands {bands:?}");
    }

    #[test]
    fn neighboring_tone_of_other_parity_is_refused() {
        // cos 2 Hz + strong sin 2.5 Hz: their joint projection has
        // mixed-sign frequency, so the full-signal seed is not a mode
        let l = 100;
        let u = make(l, 0.01, |t| {
            1.3 * (5.0 * PI * t).sin() + (7.0 * PI * t).sin() + (4.0 * PI * t).cos()
                + (6.0 * PI * t).cos()
        });
        let err = search_mode(
            &u,
            BandInterval::new(4, 8, l).unwrap(),
            &SearchConfig::default(),
        )
        .unwrap_err();
        match err {
            OmdError::SeedNotMode { track } => assert!(track.valid_count() > 0),
            other => panic!("expected SeedNotMode, got {other:?}"),
        }
    }

    #[test]
    fn axis_decomposition_separates_two_tones() {
        let l = 100;
        let dt = 0.01;
        let ue = make(l, dt, |t| (4.0 * PI * t).cos() + (6.0 * PI * t).cos());
        let modes = decompose_axis(&ue, Axis::Real, &SearchConfig::default()).unwrap();
        assert_eq!(modes.len(), 2);
        let t: Vec<f64> = ue.times();
        for m in &modes {
            assert_eq!(m.axis, Axis::Real);
            assert_eq!(m.freq_sign, FreqSign::Positive);
            let (f2, f3): (Vec<f64>, Vec<f64>) = (
                t.iter().map(|&x| (4.0 * PI * x).cos()).collect(),
                t.iter().map(|&x| (6.0 * PI * x).cos()).collect(),
            );
            let c = corr(&m.signal, &f2).abs().max(corr(&m.signal, &f3).abs());
            assert!(c >= 0.9999, "mode corr {c}");
        }
        // bands pairwise disjoint
        let (a, b) = (modes[0].band, modes[1].band);
        assert!(a.hi() < b.lo() || b.hi() < a.lo());
    }

    #[test]
    fn short_time_burst_grows_a_wide_band() {
        // windowed tone: energy leaks across many bins; the search must
        // absorb the sidelobe train on both sides of the 31 Hz lobe
        let l = 100;
        let u = make(l, 0.01, |t| {
            if t.abs() <= 0.5 {
                1.5 * (62.0 * PI * t).sin()
            } else {
                0.0
            }
        });
        let modes = decompose_axis(&u, Axis::Imaginary, &SearchConfig::default()).unwrap();
        assert_eq!(modes.len(), 1);
        let m = &modes[0];
        assert_eq!((m.band.lo(), m.band.hi()), (52, 72));
        assert_eq!(m.expansions, 8);
        assert_eq!(m.freq_sign, FreqSign::Positive);
        let resid = u.subtract(&m.signal).norm() / u.norm();
        assert!(resid < 0.2, "residual {resid}");
    }

    #[test]
    fn expansion_cap_is_enforced() {
        let l = 100;
        let u = make(l, 0.01, |t| {
            if t.abs() <= 0.5 {
                1.5 * (62.0 * PI * t).sin()
            } else {
                0.0
            }
        });
        let cfg = SearchConfig {
            max_expansions: Some(0),
            ..Default::default()
        };
        let err = decompose_axis(&u, Axis::Imaginary, &cfg).unwrap_err();
        assert!(matches!(err, OmdError::MaxExpansionsExceeded { limit: 0 }));
    }

    #[test]
    fn upper_first_matches_lower_first_on_symmetric_burst() {
        let l = 100;
        let u = make(l, 0.01, |t| {
            if t.abs() <= 0.5 {
                1.5 * (62.0 * PI * t).sin()
            } else {
                0.0
            }
        });
        for order in [ExpansionOrder::UpperFirst, ExpansionOrder::BestFirst] {
            let cfg = SearchConfig {
                expansion_order: order,
                ..Default::default()
            };
            let modes = decompose_axis(&u, Axis::Imaginary, &cfg).unwrap();
            assert_eq!(modes.len(), 1, "{order}");
            assert_eq!((modes[0].band.lo(), modes[0].band.hi()), (52, 72), "{order}");
        }
    }

    #[test]
    fn zero_component_yields_no_modes() {
        let z = DiscreteSignal::new(vec![0.0; 201], 0.01).unwrap();
        let modes = decompose_axis(&z, Axis::Real, &SearchConfig::default()).unwrap();
        assert!(modes.is_empty());
    }

    #[test]
    fn full_decomposition_reconstructs_exactly() {
        let l = 100;
        let u = make(l, 0.01, |t| {
            1.3 * (5.0 * PI * t).sin() + (7.0 * PI * t).sin() + (4.0 * PI * t).cos()
                + (6.0 * PI * t).cos()
        });
        let res = decompose_full(&u, None, &SearchConfig::default()).unwrap();
        assert_eq!(res.modes.len(), 4);
        assert!(res.trend.is_none());
        let mut sum = res.residual.clone();
        for m in &res.modes {
            sum = sum.add(&m.signal);
        }
        assert!(sum.subtract(&u).norm() <= 1e-9 * u.norm());
        // report mirrors the modes
        assert_eq!(res.report.len(), 4);
        let efrac: f64 = res.report.iter().map(|r| r.energy_fraction).sum();
        assert!(efrac > 0.99 && efrac < 1.01, "energy fractions {efrac}");
        // real-axis bands disjoint, imaginary-axis bands disjoint
        for axis in [Axis::Real, Axis::Imaginary] {
            let bands: Vec<_> = res
                .modes
                .iter()
                .filter(|m| m.axis == axis)
                .map(|m| m.band)
                .collect();
            for a in 0..bands.len() {
                for b in a + 1..bands.len() {
                    assert!(bands[a].hi() < bands[b].lo() || bands[b].hi() < bands[a].lo());
                }
            }
        }
    }

    #[test]
    fn pure_tone_full_pipeline_single_mode() {
        let l = 100;
        let u = make(l, 0.01, |t| (2.0 * PI * 9.0 * t).sin());
        let res = decompose_full(&u, None, &SearchConfig::default()).unwrap();
        assert_eq!(res.modes.len(), 1);
        assert!(res.trend.is_none());
        assert!(res.residual.norm() < 1e-9 * u.norm());
    }

    #[test]
    fn linear_trend_plus_tones_recovers_all_parts() {
        let l = 100;
        let dt = 0.01;
        let u = make(l, dt, |t| {
            6.0 * t + (8.0 * PI * t).cos() + 0.5 * (40.0 * PI * t).cos()
        });
        let cutoff = 2.0 * PI * 2.0; // 2 Hz
        let res = decompose_full(&u, Some(cutoff), &SearchConfig::default()).unwrap();
        assert_eq!(res.modes.len(), 2);
        let trend = res.trend.as_ref().unwrap();
        let times = u.times();
        let rms: f64 = (trend
            .samples()
            .iter()
            .zip(&times)
            .map(|(v, t)| (v - 6.0 * t).powi(2))
            .sum::<f64>()
            / times.len() as f64)
            .sqrt();
        assert!(rms <= 0.1, "trend rms {rms}");
        // modes match the two cosines
        for m in &res.modes {
            assert_eq!(m.axis, Axis::Real);
            let f4: Vec<f64> = times.iter().map(|&t| (8.0 * PI * t).cos()).collect();
            let f20: Vec<f64> = times.iter().map(|&t| (40.0 * PI * t).cos()).collect();
            let c = corr(&m.signal, &f4).abs().max(corr(&m.signal, &f20).abs());
            assert!(c >= 0.999, "corr {c}");
        }
        // reconstruction with trend included
        let mut sum = res.residual.clone();
        for m in &res.modes {
            sum = sum.add(&m.signal);
        }
        sum = sum.add(res.trend.as_ref().unwrap());
        assert!(sum.subtract(&u).norm() <= 1e-9 * u.norm());
    }

    #[test]
    fn zero_signal_decomposes_to_nothing() {
        let z = DiscreteSignal::new(vec![0.0; 201], 0.01).unwrap();
        let res = decompose_full(&z, Some(2.0 * PI), &SearchConfig::default()).unwrap();
        assert!(res.modes.is_empty());
        assert_eq!(res.trend.as_ref().unwrap().norm(), 0.0);
        assert_eq!(res.residual.norm(), 0.0);
    }

    #[test]
    fn determinism_identical_runs_identical_modes() {
        let l = 100;
        let u = make(l, 0.01, |t| {
            if t.abs() <= 0.5 {
                1.5 * (62.0 * PI * t).sin()
            } else {
                0.0
            }
        });
        let a = decompose_axis(&u, Axis::Imaginary, &SearchConfig::default()).unwrap();
        let b = decompose_axis(&u, Axis::Imaginary, &SearchConfig::default()).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.band, y.band);
            assert_eq!(x.signal.samples(), y.signal.samples());
        }
    }
}
