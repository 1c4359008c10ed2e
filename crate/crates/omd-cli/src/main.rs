//! `omd`: generate example signals, inspect axis spectra and phase tracks,
//! project bands, search modes, fit trends, and run full decompositions on
//! uniformly sampled odd-length signal files.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use omd_cli::io::{self, SignalFile};
use omd_cli::manifest::{ConfigEcho, Manifest, ModeRecord, TrendRecord};
use omd_cli::plot::{self, Series};
use omd_cli::{hz_to_rad, rad_to_hz, CliError, Result};
use omd_core::{
    auto_phase_track, classify_frequency_sign, compute_axis_spectra, decompose_full,
    example_signal, fit_trend, project_band, search_mode, BandInterval, DiscreteSignal,
    ExpansionOrder, Mode, SearchConfig, TrendFit,
};

/// `LO,HI` pair in Hz.
#[derive(Debug, Clone, Copy)]
struct HzPair(f64, f64);

impl FromStr for HzPair {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| format!("expected LO,HI in Hz, got {s:?}"))?;
        let lo: f64 = a.trim().parse().map_err(|_| format!("bad frequency {a:?}"))?;
        let hi: f64 = b.trim().parse().map_err(|_| format!("bad frequency {b:?}"))?;
        if !lo.is_finite() || !hi.is_finite() {
            return Err("band edges must be finite".into());
        }
        Ok(HzPair(lo, hi))
    }
}

// variants mirror the flag values lower-first/upper-first/best-first
#[allow(clippy::enum_variant_names)]
#[derive(Debug, Clone, Copy, ValueEnum)]
enum OrderArg {
    LowerFirst,
    UpperFirst,
    BestFirst,
}

impl From<OrderArg> for ExpansionOrder {
    fn from(o: OrderArg) -> ExpansionOrder {
        match o {
            OrderArg::LowerFirst => ExpansionOrder::LowerFirst,
            OrderArg::UpperFirst => ExpansionOrder::UpperFirst,
            OrderArg::BestFirst => ExpansionOrder::BestFirst,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "omd",
    version,
    about = "Mode decomposition toolkit for finite, odd-length, uniformly sampled real signals"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args, Debug, Clone)]
struct SearchFlags {
    /// Spectrum/track grid refinement (points per frequency bin).
    #[arg(long, default_value_t = 8)]
    oversample: usize,
    /// Frequency-sign tolerance in rad/s; negative values tolerate small
    /// excursions past zero.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    sign_tol: f64,
    /// Which band edge to try first when growing a mode.
    #[arg(long, value_enum, default_value_t = OrderArg::LowerFirst)]
    expansion_order: OrderArg,
    /// Cap on accepted band extensions (default: twice the half-length).
    #[arg(long)]
    max_expansions: Option<usize>,
}

impl SearchFlags {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            max_expansions: self.max_expansions,
            sign_tolerance: self.sign_tol,
            oversample: self.oversample,
            expansion_order: self.expansion_order.into(),
        }
    }

    fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            oversample: self.oversample,
            sign_tol: self.sign_tol,
            expansion_order: ExpansionOrder::from(self.expansion_order).to_string(),
            max_expansions: self.max_expansions,
            ..Default::default()
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Write one of the built-in example signals (ids 0-10) as a CSV file.
    Gen {
        /// Example id: 0 seeded random, 1 cubic chirp, 2-6 tone mixtures,
        /// 7-9 trend mixtures, 10 sawtooth plus tone.
        id: usize,
        #[arg(long)]
        out: PathBuf,
        /// Label header to embed (default `example-<id>`).
        #[arg(long)]
        label: Option<String>,
    },
    /// Real- and imaginary-axis spectra on the refined frequency grid.
    Spectra {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 8)]
        oversample: usize,
        /// Also write an SVG chart of both axis curves.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Amplitude/phase/frequency track of the signal's parity pair.
    Phase {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 8)]
        oversample: usize,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        sign_tol: f64,
        /// Also write an SVG chart of the frequency track.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Orthogonal projection onto one frequency band.
    Project {
        input: PathBuf,
        /// Band edges in Hz, `LO,HI`; snapped to the signal's bin grid.
        #[arg(long)]
        band: HzPair,
        #[arg(long)]
        out: PathBuf,
        /// Also write an SVG overlay of signal and projection.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Grow one mode from a seed band and validate its frequency sign.
    Search {
        input: PathBuf,
        /// Seed band in Hz, `LO,HI`; snapped to the signal's bin grid.
        #[arg(long)]
        seed: HzPair,
        #[arg(long)]
        out_dir: PathBuf,
        #[command(flatten)]
        flags: SearchFlags,
        /// Also write an SVG overlay of signal and mode.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Fit the low-frequency trend below a cutoff.
    Trend {
        input: PathBuf,
        /// Trend cutoff in Hz.
        #[arg(long)]
        cutoff: f64,
        #[arg(long)]
        out_dir: PathBuf,
        /// Also write an SVG overlay of signal and trend.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Full decomposition: per-axis modes, optional trend, residual.
    Decompose {
        input: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        /// If set, fit a trend below this cutoff (Hz) after mode extraction.
        #[arg(long)]
        trend_cutoff: Option<f64>,
        #[command(flatten)]
        flags: SearchFlags,
        /// Also write an SVG overlay of signal, modes, and trend.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli.cmd) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

fn run(cmd: Cmd) -> Result<()> {
    match cmd {
        Cmd::Gen { id, out, label } => cmd_gen(id, &out, label.as_deref()),
        Cmd::Spectra { input, out, oversample, plot } => {
            cmd_spectra(&input, &out, oversample, plot.as_deref())
        }
        Cmd::Phase { input, out, oversample, sign_tol, plot } => {
            cmd_phase(&input, &out, oversample, sign_tol, plot.as_deref())
        }
        Cmd::Project { input, band, out, plot } => cmd_project(&input, band, &out, plot.as_deref()),
        Cmd::Search { input, seed, out_dir, flags, plot } => {
            cmd_search(&input, seed, &out_dir, &flags, plot.as_deref())
        }
        Cmd::Trend { input, cutoff, out_dir, plot } => {
            cmd_trend(&input, cutoff, &out_dir, plot.as_deref())
        }
        Cmd::Decompose { input, out_dir, trend_cutoff, flags, plot } => {
            cmd_decompose(&input, &out_dir, trend_cutoff, &flags, plot.as_deref())
        }
    }
}

fn read_input(path: &Path) -> Result<SignalFile> {
    io::read_signal(path)
}

/// One frequency bin in Hz: the band-edge grid of an n = 2l+1 signal.
fn bin_hz(u: &DiscreteSignal) -> f64 {
    rad_to_hz(u.resolution())
}

/// Snap a user frequency in Hz to the nearest bin index.
fn to_bin(f_hz: f64, u: &DiscreteSignal, what: &str) -> Result<usize> {
    let bin = (f_hz / bin_hz(u)).round();
    if bin < 0.0 {
        return Err(CliError::Usage(format!("{what} edge {f_hz} Hz is negative")));
    }
    Ok(bin as usize)
}

fn band_from_hz(pair: HzPair, u: &DiscreteSignal, what: &str) -> Result<BandInterval> {
    let lo = to_bin(pair.0, u, what)?;
    let hi = to_bin(pair.1, u, what)?;
    Ok(BandInterval::new(lo, hi, u.half_len())?)
}

fn base_manifest(command: &str, input: Option<&Path>, u: &DiscreteSignal) -> Manifest {
    Manifest {
        command: command.to_string(),
        input: input.map(|p| p.display().to_string()),
        rate_hz: 1.0 / u.dt(),
        samples: u.len(),
        half_len: u.half_len(),
        resolution_hz: bin_hz(u),
        nyquist_hz: rad_to_hz(u.nyquist()),
        config: ConfigEcho::default(),
        modes: Vec::new(),
        trend: None,
        residual: None,
        residual_energy_fraction: None,
    }
}

fn signal_series(name: &str, u: &DiscreteSignal) -> Series {
    Series {
        name: name.to_string(),
        points: u.times().into_iter().zip(u.samples().iter().copied()).collect(),
    }
}

fn cmd_gen(id: usize, out: &Path, label: Option<&str>) -> Result<()> {
    let u = example_signal(id)?;
    let default_label = format!("example-{id}");
    io::write_signal(out, &u, Some(label.unwrap_or(&default_label)))?;
    println!(
        "wrote example {id}: {} samples at {} Hz to {}",
        u.len(),
        1.0 / u.dt(),
        out.display()
    );
    Ok(())
}

fn cmd_spectra(input: &Path, out: &Path, oversample: usize, plot: Option<&Path>) -> Result<()> {
    let file = read_input(input)?;
    let u = &file.signal;
    let sp = compute_axis_spectra(u, oversample)?;
    let rows: Vec<Vec<f64>> = sp
        .omega
        .iter()
        .zip(sp.fre.iter().zip(&sp.fim))
        .map(|(w, (re, im))| vec![rad_to_hz(*w), *re, *im])
        .collect();
    io::write_table(
        out,
        &[
            ("kind", "spectra".into()),
            ("rate_hz", io::fmt17(1.0 / u.dt())),
            ("bin_hz", io::fmt17(bin_hz(u))),
            ("oversample", oversample.to_string()),
            ("columns", "freq_hz,real_axis,imag_axis".into()),
        ],
        &rows,
    )?;
    if let Some(p) = plot {
        let mk = |name: &str, ys: &[f64]| Series {
            name: name.into(),
            points: sp.omega.iter().map(|w| rad_to_hz(*w)).zip(ys.iter().copied()).collect(),
        };
        plot::write_chart(
            p,
            "axis spectra",
            "frequency (Hz)",
            "spectrum",
            &[mk("real axis", &sp.fre), mk("imaginary axis", &sp.fim)],
        )?;
    }
    println!("wrote {} spectrum points to {}", sp.omega.len(), out.display());
    Ok(())
}

fn cmd_phase(
    input: &Path,
    out: &Path,
    oversample: usize,
    sign_tol: f64,
    plot: Option<&Path>,
) -> Result<()> {
    let file = read_input(input)?;
    let u = &file.signal;
    let (track, companion) = auto_phase_track(u, oversample)?;
    let sign = classify_frequency_sign(&track, sign_tol)?;
    let route = match &companion {
        Some(c) => format!("{}", c.kind),
        None => "mixed parity (no companion)".to_string(),
    };
    let rows: Vec<Vec<f64>> = (0..track.len())
        .map(|j| {
            vec![
                track.t[j],
                track.amplitude[j],
                track.phase[j],
                track.omega[j],
                if track.valid[j] { 1.0 } else { 0.0 },
            ]
        })
        .collect();
    io::write_table(
        out,
        &[
            ("kind", "phase".into()),
            ("rate_hz", io::fmt17(1.0 / u.dt())),
            ("oversample", oversample.to_string()),
            ("amp_floor", io::fmt17(track.amp_floor)),
            ("sign", sign.to_string()),
            ("route", route.clone()),
            ("columns", "t_s,amplitude,phase_rad,omega_rad_s,valid".into()),
        ],
        &rows,
    )?;
    if let Some(p) = plot {
        let pts: Vec<(f64, f64)> = (0..track.len())
            .filter(|&j| track.valid[j])
            .map(|j| (track.t[j], track.omega[j]))
            .collect();
        plot::write_chart(
            p,
            "instantaneous frequency",
            "t (s)",
            "omega (rad/s)",
            &[Series { name: "omega".into(), points: pts }],
        )?;
    }
    println!(
        "sign: {sign} (tol {sign_tol} rad/s), {} of {} points valid, route: {route}",
        track.valid_count(),
        track.len()
    );
    println!("wrote track to {}", out.display());
    Ok(())
}

fn cmd_project(input: &Path, band: HzPair, out: &Path, plot: Option<&Path>) -> Result<()> {
    let file = read_input(input)?;
    let u = &file.signal;
    let interval = band_from_hz(band, u, "band")?;
    let p = project_band(u, interval)?;
    let eps = bin_hz(u);
    let label = format!(
        "band [{}, {}] Hz",
        interval.lo() as f64 * eps,
        interval.hi() as f64 * eps
    );
    io::write_signal(out, &p, Some(&label))?;
    if let Some(path) = plot {
        plot::write_chart(
            path,
            "band projection",
            "t (s)",
            "value",
            &[signal_series("signal", u), signal_series(&label, &p)],
        )?;
    }
    println!(
        "projected onto bins {}..{} ({}), energy fraction {:.6}",
        interval.lo(),
        interval.hi(),
        label,
        if u.energy() > 0.0 { p.energy() / u.energy() } else { 0.0 }
    );
    println!("wrote projection to {}", out.display());
    Ok(())
}

fn mode_record(m: &Mode, file: String, input_energy: f64) -> ModeRecord {
    let (lo_hz, hi_hz) = m.band_hz();
    ModeRecord {
        file,
        axis: m.axis.to_string(),
        band_hz: [lo_hz, hi_hz],
        band_bins: [m.band.lo(), m.band.hi()],
        freq_sign: m.freq_sign.to_string(),
        energy_fraction: if input_energy > 0.0 { m.signal.energy() / input_energy } else { 0.0 },
        expansions: m.expansions,
    }
}

fn mode_label(idx: usize, m: &Mode) -> String {
    let (lo, hi) = m.band_hz();
    format!("mode {idx}: [{lo}, {hi}] Hz, {} axis, {}", m.axis, m.freq_sign)
}

fn cmd_search(
    input: &Path,
    seed: HzPair,
    out_dir: &Path,
    flags: &SearchFlags,
    plot: Option<&Path>,
) -> Result<()> {
    let file = read_input(input)?;
    let u = &file.signal;
    let interval = band_from_hz(seed, u, "seed")?;
    let cfg = flags.config();
    let mode = search_mode(u, interval, &cfg)?;

    std::fs::create_dir_all(out_dir)
        .map_err(|e| CliError::io(out_dir.display().to_string(), e))?;
    let mode_file = "mode.csv".to_string();
    io::write_signal(&out_dir.join(&mode_file), &mode.signal, Some(&mode_label(1, &mode)))?;

    let mut manifest = base_manifest("search", Some(input), u);
    manifest.config = flags.echo();
    manifest.config.seed_hz = Some([seed.0, seed.1]);
    manifest.modes.push(mode_record(&mode, mode_file, u.energy()));
    manifest.write(&out_dir.join("manifest.json"))?;

    if let Some(p) = plot {
        plot::write_chart(
            p,
            "mode search",
            "t (s)",
            "value",
            &[signal_series("signal", u), signal_series(&mode_label(1, &mode), &mode.signal)],
        )?;
    }
    let (lo, hi) = mode.band_hz();
    println!(
        "mode [{lo}, {hi}] Hz (bins {}..{}), sign {}, {} expansions",
        mode.band.lo(),
        mode.band.hi(),
        mode.freq_sign,
        mode.expansions
    );
    println!("wrote mode and manifest to {}", out_dir.display());
    Ok(())
}

fn trend_record(fit: &TrendFit, file: String, cutoff_hz: f64) -> TrendRecord {
    let (ce, co) = fit.conditions();
    TrendRecord {
        file,
        cutoff_hz,
        resample_period_s: fit.delta0,
        half_order: fit.l0,
        condition_even: ce,
        condition_odd: co,
    }
}

fn cmd_trend(input: &Path, cutoff: f64, out_dir: &Path, plot: Option<&Path>) -> Result<()> {
    let file = read_input(input)?;
    let u = &file.signal;
    let fit = fit_trend(u, hz_to_rad(cutoff))?;
    let values: Vec<f64> = u
        .times()
        .iter()
        .map(|&t| omd_core::eval_trend(&fit, t))
        .collect::<omd_core::Result<_>>()?;
    let trend = DiscreteSignal::new(values, u.dt())?;
    let residual = u.subtract(&trend);

    std::fs::create_dir_all(out_dir)
        .map_err(|e| CliError::io(out_dir.display().to_string(), e))?;
    io::write_signal(&out_dir.join("trend.csv"), &trend, Some("trend"))?;
    io::write_signal(&out_dir.join("residual.csv"), &residual, Some("residual"))?;

    let mut manifest = base_manifest("trend", Some(input), u);
    manifest.trend = Some(trend_record(&fit, "trend.csv".into(), cutoff));
    manifest.residual = Some("residual.csv".into());
    manifest.residual_energy_fraction =
        (u.energy() > 0.0).then(|| residual.energy() / u.energy());
    manifest.write(&out_dir.join("manifest.json"))?;

    if let Some(p) = plot {
        plot::write_chart(
            p,
            "trend fit",
            "t (s)",
            "value",
            &[signal_series("signal", u), signal_series("trend", &trend)],
        )?;
    }
    let (ce, co) = fit.conditions();
    println!(
        "trend: resample period {} s, half-order {}, conditions ({:.3e}, {:.3e})",
        fit.delta0, fit.l0, ce, co
    );
    println!("wrote trend, residual, manifest to {}", out_dir.display());
    Ok(())
}

fn cmd_decompose(
    input: &Path,
    out_dir: &Path,
    trend_cutoff: Option<f64>,
    flags: &SearchFlags,
    plot: Option<&Path>,
) -> Result<()> {
    let file = read_input(input)?;
    let u = &file.signal;
    let cfg = flags.config();
    let result = decompose_full(u, trend_cutoff.map(hz_to_rad), &cfg)?;

    std::fs::create_dir_all(out_dir)
        .map_err(|e| CliError::io(out_dir.display().to_string(), e))?;

    let mut manifest = base_manifest("decompose", Some(input), u);
    manifest.config = flags.echo();
    manifest.config.trend_cutoff_hz = trend_cutoff;

    let mut series = vec![signal_series("signal", u)];
    for (idx, mode) in result.modes.iter().enumerate() {
        let fname = format!("mode_{:02}.csv", idx + 1);
        let label = mode_label(idx + 1, mode);
        io::write_signal(&out_dir.join(&fname), &mode.signal, Some(&label))?;
        manifest.modes.push(mode_record(mode, fname, u.energy()));
        series.push(signal_series(&label, &mode.signal));
    }
    if let Some(trend) = &result.trend {
        io::write_signal(&out_dir.join("trend.csv"), trend, Some("trend"))?;
        let fit = result.trend_fit.as_ref().expect("trend signal implies a fit");
        manifest.trend = Some(trend_record(fit, "trend.csv".into(), trend_cutoff.unwrap_or(0.0)));
        series.push(signal_series("trend", trend));
    }
    io::write_signal(&out_dir.join("residual.csv"), &result.residual, Some("residual"))?;
    manifest.residual = Some("residual.csv".into());
    manifest.residual_energy_fraction =
        (u.energy() > 0.0).then(|| result.residual.energy() / u.energy());
    manifest.write(&out_dir.join("manifest.json"))?;

    if let Some(p) = plot {
        plot::write_chart(p, "decomposition", "t (s)", "value", &series)?;
    }

    for (idx, rec) in manifest.modes.iter().enumerate() {
        println!(
            "mode {}: [{}, {}] Hz, {} axis, {}, energy fraction {:.6}, {} expansions",
            idx + 1,
            rec.band_hz[0],
            rec.band_hz[1],
            rec.axis,
            rec.freq_sign,
            rec.energy_fraction,
            rec.expansions
        );
    }
    if result.trend.is_some() {
        println!("trend: cutoff {} Hz", trend_cutoff.unwrap_or(0.0));
    }
    println!(
        "residual energy fraction {:.6}",
        manifest.residual_energy_fraction.unwrap_or(0.0)
    );
    println!(
        "wrote {} mode file(s), residual, manifest to {}",
        manifest.modes.len(),
        out_dir.display()
    );
    Ok(())
}
