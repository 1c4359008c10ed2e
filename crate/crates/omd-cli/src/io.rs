//! Signal file format: two-column CSV (time seconds, value) preceded by
//! comment headers.  `# rate_hz=` is mandatory and authoritative for the
//! sample period; `# label=` is optional free text.  Values are written
//! with 17 significant digits so a write/read cycle is bit-exact.

use std::fs;
use std::path::Path;

use omd_core::DiscreteSignal;

use crate::{CliError, Result};

/// Relative tolerance for the uniform-grid check of the time column.
const GRID_TOL: f64 = 1e-9;

/// A parsed signal file: the samples plus the optional label header.
#[derive(Debug, Clone)]
pub struct SignalFile {
    pub signal: DiscreteSignal,
    pub label: Option<String>,
}

/// 17 significant digits: the shortest decimal length that round-trips
/// every f64 bit pattern.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_signal(path: &Path, signal: &DiscreteSignal, label: Option<&str>) -> Result<()> {
    let mut out = String::new();
    out.push_str(&format!("# rate_hz={}\n", fmt17(1.0 / signal.dt())));
    if let Some(label) = label {
        out.push_str(&format!("# label={label}\n"));
    }
    for (t, v) in signal.times().iter().zip(signal.samples()) {
        out.push_str(&fmt17(*t));
        out.push(',');
        out.push_str(&fmt17(*v));
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| CliError::io(path.display().to_string(), e))
}

pub fn read_signal(path: &Path) -> Result<SignalFile> {
    let name = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| CliError::io(name.clone(), e))?;
    let mut rate_hz: Option<f64> = None;
    let mut label: Option<String> = None;
    let mut times: Vec<f64> = Vec::new();
    let mut values: Vec<f64> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim();
            if let Some(v) = rest.strip_prefix("rate_hz=") {
                let r: f64 = v.trim().parse().map_err(|_| {
                    CliError::format(&name, format!("line {}: bad rate_hz value {v:?}", lineno + 1))
                })?;
                if !r.is_finite() || r <= 0.0 {
                    return Err(CliError::format(
                        &name,
                        format!("rate_hz must be finite and positive, got {r}"),
                    ));
                }
                rate_hz = Some(r);
            } else if let Some(v) = rest.strip_prefix("label=") {
                label = Some(v.to_string());
            }
            // unknown comment keys are ignored
            continue;
        }
        let mut fields = line.split(',');
        let (t, v) = match (fields.next(), fields.next(), fields.next()) {
            (Some(t), Some(v), None) => (t.trim(), v.trim()),
            _ => {
                return Err(CliError::format(
                    &name,
                    format!("line {}: expected `time,value`, got {line:?}", lineno + 1),
                ))
            }
        };
        let parse = |s: &str| -> Result<f64> {
            let x: f64 = s.parse().map_err(|_| {
                CliError::format(&name, format!("line {}: bad number {s:?}", lineno + 1))
            })?;
            if !x.is_finite() {
                return Err(CliError::format(
                    &name,
                    format!("line {}: non-finite value {s:?}", lineno + 1),
                ));
            }
            Ok(x)
        };
        times.push(parse(t)?);
        values.push(parse(v)?);
    }

    let rate = rate_hz.ok_or_else(|| CliError::format(&name, "missing `# rate_hz=` header"))?;
    let dt = 1.0 / rate;
    if times.len() < 3 {
        return Err(CliError::format(
            &name,
            format!("need at least 3 data rows, got {}", times.len()),
        ));
    }
    if times.len().is_multiple_of(2) {
        return Err(CliError::format(
            &name,
            format!(
                "analysis needs an odd number of rows (symmetric grid around the middle sample), got {}",
                times.len()
            ),
        ));
    }
    for j in 1..times.len() {
        let d = times[j] - times[j - 1];
        if d <= 0.0 {
            return Err(CliError::format(
                &name,
                format!("time column must be strictly increasing (row {} to {})", j, j + 1),
            ));
        }
        if (d - dt).abs() > GRID_TOL * dt {
            return Err(CliError::format(
                &name,
                format!(
                    "non-uniform grid: step {} at row {} vs 1/rate_hz = {}",
                    d,
                    j + 1,
                    dt
                ),
            ));
        }
    }

    let signal = DiscreteSignal::new(values, dt)?;
    Ok(SignalFile { signal, label })
}

/// Write a generic small table (comment headers + comma rows, 17 significant
/// digits).  Used for spectra and phase-track artifacts, which are not
/// signal files.
pub fn write_table(path: &Path, headers: &[(&str, String)], rows: &[Vec<f64>]) -> Result<()> {
    let mut out = String::new();
    for (k, v) in headers {
        out.push_str(&format!("# {k}={v}\n"));
    }
    for row in rows {
        let mut first = true;
        for x in row {
            if !first {
                out.push(',');
            }
            out.push_str(&fmt17(*x));
            first = false;
        }
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| CliError::io(path.display().to_string(), e))
}
