//! Built-in example signals used by the test suite and the CLI.
//!
//! Numbers 1–9 live on a 100 Hz grid over [−1, 1] (201 samples);
//! number 10 on a 276 Hz grid over the same interval (553 samples);
//! number 0 is a short seeded-random signal for format round-trips.

use crate::error::{OmdError, Result};
use crate::signal::DiscreteSignal;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// Seed for example 0; fixed so generated files are byte-identical.
pub const EXAMPLE0_SEED: u64 = 20240101;

/// Sawtooth of period 0.4 s and amplitude ±1, odd about t = 0.
///
/// `f(t) = 2·(t/0.4 − round(t/0.4))`, with the jump midpoints (where the
/// fraction is exactly ±1/2) pinned to 0 so the function stays odd.
pub fn sawtooth(t: f64) -> f64 {
    const PERIOD: f64 = 0.4;
    let r = t / PERIOD - (t / PERIOD).round();
    if (r.abs() - 0.5).abs() <= 1e-9 {
        0.0
    } else {
        2.0 * r
    }
}

fn on_grid(l: usize, dt: f64, f: impl Fn(f64) -> f64) -> DiscreteSignal {
    let samples = (-(l as i64)..=l as i64).map(|k| f(k as f64 * dt)).collect();
    DiscreteSignal::new(samples, dt).expect("valid example grid")
}

/// Returns example signal `id` (0..=10).
pub fn example_signal(id: usize) -> Result<DiscreteSignal> {
    let dt = 0.01;
    let l = 100;
    let sig = match id {
        0 => {
            // 21 uniform random samples in [-1, 1] on a 3 s step
            let mut rng = ChaCha8Rng::seed_from_u64(EXAMPLE0_SEED);
            let samples: Vec<f64> = (0..21).map(|_| rng.gen_range(-1.0..1.0)).collect();
            DiscreteSignal::new(samples, 3.0)?
        }
        1 => on_grid(l, dt, |t| (20.0 * t.powi(3)).sin() + (20.0 * t.powi(3)).cos()),
        2 => on_grid(l, dt, |t| {
            1.3 * (6.0 * PI * t).sin()
                + (5.0 * PI * t).sin()
                + 1.5 * (6.0 * PI * t).cos()
                + (5.0 * PI * t).cos()
        }),
        3 => on_grid(l, dt, |t| {
            (1..88).map(|f| (f as f64 * PI * t).sin() + (f as f64 * PI * t).cos()).sum()
        }),
        4 => on_grid(l, dt, |t| {
            1.3 * (5.0 * PI * t).sin()
                + (12.0 * PI * t).sin()
                + (4.0 * PI * t).cos()
                + (13.0 * PI * t).cos()
        }),
        5 => on_grid(l, dt, |t| {
            1.3 * (5.0 * PI * t).sin()
                + (7.0 * PI * t).sin()
                + (4.0 * PI * t).cos()
                + (6.0 * PI * t).cos()
        }),
        6 => on_grid(l, dt, |t| {
            let burst = if t.abs() <= 0.5 {
                1.5 * (62.0 * PI * t).sin()
            } else {
                0.0
            };
            0.6 * (5.0 * PI * t).cos()
                + 1.5 * (6.0 * PI * t).cos()
                + 1.3 * (28.0 * PI * t).cos()
                + (7.0 * PI * t).sin()
                + 1.2 * (22.0 * PI * t).sin()
                + burst
        }),
        7 => on_grid(l, dt, |t| {
            6.0 * t + (8.0 * PI * t).cos() + 0.5 * (40.0 * PI * t).cos()
        }),
        8 => on_grid(l, dt, |t| {
            let piecewise = if t.abs() <= 0.5 {
                (60.0 * PI * t).cos()
            } else {
                (80.0 * PI * t - 10.0 * PI).cos()
            };
            6.0 * t * t + (10.0 * PI * t.abs() + 10.0 * PI * t * t).cos() + piecewise
        }),
        9 => on_grid(l, dt, |t| {
            1.0 / (1.2 + (2.0 * PI * t).cos())
                + (32.0 * PI * t + 0.2 * (64.0 * PI * t).cos()).cos()
                    / (1.5 + (2.0 * PI * t.abs()).sin())
        }),
        10 => on_grid(276, 1.0 / 276.0, |t| sawtooth(t) + 0.3 * (72.0 * PI * t).sin()),
        _ => {
            return Err(OmdError::InvalidConfig(format!(
                "example id {id} out of range 0..=10"
            )))
        }
    };
    Ok(sig)
}
