//! Shared fixtures for the benchmark targets. The crate exists only to
//! host `benches/`; nothing here is part of the public toolkit API.

use omd_core::{example_signal, DiscreteSignal};

/// Bundled example signal, panicking on bad ids (bench setup only).
pub fn fixture(id: usize) -> DiscreteSignal {
    example_signal(id).expect("bundled example id")
}
