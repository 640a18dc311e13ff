//! Dual-channel particle swarm optimization with adaptive balance search.
//!
//! Each sub-swarm pairs two particles created from the same seed: one
//! learns only from an exemplar (the non-G channel) and one is also drawn
//! to the global best (the G channel). A per-sub-swarm counter decides
//! which channel runs, when a fresh exemplar is generated, and shifts the
//! budget from the first channel to the second as evaluations are spent.
//!
//! ```
//! use dcpso::{abs::{run_dcpso_abs, AbsConfig}, benchmarks::resolve};
//!
//! let f = resolve("rastrigin-sr", 5).unwrap();
//! let record = run_dcpso_abs(&f, &AbsConfig::new(10, 5_000), 42).unwrap();
//! assert!(record.final_error <= record.initial_error());
//! ```

pub mod abs;
pub mod analysis;
pub mod baseline;
pub mod benchmarks;
pub mod channels;
mod error;
pub mod harness;
pub mod swarm;

pub use error::{Error, Result};
