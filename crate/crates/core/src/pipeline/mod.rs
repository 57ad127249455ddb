//! End-to-end checks: the embedded tables, the counterexample, the nonlocal
//! example and the oracle sweep. Each returns a [`Report`](crate::report::Report).

mod counterexample;
mod nonlocal;
mod sweep;
mod table_checks;

pub use counterexample::counterexample;
pub use nonlocal::nonlocal;
pub use sweep::{sweep, sweep_stats, Mismatch, SweepGrid, SweepStats, SWEEP_JOBS_ENV};
pub use table_checks::{table_one, table_three, table_two, TABLE_ONE_EXTRA_BOUND};
