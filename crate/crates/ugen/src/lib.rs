//! Text formats, JSON reports and the command line front end for
//! [`ugen_core`].
//!
//! Reports share one envelope: `{command, seed, profile, results, summary}`
//! plus `timing_ms` when timing is requested. `summary` counts cases and
//! failures and names the first failure. The process exits 0 when there are
//! no failures, 1 on a validation failure, 2 on usage or parse errors and 3
//! when a cap or counting hypothesis is hit.

pub mod cli;
pub mod covers;
pub mod error;
pub mod lemma;
pub mod sweep;

pub use error::{CliError, ExitKind};
