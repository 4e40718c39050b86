//! Experiment drivers: the cubic cycle-length table, seeded sweeps,
//! Pollard rho, and JSON/CSV output.

pub mod config;
pub mod output;
pub mod pollard;
pub mod sweeps;
pub mod table1;

pub use crate::field::translate_general_quadratic;
pub use config::{ExperimentConfig, Format, MapSampler};
pub use output::{emit, write_csv, write_json};
pub use pollard::{factor_with_restarts, pollard_rho, RhoFailure, RhoOutcome, RhoReport, DEFAULT_RESTARTS};
pub use sweeps::{
    corollary1_scan, identity_check, lemma1_sweep, theorem1_sweep, IdentityRecord, IdentityReport,
    RecurrenceRecord, RecurrenceScan, SkippedSample, SweepKind, SweepRecord, SweepReport,
    SweepSummary, LEMMA1_FACTOR, THEOREM1_FACTOR,
};
pub use table1::{table1, Table1Report, Table1Row};
