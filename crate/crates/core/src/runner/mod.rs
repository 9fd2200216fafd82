//! Experiment orchestration: config resolution, task generation, parallel
//! execution with deterministic seeding, checkpoint/resume, and JSONL result
//! persistence.

mod config;
mod execute;

pub use config::{
    describe, preset, preset_names, resolve_config, ConfigError, ExperimentConfig, FaultEntry,
    Overrides, DEFAULT_MASTER_SEED, DEFAULT_TIMEOUT_S, DEFAULT_TRIALS_PER_PAIR,
};
pub use execute::{
    build_catalog, build_tasks, derive_trial_seed, read_records, resolve_workers, resume, run,
    Catalog, RunOptions, RunSummary, RunnerError, Task, TrialKey, TrialRecord,
    CHECKPOINT_FILE, EMBED_INLINE_MAX_QUBITS, RESOLVED_CONFIG_FILE, RESULTS_FILE,
};
