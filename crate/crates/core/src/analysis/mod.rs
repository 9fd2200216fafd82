//! Statistics, regression fits, and CSV report generation over trial records.

pub mod fits;
pub mod report;
pub mod stats;

pub use fits::{fit_logistic_success, fit_powerlaw, fit_sqrt_linear, FitError, FitResult};
pub use report::{read_results_lenient, report, ReportError, ReportSummary};
pub use stats::{
    average_ranks, bootstrap_median_ci, friedman, holm_adjust, macro_average, median,
    rank_with_failures_last, spearman, wilcoxon_holm, wilcoxon_signed_rank, wilson_interval,
    AdjustedTest, FriedmanResult, RankTable, StatsError, WilcoxonOutcome,
};
