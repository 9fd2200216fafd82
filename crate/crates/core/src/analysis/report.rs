//! Renders results into fixed-header CSV tables: an overall per-algorithm
//! summary, per-category breakdowns with mean ranks, success-vs-size and
//! ACL-vs-edges scaling tables, and a fault-retention matrix. Output is
//! byte-stable for a fixed input: grouping uses sorted maps and formatting
//! never depends on ambient state.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use rand::Rng;
use thiserror::Error;

use crate::algorithms::Status;
use crate::faults::retention;
use crate::rng::rng_from_seed;
use crate::runner::TrialRecord;

use super::stats::{median, wilson_interval};

/// Seed for the bootstrap intervals in `overall.csv`; fixed so reports are
/// reproducible artifacts.
const REPORT_BOOTSTRAP_SEED: u64 = 42;
const BOOTSTRAP_RESAMPLES: u32 = 2000;
const CONFIDENCE: f64 = 0.95;

/// Node-width of each success-scaling bin.
const NODE_BIN_WIDTH: u64 = 20;
/// Number of equal-count ACL bins.
const ACL_BINS: usize = 20;
/// Upper bounds of the edge-count strata in the retention table.
const EDGE_STRATA: [u64; 4] = [150, 400, 1000, 3000];

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("I/O failure while {context}: {source}")]
    Io { context: String, source: std::io::Error },
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
}

fn io_err(context: impl Into<String>) -> impl FnOnce(std::io::Error) -> ReportError {
    let context = context.into();
    move |source| ReportError::Io { context, source }
}

/// Reads a results file, skipping lines that do not parse. Returns the good
/// records plus one warning per skipped line (with its 1-based line number).
pub fn read_results_lenient(path: &Path) -> Result<(Vec<TrialRecord>, Vec<String>), ReportError> {
    let text = std::fs::read_to_string(path)
        .map_err(io_err(format!("reading {}", path.display())))?;
    let mut records = Vec::new();
    let mut warnings = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<TrialRecord>(line) {
            Ok(record) => records.push(record),
            Err(e) => warnings.push(format!("line {}: skipped malformed record ({e})", i + 1)),
        }
    }
    Ok((records, warnings))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportSummary {
    pub records: usize,
    pub files: Vec<PathBuf>,
}

/// Writes all report tables into `out_dir` (created if missing).
pub fn report(records: &[TrialRecord], out_dir: &Path) -> Result<ReportSummary, ReportError> {
    std::fs::create_dir_all(out_dir).map_err(io_err("creating the report directory"))?;
    let files = vec![
        write_overall(records, &out_dir.join("overall.csv"))?,
        write_by_category(records, &out_dir.join("by_category.csv"))?,
        write_scaling_success(records, &out_dir.join("scaling_success.csv"))?,
        write_scaling_acl(records, &out_dir.join("scaling_acl.csv"))?,
        write_fault_retention(records, &out_dir.join("fault_retention.csv"))?,
    ];
    Ok(ReportSummary { records: records.len(), files })
}

fn algorithms(records: &[TrialRecord]) -> BTreeSet<&str> {
    records.iter().map(|r| r.algorithm.as_str()).collect()
}

fn fmt(v: f64) -> String {
    format!("{v}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt).unwrap_or_default()
}

/// The rate of a `rate(f=..,seed=..)` fault id; pattern faults yield None.
fn fault_rate(fault: &str) -> Option<f64> {
    fault.strip_prefix("rate(f=")?.split(',').next()?.parse().ok()
}

/// Macro-average of per-category medians, bootstrapped by resampling within
/// each category. Returns (point estimate, lo, hi); None without any data.
fn macro_median_ci(groups: &BTreeMap<&str, Vec<f64>>) -> Option<(f64, f64, f64)> {
    if groups.is_empty() {
        return None;
    }
    let point = groups.values().map(|v| median(v).expect("groups are non-empty")).sum::<f64>()
        / groups.len() as f64;
    let mut rng = rng_from_seed(REPORT_BOOTSTRAP_SEED);
    let mut estimates = Vec::with_capacity(BOOTSTRAP_RESAMPLES as usize);
    for _ in 0..BOOTSTRAP_RESAMPLES {
        let mut total = 0.0;
        for values in groups.values() {
            let mut resample: Vec<f64> =
                (0..values.len()).map(|_| values[rng.random_range(0..values.len())]).collect();
            resample.sort_by(|a, b| a.partial_cmp(b).expect("no NaN"));
            total += median(&resample).expect("non-empty resample");
        }
        estimates.push(total / groups.len() as f64);
    }
    estimates.sort_by(|a, b| a.partial_cmp(b).expect("no NaN"));
    let idx = |q: f64| {
        let pos = q * (estimates.len() - 1) as f64;
        let base = pos.floor() as usize;
        let frac = pos - base as f64;
        if base + 1 < estimates.len() {
            estimates[base] * (1.0 - frac) + estimates[base + 1] * frac
        } else {
            estimates[base]
        }
    };
    Some((point, idx((1.0 - CONFIDENCE) / 2.0), idx((1.0 + CONFIDENCE) / 2.0)))
}

fn write_overall(records: &[TrialRecord], path: &Path) -> Result<PathBuf, ReportError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record([
        "algorithm",
        "trials",
        "successes",
        "success_rate",
        "success_rate_macro",
        "wilson_lo",
        "wilson_hi",
        "mean_acl",
        "mean_acl_macro",
        "median_wall_s",
        "median_wall_lo",
        "median_wall_hi",
    ])?;
    for algorithm in algorithms(records) {
        let rows: Vec<&TrialRecord> =
            records.iter().filter(|r| r.algorithm == algorithm).collect();
        let trials = rows.len() as u64;
        let successes = rows.iter().filter(|r| r.status == Status::Success).count() as u64;
        let success_rate = successes as f64 / trials as f64;
        let (wilson_lo, wilson_hi) =
            wilson_interval(successes, trials, CONFIDENCE).expect("trials >= 1");

        let mut success_by_cat: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
        let mut acl_by_cat: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
        let mut wall_by_cat: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
        let mut acls = Vec::new();
        for r in &rows {
            let hit = if r.status == Status::Success { 1.0 } else { 0.0 };
            success_by_cat.entry(&r.category).or_default().push(hit);
            if let Some(acl) = r.mean_chain_length {
                acl_by_cat.entry(&r.category).or_default().push(acl);
                acls.push(acl);
                wall_by_cat.entry(&r.category).or_default().push(r.wall_time_s);
            }
        }
        let success_rate_macro = success_by_cat
            .values()
            .map(|v| v.iter().sum::<f64>() / v.len() as f64)
            .sum::<f64>()
            / success_by_cat.len() as f64;
        let mean_acl = (!acls.is_empty())
            .then(|| acls.iter().sum::<f64>() / acls.len() as f64);
        let mean_acl_macro = (!acl_by_cat.is_empty()).then(|| {
            acl_by_cat.values().map(|v| v.iter().sum::<f64>() / v.len() as f64).sum::<f64>()
                / acl_by_cat.len() as f64
        });
        let wall = macro_median_ci(&wall_by_cat);

        w.write_record([
            algorithm.to_owned(),
            trials.to_string(),
            successes.to_string(),
            fmt(success_rate),
            fmt(success_rate_macro),
            fmt(wilson_lo),
            fmt(wilson_hi),
            fmt_opt(mean_acl),
            fmt_opt(mean_acl_macro),
            fmt_opt(wall.map(|t| t.0)),
            fmt_opt(wall.map(|t| t.1)),
            fmt_opt(wall.map(|t| t.2)),
        ])?;
    }
    w.flush().map_err(io_err("flushing overall.csv"))?;
    Ok(path.to_path_buf())
}

fn write_by_category(records: &[TrialRecord], path: &Path) -> Result<PathBuf, ReportError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record([
        "category",
        "algorithm",
        "trials",
        "successes",
        "success_rate",
        "mean_acl",
        "mean_rank",
    ])?;

    let algos: Vec<&str> = algorithms(records).into_iter().collect();
    // mean rank per (category, algorithm): rank algorithms per problem by
    // ACL, failures last; problems where everything failed are dropped
    let mut problems: BTreeMap<(&str, &str, &str, &str, u32), Vec<Option<f64>>> = BTreeMap::new();
    for r in records {
        let key =
            (r.category.as_str(), r.graph_id.as_str(), r.topology.as_str(), r.fault.as_str(), r.trial);
        let slot = algos.iter().position(|a| *a == r.algorithm).expect("listed algorithm");
        let row = problems.entry(key).or_insert_with(|| vec![None; algos.len()]);
        row[slot] = r.mean_chain_length;
    }
    let mut rank_sums: BTreeMap<(&str, &str), (f64, u64)> = BTreeMap::new();
    for ((category, ..), row) in &problems {
        if row.iter().all(|v| v.is_none()) {
            continue;
        }
        let encoded: Vec<f64> = row.iter().map(|v| v.unwrap_or(f64::INFINITY)).collect();
        for (slot, rank) in super::stats::average_ranks(&encoded).into_iter().enumerate() {
            let cell = rank_sums.entry((category, algos[slot])).or_insert((0.0, 0));
            cell.0 += rank;
            cell.1 += 1;
        }
    }

    let categories: BTreeSet<&str> = records.iter().map(|r| r.category.as_str()).collect();
    for category in categories {
        for algorithm in &algos {
            let rows: Vec<&TrialRecord> = records
                .iter()
                .filter(|r| r.category == category && r.algorithm == *algorithm)
                .collect();
            if rows.is_empty() {
                continue;
            }
            let trials = rows.len() as u64;
            let successes = rows.iter().filter(|r| r.status == Status::Success).count() as u64;
            let acls: Vec<f64> = rows.iter().filter_map(|r| r.mean_chain_length).collect();
            let mean_acl =
                (!acls.is_empty()).then(|| acls.iter().sum::<f64>() / acls.len() as f64);
            let mean_rank = rank_sums
                .get(&(category, algorithm))
                .map(|(total, count)| total / *count as f64);
            w.write_record([
                category.to_owned(),
                (*algorithm).to_owned(),
                trials.to_string(),
                successes.to_string(),
                fmt(successes as f64 / trials as f64),
                fmt_opt(mean_acl),
                fmt_opt(mean_rank),
            ])?;
        }
    }
    w.flush().map_err(io_err("flushing by_category.csv"))?;
    Ok(path.to_path_buf())
}

fn write_scaling_success(records: &[TrialRecord], path: &Path) -> Result<PathBuf, ReportError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record([
        "algorithm",
        "nodes_lo",
        "nodes_hi",
        "trials",
        "successes",
        "success_rate",
        "wilson_lo",
        "wilson_hi",
    ])?;
    let mut bins: BTreeMap<(&str, u64), (u64, u64)> = BTreeMap::new();
    for r in records {
        let bin = (r.graph_nodes.max(1) - 1) / NODE_BIN_WIDTH;
        let cell = bins.entry((&r.algorithm, bin)).or_insert((0, 0));
        cell.0 += 1;
        if r.status == Status::Success {
            cell.1 += 1;
        }
    }
    for ((algorithm, bin), (trials, successes)) in bins {
        let (lo, hi) = wilson_interval(successes, trials, CONFIDENCE).expect("trials >= 1");
        w.write_record([
            algorithm.to_owned(),
            (bin * NODE_BIN_WIDTH + 1).to_string(),
            ((bin + 1) * NODE_BIN_WIDTH).to_string(),
            trials.to_string(),
            successes.to_string(),
            fmt(successes as f64 / trials as f64),
            fmt(lo),
            fmt(hi),
        ])?;
    }
    w.flush().map_err(io_err("flushing scaling_success.csv"))?;
    Ok(path.to_path_buf())
}

fn write_scaling_acl(records: &[TrialRecord], path: &Path) -> Result<PathBuf, ReportError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record([
        "algorithm",
        "bin",
        "edges_lo",
        "edges_hi",
        "count",
        "mean_edges",
        "mean_acl",
    ])?;
    for algorithm in algorithms(records) {
        let mut points: Vec<(u64, f64)> = records
            .iter()
            .filter(|r| r.algorithm == algorithm)
            .filter_map(|r| r.mean_chain_length.map(|acl| (r.graph_edges, acl)))
            .collect();
        points.sort_by(|a, b| a.partial_cmp(b).expect("no NaN"));
        let n = points.len();
        for bin in 0..ACL_BINS {
            let start = bin * n / ACL_BINS;
            let end = (bin + 1) * n / ACL_BINS;
            if start == end {
                continue;
            }
            let chunk = &points[start..end];
            let count = chunk.len() as f64;
            let mean_edges = chunk.iter().map(|(e, _)| *e as f64).sum::<f64>() / count;
            let mean_acl = chunk.iter().map(|(_, a)| a).sum::<f64>() / count;
            w.write_record([
                algorithm.to_owned(),
                bin.to_string(),
                chunk[0].0.to_string(),
                chunk[chunk.len() - 1].0.to_string(),
                chunk.len().to_string(),
                fmt(mean_edges),
                fmt(mean_acl),
            ])?;
        }
    }
    w.flush().map_err(io_err("flushing scaling_acl.csv"))?;
    Ok(path.to_path_buf())
}

fn stratum_label(edges: u64) -> String {
    let mut lo = 0;
    for &hi in &EDGE_STRATA {
        if edges <= hi {
            return if lo == 0 { format!("<={hi}") } else { format!("{}-{hi}", lo + 1) };
        }
        lo = hi;
    }
    format!(">{}", EDGE_STRATA[EDGE_STRATA.len() - 1])
}

fn write_fault_retention(records: &[TrialRecord], path: &Path) -> Result<PathBuf, ReportError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record([
        "algorithm",
        "stratum",
        "f",
        "baseline_successes",
        "retained",
        "retention",
    ])?;

    // problem identity across fault levels: same graph, topology, and trial
    type Problem<'a> = (&'a str, &'a str, u32);
    let mut success_sets: BTreeMap<(&str, String, u64), BTreeSet<Problem>> = BTreeMap::new();
    let mut rates: BTreeSet<u64> = BTreeSet::new();
    for r in records {
        let Some(rate) = fault_rate(&r.fault) else { continue };
        let rate_bits = rate.to_bits();
        rates.insert(rate_bits);
        let stratum = stratum_label(r.graph_edges);
        let set = success_sets.entry((&r.algorithm, stratum, rate_bits)).or_default();
        if r.status == Status::Success {
            set.insert((&r.graph_id, &r.topology, r.trial));
        }
    }

    let algos = algorithms(records);
    let strata: BTreeSet<String> = records.iter().map(|r| stratum_label(r.graph_edges)).collect();
    for algorithm in algos {
        for stratum in &strata {
            let baseline =
                success_sets.get(&(algorithm, stratum.clone(), 0.0f64.to_bits())).cloned();
            let Some(baseline) = baseline else { continue };
            for &rate_bits in &rates {
                let key = (algorithm, stratum.clone(), rate_bits);
                let Some(at_rate) = success_sets.get(&key) else { continue };
                let retained = baseline.intersection(at_rate).count() as u64;
                let value = retention(&baseline, at_rate);
                w.write_record([
                    algorithm.to_owned(),
                    stratum.clone(),
                    fmt(f64::from_bits(rate_bits)),
                    baseline.len().to_string(),
                    retained.to_string(),
                    fmt_opt(value),
                ])?;
            }
        }
    }
    w.flush().map_err(io_err("flushing fault_retention.csv"))?;
    Ok(path.to_path_buf())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn record(
        graph_id: &str,
        category: &str,
        nodes: u64,
        edges: u64,
        algorithm: &str,
        fault: &str,
        trial: u32,
        acl: Option<f64>,
    ) -> TrialRecord {
        TrialRecord {
            graph_id: graph_id.into(),
            category: category.into(),
            graph_nodes: nodes,
            graph_edges: edges,
            topology: "chimera(4,4,4)".into(),
            fault: fault.into(),
            algorithm: algorithm.into(),
            trial,
            seed: 1,
            status: if acl.is_some() { Status::Success } else { Status::Failure },
            qubit_count: acl.map(|a| (a * nodes as f64) as u64),
            max_chain_length: acl.map(|a| a.ceil() as u64 + 1),
            mean_chain_length: acl,
            wall_time_s: 0.25,
            wall_overrun_s: None,
            counters: BTreeMap::new(),
            algorithm_version: format!("{algorithm}/0.1.0"),
            embedding: None,
            embedding_ref: None,
        }
    }

    fn baseline() -> &'static str {
        "rate(f=0,seed=42)"
    }

    #[test]
    fn empty_results_emit_headers_only() {
        let tmp = tempfile::tempdir().unwrap();
        let summary = report(&[], tmp.path()).unwrap();
        assert_eq!(summary.records, 0);
        assert_eq!(summary.files.len(), 5);
        for file in &summary.files {
            let text = std::fs::read_to_string(file).unwrap();
            assert_eq!(text.lines().count(), 1, "{}", file.display());
        }
    }

    #[test]
    fn overall_and_category_tables_match_hand_computed_aggregates() {
        // two categories, two algorithms; alg a succeeds 3/4, alg b 2/4
        let records = vec![
            record("g1", "path", 10, 9, "a", baseline(), 0, Some(1.0)),
            record("g2", "path", 20, 19, "a", baseline(), 0, Some(2.0)),
            record("g3", "complete", 8, 28, "a", baseline(), 0, Some(3.0)),
            record("g4", "complete", 12, 66, "a", baseline(), 0, None),
            record("g1", "path", 10, 9, "b", baseline(), 0, Some(2.0)),
            record("g2", "path", 20, 19, "b", baseline(), 0, None),
            record("g3", "complete", 8, 28, "b", baseline(), 0, Some(1.0)),
            record("g4", "complete", 12, 66, "b", baseline(), 0, None),
        ];
        let tmp = tempfile::tempdir().unwrap();
        report(&records, tmp.path()).unwrap();

        let overall = std::fs::read_to_string(tmp.path().join("overall.csv")).unwrap();
        let lines: Vec<&str> = overall.lines().collect();
        assert_eq!(lines.len(), 3);
        let a: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(a[0], "a");
        assert_eq!(a[1], "4");
        assert_eq!(a[2], "3");
        assert_abs_diff_eq!(a[3].parse::<f64>().unwrap(), 0.75);
        // macro success for a: path 1.0, complete 0.5 -> 0.75
        assert_abs_diff_eq!(a[4].parse::<f64>().unwrap(), 0.75);
        // pooled ACL for a: (1+2+3)/3 = 2; macro: (1.5 + 3)/2 = 2.25
        assert_abs_diff_eq!(a[7].parse::<f64>().unwrap(), 2.0);
        assert_abs_diff_eq!(a[8].parse::<f64>().unwrap(), 2.25);
        let b: Vec<&str> = lines[2].split(',').collect();
        // macro success for b: path 0.5, complete 0.5 -> 0.5
        assert_abs_diff_eq!(b[4].parse::<f64>().unwrap(), 0.5);

        let by_cat = std::fs::read_to_string(tmp.path().join("by_category.csv")).unwrap();
        let lines: Vec<&str> = by_cat.lines().collect();
        assert_eq!(lines.len(), 5, "2 categories x 2 algorithms plus header");
        // complete/a: ranks vs b: g3 a=3.0 b=1.0 -> a rank 2; g4 both fail -> dropped
        let row: Vec<&str> = lines[1].split(',').collect();
        assert_eq!((row[0], row[1]), ("complete", "a"));
        assert_abs_diff_eq!(row[6].parse::<f64>().unwrap(), 2.0);
        // path/a: g1 rank 1 (1.0 < 2.0), g2 rank 1 (b failed) -> mean 1
        let row: Vec<&str> = lines[3].split(',').collect();
        assert_eq!((row[0], row[1]), ("path", "a"));
        assert_abs_diff_eq!(row[6].parse::<f64>().unwrap(), 1.0);
    }

    #[test]
    fn node_bins_are_fixed_width() {
        let records = vec![
            record("g1", "path", 10, 9, "a", baseline(), 0, Some(1.0)),
            record("g2", "path", 20, 19, "a", baseline(), 0, Some(1.0)),
            record("g3", "path", 21, 20, "a", baseline(), 0, None),
            record("g4", "path", 45, 44, "a", baseline(), 0, Some(1.0)),
        ];
        let tmp = tempfile::tempdir().unwrap();
        report(&records, tmp.path()).unwrap();
        let text = std::fs::read_to_string(tmp.path().join("scaling_success.csv")).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        // bins: 1-20 (2 trials), 21-40 (1), 41-60 (1)
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("a,1,20,2,2,"));
        assert!(lines[2].starts_with("a,21,40,1,0,"));
        assert!(lines[3].starts_with("a,41,60,1,1,"));
    }

    #[test]
    fn acl_bins_split_into_equal_counts() {
        let records: Vec<TrialRecord> = (0..40)
            .map(|i| {
                record(
                    &format!("g{i}"),
                    "path",
                    10,
                    10 + i,
                    "a",
                    baseline(),
                    0,
                    Some(1.0 + i as f64),
                )
            })
            .collect();
        let tmp = tempfile::tempdir().unwrap();
        report(&records, tmp.path()).unwrap();
        let text = std::fs::read_to_string(tmp.path().join("scaling_acl.csv")).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 21, "20 bins of 2 points each plus header");
        for line in &lines[1..] {
            let cells: Vec<&str> = line.split(',').collect();
            assert_eq!(cells[4], "2");
        }
    }

    #[test]
    fn retention_conditions_on_the_baseline() {
        let f25 = "rate(f=0.25,seed=42)";
        let records = vec![
            // baseline: g1, g2 succeed; g3 fails
            record("g1", "path", 10, 9, "a", baseline(), 0, Some(1.0)),
            record("g2", "path", 20, 19, "a", baseline(), 0, Some(1.0)),
            record("g3", "path", 30, 29, "a", baseline(), 0, None),
            // f=0.25: g1 survives, g2 lost, g3 newly succeeds (ignored)
            record("g1", "path", 10, 9, "a", f25, 0, Some(1.0)),
            record("g2", "path", 20, 19, "a", f25, 0, None),
            record("g3", "path", 30, 29, "a", f25, 0, Some(1.0)),
        ];
        let tmp = tempfile::tempdir().unwrap();
        report(&records, tmp.path()).unwrap();
        let text = std::fs::read_to_string(tmp.path().join("fault_retention.csv")).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[1], "a,<=150,0,2,2,1");
        assert_eq!(lines[2], "a,<=150,0.25,2,1,0.5");
    }

    #[test]
    fn stratum_labels_use_the_documented_cuts() {
        assert_eq!(stratum_label(1), "<=150");
        assert_eq!(stratum_label(150), "<=150");
        assert_eq!(stratum_label(151), "151-400");
        assert_eq!(stratum_label(400), "151-400");
        assert_eq!(stratum_label(401), "401-1000");
        assert_eq!(stratum_label(1000), "401-1000");
        assert_eq!(stratum_label(1001), "1001-3000");
        assert_eq!(stratum_label(3000), "1001-3000");
        assert_eq!(stratum_label(3001), ">3000");
    }

    #[test]
    fn report_output_is_byte_stable() {
        let records = vec![
            record("g1", "path", 10, 9, "a", baseline(), 0, Some(1.5)),
            record("g2", "complete", 8, 28, "a", baseline(), 0, None),
            record("g1", "path", 10, 9, "b", baseline(), 0, Some(2.5)),
        ];
        let tmp = tempfile::tempdir().unwrap();
        let dir_a = tmp.path().join("a");
        let dir_b = tmp.path().join("b");
        report(&records, &dir_a).unwrap();
        report(&records, &dir_b).unwrap();
        for name in
            ["overall.csv", "by_category.csv", "scaling_success.csv", "scaling_acl.csv", "fault_retention.csv"]
        {
            let a = std::fs::read(dir_a.join(name)).unwrap();
            let b = std::fs::read(dir_b.join(name)).unwrap();
            assert_eq!(a, b, "{name}");
        }
    }

    #[test]
    fn lenient_reader_skips_bad_lines_with_warnings() {
        let tmp = tempfile::tempdir().unwrap();
        let path = tmp.path().join("results.jsonl");
        let good = serde_json::to_string(&record(
            "g1",
            "path",
            10,
            9,
            "a",
            baseline(),
            0,
            Some(1.0),
        ))
        .unwrap();
        std::fs::write(&path, format!("{good}\nnot json\n{good}\n")).unwrap();
        let (records, warnings) = read_results_lenient(&path).unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(warnings.len(), 1);
        assert!(warnings[0].starts_with("line 2:"));
    }
}
