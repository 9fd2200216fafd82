//! Nonparametric statistics over benchmark outcomes: macro-averages, Wilson
//! intervals, rank tables, the Friedman test with Kendall's W, Wilcoxon
//! signed-rank with Holm adjustment, Spearman correlation, and a percentile
//! bootstrap for medians. Everything is deterministic given its inputs (and
//! seed, where one exists).

use std::collections::BTreeMap;

use rand::Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};
use thiserror::Error;

use crate::rng::rng_from_seed;

/// Reported p-values never go below this; smaller values are floored and
/// flagged so downstream tables can mark them.
pub const P_FLOOR: f64 = 1e-300;

#[derive(Debug, Error, PartialEq)]
pub enum StatsError {
    #[error("empty input")]
    EmptyInput,
    #[error("category `{0}` is empty")]
    EmptyCategory(String),
    #[error("invalid counts: {k} successes out of {n} trials")]
    InvalidCounts { k: u64, n: u64 },
    #[error("confidence must be in (0, 1), got {0}")]
    InvalidConfidence(f64),
    #[error("paired samples differ in length: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("need at least {need} pairs, got {got}")]
    TooFewPairs { need: usize, got: usize },
    #[error("rank table is degenerate: every row is fully tied")]
    DegenerateTable,
    #[error("problem {0} has no successful algorithm")]
    AllFailedRow(usize),
    #[error("rank table needs at least 2 problems and 2 algorithms")]
    TableTooSmall,
    #[error("correlation is undefined when one side has no rank variation")]
    DegenerateCorrelation,
}

/// Mean of per-category means: every category weighs the same no matter how
/// many instances it holds.
pub fn macro_average(groups: &BTreeMap<String, Vec<f64>>) -> Result<f64, StatsError> {
    if groups.is_empty() {
        return Err(StatsError::EmptyInput);
    }
    let mut total = 0.0;
    for (name, values) in groups {
        if values.is_empty() {
            return Err(StatsError::EmptyCategory(name.clone()));
        }
        total += values.iter().sum::<f64>() / values.len() as f64;
    }
    Ok(total / groups.len() as f64)
}

/// Wilson score interval for a binomial proportion.
pub fn wilson_interval(k: u64, n: u64, confidence: f64) -> Result<(f64, f64), StatsError> {
    if n == 0 || k > n {
        return Err(StatsError::InvalidCounts { k, n });
    }
    if !(0.0 < confidence && confidence < 1.0) {
        return Err(StatsError::InvalidConfidence(confidence));
    }
    let z = Normal::standard().inverse_cdf(0.5 + confidence / 2.0);
    let all = k == n;
    let n = n as f64;
    let p = k as f64 / n;
    let z2 = z * z;
    let center = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = z / (1.0 + z2 / n) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    // at p=0 (p=1) the bound is exactly 0 (1); pin it past float residue
    let lo = if k == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if all { 1.0 } else { (center + half).min(1.0) };
    Ok((lo, hi))
}

/// Average ranks (1-based) of `values`, ties averaged. NaN-free input only.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("no NaN in rank input"));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let rank = (i + 1 + j + 1) as f64 / 2.0;
        for &idx in &order[i..=j] {
            ranks[idx] = rank;
        }
        i = j + 1;
    }
    ranks
}

/// Per-problem ranks of algorithms. Rows are problems, columns algorithms;
/// each row is a tie-averaged permutation of 1..k.
#[derive(Debug, Clone, PartialEq)]
pub struct RankTable {
    pub ranks: Vec<Vec<f64>>,
}

impl RankTable {
    /// Validates the row-sum invariant: every row sums to k(k+1)/2.
    pub fn new(ranks: Vec<Vec<f64>>) -> Result<Self, StatsError> {
        let k = ranks.first().map(|r| r.len()).unwrap_or(0);
        if ranks.len() < 2 || k < 2 {
            return Err(StatsError::TableTooSmall);
        }
        let want = (k * (k + 1)) as f64 / 2.0;
        for row in &ranks {
            if row.len() != k {
                return Err(StatsError::LengthMismatch(row.len(), k));
            }
            let sum: f64 = row.iter().sum();
            assert!((sum - want).abs() < 1e-9, "row sum {sum} breaks the rank invariant");
        }
        Ok(RankTable { ranks })
    }

    pub fn problems(&self) -> usize {
        self.ranks.len()
    }

    pub fn algorithms(&self) -> usize {
        self.ranks[0].len()
    }
}

/// Builds a rank table from per-problem metric values, `None` marking a
/// failed run. Successes rank ascending by value; all failures of a problem
/// share the tie-averaged last ranks. Rows with no success are dropped when
/// `drop_all_failed` is set and are an error otherwise.
pub fn rank_with_failures_last(
    rows: &[Vec<Option<f64>>],
    drop_all_failed: bool,
) -> Result<RankTable, StatsError> {
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        if row.iter().all(|v| v.is_none()) {
            if drop_all_failed {
                continue;
            }
            return Err(StatsError::AllFailedRow(i));
        }
        // failures rank behind every success; encode them as +inf ties
        let encoded: Vec<f64> =
            row.iter().map(|v| v.unwrap_or(f64::INFINITY)).collect();
        out.push(average_ranks(&encoded));
    }
    RankTable::new(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FriedmanResult {
    pub chi2: f64,
    pub p: f64,
    pub p_floored: bool,
    /// Kendall's W, chi2 / (N (k - 1)); 1 means identical rankings everywhere.
    pub kendall_w: f64,
    pub mean_ranks: Vec<f64>,
}

/// Tie-corrected Friedman test over a rank table.
pub fn friedman(table: &RankTable) -> Result<FriedmanResult, StatsError> {
    let n = table.problems() as f64;
    let k = table.algorithms() as f64;
    let column_sums: Vec<f64> = (0..table.algorithms())
        .map(|j| table.ranks.iter().map(|row| row[j]).sum())
        .collect();
    let sum_r2: f64 = column_sums.iter().map(|r| r * r).sum();
    let sum_r_ij2: f64 = table.ranks.iter().flatten().map(|r| r * r).sum();

    let mean_term = n * n * k * (k + 1.0) * (k + 1.0) / 4.0;
    let numerator = (k - 1.0) * (sum_r2 - mean_term);
    let denominator = sum_r_ij2 - n * k * (k + 1.0) * (k + 1.0) / 4.0;
    if denominator.abs() < 1e-12 {
        // every row fully tied: no information about any ordering
        return Err(StatsError::DegenerateTable);
    }
    let chi2 = numerator / denominator;
    let dist = ChiSquared::new(k - 1.0).expect("k >= 2");
    let p_raw = 1.0 - dist.cdf(chi2);
    let (p, p_floored) = floor_p(p_raw);
    Ok(FriedmanResult {
        chi2,
        p,
        p_floored,
        kendall_w: chi2 / (n * (k - 1.0)),
        mean_ranks: column_sums.iter().map(|r| r / n).collect(),
    })
}

fn floor_p(p: f64) -> (f64, bool) {
    if p < P_FLOOR {
        (P_FLOOR, true)
    } else {
        (p, false)
    }
}

/// Wilcoxon signed-rank outcome. All-zero differences carry no evidence
/// either way, so they get their own marker instead of a fake p-value.
#[derive(Debug, Clone, PartialEq)]
pub enum WilcoxonOutcome {
    NoEvidence {
        zeros_dropped: usize,
    },
    Test {
        /// Sum of ranks of positive differences.
        w_plus: f64,
        /// Two-sided p (doubled one-sided, capped at 1).
        p: f64,
        p_one_sided: f64,
        p_floored: bool,
        /// True when the exact distribution was enumerated (n <= 25).
        exact: bool,
        n_used: usize,
        zeros_dropped: usize,
    },
}

/// Paired Wilcoxon signed-rank test. Zero differences are dropped (count
/// reported). Exact distribution for n <= 25 via dynamic programming over
/// doubled ranks; normal approximation with tie correction above that.
pub fn wilcoxon_signed_rank(x: &[f64], y: &[f64]) -> Result<WilcoxonOutcome, StatsError> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 5 {
        return Err(StatsError::TooFewPairs { need: 5, got: x.len() });
    }
    let diffs: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).filter(|d| *d != 0.0).collect();
    let zeros_dropped = x.len() - diffs.len();
    if diffs.is_empty() {
        return Ok(WilcoxonOutcome::NoEvidence { zeros_dropped });
    }

    let n = diffs.len();
    let magnitudes: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
    let ranks = average_ranks(&magnitudes);
    let w_plus: f64 =
        diffs.iter().zip(&ranks).filter(|(d, _)| **d > 0.0).map(|(_, r)| r).sum();

    let (p_one, exact) = if n <= 25 {
        (exact_one_sided_p(&ranks, w_plus), true)
    } else {
        // tie-corrected normal approximation
        let mean = n as f64 * (n as f64 + 1.0) / 4.0;
        let mut var = n as f64 * (n as f64 + 1.0) * (2.0 * n as f64 + 1.0) / 24.0;
        var -= tie_correction(&ranks) / 48.0;
        let z = (w_plus - mean) / var.sqrt();
        let lower_tail = Normal::standard().cdf(z);
        (lower_tail.min(1.0 - lower_tail), false)
    };
    let (p, p_floored) = floor_p((2.0 * p_one).min(1.0));
    Ok(WilcoxonOutcome::Test {
        w_plus,
        p,
        p_one_sided: floor_p(p_one).0,
        p_floored,
        exact,
        n_used: n,
        zeros_dropped,
    })
}

/// Sum of t^3 - t over tie groups, detected via equal averaged ranks.
fn tie_correction(ranks: &[f64]) -> f64 {
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for &r in ranks {
        *counts.entry((r * 2.0).round() as u64).or_insert(0) += 1;
    }
    counts.values().map(|&t| (t * t * t - t) as f64).sum()
}

/// P(W+ <= observed) under the null, by exact enumeration. Doubling the tie-
/// averaged ranks makes every value an integer, so a subset-sum table walks
/// all 2^n sign assignments implicitly.
fn exact_one_sided_p(ranks: &[f64], w_plus: f64) -> f64 {
    let doubled: Vec<usize> = ranks.iter().map(|r| (r * 2.0).round() as usize).collect();
    let total: usize = doubled.iter().sum();
    let mut counts = vec![0.0f64; total + 1];
    counts[0] = 1.0;
    let mut reach = 0usize;
    for &d in &doubled {
        reach += d;
        for s in (d..=reach).rev() {
            counts[s] += counts[s - d];
        }
    }
    let observed_doubled = (w_plus * 2.0).round() as usize;
    let w_low = observed_doubled.min(total - observed_doubled);
    let below: f64 = counts[..=w_low].iter().sum();
    below / 2.0f64.powi(ranks.len() as i32)
}

/// Holm step-down adjustment. Output order matches input order; adjusted
/// values never fall below their raw values and preserve raw ordering.
pub fn holm_adjust(raw: &[f64]) -> Vec<f64> {
    let m = raw.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| raw[a].partial_cmp(&raw[b]).expect("no NaN p-values"));
    let mut adjusted = vec![0.0; m];
    let mut running_max = 0.0f64;
    for (pos, &idx) in order.iter().enumerate() {
        let scaled = ((m - pos) as f64 * raw[idx]).min(1.0);
        running_max = running_max.max(scaled);
        adjusted[idx] = running_max;
    }
    adjusted
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdjustedTest {
    pub outcome: WilcoxonOutcome,
    /// Holm-adjusted two-sided p; `None` for NoEvidence outcomes, which are
    /// excluded from the adjustment family.
    pub p_adjusted: Option<f64>,
}

/// Runs a Wilcoxon test per sample pair and Holm-adjusts the family of
/// resulting p-values.
pub fn wilcoxon_holm(pairs: &[(Vec<f64>, Vec<f64>)]) -> Result<Vec<AdjustedTest>, StatsError> {
    let outcomes: Vec<WilcoxonOutcome> = pairs
        .iter()
        .map(|(x, y)| wilcoxon_signed_rank(x, y))
        .collect::<Result<_, _>>()?;
    let raw: Vec<f64> = outcomes
        .iter()
        .filter_map(|o| match o {
            WilcoxonOutcome::Test { p, .. } => Some(*p),
            WilcoxonOutcome::NoEvidence { .. } => None,
        })
        .collect();
    let adjusted = holm_adjust(&raw);
    let mut next = 0;
    Ok(outcomes
        .into_iter()
        .map(|outcome| {
            let p_adjusted = match &outcome {
                WilcoxonOutcome::Test { .. } => {
                    next += 1;
                    Some(adjusted[next - 1])
                }
                WilcoxonOutcome::NoEvidence { .. } => None,
            };
            AdjustedTest { outcome, p_adjusted }
        })
        .collect())
}

/// Spearman rank correlation with average ranks for ties.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<f64, StatsError> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 2 {
        return Err(StatsError::TooFewPairs { need: 2, got: x.len() });
    }
    let rx = average_ranks(x);
    let ry = average_ranks(y);
    let n = x.len() as f64;
    let mean = (n + 1.0) / 2.0;
    let mut cov = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    for (a, b) in rx.iter().zip(&ry) {
        cov += (a - mean) * (b - mean);
        var_x += (a - mean) * (a - mean);
        var_y += (b - mean) * (b - mean);
    }
    if var_x == 0.0 || var_y == 0.0 {
        return Err(StatsError::DegenerateCorrelation);
    }
    Ok(cov / (var_x * var_y).sqrt())
}

pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("no NaN in median input"));
    let mid = sorted.len() / 2;
    Some(if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    })
}

/// Percentile bootstrap interval for the median; seeded and deterministic.
pub fn bootstrap_median_ci(
    samples: &[f64],
    resamples: u32,
    confidence: f64,
    seed: u64,
) -> Result<(f64, f64), StatsError> {
    if samples.len() < 2 {
        return Err(StatsError::TooFewPairs { need: 2, got: samples.len() });
    }
    if !(0.0 < confidence && confidence < 1.0) {
        return Err(StatsError::InvalidConfidence(confidence));
    }
    let mut rng = rng_from_seed(seed);
    let mut medians = Vec::with_capacity(resamples as usize);
    let mut scratch = vec![0.0; samples.len()];
    for _ in 0..resamples {
        for slot in scratch.iter_mut() {
            *slot = samples[rng.random_range(0..samples.len())];
        }
        medians.push(median(&scratch).expect("non-empty resample"));
    }
    medians.sort_by(|a, b| a.partial_cmp(b).expect("no NaN"));
    let lo = percentile(&medians, (1.0 - confidence) / 2.0);
    let hi = percentile(&medians, (1.0 + confidence) / 2.0);
    Ok((lo, hi))
}

/// Linear-interpolation percentile of an already sorted slice.
fn percentile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let base = pos.floor() as usize;
    let frac = pos - base as f64;
    if base + 1 < sorted.len() {
        sorted[base] * (1.0 - frac) + sorted[base + 1] * frac
    } else {
        sorted[base]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn groups(pairs: &[(&str, &[f64])]) -> BTreeMap<String, Vec<f64>> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.to_vec())).collect()
    }

    #[test]
    fn macro_average_weighs_categories_equally() {
        let g = groups(&[("a", &[1.0, 1.0]), ("b", &[3.0])]);
        assert_abs_diff_eq!(macro_average(&g).unwrap(), 2.0);
        let g = groups(&[("only", &[4.0, 6.0])]);
        assert_abs_diff_eq!(macro_average(&g).unwrap(), 5.0);
        let g = groups(&[("a", &[0.2]), ("b", &[0.5]), ("c", &[0.8])]);
        assert_abs_diff_eq!(macro_average(&g).unwrap(), 0.5, epsilon = 1e-12);
        assert_eq!(
            macro_average(&groups(&[("a", &[])])),
            Err(StatsError::EmptyCategory("a".into()))
        );
        assert_eq!(macro_average(&BTreeMap::new()), Err(StatsError::EmptyInput));
    }

    #[test]
    fn wilson_interval_matches_the_closed_form() {
        let (lo, _) = wilson_interval(0, 10, 0.95).unwrap();
        assert_eq!(lo, 0.0);
        let (_, hi) = wilson_interval(10, 10, 0.95).unwrap();
        assert_eq!(hi, 1.0);
        let (lo, hi) = wilson_interval(5, 10, 0.95).unwrap();
        assert_abs_diff_eq!(lo, 0.2366, epsilon = 1e-4);
        assert_abs_diff_eq!(hi, 0.7634, epsilon = 1e-4);
        // independent evaluation of the closed form with z from statrs
        let z = Normal::standard().inverse_cdf(0.975);
        let (n, p) = (10.0, 0.5);
        let denom = 1.0 + z * z / n;
        let center = (p + z * z / (2.0 * n)) / denom;
        let half = z / denom * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt();
        assert_abs_diff_eq!(lo, center - half, epsilon = 1e-15);
        assert_abs_diff_eq!(hi, center + half, epsilon = 1e-15);
        assert!(wilson_interval(11, 10, 0.95).is_err());
        assert!(wilson_interval(0, 0, 0.95).is_err());
    }

    #[test]
    fn ranking_handles_ties_and_failures() {
        let t = rank_with_failures_last(
            &[vec![Some(2.0), Some(3.0), None], vec![Some(2.0), None, None]],
            false,
        )
        .unwrap();
        assert_eq!(t.ranks[0], vec![1.0, 2.0, 3.0]);
        assert_eq!(t.ranks[1], vec![1.0, 2.5, 2.5]);

        let t = rank_with_failures_last(
            &[vec![Some(2.0), Some(2.0), Some(3.0)], vec![Some(1.0), Some(2.0), Some(3.0)]],
            false,
        )
        .unwrap();
        assert_eq!(t.ranks[0], vec![1.5, 1.5, 3.0]);

        let rows = vec![vec![None, None], vec![Some(1.0), Some(2.0)], vec![Some(2.0), Some(1.0)]];
        assert_eq!(
            rank_with_failures_last(&rows, false),
            Err(StatsError::AllFailedRow(0))
        );
        let t = rank_with_failures_last(&rows, true).unwrap();
        assert_eq!(t.problems(), 2);
    }

    #[test]
    fn friedman_concordant_table_gives_w_one() {
        let rows = vec![vec![Some(1.0), Some(2.0), Some(3.0)]; 6];
        let table = rank_with_failures_last(&rows, false).unwrap();
        let result = friedman(&table).unwrap();
        assert_abs_diff_eq!(result.kendall_w, 1.0, epsilon = 1e-12);
        assert!(result.p < 0.05);
    }

    #[test]
    fn friedman_matches_a_hand_computed_oracle() {
        // 4 problems x 3 algorithms, no ties: textbook statistic
        let ranks = vec![
            vec![1.0, 2.0, 3.0],
            vec![2.0, 1.0, 3.0],
            vec![1.0, 3.0, 2.0],
            vec![1.0, 2.0, 3.0],
        ];
        let table = RankTable::new(ranks.clone()).unwrap();
        let result = friedman(&table).unwrap();
        // oracle: the same formula evaluated step by step by hand
        let (n, k) = (4.0, 3.0);
        let col_sums = [5.0, 8.0, 11.0];
        let sum_r2: f64 = col_sums.iter().map(|r| r * r).sum();
        let num = (k - 1.0) * (sum_r2 - n * n * k * (k + 1.0) * (k + 1.0) / 4.0);
        let den: f64 = ranks.iter().flatten().map(|r| r * r).sum::<f64>()
            - n * k * (k + 1.0) * (k + 1.0) / 4.0;
        assert_abs_diff_eq!(result.chi2, num / den, epsilon = 1e-9);
        assert_abs_diff_eq!(result.kendall_w, result.chi2 / (n * (k - 1.0)), epsilon = 1e-12);
        assert_eq!(result.mean_ranks, vec![1.25, 2.0, 2.75]);
    }

    #[test]
    fn friedman_uniform_ranks_have_low_concordance() {
        // row-wise random permutations: W should hover near zero
        let mut rng = rng_from_seed(99);
        let mut rows = Vec::new();
        for _ in 0..1000 {
            let mut perm = vec![1.0, 2.0, 3.0, 4.0, 5.0];
            crate::rng::shuffle(&mut rng, &mut perm);
            rows.push(perm);
        }
        let result = friedman(&RankTable::new(rows).unwrap()).unwrap();
        assert!(result.kendall_w < 0.05, "W = {}", result.kendall_w);
    }

    #[test]
    fn friedman_rejects_fully_tied_tables() {
        let rows = vec![vec![2.0, 2.0, 2.0]; 4];
        let table = RankTable { ranks: rows };
        assert_eq!(friedman(&table), Err(StatsError::DegenerateTable));
    }

    #[test]
    fn wilcoxon_exact_matches_sign_enumeration() {
        // constant positive difference over 10 pairs
        let x: Vec<f64> = (0..10).map(|i| i as f64 + 1.0).collect();
        let y: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let WilcoxonOutcome::Test { w_plus, p, p_one_sided, exact, .. } =
            wilcoxon_signed_rank(&x, &y).unwrap()
        else {
            panic!("expected a test outcome")
        };
        assert!(exact);
        assert_abs_diff_eq!(w_plus, 55.0);
        assert_abs_diff_eq!(p_one_sided, 1.0 / 1024.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p, 2.0 / 1024.0, epsilon = 1e-12);

        // brute-force oracle over all 2^8 sign assignments with ties
        let x = [3.0, 1.0, 4.0, 1.5, 5.0, 9.0, 2.0, 6.0];
        let y = [2.0, 2.0, 3.0, 1.0, 4.5, 8.0, 3.5, 5.0];
        let diffs: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a - b).collect();
        let ranks = average_ranks(&diffs.iter().map(|d| d.abs()).collect::<Vec<_>>());
        let observed: f64 =
            diffs.iter().zip(&ranks).filter(|(d, _)| **d > 0.0).map(|(_, r)| r).sum();
        let observed_low = observed.min(ranks.iter().sum::<f64>() - observed);
        let mut at_most = 0u32;
        for mask in 0u32..(1 << 8) {
            let w: f64 =
                (0..8).filter(|i| mask & (1 << i) != 0).map(|i| ranks[i as usize]).sum();
            if w <= observed_low + 1e-12 {
                at_most += 1;
            }
        }
        let oracle_one_sided = at_most as f64 / 256.0;
        let WilcoxonOutcome::Test { p, .. } = wilcoxon_signed_rank(&x, &y).unwrap() else {
            panic!("expected a test outcome")
        };
        assert_abs_diff_eq!(p, (2.0 * oracle_one_sided).min(1.0), epsilon = 1e-9);
    }

    #[test]
    fn wilcoxon_guards_zeros_and_sizes() {
        let x = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert_eq!(
            wilcoxon_signed_rank(&x, &x).unwrap(),
            WilcoxonOutcome::NoEvidence { zeros_dropped: 5 }
        );
        assert!(matches!(
            wilcoxon_signed_rank(&x[..4], &x[..4]),
            Err(StatsError::TooFewPairs { .. })
        ));
        assert!(matches!(
            wilcoxon_signed_rank(&x, &x[..4]),
            Err(StatsError::LengthMismatch(5, 4))
        ));
    }

    #[test]
    fn wilcoxon_normal_approximation_for_large_n() {
        // alternating strong/weak positive shift over 30 pairs
        let x: Vec<f64> = (0..30).map(|i| i as f64 + if i % 2 == 0 { 2.0 } else { 0.5 }).collect();
        let y: Vec<f64> = (0..30).map(|i| i as f64).collect();
        let WilcoxonOutcome::Test { p, exact, .. } = wilcoxon_signed_rank(&x, &y).unwrap() else {
            panic!("expected a test outcome")
        };
        assert!(!exact);
        assert!(p < 1e-4, "all-positive differences are extreme evidence, p = {p}");
    }

    #[test]
    fn holm_adjustment_matches_the_step_down_rule() {
        let adjusted = holm_adjust(&[0.01, 0.04, 0.03]);
        assert_eq!(adjusted, vec![0.03, 0.06, 0.06]);
        // never decreases, order preserved, capped at 1
        let adjusted = holm_adjust(&[0.9, 0.5, 0.8]);
        assert!(adjusted.iter().all(|&p| p <= 1.0));
        assert!(adjusted[1] <= adjusted[2] && adjusted[2] <= adjusted[0]);
        assert!(holm_adjust(&[]).is_empty());
    }

    #[test]
    fn wilcoxon_holm_families_skip_no_evidence_entries() {
        let shifted: (Vec<f64>, Vec<f64>) =
            ((0..10).map(|i| i as f64 + 1.0).collect(), (0..10).map(|i| i as f64).collect());
        let flat = (vec![1.0; 10], vec![1.0; 10]);
        let tests = wilcoxon_holm(&[shifted.clone(), flat, shifted]).unwrap();
        assert_eq!(tests.len(), 3);
        assert!(tests[1].p_adjusted.is_none());
        // family of two real tests: each p doubled (both are smallest-rank ties)
        let p0 = tests[0].p_adjusted.unwrap();
        assert_abs_diff_eq!(p0, 2.0 * (2.0 / 1024.0), epsilon = 1e-12);
    }

    #[test]
    fn spearman_agrees_with_a_rank_then_pearson_oracle() {
        let x: Vec<f64> = (0..10).map(|i| i as f64).collect();
        assert_abs_diff_eq!(spearman(&x, &x).unwrap(), 1.0, epsilon = 1e-12);
        let y: Vec<f64> = x.iter().map(|v| -v).collect();
        assert_abs_diff_eq!(spearman(&x, &y).unwrap(), -1.0, epsilon = 1e-12);

        let x = [3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0, 5.0, 3.0];
        let y = [2.0, 7.0, 1.0, 8.0, 2.0, 8.0, 1.0, 8.0, 2.0, 8.0];
        let rx = average_ranks(&x);
        let ry = average_ranks(&y);
        let n = 10.0;
        let mx = rx.iter().sum::<f64>() / n;
        let my = ry.iter().sum::<f64>() / n;
        let cov: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - mx) * (b - my)).sum();
        let sx: f64 = rx.iter().map(|a| (a - mx) * (a - mx)).sum();
        let sy: f64 = ry.iter().map(|b| (b - my) * (b - my)).sum();
        let oracle = cov / (sx * sy).sqrt();
        assert_abs_diff_eq!(spearman(&x, &y).unwrap(), oracle, epsilon = 1e-12);

        assert_eq!(spearman(&[1.0, 1.0], &[1.0, 2.0]), Err(StatsError::DegenerateCorrelation));
    }

    #[test]
    fn bootstrap_median_ci_is_deterministic_and_tight_on_constants() {
        let constant = vec![3.5; 20];
        assert_eq!(bootstrap_median_ci(&constant, 2000, 0.95, 1).unwrap(), (3.5, 3.5));

        let samples: Vec<f64> = (0..40).map(|i| (i % 13) as f64).collect();
        let a = bootstrap_median_ci(&samples, 2000, 0.95, 7).unwrap();
        let b = bootstrap_median_ci(&samples, 2000, 0.95, 7).unwrap();
        assert_eq!(a, b);
        let c = bootstrap_median_ci(&samples, 2000, 0.95, 8).unwrap();
        assert!(a.0 <= median(&samples).unwrap() && median(&samples).unwrap() <= a.1);
        let _ = c;
    }

    #[test]
    fn bootstrap_covers_the_true_median_usually() {
        // 100 samples from a known symmetric distribution; the 95% interval
        // should contain the true median in the vast majority of meta-trials
        let mut hits = 0;
        for seed in 0..200u64 {
            let mut rng = rng_from_seed(seed + 1000);
            let samples: Vec<f64> =
                (0..100).map(|_| rng.random::<f64>() + rng.random::<f64>()).collect();
            let (lo, hi) = bootstrap_median_ci(&samples, 500, 0.95, seed).unwrap();
            if lo <= 1.0 && 1.0 <= hi {
                hits += 1;
            }
        }
        assert!(hits >= 180, "coverage {hits}/200 fell below 90%");
    }

    #[test]
    fn median_handles_both_parities() {
        assert_eq!(median(&[]), None);
        assert_eq!(median(&[2.0]), Some(2.0));
        assert_eq!(median(&[1.0, 2.0, 4.0]), Some(2.0));
        assert_eq!(median(&[1.0, 2.0, 3.0, 10.0]), Some(2.5));
    }
}
