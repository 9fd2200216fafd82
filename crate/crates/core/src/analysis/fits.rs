//! Scaling fits: linear-in-sqrt, power law, and logistic success models.

use std::collections::BTreeMap;

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum FitError {
    #[error("need at least {need} points, got {got}")]
    TooFewPoints { need: usize, got: usize },
    #[error("lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("power-law fits need strictly positive data")]
    NonPositiveData,
    #[error("logistic fit needs both outcome classes")]
    SingleClass,
    #[error("all predictor values are equal")]
    DegeneratePredictor,
}

/// A fitted model: named coefficients plus a goodness-of-fit in [0, 1]
/// (R^2 for least squares, McFadden pseudo-R^2 for the logistic model).
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub model: String,
    pub params: BTreeMap<String, f64>,
    pub goodness: f64,
    /// Set when the logistic data was perfectly separated: coefficients are
    /// not meaningful, but the threshold (midpoint of the gap) is.
    pub separated: bool,
}

impl FitResult {
    fn new(model: &str, params: &[(&str, f64)], goodness: f64) -> Self {
        FitResult {
            model: model.to_owned(),
            params: params.iter().map(|(k, v)| ((*k).to_owned(), *v)).collect(),
            goodness: goodness.clamp(0.0, 1.0),
            separated: false,
        }
    }

    pub fn param(&self, name: &str) -> f64 {
        self.params[name]
    }
}

/// Ordinary least squares of y on x. Returns (slope, intercept, r2).
/// A constant y yields slope 0 and, by convention, r2 = 0.
fn least_squares(x: &[f64], y: &[f64]) -> Result<(f64, f64, f64), FitError> {
    let n = x.len() as f64;
    let mean_x = x.iter().sum::<f64>() / n;
    let mean_y = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (a, b) in x.iter().zip(y) {
        sxx += (a - mean_x) * (a - mean_x);
        sxy += (a - mean_x) * (b - mean_y);
    }
    if sxx == 0.0 {
        return Err(FitError::DegeneratePredictor);
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let mut ss_res = 0.0;
    let mut ss_tot = 0.0;
    for (a, b) in x.iter().zip(y) {
        let fitted = slope * a + intercept;
        ss_res += (b - fitted) * (b - fitted);
        ss_tot += (b - mean_y) * (b - mean_y);
    }
    let r2 = if ss_tot == 0.0 { 0.0 } else { 1.0 - ss_res / ss_tot };
    Ok((slope, intercept, r2))
}

fn check_points(xs: usize, ys: usize, need: usize) -> Result<(), FitError> {
    if xs != ys {
        return Err(FitError::LengthMismatch(xs, ys));
    }
    if xs < need {
        return Err(FitError::TooFewPoints { need, got: xs });
    }
    Ok(())
}

/// Fits `y ~= a * sqrt(x) + b`; `x` is typically an edge count and `y` a mean
/// chain length.
pub fn fit_sqrt_linear(edges: &[f64], acl: &[f64]) -> Result<FitResult, FitError> {
    check_points(edges.len(), acl.len(), 3)?;
    let roots: Vec<f64> = edges.iter().map(|e| e.sqrt()).collect();
    let (a, b, r2) = least_squares(&roots, acl)?;
    Ok(FitResult::new("sqrt_linear", &[("a", a), ("b", b)], r2))
}

/// Fits `y ~= c * x^k` by linear regression in log-log space.
pub fn fit_powerlaw(x: &[f64], y: &[f64]) -> Result<FitResult, FitError> {
    check_points(x.len(), y.len(), 3)?;
    if x.iter().chain(y).any(|v| *v <= 0.0) {
        return Err(FitError::NonPositiveData);
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let (slope, intercept, r2) = least_squares(&lx, &ly)?;
    Ok(FitResult::new("powerlaw", &[("exponent", slope), ("prefactor", intercept.exp())], r2))
}

const LOGISTIC_TOL: f64 = 1e-8;
const LOGISTIC_MAX_ITERS: usize = 100;

/// Maximum-likelihood logistic regression of success on log(edges), via
/// iteratively reweighted least squares. Reports the 50% threshold as an
/// edge count. Perfectly separated data short-circuits into a flagged result
/// whose threshold is the middle of the separating gap.
pub fn fit_logistic_success(edges: &[f64], success: &[bool]) -> Result<FitResult, FitError> {
    check_points(edges.len(), success.len(), 3)?;
    if edges.iter().any(|e| *e <= 0.0) {
        return Err(FitError::NonPositiveData);
    }
    let succ = success.iter().filter(|s| **s).count();
    if succ == 0 || succ == success.len() {
        return Err(FitError::SingleClass);
    }
    let x: Vec<f64> = edges.iter().map(|e| e.ln()).collect();

    // success on small graphs, failure on large ones (or the reverse) with a
    // clean gap: infinite-slope optimum, so report the boundary instead
    let max_success = x
        .iter()
        .zip(success)
        .filter(|(_, s)| **s)
        .map(|(v, _)| *v)
        .fold(f64::NEG_INFINITY, f64::max);
    let min_failure = x
        .iter()
        .zip(success)
        .filter(|(_, s)| !**s)
        .map(|(v, _)| *v)
        .fold(f64::INFINITY, f64::min);
    let min_success = x
        .iter()
        .zip(success)
        .filter(|(_, s)| **s)
        .map(|(v, _)| *v)
        .fold(f64::INFINITY, f64::min);
    let max_failure = x
        .iter()
        .zip(success)
        .filter(|(_, s)| !**s)
        .map(|(v, _)| *v)
        .fold(f64::NEG_INFINITY, f64::max);
    let gap_mid = if max_success < min_failure {
        Some((max_success + min_failure) / 2.0)
    } else if max_failure < min_success {
        Some((max_failure + min_success) / 2.0)
    } else {
        None
    };
    if let Some(mid) = gap_mid {
        let mut result = FitResult::new("logistic", &[("midpoint_edges", mid.exp())], 1.0);
        result.separated = true;
        return Ok(result);
    }

    let y: Vec<f64> = success.iter().map(|s| if *s { 1.0 } else { 0.0 }).collect();
    let (mut b0, mut b1) = (0.0f64, 0.0f64);
    for _ in 0..LOGISTIC_MAX_ITERS {
        // one weighted least-squares step on the working response
        let mut s_w = 0.0;
        let mut s_wx = 0.0;
        let mut s_wxx = 0.0;
        let mut s_wz = 0.0;
        let mut s_wxz = 0.0;
        for (xi, yi) in x.iter().zip(&y) {
            let eta = b0 + b1 * xi;
            let mu = 1.0 / (1.0 + (-eta).exp());
            let w = (mu * (1.0 - mu)).max(1e-10);
            let z = eta + (yi - mu) / w;
            s_w += w;
            s_wx += w * xi;
            s_wxx += w * xi * xi;
            s_wz += w * z;
            s_wxz += w * xi * z;
        }
        let det = s_w * s_wxx - s_wx * s_wx;
        if det.abs() < 1e-12 {
            return Err(FitError::DegeneratePredictor);
        }
        let nb0 = (s_wxx * s_wz - s_wx * s_wxz) / det;
        let nb1 = (s_w * s_wxz - s_wx * s_wz) / det;
        let delta = (nb0 - b0).abs().max((nb1 - b1).abs());
        b0 = nb0;
        b1 = nb1;
        if delta < LOGISTIC_TOL {
            break;
        }
    }

    // McFadden pseudo-R^2 against the intercept-only model
    let p_null = succ as f64 / success.len() as f64;
    let mut ll = 0.0;
    let mut ll_null = 0.0;
    for (xi, yi) in x.iter().zip(&y) {
        let mu = 1.0 / (1.0 + (-(b0 + b1 * xi)).exp());
        let mu = mu.clamp(1e-12, 1.0 - 1e-12);
        ll += yi * mu.ln() + (1.0 - yi) * (1.0 - mu).ln();
        ll_null += yi * p_null.ln() + (1.0 - yi) * (1.0 - p_null).ln();
    }
    let pseudo_r2 = 1.0 - ll / ll_null;
    let midpoint = (-b0 / b1).exp();
    Ok(FitResult::new(
        "logistic",
        &[("intercept", b0), ("slope", b1), ("midpoint_edges", midpoint)],
        pseudo_r2,
    ))
}
