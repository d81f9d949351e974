//! Mann-Whitney U test: exact two-sided p by full enumeration for small
//! tie-free samples, tie-corrected normal approximation otherwise.

use super::normal::two_sided_p;
use super::AnalyticsError;

/// Per-side sample-size cutoff for the exact path; C(16, 8) = 12,870
/// arrangements enumerate instantly.
pub const EXACT_CUTOFF: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestMethod {
    Exact,
    NormalApprox,
}

impl TestMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            TestMethod::Exact => "exact",
            TestMethod::NormalApprox => "normal_approx",
        }
    }
}

/// Result of a rank test: the statistic (U here, W for Shapiro-Wilk), the
/// normal deviate when the approximation was used, and the two-sided p.
#[derive(Debug, Clone)]
pub struct StatTestResult {
    pub statistic: f64,
    pub z: Option<f64>,
    pub p_value: f64,
    pub n1: usize,
    pub n2: usize,
    pub method: TestMethod,
    /// Set when all pooled values were identical; p is reported as 1.
    pub degenerate: bool,
}

/// Midranks of the pooled sample and the tie-group sizes.
fn midranks(x: &[f64], y: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let mut pooled: Vec<(f64, usize)> = x
        .iter()
        .chain(y.iter())
        .copied()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    pooled.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite sample values"));
    let mut ranks = vec![0.0; pooled.len()];
    let mut ties = Vec::new();
    let mut i = 0;
    while i < pooled.len() {
        let mut j = i + 1;
        while j < pooled.len() && pooled[j].0 == pooled[i].0 {
            j += 1;
        }
        let rank = (i + j + 1) as f64 / 2.0;
        for k in i..j {
            ranks[pooled[k].1] = rank;
        }
        if j - i > 1 {
            ties.push(j - i);
        }
        i = j;
    }
    (ranks, ties)
}

fn u_statistic(x_len: usize, ranks: &[f64]) -> f64 {
    let r1: f64 = ranks[..x_len].iter().sum();
    r1 - (x_len * (x_len + 1)) as f64 / 2.0
}

/// U from midrank sums; exact enumeration when both sides are at most
/// [`EXACT_CUTOFF`] and the pooled sample is tie-free, otherwise the
/// tie-corrected normal approximation with continuity correction.
pub fn mann_whitney(x: &[f64], y: &[f64]) -> Result<StatTestResult, AnalyticsError> {
    if x.is_empty() || y.is_empty() {
        return Err(AnalyticsError::EmptySample);
    }
    let (ranks, ties) = midranks(x, y);
    let tie_free = ties.is_empty();
    if x.len() <= EXACT_CUTOFF && y.len() <= EXACT_CUTOFF && tie_free {
        Ok(exact_from_ranks(x.len(), y.len(), &ranks))
    } else {
        Ok(approx_from_ranks(x.len(), y.len(), &ranks, &ties))
    }
}

/// The large-sample path, callable directly (the acceptance comparison of
/// the approximation against enumeration uses this).
pub fn mann_whitney_normal_approx(x: &[f64], y: &[f64]) -> Result<StatTestResult, AnalyticsError> {
    if x.is_empty() || y.is_empty() {
        return Err(AnalyticsError::EmptySample);
    }
    let (ranks, ties) = midranks(x, y);
    Ok(approx_from_ranks(x.len(), y.len(), &ranks, &ties))
}

fn exact_from_ranks(n1: usize, n2: usize, ranks: &[f64]) -> StatTestResult {
    let u1 = u_statistic(n1, ranks);
    let max_u = (n1 * n2) as f64;
    let u_low = u1.min(max_u - u1);
    // Walk every C(n1+n2, n1) assignment of pooled ranks to x in
    // lexicographic order, counting arrangements at least as extreme on
    // either side.
    let n = n1 + n2;
    let mut combo: Vec<usize> = (0..n1).collect();
    let mut extreme = 0u64;
    let mut total = 0u64;
    loop {
        let r1: usize = combo.iter().map(|&i| i + 1).sum();
        let u = r1 as f64 - (n1 * (n1 + 1)) as f64 / 2.0;
        if u.min(max_u - u) <= u_low + 1e-9 {
            extreme += 1;
        }
        total += 1;
        // next lexicographic combination
        let mut i = n1;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if combo[i] != i + n - n1 {
                combo[i] += 1;
                for j in i + 1..n1 {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
            if i == 0 {
                combo.clear();
                break;
            }
        }
        if combo.is_empty() {
            break;
        }
    }
    StatTestResult {
        statistic: u1,
        z: None,
        p_value: (extreme as f64 / total as f64).min(1.0),
        n1,
        n2,
        method: TestMethod::Exact,
        degenerate: false,
    }
}

fn approx_from_ranks(n1: usize, n2: usize, ranks: &[f64], ties: &[usize]) -> StatTestResult {
    let u1 = u_statistic(n1, ranks);
    let n = n1 + n2;
    let mu = (n1 * n2) as f64 / 2.0;
    let tie_term: f64 = ties.iter().map(|&t| (t * t * t - t) as f64).sum();
    let var = (n1 * n2) as f64 / 12.0
        * ((n as f64 + 1.0) - tie_term / (n as f64 * (n as f64 - 1.0)));
    if var <= 0.0 {
        // All pooled values identical.
        return StatTestResult {
            statistic: u1,
            z: Some(0.0),
            p_value: 1.0,
            n1,
            n2,
            method: TestMethod::NormalApprox,
            degenerate: true,
        };
    }
    let d = u1 - mu;
    // 0.5 continuity correction toward the mean.
    let z = if d == 0.0 {
        0.0
    } else {
        (d - 0.5 * d.signum()) / var.sqrt()
    };
    StatTestResult {
        statistic: u1,
        z: Some(z),
        p_value: two_sided_p(z),
        n1,
        n2,
        method: TestMethod::NormalApprox,
        degenerate: false,
    }
}
