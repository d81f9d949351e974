//! Shapiro-Wilk W test for normality, after Royston's AS R94 formulation
//! of the order-statistic coefficient approximation (uncensored samples,
//! 3 <= n <= 5000).

use super::mann_whitney::{StatTestResult, TestMethod};
use super::normal::{alnorm, ppnd};
use super::AnalyticsError;

const C1: [f64; 6] = [0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056];
const C2: [f64; 6] = [0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633];
const C3: [f64; 4] = [0.5440, -0.39978, 0.025054, -6.714e-4];
const C4: [f64; 4] = [1.3822, -0.77857, 0.062767, -2.0322e-3];
const C5: [f64; 4] = [-1.5861, -0.31082, -0.083751, 3.8915e-3];
const C6: [f64; 3] = [-0.4803, -0.082676, 3.0302e-3];
const G: [f64; 2] = [-2.273, 0.459];

/// Ascending-order polynomial c[0] + c[1] x + ... over the given slice.
fn poly(c: &[f64], x: f64) -> f64 {
    let mut res = c[0];
    if c.len() == 1 {
        return res;
    }
    let mut p = x * c[c.len() - 1];
    for i in (1..c.len() - 1).rev() {
        p = (p + c[i]) * x;
    }
    res += p;
    res
}

/// W statistic and two-sided-free p-value (upper tail probability of the
/// normalized transform, as the algorithm defines it). The sample need not
/// be sorted.
pub fn shapiro_wilk(sample: &[f64]) -> Result<StatTestResult, AnalyticsError> {
    let n = sample.len();
    if !(3..=5000).contains(&n) {
        return Err(AnalyticsError::SampleSize { n, lo: 3, hi: 5000 });
    }
    let mut x = sample.to_vec();
    x.sort_by(|a, b| a.partial_cmp(b).expect("finite sample values"));
    let range = x[n - 1] - x[0];
    if range < 1e-19 {
        return Err(AnalyticsError::DegenerateVariance);
    }

    let an = n as f64;
    let nn2 = n / 2;
    let mut a = vec![0.0f64; nn2];
    if n == 3 {
        a[0] = std::f64::consts::FRAC_1_SQRT_2;
    } else {
        let an25 = an + 0.25;
        let mut summ2 = 0.0;
        for (i, ai) in a.iter_mut().enumerate() {
            *ai = ppnd((i as f64 + 1.0 - 0.375) / an25);
            summ2 += *ai * *ai;
        }
        summ2 *= 2.0;
        let ssumm2 = summ2.sqrt();
        let rsn = 1.0 / an.sqrt();
        let a1 = poly(&C1, rsn) - a[0] / ssumm2;
        let (start, fac) = if n > 5 {
            let a2 = -a[1] / ssumm2 + poly(&C2, rsn);
            let fac = ((summ2 - 2.0 * a[0] * a[0] - 2.0 * a[1] * a[1])
                / (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2))
                .sqrt();
            a[1] = a2;
            (2, fac)
        } else {
            let fac = ((summ2 - 2.0 * a[0] * a[0]) / (1.0 - 2.0 * a1 * a1)).sqrt();
            (1, fac)
        };
        a[0] = a1;
        for ai in a.iter_mut().skip(start) {
            *ai = -*ai / fac;
        }
    }

    // Scaled accumulation of the coefficient/sample cross products.
    let coeff = |i: usize| -> f64 {
        // signed coefficient for position i in the sorted sample
        let j = n - 1 - i;
        if i < j {
            -a[i]
        } else if i > j {
            a[j]
        } else {
            0.0
        }
    };
    let mut sx = 0.0;
    let mut sa = 0.0;
    for (i, xi) in x.iter().enumerate() {
        sx += xi / range;
        sa += coeff(i);
    }
    sx /= an;
    sa /= an;
    let mut ssa = 0.0;
    let mut ssx = 0.0;
    let mut sax = 0.0;
    for (i, xi) in x.iter().enumerate() {
        let asa = coeff(i) - sa;
        let xsx = xi / range - sx;
        ssa += asa * asa;
        ssx += xsx * xsx;
        sax += asa * xsx;
    }
    let ssassx = (ssa * ssx).sqrt();
    let w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
    let w = 1.0 - w1;

    if n == 3 {
        let w = w.max(0.75);
        let pi6 = 6.0 / std::f64::consts::PI;
        let pw = (1.0 - pi6 * w.sqrt().acos()).clamp(0.0, 1.0);
        return Ok(StatTestResult {
            statistic: w,
            z: None,
            p_value: pw,
            n1: n,
            n2: 0,
            method: TestMethod::Exact,
            degenerate: false,
        });
    }

    let y = w1.ln();
    let (m, s, yv) = if n <= 11 {
        let gamma = poly(&G, an);
        if y >= gamma {
            return Ok(StatTestResult {
                statistic: w,
                z: None,
                p_value: 1e-19,
                n1: n,
                n2: 0,
                method: TestMethod::NormalApprox,
                degenerate: false,
            });
        }
        (poly(&C3, an), poly(&C4, an).exp(), -(gamma - y).ln())
    } else {
        let xx = an.ln();
        (poly(&C5, xx), poly(&C6, xx).exp(), y)
    };
    let z = (yv - m) / s;
    let pw = alnorm(z, true);
    Ok(StatTestResult {
        statistic: w,
        z: Some(z),
        p_value: pw,
        n1: n,
        n2: 0,
        method: TestMethod::NormalApprox,
        degenerate: false,
    })
}
