//! Soft-margin linear SVM trained with sequential minimal optimization.
//!
//! The solver follows the classic two-variable analytic update scheme: the
//! outer loop alternates full passes with passes over non-bound examples,
//! the first candidate of a pair is a KKT violator, and the second is
//! chosen to maximize |E1 - E2| with deterministic fallbacks. With a linear
//! kernel the weight vector is maintained incrementally, so error values
//! are cheap to compute on demand.

use serde::{Deserialize, Serialize};

use crate::corpus::IssueClass;
use crate::features::{SparseVector, TermDocumentMatrix};

use super::{class_to_sign, ClassifierError, Prediction};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SmoParams {
    /// Box constraint on the dual variables.
    pub c: f64,
    /// KKT violation tolerance.
    pub tol: f64,
    /// Minimum accepted |delta alpha| per step.
    pub step_eps: f64,
    /// Outer-loop pass budget before giving up.
    pub max_passes: usize,
}

impl Default for SmoParams {
    fn default() -> Self {
        SmoParams {
            c: 1.0,
            tol: 1e-3,
            step_eps: 1e-12,
            max_passes: 10_000,
        }
    }
}

/// Dual variables, bias, and the materialized weight vector
/// `w = sum alpha_i y_i x_i`. The decision value is `<w, x> - bias`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LinearSvmModel {
    pub alphas: Vec<f64>,
    pub bias: f64,
    pub weights: Vec<f64>,
    pub c: f64,
    pub tol: f64,
    /// False when the pass budget ran out; the model then holds the best
    /// feasible iterate and callers may escalate the warning.
    pub converged: bool,
    /// Dual objective after every accepted step; non-decreasing.
    #[serde(skip)]
    pub objective_trace: Vec<f64>,
}

struct Solver<'a> {
    cols: &'a [SparseVector],
    y: Vec<f64>,
    alphas: Vec<f64>,
    w: Vec<f64>,
    b: f64,
    diag: Vec<f64>,
    params: &'a SmoParams,
    objective_trace: Vec<f64>,
}

impl<'a> Solver<'a> {
    fn new(matrix: &'a TermDocumentMatrix, params: &'a SmoParams) -> Solver<'a> {
        let cols = matrix.columns();
        let y: Vec<f64> = matrix.classes().iter().map(|c| class_to_sign(*c)).collect();
        let diag = cols.iter().map(SparseVector::norm_sq).collect();
        Solver {
            cols,
            y,
            alphas: vec![0.0; cols.len()],
            w: vec![0.0; matrix.vocab().len()],
            b: 0.0,
            diag,
            params,
            objective_trace: Vec::new(),
        }
    }

    fn decision(&self, i: usize) -> f64 {
        self.cols[i].dot_dense(&self.w) - self.b
    }

    fn error(&self, i: usize) -> f64 {
        self.decision(i) - self.y[i]
    }

    fn is_non_bound(&self, i: usize) -> bool {
        self.alphas[i] > 0.0 && self.alphas[i] < self.params.c
    }

    fn objective(&self) -> f64 {
        let norm_sq: f64 = self.w.iter().map(|w| w * w).sum();
        self.alphas.iter().sum::<f64>() - 0.5 * norm_sq
    }

    fn take_step(&mut self, i1: usize, i2: usize, e2: f64) -> bool {
        if i1 == i2 {
            return false;
        }
        let c = self.params.c;
        let (a1, a2) = (self.alphas[i1], self.alphas[i2]);
        let (y1, y2) = (self.y[i1], self.y[i2]);
        let e1 = self.error(i1);
        let s = y1 * y2;
        let (lo, hi) = if (y1 - y2).abs() > f64::EPSILON {
            ((a2 - a1).max(0.0), (c + a2 - a1).min(c))
        } else {
            ((a1 + a2 - c).max(0.0), (a1 + a2).min(c))
        };
        if lo >= hi {
            return false;
        }
        let k12 = self.cols[i1].dot(&self.cols[i2]);
        let eta = self.diag[i1] + self.diag[i2] - 2.0 * k12;
        // Objective change along the constraint line for a move t = da2:
        //   dW(t) = t * y2 * (e1 - e2) - 0.5 * t^2 * eta
        let slope = y2 * (e1 - e2);
        let a2_new = if eta > 0.0 {
            (a2 + slope / eta).clamp(lo, hi)
        } else {
            let gain = |t: f64| t * slope - 0.5 * t * t * eta;
            let (gl, gh) = (gain(lo - a2), gain(hi - a2));
            if gl > gh + 1e-12 {
                lo
            } else if gh > gl + 1e-12 {
                hi
            } else {
                return false;
            }
        };
        let t = a2_new - a2;
        if t.abs() <= self.params.step_eps {
            return false;
        }
        let a1_new = (a1 + s * (a2 - a2_new)).clamp(0.0, c);
        let (d1, d2) = (a1_new - a1, a2_new - a2);
        for &(ix, v) in self.cols[i1].entries() {
            self.w[ix as usize] += y1 * d1 * v;
        }
        for &(ix, v) in self.cols[i2].entries() {
            self.w[ix as usize] += y2 * d2 * v;
        }
        let k11 = self.diag[i1];
        let k22 = self.diag[i2];
        let b1 = e1 + y1 * d1 * k11 + y2 * d2 * k12 + self.b;
        let b2 = e2 + y1 * d1 * k12 + y2 * d2 * k22 + self.b;
        self.b = if a1_new > 0.0 && a1_new < c {
            b1
        } else if a2_new > 0.0 && a2_new < c {
            b2
        } else {
            0.5 * (b1 + b2)
        };
        self.alphas[i1] = a1_new;
        self.alphas[i2] = a2_new;
        let obj = self.objective();
        if let Some(&prev) = self.objective_trace.last() {
            debug_assert!(obj >= prev - 1e-9, "dual objective decreased: {prev} -> {obj}");
        }
        self.objective_trace.push(obj);
        true
    }

    fn examine(&mut self, i2: usize) -> bool {
        let y2 = self.y[i2];
        let a2 = self.alphas[i2];
        let e2 = self.error(i2);
        let r2 = e2 * y2;
        let violates = (r2 < -self.params.tol && a2 < self.params.c)
            || (r2 > self.params.tol && a2 > 0.0);
        if !violates {
            return false;
        }
        // Second choice: the non-bound example with the largest |E1 - E2|.
        let mut best: Option<(usize, f64)> = None;
        for i in 0..self.cols.len() {
            if i != i2 && self.is_non_bound(i) {
                let gap = (self.error(i) - e2).abs();
                if best.is_none_or(|(_, g)| gap > g) {
                    best = Some((i, gap));
                }
            }
        }
        if let Some((i1, _)) = best {
            if self.take_step(i1, i2, e2) {
                return true;
            }
        }
        // Fallbacks: sweep non-bound examples, then everything. Fixed start
        // keeps training deterministic.
        for i1 in 0..self.cols.len() {
            if self.is_non_bound(i1) && self.take_step(i1, i2, e2) {
                return true;
            }
        }
        for i1 in 0..self.cols.len() {
            if self.take_step(i1, i2, e2) {
                return true;
            }
        }
        false
    }

    fn solve(mut self) -> LinearSvmModel {
        let n = self.cols.len();
        let mut examine_all = true;
        let mut passes = 0usize;
        let mut converged = false;
        loop {
            let mut changed = 0usize;
            if examine_all {
                for i in 0..n {
                    changed += usize::from(self.examine(i));
                }
            } else {
                for i in 0..n {
                    if self.is_non_bound(i) {
                        changed += usize::from(self.examine(i));
                    }
                }
            }
            passes += 1;
            if examine_all {
                if changed == 0 {
                    converged = true;
                    break;
                }
                examine_all = false;
            } else if changed == 0 {
                examine_all = true;
            }
            if passes >= self.params.max_passes {
                break;
            }
        }
        // Rebuild w from the duals to clear accumulated drift, then settle
        // the bias from the support-vector conditions.
        let mut w = vec![0.0; self.w.len()];
        for (i, &a) in self.alphas.iter().enumerate() {
            if a > 0.0 {
                for &(ix, v) in self.cols[i].entries() {
                    w[ix as usize] += a * self.y[i] * v;
                }
            }
        }
        let r = |i: usize| self.cols[i].dot_dense(&w) - self.y[i];
        let non_bound: Vec<usize> = (0..n).filter(|&i| self.is_non_bound(i)).collect();
        let bias = if !non_bound.is_empty() {
            non_bound.iter().map(|&i| r(i)).sum::<f64>() / non_bound.len() as f64
        } else {
            // All duals at a bound: the KKT conditions leave an interval of
            // feasible biases; take its midpoint.
            let mut lo = f64::NEG_INFINITY;
            let mut hi = f64::INFINITY;
            for i in 0..n {
                let at_c = self.alphas[i] >= self.params.c;
                let pos = self.y[i] > 0.0;
                if (pos && at_c) || (!pos && !at_c) {
                    lo = lo.max(r(i));
                } else {
                    hi = hi.min(r(i));
                }
            }
            match (lo.is_finite(), hi.is_finite()) {
                (true, true) => 0.5 * (lo + hi),
                (true, false) => lo,
                (false, true) => hi,
                (false, false) => 0.0,
            }
        };
        LinearSvmModel {
            alphas: self.alphas,
            bias,
            weights: w,
            c: self.params.c,
            tol: self.params.tol,
            converged,
            objective_trace: self.objective_trace,
        }
    }
}

/// Solves the soft-margin dual over the matrix columns, labels mapped to
/// {+1 = wontfix, -1 = non-wontfix}. A run that exhausts the pass budget
/// returns the best feasible iterate with `converged = false`.
pub fn train_smo(
    matrix: &TermDocumentMatrix,
    params: &SmoParams,
) -> Result<LinearSvmModel, ClassifierError> {
    let (n_w, n_n) = matrix.class_counts();
    if n_w == 0 || n_n == 0 {
        return Err(ClassifierError::SingleClass);
    }
    Ok(Solver::new(matrix, params).solve())
}

impl LinearSvmModel {
    pub fn decision_value(&self, v: &SparseVector) -> f64 {
        v.dot_dense(&self.weights) - self.bias
    }

    /// Wontfix iff the decision value is strictly positive; exactly zero
    /// resolves to the majority class, non-wontfix.
    pub fn predict(&self, v: &SparseVector) -> Prediction {
        let score = self.decision_value(v);
        let class = if score > 0.0 {
            IssueClass::Wontfix
        } else {
            IssueClass::NonWontfix
        };
        Prediction { class, score }
    }

    /// Largest KKT violation over the training matrix, in the tolerance
    /// scale of the solver; at convergence this is not above zero (modulo
    /// float slack).
    pub fn max_kkt_violation(&self, matrix: &TermDocumentMatrix) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, col) in matrix.columns().iter().enumerate() {
            let y = class_to_sign(matrix.classes()[i]);
            let r = y * (self.decision_value(col) - y);
            let a = self.alphas[i];
            if a < self.c {
                worst = worst.max(-r - self.tol);
            }
            if a > 0.0 {
                worst = worst.max(r - self.tol);
            }
        }
        worst
    }
}
