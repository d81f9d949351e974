//! Multinomial Naive Bayes over tf-idf mass with Laplace smoothing.

use serde::{Deserialize, Serialize};

use crate::corpus::IssueClass;
use crate::features::{SparseVector, TermDocumentMatrix};

use super::{ClassifierError, Prediction};

/// Log priors and per-class per-term log-likelihoods from smoothed tf-idf
/// mass. All arithmetic stays in log space.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NaiveBayesModel {
    pub alpha: f64,
    pub log_prior: [f64; 2],
    /// Dense log-likelihood tables over the vocabulary, `[wontfix, non]`.
    pub log_lik: [Vec<f64>; 2],
}

const WONTFIX: usize = 0;
const NON_WONTFIX: usize = 1;

fn class_index(c: IssueClass) -> usize {
    match c {
        IssueClass::Wontfix => WONTFIX,
        IssueClass::NonWontfix => NON_WONTFIX,
    }
}

/// Trains the model: `prior(c) = n_c / n`, `likelihood(t|c) = (alpha +
/// mass(t, c)) / (alpha |V| + mass(c))` where mass is summed tf-idf weight.
pub fn train_nb(matrix: &TermDocumentMatrix, alpha: f64) -> Result<NaiveBayesModel, ClassifierError> {
    let (n_wontfix, n_non) = matrix.class_counts();
    if n_wontfix == 0 || n_non == 0 {
        return Err(ClassifierError::SingleClass);
    }
    let n_terms = matrix.vocab().len();
    let mut mass = [vec![0.0f64; n_terms], vec![0.0f64; n_terms]];
    for (col, class) in matrix.columns().iter().zip(matrix.classes()) {
        let table = &mut mass[class_index(*class)];
        for &(ix, w) in col.entries() {
            table[ix as usize] += w;
        }
    }
    let n = (n_wontfix + n_non) as f64;
    let log_prior = [
        (n_wontfix as f64 / n).ln(),
        (n_non as f64 / n).ln(),
    ];
    let log_lik = [WONTFIX, NON_WONTFIX].map(|c| {
        let total: f64 = mass[c].iter().sum();
        let denom = (alpha * n_terms as f64 + total).ln();
        mass[c].iter().map(|&m| (alpha + m).ln() - denom).collect()
    });
    Ok(NaiveBayesModel {
        alpha,
        log_prior,
        log_lik,
    })
}

impl NaiveBayesModel {
    /// Per-class posterior log-score for a vector.
    pub fn log_score(&self, v: &SparseVector, class: IssueClass) -> f64 {
        let c = class_index(class);
        let mut s = self.log_prior[c];
        for &(ix, w) in v.entries() {
            if let Some(ll) = self.log_lik[c].get(ix as usize) {
                s += w * ll;
            }
        }
        s
    }

    /// Argmax of the class log-scores. Ties go to the class with the larger
    /// prior, then to non-wontfix. The score is the wontfix-minus-non gap.
    pub fn predict(&self, v: &SparseVector) -> Prediction {
        let s_w = self.log_score(v, IssueClass::Wontfix);
        let s_n = self.log_score(v, IssueClass::NonWontfix);
        let class = if s_w > s_n {
            IssueClass::Wontfix
        } else if s_w < s_n {
            IssueClass::NonWontfix
        } else if self.log_prior[WONTFIX] > self.log_prior[NON_WONTFIX] {
            IssueClass::Wontfix
        } else {
            IssueClass::NonWontfix
        };
        Prediction {
            class,
            score: s_w - s_n,
        }
    }
}
