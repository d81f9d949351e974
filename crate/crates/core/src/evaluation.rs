//! Holdout and k-fold evaluation: confusion matrices, per-class and
//! support-weighted precision/recall/F-measure.

use std::collections::HashMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classifiers::{
    train_j48, train_nb, train_smo, ClassifierError, ModelBody, ModelKind, SmoParams, TreeParams,
};
use crate::corpus::{IssueClass, LabeledCorpus};
use crate::features::{
    vectorize, FeatureError, TermDocumentMatrix, VocabFitMode, Vocabulary, WeightingScheme,
};
use crate::textprep::{Pipeline, TokenStream};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("nothing to evaluate (zero instances)")]
    EmptyEvaluation,
    #[error("class {class} has {count} members, fewer than the {k} folds")]
    TooFewInstances {
        class: &'static str,
        count: usize,
        k: usize,
    },
    #[error(transparent)]
    Classifier(#[from] ClassifierError),
    #[error(transparent)]
    Feature(#[from] FeatureError),
}

/// Counts with actual wontfix on the first row: `tp fn / fp tn`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub fp: u64,
    pub tn: u64,
}

impl ConfusionMatrix {
    pub fn new(tp: u64, fn_: u64, fp: u64, tn: u64) -> ConfusionMatrix {
        ConfusionMatrix { tp, fn_, fp, tn }
    }

    pub fn zero() -> ConfusionMatrix {
        ConfusionMatrix::new(0, 0, 0, 0)
    }

    pub fn total(&self) -> u64 {
        self.tp + self.fn_ + self.fp + self.tn
    }

    pub fn add(&mut self, actual: IssueClass, predicted: IssueClass) {
        match (actual, predicted) {
            (IssueClass::Wontfix, IssueClass::Wontfix) => self.tp += 1,
            (IssueClass::Wontfix, IssueClass::NonWontfix) => self.fn_ += 1,
            (IssueClass::NonWontfix, IssueClass::Wontfix) => self.fp += 1,
            (IssueClass::NonWontfix, IssueClass::NonWontfix) => self.tn += 1,
        }
    }

    pub fn merge(&mut self, other: &ConfusionMatrix) {
        self.tp += other.tp;
        self.fn_ += other.fn_;
        self.fp += other.fp;
        self.tn += other.tn;
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
    pub support: u64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct WeightedMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
}

/// Everything a run reports: the matrix, per-class and weighted metrics,
/// and the configuration that produced them.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub matrix: ConfusionMatrix,
    pub wontfix: ClassMetrics,
    pub non_wontfix: ClassMetrics,
    pub weighted: WeightedMetrics,
    pub config: ReportConfig,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
    /// Per-fold summaries, present for cross-validation runs.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub folds: Vec<FoldSummary>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FoldSummary {
    pub fold: usize,
    pub matrix: ConfusionMatrix,
    pub weighted: WeightedMetrics,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ReportConfig {
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vocab_fit: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weighting: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub folds: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fraction: Option<f64>,
}

fn ratio(num: u64, den: u64, flags: &mut Vec<String>, what: &str) -> f64 {
    if den == 0 {
        flags.push(format!("{what} undefined (0/0), reported as 0"));
        0.0
    } else {
        num as f64 / den as f64
    }
}

fn f_measure(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

/// Per-class precision/recall/F with the 0/0 = 0 convention (flagged),
/// weighted by class support. Weighted recall equals accuracy by algebra;
/// this is asserted on every report.
pub fn metrics_from_confusion(
    cm: ConfusionMatrix,
    config: ReportConfig,
) -> Result<EvaluationReport, EvalError> {
    let total = cm.total();
    if total == 0 {
        return Err(EvalError::EmptyEvaluation);
    }
    let mut flags = Vec::new();
    let sup_w = cm.tp + cm.fn_;
    let sup_n = cm.fp + cm.tn;
    let p_w = ratio(cm.tp, cm.tp + cm.fp, &mut flags, "wontfix precision");
    let r_w = ratio(cm.tp, cm.tp + cm.fn_, &mut flags, "wontfix recall");
    let p_n = ratio(cm.tn, cm.tn + cm.fn_, &mut flags, "non_wontfix precision");
    let r_n = ratio(cm.tn, cm.tn + cm.fp, &mut flags, "non_wontfix recall");
    let f_w = f_measure(p_w, r_w);
    let f_n = f_measure(p_n, r_n);
    let t = total as f64;
    let weighted = WeightedMetrics {
        precision: (sup_w as f64 * p_w + sup_n as f64 * p_n) / t,
        recall: (sup_w as f64 * r_w + sup_n as f64 * r_n) / t,
        f_measure: (sup_w as f64 * f_w + sup_n as f64 * f_n) / t,
    };
    let accuracy = (cm.tp + cm.tn) as f64 / t;
    assert!(
        (weighted.recall - accuracy).abs() < 1e-12 || sup_w == 0 || sup_n == 0,
        "weighted recall must equal accuracy"
    );
    Ok(EvaluationReport {
        matrix: cm,
        wontfix: ClassMetrics {
            precision: p_w,
            recall: r_w,
            f_measure: f_w,
            support: sup_w,
        },
        non_wontfix: ClassMetrics {
            precision: p_n,
            recall: r_n,
            f_measure: f_n,
            support: sup_n,
        },
        weighted,
        config,
        flags,
        folds: Vec::new(),
    })
}

impl EvaluationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Flat key/value rows for plotting.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        out.push_str("metric\tclass\tvalue\n");
        for (name, m) in [("wontfix", &self.wontfix), ("non_wontfix", &self.non_wontfix)] {
            out.push_str(&format!("precision\t{name}\t{}\n", m.precision));
            out.push_str(&format!("recall\t{name}\t{}\n", m.recall));
            out.push_str(&format!("f_measure\t{name}\t{}\n", m.f_measure));
            out.push_str(&format!("support\t{name}\t{}\n", m.support));
        }
        out.push_str(&format!("precision\tweighted\t{}\n", self.weighted.precision));
        out.push_str(&format!("recall\tweighted\t{}\n", self.weighted.recall));
        out.push_str(&format!("f_measure\tweighted\t{}\n", self.weighted.f_measure));
        out
    }
}

impl fmt::Display for EvaluationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "confusion matrix (rows = actual):")?;
        writeln!(f, "                 predicted wontfix  predicted non_wontfix")?;
        writeln!(f, "  wontfix        {:>17}  {:>21}", self.matrix.tp, self.matrix.fn_)?;
        writeln!(f, "  non_wontfix    {:>17}  {:>21}", self.matrix.fp, self.matrix.tn)?;
        writeln!(f, "class        precision  recall  f-measure  support")?;
        for (name, m) in [("wontfix", &self.wontfix), ("non_wontfix", &self.non_wontfix)] {
            writeln!(
                f,
                "{name:<12} {:>9.3}  {:>6.3}  {:>9.3}  {:>7}",
                m.precision, m.recall, m.f_measure, m.support
            )?;
        }
        writeln!(
            f,
            "weighted     {:>9.3}  {:>6.3}  {:>9.3}",
            self.weighted.precision, self.weighted.recall, self.weighted.f_measure
        )?;
        for flag in &self.flags {
            writeln!(f, "note: {flag}")?;
        }
        Ok(())
    }
}

/// Hyperparameters for all three model kinds; each training run reads the
/// slice it needs.
#[derive(Debug, Clone)]
pub struct Hyperparameters {
    pub nb_alpha: f64,
    pub smo: SmoParams,
    pub tree: TreeParams,
}

impl Default for Hyperparameters {
    fn default() -> Self {
        Hyperparameters {
            nb_alpha: 1.0,
            smo: SmoParams::default(),
            tree: TreeParams::default(),
        }
    }
}

pub fn train_model(
    kind: ModelKind,
    matrix: &TermDocumentMatrix,
    hp: &Hyperparameters,
) -> Result<ModelBody, ClassifierError> {
    Ok(match kind {
        ModelKind::NaiveBayes => ModelBody::NaiveBayes(train_nb(matrix, hp.nb_alpha)?),
        ModelKind::Smo => ModelBody::Smo(train_smo(matrix, &hp.smo)?),
        ModelKind::J48 => ModelBody::J48(train_j48(matrix, &hp.tree)?),
    })
}

/// Preprocesses every issue of a corpus into `(id, tokens, class)` rows.
pub fn preprocess_corpus(
    pipeline: &Pipeline,
    corpus: &LabeledCorpus,
) -> Vec<(String, TokenStream, IssueClass)> {
    corpus
        .issues()
        .iter()
        .map(|i| {
            (
                i.id.clone(),
                pipeline.preprocess(&i.title, &i.body),
                corpus.class_of(&i.id).expect("classed on load"),
            )
        })
        .collect()
}

fn not_converged(body: &ModelBody) -> bool {
    matches!(body, ModelBody::Smo(m) if !m.converged)
}

pub struct EvalSettings {
    pub kind: ModelKind,
    pub hp: Hyperparameters,
    pub seed: u64,
    pub fit_mode: VocabFitMode,
    pub weighting: WeightingScheme,
}

/// Fits the vocabulary per the configured mode, trains on the training
/// corpus, scores the test corpus, and aggregates one report.
pub fn evaluate_holdout(
    train: &LabeledCorpus,
    test: &LabeledCorpus,
    settings: &EvalSettings,
) -> Result<EvaluationReport, EvalError> {
    if test.is_empty() {
        return Err(EvalError::EmptyEvaluation);
    }
    let pipeline = Pipeline::new();
    let train_docs = preprocess_corpus(&pipeline, train);
    let test_docs = preprocess_corpus(&pipeline, test);
    let vocab = match settings.fit_mode {
        VocabFitMode::TrainOnly => {
            let streams: Vec<TokenStream> = train_docs.iter().map(|(_, t, _)| t.clone()).collect();
            Vocabulary::fit(&streams, 1)?
        }
        VocabFitMode::FullCorpus => {
            let streams: Vec<TokenStream> = train_docs
                .iter()
                .chain(test_docs.iter())
                .map(|(_, t, _)| t.clone())
                .collect();
            Vocabulary::fit(&streams, 1)?
        }
    };
    let matrix = TermDocumentMatrix::from_token_streams(vocab, settings.weighting, &train_docs);
    let body = train_model(settings.kind, &matrix, &settings.hp)?;
    let mut cm = ConfusionMatrix::zero();
    for (_, tokens, actual) in &test_docs {
        let v = vectorize(tokens, matrix.vocab(), settings.weighting);
        cm.add(*actual, body.predict(&v).class);
    }
    let config = ReportConfig {
        mode: "holdout".into(),
        model: Some(settings.kind.as_str().into()),
        seed: Some(settings.seed),
        vocab_fit: Some(settings.fit_mode.as_str().into()),
        weighting: Some(settings.weighting.as_str().into()),
        folds: None,
        fraction: None,
    };
    let mut report = metrics_from_confusion(cm, config)?;
    if not_converged(&body) {
        report.flags.push("smo did not converge within the pass budget".into());
    }
    Ok(report)
}

/// Stratified fold assignment: per-class round-robin over a seeded
/// shuffle. Fold sizes per class differ by at most one.
pub fn stratified_fold_indices(
    classes: &[IssueClass],
    k: usize,
    seed: u64,
) -> Result<Vec<Vec<usize>>, EvalError> {
    let mut by_class: HashMap<IssueClass, Vec<usize>> = HashMap::new();
    for (i, c) in classes.iter().enumerate() {
        by_class.entry(*c).or_default().push(i);
    }
    for class in [IssueClass::Wontfix, IssueClass::NonWontfix] {
        let count = by_class.get(&class).map_or(0, Vec::len);
        if count < k {
            return Err(EvalError::TooFewInstances {
                class: class.as_str(),
                count,
                k,
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut folds = vec![Vec::new(); k];
    for class in [IssueClass::Wontfix, IssueClass::NonWontfix] {
        let mut members = by_class.remove(&class).unwrap_or_default();
        members.shuffle(&mut rng);
        for (i, idx) in members.into_iter().enumerate() {
            folds[i % k].push(idx);
        }
    }
    for fold in &mut folds {
        fold.sort_unstable();
    }
    Ok(folds)
}

/// Stratified k-fold cross-validation. Fold predictions are pooled into a
/// single confusion matrix (micro aggregation); per-fold summaries ride
/// along for transparency.
pub fn cross_validate(
    corpus: &LabeledCorpus,
    k: usize,
    settings: &EvalSettings,
) -> Result<EvaluationReport, EvalError> {
    let pipeline = Pipeline::new();
    let docs = preprocess_corpus(&pipeline, corpus);
    let classes: Vec<IssueClass> = docs.iter().map(|(_, _, c)| *c).collect();
    let folds = stratified_fold_indices(&classes, k, settings.seed)?;
    let mut pooled = ConfusionMatrix::zero();
    let mut fold_summaries = Vec::with_capacity(k);
    let mut any_nonconverged = false;
    for (fold_no, test_idx) in folds.iter().enumerate() {
        let mut in_test = vec![false; docs.len()];
        for &i in test_idx {
            in_test[i] = true;
        }
        let train_docs: Vec<_> = docs
            .iter()
            .enumerate()
            .filter(|(i, _)| !in_test[*i])
            .map(|(_, d)| d.clone())
            .collect();
        let vocab = match settings.fit_mode {
            VocabFitMode::TrainOnly => {
                let streams: Vec<TokenStream> =
                    train_docs.iter().map(|(_, t, _)| t.clone()).collect();
                Vocabulary::fit(&streams, 1)?
            }
            VocabFitMode::FullCorpus => {
                let streams: Vec<TokenStream> = docs.iter().map(|(_, t, _)| t.clone()).collect();
                Vocabulary::fit(&streams, 1)?
            }
        };
        let matrix = TermDocumentMatrix::from_token_streams(vocab, settings.weighting, &train_docs);
        let body = train_model(settings.kind, &matrix, &settings.hp)?;
        any_nonconverged |= not_converged(&body);
        let mut fold_cm = ConfusionMatrix::zero();
        for &i in test_idx {
            let (_, tokens, actual) = &docs[i];
            let v = vectorize(tokens, matrix.vocab(), settings.weighting);
            fold_cm.add(*actual, body.predict(&v).class);
        }
        pooled.merge(&fold_cm);
        let fold_report = metrics_from_confusion(
            fold_cm,
            ReportConfig {
                mode: "cv-fold".into(),
                ..ReportConfig::default()
            },
        )?;
        fold_summaries.push(FoldSummary {
            fold: fold_no,
            matrix: fold_cm,
            weighted: fold_report.weighted,
        });
    }
    let config = ReportConfig {
        mode: "cv".into(),
        model: Some(settings.kind.as_str().into()),
        seed: Some(settings.seed),
        vocab_fit: Some(settings.fit_mode.as_str().into()),
        weighting: Some(settings.weighting.as_str().into()),
        folds: Some(k),
        fraction: None,
    };
    let mut report = metrics_from_confusion(pooled, config)?;
    report.folds = fold_summaries;
    if any_nonconverged {
        report.flags.push("smo did not converge within the pass budget".into());
    }
    Ok(report)
}
