//! Three classifiers behind one train/predict contract: multinomial Naive
//! Bayes, an SMO-trained soft-margin linear SVM, and a C4.5-style decision
//! tree. Model files are self-describing and round-trip bit-exactly.

pub mod naive_bayes;
pub mod svm;
pub mod tree;

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::IssueClass;
use crate::features::{SparseVector, Vocabulary, WeightingScheme};
use crate::textprep::{Pipeline, TokenStream};

pub use naive_bayes::{train_nb, NaiveBayesModel};
pub use svm::{train_smo, LinearSvmModel, SmoParams};
pub use tree::{export_tree, feature_usage_ranking, train_j48, DecisionTreeModel, TreeParams};

pub const MODEL_FORMAT: &str = "wontfix-model";
pub const MODEL_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ClassifierError {
    #[error("training corpus contains a single class")]
    SingleClass,
    #[error("model file format error: {0}")]
    FormatError(String),
    #[error("model file version {found} is not supported (expected {expected})")]
    VersionError { found: u32, expected: u32 },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Classifier choice, as named on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    NaiveBayes,
    Smo,
    J48,
}

impl ModelKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ModelKind::NaiveBayes => "naive_bayes",
            ModelKind::Smo => "smo",
            ModelKind::J48 => "j48",
        }
    }

    pub fn parse(s: &str) -> Option<ModelKind> {
        match s {
            "naive_bayes" | "nb" => Some(ModelKind::NaiveBayes),
            "smo" | "svm" => Some(ModelKind::Smo),
            "j48" | "tree" => Some(ModelKind::J48),
            _ => None,
        }
    }
}

/// A class decision plus a score where higher means more wontfix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub class: IssueClass,
    pub score: f64,
}

/// Kind-specific trained parameterization.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelBody {
    NaiveBayes(NaiveBayesModel),
    Smo(LinearSvmModel),
    J48(DecisionTreeModel),
}

impl ModelBody {
    pub fn kind(&self) -> ModelKind {
        match self {
            ModelBody::NaiveBayes(_) => ModelKind::NaiveBayes,
            ModelBody::Smo(_) => ModelKind::Smo,
            ModelBody::J48(_) => ModelKind::J48,
        }
    }

    pub fn predict(&self, v: &SparseVector) -> Prediction {
        match self {
            ModelBody::NaiveBayes(m) => m.predict(v),
            ModelBody::Smo(m) => m.predict(v),
            ModelBody::J48(m) => m.predict(v),
        }
    }

    fn hyperparameters(&self) -> serde_json::Value {
        match self {
            ModelBody::NaiveBayes(m) => serde_json::json!({ "alpha": m.alpha }),
            ModelBody::Smo(m) => serde_json::json!({ "c": m.c, "tol": m.tol }),
            ModelBody::J48(m) => serde_json::json!({ "cf": m.cf, "min_leaf": m.min_leaf }),
        }
    }
}

/// A trained model together with the vocabulary it was built on, so a model
/// file alone suffices to score unseen issues.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SavedModel {
    pub format: String,
    pub version: u32,
    pub vocab_hash: String,
    pub weighting: WeightingScheme,
    pub vocab_fit: String,
    pub hyperparameters: serde_json::Value,
    pub vocabulary: Vocabulary,
    pub body: ModelBody,
}

impl SavedModel {
    pub fn new(
        body: ModelBody,
        vocabulary: Vocabulary,
        weighting: WeightingScheme,
        vocab_fit: &str,
    ) -> SavedModel {
        SavedModel {
            format: MODEL_FORMAT.to_string(),
            version: MODEL_VERSION,
            vocab_hash: vocabulary.hash(),
            weighting,
            vocab_fit: vocab_fit.to_string(),
            hyperparameters: body.hyperparameters(),
            vocabulary,
            body,
        }
    }

    pub fn kind(&self) -> ModelKind {
        self.body.kind()
    }

    /// Scores preprocessed tokens through the stored vocabulary.
    pub fn predict_tokens(&self, tokens: &TokenStream) -> Prediction {
        let v = crate::features::vectorize(tokens, &self.vocabulary, self.weighting);
        self.body.predict(&v)
    }

    /// Preprocesses and scores a raw title/body pair.
    pub fn predict_text(&self, pipeline: &Pipeline, title: &str, body: &str) -> Prediction {
        self.predict_tokens(&pipeline.preprocess(title, body))
    }

    pub fn to_writer<W: Write>(&self, w: W) -> Result<(), ClassifierError> {
        serde_json::to_writer(w, self).map_err(|e| ClassifierError::FormatError(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("model serializes")
    }

    pub fn from_reader<R: Read>(r: R) -> Result<SavedModel, ClassifierError> {
        // Probe the header first so a wrong version is reported as such
        // rather than as a body parse failure.
        let mut buf = String::new();
        let mut r = BufReader::new(r);
        r.read_to_string(&mut buf)?;
        let probe: serde_json::Value = serde_json::from_str(&buf)
            .map_err(|e| ClassifierError::FormatError(e.to_string()))?;
        let format = probe.get("format").and_then(|v| v.as_str()).unwrap_or("");
        if format != MODEL_FORMAT {
            return Err(ClassifierError::FormatError(format!(
                "not a {MODEL_FORMAT} file (format = {format:?})"
            )));
        }
        let version = probe.get("version").and_then(|v| v.as_u64()).unwrap_or(0) as u32;
        if version != MODEL_VERSION {
            return Err(ClassifierError::VersionError {
                found: version,
                expected: MODEL_VERSION,
            });
        }
        serde_json::from_str(&buf).map_err(|e| ClassifierError::FormatError(e.to_string()))
    }

    pub fn save(&self, path: &Path) -> Result<(), ClassifierError> {
        let file = File::create(path)?;
        let mut w = BufWriter::new(file);
        self.to_writer(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<SavedModel, ClassifierError> {
        let file = File::open(path)?;
        SavedModel::from_reader(file)
    }
}

/// Maps the binary class onto the {+1, -1} labels the SVM trains against.
pub(crate) fn class_to_sign(class: IssueClass) -> f64 {
    match class {
        IssueClass::Wontfix => 1.0,
        IssueClass::NonWontfix => -1.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::IssueClass;
    use crate::features::{TermDocumentMatrix, Vocabulary};
    use crate::textprep::TokenStream;

    fn toy_matrix() -> TermDocumentMatrix {
        let ts = |words: &[&str]| {
            TokenStream::from(words.iter().map(|s| s.to_string()).collect::<Vec<_>>())
        };
        let docs = vec![
            ("d0".to_string(), ts(&["make", "change", "provide"]), IssueClass::Wontfix),
            ("d1".to_string(), ts(&["make", "provide"]), IssueClass::Wontfix),
            ("d2".to_string(), ts(&["crash", "error"]), IssueClass::NonWontfix),
            ("d3".to_string(), ts(&["crash", "null"]), IssueClass::NonWontfix),
        ];
        let streams: Vec<TokenStream> = docs.iter().map(|(_, t, _)| t.clone()).collect();
        let vocab = Vocabulary::fit(&streams, 1).unwrap();
        TermDocumentMatrix::from_token_streams(vocab, WeightingScheme::RawTf, &docs)
    }

    #[test]
    fn save_load_round_trip_all_kinds() {
        let m = toy_matrix();
        let bodies = vec![
            ModelBody::NaiveBayes(train_nb(&m, 1.0).unwrap()),
            ModelBody::Smo(train_smo(&m, &SmoParams::default()).unwrap()),
            ModelBody::J48(train_j48(&m, &TreeParams::default()).unwrap()),
        ];
        for body in bodies {
            let saved = SavedModel::new(body, m.vocab().clone(), m.scheme(), "train_only");
            let json = saved.to_json();
            let back = SavedModel::from_reader(json.as_bytes()).unwrap();
            for col in m.columns() {
                let a = saved.body.predict(col);
                let b = back.body.predict(col);
                assert_eq!(a.class, b.class);
                assert_eq!(a.score.to_bits(), b.score.to_bits(), "bit-equal scores");
            }
        }
    }

    #[test]
    fn corrupt_file_is_format_error() {
        let err = SavedModel::from_reader("not json at all".as_bytes()).unwrap_err();
        assert!(matches!(err, ClassifierError::FormatError(_)));
        let err = SavedModel::from_reader("{\"format\":\"something-else\"}".as_bytes()).unwrap_err();
        assert!(matches!(err, ClassifierError::FormatError(_)));
    }

    #[test]
    fn version_mismatch_is_version_error() {
        let m = toy_matrix();
        let body = ModelBody::NaiveBayes(train_nb(&m, 1.0).unwrap());
        let saved = SavedModel::new(body, m.vocab().clone(), m.scheme(), "train_only");
        let mut v: serde_json::Value = serde_json::from_str(&saved.to_json()).unwrap();
        v["version"] = serde_json::json!(999);
        let err = SavedModel::from_reader(v.to_string().as_bytes()).unwrap_err();
        assert!(matches!(err, ClassifierError::VersionError { found: 999, .. }));
    }

    #[test]
    fn training_is_byte_deterministic() {
        let m = toy_matrix();
        for kind in [ModelKind::NaiveBayes, ModelKind::Smo, ModelKind::J48] {
            let train = |m: &TermDocumentMatrix| -> ModelBody {
                match kind {
                    ModelKind::NaiveBayes => ModelBody::NaiveBayes(train_nb(m, 1.0).unwrap()),
                    ModelKind::Smo => ModelBody::Smo(train_smo(m, &SmoParams::default()).unwrap()),
                    ModelKind::J48 => ModelBody::J48(train_j48(m, &TreeParams::default()).unwrap()),
                }
            };
            let a = SavedModel::new(train(&m), m.vocab().clone(), m.scheme(), "train_only");
            let b = SavedModel::new(train(&m), m.vocab().clone(), m.scheme(), "train_only");
            assert_eq!(a.to_json(), b.to_json(), "{kind:?} model bytes differ");
        }
    }

    #[test]
    fn label_symmetry_all_kinds() {
        let m = toy_matrix();
        let swapped = TermDocumentMatrix::from_columns(
            m.vocab().clone(),
            m.scheme(),
            m.doc_ids().to_vec(),
            m.columns().to_vec(),
            m.classes().iter().map(|c| c.other()).collect(),
        );
        let probe = SparseVector::from_entries(vec![(0, 1.3), (3, 0.4)]);
        let cases: Vec<(ModelBody, ModelBody)> = vec![
            (
                ModelBody::NaiveBayes(train_nb(&m, 1.0).unwrap()),
                ModelBody::NaiveBayes(train_nb(&swapped, 1.0).unwrap()),
            ),
            (
                ModelBody::Smo(train_smo(&m, &SmoParams::default()).unwrap()),
                ModelBody::Smo(train_smo(&swapped, &SmoParams::default()).unwrap()),
            ),
            (
                ModelBody::J48(train_j48(&m, &TreeParams::default()).unwrap()),
                ModelBody::J48(train_j48(&swapped, &TreeParams::default()).unwrap()),
            ),
        ];
        for (orig, swap) in cases {
            for col in m.columns().iter().chain(std::iter::once(&probe)) {
                let a = orig.predict(col);
                let b = swap.predict(col);
                assert_eq!(a.class, b.class.other(), "{:?}", orig.kind());
            }
        }
    }
}
