//! Mining, analytics, and classification of GitHub issue corpora.
//!
//! The crate is organized around the stages of the workflow:
//!
//! - [`miner`]: REST client that collects closed issues from GitHub into JSONL.
//! - [`corpus`]: the issue data model, JSONL ingestion, wontfix labelling,
//!   taxonomy annotations, and stratified splitting.
//! - [`textprep`]: markup stripping, tokenization, stopword removal, stemming.
//! - [`features`]: vocabulary fitting and sparse tf-idf term-document matrices.
//! - [`classifiers`]: multinomial Naive Bayes, an SMO-trained linear SVM, and a
//!   C4.5-style decision tree behind a common train/predict contract.
//! - [`evaluation`]: holdout and k-fold evaluation with confusion matrices and
//!   per-class / support-weighted precision, recall, and F-measure.
//! - [`analytics`]: per-issue discussion metrics, Mann-Whitney U and
//!   Shapiro-Wilk tests, category and actor-bucket comparisons.
//! - [`synth`]: seeded synthetic corpus generator used by tests and demos.

pub mod analytics;
pub mod classifiers;
pub mod corpus;
pub mod evaluation;
pub mod features;
pub mod miner;
pub mod synth;
pub mod textprep;
