//! Vocabulary fitting, tf-idf weighting, and sparse term-document matrices.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Read, Write};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::corpus::IssueClass;
use crate::textprep::TokenStream;

#[derive(Debug, Error)]
pub enum FeatureError {
    #[error("cannot fit a vocabulary on an empty corpus")]
    EmptyCorpus,
    #[error("tf-idf domain error: df={df} outside [1, {n}]")]
    DomainError { df: usize, n: usize },
    #[error("matrix file format error: {0}")]
    FormatError(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// tf weighting variant. `RawTf` is the default reading; `SublinearTf`
/// (1 + ln tf) is kept for comparison runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum WeightingScheme {
    #[default]
    RawTf,
    SublinearTf,
}

impl WeightingScheme {
    pub fn as_str(&self) -> &'static str {
        match self {
            WeightingScheme::RawTf => "raw_tf",
            WeightingScheme::SublinearTf => "sublinear_tf",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "raw_tf" | "raw" => Some(WeightingScheme::RawTf),
            "sublinear_tf" | "sublinear" => Some(WeightingScheme::SublinearTf),
            _ => None,
        }
    }
}

/// Whether the vocabulary (and its idf statistics) are fitted on the
/// training portion only, or on the full corpus as the original setup did.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum VocabFitMode {
    #[default]
    TrainOnly,
    FullCorpus,
}

impl VocabFitMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            VocabFitMode::TrainOnly => "train_only",
            VocabFitMode::FullCorpus => "full_corpus",
        }
    }
}

/// Term index, document frequencies, and fitting-corpus size. Indices are
/// dense, 0-based, ordered by first occurrence, and frozen after fitting.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Vocabulary {
    terms: Vec<String>,
    index: HashMap<String, u32>,
    df: Vec<u32>,
    n_docs: usize,
}

impl Vocabulary {
    /// Fits a vocabulary over token streams. Every term occurring in at
    /// least `min_df` documents receives an index.
    pub fn fit(docs: &[TokenStream], min_df: usize) -> Result<Vocabulary, FeatureError> {
        if docs.is_empty() {
            return Err(FeatureError::EmptyCorpus);
        }
        let min_df = min_df.max(1);
        let mut order: Vec<String> = Vec::new();
        let mut df_map: HashMap<String, u32> = HashMap::new();
        for doc in docs {
            let mut seen: HashMap<&str, ()> = HashMap::new();
            for tok in doc.iter() {
                if !df_map.contains_key(tok.as_str()) {
                    order.push(tok.clone());
                }
                if seen.insert(tok.as_str(), ()).is_none() {
                    *df_map.entry(tok.clone()).or_insert(0) += 1;
                }
            }
        }
        let mut terms = Vec::new();
        let mut index = HashMap::new();
        let mut df = Vec::new();
        for term in order {
            let d = df_map[&term];
            if d as usize >= min_df {
                index.insert(term.clone(), terms.len() as u32);
                terms.push(term);
                df.push(d);
            }
        }
        Ok(Vocabulary {
            terms,
            index,
            df,
            n_docs: docs.len(),
        })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn n_docs(&self) -> usize {
        self.n_docs
    }

    pub fn index_of(&self, term: &str) -> Option<u32> {
        self.index.get(term).copied()
    }

    pub fn term(&self, index: u32) -> Option<&str> {
        self.terms.get(index as usize).map(String::as_str)
    }

    pub fn df(&self, index: u32) -> Option<u32> {
        self.df.get(index as usize).copied()
    }

    /// SHA-256 over the `(index, term, df, n_docs)` table; identifies the
    /// vocabulary a matrix or model was built with.
    pub fn hash(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.n_docs.to_le_bytes());
        for (i, term) in self.terms.iter().enumerate() {
            hasher.update(term.as_bytes());
            hasher.update([0u8]);
            hasher.update(self.df[i].to_le_bytes());
        }
        let out = hasher.finalize();
        let mut hex = String::with_capacity(64);
        for b in out {
            let _ = write!(hex, "{b:02x}");
        }
        hex
    }

    /// Writes the vocabulary as TSV: `index, term, df` with header comments.
    pub fn write_tsv<W: Write>(&self, mut w: W) -> Result<(), FeatureError> {
        writeln!(w, "# wontfix-vocab v1")?;
        writeln!(w, "# n_docs={}", self.n_docs)?;
        for (i, term) in self.terms.iter().enumerate() {
            writeln!(w, "{i}\t{term}\t{}", self.df[i])?;
        }
        Ok(())
    }

    pub fn read_tsv<R: Read>(r: R) -> Result<Vocabulary, FeatureError> {
        let reader = BufReader::new(r);
        let mut n_docs = None;
        let mut terms = Vec::new();
        let mut df = Vec::new();
        let mut index = HashMap::new();
        for line in reader.lines() {
            let line = line?;
            if let Some(rest) = line.strip_prefix("# n_docs=") {
                n_docs = rest.trim().parse::<usize>().ok();
                continue;
            }
            if line.starts_with('#') || line.trim().is_empty() {
                continue;
            }
            let mut parts = line.split('\t');
            let idx: usize = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| FeatureError::FormatError(format!("bad row: {line}")))?;
            let term = parts
                .next()
                .ok_or_else(|| FeatureError::FormatError(format!("bad row: {line}")))?;
            let d: u32 = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| FeatureError::FormatError(format!("bad row: {line}")))?;
            if idx != terms.len() {
                return Err(FeatureError::FormatError(format!(
                    "non-contiguous index {idx} (expected {})",
                    terms.len()
                )));
            }
            index.insert(term.to_string(), idx as u32);
            terms.push(term.to_string());
            df.push(d);
        }
        let n_docs = n_docs.ok_or_else(|| FeatureError::FormatError("missing n_docs header".into()))?;
        Ok(Vocabulary {
            terms,
            index,
            df,
            n_docs,
        })
    }
}

/// tf-idf weight: `tf * ln(n / df)` (natural log, no per-document
/// normalization). `df = n` terms weigh zero everywhere.
pub fn tfidf(tf: f64, df: usize, n: usize) -> Result<f64, FeatureError> {
    if df < 1 || df > n {
        return Err(FeatureError::DomainError { df, n });
    }
    debug_assert!(tf >= 0.0);
    Ok(tf * ((n as f64) / (df as f64)).ln())
}

fn weighted_tf(count: u32, scheme: WeightingScheme) -> f64 {
    match scheme {
        WeightingScheme::RawTf => count as f64,
        WeightingScheme::SublinearTf => {
            if count == 0 {
                0.0
            } else {
                1.0 + (count as f64).ln()
            }
        }
    }
}

/// Sparse vector of `(index, weight)` pairs with strictly increasing
/// indices and no explicit zeros.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct SparseVector {
    entries: Vec<(u32, f64)>,
}

impl SparseVector {
    /// Builds from unordered entries; zeros dropped, indices must be unique.
    pub fn from_entries(mut entries: Vec<(u32, f64)>) -> SparseVector {
        entries.retain(|&(_, w)| w != 0.0);
        entries.sort_by_key(|&(i, _)| i);
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        SparseVector { entries }
    }

    pub fn entries(&self) -> &[(u32, f64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: u32) -> f64 {
        match self.entries.binary_search_by_key(&index, |&(i, _)| i) {
            Ok(pos) => self.entries[pos].1,
            Err(_) => 0.0,
        }
    }

    pub fn dot(&self, other: &SparseVector) -> f64 {
        let mut sum = 0.0;
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() && b < other.entries.len() {
            let (ia, wa) = self.entries[a];
            let (ib, wb) = other.entries[b];
            match ia.cmp(&ib) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    sum += wa * wb;
                    a += 1;
                    b += 1;
                }
            }
        }
        sum
    }

    pub fn dot_dense(&self, dense: &[f64]) -> f64 {
        self.entries
            .iter()
            .map(|&(i, w)| w * dense.get(i as usize).copied().unwrap_or(0.0))
            .sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.entries.iter().map(|&(_, w)| w * w).sum()
    }
}

/// Maps a token stream onto tf-idf weights under a frozen vocabulary.
/// Out-of-vocabulary terms are silently dropped, which is what lets a
/// trained model score an unseen issue at opening time.
pub fn vectorize(tokens: &TokenStream, vocab: &Vocabulary, scheme: WeightingScheme) -> SparseVector {
    let mut counts: HashMap<u32, u32> = HashMap::new();
    for tok in tokens.iter() {
        if let Some(ix) = vocab.index_of(tok) {
            *counts.entry(ix).or_insert(0) += 1;
        }
    }
    let n = vocab.n_docs();
    let entries = counts
        .into_iter()
        .map(|(ix, c)| {
            let df = vocab.df(ix).expect("index from this vocabulary") as usize;
            let w = tfidf(weighted_tf(c, scheme), df, n).expect("df recorded in [1, n]");
            (ix, w)
        })
        .collect();
    SparseVector::from_entries(entries)
}

/// Preprocesses every issue of a corpus and vectorizes it under a fitted
/// vocabulary: one column per issue, class labels carried alongside.
pub fn build_matrix(
    pipeline: &crate::textprep::Pipeline,
    corpus: &crate::corpus::LabeledCorpus,
    vocab: Vocabulary,
    scheme: WeightingScheme,
) -> TermDocumentMatrix {
    let docs: Vec<(String, TokenStream, IssueClass)> = corpus
        .issues()
        .iter()
        .map(|i| {
            (
                i.id.clone(),
                pipeline.preprocess(&i.title, &i.body),
                corpus.class_of(&i.id).expect("classed on load"),
            )
        })
        .collect();
    TermDocumentMatrix::from_token_streams(vocab, scheme, &docs)
}

/// Sparse term-document matrix: one column per issue, classes alongside.
#[derive(Debug, Clone)]
pub struct TermDocumentMatrix {
    vocab: Vocabulary,
    scheme: WeightingScheme,
    doc_ids: Vec<String>,
    columns: Vec<SparseVector>,
    classes: Vec<IssueClass>,
}

impl TermDocumentMatrix {
    /// Builds a matrix from already-preprocessed token streams.
    pub fn from_token_streams(
        vocab: Vocabulary,
        scheme: WeightingScheme,
        docs: &[(String, TokenStream, IssueClass)],
    ) -> TermDocumentMatrix {
        let mut doc_ids = Vec::with_capacity(docs.len());
        let mut columns = Vec::with_capacity(docs.len());
        let mut classes = Vec::with_capacity(docs.len());
        for (id, tokens, class) in docs {
            doc_ids.push(id.clone());
            columns.push(vectorize(tokens, &vocab, scheme));
            classes.push(*class);
        }
        TermDocumentMatrix {
            vocab,
            scheme,
            doc_ids,
            columns,
            classes,
        }
    }

    /// Builds a matrix directly from raw columns. Used by tests and by the
    /// tree exporter's fixtures; indices must already fit the vocabulary.
    pub fn from_columns(
        vocab: Vocabulary,
        scheme: WeightingScheme,
        doc_ids: Vec<String>,
        columns: Vec<SparseVector>,
        classes: Vec<IssueClass>,
    ) -> TermDocumentMatrix {
        assert_eq!(doc_ids.len(), columns.len());
        assert_eq!(doc_ids.len(), classes.len());
        for col in &columns {
            for &(i, _) in col.entries() {
                assert!((i as usize) < vocab.len(), "column index out of vocabulary");
            }
        }
        TermDocumentMatrix {
            vocab,
            scheme,
            doc_ids,
            columns,
            classes,
        }
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn scheme(&self) -> WeightingScheme {
        self.scheme
    }

    pub fn n_docs(&self) -> usize {
        self.columns.len()
    }

    pub fn doc_ids(&self) -> &[String] {
        &self.doc_ids
    }

    pub fn columns(&self) -> &[SparseVector] {
        &self.columns
    }

    pub fn classes(&self) -> &[IssueClass] {
        &self.classes
    }

    pub fn class_counts(&self) -> (usize, usize) {
        let w = self.classes.iter().filter(|c| **c == IssueClass::Wontfix).count();
        (w, self.classes.len() - w)
    }

    /// Persists the matrix: a header naming `|V|`, document count, weighting
    /// mode, and vocabulary hash, then one sparse row per document.
    pub fn write_text<W: Write>(&self, mut w: W) -> Result<(), FeatureError> {
        writeln!(w, "# wontfix-matrix v1")?;
        writeln!(w, "# vocab_hash={}", self.vocab.hash())?;
        writeln!(w, "# n_terms={}", self.vocab.len())?;
        writeln!(w, "# n_docs={}", self.columns.len())?;
        writeln!(w, "# weighting={}", self.scheme.as_str())?;
        for (i, col) in self.columns.iter().enumerate() {
            let cells: Vec<String> = col
                .entries()
                .iter()
                .map(|(ix, wt)| format!("{ix}:{wt}"))
                .collect();
            writeln!(
                w,
                "{}\t{}\t{}",
                self.doc_ids[i],
                self.classes[i].as_str(),
                cells.join(" ")
            )?;
        }
        Ok(())
    }
}
