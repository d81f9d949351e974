//! Issue data model, JSONL ingestion, wontfix classing, and stratified
//! splitting.
//!
//! The interchange format is JSON Lines: one issue object per line, with
//! optional taxonomy annotations inline. Corpora are immutable after load
//! and safe to share across threads.

pub mod taxonomy;

use std::collections::{BTreeSet, HashMap};
use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use chrono::{DateTime, Utc};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use taxonomy::{ClosingMotivation, OpeningMotivation};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("line {line}: parse error: {message}")]
    ParseError { line: usize, message: String },
    #[error("line {line}: missing field `{field}`")]
    MissingField { line: usize, field: String },
    #[error("line {line}: duplicate issue id `{id}`")]
    DuplicateId { line: usize, id: String },
    #[error("issue `{id}` is open; only closed issues are classed")]
    OpenIssue { id: String },
    #[error("class {class} has {count} members, need at least 2")]
    DegenerateClass { class: &'static str, count: usize },
    #[error("split fraction {0} outside (0, 1)")]
    InvalidFraction(f64),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IssueState {
    Open,
    Closed,
}

/// Role of the issue author relative to the repository.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuthorRole {
    Owner,
    Member,
    Contributor,
    Collaborator,
    Outsider,
}

/// Binary class of a closed issue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IssueClass {
    Wontfix,
    NonWontfix,
}

impl IssueClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            IssueClass::Wontfix => "wontfix",
            IssueClass::NonWontfix => "non_wontfix",
        }
    }

    pub fn other(&self) -> IssueClass {
        match self {
            IssueClass::Wontfix => IssueClass::NonWontfix,
            IssueClass::NonWontfix => IssueClass::Wontfix,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommentRecord {
    pub author: String,
    pub created_at: DateTime<Utc>,
    pub body: String,
}

/// One closed issue with its metadata and discussion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IssueRecord {
    /// Repo full name + `#` + issue number, unique within a corpus.
    pub id: String,
    pub repo: String,
    pub url: String,
    pub title: String,
    #[serde(default)]
    pub body: String,
    pub state: IssueState,
    #[serde(rename = "labels")]
    pub raw_labels: Vec<String>,
    pub created_at: DateTime<Utc>,
    #[serde(default)]
    pub closed_at: Option<DateTime<Utc>>,
    pub author: String,
    pub author_role: AuthorRole,
    #[serde(default)]
    pub comments: Vec<CommentRecord>,
}

/// Sets of motivations assigned by the card-sorting taxonomies. Both sets
/// are non-empty; multi-motivation issues carry more than one element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaxonomyAnnotation {
    pub opening: BTreeSet<OpeningMotivation>,
    pub closing: BTreeSet<ClosingMotivation>,
}

/// Wire form of one JSONL line: the issue plus optional annotations.
#[derive(Serialize, Deserialize)]
struct WireIssue {
    #[serde(flatten)]
    issue: IssueRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    annotations: Option<TaxonomyAnnotation>,
}

/// True iff the label, after normalization, is one of the canonical
/// wontfix variants. Normalization lowercases and strips whitespace,
/// apostrophes, hyphens, underscores, and colons.
pub fn normalize_wontfix_label(raw: &str) -> bool {
    const CANONICAL: [&str; 8] = [
        "wontfix",
        "statuswontfix",
        "resolutionwontfix",
        "resolvedwontfix",
        "closedwontfix",
        "notfixing",
        "statuswillnotfix",
        "cannotfix",
    ];
    let normalized: String = raw
        .to_lowercase()
        .chars()
        .filter(|c| !c.is_whitespace() && !matches!(c, '\'' | '\u{2019}' | '-' | '_' | ':'))
        .collect();
    CANONICAL.contains(&normalized.as_str())
}

/// Classes a closed issue: wontfix iff any raw label normalizes to a
/// wontfix variant. Depends only on labels, never on text.
pub fn assign_class(issue: &IssueRecord) -> Result<IssueClass, CorpusError> {
    if issue.state != IssueState::Closed {
        return Err(CorpusError::OpenIssue {
            id: issue.id.clone(),
        });
    }
    if issue.raw_labels.iter().any(|l| normalize_wontfix_label(l)) {
        Ok(IssueClass::Wontfix)
    } else {
        Ok(IssueClass::NonWontfix)
    }
}

/// A set of classed issues with optional taxonomy annotations.
#[derive(Debug, Clone, Default)]
pub struct LabeledCorpus {
    issues: Vec<IssueRecord>,
    class_of: HashMap<String, IssueClass>,
    annotations: HashMap<String, TaxonomyAnnotation>,
}

impl LabeledCorpus {
    /// Builds a corpus from records, assigning classes and checking
    /// invariants. `annotations` keys must be issue ids.
    pub fn from_issues(
        issues: Vec<IssueRecord>,
        annotations: HashMap<String, TaxonomyAnnotation>,
    ) -> Result<LabeledCorpus, CorpusError> {
        let mut class_of = HashMap::with_capacity(issues.len());
        for (i, issue) in issues.iter().enumerate() {
            validate_issue(issue, i + 1)?;
            if class_of.contains_key(&issue.id) {
                return Err(CorpusError::DuplicateId {
                    line: i + 1,
                    id: issue.id.clone(),
                });
            }
            class_of.insert(issue.id.clone(), assign_class(issue)?);
        }
        Ok(LabeledCorpus {
            issues,
            class_of,
            annotations,
        })
    }

    pub fn load(path: &Path) -> Result<LabeledCorpus, CorpusError> {
        let file = File::open(path)?;
        LabeledCorpus::read_jsonl(file)
    }

    /// Reads JSONL: one issue object per line. Blank lines are ignored.
    pub fn read_jsonl<R: Read>(r: R) -> Result<LabeledCorpus, CorpusError> {
        let reader = BufReader::new(r);
        let mut issues = Vec::new();
        let mut annotations = HashMap::new();
        let mut class_of = HashMap::new();
        for (lineno, line) in reader.lines().enumerate() {
            let lineno = lineno + 1;
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let wire: WireIssue = serde_json::from_str(&line).map_err(|e| json_error(lineno, e))?;
            let issue = wire.issue;
            validate_issue(&issue, lineno)?;
            if let Some(ann) = &wire.annotations {
                if ann.opening.is_empty() || ann.closing.is_empty() {
                    return Err(CorpusError::ParseError {
                        line: lineno,
                        message: "annotation motivation sets must be non-empty".into(),
                    });
                }
            }
            if class_of.contains_key(&issue.id) {
                return Err(CorpusError::DuplicateId {
                    line: lineno,
                    id: issue.id.clone(),
                });
            }
            class_of.insert(issue.id.clone(), assign_class(&issue)?);
            if let Some(ann) = wire.annotations {
                annotations.insert(issue.id.clone(), ann);
            }
            issues.push(issue);
        }
        Ok(LabeledCorpus {
            issues,
            class_of,
            annotations,
        })
    }

    pub fn write_jsonl<W: Write>(&self, mut w: W) -> Result<(), CorpusError> {
        for issue in &self.issues {
            let wire = WireIssue {
                annotations: self.annotations.get(&issue.id).cloned(),
                issue: issue.clone(),
            };
            let line = serde_json::to_string(&wire).expect("issue records serialize");
            writeln!(w, "{line}")?;
        }
        Ok(())
    }

    pub fn issues(&self) -> &[IssueRecord] {
        &self.issues
    }

    pub fn len(&self) -> usize {
        self.issues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn class_of(&self, id: &str) -> Option<IssueClass> {
        self.class_of.get(id).copied()
    }

    pub fn classes(&self) -> impl Iterator<Item = IssueClass> + '_ {
        self.issues.iter().map(|i| self.class_of[&i.id])
    }

    pub fn annotation(&self, id: &str) -> Option<&TaxonomyAnnotation> {
        self.annotations.get(id)
    }

    pub fn annotations(&self) -> &HashMap<String, TaxonomyAnnotation> {
        &self.annotations
    }

    pub fn has_annotations(&self) -> bool {
        !self.annotations.is_empty()
    }

    /// `(wontfix, non_wontfix)` tallies.
    pub fn class_counts(&self) -> (usize, usize) {
        let w = self
            .class_of
            .values()
            .filter(|c| **c == IssueClass::Wontfix)
            .count();
        (w, self.class_of.len() - w)
    }

    /// Sub-corpus over the given issue indices (corpus order preserved).
    pub fn subset(&self, indices: &[usize]) -> LabeledCorpus {
        let mut sorted: Vec<usize> = indices.to_vec();
        sorted.sort_unstable();
        let mut issues = Vec::with_capacity(sorted.len());
        let mut class_of = HashMap::with_capacity(sorted.len());
        let mut annotations = HashMap::new();
        for &i in &sorted {
            let issue = self.issues[i].clone();
            class_of.insert(issue.id.clone(), self.class_of[&issue.id]);
            if let Some(ann) = self.annotations.get(&issue.id) {
                annotations.insert(issue.id.clone(), ann.clone());
            }
            issues.push(issue);
        }
        LabeledCorpus {
            issues,
            class_of,
            annotations,
        }
    }
}

fn validate_issue(issue: &IssueRecord, line: usize) -> Result<(), CorpusError> {
    if let Some(closed) = issue.closed_at {
        if closed < issue.created_at {
            return Err(CorpusError::ParseError {
                line,
                message: format!("issue `{}` closed_at precedes created_at", issue.id),
            });
        }
    }
    let mut prev: Option<DateTime<Utc>> = None;
    for c in &issue.comments {
        if c.created_at < issue.created_at {
            return Err(CorpusError::ParseError {
                line,
                message: format!("issue `{}` has a comment older than the issue", issue.id),
            });
        }
        if let Some(p) = prev {
            if c.created_at < p {
                return Err(CorpusError::ParseError {
                    line,
                    message: format!("issue `{}` comments are not ordered by created_at", issue.id),
                });
            }
        }
        prev = Some(c.created_at);
    }
    Ok(())
}

fn json_error(line: usize, e: serde_json::Error) -> CorpusError {
    let msg = e.to_string();
    if let Some(rest) = msg.strip_prefix("missing field `") {
        if let Some(end) = rest.find('`') {
            return CorpusError::MissingField {
                line,
                field: rest[..end].to_string(),
            };
        }
    }
    CorpusError::ParseError { line, message: msg }
}

/// Per-class stratified split. Train receives `floor(fraction * class
/// size)` members of each class, the remainder goes to test; deterministic
/// given the seed.
pub fn stratified_split(
    corpus: &LabeledCorpus,
    fraction: f64,
    seed: u64,
) -> Result<(LabeledCorpus, LabeledCorpus), CorpusError> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(CorpusError::InvalidFraction(fraction));
    }
    let mut by_class: HashMap<IssueClass, Vec<usize>> = HashMap::new();
    for (i, issue) in corpus.issues().iter().enumerate() {
        by_class
            .entry(corpus.class_of(&issue.id).expect("classed on load"))
            .or_default()
            .push(i);
    }
    for class in [IssueClass::Wontfix, IssueClass::NonWontfix] {
        let count = by_class.get(&class).map_or(0, Vec::len);
        if count < 2 {
            return Err(CorpusError::DegenerateClass {
                class: class.as_str(),
                count,
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut train_idx = Vec::new();
    let mut test_idx = Vec::new();
    // Fixed class order keeps the RNG stream, and thus the partition,
    // reproducible.
    for class in [IssueClass::Wontfix, IssueClass::NonWontfix] {
        let mut members = by_class.remove(&class).unwrap_or_default();
        members.shuffle(&mut rng);
        let n_train = (fraction * members.len() as f64).floor() as usize;
        train_idx.extend_from_slice(&members[..n_train]);
        test_idx.extend_from_slice(&members[n_train..]);
    }
    Ok((corpus.subset(&train_idx), corpus.subset(&test_idx)))
}

/// Minimal record for just-in-time prediction: only what is known at issue
/// opening time.
#[derive(Debug, Clone, Deserialize)]
pub struct PredictionInput {
    pub id: String,
    #[serde(default)]
    pub title: String,
    #[serde(default)]
    pub body: String,
}

/// Reads prediction inputs from JSONL. Lines need only `id` (plus optional
/// `title` and `body`); any other fields are ignored.
pub fn load_prediction_input<R: Read>(r: R) -> Result<Vec<PredictionInput>, CorpusError> {
    let reader = BufReader::new(r);
    let mut out = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: PredictionInput =
            serde_json::from_str(&line).map_err(|e| json_error(lineno + 1, e))?;
        out.push(rec);
    }
    Ok(out)
}
