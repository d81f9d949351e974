//! Seeded synthetic issue corpora with class-specific vocabulary: wontfix
//! issues lean on enhancement-request wording, the rest on defect wording.
//! Used by tests, demos, and the acceptance suite; real mining output
//! replaces it for actual studies.

use std::collections::{BTreeSet, HashMap};

use chrono::{Duration, TimeZone, Utc};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::taxonomy::{ClosingMotivation, OpeningMotivation};
use crate::corpus::{
    AuthorRole, CommentRecord, IssueRecord, IssueState, LabeledCorpus, TaxonomyAnnotation,
};

/// Enhancement-request wording planted in the wontfix class.
pub const SIGNAL_TERMS: [&str; 5] = ["make", "change", "provide", "upgrade", "allow"];

/// Defect wording shared by both classes at equal rates; topical
/// background, not a class signal.
pub const BUG_TERMS: [&str; 8] = [
    "crash",
    "error",
    "null",
    "exception",
    "stack",
    "trace",
    "reproduce",
    "freeze",
];

const FILLER_TERMS: [&str; 20] = [
    "issue", "project", "code", "version", "window", "button", "menu", "server", "client",
    "build", "page", "list", "view", "click", "load", "save", "open", "user", "editor", "panel",
];

const WONTFIX_LABELS: [&str; 6] = [
    "wontfix",
    "Won't Fix",
    "status:wontfix",
    "not-fixing",
    "Cannot fix",
    "resolved:wontfix",
];

const OTHER_LABELS: [&str; 4] = ["bug", "enhancement", "question", "help wanted"];

#[derive(Debug, Clone)]
pub struct SynthOptions {
    pub n_issues: usize,
    /// Share of issues carrying a wontfix label variant.
    pub wontfix_fraction: f64,
    pub seed: u64,
    /// Attach taxonomy annotations to the wontfix issues.
    pub annotate: bool,
    /// Make the time to close grow with the number of discussion actors,
    /// for the planted-correlation analyses.
    pub correlate_close_time: bool,
}

impl Default for SynthOptions {
    fn default() -> Self {
        SynthOptions {
            n_issues: 500,
            wontfix_fraction: 0.3,
            seed: 42,
            annotate: false,
            correlate_close_time: false,
        }
    }
}

fn pick<'a>(rng: &mut ChaCha8Rng, pool: &[&'a str]) -> &'a str {
    pool.choose(rng).expect("non-empty pool")
}

fn words(rng: &mut ChaCha8Rng, n: usize, signal: Option<&[&str]>) -> Vec<String> {
    (0..n)
        .map(|_| {
            let roll: f64 = rng.gen();
            // The class signal is the enhancement-request vocabulary; the
            // defect vocabulary appears at the same rate in both classes.
            if let Some(active) = signal {
                if roll < 0.42 {
                    pick(rng, active).to_string()
                } else if roll < 0.54 {
                    pick(rng, &BUG_TERMS).to_string()
                } else if roll < 0.82 {
                    pick(rng, &FILLER_TERMS).to_string()
                } else {
                    format!("topic{:03}", rng.gen_range(0..300))
                }
            } else if roll < 0.04 {
                pick(rng, &SIGNAL_TERMS).to_string()
            } else if roll < 0.16 {
                pick(rng, &BUG_TERMS).to_string()
            } else if roll < 0.82 {
                pick(rng, &FILLER_TERMS).to_string()
            } else {
                format!("topic{:03}", rng.gen_range(0..300))
            }
        })
        .collect()
}

/// Generates a deterministic corpus under the given options.
pub fn generate_corpus(opts: &SynthOptions) -> LabeledCorpus {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let wontfix_every = (1.0 / opts.wontfix_fraction.clamp(0.01, 0.99)).round() as usize;
    let mut issues = Vec::with_capacity(opts.n_issues);
    let mut annotations = HashMap::new();
    for i in 0..opts.n_issues {
        let wontfix = i % wontfix_every.max(1) == 0;
        // Each wontfix issue leans on a rotating pair of signal terms, so
        // no single term covers the class and tree inspection surfaces
        // several of them.
        let pair = [
            SIGNAL_TERMS[i % SIGNAL_TERMS.len()],
            SIGNAL_TERMS[(i / SIGNAL_TERMS.len() + i + 1) % SIGNAL_TERMS.len()],
        ];
        let signal: Option<&[&str]> = if wontfix { Some(&pair) } else { None };
        let title_len = rng.gen_range(4..=7);
        let title = words(&mut rng, title_len, signal).join(" ");
        let body_len = rng.gen_range(25..=60);
        let body = words(&mut rng, body_len, signal).join(" ");
        let created = Utc
            .timestamp_opt(1_546_300_800 + (i as i64) * 7_200, 0)
            .unwrap();
        let n_comments = rng.gen_range(0..=6usize);
        let comments: Vec<CommentRecord> = (0..n_comments)
            .map(|c| CommentRecord {
                author: format!("user{}", rng.gen_range(0..8)),
                created_at: created + Duration::hours(c as i64 + 1),
                body: {
                    let len = rng.gen_range(3..=20);
                    words(&mut rng, len, signal).join(" ")
                },
            })
            .collect();
        let n_actors = comments
            .iter()
            .map(|c| c.author.as_str())
            .collect::<BTreeSet<_>>()
            .len();
        let close_days = if opts.correlate_close_time {
            10.0 + 40.0 * n_actors as f64 + rng.gen_range(0.0..5.0)
        } else {
            rng.gen_range(1.0..200.0)
        };
        let labels = if wontfix {
            vec![
                WONTFIX_LABELS[i % WONTFIX_LABELS.len()].to_string(),
                OTHER_LABELS[i % OTHER_LABELS.len()].to_string(),
            ]
        } else {
            vec![OTHER_LABELS[i % OTHER_LABELS.len()].to_string()]
        };
        let id = format!("synth/corpus#{i}");
        if wontfix && opts.annotate {
            annotations.insert(id.clone(), annotation_for(i));
        }
        issues.push(IssueRecord {
            id,
            repo: "synth/corpus".into(),
            url: format!("https://example.invalid/synth/{i}"),
            title,
            body,
            state: IssueState::Closed,
            raw_labels: labels,
            created_at: created,
            closed_at: Some(created + Duration::seconds((close_days * 86_400.0) as i64)),
            author: format!("user{}", i % 11),
            author_role: match i % 5 {
                0 => AuthorRole::Owner,
                1 => AuthorRole::Member,
                2 => AuthorRole::Contributor,
                3 => AuthorRole::Collaborator,
                _ => AuthorRole::Outsider,
            },
            comments,
        });
    }
    LabeledCorpus::from_issues(issues, annotations).expect("synthetic corpus is valid")
}

fn annotation_for(i: usize) -> TaxonomyAnnotation {
    use ClosingMotivation as CM;
    use OpeningMotivation as OM;
    let opening = match i % 3 {
        0 => OM::FeatureRequest,
        1 => OM::FeatureEnhancement,
        _ => OM::ReportedABug,
    };
    let closing = match i % 5 {
        0 => CM::FeatureRequestEnhancementAlreadyImplementedOrNotNeeded,
        1 => CM::NotRelevantChange,
        2 => CM::NotABug,
        3 => CM::NotACriticalBug,
        _ => CM::GeneralCommentFromAUser,
    };
    TaxonomyAnnotation {
        opening: BTreeSet::from([opening]),
        closing: BTreeSet::from([closing]),
    }
}

/// The planted signal terms as the pipeline's stemmer sees them.
pub fn stemmed_signal_terms() -> BTreeSet<String> {
    let pipeline = crate::textprep::Pipeline::new();
    SIGNAL_TERMS
        .iter()
        .map(|t| pipeline.stem_word(t))
        .collect()
}
