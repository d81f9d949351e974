//! Discussion metrics and nonparametric comparisons: the nine per-issue
//! factors, Mann-Whitney U and Shapiro-Wilk tests, pairwise category grids,
//! actor-count buckets, and taxonomy co-occurrence counts.

pub mod mann_whitney;
pub(crate) mod normal;
pub mod shapiro_wilk;

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::corpus::taxonomy::{ClosingCategory, ClosingMotivation, OpeningMotivation};
use crate::corpus::{IssueRecord, LabeledCorpus};

pub use mann_whitney::{mann_whitney, mann_whitney_normal_approx, StatTestResult, TestMethod};
pub use shapiro_wilk::shapiro_wilk;

#[derive(Debug, Error)]
pub enum AnalyticsError {
    #[error("issue `{id}` has no close time")]
    MissingCloseTime { id: String },
    #[error("empty sample")]
    EmptySample,
    #[error("sample size {n} outside [{lo}, {hi}]")]
    SampleSize { n: usize, lo: usize, hi: usize },
    #[error("sample has zero range")]
    DegenerateVariance,
    #[error("corpus has no taxonomy annotations")]
    MissingAnnotations,
    #[error("category `{0}` has no issues")]
    EmptyCategory(String),
}

/// The nine per-issue discussion factors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscussionMetrics {
    /// Issue description length in characters.
    pub description_length: usize,
    /// Share of messages posted by the most active author, in [0, 1].
    pub max_author_percentage: f64,
    /// Authors with strictly more than a third of the messages.
    pub major_authors: usize,
    /// Authors with strictly less than a third of the messages.
    pub minor_authors: usize,
    /// Mean message length in characters.
    pub mean_comment_size: f64,
    /// Distinct authors participating in the discussion.
    pub n_actors: usize,
    /// Total messages in the discussion.
    pub n_comments: usize,
    /// Days from opening to closing (fractional).
    pub time_to_close: f64,
    /// Days from opening to the last message (0 with no messages).
    pub time_to_discuss: f64,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct MetricsOptions {
    /// Count the opening post as a discussion message. Off by default:
    /// messages are the comments, which keeps the description an
    /// independent signal.
    pub count_opening_post: bool,
}

/// Computes the nine factors for one closed issue.
pub fn compute_metrics(issue: &IssueRecord) -> Result<DiscussionMetrics, AnalyticsError> {
    compute_metrics_with(issue, &MetricsOptions::default())
}

pub fn compute_metrics_with(
    issue: &IssueRecord,
    opts: &MetricsOptions,
) -> Result<DiscussionMetrics, AnalyticsError> {
    let closed_at = issue.closed_at.ok_or_else(|| AnalyticsError::MissingCloseTime {
        id: issue.id.clone(),
    })?;
    // (author, length in chars, timestamp) per message
    let mut messages: Vec<(&str, usize, chrono::DateTime<chrono::Utc>)> = Vec::new();
    if opts.count_opening_post {
        messages.push((
            issue.author.as_str(),
            issue.body.chars().count(),
            issue.created_at,
        ));
    }
    for c in &issue.comments {
        messages.push((c.author.as_str(), c.body.chars().count(), c.created_at));
    }
    let n_comments = messages.len();
    let mut per_author: HashMap<&str, usize> = HashMap::new();
    for (author, _, _) in &messages {
        *per_author.entry(author).or_insert(0) += 1;
    }
    let n_actors = per_author.len();
    let max_count = per_author.values().copied().max().unwrap_or(0);
    let max_author_percentage = if n_comments == 0 {
        0.0
    } else {
        max_count as f64 / n_comments as f64
    };
    // Strict thresholds: an author with exactly one third of the messages
    // is neither major nor minor.
    let major_authors = per_author.values().filter(|&&c| c * 3 > n_comments).count();
    let minor_authors = per_author.values().filter(|&&c| c * 3 < n_comments).count();
    let mean_comment_size = if n_comments == 0 {
        0.0
    } else {
        messages.iter().map(|(_, len, _)| *len as f64).sum::<f64>() / n_comments as f64
    };
    let days = |ms: i64| ms as f64 / 86_400_000.0;
    let time_to_close = days((closed_at - issue.created_at).num_milliseconds());
    let time_to_discuss = messages
        .iter()
        .map(|(_, _, at)| days((*at - issue.created_at).num_milliseconds()))
        .fold(0.0f64, f64::max);
    Ok(DiscussionMetrics {
        description_length: issue.body.chars().count(),
        max_author_percentage,
        major_authors,
        minor_authors,
        mean_comment_size,
        n_actors,
        n_comments,
        time_to_close,
        time_to_discuss,
    })
}

/// Selector over the nine factors, named as the analysis names them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MetricKind {
    DescriptionLength,
    MaxAuthorPercentage,
    MajorAuthors,
    MeanCommentSize,
    MinorAuthors,
    NActors,
    NComments,
    TimeToClose,
    TimeToDiscuss,
}

impl MetricKind {
    pub const ALL: [MetricKind; 9] = [
        MetricKind::NComments,
        MetricKind::NActors,
        MetricKind::MaxAuthorPercentage,
        MetricKind::MinorAuthors,
        MetricKind::MajorAuthors,
        MetricKind::TimeToClose,
        MetricKind::TimeToDiscuss,
        MetricKind::DescriptionLength,
        MetricKind::MeanCommentSize,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            MetricKind::DescriptionLength => "descriptionLength",
            MetricKind::MaxAuthorPercentage => "maxAuthorPercentage",
            MetricKind::MajorAuthors => "majorAuthors",
            MetricKind::MeanCommentSize => "meanCommentSize",
            MetricKind::MinorAuthors => "minorAuthors",
            MetricKind::NActors => "nActorsT",
            MetricKind::NComments => "nCommentsT",
            MetricKind::TimeToClose => "timeToCloseIssue",
            MetricKind::TimeToDiscuss => "timeToDiscussIssue",
        }
    }

    pub fn parse(s: &str) -> Option<MetricKind> {
        MetricKind::ALL
            .iter()
            .copied()
            .find(|m| m.name().eq_ignore_ascii_case(s))
    }

    pub fn extract(&self, m: &DiscussionMetrics) -> f64 {
        match self {
            MetricKind::DescriptionLength => m.description_length as f64,
            MetricKind::MaxAuthorPercentage => m.max_author_percentage,
            MetricKind::MajorAuthors => m.major_authors as f64,
            MetricKind::MeanCommentSize => m.mean_comment_size,
            MetricKind::MinorAuthors => m.minor_authors as f64,
            MetricKind::NActors => m.n_actors as f64,
            MetricKind::NComments => m.n_comments as f64,
            MetricKind::TimeToClose => m.time_to_close,
            MetricKind::TimeToDiscuss => m.time_to_discuss,
        }
    }
}

/// Category selector for the pairwise grids: the whole golden set or one
/// closing-category slice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CategorySel {
    All,
    Closing(ClosingCategory),
}

impl CategorySel {
    pub fn short(&self) -> &'static str {
        match self {
            CategorySel::All => "A",
            CategorySel::Closing(ClosingCategory::Bug) => "B",
            CategorySel::Closing(ClosingCategory::NotABug) => "NB",
            CategorySel::Closing(ClosingCategory::FeatureRequestEnhancement) => "FR",
            CategorySel::Closing(ClosingCategory::Change) => "C",
            CategorySel::Closing(ClosingCategory::Other) => "O",
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            CategorySel::All => "All",
            CategorySel::Closing(ClosingCategory::Bug) => "Bug",
            CategorySel::Closing(ClosingCategory::NotABug) => "Not a bug",
            CategorySel::Closing(ClosingCategory::FeatureRequestEnhancement) => {
                "Feature request/enhancement"
            }
            CategorySel::Closing(ClosingCategory::Change) => "Change",
            CategorySel::Closing(ClosingCategory::Other) => "Other",
        }
    }
}

/// The ten category pairs of the hypothesis-testing grid, in report order.
pub const CATEGORY_PAIRS: [(CategorySel, CategorySel); 10] = {
    use CategorySel::*;
    use ClosingCategory::*;
    [
        (All, Closing(Bug)),
        (All, Closing(NotABug)),
        (All, Closing(FeatureRequestEnhancement)),
        (All, Closing(Change)),
        (Closing(Bug), Closing(NotABug)),
        (Closing(Bug), Closing(FeatureRequestEnhancement)),
        (Closing(Bug), Closing(Change)),
        (Closing(NotABug), Closing(FeatureRequestEnhancement)),
        (Closing(NotABug), Closing(Change)),
        (Closing(FeatureRequestEnhancement), Closing(Change)),
    ]
};

/// Significance band at the fixed alpha of 0.05.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PBand {
    Below05,
    Between05And10,
    Above10,
}

impl PBand {
    pub fn of(p: f64) -> PBand {
        if p < 0.05 {
            PBand::Below05
        } else if p <= 0.1 {
            PBand::Between05And10
        } else {
            PBand::Above10
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            PBand::Below05 => "p < 0.05",
            PBand::Between05And10 => "0.05 <= p <= 0.1",
            PBand::Above10 => "p > 0.1",
        }
    }
}

#[derive(Debug, Clone)]
pub struct GridCell {
    pub p: f64,
    pub band: PBand,
    pub n1: usize,
    pub n2: usize,
}

/// The 9-metric by 10-pair hypothesis-testing grid.
#[derive(Debug, Clone)]
pub struct PairwiseGrid {
    pub metrics: Vec<MetricKind>,
    pub pairs: Vec<(CategorySel, CategorySel)>,
    pub cells: Vec<Vec<GridCell>>,
}

fn annotated_metric_values(
    corpus: &LabeledCorpus,
    opts: &MetricsOptions,
) -> Result<Vec<(DiscussionMetrics, Vec<ClosingCategory>)>, AnalyticsError> {
    if !corpus.has_annotations() {
        return Err(AnalyticsError::MissingAnnotations);
    }
    let mut out = Vec::new();
    for issue in corpus.issues() {
        let Some(ann) = corpus.annotation(&issue.id) else {
            continue;
        };
        let metrics = compute_metrics_with(issue, opts)?;
        let cats: Vec<ClosingCategory> = {
            let mut c: Vec<ClosingCategory> = ann.closing.iter().map(|m| m.category()).collect();
            c.sort();
            c.dedup();
            c
        };
        out.push((metrics, cats));
    }
    Ok(out)
}

fn category_values(
    rows: &[(DiscussionMetrics, Vec<ClosingCategory>)],
    sel: CategorySel,
    metric: MetricKind,
) -> Vec<f64> {
    rows.iter()
        .filter(|(_, cats)| match sel {
            CategorySel::All => true,
            CategorySel::Closing(c) => cats.contains(&c),
        })
        .map(|(m, _)| metric.extract(m))
        .collect()
}

/// Runs the Mann-Whitney test for every metric and every category pair,
/// producing the banded grid.
pub fn compare_categories(
    corpus: &LabeledCorpus,
    opts: &MetricsOptions,
) -> Result<PairwiseGrid, AnalyticsError> {
    let rows = annotated_metric_values(corpus, opts)?;
    // every compared category must be nonempty
    for sel in [
        CategorySel::All,
        CategorySel::Closing(ClosingCategory::Bug),
        CategorySel::Closing(ClosingCategory::NotABug),
        CategorySel::Closing(ClosingCategory::FeatureRequestEnhancement),
        CategorySel::Closing(ClosingCategory::Change),
    ] {
        if category_values(&rows, sel, MetricKind::NComments).is_empty() {
            return Err(AnalyticsError::EmptyCategory(sel.label().to_string()));
        }
    }
    let mut cells = Vec::with_capacity(MetricKind::ALL.len());
    for metric in MetricKind::ALL {
        let mut row = Vec::with_capacity(CATEGORY_PAIRS.len());
        for (a, b) in CATEGORY_PAIRS {
            let xs = category_values(&rows, a, metric);
            let ys = category_values(&rows, b, metric);
            let r = mann_whitney(&xs, &ys)?;
            row.push(GridCell {
                p: r.p_value,
                band: PBand::of(r.p_value),
                n1: r.n1,
                n2: r.n2,
            });
        }
        cells.push(row);
    }
    Ok(PairwiseGrid {
        metrics: MetricKind::ALL.to_vec(),
        pairs: CATEGORY_PAIRS.to_vec(),
        cells,
    })
}

/// Actor-count buckets: x <= 2, 3 <= x <= 4, x >= 5.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActorBucket {
    AtMostTwo,
    ThreeToFour,
    AtLeastFive,
}

impl ActorBucket {
    pub const ALL: [ActorBucket; 3] = [
        ActorBucket::AtMostTwo,
        ActorBucket::ThreeToFour,
        ActorBucket::AtLeastFive,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            ActorBucket::AtMostTwo => "x <= 2",
            ActorBucket::ThreeToFour => "3 <= x <= 4",
            ActorBucket::AtLeastFive => "x >= 5",
        }
    }
}

pub fn bucket_of(n_actors: usize) -> ActorBucket {
    match n_actors {
        0..=2 => ActorBucket::AtMostTwo,
        3..=4 => ActorBucket::ThreeToFour,
        _ => ActorBucket::AtLeastFive,
    }
}

/// The three bucket-pair tests of the actor analysis, in report order.
pub const BUCKET_PAIRS: [(ActorBucket, ActorBucket); 3] = [
    (ActorBucket::AtMostTwo, ActorBucket::ThreeToFour),
    (ActorBucket::AtMostTwo, ActorBucket::AtLeastFive),
    (ActorBucket::ThreeToFour, ActorBucket::AtLeastFive),
];

/// Bucket distributions of one metric over a corpus (no annotations
/// required) plus the three pairwise tests.
pub struct BucketAnalysis {
    pub metric: MetricKind,
    pub distributions: [Vec<f64>; 3],
    pub tests: [Option<GridCell>; 3],
}

pub fn bucket_by_actors(
    corpus: &LabeledCorpus,
    metric: MetricKind,
    opts: &MetricsOptions,
) -> Result<BucketAnalysis, AnalyticsError> {
    let mut dists: [Vec<f64>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for issue in corpus.issues() {
        let m = compute_metrics_with(issue, opts)?;
        let b = bucket_of(m.n_actors);
        let slot = ActorBucket::ALL.iter().position(|x| *x == b).expect("bucket");
        dists[slot].push(metric.extract(&m));
    }
    let tests = bucket_tests(&dists)?;
    Ok(BucketAnalysis {
        metric,
        distributions: dists,
        tests,
    })
}

fn bucket_tests(dists: &[Vec<f64>; 3]) -> Result<[Option<GridCell>; 3], AnalyticsError> {
    let mut out: [Option<GridCell>; 3] = [None, None, None];
    for (slot, (a, b)) in BUCKET_PAIRS.iter().enumerate() {
        let ia = ActorBucket::ALL.iter().position(|x| x == a).expect("bucket");
        let ib = ActorBucket::ALL.iter().position(|x| x == b).expect("bucket");
        if dists[ia].is_empty() || dists[ib].is_empty() {
            continue;
        }
        let r = mann_whitney(&dists[ia], &dists[ib])?;
        out[slot] = Some(GridCell {
            p: r.p_value,
            band: PBand::of(r.p_value),
            n1: r.n1,
            n2: r.n2,
        });
    }
    Ok(out)
}

/// The actor-bucket grid per closing category (plus All), shaped like the
/// published actor-count table.
pub struct ActorBucketTable {
    pub metric: MetricKind,
    pub columns: Vec<CategorySel>,
    pub cells: Vec<[Option<GridCell>; 3]>,
}

pub fn bucket_table(
    corpus: &LabeledCorpus,
    metric: MetricKind,
    opts: &MetricsOptions,
) -> Result<ActorBucketTable, AnalyticsError> {
    let rows = annotated_metric_values(corpus, opts)?;
    // recompute n_actors per row for bucketing
    let columns = vec![
        CategorySel::All,
        CategorySel::Closing(ClosingCategory::Bug),
        CategorySel::Closing(ClosingCategory::FeatureRequestEnhancement),
        CategorySel::Closing(ClosingCategory::NotABug),
        CategorySel::Closing(ClosingCategory::Change),
    ];
    let mut cells = Vec::with_capacity(columns.len());
    for sel in &columns {
        let mut dists: [Vec<f64>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        for (m, cats) in &rows {
            let member = match sel {
                CategorySel::All => true,
                CategorySel::Closing(c) => cats.contains(c),
            };
            if member {
                let slot = ActorBucket::ALL
                    .iter()
                    .position(|x| *x == bucket_of(m.n_actors))
                    .expect("bucket");
                dists[slot].push(metric.extract(m));
            }
        }
        cells.push(bucket_tests(&dists)?);
    }
    Ok(ActorBucketTable {
        metric,
        columns,
        cells,
    })
}

/// Counts of annotated issues carrying each (opening, closing) motivation
/// pair, with per-opening row totals for share computation.
#[derive(Debug, Clone, Default)]
pub struct Cooccurrence {
    pub counts: BTreeMap<(OpeningMotivation, ClosingMotivation), usize>,
    pub opening_totals: BTreeMap<OpeningMotivation, usize>,
}

impl Cooccurrence {
    pub fn count(&self, o: OpeningMotivation, c: ClosingMotivation) -> usize {
        self.counts.get(&(o, c)).copied().unwrap_or(0)
    }

    /// Share of issues opened with `o` that were closed with `c`.
    pub fn row_share(&self, o: OpeningMotivation, c: ClosingMotivation) -> f64 {
        let total = self.opening_totals.get(&o).copied().unwrap_or(0);
        if total == 0 {
            0.0
        } else {
            self.count(o, c) as f64 / total as f64
        }
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// Builds the co-occurrence matrix over all annotated issues.
pub fn cooccurrence(corpus: &LabeledCorpus) -> Cooccurrence {
    let mut out = Cooccurrence::default();
    for issue in corpus.issues() {
        let Some(ann) = corpus.annotation(&issue.id) else {
            continue;
        };
        for &o in &ann.opening {
            *out.opening_totals.entry(o).or_insert(0) += 1;
            for &c in &ann.closing {
                *out.counts.entry((o, c)).or_insert(0) += 1;
            }
        }
    }
    out
}

/// Five-number summary plus mean, for the distribution tables.
#[derive(Debug, Clone, Serialize)]
pub struct DistributionSummary {
    pub n: usize,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub mean: f64,
}

/// Summarizes a sample; quartiles use linear interpolation between order
/// statistics.
pub fn summarize(values: &[f64]) -> Result<DistributionSummary, AnalyticsError> {
    if values.is_empty() {
        return Err(AnalyticsError::EmptySample);
    }
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    let q = |p: f64| -> f64 {
        let pos = p * (v.len() - 1) as f64;
        let lo = pos.floor() as usize;
        let frac = pos - lo as f64;
        if lo + 1 < v.len() {
            v[lo] + frac * (v[lo + 1] - v[lo])
        } else {
            v[lo]
        }
    };
    Ok(DistributionSummary {
        n: v.len(),
        min: v[0],
        q1: q(0.25),
        median: q(0.5),
        q3: q(0.75),
        max: v[v.len() - 1],
        mean: v.iter().sum::<f64>() / v.len() as f64,
    })
}
