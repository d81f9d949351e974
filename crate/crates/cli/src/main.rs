//! Subcommand front end wiring the toolkit into one workflow:
//! mine -> train -> evaluate/predict, plus the discussion statistics.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 when --strict
//! escalates a nonconvergence warning.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};

use wontfix_core::analytics::{
    bucket_by_actors, bucket_table, compare_categories, compute_metrics_with, cooccurrence,
    summarize, ActorBucket, AnalyticsError, MetricKind, MetricsOptions, BUCKET_PAIRS,
};
use wontfix_core::classifiers::{
    export_tree, feature_usage_ranking, ModelBody, ModelKind, SavedModel, SmoParams, TreeParams,
};
use wontfix_core::corpus::{load_prediction_input, stratified_split, LabeledCorpus};
use wontfix_core::evaluation::{
    cross_validate, evaluate_holdout, metrics_from_confusion, preprocess_corpus, train_model,
    ConfusionMatrix, EvalSettings, EvaluationReport, Hyperparameters, ReportConfig,
};
use wontfix_core::features::{TermDocumentMatrix, VocabFitMode, Vocabulary, WeightingScheme};
use wontfix_core::miner::{
    FixtureTransport, HttpTransport, MineOptions, Miner, SystemSleeper, ThrottleConfig, Transport,
};
use wontfix_core::textprep::Pipeline;

const DEFAULT_SEED: u64 = 42;

#[derive(Parser)]
#[command(
    name = "wontfix",
    version,
    about = "Mine GitHub issue corpora, analyze discussions, and predict wontfix closures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Collect closed issues from GitHub into a JSONL corpus
    Mine(MineArgs),
    /// Train a classifier on a corpus and save the model
    Train(TrainArgs),
    /// Evaluate a classifier by holdout or cross-validation
    Evaluate(EvaluateArgs),
    /// Score issues (title and description only) with a saved model
    Predict(PredictArgs),
    /// Discussion metrics, hypothesis tests, and taxonomy tables
    Stats(StatsArgs),
    /// Render a trained tree and its feature usage ranking
    ExportTree(ExportTreeArgs),
    /// Generate a seeded synthetic demo corpus (no network needed)
    Synth(SynthArgs),
}

#[derive(Args)]
struct MineArgs {
    /// Primary language filter for repository discovery
    #[arg(long)]
    language: String,
    /// How many top-starred repositories to mine
    #[arg(long = "top-n", default_value_t = 1000)]
    top_n: usize,
    /// Output corpus (JSON Lines, appended to on resume)
    #[arg(long)]
    out: PathBuf,
    /// Checkpoint file enabling resumable runs
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Environment variable holding the API token
    #[arg(long = "token-env", default_value = "GITHUB_TOKEN")]
    token_env: String,
    /// Reproduce the original collection scripts' fixed 40s pause
    #[arg(long = "legacy-throttle")]
    legacy_throttle: bool,
    /// Recorded HTTP fixture file instead of live network
    #[arg(long)]
    fixture: Option<PathBuf>,
    /// API base URL
    #[arg(long = "api-base", default_value = wontfix_core::miner::DEFAULT_API_BASE)]
    api_base: String,
}

#[derive(Args)]
struct TrainArgs {
    #[arg(long)]
    corpus: PathBuf,
    /// nb, smo, or j48
    #[arg(long)]
    model: String,
    #[arg(long)]
    out: PathBuf,
    /// Naive Bayes smoothing
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// SMO box constraint
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// SMO KKT tolerance
    #[arg(long, default_value_t = 1e-3)]
    tol: f64,
    /// Tree pruning confidence factor
    #[arg(long, default_value_t = 0.25)]
    cf: f64,
    /// Minimum instances per tree branch
    #[arg(long = "min-leaf", default_value_t = 2)]
    min_leaf: usize,
    /// raw or sublinear term-frequency weighting
    #[arg(long, default_value = "raw")]
    weighting: String,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Record the full-corpus vocabulary-fit convention in the header
    #[arg(long = "paper-compat")]
    paper_compat: bool,
    /// Escalate nonconvergence warnings to exit code 3
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct EvaluateArgs {
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long)]
    model: Option<String>,
    /// holdout or cv
    #[arg(long, default_value = "holdout")]
    mode: String,
    #[arg(long, default_value_t = 0.5)]
    fraction: f64,
    #[arg(long, default_value_t = 10)]
    folds: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Fit the vocabulary on the full corpus instead of the training part
    #[arg(long = "paper-compat")]
    paper_compat: bool,
    #[arg(long, default_value = "raw")]
    weighting: String,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(long, default_value_t = 1e-3)]
    tol: f64,
    #[arg(long, default_value_t = 0.25)]
    cf: f64,
    #[arg(long = "min-leaf", default_value_t = 2)]
    min_leaf: usize,
    /// Compute metrics straight from "tp,fn,fp,tn" counts
    #[arg(long = "from-matrix")]
    from_matrix: Option<String>,
    /// Write the machine-readable report here
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write the TSV export here
    #[arg(long)]
    tsv: Option<PathBuf>,
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct PredictArgs {
    /// Saved model file
    #[arg(long)]
    model: PathBuf,
    /// Issues to score (JSONL with id, title, body)
    #[arg(long)]
    issues: PathBuf,
    /// Predictions TSV (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    corpus: PathBuf,
    /// table4, table5, buckets, cooccurrence, or summary
    #[arg(long)]
    analysis: String,
    /// Metric for bucket analyses (timeToCloseIssue by default)
    #[arg(long)]
    metric: Option<String>,
    /// Count the opening post as a discussion message
    #[arg(long = "count-opening-post")]
    count_opening_post: bool,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExportTreeArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Limit the feature ranking to the top N terms
    #[arg(long)]
    top: Option<usize>,
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long)]
    out: PathBuf,
    #[arg(long = "n-issues", default_value_t = 500)]
    n_issues: usize,
    #[arg(long = "wontfix-fraction", default_value_t = 0.3)]
    wontfix_fraction: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Attach taxonomy annotations to the wontfix issues
    #[arg(long)]
    annotate: bool,
    /// Correlate time-to-close with the number of discussion actors
    #[arg(long = "correlate-close-time")]
    correlate_close_time: bool,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Data(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Data(e.into())
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own message; the exit code contract is ours
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    let result = match cli.command {
        Command::Mine(args) => cmd_mine(args),
        Command::Train(args) => cmd_train(args),
        Command::Evaluate(args) => cmd_evaluate(args),
        Command::Predict(args) => cmd_predict(args),
        Command::Stats(args) => cmd_stats(args),
        Command::ExportTree(args) => cmd_export_tree(args),
        Command::Synth(args) => cmd_synth(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Data(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn parse_kind(s: &str) -> Result<ModelKind, CliError> {
    ModelKind::parse(s).ok_or_else(|| usage(format!("unknown model kind `{s}` (nb, smo, j48)")))
}

fn parse_weighting(s: &str) -> Result<WeightingScheme, CliError> {
    WeightingScheme::parse(s)
        .ok_or_else(|| usage(format!("unknown weighting `{s}` (raw, sublinear)")))
}

fn write_or_print(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_mine(args: MineArgs) -> Result<u8, CliError> {
    if args.top_n == 0 {
        return Err(usage("--top-n must be at least 1"));
    }
    let throttle = ThrottleConfig {
        legacy: args.legacy_throttle,
        ..ThrottleConfig::default()
    };
    let (transport, api_base): (Box<dyn Transport>, String) = match &args.fixture {
        Some(path) => (Box::new(FixtureTransport::load(path)?), String::new()),
        None => {
            let token = std::env::var(&args.token_env).ok();
            if token.is_none() {
                eprintln!(
                    "note: ${} not set; mining anonymously with tight rate limits",
                    args.token_env
                );
            }
            (Box::new(HttpTransport::new(token)), args.api_base.clone())
        }
    };
    let mut miner = Miner::new(transport, SystemSleeper)
        .with_api_base(&api_base)
        .with_throttle(throttle);
    let opts = MineOptions {
        language: args.language.clone(),
        top_n: args.top_n,
        out: args.out.clone(),
        checkpoint: args.checkpoint.clone(),
    };
    let summary = miner.mine(&opts)?;
    eprintln!(
        "# config: language={} top_n={} legacy_throttle={} out={}",
        args.language,
        args.top_n,
        args.legacy_throttle,
        args.out.display()
    );
    println!(
        "mined {} issues from {} repositories into {}",
        summary.issues,
        summary.repos,
        args.out.display()
    );
    Ok(0)
}

fn hyperparameters(alpha: f64, c: f64, tol: f64, cf: f64, min_leaf: usize) -> Hyperparameters {
    Hyperparameters {
        nb_alpha: alpha,
        smo: SmoParams {
            c,
            tol,
            ..SmoParams::default()
        },
        tree: TreeParams { cf, min_leaf },
    }
}

fn cmd_train(args: TrainArgs) -> Result<u8, CliError> {
    let kind = parse_kind(&args.model)?;
    let weighting = parse_weighting(&args.weighting)?;
    let corpus = LabeledCorpus::load(&args.corpus)
        .with_context(|| format!("loading {}", args.corpus.display()))?;
    let pipeline = Pipeline::new();
    let docs = preprocess_corpus(&pipeline, &corpus);
    let streams: Vec<_> = docs.iter().map(|(_, t, _)| t.clone()).collect();
    let vocab = Vocabulary::fit(&streams, 1)?;
    let matrix = TermDocumentMatrix::from_token_streams(vocab, weighting, &docs);
    let hp = hyperparameters(args.alpha, args.c, args.tol, args.cf, args.min_leaf);
    let body = train_model(kind, &matrix, &hp)?;
    let nonconverged = matches!(&body, ModelBody::Smo(m) if !m.converged);
    let fit_mode = if args.paper_compat {
        VocabFitMode::FullCorpus
    } else {
        VocabFitMode::TrainOnly
    };
    let saved = SavedModel::new(body, matrix.vocab().clone(), weighting, fit_mode.as_str());
    saved.save(&args.out)?;
    println!(
        "trained {} on {} issues ({} terms); model written to {}",
        kind.as_str(),
        corpus.len(),
        saved.vocabulary.len(),
        args.out.display()
    );
    if nonconverged {
        eprintln!("warning: smo did not converge within the pass budget");
        if args.strict {
            return Ok(3);
        }
    }
    Ok(0)
}

fn parse_matrix(spec: &str) -> Result<ConfusionMatrix, CliError> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(usage("--from-matrix expects four counts: tp,fn,fp,tn"));
    }
    let nums: Result<Vec<u64>, _> = parts.iter().map(|p| p.parse::<u64>()).collect();
    let nums = nums.map_err(|_| usage("--from-matrix counts must be non-negative integers"))?;
    Ok(ConfusionMatrix::new(nums[0], nums[1], nums[2], nums[3]))
}

fn emit_report(
    report: &EvaluationReport,
    json: &Option<PathBuf>,
    tsv: &Option<PathBuf>,
) -> Result<(), CliError> {
    print!("{report}");
    if let Some(path) = json {
        fs::write(path, report.to_json())
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = tsv {
        fs::write(path, report.to_tsv()).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn cmd_evaluate(args: EvaluateArgs) -> Result<u8, CliError> {
    if let Some(spec) = &args.from_matrix {
        let cm = parse_matrix(spec)?;
        let report = metrics_from_confusion(
            cm,
            ReportConfig {
                mode: "matrix".into(),
                ..ReportConfig::default()
            },
        )
        .map_err(anyhow::Error::from)?;
        emit_report(&report, &args.json, &args.tsv)?;
        return Ok(0);
    }
    let corpus_path = args
        .corpus
        .as_ref()
        .ok_or_else(|| usage("--corpus is required unless --from-matrix is given"))?;
    let model = args
        .model
        .as_ref()
        .ok_or_else(|| usage("--model is required unless --from-matrix is given"))?;
    let kind = parse_kind(model)?;
    let weighting = parse_weighting(&args.weighting)?;
    let corpus = LabeledCorpus::load(corpus_path)
        .with_context(|| format!("loading {}", corpus_path.display()))?;
    let settings = EvalSettings {
        kind,
        hp: hyperparameters(args.alpha, args.c, args.tol, args.cf, args.min_leaf),
        seed: args.seed,
        fit_mode: if args.paper_compat {
            VocabFitMode::FullCorpus
        } else {
            VocabFitMode::TrainOnly
        },
        weighting,
    };
    let mut report = match args.mode.as_str() {
        "holdout" => {
            if !(args.fraction > 0.0 && args.fraction < 1.0) {
                return Err(usage(format!(
                    "--fraction {} must lie strictly between 0 and 1",
                    args.fraction
                )));
            }
            let (train, test) = stratified_split(&corpus, args.fraction, args.seed)?;
            let mut r = evaluate_holdout(&train, &test, &settings)?;
            r.config.fraction = Some(args.fraction);
            r
        }
        "cv" => cross_validate(&corpus, args.folds, &settings)?,
        other => return Err(usage(format!("unknown mode `{other}` (holdout, cv)"))),
    };
    report.config.mode = args.mode.clone();
    emit_report(&report, &args.json, &args.tsv)?;
    let warned = report.flags.iter().any(|f| f.contains("converge"));
    if warned {
        eprintln!("warning: smo did not converge within the pass budget");
        if args.strict {
            return Ok(3);
        }
    }
    Ok(0)
}

fn cmd_predict(args: PredictArgs) -> Result<u8, CliError> {
    let model = SavedModel::load(&args.model)?;
    let file = fs::File::open(&args.issues)
        .with_context(|| format!("opening {}", args.issues.display()))?;
    let inputs = load_prediction_input(file)?;
    let pipeline = Pipeline::new();
    let mut out = String::new();
    out.push_str("# wontfix-predictions v1\n");
    out.push_str(&format!(
        "# model={} vocab_hash={} weighting={}\n",
        model.kind().as_str(),
        model.vocab_hash,
        model.weighting.as_str()
    ));
    out.push_str("id\tclass\tscore\n");
    for rec in &inputs {
        let p = model.predict_text(&pipeline, &rec.title, &rec.body);
        out.push_str(&format!("{}\t{}\t{}\n", rec.id, p.class.as_str(), p.score));
    }
    write_or_print(&args.out, &out)?;
    eprintln!("scored {} issues", inputs.len());
    Ok(0)
}

fn metric_or_default(metric: &Option<String>) -> Result<MetricKind, CliError> {
    match metric {
        None => Ok(MetricKind::TimeToClose),
        Some(name) => {
            MetricKind::parse(name).ok_or_else(|| usage(format!("unknown metric `{name}`")))
        }
    }
}

fn analytics_context(e: AnalyticsError) -> CliError {
    match &e {
        AnalyticsError::MissingAnnotations => CliError::Data(anyhow!(
            "{e}: this analysis needs taxonomy annotations (an `annotations` object per issue)"
        )),
        _ => CliError::Data(e.into()),
    }
}

fn cmd_stats(args: StatsArgs) -> Result<u8, CliError> {
    let corpus = LabeledCorpus::load(&args.corpus)
        .with_context(|| format!("loading {}", args.corpus.display()))?;
    let opts = MetricsOptions {
        count_opening_post: args.count_opening_post,
    };
    let header = format!(
        "# corpus={} analysis={} count_opening_post={}\n",
        args.corpus.display(),
        args.analysis,
        args.count_opening_post
    );
    let body = match args.analysis.as_str() {
        "table4" => {
            let grid = compare_categories(&corpus, &opts).map_err(analytics_context)?;
            let mut s = String::from("metric");
            for (a, b) in &grid.pairs {
                s.push_str(&format!("\t{}-{}", a.short(), b.short()));
            }
            s.push('\n');
            for (row, metric) in grid.metrics.iter().enumerate() {
                s.push_str(metric.name());
                for cell in &grid.cells[row] {
                    s.push_str(&format!("\t{:.4} ({})", cell.p, cell.band.as_str()));
                }
                s.push('\n');
            }
            s
        }
        "table5" => {
            let metric = metric_or_default(&args.metric)?;
            let table = bucket_table(&corpus, metric, &opts).map_err(analytics_context)?;
            let mut s = format!("test ({})", metric.name());
            for col in &table.columns {
                s.push_str(&format!("\t{}", col.label()));
            }
            s.push('\n');
            for (row, (a, b)) in BUCKET_PAIRS.iter().enumerate() {
                s.push_str(&format!("({}) vs ({})", a.label(), b.label()));
                for col_cells in &table.cells {
                    match &col_cells[row] {
                        Some(cell) => {
                            s.push_str(&format!("\t{:.4} ({})", cell.p, cell.band.as_str()))
                        }
                        None => s.push_str("\tNA"),
                    }
                }
                s.push('\n');
            }
            s
        }
        "buckets" => {
            let metric = metric_or_default(&args.metric)?;
            let analysis = bucket_by_actors(&corpus, metric, &opts).map_err(analytics_context)?;
            let mut s = format!(
                "bucket\tn\tmin\tq1\tmedian\tq3\tmax\tmean ({})\n",
                metric.name()
            );
            for (i, bucket) in ActorBucket::ALL.iter().enumerate() {
                let d = &analysis.distributions[i];
                if d.is_empty() {
                    s.push_str(&format!("{}\t0\tNA\tNA\tNA\tNA\tNA\tNA\n", bucket.label()));
                } else {
                    let sum = summarize(d).map_err(analytics_context)?;
                    s.push_str(&format!(
                        "{}\t{}\t{:.4}\t{:.4}\t{:.4}\t{:.4}\t{:.4}\t{:.4}\n",
                        bucket.label(),
                        sum.n,
                        sum.min,
                        sum.q1,
                        sum.median,
                        sum.q3,
                        sum.max,
                        sum.mean
                    ));
                }
            }
            for (i, (a, b)) in BUCKET_PAIRS.iter().enumerate() {
                match &analysis.tests[i] {
                    Some(cell) => s.push_str(&format!(
                        "test ({}) vs ({}): p={:.4} ({})\n",
                        a.label(),
                        b.label(),
                        cell.p,
                        cell.band.as_str()
                    )),
                    None => s.push_str(&format!(
                        "test ({}) vs ({}): NA (empty bucket)\n",
                        a.label(),
                        b.label()
                    )),
                }
            }
            s
        }
        "cooccurrence" => {
            let co = cooccurrence(&corpus);
            if co.is_empty() {
                return Err(analytics_context(AnalyticsError::MissingAnnotations));
            }
            let mut s = String::from("opening\tclosing\tcount\trow_share\n");
            for ((o, c), count) in &co.counts {
                s.push_str(&format!(
                    "{}\t{}\t{}\t{:.4}\n",
                    o.id(),
                    c.id(),
                    count,
                    co.row_share(*o, *c)
                ));
            }
            s
        }
        "summary" => {
            // One row per metric for the whole corpus, plus per closing
            // category rows when annotations are present.
            let mut groups: Vec<(String, Vec<&wontfix_core::corpus::IssueRecord>)> =
                vec![("All".into(), corpus.issues().iter().collect())];
            if corpus.has_annotations() {
                use wontfix_core::corpus::taxonomy::ClosingCategory;
                for cat in [
                    ClosingCategory::Bug,
                    ClosingCategory::FeatureRequestEnhancement,
                    ClosingCategory::Change,
                    ClosingCategory::NotABug,
                    ClosingCategory::Other,
                ] {
                    let members: Vec<_> = corpus
                        .issues()
                        .iter()
                        .filter(|i| {
                            corpus
                                .annotation(&i.id)
                                .map(|a| a.closing.iter().any(|m| m.category() == cat))
                                .unwrap_or(false)
                        })
                        .collect();
                    if !members.is_empty() {
                        groups.push((cat.as_str().to_string(), members));
                    }
                }
            }
            let mut s = String::from("metric\tcategory\tn\tmin\tq1\tmedian\tq3\tmax\tmean\n");
            for metric in MetricKind::ALL {
                for (label, members) in &groups {
                    let values: Result<Vec<f64>, _> = members
                        .iter()
                        .map(|i| compute_metrics_with(i, &opts).map(|m| metric.extract(&m)))
                        .collect();
                    let values = values.map_err(analytics_context)?;
                    let sum = summarize(&values).map_err(analytics_context)?;
                    s.push_str(&format!(
                        "{}\t{}\t{}\t{:.4}\t{:.4}\t{:.4}\t{:.4}\t{:.4}\t{:.4}\n",
                        metric.name(),
                        label,
                        sum.n,
                        sum.min,
                        sum.q1,
                        sum.median,
                        sum.q3,
                        sum.max,
                        sum.mean
                    ));
                }
            }
            s
        }
        other => {
            return Err(usage(format!(
                "unknown analysis `{other}` (table4, table5, buckets, cooccurrence, summary)"
            )))
        }
    };
    write_or_print(&args.out, &format!("{header}{body}"))?;
    Ok(0)
}

fn cmd_export_tree(args: ExportTreeArgs) -> Result<u8, CliError> {
    let model = SavedModel::load(&args.model)?;
    let ModelBody::J48(tree) = &model.body else {
        return Err(usage(format!(
            "model is {}, not a tree; export-tree needs a j48 model",
            model.kind().as_str()
        )));
    };
    let mut out = String::new();
    out.push_str(&export_tree(tree, &model.vocabulary));
    out.push_str("\nfeature usage (depth-discounted):\n");
    let ranked = feature_usage_ranking(tree, &model.vocabulary);
    let limit = args.top.unwrap_or(ranked.len());
    for (term, weight) in ranked.into_iter().take(limit) {
        out.push_str(&format!("{term}\t{weight}\n"));
    }
    write_or_print(&args.out, &out)?;
    Ok(0)
}

fn cmd_synth(args: SynthArgs) -> Result<u8, CliError> {
    if !(args.wontfix_fraction > 0.0 && args.wontfix_fraction < 1.0) {
        return Err(usage("--wontfix-fraction must lie strictly between 0 and 1"));
    }
    let corpus = wontfix_core::synth::generate_corpus(&wontfix_core::synth::SynthOptions {
        n_issues: args.n_issues,
        wontfix_fraction: args.wontfix_fraction,
        seed: args.seed,
        annotate: args.annotate,
        correlate_close_time: args.correlate_close_time,
    });
    let mut buf = Vec::new();
    corpus.write_jsonl(&mut buf)?;
    fs::write(&args.out, buf).with_context(|| format!("writing {}", args.out.display()))?;
    let (w, n) = corpus.class_counts();
    println!(
        "wrote {} issues ({} wontfix, {} non-wontfix) to {}",
        corpus.len(),
        w,
        n,
        args.out.display()
    );
    Ok(0)
}
