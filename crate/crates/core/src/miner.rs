//! REST client for collecting closed issues: top-starred repository
//! discovery by language, exhaustive closed-issue and comment extraction,
//! rate-limit throttling, and resumable checkpoints.
//!
//! All HTTP goes through the [`Transport`] trait so every code path can run
//! against recorded fixtures; nothing here requires live network in tests.

use std::collections::{BTreeMap, HashSet};
use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::corpus::{AuthorRole, CommentRecord, CorpusError, IssueRecord, IssueState};

pub const DEFAULT_API_BASE: &str = "https://api.github.com";
/// API maximum page size, fixed for request economy.
pub const PAGE_SIZE: usize = 100;

#[derive(Debug, Error)]
pub enum MinerError {
    #[error("authentication failed (status {status}) for {url}")]
    Auth { status: u16, url: String },
    #[error("rate limited: required wait {wait_secs}s exceeds the {max_wait_secs}s budget")]
    RateLimited { wait_secs: u64, max_wait_secs: u64 },
    #[error("not found: {url}")]
    NotFound { url: String },
    #[error("transport failure after {attempts} attempts for {url}: {message}")]
    Transport {
        url: String,
        attempts: u32,
        message: String,
    },
    #[error("unexpected status {status} for {url}")]
    Status { status: u16, url: String },
    #[error("bad payload from {url}: {message}")]
    Parse { url: String, message: String },
    #[error("checkpoint error: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// A repository candidate from discovery.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepoRef {
    pub full_name: String,
    pub stars: u64,
    pub primary_language: String,
}

#[derive(Debug, Clone)]
pub struct HttpResponse {
    pub status: u16,
    /// Header names lowercased.
    pub headers: BTreeMap<String, String>,
    pub body: String,
}

/// One HTTP GET. Implementations: live client, recorded fixtures, and
/// failure-injecting wrappers for resume tests.
pub trait Transport {
    fn get(&mut self, url: &str) -> Result<HttpResponse, String>;
}

impl Transport for Box<dyn Transport> {
    fn get(&mut self, url: &str) -> Result<HttpResponse, String> {
        (**self).get(url)
    }
}

/// Live client. The token, when present, is sent as a bearer credential;
/// anonymous mode works but is tightly rate-limited.
pub struct HttpTransport {
    client: reqwest::blocking::Client,
    token: Option<String>,
}

impl HttpTransport {
    pub fn new(token: Option<String>) -> HttpTransport {
        let client = reqwest::blocking::Client::builder()
            .user_agent("wontfix-miner/0.1")
            .timeout(Duration::from_secs(60))
            .build()
            .expect("client construction");
        HttpTransport { client, token }
    }
}

impl Transport for HttpTransport {
    fn get(&mut self, url: &str) -> Result<HttpResponse, String> {
        let mut req = self
            .client
            .get(url)
            .header("Accept", "application/vnd.github+json");
        if let Some(token) = &self.token {
            req = req.header("Authorization", format!("Bearer {token}"));
        }
        let resp = req.send().map_err(|e| e.to_string())?;
        let status = resp.status().as_u16();
        let mut headers = BTreeMap::new();
        for (name, value) in resp.headers() {
            if let Ok(v) = value.to_str() {
                headers.insert(name.as_str().to_ascii_lowercase(), v.to_string());
            }
        }
        let body = resp.text().map_err(|e| e.to_string())?;
        Ok(HttpResponse {
            status,
            headers,
            body,
        })
    }
}

/// Recorded responses keyed by URL. Repeated requests for the same URL pop
/// recorded entries in order; the last entry repeats once the list is
/// drained. Unknown URLs answer 404.
#[derive(Default)]
pub struct FixtureTransport {
    responses: BTreeMap<String, Vec<FixtureResponse>>,
    cursor: BTreeMap<String, usize>,
    pub requests: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FixtureResponse {
    #[serde(default = "default_status")]
    pub status: u16,
    #[serde(default)]
    pub headers: BTreeMap<String, String>,
    #[serde(default)]
    pub body: Value,
}

fn default_status() -> u16 {
    200
}

#[derive(Serialize, Deserialize)]
struct FixtureFile {
    responses: BTreeMap<String, Vec<FixtureResponse>>,
}

impl FixtureTransport {
    pub fn new(responses: BTreeMap<String, Vec<FixtureResponse>>) -> FixtureTransport {
        FixtureTransport {
            responses,
            cursor: BTreeMap::new(),
            requests: Vec::new(),
        }
    }

    pub fn from_value(v: Value) -> Result<FixtureTransport, MinerError> {
        let file: FixtureFile = serde_json::from_value(v).map_err(|e| MinerError::Parse {
            url: "<fixture>".into(),
            message: e.to_string(),
        })?;
        Ok(FixtureTransport::new(file.responses))
    }

    pub fn load(path: &Path) -> Result<FixtureTransport, MinerError> {
        let text = std::fs::read_to_string(path)?;
        let v: Value = serde_json::from_str(&text).map_err(|e| MinerError::Parse {
            url: path.display().to_string(),
            message: e.to_string(),
        })?;
        FixtureTransport::from_value(v)
    }
}

impl Transport for FixtureTransport {
    fn get(&mut self, url: &str) -> Result<HttpResponse, String> {
        self.requests.push(url.to_string());
        let Some(list) = self.responses.get(url) else {
            return Ok(HttpResponse {
                status: 404,
                headers: BTreeMap::new(),
                body: "{\"message\":\"Not Found\"}".into(),
            });
        };
        let pos = self.cursor.entry(url.to_string()).or_insert(0);
        let idx = (*pos).min(list.len() - 1);
        *pos += 1;
        let rec = &list[idx];
        Ok(HttpResponse {
            status: rec.status,
            headers: rec.headers.clone(),
            body: rec.body.to_string(),
        })
    }
}

/// Wrapper that fails every request after the first `budget` have gone
/// through; drives the kill-and-resume tests.
pub struct FailAfter<T: Transport> {
    pub inner: T,
    pub budget: usize,
    served: usize,
}

impl<T: Transport> FailAfter<T> {
    pub fn new(inner: T, budget: usize) -> FailAfter<T> {
        FailAfter {
            inner,
            budget,
            served: 0,
        }
    }
}

impl<T: Transport> Transport for FailAfter<T> {
    fn get(&mut self, url: &str) -> Result<HttpResponse, String> {
        if self.served >= self.budget {
            return Err("injected failure".into());
        }
        self.served += 1;
        self.inner.get(url)
    }
}

/// Wall-clock access and sleeping, mockable for tests.
pub trait Sleeper {
    fn sleep(&mut self, d: Duration);
    fn now_epoch(&self) -> u64;
}

pub struct SystemSleeper;

impl Sleeper for SystemSleeper {
    fn sleep(&mut self, d: Duration) {
        std::thread::sleep(d);
    }

    fn now_epoch(&self) -> u64 {
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    }
}

/// Records sleeps instead of performing them.
#[derive(Default)]
pub struct RecordingSleeper {
    pub now: u64,
    pub slept: Vec<Duration>,
}

impl Sleeper for RecordingSleeper {
    fn sleep(&mut self, d: Duration) {
        self.slept.push(d);
        self.now += d.as_secs();
    }

    fn now_epoch(&self) -> u64 {
        self.now
    }
}

#[derive(Debug, Clone)]
pub struct ThrottleConfig {
    /// Politeness delay between pages.
    pub page_delay: Duration,
    /// Politeness delay between repositories.
    pub repo_delay: Duration,
    /// Reproduce the original scripts' fixed 40-second pause.
    pub legacy: bool,
    /// Quota level at or below which the miner waits for the reset.
    pub remaining_threshold: u64,
    /// Longest acceptable single wait before surfacing an error.
    pub max_wait: Duration,
}

impl Default for ThrottleConfig {
    fn default() -> Self {
        ThrottleConfig {
            page_delay: Duration::ZERO,
            repo_delay: Duration::from_secs(1),
            legacy: false,
            remaining_threshold: 0,
            max_wait: Duration::from_secs(3600),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pace {
    Page,
    Repo,
}

/// Mandated wait before the next request, from the most recent response
/// headers. Exhausted quota waits until the reset epoch plus one second;
/// legacy mode always waits the fixed 40 seconds.
pub fn throttle(
    headers: &BTreeMap<String, String>,
    now_epoch: u64,
    cfg: &ThrottleConfig,
    pace: Pace,
) -> Duration {
    if cfg.legacy {
        return Duration::from_secs(40);
    }
    let remaining = headers
        .get("x-ratelimit-remaining")
        .and_then(|v| v.parse::<u64>().ok());
    if let Some(rem) = remaining {
        if rem <= cfg.remaining_threshold {
            let reset = headers
                .get("x-ratelimit-reset")
                .and_then(|v| v.parse::<u64>().ok())
                .unwrap_or(now_epoch);
            return Duration::from_secs(reset.saturating_sub(now_epoch) + 1);
        }
    }
    match pace {
        Pace::Page => cfg.page_delay,
        Pace::Repo => cfg.repo_delay,
    }
}

/// Resumable mining state. Saves are atomic (temp file then rename); an
/// interrupted repository is replayed from the recorded output offset, so
/// a resumed run emits exactly what an uninterrupted one would have.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct MinerCheckpoint {
    /// Planned repository queue from discovery.
    pub repos: Vec<String>,
    /// Fully written repositories.
    pub completed: Vec<String>,
    /// Repository currently being written, if any.
    pub pending_repo: Option<String>,
    /// Output length when the pending repository started.
    pub out_offset: u64,
}

impl MinerCheckpoint {
    pub fn load(path: &Path) -> Result<MinerCheckpoint, MinerError> {
        if !path.exists() {
            return Ok(MinerCheckpoint::default());
        }
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| MinerError::Checkpoint(e.to_string()))
    }

    pub fn save(&self, path: &Path) -> Result<(), MinerError> {
        let tmp = path.with_extension("tmp");
        {
            let mut f = File::create(&tmp)?;
            let text = serde_json::to_string_pretty(self)
                .map_err(|e| MinerError::Checkpoint(e.to_string()))?;
            f.write_all(text.as_bytes())?;
            f.sync_all()?;
        }
        std::fs::rename(&tmp, path)?;
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct MineOptions {
    pub language: String,
    pub top_n: usize,
    pub out: PathBuf,
    pub checkpoint: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MineSummary {
    pub repos: usize,
    pub issues: usize,
}

pub struct Miner<T: Transport, S: Sleeper> {
    transport: T,
    pub sleeper: S,
    pub throttle: ThrottleConfig,
    pub api_base: String,
}

impl<T: Transport, S: Sleeper> Miner<T, S> {
    pub fn new(transport: T, sleeper: S) -> Miner<T, S> {
        Miner {
            transport,
            sleeper,
            throttle: ThrottleConfig::default(),
            api_base: DEFAULT_API_BASE.to_string(),
        }
    }

    pub fn with_api_base(mut self, base: &str) -> Self {
        self.api_base = base.trim_end_matches('/').to_string();
        self
    }

    pub fn with_throttle(mut self, cfg: ThrottleConfig) -> Self {
        self.throttle = cfg;
        self
    }

    fn wait(&mut self, d: Duration) {
        if d > Duration::ZERO {
            self.sleeper.sleep(d);
        }
    }

    /// GET with transport retries and rate-limit handling; applies the
    /// post-response politeness or reset wait before returning.
    fn get_json(&mut self, path: &str, pace: Pace) -> Result<Value, MinerError> {
        let url = format!("{}{}", self.api_base, path);
        loop {
            let resp = self.get_with_retries(&url)?;
            match resp.status {
                200 => {
                    let wait =
                        throttle(&resp.headers, self.sleeper.now_epoch(), &self.throttle, pace);
                    self.check_wait(wait)?;
                    self.wait(wait);
                    return serde_json::from_str(&resp.body).map_err(|e| MinerError::Parse {
                        url: url.clone(),
                        message: e.to_string(),
                    });
                }
                401 => return Err(MinerError::Auth { status: 401, url }),
                403 | 429 => {
                    let exhausted = resp
                        .headers
                        .get("x-ratelimit-remaining")
                        .and_then(|v| v.parse::<u64>().ok())
                        .map(|rem| rem <= self.throttle.remaining_threshold)
                        .unwrap_or(false);
                    if !exhausted {
                        // Forbidden without rate-limit evidence is an auth
                        // problem, not a throttling one.
                        return Err(MinerError::Auth {
                            status: resp.status,
                            url,
                        });
                    }
                    let wait =
                        throttle(&resp.headers, self.sleeper.now_epoch(), &self.throttle, pace);
                    self.check_wait(wait)?;
                    self.wait(wait);
                    // retry after the reset
                }
                404 => return Err(MinerError::NotFound { url }),
                status => return Err(MinerError::Status { status, url }),
            }
        }
    }

    fn check_wait(&self, wait: Duration) -> Result<(), MinerError> {
        if !self.throttle.legacy && wait > self.throttle.max_wait {
            return Err(MinerError::RateLimited {
                wait_secs: wait.as_secs(),
                max_wait_secs: self.throttle.max_wait.as_secs(),
            });
        }
        Ok(())
    }

    fn get_with_retries(&mut self, url: &str) -> Result<HttpResponse, MinerError> {
        const ATTEMPTS: u32 = 3;
        let mut last = String::new();
        for attempt in 1..=ATTEMPTS {
            match self.transport.get(url) {
                Ok(resp) => return Ok(resp),
                Err(e) => {
                    last = e;
                    if attempt < ATTEMPTS {
                        self.wait(Duration::from_secs(attempt as u64));
                    }
                }
            }
        }
        Err(MinerError::Transport {
            url: url.to_string(),
            attempts: ATTEMPTS,
            message: last,
        })
    }

    /// Top-starred repositories whose primary language matches the query,
    /// in descending star order. Repositories without any issue labels are
    /// filtered out.
    pub fn discover_repos(
        &mut self,
        language: &str,
        top_n: usize,
    ) -> Result<Vec<RepoRef>, MinerError> {
        let mut out = Vec::new();
        let mut page = 1usize;
        let encoded_lang = urlencode(language);
        while out.len() < top_n {
            let path = format!(
                "/search/repositories?q=language:{encoded_lang}&sort=stars&order=desc&per_page={PAGE_SIZE}&page={page}"
            );
            let v = self.get_json(&path, Pace::Page)?;
            let items = v
                .get("items")
                .and_then(Value::as_array)
                .cloned()
                .unwrap_or_default();
            if items.is_empty() {
                break;
            }
            let n_items = items.len();
            for item in items {
                if out.len() >= top_n {
                    break;
                }
                let full_name = item
                    .get("full_name")
                    .and_then(Value::as_str)
                    .ok_or_else(|| MinerError::Parse {
                        url: path.clone(),
                        message: "repository item without full_name".into(),
                    })?
                    .to_string();
                if full_name.split('/').filter(|p| !p.is_empty()).count() != 2 {
                    return Err(MinerError::Parse {
                        url: path.clone(),
                        message: format!("repository name `{full_name}` is not owner/name"),
                    });
                }
                let stars = item
                    .get("stargazers_count")
                    .and_then(Value::as_u64)
                    .unwrap_or(0);
                let lang = item
                    .get("language")
                    .and_then(Value::as_str)
                    .unwrap_or_default()
                    .to_string();
                if !lang.eq_ignore_ascii_case(language) {
                    continue;
                }
                if self.repo_has_labels(&full_name)? {
                    out.push(RepoRef {
                        full_name,
                        stars,
                        primary_language: lang,
                    });
                }
            }
            if n_items < PAGE_SIZE {
                break;
            }
            page += 1;
        }
        Ok(out)
    }

    fn repo_has_labels(&mut self, full_name: &str) -> Result<bool, MinerError> {
        let path = format!("/repos/{full_name}/labels?per_page=1");
        let v = self.get_json(&path, Pace::Page)?;
        Ok(v.as_array().map(|a| !a.is_empty()).unwrap_or(false))
    }

    /// All closed issues of a repository, pull requests excluded, with a
    /// second pass that picks up issues newly closed as wontfix while the
    /// first pass ran.
    pub fn fetch_closed_issues(&mut self, full_name: &str) -> Result<Vec<IssueRecord>, MinerError> {
        Ok(self
            .fetch_closed_issues_with_hints(full_name)?
            .into_iter()
            .map(|(issue, _)| issue)
            .collect())
    }

    fn fetch_closed_issues_with_hints(
        &mut self,
        full_name: &str,
    ) -> Result<Vec<(IssueRecord, u64)>, MinerError> {
        let mut issues = self.closed_issue_pass(full_name)?;
        let seen: HashSet<String> = issues.iter().map(|(i, _)| i.id.clone()).collect();
        for (issue, hint) in self.closed_issue_pass(full_name)? {
            if !seen.contains(&issue.id)
                && issue
                    .raw_labels
                    .iter()
                    .any(|l| crate::corpus::normalize_wontfix_label(l))
            {
                issues.push((issue, hint));
            }
        }
        Ok(issues)
    }

    fn closed_issue_pass(
        &mut self,
        full_name: &str,
    ) -> Result<Vec<(IssueRecord, u64)>, MinerError> {
        let mut out: Vec<(IssueRecord, u64)> = Vec::new();
        // Issues created mid-pagination shift the listing, so a page can
        // repeat an already-seen issue; keep the first occurrence.
        let mut seen: HashSet<String> = HashSet::new();
        let mut page = 1usize;
        loop {
            let path =
                format!("/repos/{full_name}/issues?state=closed&per_page={PAGE_SIZE}&page={page}");
            let v = self.get_json(&path, Pace::Page)?;
            let items = v.as_array().cloned().unwrap_or_default();
            if items.is_empty() {
                break;
            }
            let n_items = items.len();
            for item in &items {
                if item.get("pull_request").is_some() {
                    continue;
                }
                let (issue, hint) = parse_issue(full_name, item, &path)?;
                if seen.insert(issue.id.clone()) {
                    out.push((issue, hint));
                }
            }
            if n_items < PAGE_SIZE {
                break;
            }
            page += 1;
        }
        Ok(out)
    }

    /// Complete ordered comment list for one issue.
    pub fn fetch_comments(
        &mut self,
        full_name: &str,
        issue_number: u64,
    ) -> Result<Vec<CommentRecord>, MinerError> {
        let mut out = Vec::new();
        let mut page = 1usize;
        loop {
            let path = format!(
                "/repos/{full_name}/issues/{issue_number}/comments?per_page={PAGE_SIZE}&page={page}"
            );
            let v = self.get_json(&path, Pace::Page)?;
            let items = v.as_array().cloned().unwrap_or_default();
            if items.is_empty() {
                break;
            }
            let n_items = items.len();
            for item in &items {
                out.push(CommentRecord {
                    author: login_or_ghost(item.get("user")),
                    created_at: parse_time(item.get("created_at"), &path)?,
                    body: item
                        .get("body")
                        .and_then(Value::as_str)
                        .unwrap_or_default()
                        .to_string(),
                });
            }
            if n_items < PAGE_SIZE {
                break;
            }
            page += 1;
        }
        out.sort_by_key(|c| c.created_at);
        Ok(out)
    }

    /// Full collection run: discovery, per-repo extraction, JSONL output,
    /// checkpointing after every repository.
    pub fn mine(&mut self, opts: &MineOptions) -> Result<MineSummary, MinerError> {
        let ck_path = opts.checkpoint.clone();
        let mut ck = match &ck_path {
            Some(p) => MinerCheckpoint::load(p)?,
            None => MinerCheckpoint::default(),
        };
        if ck.repos.is_empty() {
            let repos = self.discover_repos(&opts.language, opts.top_n)?;
            ck.repos = repos.into_iter().map(|r| r.full_name).collect();
            if let Some(p) = &ck_path {
                ck.save(p)?;
            }
        }
        // Recover from a mid-repo interruption by truncating back to the
        // recorded offset.
        if ck.pending_repo.is_some() {
            let f = OpenOptions::new()
                .write(true)
                .create(true)
                .truncate(false)
                .open(&opts.out)?;
            f.set_len(ck.out_offset)?;
            f.sync_all()?;
            ck.pending_repo = None;
        }
        let mut out_len = std::fs::metadata(&opts.out).map(|m| m.len()).unwrap_or(0);
        let mut summary = MineSummary::default();
        let completed: HashSet<String> = ck.completed.iter().cloned().collect();
        let queue: Vec<String> = ck
            .repos
            .iter()
            .filter(|r| !completed.contains(*r))
            .cloned()
            .collect();
        for (idx, repo) in queue.iter().enumerate() {
            ck.pending_repo = Some(repo.clone());
            ck.out_offset = out_len;
            if let Some(p) = &ck_path {
                ck.save(p)?;
            }
            let mut rows = self.fetch_closed_issues_with_hints(repo)?;
            for (issue, hint) in &mut rows {
                if *hint > 0 {
                    issue.comments = self.fetch_comments(repo, issue_number(&issue.id))?;
                }
            }
            let file = OpenOptions::new()
                .create(true)
                .append(true)
                .open(&opts.out)?;
            let mut w = BufWriter::new(file);
            for (issue, _) in &rows {
                let line = serde_json::to_string(issue).expect("issue serializes");
                writeln!(w, "{line}")?;
            }
            w.flush()?;
            w.get_ref().sync_all()?;
            out_len = std::fs::metadata(&opts.out)?.len();
            ck.pending_repo = None;
            ck.completed.push(repo.clone());
            if let Some(p) = &ck_path {
                ck.save(p)?;
            }
            summary.repos += 1;
            summary.issues += rows.len();
            if idx + 1 < queue.len() {
                let wait = throttle(
                    &BTreeMap::new(),
                    self.sleeper.now_epoch(),
                    &self.throttle,
                    Pace::Repo,
                );
                self.wait(wait);
            }
        }
        Ok(summary)
    }
}

/// Issue numbers ride inside ids as `owner/name#number`.
fn issue_number(id: &str) -> u64 {
    id.rsplit('#').next().and_then(|n| n.parse().ok()).unwrap_or(0)
}

fn login_or_ghost(user: Option<&Value>) -> String {
    user.and_then(|u| u.get("login"))
        .and_then(Value::as_str)
        .unwrap_or("ghost")
        .to_string()
}

fn parse_time(v: Option<&Value>, url: &str) -> Result<DateTime<Utc>, MinerError> {
    let s = v.and_then(Value::as_str).ok_or_else(|| MinerError::Parse {
        url: url.to_string(),
        message: "missing timestamp".into(),
    })?;
    DateTime::parse_from_rfc3339(s)
        .map(|t| t.with_timezone(&Utc))
        .map_err(|e| MinerError::Parse {
            url: url.to_string(),
            message: format!("bad timestamp {s}: {e}"),
        })
}

fn parse_issue(
    full_name: &str,
    item: &Value,
    url: &str,
) -> Result<(IssueRecord, u64), MinerError> {
    let number = item
        .get("number")
        .and_then(Value::as_u64)
        .ok_or_else(|| MinerError::Parse {
            url: url.to_string(),
            message: "issue without number".into(),
        })?;
    let state = match item.get("state").and_then(Value::as_str) {
        Some("open") => IssueState::Open,
        _ => IssueState::Closed,
    };
    let labels = item
        .get("labels")
        .and_then(Value::as_array)
        .map(|arr| {
            arr.iter()
                .filter_map(|l| l.get("name").and_then(Value::as_str))
                .map(str::to_string)
                .collect()
        })
        .unwrap_or_default();
    let role = match item.get("author_association").and_then(Value::as_str) {
        Some("OWNER") => AuthorRole::Owner,
        Some("MEMBER") => AuthorRole::Member,
        Some("CONTRIBUTOR") => AuthorRole::Contributor,
        Some("COLLABORATOR") => AuthorRole::Collaborator,
        _ => AuthorRole::Outsider,
    };
    let created_at = parse_time(item.get("created_at"), url)?;
    let closed_at = match item.get("closed_at") {
        None | Some(Value::Null) => None,
        some => Some(parse_time(some, url)?),
    };
    let n_comments = item.get("comments").and_then(Value::as_u64).unwrap_or(0);
    let issue = IssueRecord {
        id: format!("{full_name}#{number}"),
        repo: full_name.to_string(),
        url: item
            .get("html_url")
            .and_then(Value::as_str)
            .unwrap_or_default()
            .to_string(),
        title: item
            .get("title")
            .and_then(Value::as_str)
            .unwrap_or_default()
            .to_string(),
        body: item
            .get("body")
            .and_then(Value::as_str)
            .unwrap_or_default()
            .to_string(),
        state,
        raw_labels: labels,
        created_at,
        closed_at,
        author: login_or_ghost(item.get("user")),
        author_role: role,
        comments: vec![],
    };
    Ok((issue, n_comments))
}

fn urlencode(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for b in s.bytes() {
        match b {
            b'a'..=b'z' | b'A'..=b'Z' | b'0'..=b'9' | b'-' | b'_' | b'.' | b'~' => {
                out.push(b as char)
            }
            _ => out.push_str(&format!("%{b:02X}")),
        }
    }
    out
}
