//! Deterministic text pipeline: HTML removal, tokenization, stopword
//! removal, and Snowball (Porter2) English stemming.
//!
//! All stages are pure functions; the composed [`preprocess`] is safe to run
//! in parallel across documents.

use std::collections::HashSet;

use rust_stemmers::{Algorithm, Stemmer};

/// The bundled stopword list, version 1. One lowercase word per line,
/// `#` starts a comment. Changing this file is a breaking corpus-format
/// event, so it is versioned.
pub const STOPWORDS_V1: &str = include_str!("../data/stopwords_en_v1.txt");

/// Ordered stream of lowercase stemmed tokens produced by [`preprocess`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TokenStream {
    tokens: Vec<String>,
}

impl TokenStream {
    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, String> {
        self.tokens.iter()
    }

    pub fn into_vec(self) -> Vec<String> {
        self.tokens
    }
}

impl From<Vec<String>> for TokenStream {
    fn from(tokens: Vec<String>) -> Self {
        TokenStream { tokens }
    }
}

/// Text pipeline with a frozen stopword list and an English Snowball stemmer.
pub struct Pipeline {
    stopwords: HashSet<String>,
    stopword_stems: HashSet<String>,
    stemmer: Stemmer,
}

impl Default for Pipeline {
    fn default() -> Self {
        Pipeline::new()
    }
}

impl Pipeline {
    /// Pipeline with the bundled version-1 stopword list.
    pub fn new() -> Self {
        Pipeline::with_stopword_file(STOPWORDS_V1)
    }

    /// Pipeline with a caller-supplied stopword list (one word per line,
    /// `#` comments).
    pub fn with_stopword_file(contents: &str) -> Self {
        let stopwords: HashSet<String> = parse_stopword_list(contents).collect();
        let stemmer = Stemmer::create(Algorithm::English);
        // The stemmed closure keeps stems of stopwords ("veri", "becaus")
        // from re-entering the stream through other surface forms.
        let stopword_stems = stopwords
            .iter()
            .map(|w| stemmer.stem(w).to_string())
            .collect();
        Pipeline {
            stopwords,
            stopword_stems,
            stemmer,
        }
    }

    pub fn stopwords(&self) -> &HashSet<String> {
        &self.stopwords
    }

    /// Removes tokens present in the stopword list, preserving order.
    /// No deduplication is performed.
    pub fn remove_stopwords(&self, tokens: Vec<String>) -> Vec<String> {
        tokens
            .into_iter()
            .filter(|t| !self.stopwords.contains(t))
            .collect()
    }

    /// Replaces each token by its Snowball (Porter2) English stem.
    pub fn stem(&self, tokens: Vec<String>) -> Vec<String> {
        tokens
            .into_iter()
            .map(|t| self.stemmer.stem(&t).to_string())
            .collect()
    }

    /// Stems a single token.
    pub fn stem_word(&self, word: &str) -> String {
        self.stemmer.stem(word).to_string()
    }

    /// Full pipeline over the concatenation `title ␣ body`: strip markup,
    /// tokenize, remove stopwords, stem. Title and body contribute to one
    /// stream with no field weighting. A final filter drops tokens that land
    /// in the stopword list's stemmed closure, so the stream invariant holds
    /// even for words whose stem collides with a stopword.
    pub fn preprocess(&self, title: &str, body: &str) -> TokenStream {
        let mut text = String::with_capacity(title.len() + body.len() + 1);
        text.push_str(title);
        text.push(' ');
        text.push_str(body);
        let stripped = strip_markup(&text);
        let tokens = tokenize(&stripped);
        let kept = self.remove_stopwords(tokens);
        let stemmed = self.stem(kept);
        let tokens = stemmed
            .into_iter()
            .filter(|t| !self.stopwords.contains(t) && !self.stopword_stems.contains(t))
            .collect();
        TokenStream { tokens }
    }
}

/// Parses a stopword list: one lowercase word per line, `#` comments.
pub fn parse_stopword_list(contents: &str) -> impl Iterator<Item = String> + '_ {
    contents
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.to_string())
}

/// Removes HTML tag spans and decodes the five standard entities
/// (`&amp; &lt; &gt; &quot; &#39;`). Fenced and inline code are retained as
/// text. An unbalanced `<` with no closing `>` on the same line is treated
/// as literal text.
pub fn strip_markup(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'<' => {
                // Look for '>' before end of line.
                let mut j = i + 1;
                let mut close = None;
                while j < bytes.len() && bytes[j] != b'\n' {
                    if bytes[j] == b'>' {
                        close = Some(j);
                        break;
                    }
                    j += 1;
                }
                match close {
                    Some(end) => i = end + 1,
                    None => {
                        out.push('<');
                        i += 1;
                    }
                }
            }
            b'&' => {
                const ENTITIES: [(&str, char); 5] = [
                    ("&amp;", '&'),
                    ("&lt;", '<'),
                    ("&gt;", '>'),
                    ("&quot;", '"'),
                    ("&#39;", '\''),
                ];
                let rest = &text[i..];
                if let Some((ent, ch)) = ENTITIES.iter().find(|(e, _)| rest.starts_with(e)) {
                    out.push(*ch);
                    i += ent.len();
                } else {
                    out.push('&');
                    i += 1;
                }
            }
            _ => {
                let ch = text[i..].chars().next().expect("in-bounds char");
                out.push(ch);
                i += ch.len_utf8();
            }
        }
    }
    out
}

/// Lowercases and splits on every non-alphanumeric character. Tokens
/// shorter than two characters and purely numeric tokens are dropped.
pub fn tokenize(text: &str) -> Vec<String> {
    text.to_lowercase()
        .split(|c: char| !c.is_ascii_alphanumeric())
        .filter(|t| t.len() >= 2 && !t.bytes().all(|b| b.is_ascii_digit()))
        .map(|t| t.to_string())
        .collect()
}
