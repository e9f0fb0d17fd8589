//! Lexicon-based polarity scoring at document and sentence level.
//!
//! Scoring rules:
//!
//! - tokens are matched as unigrams against the lexicon's `WORD` entries;
//! - an intensifier immediately before a matched term multiplies its
//!   polarity by the intensifier factor, clamped to `[-1, 1]`;
//! - a negator among the three tokens before a matched term multiplies its
//!   polarity by `-0.5`;
//! - the score is the mean over matched terms, `0.0` if nothing matched.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::fs;
use std::ops::Neg;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::corpus::Document;
use crate::text;

/// Multiplier applied to a term's polarity when a negator precedes it.
pub const NEGATION_FACTOR: f64 = -0.5;
/// How many tokens before a matched term are searched for a negator.
pub const NEGATION_WINDOW: usize = 3;
/// Intensifier factors must lie in `(0, MAX_INTENSIFIER]`.
pub const MAX_INTENSIFIER: f64 = 4.0;

/// Tab-separated source of the bundled reference lexicon.
pub const REFERENCE_LEXICON_TSV: &str = include_str!("../data/lexicon/reference-v1.tsv");

/// A sentiment value in `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Polarity(f64);

impl Polarity {
    pub const NEUTRAL: Polarity = Polarity(0.0);

    /// `None` when `value` is outside `[-1, 1]` or not finite.
    pub fn new(value: f64) -> Option<Polarity> {
        if (-1.0..=1.0).contains(&value) {
            Some(Polarity(value))
        } else {
            None
        }
    }

    /// Clamp into range; NaN maps to neutral.
    pub fn clamped(value: f64) -> Polarity {
        if value.is_nan() {
            Polarity::NEUTRAL
        } else {
            Polarity(value.clamp(-1.0, 1.0))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl Neg for Polarity {
    type Output = Polarity;

    fn neg(self) -> Polarity {
        Polarity(-self.0)
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("cannot read lexicon {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("lexicon line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("term '{term}': polarity {value} outside [-1, 1]")]
    PolarityOutOfRange { term: String, value: f64 },
    #[error("intensifier '{term}': factor {value} outside (0, 4]")]
    FactorOutOfRange { term: String, value: f64 },
    #[error("term '{term}' is listed more than once")]
    Duplicate { term: String },
    #[error("term '{term}' is both a polarity entry and a modifier")]
    Overlap { term: String },
}

/// Term polarities plus negator and intensifier sets.
#[derive(Debug, Clone, PartialEq)]
pub struct Lexicon {
    entries: HashMap<String, f64>,
    negators: HashSet<String>,
    intensifiers: HashMap<String, f64>,
}

impl Lexicon {
    pub fn new(
        entries: HashMap<String, f64>,
        negators: HashSet<String>,
        intensifiers: HashMap<String, f64>,
    ) -> Result<Lexicon, LexiconError> {
        for (term, &value) in &entries {
            if !(-1.0..=1.0).contains(&value) {
                return Err(LexiconError::PolarityOutOfRange { term: term.clone(), value });
            }
            if negators.contains(term) || intensifiers.contains_key(term) {
                return Err(LexiconError::Overlap { term: term.clone() });
            }
        }
        for (term, &value) in &intensifiers {
            if !(value > 0.0 && value <= MAX_INTENSIFIER) {
                return Err(LexiconError::FactorOutOfRange { term: term.clone(), value });
            }
            if negators.contains(term) {
                return Err(LexiconError::Overlap { term: term.clone() });
            }
        }
        Ok(Lexicon { entries, negators, intensifiers })
    }

    /// Parse the `record_type \t term \t value` format.
    pub fn parse(input: &str) -> Result<Lexicon, LexiconError> {
        let mut entries = HashMap::new();
        let mut negators = HashSet::new();
        let mut intensifiers = HashMap::new();
        let mut seen = HashSet::new();
        for (i, raw) in input.lines().enumerate() {
            let line = i + 1;
            let record = raw.trim_end_matches('\r');
            if record.trim().is_empty() || record.trim_start().starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = record.split('\t').collect();
            if fields.len() < 2 || fields.len() > 3 {
                return Err(LexiconError::Parse {
                    line,
                    message: format!("expected 3 tab-separated fields, found {}", fields.len()),
                });
            }
            let term = fields[1].trim().to_lowercase();
            if term.is_empty() || term.split_whitespace().count() != 1 {
                return Err(LexiconError::Parse { line, message: format!("'{term}' is not a single token") });
            }
            if !seen.insert(term.clone()) {
                return Err(LexiconError::Duplicate { term });
            }
            let value = fields.get(2).map(|v| v.trim()).unwrap_or("");
            let number = || {
                value.parse::<f64>().map_err(|e| LexiconError::Parse {
                    line,
                    message: format!("value '{value}': {e}"),
                })
            };
            match fields[0].trim() {
                "WORD" => {
                    entries.insert(term, number()?);
                }
                "INTENSIFIER" => {
                    intensifiers.insert(term, number()?);
                }
                "NEGATOR" => {
                    if !value.is_empty() {
                        return Err(LexiconError::Parse { line, message: "NEGATOR takes no value".into() });
                    }
                    negators.insert(term);
                }
                other => {
                    return Err(LexiconError::Parse { line, message: format!("unknown record type '{other}'") })
                }
            }
        }
        Lexicon::new(entries, negators, intensifiers)
    }

    pub fn load(path: &Path) -> Result<Lexicon, LexiconError> {
        let input =
            fs::read_to_string(path).map_err(|source| LexiconError::Io { path: path.to_path_buf(), source })?;
        Lexicon::parse(&input)
    }

    /// The bundled reference lexicon.
    pub fn reference() -> Lexicon {
        Lexicon::parse(REFERENCE_LEXICON_TSV).expect("bundled lexicon is valid")
    }

    pub fn polarity(&self, term: &str) -> Option<f64> {
        self.entries.get(term).copied()
    }

    pub fn is_negator(&self, term: &str) -> bool {
        self.negators.contains(term)
    }

    pub fn intensifier(&self, term: &str) -> Option<f64> {
        self.intensifiers.get(term).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Same lexicon with every polarity negated.
    pub fn mirrored(&self) -> Lexicon {
        Lexicon {
            entries: self.entries.iter().map(|(k, v)| (k.clone(), -v)).collect(),
            negators: self.negators.clone(),
            intensifiers: self.intensifiers.clone(),
        }
    }

    /// Same lexicon with negators and intensifiers dropped.
    pub fn without_modifiers(&self) -> Lexicon {
        Lexicon { entries: self.entries.clone(), negators: HashSet::new(), intensifiers: HashMap::new() }
    }
}

/// Hex SHA-256 of arbitrary bytes.
pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

const ABBREVIATIONS: &[&str] = &[
    "mr.", "mrs.", "ms.", "dr.", "prof.", "sr.", "jr.", "st.", "mt.", "gen.", "gov.", "sen.", "rep.", "rev.",
    "lt.", "col.", "sgt.", "capt.", "pres.", "u.s.", "u.k.", "u.n.", "e.u.", "d.c.", "e.g.", "i.e.", "vs.",
    "etc.", "jan.", "feb.", "mar.", "apr.", "aug.", "sept.", "oct.", "nov.", "dec.", "a.m.", "p.m.",
];

fn is_terminator(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

fn is_closer(c: char) -> bool {
    matches!(c, '"' | '\'' | ')' | ']' | '\u{201D}' | '\u{2019}')
}

fn is_opener(c: char) -> bool {
    matches!(c, '"' | '\'' | '(' | '[' | '\u{201C}' | '\u{2018}')
}

/// True when the word ending in the `.` at `dot` must not end a sentence.
fn suppresses_split(body: &str, dot: usize) -> bool {
    let start = body[..dot].rfind(char::is_whitespace).map(|i| i + body[i..].chars().next().unwrap().len_utf8());
    let word = &body[start.unwrap_or(0)..=dot];
    let word = word.trim_start_matches(is_opener).to_lowercase();
    if ABBREVIATIONS.contains(&word.as_str()) {
        return true;
    }
    // single-letter initial such as "J."
    let mut chars = word.chars();
    matches!((chars.next(), chars.next(), chars.next()), (Some(c), Some('.'), None) if c.is_alphabetic())
}

/// Split `body` into sentences.
///
/// A sentence ends at a run of `.`, `!` or `?` (plus any closing quotes or
/// brackets) that is followed by end of text or by whitespace and a
/// capitalized word. Known abbreviations and single-letter initials do not
/// end sentences.
pub fn split_sentences(body: &str) -> Vec<&str> {
    let mut sentences = Vec::new();
    let mut start = 0;
    let chars: Vec<(usize, char)> = body.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if !is_terminator(c) {
            i += 1;
            continue;
        }
        let mut j = i;
        while j + 1 < chars.len() && is_terminator(chars[j + 1].1) {
            j += 1;
        }
        let single_dot = j == i && c == '.';
        while j + 1 < chars.len() && is_closer(chars[j + 1].1) {
            j += 1;
        }
        let end = chars.get(j + 1).map(|&(p, _)| p).unwrap_or(body.len());

        let rest = &body[end..];
        let boundary = if rest.trim().is_empty() {
            true
        } else if rest.starts_with(char::is_whitespace) {
            let mut next = rest.trim_start().chars();
            match next.next() {
                Some(n) if n.is_uppercase() => true,
                Some(n) if is_opener(n) => next.next().is_some_and(char::is_uppercase),
                _ => false,
            }
        } else {
            false
        };

        if boundary && !(single_dot && suppresses_split(body, pos)) {
            let sentence = body[start..end].trim();
            if !sentence.is_empty() {
                sentences.push(sentence);
            }
            start = end;
        }
        i = j + 1;
    }
    let tail = body[start..].trim();
    if !tail.is_empty() {
        sentences.push(tail);
    }
    sentences
}

/// Score a lowercased token stream.
pub fn score_tokens<S: AsRef<str>>(lexicon: &Lexicon, tokens: &[S]) -> Polarity {
    let mut sum = 0.0;
    let mut matched = 0usize;
    for (i, token) in tokens.iter().enumerate() {
        let Some(mut value) = lexicon.polarity(token.as_ref()) else {
            continue;
        };
        if i > 0 {
            if let Some(factor) = lexicon.intensifier(tokens[i - 1].as_ref()) {
                value = (value * factor).clamp(-1.0, 1.0);
            }
        }
        let window = &tokens[i.saturating_sub(NEGATION_WINDOW)..i];
        if window.iter().any(|t| lexicon.is_negator(t.as_ref())) {
            value *= NEGATION_FACTOR;
        }
        sum += value;
        matched += 1;
    }
    if matched == 0 {
        Polarity::NEUTRAL
    } else {
        Polarity::clamped(sum / matched as f64)
    }
}

/// Tokenize `text` and score it as one unit.
pub fn score_text(lexicon: &Lexicon, text: &str) -> Polarity {
    score_tokens(lexicon, &text::tokenize(text))
}

/// Whole-body polarity.
pub fn score_document(lexicon: &Lexicon, doc: &Document) -> Polarity {
    score_text(lexicon, &doc.body)
}

/// Mean of per-sentence polarities; `0.0` for a body with no sentences.
pub fn score_sentence_level(lexicon: &Lexicon, doc: &Document) -> Polarity {
    let sentences = split_sentences(&doc.body);
    if sentences.is_empty() {
        return Polarity::NEUTRAL;
    }
    let sum: f64 = sentences.iter().map(|s| score_text(lexicon, s).value()).sum();
    Polarity::clamped(sum / sentences.len() as f64)
}
