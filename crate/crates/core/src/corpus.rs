//! Ingestion and validation of crawled result dumps.
//!
//! Three input files feed a [`Corpus`]:
//!
//! - documents: one JSON object per line with exactly the keys
//!   `doc_id, engine, topic_id, query, rank, title, body`;
//! - topics: tab-separated `topic_id, title, stance_sign, queries` where
//!   `queries` is a comma-separated list;
//! - triples (optional): tab-separated
//!   `doc_id, sentence_idx, word, relation, keyword, word_pos`.
//!
//! Blank lines are skipped everywhere; `#` starts a comment line in the two
//! tab-separated formats. A loaded corpus is immutable and every slate is
//! guaranteed to hold ranks 1..=10 for both engines.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::text;

/// Number of documents in one result slate.
pub const SLATE_LEN: usize = 10;

/// Abstract engine label. Display names are bound by the run configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Engine {
    A,
    B,
}

impl Engine {
    pub const ALL: [Engine; 2] = [Engine::A, Engine::B];

    pub fn index(self) -> usize {
        match self {
            Engine::A => 0,
            Engine::B => 1,
        }
    }

    pub fn other(self) -> Engine {
        match self {
            Engine::A => Engine::B,
            Engine::B => Engine::A,
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Engine::A => f.write_str("A"),
            Engine::B => f.write_str("B"),
        }
    }
}

/// Coarse part-of-speech class of a dependency-linked word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PosTag {
    Noun,
    Verb,
    Adj,
    Adv,
    Other,
}

impl PosTag {
    /// Nouns, verbs, adjectives and adverbs can carry sentiment.
    pub fn is_content(self) -> bool {
        !matches!(self, PosTag::Other)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PosTag::Noun => "NOUN",
            PosTag::Verb => "VERB",
            PosTag::Adj => "ADJ",
            PosTag::Adv => "ADV",
            PosTag::Other => "OTHER",
        }
    }
}

impl FromStr for PosTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "NOUN" => Ok(PosTag::Noun),
            "VERB" => Ok(PosTag::Verb),
            "ADJ" => Ok(PosTag::Adj),
            "ADV" => Ok(PosTag::Adv),
            "OTHER" => Ok(PosTag::Other),
            other => Err(format!("unknown POS tag '{other}'")),
        }
    }
}

/// One retrieved result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub doc_id: String,
    pub engine: Engine,
    pub topic_id: String,
    pub query: String,
    pub rank: u32,
    pub title: String,
    pub body: String,
}

/// A controversial topic from the registry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topic {
    pub topic_id: String,
    pub title: String,
    pub keywords: Vec<String>,
    /// `+1` or `-1`; `-1` flips polarities onto the common stance axis.
    pub stance_sign: i8,
    pub query_ids: Vec<String>,
}

impl Topic {
    /// Build a topic, deriving keywords from the title.
    pub fn new(
        topic_id: impl Into<String>,
        title: impl Into<String>,
        stance_sign: i8,
        query_ids: Vec<String>,
    ) -> Result<Self, ValidationError> {
        let topic_id = topic_id.into();
        let title = title.into();
        if stance_sign != 1 && stance_sign != -1 {
            return Err(ValidationError::InvalidStance { topic_id, stance_sign });
        }
        let keywords = extract_topic_keywords(&title)
            .map_err(|_| ValidationError::EmptyTitle { topic_id: topic_id.clone() })?;
        Ok(Topic { topic_id, title, keywords, stance_sign, query_ids })
    }
}

/// The ten documents one engine returned for one query, by ascending rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuerySlate {
    pub engine: Engine,
    pub topic_id: String,
    pub query: String,
    /// Indices into [`Corpus::documents`], rank 1 first.
    pub docs: Vec<usize>,
}

/// A `word --relation--> keyword` link produced by an offline parser.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyTriple {
    pub doc_id: String,
    pub sentence_idx: usize,
    pub word: String,
    pub relation: String,
    pub keyword: String,
    pub word_pos: PosTag,
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{file}:{line}: {message}")]
    Parse { file: String, line: usize, message: String },
    #[error(transparent)]
    Validation(#[from] ValidationError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("document '{doc_id}': rank {rank} outside 1..=10")]
    RankOutOfRange { doc_id: String, rank: u32 },
    #[error("document '{doc_id}': body is empty")]
    EmptyBody { doc_id: String },
    #[error("document '{doc_id}' appears twice for engine {engine}")]
    DuplicateDocId { engine: Engine, doc_id: String },
    #[error("document '{doc_id}' references unknown topic '{topic_id}'")]
    UnknownTopic { doc_id: String, topic_id: String },
    #[error("document '{doc_id}': query '{query}' is not registered under topic '{topic_id}'")]
    QueryNotInTopic { doc_id: String, query: String, topic_id: String },
    #[error("query '{query}' (engine {engine}): rank {rank} used more than once")]
    DuplicateRank { engine: Engine, query: String, rank: u32 },
    #[error("query '{query}' (engine {engine}): missing ranks {missing:?}")]
    RankGap { engine: Engine, query: String, missing: Vec<u32> },
    #[error("query '{query}' has results for engine {present} but not for engine {missing}")]
    MissingPair { query: String, present: Engine, missing: Engine },
    #[error("query '{query}' of topic '{topic_id}' has no results for either engine")]
    NoResults { topic_id: String, query: String },
    #[error("topic '{topic_id}' is defined twice")]
    DuplicateTopic { topic_id: String },
    #[error("query '{query}' is registered under both '{first}' and '{second}'")]
    DuplicateQuery { query: String, first: String, second: String },
    #[error("topic '{topic_id}': title has no tokens")]
    EmptyTitle { topic_id: String },
    #[error("topic '{topic_id}': stance sign {stance_sign} is not +1 or -1")]
    InvalidStance { topic_id: String, stance_sign: i8 },
    #[error("triple at line {line} references unknown document '{doc_id}'")]
    UnknownTripleDocument { doc_id: String, line: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("topic title is empty")]
pub struct EmptyTitle;

/// Keywords of a topic: the tokens of its title, in order.
pub fn extract_topic_keywords(title: &str) -> Result<Vec<String>, EmptyTitle> {
    let keywords = text::tokenize(title);
    if keywords.is_empty() {
        Err(EmptyTitle)
    } else {
        Ok(keywords)
    }
}

/// Validated, immutable collection of documents, topics, slates and triples.
#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    documents: Vec<Document>,
    doc_index: BTreeMap<(Engine, String), usize>,
    topics: BTreeMap<String, Topic>,
    slates: BTreeMap<(Engine, String), QuerySlate>,
    triples: BTreeMap<String, Vec<DependencyTriple>>,
}

/// Documents per engine for one topic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopicCount {
    pub topic_id: String,
    pub per_engine: [usize; 2],
}

impl TopicCount {
    pub fn count(&self, engine: Engine) -> usize {
        self.per_engine[engine.index()]
    }
}

impl Corpus {
    /// Assemble and validate a corpus from already-parsed parts.
    ///
    /// `triples` carries the source line number of each triple for error
    /// reporting.
    pub fn from_parts(
        documents: Vec<Document>,
        topics: Vec<Topic>,
        triples: Vec<(usize, DependencyTriple)>,
    ) -> Result<Corpus, ValidationError> {
        let mut topic_map = BTreeMap::new();
        let mut query_owner: HashMap<String, String> = HashMap::new();
        for topic in topics {
            if topic.stance_sign != 1 && topic.stance_sign != -1 {
                return Err(ValidationError::InvalidStance {
                    topic_id: topic.topic_id,
                    stance_sign: topic.stance_sign,
                });
            }
            for q in &topic.query_ids {
                if let Some(first) = query_owner.insert(q.clone(), topic.topic_id.clone()) {
                    return Err(ValidationError::DuplicateQuery {
                        query: q.clone(),
                        first,
                        second: topic.topic_id.clone(),
                    });
                }
            }
            if topic_map.contains_key(&topic.topic_id) {
                return Err(ValidationError::DuplicateTopic { topic_id: topic.topic_id });
            }
            topic_map.insert(topic.topic_id.clone(), topic);
        }

        let mut doc_index = BTreeMap::new();
        let mut groups: BTreeMap<(Engine, String), Vec<usize>> = BTreeMap::new();
        for (i, doc) in documents.iter().enumerate() {
            if !(1..=SLATE_LEN as u32).contains(&doc.rank) {
                return Err(ValidationError::RankOutOfRange {
                    doc_id: doc.doc_id.clone(),
                    rank: doc.rank,
                });
            }
            if doc.body.trim().is_empty() {
                return Err(ValidationError::EmptyBody { doc_id: doc.doc_id.clone() });
            }
            let topic = topic_map.get(&doc.topic_id).ok_or_else(|| ValidationError::UnknownTopic {
                doc_id: doc.doc_id.clone(),
                topic_id: doc.topic_id.clone(),
            })?;
            if !topic.query_ids.iter().any(|q| q == &doc.query) {
                return Err(ValidationError::QueryNotInTopic {
                    doc_id: doc.doc_id.clone(),
                    query: doc.query.clone(),
                    topic_id: doc.topic_id.clone(),
                });
            }
            if doc_index.insert((doc.engine, doc.doc_id.clone()), i).is_some() {
                return Err(ValidationError::DuplicateDocId {
                    engine: doc.engine,
                    doc_id: doc.doc_id.clone(),
                });
            }
            groups.entry((doc.engine, doc.query.clone())).or_default().push(i);
        }

        let mut slates = BTreeMap::new();
        for ((engine, query), mut members) in groups {
            members.sort_by_key(|&i| documents[i].rank);
            for pair in members.windows(2) {
                if documents[pair[0]].rank == documents[pair[1]].rank {
                    return Err(ValidationError::DuplicateRank {
                        engine,
                        query,
                        rank: documents[pair[0]].rank,
                    });
                }
            }
            if members.len() != SLATE_LEN {
                let present: BTreeSet<u32> = members.iter().map(|&i| documents[i].rank).collect();
                let missing = (1..=SLATE_LEN as u32).filter(|r| !present.contains(r)).collect();
                return Err(ValidationError::RankGap { engine, query, missing });
            }
            let topic_id = documents[members[0]].topic_id.clone();
            slates.insert(
                (engine, query.clone()),
                QuerySlate { engine, topic_id, query, docs: members },
            );
        }

        for topic in topic_map.values() {
            for q in &topic.query_ids {
                let a = slates.contains_key(&(Engine::A, q.clone()));
                let b = slates.contains_key(&(Engine::B, q.clone()));
                match (a, b) {
                    (true, true) => {}
                    (true, false) => {
                        return Err(ValidationError::MissingPair {
                            query: q.clone(),
                            present: Engine::A,
                            missing: Engine::B,
                        })
                    }
                    (false, true) => {
                        return Err(ValidationError::MissingPair {
                            query: q.clone(),
                            present: Engine::B,
                            missing: Engine::A,
                        })
                    }
                    (false, false) => {
                        return Err(ValidationError::NoResults {
                            topic_id: topic.topic_id.clone(),
                            query: q.clone(),
                        })
                    }
                }
            }
        }

        let known: BTreeSet<&str> = documents.iter().map(|d| d.doc_id.as_str()).collect();
        let mut triple_map: BTreeMap<String, Vec<DependencyTriple>> = BTreeMap::new();
        for (line, triple) in triples {
            if !known.contains(triple.doc_id.as_str()) {
                return Err(ValidationError::UnknownTripleDocument { doc_id: triple.doc_id, line });
            }
            triple_map.entry(triple.doc_id.clone()).or_default().push(triple);
        }

        Ok(Corpus { documents, doc_index, topics: topic_map, slates, triples: triple_map })
    }

    /// Documents in input order.
    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn document(&self, engine: Engine, doc_id: &str) -> Option<&Document> {
        self.doc_index.get(&(engine, doc_id.to_string())).map(|&i| &self.documents[i])
    }

    /// Every occurrence of `doc_id`, one per engine at most.
    pub fn documents_with_id<'a>(&'a self, doc_id: &'a str) -> impl Iterator<Item = &'a Document> + 'a {
        Engine::ALL.into_iter().filter_map(move |e| self.document(e, doc_id))
    }

    /// Topics in lexicographic `topic_id` order.
    pub fn topics(&self) -> impl Iterator<Item = &Topic> {
        self.topics.values()
    }

    pub fn topic(&self, topic_id: &str) -> Option<&Topic> {
        self.topics.get(topic_id)
    }

    pub fn slate(&self, engine: Engine, query: &str) -> Option<&QuerySlate> {
        self.slates.get(&(engine, query.to_string()))
    }

    /// All slates, ordered by engine then query.
    pub fn slates(&self) -> impl Iterator<Item = &QuerySlate> {
        self.slates.values()
    }

    /// Slates of one topic for one engine, in registry query order.
    pub fn topic_slates<'a>(&'a self, topic: &'a Topic, engine: Engine) -> impl Iterator<Item = &'a QuerySlate> + 'a {
        topic.query_ids.iter().filter_map(move |q| self.slate(engine, q))
    }

    pub fn slate_documents<'a>(&'a self, slate: &'a QuerySlate) -> impl Iterator<Item = &'a Document> + 'a {
        slate.docs.iter().map(move |&i| &self.documents[i])
    }

    /// Triples attached to `doc_id`; empty when the parser produced none.
    pub fn triples_for(&self, doc_id: &str) -> &[DependencyTriple] {
        self.triples.get(doc_id).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn has_triples(&self) -> bool {
        !self.triples.is_empty()
    }

    pub fn triple_count(&self) -> usize {
        self.triples.values().map(Vec::len).sum()
    }

    pub fn query_count(&self) -> usize {
        self.topics.values().map(|t| t.query_ids.len()).sum()
    }

    pub fn document_count(&self, engine: Engine) -> usize {
        self.documents.iter().filter(|d| d.engine == engine).count()
    }

    /// Serialize documents back into the line-delimited format.
    pub fn write_documents<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for doc in &self.documents {
            serde_json::to_writer(&mut out, doc)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

/// Per-topic document counts, lexicographic by topic.
pub fn topic_distribution(corpus: &Corpus) -> Vec<TopicCount> {
    let mut counts: BTreeMap<&str, [usize; 2]> =
        corpus.topics.keys().map(|k| (k.as_str(), [0, 0])).collect();
    for doc in &corpus.documents {
        if let Some(c) = counts.get_mut(doc.topic_id.as_str()) {
            c[doc.engine.index()] += 1;
        }
    }
    counts
        .into_iter()
        .map(|(topic_id, per_engine)| TopicCount { topic_id: topic_id.to_string(), per_engine })
        .collect()
}

fn read_file(path: &Path) -> Result<String, CorpusError> {
    fs::read_to_string(path).map_err(|source| CorpusError::Io { path: path.to_path_buf(), source })
}

fn file_label(path: &Path) -> String {
    path.display().to_string()
}

/// Read and validate a corpus from disk.
pub fn load_corpus(
    documents_path: &Path,
    topics_path: &Path,
    triples_path: Option<&Path>,
) -> Result<Corpus, CorpusError> {
    let documents = parse_documents(&read_file(documents_path)?, &file_label(documents_path))?;
    let topics = parse_topics(&read_file(topics_path)?, &file_label(topics_path))?;
    let triples = match triples_path {
        Some(p) => parse_triples(&read_file(p)?, &file_label(p))?,
        None => Vec::new(),
    };
    Ok(Corpus::from_parts(documents, topics, triples)?)
}

/// Parse line-delimited document records.
pub fn parse_documents(input: &str, file: &str) -> Result<Vec<Document>, CorpusError> {
    let mut docs = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let doc: Document = serde_json::from_str(trimmed).map_err(|e| CorpusError::Parse {
            file: file.to_string(),
            line: i + 1,
            message: e.to_string(),
        })?;
        docs.push(doc);
    }
    Ok(docs)
}

fn data_lines(input: &str) -> impl Iterator<Item = (usize, &str)> {
    input.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

/// Parse the topic registry.
pub fn parse_topics(input: &str, file: &str) -> Result<Vec<Topic>, CorpusError> {
    let parse_err = |line: usize, message: String| CorpusError::Parse { file: file.to_string(), line, message };
    let mut topics = Vec::new();
    for (line, record) in data_lines(input) {
        let fields: Vec<&str> = record.split('\t').collect();
        if fields.len() != 4 {
            return Err(parse_err(line, format!("expected 4 tab-separated fields, found {}", fields.len())));
        }
        let topic_id = fields[0].trim();
        if topic_id.is_empty() {
            return Err(parse_err(line, "empty topic_id".into()));
        }
        let stance_sign = match fields[2].trim() {
            "+1" | "1" => 1,
            "-1" => -1,
            other => return Err(parse_err(line, format!("stance_sign must be +1 or -1, got '{other}'"))),
        };
        let queries: Vec<String> = fields[3]
            .split(',')
            .map(str::trim)
            .filter(|q| !q.is_empty())
            .map(String::from)
            .collect();
        topics.push(Topic::new(topic_id, fields[1].trim(), stance_sign, queries)?);
    }
    Ok(topics)
}

/// Parse dependency triples; each is returned with its line number.
pub fn parse_triples(input: &str, file: &str) -> Result<Vec<(usize, DependencyTriple)>, CorpusError> {
    let parse_err = |line: usize, message: String| CorpusError::Parse { file: file.to_string(), line, message };
    let mut triples = Vec::new();
    for (line, record) in data_lines(input) {
        let fields: Vec<&str> = record.split('\t').collect();
        if fields.len() != 6 {
            return Err(parse_err(line, format!("expected 6 tab-separated fields, found {}", fields.len())));
        }
        let sentence_idx = fields[1]
            .trim()
            .parse::<usize>()
            .map_err(|e| parse_err(line, format!("sentence_idx: {e}")))?;
        let word_pos = fields[5].trim().parse::<PosTag>().map_err(|e| parse_err(line, e))?;
        let word = fields[2].trim().to_lowercase();
        let keyword = fields[4].trim().to_lowercase();
        if word.is_empty() || keyword.is_empty() {
            return Err(parse_err(line, "empty word or keyword".into()));
        }
        triples.push((
            line,
            DependencyTriple {
                doc_id: fields[0].trim().to_string(),
                sentence_idx,
                word,
                relation: fields[3].trim().to_string(),
                keyword,
                word_pos,
            },
        ));
    }
    Ok(triples)
}

/// Render topics in the registry format accepted by [`parse_topics`].
pub fn format_topics(topics: &[Topic]) -> String {
    let mut out = String::from("# topic_id\ttitle\tstance_sign\tqueries\n");
    for t in topics {
        let sign = if t.stance_sign < 0 { "-1" } else { "+1" };
        out.push_str(&format!("{}\t{}\t{}\t{}\n", t.topic_id, t.title, sign, t.query_ids.join(",")));
    }
    out
}

/// Render triples in the format accepted by [`parse_triples`].
pub fn format_triples(triples: &[DependencyTriple]) -> String {
    let mut out = String::from("# doc_id\tsentence_idx\tword\trelation\tkeyword\tword_pos\n");
    for t in triples {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\n",
            t.doc_id,
            t.sentence_idx,
            t.word,
            t.relation,
            t.keyword,
            t.word_pos.as_str()
        ));
    }
    out
}
