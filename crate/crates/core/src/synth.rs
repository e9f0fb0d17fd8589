//! Seeded generator of synthetic audit corpora.
//!
//! Bodies are assembled from sentence templates built on reference-lexicon
//! words, with negators, intensifiers and abbreviations mixed in, and the
//! dependency triples emitted alongside agree with the text they describe.
//! Each (topic, engine) pair gets its own sentiment tilt so the two engines
//! differ in a controlled, reproducible way.

use std::fs;
use std::io;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{format_topics, format_triples, Corpus, DependencyTriple, Document, Engine, PosTag, Topic, ValidationError, SLATE_LEN};

const POSITIVE: &[&str] = &[
    "good", "great", "nice", "wonderful", "excellent", "happy", "fair", "safe", "strong", "important",
    "beautiful", "successful", "healthy", "useful", "positive",
];
const NEGATIVE: &[&str] = &[
    "bad", "terrible", "awful", "poor", "horrible", "sad", "illegal", "unfair", "dangerous", "weak",
    "wrong", "ugly", "cruel", "useless", "negative",
];
const NEUTRAL_NOUNS: &[&str] = &["debate", "policy", "issue", "proposal", "decision", "movement", "question"];
const PEOPLE: &[&str] = &["Dr. Morgan", "Mr. Hale", "Sen. Ortiz", "Prof. Lind", "Mrs. Okafor"];
const INTENSIFIERS: &[&str] = &["very", "really", "especially"];

/// Size and stance of one generated topic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopicSpec {
    pub topic_id: String,
    pub title: String,
    pub stance_sign: i8,
    /// Must be a multiple of the slate length.
    pub docs_per_engine: usize,
}

impl TopicSpec {
    pub fn new(topic_id: &str, title: &str, stance_sign: i8, docs_per_engine: usize) -> Self {
        TopicSpec { topic_id: topic_id.into(), title: title.into(), stance_sign, docs_per_engine }
    }

    pub fn queries(&self) -> usize {
        self.docs_per_engine / SLATE_LEN
    }
}

/// The topics of a corpus to generate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    pub topics: Vec<TopicSpec>,
}

impl Shape {
    /// Fifteen controversial topics with 2,560 documents per engine.
    pub fn full() -> Shape {
        let rows: [(&str, &str, i8, usize); 15] = [
            ("abortion", "Abortion", 1, 200),
            ("animal_testing", "Animal testing", -1, 80),
            ("assisted_suicide", "Assisted suicide", 1, 80),
            ("brexit", "Brexit", -1, 180),
            ("climate_change", "Climate change", 1, 350),
            ("gay_marriage", "Gay marriage", 1, 220),
            ("gun_control", "Gun control", 1, 260),
            ("medical_marijuana", "Medical marijuana", 1, 130),
            ("minimum_wage", "Minimum wage", -1, 220),
            ("obamacare", "Obamacare", 1, 120),
            ("prostitution", "Prostitution", 1, 70),
            ("syrian_refugees", "Syrian refugees", 1, 130),
            ("transgender_military", "Transgender military", 1, 80),
            ("travel_ban", "Travel ban", -1, 140),
            ("trump", "Trump", -1, 300),
        ];
        Shape { topics: rows.iter().map(|&(id, title, s, n)| TopicSpec::new(id, title, s, n)).collect() }
    }

    /// Three topics with two queries each.
    pub fn mini() -> Shape {
        Shape {
            topics: vec![
                TopicSpec::new("abortion", "Abortion", 1, 20),
                TopicSpec::new("brexit", "Brexit", -1, 20),
                TopicSpec::new("gay_marriage", "Gay marriage", 1, 20),
            ],
        }
    }

    pub fn docs_per_engine(&self) -> usize {
        self.topics.iter().map(|t| t.docs_per_engine).sum()
    }
}

/// Generated corpus parts, in the on-disk formats' order.
#[derive(Debug, Clone, PartialEq)]
pub struct Synthetic {
    pub documents: Vec<Document>,
    pub topics: Vec<Topic>,
    pub triples: Vec<DependencyTriple>,
}

impl Synthetic {
    pub fn to_corpus(&self) -> Result<Corpus, ValidationError> {
        let triples = self.triples.iter().cloned().enumerate().map(|(i, t)| (i + 2, t)).collect();
        Corpus::from_parts(self.documents.clone(), self.topics.clone(), triples)
    }

    /// Write `documents.jsonl`, `topics.tsv` and `triples.tsv` into `dir`.
    pub fn write_to(&self, dir: &Path) -> io::Result<()> {
        fs::create_dir_all(dir)?;
        let mut docs = Vec::new();
        for doc in &self.documents {
            serde_json::to_writer(&mut docs, doc)?;
            docs.push(b'\n');
        }
        fs::write(dir.join("documents.jsonl"), docs)?;
        fs::write(dir.join("topics.tsv"), format_topics(&self.topics))?;
        fs::write(dir.join("triples.tsv"), format_triples(&self.triples))
    }
}

struct DocBuilder<'a> {
    doc_id: &'a str,
    keywords: &'a [String],
    tilt: f64,
    sentences: Vec<String>,
    triples: Vec<DependencyTriple>,
}

impl DocBuilder<'_> {
    fn adjective(&self, rng: &mut ChaCha8Rng) -> &'static str {
        let pool = if rng.gen_bool((0.5 + self.tilt).clamp(0.05, 0.95)) { POSITIVE } else { NEGATIVE };
        pool.choose(rng).copied().unwrap_or("good")
    }

    fn modifier(rng: &mut ChaCha8Rng) -> &'static str {
        let roll: f64 = rng.gen();
        if roll < 0.12 {
            "not "
        } else if roll < 0.24 {
            ["very ", "really ", "seriously "].choose(rng).copied().unwrap_or("very ")
        } else {
            ""
        }
    }

    fn triple(&mut self, word: &str, relation: &str, keyword: &str, pos: PosTag) {
        self.triples.push(DependencyTriple {
            doc_id: self.doc_id.to_string(),
            sentence_idx: self.sentences.len(),
            word: word.to_string(),
            relation: relation.to_string(),
            keyword: keyword.to_string(),
            word_pos: pos,
        });
    }

    fn sentence(&mut self, rng: &mut ChaCha8Rng, title: &str) {
        let adj = self.adjective(rng);
        let keyword = self.keywords.choose(rng).cloned().unwrap_or_default();
        match rng.gen_range(0..5) {
            0 => {
                let m = Self::modifier(rng);
                let mut cap = title.to_string();
                if let Some(first) = cap.get_mut(0..1) {
                    first.make_ascii_uppercase();
                }
                self.triple(adj, "acomp", &keyword, PosTag::Adj);
                self.sentences.push(format!("{cap} is {m}{adj}."));
            }
            1 => {
                let noun = NEUTRAL_NOUNS.choose(rng).copied().unwrap_or("debate");
                let intens = if rng.gen_bool(0.2) { INTENSIFIERS.choose(rng).copied().unwrap_or("very") } else { "" };
                let sep = if intens.is_empty() { "" } else { " " };
                self.triple(adj, "amod", &keyword, PosTag::Adj);
                self.triple("the", "det", &keyword, PosTag::Other);
                self.triple(noun, "compound", &keyword, PosTag::Noun);
                self.sentences.push(format!("Critics say the {} {noun} is {intens}{sep}{adj}.", title.to_lowercase()));
            }
            2 => {
                let who = PEOPLE.choose(rng).copied().unwrap_or("Dr. Morgan");
                self.sentences.push(format!("{who} called the result {adj}!"));
            }
            3 => {
                let m = Self::modifier(rng);
                self.triple("think", "ccomp", &keyword, PosTag::Verb);
                self.sentences.push(format!("Do people think {} is {m}{adj}?", title.to_lowercase()));
            }
            _ => {
                self.sentences.push("The report was published in Jan. 2019 by the U.S. office.".to_string());
            }
        }
    }
}

/// Generate a corpus of the given shape; identical seeds give identical output.
pub fn generate(shape: &Shape, seed: u64) -> Synthetic {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut documents = Vec::with_capacity(2 * shape.docs_per_engine());
    let mut topics = Vec::with_capacity(shape.topics.len());
    let mut triples = Vec::new();

    for spec in &shape.topics {
        let query_ids: Vec<String> = (1..=spec.queries()).map(|q| format!("{}-q{q:03}", spec.topic_id)).collect();
        let topic = Topic::new(&spec.topic_id, &spec.title, spec.stance_sign, query_ids.clone())
            .expect("generator topics are well formed");
        let tilts: [f64; 2] = [rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3)];
        for engine in Engine::ALL {
            for query in &query_ids {
                for rank in 1..=SLATE_LEN as u32 {
                    let tag = match engine {
                        Engine::A => "a",
                        Engine::B => "b",
                    };
                    let doc_id = format!("{tag}-{query}-r{rank:02}");
                    let mut b = DocBuilder {
                        doc_id: &doc_id,
                        keywords: &topic.keywords,
                        tilt: tilts[engine.index()],
                        sentences: Vec::new(),
                        triples: Vec::new(),
                    };
                    for _ in 0..rng.gen_range(2..=6) {
                        b.sentence(&mut rng, &spec.title);
                    }
                    let body = b.sentences.join(" ");
                    triples.append(&mut b.triples);
                    documents.push(Document {
                        doc_id: doc_id.clone(),
                        engine,
                        topic_id: spec.topic_id.clone(),
                        query: query.clone(),
                        rank,
                        title: format!("{} coverage {rank}", spec.title),
                        body,
                    });
                }
            }
        }
        topics.push(topic);
    }
    Synthetic { documents, topics, triples }
}
