//! Sentiment-bias auditing for paired search-engine result slates.
//!
//! Two engines answer the same controversial-topic queries with ten
//! documents each. Every document is scored at document, sentence and
//! aspect granularity with a lexicon scorer, the polarity is flipped onto a
//! common stance axis per topic, and the engines are compared with two
//! metrics: the mean transformed polarity and NDCG-Senti, an NDCG variant
//! whose gains are per-query min-max normalized polarities. Engine
//! differences are then put through a normality / F-test / t-test
//! significance procedure.
//!
//! The crate is organised bottom-up:
//!
//! - [`text`]: tokenization shared by every scorer.
//! - [`corpus`]: ingestion and validation of result dumps and sidecar files.
//! - [`sentiment`]: lexicon scorer, sentence splitting.
//! - [`aspect`]: dependency-triple filtering and aspect-level scoring.
//! - [`metrics`]: stance transform, min-max normalization, NDCG-Senti, aggregation.
//! - [`stats`]: special functions and the significance procedure.
//! - [`report`]: CSV/SVG artifacts and manifest.
//! - [`audit`]: end-to-end orchestration used by the CLI.
//! - [`synth`]: seeded fixture-corpus generator.

pub mod aspect;
pub mod audit;
pub mod cli;
pub mod corpus;
pub mod metrics;
pub mod report;
pub mod sentiment;
pub mod stats;
pub mod synth;
pub mod text;

pub use corpus::{Corpus, DependencyTriple, Document, Engine, PosTag, QuerySlate, Topic};
pub use metrics::{GainForm, Level, SlateScores, TopicAggregate};
pub use sentiment::{Lexicon, Polarity};
