//! End-to-end audit: score every document, build slate scores, aggregate
//! per topic and overall, and run the significance procedure per level and
//! metric.
//!
//! Document scoring fans out over rayon; everything after it walks topics in
//! lexicographic order, engines A then B, and queries in registry order, so
//! floating-point reductions are reproducible.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::aspect::{filter_triples, score_aspect_level, AspectContext};
use crate::corpus::{topic_distribution, Corpus, Document, Engine, TopicCount};
use crate::metrics::{
    aggregate_topic, ndcg_senti, overall_means, scatter_counts, GainForm, Level, MetricsError, OverallMean,
    ScatterCounts, SlateScores, TopicAggregate,
};
use crate::sentiment::{score_document, score_sentence_level, Lexicon, Polarity};
use crate::stats::{significance_pipeline_at, Sample, StatsError, TestReport};

/// Knobs of one audit run.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditSettings {
    pub levels: Vec<Level>,
    pub gain: GainForm,
    pub alpha: f64,
}

impl Default for AuditSettings {
    fn default() -> Self {
        AuditSettings { levels: Level::ALL.to_vec(), gain: GainForm::Linear, alpha: crate::stats::ALPHA }
    }
}

#[derive(Debug, Error)]
pub enum AuditError {
    #[error("aspect level requested but the corpus has no dependency triples")]
    MissingTriples,
    #[error("no levels requested")]
    NoLevels,
    #[error("topic '{topic_id}': {source}")]
    Metrics {
        topic_id: String,
        #[source]
        source: MetricsError,
    },
    #[error("significance test {dataset}: {source}")]
    Stats {
        dataset: String,
        #[source]
        source: StatsError,
    },
}

/// The two comparison metrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Metric {
    MeanAvgScore,
    AvgNdcgScore,
}

impl Metric {
    pub const ALL: [Metric; 2] = [Metric::MeanAvgScore, Metric::AvgNdcgScore];

    pub fn suffix(self) -> &'static str {
        match self {
            Metric::MeanAvgScore => "MeanAvgScore",
            Metric::AvgNdcgScore => "AvgNDCGScore",
        }
    }
}

/// `DOCLevel_MeanAvgScore` and friends.
pub fn dataset_name(level: Level, metric: Metric) -> String {
    format!("{}_{}", level.dataset_prefix(), metric.suffix())
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.suffix())
    }
}

/// One significance comparison between the engines.
#[derive(Debug, Clone, PartialEq)]
pub struct SignificanceRow {
    pub level: Level,
    pub metric: Metric,
    pub samples: (Sample, Sample),
    pub report: TestReport,
}

impl SignificanceRow {
    pub fn dataset(&self) -> String {
        dataset_name(self.level, self.metric)
    }
}

/// Paired per-query NDCG-Senti values of one topic at one level.
#[derive(Debug, Clone, PartialEq)]
pub struct TopicScatter {
    pub level: Level,
    pub topic_id: String,
    /// `(query, engine A score, engine B score)`.
    pub pairs: Vec<(String, f64, f64)>,
    pub counts: ScatterCounts,
}

/// Everything an audit run computes.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditResults {
    pub settings: AuditSettings,
    pub distribution: Vec<TopicCount>,
    /// Per level: topics lexicographic, engine A then B, registry query order.
    pub slate_scores: BTreeMap<Level, Vec<SlateScores>>,
    /// Per-slate NDCG-Senti, parallel to `slate_scores`.
    pub slate_ndcg: BTreeMap<Level, Vec<f64>>,
    /// Ordered by level, topic, engine.
    pub aggregates: Vec<TopicAggregate>,
    pub overall: Vec<OverallMean>,
    /// Ordered by metric, then level.
    pub significance: Vec<SignificanceRow>,
    /// Ordered by level, topic.
    pub scatter: Vec<TopicScatter>,
}

/// Polarity of one document at one level.
pub fn score_at_level(corpus: &Corpus, lexicon: &Lexicon, doc: &Document, level: Level) -> Polarity {
    match level {
        Level::Doc => score_document(lexicon, doc),
        Level::Sent => score_sentence_level(lexicon, doc),
        Level::Aspect => score_aspect_level(lexicon, &aspect_context(corpus, doc)),
    }
}

/// Aspect context of a document under its own topic.
pub fn aspect_context(corpus: &Corpus, doc: &Document) -> AspectContext {
    let topic = corpus.topic(&doc.topic_id).expect("validated corpus");
    filter_triples(&doc.doc_id, corpus.triples_for(&doc.doc_id), topic)
}

/// Run the whole audit over a validated corpus.
pub fn run_audit(corpus: &Corpus, lexicon: &Lexicon, settings: &AuditSettings) -> Result<AuditResults, AuditError> {
    if settings.levels.is_empty() {
        return Err(AuditError::NoLevels);
    }
    if settings.levels.contains(&Level::Aspect) && !corpus.has_triples() {
        return Err(AuditError::MissingTriples);
    }
    let mut levels = settings.levels.clone();
    levels.sort();
    levels.dedup();

    let doc_scores: Vec<Vec<Polarity>> = corpus
        .documents()
        .par_iter()
        .map(|doc| levels.iter().map(|&l| score_at_level(corpus, lexicon, doc, l)).collect())
        .collect();

    let mut slate_scores = BTreeMap::new();
    let mut slate_ndcg = BTreeMap::new();
    let mut aggregates = Vec::new();
    let mut scatter = Vec::new();
    let mut samples: BTreeMap<(Metric, Level), [Vec<f64>; 2]> = BTreeMap::new();

    for (li, &level) in levels.iter().enumerate() {
        let mut level_scores = Vec::new();
        let mut level_ndcg = Vec::new();
        for topic in corpus.topics() {
            let mut per_engine: [Vec<(String, f64)>; 2] = [Vec::new(), Vec::new()];
            for engine in Engine::ALL {
                let scores: Vec<SlateScores> = corpus
                    .topic_slates(topic, engine)
                    .map(|slate| {
                        let raw = slate.docs.iter().map(|&i| doc_scores[i][li]).collect();
                        SlateScores::new(slate, topic, level, raw)
                    })
                    .collect();
                if scores.is_empty() {
                    continue;
                }
                let agg = aggregate_topic(&scores, settings.gain)
                    .map_err(|source| AuditError::Metrics { topic_id: topic.topic_id.clone(), source })?;
                aggregates.push(agg);
                let bucket = samples.entry((Metric::MeanAvgScore, level)).or_default();
                bucket[engine.index()].extend(scores.iter().map(SlateScores::mean_transformed));
                for s in &scores {
                    let n = ndcg_senti(s, settings.gain);
                    per_engine[engine.index()].push((s.query.clone(), n));
                    level_ndcg.push(n);
                }
                samples.entry((Metric::AvgNdcgScore, level)).or_default()[engine.index()]
                    .extend(per_engine[engine.index()].iter().map(|(_, n)| *n));
                level_scores.extend(scores);
            }
            if per_engine[0].is_empty() {
                continue;
            }
            let pairs: Vec<(String, f64, f64)> = per_engine[0]
                .iter()
                .zip(&per_engine[1])
                .map(|((q, a), (_, b))| (q.clone(), *a, *b))
                .collect();
            let xy: Vec<(f64, f64)> = pairs.iter().map(|(_, a, b)| (*a, *b)).collect();
            scatter.push(TopicScatter {
                level,
                topic_id: topic.topic_id.clone(),
                counts: scatter_counts(&xy),
                pairs,
            });
        }
        slate_scores.insert(level, level_scores);
        slate_ndcg.insert(level, level_ndcg);
    }

    let overall = overall_means(&aggregates);

    let mut significance = Vec::new();
    for ((metric, level), [a, b]) in samples {
        let dataset = dataset_name(level, metric);
        let stats_err = |source| AuditError::Stats { dataset: dataset.clone(), source };
        let sa = Sample::new(format!("{dataset}/A"), a).map_err(stats_err)?;
        let sb = Sample::new(format!("{dataset}/B"), b).map_err(stats_err)?;
        let report = significance_pipeline_at(&sa, &sb, settings.alpha).map_err(stats_err)?;
        significance.push(SignificanceRow { level, metric, samples: (sa, sb), report });
    }

    Ok(AuditResults {
        settings: AuditSettings { levels, ..settings.clone() },
        distribution: topic_distribution(corpus),
        slate_scores,
        slate_ndcg,
        aggregates,
        overall,
        significance,
        scatter,
    })
}
