//! Stance transformation, per-query min-max normalization, NDCG-Senti and
//! topic/overall aggregation.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::corpus::{Engine, QuerySlate, Topic};
use crate::sentiment::Polarity;

/// Tolerance for a scatter point to count as lying on `y = x`.
pub const DIAGONAL_EPSILON: f64 = 1e-9;

/// Normalized value emitted for every slot of an all-equal slate.
pub const DEGENERATE_FILL: f64 = 0.5;

/// Sentiment granularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Doc,
    Sent,
    Aspect,
}

impl Level {
    pub const ALL: [Level; 3] = [Level::Doc, Level::Sent, Level::Aspect];

    /// Short lowercase key used in paths and flags.
    pub fn key(self) -> &'static str {
        match self {
            Level::Doc => "doc",
            Level::Sent => "sent",
            Level::Aspect => "aspect",
        }
    }

    /// Row label in the aggregate tables.
    pub fn label(self) -> &'static str {
        match self {
            Level::Doc => "Document-level",
            Level::Sent => "Sentence-level",
            Level::Aspect => "Aspect-level",
        }
    }

    /// Dataset prefix in the significance table.
    pub fn dataset_prefix(self) -> &'static str {
        match self {
            Level::Doc => "DOCLevel",
            Level::Sent => "SENTLevel",
            Level::Aspect => "ASPLevel",
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "doc" | "document" => Ok(Level::Doc),
            "sent" | "sentence" => Ok(Level::Sent),
            "aspect" | "asp" => Ok(Level::Aspect),
            other => Err(format!("unknown level '{other}' (expected doc, sent or aspect)")),
        }
    }
}

/// How a gain value enters the DCG numerator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GainForm {
    /// `g / log2(i + 1)`
    #[default]
    Linear,
    /// `(2^g - 1) / log2(i + 1)`
    Exponential,
}

impl GainForm {
    fn apply(self, gain: f64) -> f64 {
        match self {
            GainForm::Linear => gain,
            GainForm::Exponential => libm::exp2(gain) - 1.0,
        }
    }

    pub fn key(self) -> &'static str {
        match self {
            GainForm::Linear => "linear",
            GainForm::Exponential => "exp",
        }
    }
}

impl FromStr for GainForm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "linear" => Ok(GainForm::Linear),
            "exp" | "exponential" => Ok(GainForm::Exponential),
            other => Err(format!("unknown gain form '{other}' (expected linear or exp)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("no slates to aggregate")]
    EmptyTopic,
    #[error("slates mix topics, engines or levels")]
    MixedSlates,
}

/// Map a raw polarity onto the common stance axis of `topic`.
pub fn transform_stance(topic: &Topic, p: Polarity) -> Polarity {
    if topic.stance_sign < 0 {
        -p
    } else {
        p
    }
}

/// Min-max normalized values of one slate.
#[derive(Debug, Clone, PartialEq)]
pub struct Normalized {
    pub values: Vec<f64>,
    /// All inputs were equal; every output is [`DEGENERATE_FILL`].
    pub degenerate: bool,
}

/// Map `values` linearly onto `[0, 1]` using their own min and max.
pub fn minmax_normalize(values: &[f64]) -> Normalized {
    let (min, max) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    if values.is_empty() {
        return Normalized { values: Vec::new(), degenerate: false };
    }
    if min == max {
        return Normalized { values: vec![DEGENERATE_FILL; values.len()], degenerate: true };
    }
    let span = max - min;
    Normalized { values: values.iter().map(|v| (v - min) / span).collect(), degenerate: false }
}

/// Discounted cumulative gain with rank `i` (1-based) discounted by
/// `log2(i + 1)`.
pub fn dcg(gains: &[f64], form: GainForm) -> f64 {
    gains
        .iter()
        .enumerate()
        .map(|(i, &g)| form.apply(g) / libm::log2(i as f64 + 2.0))
        .sum()
}

/// DCG of `gains` sorted best-first.
pub fn ideal_dcg(gains: &[f64], form: GainForm) -> f64 {
    let mut sorted = gains.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    dcg(&sorted, form)
}

/// `dcg / ideal_dcg`, defined as `0.0` when the ideal is zero.
pub fn ndcg(gains: &[f64], form: GainForm) -> f64 {
    let ideal = ideal_dcg(gains, form);
    if ideal <= 0.0 {
        return 0.0;
    }
    (dcg(gains, form) / ideal).min(1.0)
}

/// Scores of one slate at one level.
#[derive(Debug, Clone, PartialEq)]
pub struct SlateScores {
    pub engine: Engine,
    pub topic_id: String,
    pub query: String,
    pub level: Level,
    /// Scorer output, rank order.
    pub raw: Vec<Polarity>,
    /// `raw * stance_sign`.
    pub transformed: Vec<f64>,
    /// Per-slate min-max of `transformed`.
    pub normalized: Vec<f64>,
    pub degenerate: bool,
}

impl SlateScores {
    pub fn new(slate: &QuerySlate, topic: &Topic, level: Level, raw: Vec<Polarity>) -> SlateScores {
        let transformed: Vec<f64> = raw.iter().map(|&p| transform_stance(topic, p).value()).collect();
        let normalized = minmax_normalize(&transformed);
        SlateScores {
            engine: slate.engine,
            topic_id: topic.topic_id.clone(),
            query: slate.query.clone(),
            level,
            raw,
            transformed,
            normalized: normalized.values,
            degenerate: normalized.degenerate,
        }
    }

    /// Mean transformed polarity of the slate.
    pub fn mean_transformed(&self) -> f64 {
        mean(&self.transformed)
    }
}

/// NDCG over the normalized, rank-ordered gains of a slate.
pub fn ndcg_senti(scores: &SlateScores, form: GainForm) -> f64 {
    ndcg(&scores.normalized, form)
}

fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        0.0
    } else {
        values.iter().sum::<f64>() / values.len() as f64
    }
}

/// Per-topic means over queries.
#[derive(Debug, Clone, PartialEq)]
pub struct TopicAggregate {
    pub topic_id: String,
    pub engine: Engine,
    pub level: Level,
    pub mean_avg_polarity: f64,
    pub mean_ndcg_senti: f64,
    pub queries: usize,
    pub degenerate_slates: usize,
}

/// Average per-query values of one topic for one engine and level.
pub fn aggregate_topic(scores: &[SlateScores], form: GainForm) -> Result<TopicAggregate, MetricsError> {
    let first = scores.first().ok_or(MetricsError::EmptyTopic)?;
    if scores
        .iter()
        .any(|s| s.topic_id != first.topic_id || s.engine != first.engine || s.level != first.level)
    {
        return Err(MetricsError::MixedSlates);
    }
    let polarities: Vec<f64> = scores.iter().map(SlateScores::mean_transformed).collect();
    let ndcgs: Vec<f64> = scores.iter().map(|s| ndcg_senti(s, form)).collect();
    Ok(TopicAggregate {
        topic_id: first.topic_id.clone(),
        engine: first.engine,
        level: first.level,
        mean_avg_polarity: mean(&polarities),
        mean_ndcg_senti: mean(&ndcgs),
        queries: scores.len(),
        degenerate_slates: scores.iter().filter(|s| s.degenerate).count(),
    })
}

/// Unweighted mean across topics for one engine and level.
#[derive(Debug, Clone, PartialEq)]
pub struct OverallMean {
    pub engine: Engine,
    pub level: Level,
    pub mean_avg_polarity: f64,
    pub mean_ndcg_senti: f64,
    pub topics: usize,
}

/// Means per `(level, engine)`, ordered by level then engine. Summation
/// follows the input order.
pub fn overall_means(aggregates: &[TopicAggregate]) -> Vec<OverallMean> {
    let mut groups: BTreeMap<(Level, Engine), (Vec<f64>, Vec<f64>)> = BTreeMap::new();
    for agg in aggregates {
        let entry = groups.entry((agg.level, agg.engine)).or_default();
        entry.0.push(agg.mean_avg_polarity);
        entry.1.push(agg.mean_ndcg_senti);
    }
    groups
        .into_iter()
        .map(|((level, engine), (pol, ndcg))| OverallMean {
            engine,
            level,
            mean_avg_polarity: mean(&pol),
            mean_ndcg_senti: mean(&ndcg),
            topics: pol.len(),
        })
        .collect()
}

/// Position of paired points relative to the `y = x` diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ScatterCounts {
    /// Engine B scored higher.
    pub above: usize,
    /// Engine A scored higher.
    pub below: usize,
    pub on: usize,
}

/// Count `(a, b)` pairs above, below and on the diagonal.
pub fn scatter_counts(pairs: &[(f64, f64)]) -> ScatterCounts {
    let mut counts = ScatterCounts::default();
    for &(a, b) in pairs {
        if (b - a).abs() <= DIAGONAL_EPSILON {
            counts.on += 1;
        } else if b > a {
            counts.above += 1;
        } else {
            counts.below += 1;
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn topic(sign: i8) -> Topic {
        Topic::new("t", "t", sign, vec!["q".into()]).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn stance_transform() {
        let p = Polarity::new(0.3).unwrap();
        assert_eq!(transform_stance(&topic(-1), p).value(), -0.3);
        assert_eq!(transform_stance(&topic(1), Polarity::new(-0.2).unwrap()).value(), -0.2);
        assert_eq!(transform_stance(&topic(-1), Polarity::NEUTRAL).value(), 0.0);
        assert_eq!(transform_stance(&topic(-1), transform_stance(&topic(-1), p)), p);
    }

    #[test]
    fn minmax_cases() {
        let mut v = vec![0.2, 0.5, 0.8];
        v.resize(10, 0.2);
        let n = minmax_normalize(&v);
        assert!(!n.degenerate);
        assert_eq!(n.values[0], 0.0);
        assert!(close(n.values[1], 0.5, 1e-15));
        assert_eq!(n.values[2], 1.0);

        let n = minmax_normalize(&[0.1; 10]);
        assert!(n.degenerate);
        assert_eq!(n.values, vec![0.5; 10]);

        let mut v = vec![-1.0, 1.0, 0.0];
        v.resize(10, 0.0);
        let n = minmax_normalize(&v);
        assert_eq!(&n.values[..3], &[0.0, 1.0, 0.5]);
    }

    #[test]
    fn dcg_cases() {
        assert_eq!(dcg(&[1.0, 0.0, 0.0], GainForm::Linear), 1.0);
        assert!(close(dcg(&[0.0, 1.0], GainForm::Linear), 0.63093, 1e-5));
        assert_eq!(dcg(&[0.0; 10], GainForm::Linear), 0.0);
        // exponential gain of 1 is 1, of 0 is 0
        assert_eq!(dcg(&[1.0, 0.0], GainForm::Exponential), 1.0);
        assert!(close(dcg(&[0.5], GainForm::Exponential), 2f64.sqrt() - 1.0, 1e-15));
    }

    #[test]
    fn ndcg_cases() {
        let sorted = [1.0, 0.9, 0.5, 0.5, 0.2, 0.0];
        assert_eq!(ndcg(&sorted, GainForm::Linear), 1.0);

        let mut last = vec![0.0; 10];
        last[9] = 1.0;
        assert!(close(ndcg(&last, GainForm::Linear), 1.0 / 11f64.log2(), 1e-15));
        assert!(close(ndcg(&last, GainForm::Linear), 0.28906, 1e-5));

        assert_eq!(ndcg(&[0.0; 10], GainForm::Linear), 0.0);
    }

    #[test]
    fn slate_scores_build() {
        let slate = QuerySlate { engine: Engine::A, topic_id: "t".into(), query: "q".into(), docs: vec![] };
        let raw: Vec<Polarity> = [0.5, -0.5, 0.0].iter().map(|&v| Polarity::new(v).unwrap()).collect();
        let s = SlateScores::new(&slate, &topic(-1), Level::Doc, raw);
        assert_eq!(s.transformed, vec![-0.5, 0.5, 0.0]);
        assert_eq!(s.normalized, vec![0.0, 1.0, 0.5]);
        assert!(!s.degenerate);
        assert_eq!(s.mean_transformed(), 0.0);
    }

    #[test]
    fn aggregation() {
        let slate = |q: &str| QuerySlate { engine: Engine::B, topic_id: "t".into(), query: q.into(), docs: vec![] };
        let pol = |vals: &[f64]| vals.iter().map(|&v| Polarity::new(v).unwrap()).collect::<Vec<_>>();
        let s1 = SlateScores::new(&slate("q1"), &topic(1), Level::Sent, pol(&[0.4, 0.2, 0.0]));
        let s2 = SlateScores::new(&slate("q2"), &topic(1), Level::Sent, pol(&[0.0, 0.2, 0.4]));

        let one = aggregate_topic(std::slice::from_ref(&s1), GainForm::Linear).unwrap();
        assert_eq!(one.mean_ndcg_senti, 1.0);
        assert!(close(one.mean_avg_polarity, 0.2, 1e-15));

        let both = aggregate_topic(&[s1.clone(), s2.clone()], GainForm::Linear).unwrap();
        let expected = (1.0 + ndcg_senti(&s2, GainForm::Linear)) / 2.0;
        assert_eq!(both.mean_ndcg_senti, expected);
        assert_eq!(both.queries, 2);

        assert_eq!(aggregate_topic(&[], GainForm::Linear), Err(MetricsError::EmptyTopic));
        let mut other = s2;
        other.level = Level::Doc;
        assert_eq!(aggregate_topic(&[s1, other], GainForm::Linear), Err(MetricsError::MixedSlates));
    }

    #[test]
    fn overall() {
        let agg = |topic: &str, v: f64| TopicAggregate {
            topic_id: topic.into(),
            engine: Engine::A,
            level: Level::Doc,
            mean_avg_polarity: v,
            mean_ndcg_senti: 0.6 + v,
            queries: 1,
            degenerate_slates: 0,
        };
        let single = overall_means(&[agg("x", 0.1)]);
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].mean_avg_polarity, 0.1);
        let two = overall_means(&[agg("x", 0.0), agg("y", 0.1)]);
        assert!(close(two[0].mean_avg_polarity, 0.05, 1e-15));
        assert_eq!(two[0].topics, 2);
    }

    #[test]
    fn scatter() {
        assert_eq!(scatter_counts(&[(0.5, 0.5)]), ScatterCounts { above: 0, below: 0, on: 1 });
        assert_eq!(scatter_counts(&[(0.2, 0.6), (0.7, 0.1)]), ScatterCounts { above: 1, below: 1, on: 0 });
        assert_eq!(scatter_counts(&[(0.3, 0.3 + 5e-10)]).on, 1);
    }

    #[test]
    fn parse_keys() {
        assert_eq!("ASPECT".parse::<Level>(), Ok(Level::Aspect));
        assert!("word".parse::<Level>().is_err());
        assert_eq!("exp".parse::<GainForm>(), Ok(GainForm::Exponential));
    }
}
