//! Two-sample significance procedure.
//!
//! Both samples are checked for normality (Jarque–Bera); failing that, the
//! same transform is applied to both, trying `log`, `sqrt` and `exp` in
//! turn. The first transform under which both samples pass is used; if none
//! does, the untransformed data go forward flagged as best-effort. An F-test
//! then decides between the pooled and the Welch two-tailed t-test.
//!
//! Histogram and QQ helpers produce the data a human would inspect for the
//! same normality question.

pub mod special;

use std::fmt;

use thiserror::Error;

use special::{chi_squared_survival, f_survival, normal_quantile, student_t_two_tail};

/// Significance level used throughout.
pub const ALPHA: f64 = 0.05;
/// Offset added after shifting a sample so that `ln` sees positive values.
pub const LOG_SHIFT_DELTA: f64 = 1e-6;
/// Smallest sample the normality test accepts.
pub const MIN_NORMALITY_N: usize = 8;
/// Smallest sample accepted anywhere.
pub const MIN_SAMPLE_N: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatsError {
    #[error("sample '{label}' has {n} values, need at least {min}")]
    SampleTooSmall { label: String, n: usize, min: usize },
    #[error("sample '{label}' contains a non-finite value")]
    NonFinite { label: String },
    #[error("zero variance in sample '{label}'")]
    ZeroVariance { label: String },
    #[error("histogram needs at least one bin")]
    NoBins,
    #[error("exp transform overflowed in sample '{label}'")]
    ValueOverflow { label: String },
}

/// A labelled set of finite observations, `n >= 3`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    label: String,
    values: Vec<f64>,
}

impl Sample {
    pub fn new(label: impl Into<String>, values: Vec<f64>) -> Result<Sample, StatsError> {
        let label = label.into();
        if values.len() < MIN_SAMPLE_N {
            return Err(StatsError::SampleTooSmall { label, n: values.len(), min: MIN_SAMPLE_N });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(StatsError::NonFinite { label });
        }
        Ok(Sample { label, values })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (self.values.len() - 1) as f64
    }

    fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// One equal-width histogram bin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistogramBin {
    pub lower: f64,
    pub count: usize,
}

/// Equal-width bins spanning `[min, max]`; the top edge belongs to the last
/// bin. A constant sample collapses to one bin holding every value.
pub fn histogram(sample: &Sample, bins: usize) -> Result<Vec<HistogramBin>, StatsError> {
    if bins == 0 {
        return Err(StatsError::NoBins);
    }
    let (min, max) = (sample.min(), sample.max());
    if min == max {
        return Ok(vec![HistogramBin { lower: min, count: sample.len() }]);
    }
    let width = (max - min) / bins as f64;
    let mut counts = vec![0usize; bins];
    for &v in sample.values() {
        let idx = (((v - min) / width) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    Ok(counts
        .into_iter()
        .enumerate()
        .map(|(i, count)| HistogramBin { lower: min + width * i as f64, count })
        .collect())
}

/// `(theoretical normal quantile, sample quantile)` pairs using plotting
/// positions `(i - 0.5) / n`.
pub fn qq_points(sample: &Sample) -> Vec<(f64, f64)> {
    let mut sorted = sample.values().to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    sorted
        .into_iter()
        .enumerate()
        .map(|(i, v)| (normal_quantile((i as f64 + 0.5) / n), v))
        .collect()
}

/// Jarque–Bera outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normality {
    pub statistic: f64,
    pub p_value: f64,
    pub skewness: f64,
    pub excess_kurtosis: f64,
    /// `p_value >= alpha`.
    pub passes: bool,
}

/// Jarque–Bera test at [`ALPHA`].
pub fn normality_test(sample: &Sample) -> Result<Normality, StatsError> {
    normality_test_at(sample, ALPHA)
}

pub fn normality_test_at(sample: &Sample, alpha: f64) -> Result<Normality, StatsError> {
    let n = sample.len();
    if n < MIN_NORMALITY_N {
        return Err(StatsError::SampleTooSmall { label: sample.label.clone(), n, min: MIN_NORMALITY_N });
    }
    let mean = sample.mean();
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for &v in sample.values() {
        let d = v - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    let nf = n as f64;
    m2 /= nf;
    m3 /= nf;
    m4 /= nf;
    if m2 == 0.0 {
        return Err(StatsError::ZeroVariance { label: sample.label.clone() });
    }
    let skewness = m3 / (m2 * libm::sqrt(m2));
    let excess_kurtosis = m4 / (m2 * m2) - 3.0;
    let statistic = nf / 6.0 * (skewness * skewness + excess_kurtosis * excess_kurtosis / 4.0);
    let p_value = chi_squared_survival(statistic, 2.0);
    Ok(Normality { statistic, p_value, skewness, excess_kurtosis, passes: p_value >= alpha })
}

/// Variance-stabilising transforms tried by the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Transform {
    None,
    Log,
    Sqrt,
    Exp,
}

impl Transform {
    /// Order in which the pipeline tries transforms.
    pub const SEARCH_ORDER: [Transform; 4] = [Transform::None, Transform::Log, Transform::Sqrt, Transform::Exp];

    pub fn as_str(self) -> &'static str {
        match self {
            Transform::None => "NONE",
            Transform::Log => "LOG",
            Transform::Sqrt => "SQRT",
            Transform::Exp => "EXP",
        }
    }

    /// Shift applied before the transform for data whose minimum is `min`.
    fn shift(self, min: f64) -> f64 {
        match self {
            Transform::Log if min <= 0.0 => -min + LOG_SHIFT_DELTA,
            Transform::Sqrt if min < 0.0 => -min,
            _ => 0.0,
        }
    }

    fn map(self, sample: &Sample, shift: f64) -> Result<Sample, StatsError> {
        let values: Vec<f64> = match self {
            Transform::None => sample.values.clone(),
            Transform::Log => sample.values.iter().map(|v| libm::log(v + shift)).collect(),
            Transform::Sqrt => sample.values.iter().map(|v| libm::sqrt((v + shift).max(0.0))).collect(),
            Transform::Exp => sample.values.iter().map(|&v| libm::exp(v)).collect(),
        };
        if values.iter().any(|v| !v.is_finite()) {
            return Err(StatsError::ValueOverflow { label: sample.label.clone() });
        }
        Ok(Sample { label: sample.label.clone(), values })
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Element-wise transform of one sample.
///
/// `Log` uses `ln(x - min + 1e-6)` when any value is `<= 0`; `Sqrt` shifts by
/// `-min` when any value is negative.
pub fn apply_transform(sample: &Sample, kind: Transform) -> Result<Sample, StatsError> {
    kind.map(sample, kind.shift(sample.min()))
}

/// Transform two samples with one shared shift, computed from their joint
/// minimum, so that both go through the identical map.
pub fn apply_transform_pair(a: &Sample, b: &Sample, kind: Transform) -> Result<(Sample, Sample), StatsError> {
    let shift = kind.shift(a.min().min(b.min()));
    Ok((kind.map(a, shift)?, kind.map(b, shift)?))
}

/// Variance-ratio test outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FTest {
    /// Larger over smaller sample variance.
    pub f: f64,
    pub df_num: f64,
    pub df_den: f64,
    pub p_value: f64,
    pub equal_variance: bool,
}

/// Two-tailed F-test for equal variances at [`ALPHA`].
pub fn f_test(a: &Sample, b: &Sample) -> Result<FTest, StatsError> {
    f_test_at(a, b, ALPHA)
}

pub fn f_test_at(a: &Sample, b: &Sample, alpha: f64) -> Result<FTest, StatsError> {
    let (va, vb) = (a.variance(), b.variance());
    let (da, db) = ((a.len() - 1) as f64, (b.len() - 1) as f64);
    let two_tail = |f: f64, d1: f64, d2: f64| (2.0 * f_survival(f, d1, d2)).min(1.0);
    let (f, df_num, df_den, p_value) = if va > vb {
        if vb == 0.0 {
            return Err(StatsError::ZeroVariance { label: b.label.clone() });
        }
        let f = va / vb;
        (f, da, db, two_tail(f, da, db))
    } else if vb > va {
        if va == 0.0 {
            return Err(StatsError::ZeroVariance { label: a.label.clone() });
        }
        let f = vb / va;
        (f, db, da, two_tail(f, db, da))
    } else {
        if va == 0.0 {
            return Err(StatsError::ZeroVariance { label: a.label.clone() });
        }
        // tie: the orientation is arbitrary, keep the result order-independent
        let p = two_tail(1.0, da, db).max(two_tail(1.0, db, da));
        (1.0, da.max(db), da.min(db), p)
    };
    Ok(FTest { f, df_num, df_den, p_value, equal_variance: p_value >= alpha })
}

/// Two-sample t-test outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TTest {
    /// `(mean(a) - mean(b)) / standard error`.
    pub t: f64,
    pub df: f64,
    pub p_value: f64,
    pub equal_variance: bool,
}

/// Pooled (Student) or Welch two-tailed t-test.
///
/// With zero standard error the test is undefined: equal means give
/// `t = 0, p = 1`, different means are a [`StatsError::ZeroVariance`].
pub fn t_test_two_tail(a: &Sample, b: &Sample, equal_variance: bool) -> Result<TTest, StatsError> {
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (va, vb) = (a.variance(), b.variance());
    let pooled_df = na + nb - 2.0;
    let (se, df) = if equal_variance {
        let sp2 = ((na - 1.0) * va + (nb - 1.0) * vb) / pooled_df;
        (libm::sqrt(sp2 * (1.0 / na + 1.0 / nb)), pooled_df)
    } else {
        let (qa, qb) = (va / na, vb / nb);
        let se2 = qa + qb;
        let denom = qa * qa / (na - 1.0) + qb * qb / (nb - 1.0);
        let df = if denom > 0.0 { (se2 * se2 / denom).min(pooled_df) } else { pooled_df };
        (libm::sqrt(se2), df)
    };
    let diff = a.mean() - b.mean();
    if se == 0.0 {
        if diff == 0.0 {
            return Ok(TTest { t: 0.0, df, p_value: 1.0, equal_variance });
        }
        return Err(StatsError::ZeroVariance { label: format!("{} / {}", a.label, b.label) });
    }
    let t = diff / se;
    Ok(TTest { t, df, p_value: student_t_two_tail(t, df), equal_variance })
}

/// Full outcome of [`significance_pipeline`].
#[derive(Debug, Clone, PartialEq)]
pub struct TestReport {
    pub sample_labels: (String, String),
    pub sizes: (usize, usize),
    pub transform_used: Transform,
    /// Both samples passed the normality check under `transform_used`.
    pub normality_satisfied: bool,
    /// Normality of each sample under `transform_used`; `None` when the test
    /// could not be run (too few values or zero variance).
    pub normality: [Option<Normality>; 2],
    pub f_test: FTest,
    pub t_test: TTest,
    pub alpha: f64,
    pub significant: bool,
}

/// Run the normality / F-test / t-test procedure at [`ALPHA`].
pub fn significance_pipeline(a: &Sample, b: &Sample) -> Result<TestReport, StatsError> {
    significance_pipeline_at(a, b, ALPHA)
}

pub fn significance_pipeline_at(a: &Sample, b: &Sample, alpha: f64) -> Result<TestReport, StatsError> {
    let check = |s: &Sample| normality_test_at(s, alpha).ok();

    let mut chosen = None;
    for kind in Transform::SEARCH_ORDER {
        let Ok((ta, tb)) = apply_transform_pair(a, b, kind) else {
            continue;
        };
        let normality = [check(&ta), check(&tb)];
        let passes = normality.iter().all(|n| n.is_some_and(|n| n.passes));
        if passes {
            chosen = Some((kind, ta, tb, normality, true));
            break;
        }
        if kind == Transform::None {
            // too few values or constant data fail under every transform
            if normality.iter().any(Option::is_none) {
                break;
            }
        }
    }
    let (transform_used, ta, tb, normality, normality_satisfied) =
        chosen.unwrap_or_else(|| (Transform::None, a.clone(), b.clone(), [check(a), check(b)], false));

    let f = match f_test_at(&ta, &tb, alpha) {
        Ok(f) => f,
        Err(StatsError::ZeroVariance { .. }) => {
            let (va, vb) = (ta.variance(), tb.variance());
            let (da, db) = ((ta.len() - 1) as f64, (tb.len() - 1) as f64);
            if va == 0.0 && vb == 0.0 {
                FTest { f: 1.0, df_num: da, df_den: db, p_value: 1.0, equal_variance: true }
            } else {
                let (df_num, df_den) = if va > vb { (da, db) } else { (db, da) };
                FTest { f: f64::INFINITY, df_num, df_den, p_value: 0.0, equal_variance: false }
            }
        }
        Err(e) => return Err(e),
    };
    let t = t_test_two_tail(&ta, &tb, f.equal_variance)?;

    Ok(TestReport {
        sample_labels: (a.label.clone(), b.label.clone()),
        sizes: (a.len(), b.len()),
        transform_used,
        normality_satisfied,
        normality,
        f_test: f,
        t_test: t,
        alpha,
        significant: t.p_value < alpha,
    })
}
