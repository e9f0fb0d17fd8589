use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, LogNormal, Normal, Uniform};
use serp_audit::stats::{f_test, normality_test, significance_pipeline, Sample, Transform};

fn draw(dist: &impl Distribution<f64>, n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    dist.sample_iter(rng).take(n).collect()
}

#[test]
fn jarque_bera_accepts_normal_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let normal = Normal::new(0.0, 1.0).unwrap();
    let passes = (0..200)
        .filter(|_| normality_test(&Sample::new("n", draw(&normal, 256, &mut rng)).unwrap()).unwrap().passes)
        .count();
    assert!(passes >= 180, "{passes}/200 normal samples passed");
}

#[test]
fn jarque_bera_rejects_uniform_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let uniform = Uniform::new(0.0, 1.0);
    let r = normality_test(&Sample::new("u", draw(&uniform, 2000, &mut rng)).unwrap()).unwrap();
    assert!(!r.passes, "p = {}", r.p_value);
    assert!(r.excess_kurtosis < -1.0);
}

#[test]
fn log_transform_rescues_lognormal_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let ln = LogNormal::new(0.0, 0.8).unwrap();
    let a = Sample::new("a", draw(&ln, 300, &mut rng)).unwrap();
    let b = Sample::new("b", draw(&ln, 300, &mut rng)).unwrap();
    let r = significance_pipeline(&a, &b).unwrap();
    assert_eq!(r.transform_used, Transform::Log);
    assert!(r.normality_satisfied);
}

#[test]
fn f_test_detects_variance_ratio_four() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let a = Sample::new("a", draw(&Normal::new(0.0, 2.0).unwrap(), 30, &mut rng)).unwrap();
    let b = Sample::new("b", draw(&Normal::new(0.0, 1.0).unwrap(), 30, &mut rng)).unwrap();
    let f = f_test(&a, &b).unwrap();
    assert!(f.p_value < 0.01, "F = {}, p = {}", f.f, f.p_value);
    assert!(!f.equal_variance);
}

#[test]
fn separated_samples_are_significant() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let a = Sample::new("a", draw(&Normal::new(0.0, 0.1).unwrap(), 50, &mut rng)).unwrap();
    let b = Sample::new("b", draw(&Normal::new(1.0, 0.1).unwrap(), 50, &mut rng)).unwrap();
    let r = significance_pipeline(&a, &b).unwrap();
    assert!(r.significant);
    assert!(r.t_test.p_value < 1e-6);
}

#[test]
fn pipeline_is_bit_reproducible() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let normal = Normal::new(0.3, 0.2).unwrap();
    let a = Sample::new("a", draw(&normal, 64, &mut rng)).unwrap();
    let b = Sample::new("b", draw(&normal, 80, &mut rng)).unwrap();
    assert_eq!(significance_pipeline(&a, &b).unwrap(), significance_pipeline(&a, &b).unwrap());
}

#[test]
fn welch_df_reaches_the_bound_only_for_matched_samples() {
    let v: Vec<f64> = (0..12).map(|i| (i as f64 * 0.7).sin()).collect();
    let shifted: Vec<f64> = v.iter().map(|x| x + 0.25).collect();
    let a = Sample::new("a", v).unwrap();
    let b = Sample::new("b", shifted).unwrap();
    let t = serp_audit::stats::t_test_two_tail(&a, &b, false).unwrap();
    assert!((t.df - 22.0).abs() < 1e-9);
    let c = Sample::new("c", (0..12).map(|i| i as f64).collect()).unwrap();
    assert!(serp_audit::stats::t_test_two_tail(&a, &c, false).unwrap().df < 22.0 - 1e-6);
}
