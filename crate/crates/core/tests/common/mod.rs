//! Independent reference implementations used by the integration tests.
//!
//! Nothing here calls into the crate's numeric kernels: the gamma function,
//! the densities and the integrals are computed from scratch so that the
//! comparison is a genuine cross-check.

#![allow(dead_code)]

use std::f64::consts::PI;
use std::path::PathBuf;

/// `ln Γ(x)` by upward recurrence to `x >= 15` and the Stirling series.
pub fn ln_gamma_stirling(x: f64) -> f64 {
    let mut shift = 0.0;
    let mut z = x;
    while z < 15.0 {
        shift += z.ln();
        z += 1.0;
    }
    let z2 = z * z;
    let series = 1.0 / (12.0 * z) - 1.0 / (360.0 * z * z2) + 1.0 / (1260.0 * z2 * z2 * z)
        - 1.0 / (1680.0 * z2 * z2 * z2 * z)
        + 1.0 / (1188.0 * z2 * z2 * z2 * z2 * z);
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series - shift
}

fn ln_beta_stirling(a: f64, b: f64) -> f64 {
    ln_gamma_stirling(a) + ln_gamma_stirling(b) - ln_gamma_stirling(a + b)
}

/// Regularized incomplete beta from its hypergeometric power series,
/// switching to the complementary series above the mean.
pub fn beta_reg_series(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    if x > a / (a + b) {
        return 1.0 - beta_reg_series(b, a, 1.0 - x);
    }
    // I_x(a,b) = x^a (1-x)^b / (a B(a,b)) * sum_n (a+b)_n / (a+1)_n x^n
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut n = 0.0;
    loop {
        term *= (a + b + n) / (a + 1.0 + n) * x;
        sum += term;
        n += 1.0;
        if term.abs() < 1e-17 * sum.abs() || n > 1e6 {
            break;
        }
    }
    let log_front = a * x.ln() + b * (1.0 - x).ln() - a.ln() - ln_beta_stirling(a, b);
    log_front.exp() * sum
}

/// Adaptive Gauss–Kronrod (7/15) quadrature of `f` over `[a, b]`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::excessive_precision)]
    const XGK: [f64; 8] = [
        0.991455371120812639206854697526329,
        0.949107912342758524526189684047851,
        0.864864423359769072789712788640926,
        0.741531185599394439863864773280788,
        0.586087235467691130294144845693013,
        0.405845151377397166906606412076961,
        0.207784955007898467600689403773245,
        0.000000000000000000000000000000000,
    ];
    #[allow(clippy::excessive_precision)]
    const WGK: [f64; 8] = [
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714,
    ];
    #[allow(clippy::excessive_precision)]
    const WG: [f64; 4] = [
        0.129484966168869693270611432679082,
        0.279705391489276667901467771423780,
        0.381830050505118944950369775488975,
        0.417959183673469387755102040816327,
    ];
    fn gk(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let fc = f(c);
        let mut kronrod = fc * WGK[7];
        let mut gauss = fc * WG[3];
        for j in 0..7 {
            let dx = h * XGK[j];
            let pair = f(c - dx) + f(c + dx);
            kronrod += WGK[j] * pair;
            if j % 2 == 1 {
                gauss += WG[j / 2] * pair;
            }
        }
        (kronrod * h, ((kronrod - gauss) * h).abs())
    }
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let (v, err) = gk(f, a, b);
        // stop at the requested accuracy or once rounding dominates the estimate
        if err <= tol || err <= 1e-12 * v.abs() || depth == 0 {
            return v;
        }
        let m = 0.5 * (a + b);
        rec(f, a, m, tol / 2.0, depth - 1) + rec(f, m, b, tol / 2.0, depth - 1)
    }
    rec(f, a, b, tol, 30)
}

/// Two-tail Student-t p-value by integrating the density over `[0, |t|]`.
pub fn t_two_tail_quadrature(t: f64, df: f64) -> f64 {
    let log_c = ln_gamma_stirling((df + 1.0) / 2.0) - 0.5 * (df * PI).ln() - ln_gamma_stirling(df / 2.0);
    let density = move |x: f64| (log_c - (df + 1.0) / 2.0 * (x * x / df).ln_1p()).exp();
    let t = t.abs();
    if t == 0.0 {
        return 1.0;
    }
    // the upper tail directly when it is the smaller piece, for precision
    if t > 2.0 {
        // substitute x = t / u on (0, 1]: ∫_t^∞ f(x) dx = ∫_0^1 f(t/u) t/u² du
        let tail = integrate(&|u: f64| if u <= 0.0 { 0.0 } else { density(t / u) * t / (u * u) }, 0.0, 1.0, 1e-15);
        return 2.0 * tail;
    }
    1.0 - 2.0 * integrate(&density, 0.0, t, 1e-15)
}

/// Upper tail of F(d1, d2) by integrating the density.
pub fn f_survival_quadrature(f: f64, d1: f64, d2: f64) -> f64 {
    let log_c = 0.5 * d1 * (d1 / d2).ln() - ln_beta_stirling(d1 / 2.0, d2 / 2.0);
    let density = move |x: f64| {
        if x <= 0.0 {
            return 0.0;
        }
        (log_c + (d1 / 2.0 - 1.0) * x.ln() - (d1 + d2) / 2.0 * (d1 * x / d2).ln_1p()).exp()
    };
    // x = u² removes the x^(d1/2 - 1) singularity at zero
    let cdf = integrate(&|u: f64| 2.0 * u * density(u * u), 0.0, f.sqrt(), 1e-15);
    if cdf < 0.5 {
        return 1.0 - cdf;
    }
    // tail via x = f / w² on (0, 1], smooth at w = 0 for every d2 >= 1
    integrate(&|w: f64| if w <= 0.0 { 0.0 } else { 2.0 * density(f / (w * w)) * f / (w * w * w) }, 0.0, 1.0, 1e-15)
}

/// Exhaustive maximum DCG over every ordering of `gains`.
pub fn brute_force_ideal_dcg(gains: &[f64], gain: impl Fn(f64) -> f64 + Copy) -> f64 {
    fn permute(items: &mut Vec<f64>, k: usize, best: &mut f64, gain: &dyn Fn(f64) -> f64) {
        if k == items.len() {
            let dcg: f64 = items.iter().enumerate().map(|(i, &g)| gain(g) / ((i + 2) as f64).log2()).sum();
            if dcg > *best {
                *best = dcg;
            }
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permute(items, k + 1, best, gain);
            items.swap(k, i);
        }
    }
    let mut items = gains.to_vec();
    let mut best = f64::NEG_INFINITY;
    permute(&mut items, 0, &mut best, &gain);
    best
}

pub fn mini_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/mini")
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// SHA-256 of the bundled reference lexicon file.
pub const REFERENCE_LEXICON_SHA256: &str = "cc54e7e7ba010ce4f0bb5db03ef88f85c0c36ea8eb272451807b74aa37fee72d";
