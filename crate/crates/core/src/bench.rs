//! Seeded experiments on random matrices.
//!
//! Every trial draws from its own ChaCha stream derived from
//! `(seed, n, trial)`, and per-trial results are reduced in trial order,
//! so output is identical for any thread count.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_integer::Integer as _;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::domain::{DomainError, Integer, QPoly};
use crate::factors::{predict_row_factors, FactorsError};
use crate::ldu::{decompose, fraction_gauss_baseline, LduError, PivotStrategy};
use crate::matrix::Matrix;
use crate::metrics::{baseline_output_digits, ldu_output_digits, measure, FactorCount};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("unknown experiment {0:?}")]
    UnknownExperiment(String),
    #[error("bad size range {0:?}, expected a:b:step")]
    BadSizes(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Ldu(#[from] LduError),
    #[error(transparent)]
    Factors(#[from] FactorsError),
    #[error(transparent)]
    Domain(#[from] DomainError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentId {
    SizeRatio,
    PivotInt,
    PivotPoly,
    DetectRate,
    GcdProb,
    SmallPrimeIncidence,
    Timing,
}

impl ExperimentId {
    pub const ALL: [ExperimentId; 7] = [
        ExperimentId::SizeRatio,
        ExperimentId::PivotInt,
        ExperimentId::PivotPoly,
        ExperimentId::DetectRate,
        ExperimentId::GcdProb,
        ExperimentId::SmallPrimeIncidence,
        ExperimentId::Timing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentId::SizeRatio => "size-ratio",
            ExperimentId::PivotInt => "pivot-int",
            ExperimentId::PivotPoly => "pivot-poly",
            ExperimentId::DetectRate => "detect-rate",
            ExperimentId::GcdProb => "gcd-prob",
            ExperimentId::SmallPrimeIncidence => "small-prime-incidence",
            ExperimentId::Timing => "timing",
        }
    }
}

impl fmt::Display for ExperimentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentId {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        ExperimentId::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| BenchError::UnknownExperiment(s.to_string()))
    }
}

/// Parses `a:b:step` (inclusive), `a:b` (step 1) or a single size.
pub fn parse_sizes(s: &str) -> Result<Vec<usize>, BenchError> {
    let bad = || BenchError::BadSizes(s.to_string());
    let parts: Vec<usize> = s.split(':').map(|p| p.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
    let (a, b, step) = match parts[..] {
        [a] => (a, a, 1),
        [a, b] => (a, b, 1),
        [a, b, step] => (a, b, step),
        _ => return Err(bad()),
    };
    if step == 0 || a > b {
        return Err(bad());
    }
    Ok((a..=b).step_by(step).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub experiment: ExperimentId,
    pub sizes: Vec<usize>,
    pub trials: usize,
    /// Integer entries lie in `[−bound, bound]`.
    pub bound: u64,
    pub max_degree: usize,
    pub coeff_bound: i64,
    pub seed: u64,
    /// Skewed entry sizes for integer matrices.
    pub skew: bool,
    /// Range `1..=gcd_range` for the gcd and small-prime experiments.
    pub gcd_range: u64,
    /// `(d, n)` pairs for the small-prime experiment.
    pub prime_cases: Vec<(u64, usize)>,
}

impl ExperimentConfig {
    /// Desk-scale defaults for each experiment.
    pub fn new(experiment: ExperimentId) -> Self {
        let (sizes, trials) = match experiment {
            ExperimentId::SizeRatio => (vec![5, 10, 15, 20, 25], 100),
            ExperimentId::PivotInt | ExperimentId::PivotPoly => (vec![5, 10, 15], 100),
            ExperimentId::DetectRate => (vec![5, 10, 15, 20, 25], 300),
            ExperimentId::GcdProb | ExperimentId::SmallPrimeIncidence => (Vec::new(), 100_000),
            ExperimentId::Timing => (vec![11, 19, 31], 5),
        };
        ExperimentConfig {
            experiment,
            sizes,
            trials,
            bound: 1331,
            max_degree: 3,
            coeff_bound: 100,
            seed: 1,
            skew: experiment != ExperimentId::SizeRatio,
            gcd_range: 1_000_000_000,
            prime_cases: vec![(2, 1), (2, 2), (3, 2)],
        }
    }

    fn validate(&self) -> Result<(), BenchError> {
        if self.trials == 0 {
            return Err(BenchError::Config("trials must be positive".into()));
        }
        if self.sizes.contains(&0) {
            return Err(BenchError::Config("sizes must be positive".into()));
        }
        if self.gcd_range == 0 || self.bound == 0 {
            return Err(BenchError::Config("ranges must be positive".into()));
        }
        if self.prime_cases.iter().any(|&(d, n)| d < 2 || n == 0) {
            return Err(BenchError::Config("small-prime cases need d >= 2 and n >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub experiment: ExperimentId,
    pub n: usize,
    pub strategy: String,
    pub metric: String,
    pub mean: f64,
    pub trials: usize,
    pub seed: u64,
}

pub fn to_csv(rows: &[ExperimentRow]) -> String {
    let mut out = String::from("experiment,n,strategy,metric,mean,trials,seed\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{:.6},{},{}\n",
            r.experiment, r.n, r.strategy, r.metric, r.mean, r.trials, r.seed
        ));
    }
    out
}

pub fn to_json(rows: &[ExperimentRow]) -> String {
    serde_json::to_string_pretty(rows).expect("serializable")
}

/// Independent stream for one trial.
pub fn trial_rng(seed: u64, n: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((n as u64) << 32) | trial as u64);
    rng
}

fn digit_count(v: u64) -> u32 {
    v.checked_ilog10().map_or(1, |d| d + 1)
}

/// One entry in `[−bound, bound]`. With skew, a digit count `k` is drawn
/// uniformly first and the magnitude uniformly from `[0, min(10^k − 1, bound)]`,
/// so small entries are common and few reach the top decade.
pub fn random_int(rng: &mut impl Rng, bound: u64, skew: bool) -> i64 {
    let top = if skew {
        let k = rng.random_range(1..=digit_count(bound));
        (10u64.pow(k) - 1).min(bound)
    } else {
        bound
    };
    let mag = rng.random_range(0..=top) as i64;
    if mag != 0 && rng.random_bool(0.5) {
        -mag
    } else {
        mag
    }
}

pub fn random_int_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: u64, skew: bool) -> Matrix<Integer> {
    Matrix::from_fn(rows, cols, |_, _| Integer::from(random_int(rng, bound, skew)))
}

/// Degree uniform in `0..=max_degree`, coefficients uniform in
/// `[−coeff_bound, coeff_bound]` with a nonzero leading coefficient.
pub fn random_poly(rng: &mut impl Rng, max_degree: usize, coeff_bound: i64) -> QPoly {
    let deg = rng.random_range(0..=max_degree);
    let mut coeffs: Vec<i64> = (0..deg).map(|_| rng.random_range(-coeff_bound..=coeff_bound)).collect();
    let lead = loop {
        let c = rng.random_range(-coeff_bound..=coeff_bound);
        if c != 0 || coeff_bound == 0 {
            break c;
        }
    };
    coeffs.push(lead);
    QPoly::from_int_coeffs(coeffs)
}

pub fn random_poly_matrix(rng: &mut impl Rng, rows: usize, cols: usize, max_degree: usize, coeff_bound: i64) -> Matrix<QPoly> {
    Matrix::from_fn(rows, cols, |_, _| random_poly(rng, max_degree, coeff_bound))
}

/// Square integer matrix for trial `trial` at size `n`.
pub fn gen_random_matrix(cfg: &ExperimentConfig, n: usize, trial: usize) -> Matrix<Integer> {
    random_int_matrix(&mut trial_rng(cfg.seed, n, trial), n, n, cfg.bound, cfg.skew)
}

pub fn gen_random_poly_matrix(cfg: &ExperimentConfig, n: usize, trial: usize) -> Matrix<QPoly> {
    random_poly_matrix(&mut trial_rng(cfg.seed, n, trial), n, n, cfg.max_degree, cfg.coeff_bound)
}

/// Runs `f` for every trial in parallel and returns results in trial order.
fn per_trial<R: Send>(trials: usize, f: impl Fn(usize) -> Result<R, BenchError> + Sync + Send) -> Result<Vec<R>, BenchError> {
    (0..trials).into_par_iter().map(f).collect()
}

fn mean(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut total = 0.0;
    let mut count = 0usize;
    for v in values {
        total += v;
        count += 1;
    }
    total / count as f64
}

fn row(cfg: &ExperimentConfig, n: usize, strategy: &str, metric: &str, mean: f64) -> ExperimentRow {
    ExperimentRow {
        experiment: cfg.experiment,
        n,
        strategy: strategy.to_string(),
        metric: metric.to_string(),
        mean,
        trials: cfg.trials,
        seed: cfg.seed,
    }
}

/// Digits of the fraction baseline over digits of the LD⁻¹U output, counting
/// the triangular parts of `L` and `U` only. Both use the first nonzero
/// pivot so only the arithmetic differs.
pub fn run_size_ratio(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRow>, BenchError> {
    let mut rows = Vec::new();
    for &n in &cfg.sizes {
        let samples = per_trial(cfg.trials, |t| {
            let a = gen_random_matrix(cfg, n, t);
            let base = baseline_output_digits(&fraction_gauss_baseline(&a)?);
            let ldu = ldu_output_digits(&decompose(&a, PivotStrategy::First)?);
            Ok((base as f64, ldu as f64))
        })?;
        let base = mean(samples.iter().map(|s| s.0));
        let ldu = mean(samples.iter().map(|s| s.1));
        rows.push(row(cfg, n, "first", "baseline_digits", base));
        rows.push(row(cfg, n, "first", "ldu_digits", ldu));
        rows.push(row(cfg, n, "first", "ratio", base / ldu));
    }
    Ok(rows)
}

pub const INT_STRATEGIES: [PivotStrategy; 3] = [PivotStrategy::SMALLEST, PivotStrategy::LARGEST, PivotStrategy::Factors];

pub const POLY_STRATEGIES: [PivotStrategy; 3] = [
    PivotStrategy::SMALLEST,
    PivotStrategy::LARGEST,
    PivotStrategy::Smallest(crate::domain::Measure::Height),
];

/// Digits and row factors of `U` per pivoting strategy. Row factors skip
/// the last row, which only holds the determinant and is the same for all
/// strategies up to sign.
pub fn run_pivot_comparison(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRow>, BenchError> {
    let poly = match cfg.experiment {
        ExperimentId::PivotInt => false,
        ExperimentId::PivotPoly => true,
        other => return Err(BenchError::Config(format!("{other} is not a pivot comparison"))),
    };
    let strategies = if poly { POLY_STRATEGIES } else { INT_STRATEGIES };
    let mut rows = Vec::new();
    for &n in &cfg.sizes {
        let samples = per_trial(cfg.trials, |t| {
            strategies
                .iter()
                .map(|&s| {
                    if poly {
                        let a = gen_random_poly_matrix(cfg, n, t);
                        let m = measure(decompose(&a, s)?.u(), FactorCount::Skip)?;
                        Ok([m.total_terms as f64, m.total_digits as f64, 0.0])
                    } else {
                        let a = gen_random_matrix(cfg, n, t);
                        let m = measure(decompose(&a, s)?.u(), FactorCount::ExcludeLastRow)?;
                        Ok([m.total_digits as f64, m.row_factor_count.unwrap_or(0) as f64, 0.0])
                    }
                })
                .collect::<Result<Vec<_>, BenchError>>()
        })?;
        for (i, s) in strategies.iter().enumerate() {
            let (a, b) = if poly { ("terms_u", "digits_u") } else { ("digits_u", "row_factors_u") };
            rows.push(row(cfg, n, s.name(), a, mean(samples.iter().map(|x| x[i][0]))));
            rows.push(row(cfg, n, s.name(), b, mean(samples.iter().map(|x| x[i][1]))));
        }
    }
    Ok(rows)
}

/// Predicted over actual prime factors in the row gcds of `U` (last row
/// excluded), using the smallest-pivot strategy. Per size and overall
/// (`n = 0`); rates with no actual factors are NaN.
pub fn run_detect_rate(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRow>, BenchError> {
    let mut rows = Vec::new();
    let (mut all_pred, mut all_act) = (0u64, 0u64);
    for &n in &cfg.sizes {
        let samples = per_trial(cfg.trials, |t| {
            let a = gen_random_matrix(cfg, n, t);
            let dec = decompose(&a, PivotStrategy::SMALLEST)?;
            let rep = predict_row_factors(&dec)?;
            rep.prime_totals().ok_or_else(|| BenchError::Config("prime counts need integers".into()))
        })?;
        let pred: u64 = samples.iter().map(|s| s.0).sum();
        let act: u64 = samples.iter().map(|s| s.1).sum();
        all_pred += pred;
        all_act += act;
        rows.push(row(cfg, n, "smallest", "predicted_primes", pred as f64 / cfg.trials as f64));
        rows.push(row(cfg, n, "smallest", "actual_primes", act as f64 / cfg.trials as f64));
        rows.push(row(cfg, n, "smallest", "rate", detect_ratio(pred, act)));
    }
    let mut total = row(cfg, 0, "smallest", "rate", detect_ratio(all_pred, all_act));
    total.trials = cfg.trials * cfg.sizes.len();
    rows.push(total);
    Ok(rows)
}

fn detect_ratio(pred: u64, act: u64) -> f64 {
    if act == 0 {
        f64::NAN
    } else {
        pred as f64 / act as f64
    }
}

/// Whether `gcd(a,b)/gcd(a,b,p) ≠ 1`.
pub fn predictor_nontrivial(a: u64, b: u64, p: u64) -> bool {
    let g = a.gcd(&b);
    g / g.gcd(&p) != 1
}

pub fn run_gcd_probability(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRow>, BenchError> {
    let range = cfg.gcd_range;
    let hits = per_trial(cfg.trials, |t| {
        let mut rng = trial_rng(cfg.seed, 0, t);
        let mut draw = || rng.random_range(1..=range);
        Ok(predictor_nontrivial(draw(), draw(), draw()))
    })?;
    let freq = hits.iter().filter(|&&h| h).count() as f64 / cfg.trials as f64;
    let label = format!("uniform-1..{range}");
    Ok(vec![row(cfg, 0, &label, "p_nontrivial", freq)])
}

/// Exact probability over all triples in `1..=range`, by enumeration.
pub fn gcd_probability_exact(range: u64) -> f64 {
    let hits: u64 = (1..=range)
        .into_par_iter()
        .map(|a| {
            let mut h = 0u64;
            for b in 1..=range {
                let g = a.gcd(&b);
                if g == 1 {
                    continue;
                }
                h += (1..=range).filter(|p| g / g.gcd(p) != 1).count() as u64;
            }
            h
        })
        .sum();
    hits as f64 / (range as f64).powi(3)
}

/// 1 − 6ζ(3)/π².
pub fn gcd_probability_limit() -> f64 {
    const ZETA3: f64 = 1.202_056_903_159_594_3;
    1.0 - 6.0 * ZETA3 / (std::f64::consts::PI * std::f64::consts::PI)
}

/// Frequency with which `d` divides every entry of `v + w` for random
/// vectors of length `n`, reported next to `1/dⁿ`.
pub fn run_small_prime_incidence(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRow>, BenchError> {
    let mut rows = Vec::new();
    let range = cfg.gcd_range as i64;
    for &(d, n) in &cfg.prime_cases {
        let hits = per_trial(cfg.trials, |t| {
            let mut rng = trial_rng(cfg.seed ^ d.rotate_left(17), n, t);
            Ok((0..n).all(|_| {
                let v = rng.random_range(-range..=range);
                let w = rng.random_range(-range..=range);
                (v + w).rem_euclid(d as i64) == 0
            }))
        })?;
        let freq = hits.iter().filter(|&&h| h).count() as f64 / cfg.trials as f64;
        let label = format!("d={d}");
        rows.push(row(cfg, n, &label, "frequency", freq));
        rows.push(row(cfg, n, &label, "expected", (d as f64).powi(-(n as i32))));
    }
    Ok(rows)
}

/// Wall-clock ratio of LD⁻¹U time to fraction baseline time. Trials run
/// sequentially so they do not compete for cores; the values are machine
/// dependent and not reproducible byte for byte.
pub fn run_timing(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRow>, BenchError> {
    let mut rows = Vec::new();
    for &n in &cfg.sizes {
        let (mut ldu, mut base) = (0.0, 0.0);
        for t in 0..cfg.trials {
            let a = gen_random_matrix(cfg, n, t);
            let start = Instant::now();
            decompose(&a, PivotStrategy::First)?;
            ldu += start.elapsed().as_secs_f64();
            let start = Instant::now();
            fraction_gauss_baseline(&a)?;
            base += start.elapsed().as_secs_f64();
        }
        rows.push(row(cfg, n, "first", "time_ratio", ldu / base));
    }
    Ok(rows)
}

pub fn run(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRow>, BenchError> {
    cfg.validate()?;
    match cfg.experiment {
        ExperimentId::SizeRatio => run_size_ratio(cfg),
        ExperimentId::PivotInt | ExperimentId::PivotPoly => run_pivot_comparison(cfg),
        ExperimentId::DetectRate => run_detect_rate(cfg),
        ExperimentId::GcdProb => run_gcd_probability(cfg),
        ExperimentId::SmallPrimeIncidence => run_small_prime_incidence(cfg),
        ExperimentId::Timing => run_timing(cfg),
    }
}

/// Like [`run`] on a dedicated pool of `threads` workers.
pub fn run_with_threads(cfg: &ExperimentConfig, threads: usize) -> Result<Vec<ExperimentRow>, BenchError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| BenchError::ThreadPool(e.to_string()))?;
    pool.install(|| run(cfg))
}

/// Share of samples whose magnitude has as many digits as `bound`.
pub fn top_decade_fraction(samples: &[i64], bound: u64) -> f64 {
    let lo = 10i64.pow(digit_count(bound) - 1);
    samples.iter().filter(|v| v.abs() >= lo).count() as f64 / samples.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Measurable;

    #[test]
    fn sizes_parse() {
        assert_eq!(parse_sizes("5:25:5").unwrap(), vec![5, 10, 15, 20, 25]);
        assert_eq!(parse_sizes("3").unwrap(), vec![3]);
        assert_eq!(parse_sizes("2:4").unwrap(), vec![2, 3, 4]);
        assert!(parse_sizes("5:1").is_err());
        assert!(parse_sizes("1:5:0").is_err());
        assert!(parse_sizes("x").is_err());
    }

    #[test]
    fn experiment_names_round_trip() {
        for e in ExperimentId::ALL {
            assert_eq!(e.name().parse::<ExperimentId>().unwrap(), e);
        }
        assert!("nope".parse::<ExperimentId>().is_err());
    }

    #[test]
    fn generator_is_seeded() {
        let cfg = ExperimentConfig::new(ExperimentId::PivotInt);
        assert_eq!(gen_random_matrix(&cfg, 4, 7), gen_random_matrix(&cfg, 4, 7));
        assert_ne!(gen_random_matrix(&cfg, 4, 7), gen_random_matrix(&cfg, 4, 8));
        assert_eq!(gen_random_poly_matrix(&cfg, 3, 1), gen_random_poly_matrix(&cfg, 3, 1));
    }

    #[test]
    fn generator_support_and_skew() {
        let mut rng = trial_rng(9, 0, 0);
        let samples: Vec<i64> = (0..10_000).map(|_| random_int(&mut rng, 10, true)).collect();
        assert_eq!(samples.iter().map(|v| v.abs()).max(), Some(10));
        let big: Vec<i64> = (0..10_000).map(|_| random_int(&mut rng, 1331, true)).collect();
        assert!(big.iter().all(|v| v.abs() <= 1331));
        assert!(top_decade_fraction(&big, 1331) < 0.25);
        let flat: Vec<i64> = (0..10_000).map(|_| random_int(&mut rng, 1331, false)).collect();
        assert!(top_decade_fraction(&flat, 1331) > 0.2);
    }

    #[test]
    fn random_polynomials_have_bounded_degree() {
        let mut rng = trial_rng(3, 0, 0);
        for _ in 0..1000 {
            let p = random_poly(&mut rng, 3, 100);
            assert!(p.degree().unwrap() <= 3);
            assert!(p.height() <= num_bigint::BigUint::from(100u32));
        }
    }

    #[test]
    fn predictor_forced_equal_is_trivial() {
        assert!((1..500).all(|v| !predictor_nontrivial(v, v, v)));
        assert!(predictor_nontrivial(6, 4, 3));
        assert!(!predictor_nontrivial(6, 4, 2));
    }

    #[test]
    fn exact_small_range() {
        let p = gcd_probability_exact(20);
        assert!(p > 0.0 && p < 1.0);
        assert!((gcd_probability_limit() - 0.2692).abs() < 1e-4);
    }
}
