//! The heterogeneous random-graph model and numeric validation of the
//! probabilistic lower-bound machinery.
//!
//! Every vertex draws a weight uniformly from [alpha, 1-alpha]; edge ij
//! appears independently with probability (a_i + a_j)/2. All randomness
//! comes from a counter-based generator keyed by (seed, stream), so
//! parallel sampling and replays are bit-stable.

use crate::graph::Graph;
use crate::regcheck::{find_regular_with_required, Mode, OracleError};
use crate::VertexSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum RandError {
    #[error("alpha must lie strictly between 0 and 1/2, got {0}")]
    BadAlpha(f64),
    #[error("eps must lie strictly between 0 and alpha, got eps={eps} alpha={alpha}")]
    BadEps { eps: f64, alpha: f64 },
    #[error("beta must be positive, got {0}")]
    BadBeta(f64),
    #[error("need at least {want} trials, got {got}")]
    TooFewTrials { want: u64, got: u64 },
    #[error("grid needs at least 2 steps, got {0}")]
    BadGrid(usize),
    #[error("order {0} beyond the sampler limit 64")]
    OrderTooLarge(usize),
    #[error("regular-graph census limited to k <= 10, got {0}")]
    KTooLarge(usize),
    #[error("degree {d} outside 0..={max}")]
    BadDegree { d: usize, max: usize },
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Parameters of the heterogeneous model.
#[derive(Debug, Clone, Copy)]
pub struct HeteroParams {
    pub n: usize,
    pub alpha: f64,
    pub seed: u64,
}

fn check_alpha(alpha: f64) -> Result<(), RandError> {
    if !(alpha > 0.0 && alpha < 0.5) {
        return Err(RandError::BadAlpha(alpha));
    }
    Ok(())
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Draws the weight vector on the given stream.
pub fn draw_weights(n: usize, alpha: f64, seed: u64, stream: u64) -> Result<Vec<f64>, RandError> {
    check_alpha(alpha)?;
    if n > 64 {
        return Err(RandError::OrderTooLarge(n));
    }
    let mut rng = rng_for(seed, stream);
    Ok((0..n).map(|_| rng.random_range(alpha..=1.0 - alpha)).collect())
}

/// Draws the edge indicators for a fixed weight vector on the given
/// stream, edge (i, j) with probability (a_i + a_j)/2, pairs in
/// lexicographic order.
pub fn sample_edges_with_weights(weights: &[f64], seed: u64, stream: u64) -> Graph {
    let n = weights.len();
    let mut rng = rng_for(seed, stream);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool((weights[u] + weights[v]) / 2.0) {
                g.set_edge(u, v);
            }
        }
    }
    g
}

/// One draw from the heterogeneous model (trial 0).
pub fn sample_hetero(p: &HeteroParams) -> Result<Graph, RandError> {
    sample_hetero_indexed(p, 0)
}

/// The `trial`-th independent draw under the same seed; weights use stream
/// 2*trial and edges stream 2*trial + 1.
pub fn sample_hetero_indexed(p: &HeteroParams, trial: u64) -> Result<Graph, RandError> {
    let weights = draw_weights(p.n, p.alpha, p.seed, 2 * trial)?;
    Ok(sample_edges_with_weights(&weights, p.seed, 2 * trial + 1))
}

/// `c2 = 1 / (2 (1-alpha)^2)`, the quadratic coefficient of the log-ratio
/// inequality.
pub fn c2_coefficient(alpha: f64) -> f64 {
    1.0 / (2.0 * (1.0 - alpha) * (1.0 - alpha))
}

/// The base of the final exponential bound,
/// `18 e (1-alpha) / (163 (1-2 alpha) sqrt((alpha-eps)(1-alpha+eps)))`.
/// Values below 1 make the union bound vanish for large k.
pub fn bound_base(alpha: f64, eps: f64) -> Result<f64, RandError> {
    check_alpha(alpha)?;
    if !(eps > 0.0 && eps < alpha) {
        return Err(RandError::BadEps { eps, alpha });
    }
    let num = 18.0 * std::f64::consts::E * (1.0 - alpha);
    let den = 163.0 * (1.0 - 2.0 * alpha) * ((alpha - eps) * (1.0 - alpha + eps)).sqrt();
    Ok(num / den)
}

/// Maximum of `log(u/v) - (u-v)/v + c2 (u-v)^2` over a `steps x steps`
/// grid of `[alpha, 1-alpha]^2`; at most 0 up to rounding when the
/// inequality holds (it is exactly 0 on the diagonal).
pub fn log_ratio_violation(alpha: f64, steps: usize) -> Result<f64, RandError> {
    log_ratio_violation_with_c2(alpha, steps, c2_coefficient(alpha))
}

/// Same grid scan with an explicit quadratic coefficient, for probing how
/// sharp the inequality is.
pub fn log_ratio_violation_with_c2(
    alpha: f64,
    steps: usize,
    c2: f64,
) -> Result<f64, RandError> {
    check_alpha(alpha)?;
    if steps < 2 {
        return Err(RandError::BadGrid(steps));
    }
    let lo = alpha;
    let hi = 1.0 - alpha;
    let xs: Vec<f64> = (0..steps)
        .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
        .collect();
    let logs: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let mut max = f64::NEG_INFINITY;
    for (i, &u) in xs.iter().enumerate() {
        for (j, &v) in xs.iter().enumerate() {
            let d = u - v;
            let val = logs[i] - logs[j] - d / v + c2 * d * d;
            if val > max {
                max = val;
            }
        }
    }
    Ok(max)
}

/// Monte-Carlo check of the exponential moment bound over the centered
/// cube: the estimate of `E exp(-beta sum (z_i - mean)^2)` for z uniform
/// on `[alpha - 1/2, 1/2 - alpha]^k` against the closed-form bound
/// `k^(1/2) (pi / ((1-2 alpha)^2 beta))^((k-1)/2)`.
#[derive(Debug, Clone, Copy)]
pub struct CubeCheck {
    pub estimate: f64,
    pub bound: f64,
    pub stderr: f64,
    pub trials: u64,
}

impl CubeCheck {
    /// The acceptance contract: estimate below the bound within three
    /// standard errors.
    pub fn holds(&self) -> bool {
        self.estimate <= self.bound * (1.0 + 3.0 * self.stderr / self.estimate)
    }
}

pub fn mc_cube_moment_bound(
    k: usize,
    alpha: f64,
    beta: f64,
    trials: u64,
    seed: u64,
) -> Result<CubeCheck, RandError> {
    check_alpha(alpha)?;
    if k < 2 {
        return Err(RandError::KTooLarge(k));
    }
    if beta <= 0.0 {
        return Err(RandError::BadBeta(beta));
    }
    if trials < 1 {
        return Err(RandError::TooFewTrials { want: 1, got: trials });
    }
    let half = 0.5 - alpha;
    let mut rng = rng_for(seed, 0);
    let mut sum = 0.0f64;
    let mut sum_sq = 0.0f64;
    let mut zs = vec![0.0f64; k];
    for _ in 0..trials {
        let mut mean = 0.0;
        for z in zs.iter_mut() {
            *z = rng.random_range(-half..=half);
            mean += *z;
        }
        mean /= k as f64;
        let energy: f64 = zs.iter().map(|z| (z - mean) * (z - mean)).sum();
        let x = (-beta * energy).exp();
        sum += x;
        sum_sq += x * x;
    }
    let estimate = sum / trials as f64;
    let var = (sum_sq / trials as f64 - estimate * estimate).max(0.0);
    let stderr = (var / trials as f64).sqrt();
    let w = 1.0 - 2.0 * alpha;
    let bound = (k as f64).sqrt()
        * (std::f64::consts::PI / (w * w * beta)).powf((k as f64 - 1.0) / 2.0);
    Ok(CubeCheck { estimate, bound, stderr, trials })
}

/// Number of labelled d-regular graphs on k vertices, by exhaustive edge
/// assignment with degree pruning. Zero when dk is odd.
pub fn count_regular(k: usize, d: usize) -> Result<u64, RandError> {
    if k == 0 || k > 10 {
        return Err(RandError::KTooLarge(k));
    }
    if d > k - 1 {
        return Err(RandError::BadDegree { d, max: k - 1 });
    }
    if (d * k) % 2 == 1 {
        return Ok(0);
    }
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|u| ((u + 1)..k).map(move |v| (u, v)))
        .collect();
    // remaining[i][v]: pairs at index >= i that involve v
    let mut remaining = vec![vec![0u32; k]; pairs.len() + 1];
    for i in (0..pairs.len()).rev() {
        for v in 0..k {
            remaining[i][v] = remaining[i + 1][v]
                + u32::from(pairs[i].0 == v || pairs[i].1 == v);
        }
    }
    let mut degs = vec![0u32; k];
    let mut count = 0u64;
    assign(&pairs, &remaining, d as u32, 0, &mut degs, &mut count);
    Ok(count)
}

fn assign(
    pairs: &[(usize, usize)],
    remaining: &[Vec<u32>],
    d: u32,
    i: usize,
    degs: &mut [u32],
    count: &mut u64,
) {
    if i == pairs.len() {
        *count += 1;
        return;
    }
    let (u, v) = pairs[i];
    for take in [false, true] {
        if take {
            degs[u] += 1;
            degs[v] += 1;
        }
        let ok = degs[u] <= d
            && degs[v] <= d
            && degs[u] + remaining[i + 1][u] >= d
            && degs[v] + remaining[i + 1][v] >= d;
        if ok {
            assign(pairs, remaining, d, i + 1, degs, count);
        }
        if take {
            degs[u] -= 1;
            degs[v] -= 1;
        }
    }
}

/// Per-trial indicators: does the `t`-th heterogeneous sample contain an
/// induced regular subgraph of order at least `k`?
pub fn empirical_regular_trials(
    n: usize,
    k: usize,
    alpha: f64,
    samples: u64,
    seed: u64,
) -> Result<Vec<bool>, RandError> {
    if samples < 1 {
        return Err(RandError::TooFewTrials { want: 1, got: samples });
    }
    let params = HeteroParams { n, alpha, seed };
    let mut out = Vec::with_capacity(samples as usize);
    for trial in 0..samples {
        let g = sample_hetero_indexed(&params, trial)?;
        let found =
            find_regular_with_required(&g, k, Mode::AtLeast, VertexSet::EMPTY, 100_000_000)?;
        out.push(found.is_some());
    }
    Ok(out)
}

/// Fraction of heterogeneous samples containing an induced regular
/// subgraph of order at least `k`.
pub fn empirical_regular_rate(
    n: usize,
    k: usize,
    alpha: f64,
    samples: u64,
    seed: u64,
) -> Result<f64, RandError> {
    let trials = empirical_regular_trials(n, k, alpha, samples, seed)?;
    Ok(trials.iter().filter(|&&b| b).count() as f64 / trials.len() as f64)
}
