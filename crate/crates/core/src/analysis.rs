//! Statistical validation of the degree-correlation theory behind the tail
//! signatures: closed-form vs Monte Carlo correlation of matched degrees,
//! regional total-variation scores, and the matching accuracy metric.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::graph::Permutation;
use crate::scalar::Real;
use crate::synth::{fan_out_seed, generate_pair, CorrelatedErConfig};

/// Normal approximation parameters of a child-graph degree:
/// mu = (n-1)·p·s, sigma = sqrt((n-1)·(1-ps)·ps).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DegreeStats<T> {
    pub mu: T,
    pub sigma: T,
}

impl<T: Real> DegreeStats<T> {
    pub fn for_correlated_er(n: usize, p: T, s: T) -> Result<DegreeStats<T>> {
        let ps = p * s;
        let nm1 = T::from_count(n.saturating_sub(1));
        let mu = nm1 * ps;
        let sigma = (nm1 * ps * (T::one() - ps)).sqrt();
        if !(sigma > T::zero()) {
            return Err(Error::Degenerate(format!(
                "degree sigma is not positive for n = {n}, ps = {ps}"
            )));
        }
        Ok(DegreeStats { mu, sigma })
    }
}

/// U = (deg − mu)/sigma.
pub fn normalize_degree<T: Real>(deg: u32, stats: &DegreeStats<T>) -> Result<T> {
    if !(stats.sigma > T::zero()) {
        return Err(Error::Degenerate("sigma must be positive".to_string()));
    }
    Ok((T::from_u32(deg).expect("degree fits scalar") - stats.mu) / stats.sigma)
}

/// Correlation coefficient of matched normalized degrees: s(1−p)/(1−ps).
pub fn theoretical_rho<T: Real>(p: T, s: T) -> Result<T> {
    let ps = p * s;
    if ps >= T::one() {
        return Err(Error::Degenerate(format!(
            "rho undefined at ps = {ps} (requires ps < 1)"
        )));
    }
    Ok(s * (T::one() - p) / (T::one() - ps))
}

/// Sample Pearson correlation of paired observations.
pub fn pearson<T: Real>(xs: &[T], ys: &[T]) -> T {
    assert_eq!(xs.len(), ys.len(), "pearson needs paired samples");
    let n = T::from_count(xs.len());
    let mean = |v: &[T]| v.iter().fold(T::zero(), |a, &b| a + b) / n;
    let mx = mean(xs);
    let my = mean(ys);
    let mut sxy = T::zero();
    let mut sxx = T::zero();
    let mut syy = T::zero();
    for (&x, &y) in xs.iter().zip(ys) {
        let dx = x - mx;
        let dy = y - my;
        sxy = sxy + dx * dy;
        sxx = sxx + dx * dx;
        syy = syy + dy * dy;
    }
    sxy / (sxx * syy).sqrt()
}

/// Monte Carlo estimate of the matched and unmatched degree correlations.
#[derive(Clone, Copy, Debug)]
pub struct RhoEstimate {
    pub matched: f64,
    pub unmatched: f64,
    /// Node pairs pooled into each estimate.
    pub pairs: usize,
}

/// Pools degrees over `trials` independently generated pairs and returns the
/// Pearson correlation between matched degree pairs (U_i^a, U_{pi*(i)}^b) and
/// between unmatched pairs (U_i^a, U_j^b) for one random j != pi*(i) per node.
/// Meaningful from roughly 30 trials up.
pub fn empirical_rho(config: &CorrelatedErConfig, trials: usize) -> Result<RhoEstimate> {
    if trials == 0 {
        return Err(Error::input("empirical_rho needs at least one trial"));
    }
    config.validate()?;
    let n = config.n;
    let mut deg_a = Vec::with_capacity(trials * n);
    let mut deg_b_matched = Vec::with_capacity(trials * n);
    let mut deg_b_unmatched = Vec::with_capacity(trials * n);
    for trial in 0..trials {
        let sub_seed = fan_out_seed(config.seed, trial as u64);
        let pair = generate_pair(&CorrelatedErConfig {
            seed: sub_seed,
            ..config.clone()
        })?;
        let mut pick = ChaCha8Rng::seed_from_u64(fan_out_seed(sub_seed, u64::MAX));
        use rand::Rng;
        for i in 0..n as u32 {
            let mate = pair.truth.apply(i);
            deg_a.push(pair.g_a.degree(i) as f64);
            deg_b_matched.push(pair.g_b.degree(mate) as f64);
            // Uniform over V_b minus the true mate.
            let mut j = pick.random_range(0..n as u32 - 1);
            if j >= mate {
                j += 1;
            }
            deg_b_unmatched.push(pair.g_b.degree(j) as f64);
        }
    }
    // Pearson is invariant to the affine normalization, so raw degrees and
    // normalized degrees give the same estimate.
    Ok(RhoEstimate {
        matched: pearson(&deg_a, &deg_b_matched),
        unmatched: pearson(&deg_a, &deg_b_unmatched),
        pairs: trials * n,
    })
}

/// Which part of the support a regional TV distance covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    /// Bins whose center lies at |x| > threshold.
    Tail,
    /// Bins whose center lies at |x| <= threshold.
    Center,
}

/// Shared histogram grid for regional TV distances: uniform bins of
/// `bin_width` covering [-support_clip, support_clip], mass beyond the clip
/// folded into the end bins.
#[derive(Clone, Copy, Debug)]
pub struct HistogramGrid<T> {
    pub bin_width: T,
    pub support_clip: T,
    pub threshold: T,
}

impl<T: Real> Default for HistogramGrid<T> {
    fn default() -> Self {
        HistogramGrid {
            bin_width: T::from_f64(0.25).unwrap(),
            support_clip: T::from_f64(6.0).unwrap(),
            threshold: T::from_f64(0.5).unwrap(),
        }
    }
}

impl<T: Real> HistogramGrid<T> {
    pub fn bin_count(&self) -> usize {
        let nb = (self.support_clip + self.support_clip) / self.bin_width;
        nb.round().to_usize().expect("bin count fits usize").max(1)
    }

    fn bin_index(&self, x: T) -> usize {
        let nb = self.bin_count();
        let raw = ((x + self.support_clip) / self.bin_width).floor();
        raw.to_isize()
            .map(|i| i.clamp(0, nb as isize - 1) as usize)
            .unwrap_or(if x > T::zero() { nb - 1 } else { 0 })
    }

    fn bin_center(&self, idx: usize) -> T {
        let half = T::from_f64(0.5).unwrap();
        -self.support_clip + (T::from_count(idx) + half) * self.bin_width
    }

    fn in_region(&self, idx: usize, region: Region) -> bool {
        let tail = self.bin_center(idx).abs() > self.threshold;
        match region {
            Region::Tail => tail,
            Region::Center => !tail,
        }
    }

    /// Normalized histogram masses of a sample set. Counts first, divides
    /// once, so a bin holding every sample carries mass exactly 1.
    pub fn histogram(&self, samples: &[T]) -> Vec<T> {
        let mut counts = vec![0usize; self.bin_count()];
        for &x in samples {
            counts[self.bin_index(x)] += 1;
        }
        let total = T::from_count(samples.len().max(1));
        counts
            .into_iter()
            .map(|c| T::from_count(c) / total)
            .collect()
    }
}

/// Regional total-variation distance between the empirical histograms of two
/// sample sets on a shared grid: ½·Σ_{bins in region} |p̂_a − p̂_b|. Both
/// sample sets must be nonempty.
pub fn empirical_tv_region<T: Real>(
    samples_a: &[T],
    samples_b: &[T],
    region: Region,
    grid: &HistogramGrid<T>,
) -> T {
    assert!(
        !samples_a.is_empty() && !samples_b.is_empty(),
        "empirical_tv_region needs nonempty sample sets"
    );
    let pa = grid.histogram(samples_a);
    let pb = grid.histogram(samples_b);
    let half = T::from_f64(0.5).unwrap();
    let mut total = T::zero();
    for idx in 0..pa.len() {
        if grid.in_region(idx, region) {
            total = total + (pa[idx] - pb[idx]).abs();
        }
    }
    half * total
}

/// Parameters of the tail-vs-center score experiment.
#[derive(Clone, Debug)]
pub struct TailScoreConfig {
    pub n: usize,
    pub p: f64,
    pub s_grid: Vec<f64>,
    pub samples_per_instance: usize,
    pub instances: usize,
    pub threshold: f64,
    pub bin_width: f64,
    pub support_clip: f64,
    pub seed: u64,
}

impl TailScoreConfig {
    /// Paper-style defaults: 100 samples x 100 instances, threshold ½, bins
    /// of 0.25 on [-6, 6].
    pub fn new(n: usize, p: f64, s_grid: Vec<f64>, seed: u64) -> TailScoreConfig {
        TailScoreConfig {
            n,
            p,
            s_grid,
            samples_per_instance: 100,
            instances: 100,
            threshold: 0.5,
            bin_width: 0.25,
            support_clip: 6.0,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples_per_instance < 2 {
            return Err(Error::input("samples_per_instance must be >= 2"));
        }
        if !(self.threshold > 0.0) {
            return Err(Error::input("threshold must be positive"));
        }
        if !(self.bin_width > 0.0) || !(self.support_clip > 0.0) {
            return Err(Error::input("bin_width and support_clip must be positive"));
        }
        if self.instances == 0 {
            return Err(Error::input("instances must be >= 1"));
        }
        Ok(())
    }

    fn grid(&self) -> HistogramGrid<f64> {
        HistogramGrid {
            bin_width: self.bin_width,
            support_clip: self.support_clip,
            threshold: self.threshold,
        }
    }
}

/// Per-s aggregates of the score experiment.
#[derive(Clone, Copy, Debug)]
pub struct TailScoreRow {
    pub s: f64,
    pub mean_s_tail: f64,
    pub mean_s_center: f64,
    /// Instances excluded by the denominator guard.
    pub dropped_instances: usize,
    pub mean_delta_tail_matched: f64,
    pub mean_delta_tail_unmatched: f64,
    pub mean_delta_center_matched: f64,
    pub mean_delta_center_unmatched: f64,
}

#[derive(Clone, Debug)]
pub struct TailScoreReport {
    pub rows: Vec<TailScoreRow>,
}

impl TailScoreReport {
    pub fn grand_mean_s_tail(&self) -> f64 {
        mean(self.rows.iter().map(|r| r.mean_s_tail))
    }

    pub fn grand_mean_s_center(&self) -> f64 {
        mean(self.rows.iter().map(|r| r.mean_s_center))
    }
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let mut total = 0.0;
    let mut count = 0usize;
    for v in values {
        total += v;
        count += 1;
    }
    if count == 0 {
        0.0
    } else {
        total / count as f64
    }
}

const DENOMINATOR_GUARD: f64 = 1e-12;

/// Runs the matched-vs-unmatched regional TV score experiment.
///
/// Per instance: draw `samples_per_instance` standard normals A, a matched
/// partner set ρA + sqrt(1−ρ²)Z with ρ = s(1−p)/(1−ps), and an independent
/// (ρ = 0) partner set; the regional scores are Δ_region(A, matched) /
/// Δ_region(A, unmatched). Instances whose denominator falls below 1e-12 in
/// either region are dropped and counted. Fully determined by the seed.
pub fn tail_center_scores(cfg: &TailScoreConfig) -> Result<TailScoreReport> {
    cfg.validate()?;
    let grid = cfg.grid();
    let m = cfg.samples_per_instance;
    let mut rows = Vec::with_capacity(cfg.s_grid.len());
    for (s_idx, &s) in cfg.s_grid.iter().enumerate() {
        let rho = theoretical_rho(cfg.p, s)?;
        let noise = (1.0 - rho * rho).max(0.0).sqrt();
        let mut s_tail = Vec::with_capacity(cfg.instances);
        let mut s_center = Vec::with_capacity(cfg.instances);
        let mut d_tm = Vec::new();
        let mut d_tu = Vec::new();
        let mut d_cm = Vec::new();
        let mut d_cu = Vec::new();
        let mut dropped = 0usize;
        for instance in 0..cfg.instances {
            let mut rng = ChaCha8Rng::seed_from_u64(fan_out_seed(
                cfg.seed,
                (s_idx * cfg.instances + instance) as u64,
            ));
            let a: Vec<f64> = (0..m).map(|_| StandardNormal.sample(&mut rng)).collect();
            let matched: Vec<f64> = a
                .iter()
                .map(|&x| {
                    let z: f64 = StandardNormal.sample(&mut rng);
                    rho * x + noise * z
                })
                .collect();
            let unmatched: Vec<f64> =
                (0..m).map(|_| StandardNormal.sample(&mut rng)).collect();

            let tail_m = empirical_tv_region(&a, &matched, Region::Tail, &grid);
            let tail_u = empirical_tv_region(&a, &unmatched, Region::Tail, &grid);
            let center_m = empirical_tv_region(&a, &matched, Region::Center, &grid);
            let center_u = empirical_tv_region(&a, &unmatched, Region::Center, &grid);
            d_tm.push(tail_m);
            d_tu.push(tail_u);
            d_cm.push(center_m);
            d_cu.push(center_u);
            if tail_u < DENOMINATOR_GUARD || center_u < DENOMINATOR_GUARD {
                dropped += 1;
                continue;
            }
            s_tail.push(tail_m / tail_u);
            s_center.push(center_m / center_u);
        }
        rows.push(TailScoreRow {
            s,
            mean_s_tail: mean(s_tail.into_iter()),
            mean_s_center: mean(s_center.into_iter()),
            dropped_instances: dropped,
            mean_delta_tail_matched: mean(d_tm.into_iter()),
            mean_delta_tail_unmatched: mean(d_tu.into_iter()),
            mean_delta_center_matched: mean(d_cm.into_iter()),
            mean_delta_center_unmatched: mean(d_cu.into_iter()),
        });
    }
    Ok(TailScoreReport { rows })
}

/// Fraction of nodes whose estimated image matches the ground truth.
pub fn accuracy(pi_hat: &Permutation, truth: &Permutation) -> Result<f64> {
    if pi_hat.len() != truth.len() {
        return Err(Error::input(format!(
            "mapping lengths differ: {} vs {}",
            pi_hat.len(),
            truth.len()
        )));
    }
    if pi_hat.is_empty() {
        return Ok(1.0);
    }
    let hits = pi_hat
        .iter()
        .zip(truth.iter())
        .filter(|(a, b)| a == b)
        .count();
    Ok(hits as f64 / pi_hat.len() as f64)
}
