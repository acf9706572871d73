//! Reproducible Monte Carlo sampling of singular Wishart eigenvalues.
//!
//! Each replication draws an `m × n` standard Gaussian matrix, scales row
//! `i` by `sqrt(λ_i)` (eigenvalue laws depend on the covariance only through
//! its eigenvalues, so a diagonal covariance loses nothing), forms the
//! `n × n` Gram matrix `XᵀX` — whose spectrum equals the nonzero spectrum of
//! `W = XXᵀ` — and diagonalizes it with Jacobi rotations.
//!
//! Replication `r` draws exclusively from the substream `(seed, r)`, so a
//! run is bit-identical for any worker count.

mod empirical;
mod jacobi;
mod rng;

pub use empirical::EmpiricalDistribution;
pub use jacobi::symmetric_eigenvalues;
pub use rng::SplitMix64;

use crate::eigdist::{CovarianceSpec, EigenSample};
use crate::error::{Error, Result};
use rayon::prelude::*;

/// Hard cap on total sampled values; beyond this the run is refused rather
/// than left to exhaust memory.
const MAX_TOTAL_DRAWS: u128 = 2_000_000_000;

/// One simulation request.
#[derive(Debug, Clone)]
pub struct SimConfig {
    pub m: usize,
    pub n: usize,
    pub cov: CovarianceSpec,
    pub reps: usize,
    pub seed: u64,
    /// Requested parallelism; 0 lets the thread pool pick.
    pub workers: usize,
}

impl SimConfig {
    pub fn new(m: usize, n: usize, cov: CovarianceSpec, reps: usize, seed: u64) -> Result<Self> {
        if n == 0 || m <= n {
            return Err(Error::Domain(format!(
                "need m > n >= 1, got m = {m}, n = {n}"
            )));
        }
        if cov.m() != m {
            return Err(Error::Domain(format!(
                "covariance has {} eigenvalues but m = {m}",
                cov.m()
            )));
        }
        if reps == 0 {
            return Err(Error::Domain("need at least one replication".into()));
        }
        Ok(SimConfig {
            m,
            n,
            cov,
            reps,
            seed,
            workers: 0,
        })
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    fn check_resources(&self) -> Result<()> {
        let total = self.reps as u128 * self.m as u128 * self.n as u128;
        if total > MAX_TOTAL_DRAWS {
            return Err(Error::Resource(format!(
                "reps × m × n = {total} exceeds the configured limit {MAX_TOTAL_DRAWS}"
            )));
        }
        Ok(())
    }
}

/// Draws one set of sample eigenvalues `ℓ_1 > … > ℓ_n` of `W = XXᵀ`.
pub fn sample_eigenvalues(
    m: usize,
    n: usize,
    cov: &CovarianceSpec,
    rng: &mut SplitMix64,
) -> EigenSample {
    debug_assert!(m > n && n >= 1);
    debug_assert_eq!(cov.m(), m);
    let sqrt_lambda: Vec<f64> = cov.lambdas().iter().map(|&l| l.sqrt()).collect();
    // X stored row-major m × n
    let mut x = vec![0.0f64; m * n];
    for i in 0..m {
        let s = sqrt_lambda[i];
        for j in 0..n {
            x[i * n + j] = s * rng.next_normal();
        }
    }
    // Gram matrix XᵀX, n × n
    let mut gram = vec![0.0f64; n * n];
    for a in 0..n {
        for b in a..n {
            let mut acc = 0.0;
            for i in 0..m {
                acc += x[i * n + a] * x[i * n + b];
            }
            gram[a * n + b] = acc;
            gram[b * n + a] = acc;
        }
    }
    let ells = symmetric_eigenvalues(gram, n);
    EigenSample::new_unchecked(ells, m)
}

/// Per-replication evaluations of an arbitrary mapping of the eigenvalue
/// sample, in replication order. The generic form behind
/// [`run_simulation`]; exposed so that several statistics can share one
/// sweep.
pub fn run_simulation_map<T, F>(config: &SimConfig, stat: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&EigenSample) -> T + Sync,
{
    config.check_resources()?;
    let body = |rep: usize| {
        let mut rng = SplitMix64::substream(config.seed, rep as u64);
        let sample = sample_eigenvalues(config.m, config.n, &config.cov, &mut rng);
        stat(&sample)
    };
    Ok(in_pool(config.workers, || {
        (0..config.reps).into_par_iter().map(body).collect()
    }))
}

/// Raw per-replication values of a scalar statistic, in replication order.
pub fn simulate_raw<F>(config: &SimConfig, stat: F) -> Result<Vec<f64>>
where
    F: Fn(&EigenSample) -> f64 + Sync,
{
    run_simulation_map(config, stat)
}

/// Sorted empirical distribution of a scalar statistic.
pub fn run_simulation<F>(config: &SimConfig, stat: F) -> Result<EmpiricalDistribution>
where
    F: Fn(&EigenSample) -> f64 + Sync,
{
    Ok(EmpiricalDistribution::from_values(simulate_raw(
        config, stat,
    )?))
}

/// Paired two-population runs: replication `r` draws population 1 from
/// substream `2r` and population 2 from substream `2r + 1` under the first
/// configuration's seed. Replication counts must match; run controls (reps,
/// seed, workers) come from `config1`.
pub fn run_paired_simulation<F>(
    config1: &SimConfig,
    config2: &SimConfig,
    stat: F,
) -> Result<Vec<f64>>
where
    F: Fn(&EigenSample, &EigenSample) -> f64 + Sync,
{
    if config1.reps != config2.reps {
        return Err(Error::Domain(format!(
            "paired runs need equal replication counts, got {} and {}",
            config1.reps, config2.reps
        )));
    }
    config1.check_resources()?;
    config2.check_resources()?;
    let body = |rep: usize| {
        let mut rng1 = SplitMix64::substream(config1.seed, 2 * rep as u64);
        let mut rng2 = SplitMix64::substream(config1.seed, 2 * rep as u64 + 1);
        let s1 = sample_eigenvalues(config1.m, config1.n, &config1.cov, &mut rng1);
        let s2 = sample_eigenvalues(config2.m, config2.n, &config2.cov, &mut rng2);
        stat(&s1, &s2)
    };
    Ok(in_pool(config1.workers, || {
        (0..config1.reps).into_par_iter().map(body).collect()
    }))
}

fn in_pool<R: Send>(workers: usize, job: impl FnOnce() -> R + Send) -> R {
    if workers == 0 {
        job()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("failed to build worker pool");
        pool.install(job)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn identity_cov(m: usize) -> CovarianceSpec {
        CovarianceSpec::new(vec![1.0; m]).unwrap()
    }

    #[test]
    fn sampler_is_deterministic_per_substream() {
        let cov = identity_cov(6);
        let mut a = SplitMix64::substream(99, 3);
        let mut b = SplitMix64::substream(99, 3);
        let sa = sample_eigenvalues(6, 3, &cov, &mut a);
        let sb = sample_eigenvalues(6, 3, &cov, &mut b);
        assert_eq!(sa.ells(), sb.ells());
    }

    #[test]
    fn sampler_output_is_positive_descending() {
        let cov = identity_cov(5);
        for rep in 0..50 {
            let mut rng = SplitMix64::substream(7, rep);
            let s = sample_eigenvalues(5, 3, &cov, &mut rng);
            assert_eq!(s.n(), 3);
            assert!(s.ells().iter().all(|&l| l > 0.0));
            assert!(s.ells().windows(2).all(|w| w[0] > w[1]));
        }
    }

    #[test]
    fn results_identical_across_worker_counts() {
        let cov = identity_cov(4);
        let base = SimConfig::new(4, 2, cov, 2_000, 31415).unwrap();
        let one = simulate_raw(&base.clone().with_workers(1), |s| s.ell(1).unwrap()).unwrap();
        let four = simulate_raw(&base.with_workers(4), |s| s.ell(1).unwrap()).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn single_rep_distribution() {
        let cov = identity_cov(3);
        let cfg = SimConfig::new(3, 1, cov, 1, 5).unwrap();
        let d = run_simulation(&cfg, |s| s.ell(1).unwrap()).unwrap();
        assert_eq!(d.count(), 1);
    }

    #[test]
    fn chi_square_law_for_single_column() {
        // n = 1, Σ = λ I: ℓ₁/λ ~ χ²_m
        let lambda = 2.5;
        let m = 6;
        let cov = CovarianceSpec::new(vec![lambda; m]).unwrap();
        let cfg = SimConfig::new(m, 1, cov, 100_000, 2718).unwrap();
        let d = run_simulation(&cfg, move |s| s.ell(1).unwrap() / lambda).unwrap();
        let chi = crate::scalardist::ChiSquare::new(m as f64).unwrap();
        let ks = d.ks_distance(|x| chi.cdf(x.max(0.0)).unwrap());
        assert!(ks <= 0.01, "KS distance too large: {ks}");
    }

    #[test]
    fn permuting_equal_eigenvalues_changes_nothing() {
        // identity covariance is invariant under permutation by construction;
        // a seeded run must therefore be bit-identical
        let cov1 = identity_cov(4);
        let cov2 = CovarianceSpec::new(vec![1.0, 1.0, 1.0, 1.0]).unwrap();
        let c1 = SimConfig::new(4, 2, cov1, 500, 666).unwrap();
        let c2 = SimConfig::new(4, 2, cov2, 500, 666).unwrap();
        let a = simulate_raw(&c1, |s| s.ell(2).unwrap()).unwrap();
        let b = simulate_raw(&c2, |s| s.ell(2).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn resource_guard_rejects_absurd_runs() {
        let cov = identity_cov(100);
        let cfg = SimConfig::new(100, 50, cov, 500_000_000, 1).unwrap();
        assert!(matches!(
            simulate_raw(&cfg, |s| s.ell(1).unwrap()),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn paired_runs_are_deterministic_and_independent_of_workers() {
        let cov = identity_cov(4);
        let c1 = SimConfig::new(4, 2, cov.clone(), 1_000, 11).unwrap();
        let c2 = SimConfig::new(4, 2, cov, 1_000, 11).unwrap();
        let ratio = |a: &EigenSample, b: &EigenSample| a.ell(1).unwrap() / b.ell(1).unwrap();
        let r1 = run_paired_simulation(&c1.clone().with_workers(1), &c2, ratio).unwrap();
        let r2 = run_paired_simulation(&c1.clone().with_workers(3), &c2, ratio).unwrap();
        assert_eq!(r1, r2);
        // the two populations must not share a stream
        assert!(r1.iter().all(|&r| (r - 1.0).abs() > 1e-12));
    }

    #[test]
    fn largest_eigenvalue_mean_tracks_chi_square_dof() {
        // Case-1-style strong spike: ℓ₁/λ₁ ≈ χ²_n in distribution, so the
        // mean should be close to n
        let cov = CovarianceSpec::spiked(200.0, 3.0, 12).unwrap();
        let lambda1 = cov.lambdas()[0];
        let n = 4;
        let cfg = SimConfig::new(12, n, cov, 40_000, 1234).unwrap();
        let raw = simulate_raw(&cfg, move |s| s.ell(1).unwrap() / lambda1).unwrap();
        let mean = raw.iter().sum::<f64>() / raw.len() as f64;
        let se = (2.0 * n as f64 / raw.len() as f64).sqrt();
        assert!(
            (mean - n as f64).abs() < 4.0 * se + 0.05,
            "mean {mean} too far from {n}"
        );
    }
}
