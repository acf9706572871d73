//! Distributions of eigenvalues of singular Wishart matrices.
//!
//! A singular Wishart matrix is `W = X Xᵀ` for an `m × n` Gaussian matrix
//! `X` with `m > n`; its `n` nonzero eigenvalues carry all the spectral
//! information. This crate computes:
//!
//! - zonal polynomials and truncated hypergeometric functions of matrix
//!   arguments ([`combinatorics`], [`hypergeom`]);
//! - the exact largest-eigenvalue law, the exact two-population
//!   largest-eigenvalue ratio density, a Laplace-approximated joint
//!   eigenvalue density, and chi-square / F approximations under spiked
//!   covariance ([`eigdist`], [`scalardist`]);
//! - a seedable, worker-count-independent Monte Carlo engine used to
//!   validate all of the above ([`montecarlo`]).

pub mod combinatorics;
pub mod eigdist;
pub mod error;
pub mod hypergeom;
pub mod montecarlo;
pub mod numeric;
pub mod scalardist;
pub mod special;

pub use combinatorics::{
    enumerate_partitions, log_multivariate_gamma, pochhammer_partition, zonal_eval,
    zonal_expansion, zonal_unit, Partition, ZonalExpansion,
};
pub use eigdist::{
    chisq_approx_cdf, chisq_approx_quantile, equality_test, laplace_joint_density,
    largest_eig_cdf_exact, largest_eig_pdf_exact, ratio_density_exact, sample_dispersion_rk,
    spike_dispersion_rho, CovarianceSpec, EigenSample, EqualityTestResult, LargestEigSeries,
    RatioDensity, RatioVariant, SpikedCovParams,
};
pub use error::{Error, Result};
pub use hypergeom::{hyp_double, hyp_single, HypEval, HypergeomParams, TruncationPolicy};
pub use montecarlo::{
    run_paired_simulation, run_simulation, sample_eigenvalues, EmpiricalDistribution, SimConfig,
};
pub use scalardist::{ChiSquare, FDist};
