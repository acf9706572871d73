//! Eigenvalues of small dense symmetric matrices by cyclic Jacobi rotations.
//!
//! The Gram matrices produced by the sampler are at most 15×15, where Jacobi
//! is simple, dependency-free and bit-stable. Rotations are applied while
//! `|a_pq| > tol · sqrt(a_pp · a_qq)`; for positive definite input this
//! relative criterion preserves the accuracy of eigenvalues many orders of
//! magnitude below the matrix norm (spiked covariances produce exactly such
//! spectra, with eigenvalue ratios down to 1e-12 and below).

/// Relative off-diagonal threshold for a rotation to be worth applying.
const REL_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 50;

/// Eigenvalues of the symmetric matrix `a` (row-major, `n × n`), sorted
/// descending. `a` is consumed as scratch space.
pub fn symmetric_eigenvalues(mut a: Vec<f64>, n: usize) -> Vec<f64> {
    debug_assert_eq!(a.len(), n * n);
    if n == 1 {
        return vec![a[0]];
    }
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let scale = (app.abs() * aqq.abs()).sqrt();
                if apq.abs() <= REL_TOL * scale {
                    continue;
                }
                rotated = true;
                // classical Jacobi rotation annihilating a_pq
                let theta = 0.5 * (aqq - app) / apq;
                let t = if theta.abs() > 1e150 {
                    // avoid theta^2 overflow; limit of the formula below
                    0.5 / theta
                } else {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (theta.abs() + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    let new_rp = arp - s * (arq + tau * arp);
                    let new_rq = arq + s * (arp - tau * arq);
                    a[r * n + p] = new_rp;
                    a[p * n + r] = new_rp;
                    a[r * n + q] = new_rq;
                    a[q * n + r] = new_rq;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eig.sort_unstable_by(|x, y| y.total_cmp(x));
    eig
}
