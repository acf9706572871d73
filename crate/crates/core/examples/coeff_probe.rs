// scratch probe for largest-eigenvalue pdf series coefficients (removed before release)
use wishart_eigen::eigdist::{CovarianceSpec, LargestEigSeries};
use wishart_eigen::hypergeom::TruncationPolicy;
use wishart_eigen::scalardist::ChiSquare;

fn main() {
    let m = 3;
    let cov = CovarianceSpec::new(vec![1.0; m]).unwrap();
    let trunc = TruncationPolicy::new(60, 0.0).unwrap();
    let s = LargestEigSeries::new(1, &cov, &trunc).unwrap();
    // L'évaluation of the pdf at a few x to confirm; then the implied a_k via
    // pdf series reconstruction is internal, so instead check how the pdf-at-x
    // series degree usage varies with x.
    let chi = ChiSquare::new(m as f64).unwrap();
    for &x in &[1.0f64, 5.0, 10.0, 20.0, 40.0] {
        let v = s.pdf_at(x).unwrap();
        let want = chi.pdf(x).unwrap();
        println!(
            "x={x:5}: pdf={:.6e} chi={:.6e} rel={:+.2e} degrees={} tail={:.1e}",
            v.value,
            want,
            v.value / want - 1.0,
            v.degree_used,
            v.tail_estimate
        );
    }
}
