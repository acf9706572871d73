// scratch probe #3: asymmetric populations, closed-form chi-square oracles (removed before release)
use wishart_eigen::eigdist::{CovarianceSpec, RatioDensity, RatioVariant};
use wishart_eigen::hypergeom::TruncationPolicy;

fn main() {
    let trunc = TruncationPolicy::new(60, 1e-13).unwrap();
    // m=2, n=1, proportional-to-identity covariances: closed forms available.
    // pop1 ~ 2 χ²₂ (T1 = 1), pop2 ~ 0.5 χ²₂ (T2 = 4)
    let cov1 = CovarianceSpec::new(vec![2.0, 2.0]).unwrap();
    let cov2 = CovarianceSpec::new(vec![0.5, 0.5]).unwrap();
    let d = RatioDensity::new(1, 1, &cov1, &cov2, &trunc, RatioVariant::Rederived).unwrap();
    println!("q, series, f_pop2/pop1, f_pop1/pop2, deg, tail");
    for &q in &[0.25, 0.5, 1.0, 2.0, 4.0, 8.0] {
        let got = d.density_at(q).unwrap();
        // density of Y/X with Y = pop2, X = pop1: 0.25/(q+0.25)^2
        let f_yx = 0.25 / (q + 0.25_f64).powi(2);
        // density of X/Y: 4/(q+4)^2
        let f_xy = 4.0 / (q + 4.0_f64).powi(2);
        println!(
            "{q:5}: {:>12.8} {:>12.8} {:>12.8} {:>3} {:.1e}",
            got.value, f_yx, f_xy, got.degree_used, got.tail_estimate
        );
    }
}
