// scratch probe #2: ratio-series geometry and population direction (removed before release)
use wishart_eigen::eigdist::{CovarianceSpec, LargestEigSeries, RatioDensity, RatioVariant};
use wishart_eigen::hypergeom::TruncationPolicy;
use wishart_eigen::numeric::integrate;
use wishart_eigen::scalardist::FDist;

fn direct_ratio_density(
    num: &LargestEigSeries,   // population in the numerator
    den: &LargestEigSeries,   // population in the denominator
    q: f64,
    hi: f64,
) -> f64 {
    // density of N/D at q: ∫ f_N(q r) f_D(r) r dr
    integrate(
        &|r: f64| {
            if r <= 0.0 {
                return 0.0;
            }
            num.pdf_at(q * r).map(|v| v.value).unwrap_or(0.0)
                * den.pdf_at(r).map(|v| v.value).unwrap_or(0.0)
                * r
        },
        1e-8,
        hi,
        1e-11,
    )
}

fn main() {
    let trunc = TruncationPolicy::new(60, 1e-13).unwrap();

    // (a) identity covariance, m = 2: how far does K = 60 get?
    let cov2 = CovarianceSpec::new(vec![1.0, 1.0]).unwrap();
    let f22 = FDist::new(2.0, 2.0).unwrap();
    let d = RatioDensity::new(1, 1, &cov2, &cov2, &trunc, RatioVariant::Rederived).unwrap();
    println!("m=2 identity vs F(2,2):");
    for &q in &[0.3, 1.0, 2.0] {
        let got = d.density_at(q).unwrap();
        let want = f22.pdf(q).unwrap();
        println!(
            "  q={q}: series={:.8} F={:.8} rel={:+.2e} deg={} tail={:.1e}",
            got.value,
            want,
            got.value / want - 1.0,
            got.degree_used,
            got.tail_estimate
        );
    }

    // (b) spiked m=3, asymmetric n1=1, n2=2: which direction does the series compute?
    let cov_a = CovarianceSpec::new(vec![100.0, 5.0, 1.0]).unwrap(); // population 1
    let cov_b = CovarianceSpec::new(vec![80.0, 4.0, 0.5]).unwrap(); // population 2
    let s1 = LargestEigSeries::new(1, &cov_a, &trunc).unwrap();
    let s2 = LargestEigSeries::new(2, &cov_b, &trunc).unwrap();
    let d = RatioDensity::new(1, 2, &cov_a, &cov_b, &trunc, RatioVariant::Rederived).unwrap();
    println!("spiked m=3, n1=1, n2=2:");
    for &q in &[0.4, 1.0, 2.5] {
        let got = d.density_at(q).unwrap();
        // direction A: density of l1(pop1)/l1(pop2)
        let dir_a = direct_ratio_density(&s1, &s2, q, 4000.0);
        // direction B: density of l1(pop2)/l1(pop1)
        let dir_b = direct_ratio_density(&s2, &s1, q, 4000.0);
        println!(
            "  q={q}: series={:.6e} pop1/pop2={:.6e} pop2/pop1={:.6e} deg={} tail={:.1e}",
            got.value, dir_a, dir_b, got.degree_used, got.tail_estimate
        );
    }
}
