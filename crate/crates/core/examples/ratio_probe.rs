// scratch probe for the ratio density (removed before release)
use wishart_eigen::eigdist::{CovarianceSpec, LargestEigSeries, RatioDensity, RatioVariant};
use wishart_eigen::hypergeom::TruncationPolicy;
use wishart_eigen::numeric::integrate;

fn main() {
    let m = 3;
    let cov = CovarianceSpec::new(vec![1.0; m]).unwrap();
    let trunc = TruncationPolicy::new(60, 1e-13).unwrap();

    // direct oracle: f(q) = ∫ pdf1(qr) pdf2(r) r dr with the exact pdfs
    let s1 = LargestEigSeries::new(1, &cov, &trunc).unwrap();
    let s2 = LargestEigSeries::new(1, &cov, &trunc).unwrap();
    let q = 0.3;
    let direct = integrate(
        &|r: f64| {
            if r <= 0.0 {
                return 0.0;
            }
            s1.pdf_at(q * r).map(|v| v.value).unwrap_or(0.0)
                * s2.pdf_at(r).map(|v| v.value).unwrap_or(0.0)
                * r
        },
        1e-6,
        80.0,
        1e-10,
    );
    println!("direct integral at q={q}: {direct}");

    for max_k in [5u32, 10, 20, 30, 40, 50, 60] {
        let t = TruncationPolicy::new(max_k, 0.0).unwrap();
        let d = RatioDensity::new(1, 1, &cov, &cov, &t, RatioVariant::Rederived).unwrap();
        let v = d.density_at(q).unwrap();
        println!(
            "K={max_k:2}  value={:+.10}  degree_used={}  tail={:.3e}",
            v.value, v.degree_used, v.tail_estimate
        );
    }
}
