//! Count rational points of bounded height on the graph of a function,
//! with every accepted point certified by exact rational enclosures.

use hyperk::counting::curves::{EllipticKCurve, ExpCurve, ShiftCurve};
use hyperk::counting::{count_report, enumerate_rationals, fit_growth, DEFAULT_CERTIFY_TOL};
use num_rational::BigRational;

fn main() -> hyperk::Result<()> {
    // How dense are the candidates?  Heights count both numerator and
    // denominator, so the pool grows quadratically.
    for h in [4, 16, 64] {
        let pool = enumerate_rationals(0.0, 1.0, h)?;
        println!("rationals of height <= {h:3} in [0, 1]: {}", pool.len());
    }

    // The graph of exp meets Q^2 only at (0, 1): every candidate except 0
    // is rejected by a certified enclosure, never by a float guess.
    let ladder = [16, 64, 256, 1024, 4096];
    let (counts, report) = count_report(&ExpCurve, 0.0, 1.0, &ladder, DEFAULT_CERTIFY_TOL, 4)?;
    println!("\nexp on [0, 1]: counts {counts:?} over heights {ladder:?}");
    println!(
        "  fitted growth: alpha_power = {:.3}, alpha_log = {:.3}",
        report.alpha_power, report.alpha_log
    );

    // A rational curve at the other extreme: the full quadratic pool lies
    // on the graph, and the power-law fit sees alpha near 2.
    let line = ShiftCurve::new(BigRational::new(1.into(), 3.into()));
    let small = [16, 64, 256, 1024];
    let (counts, report) = count_report(&line, 0.0, 1.0, &small, DEFAULT_CERTIFY_TOL, 4)?;
    println!("\nx + 1/3 on [0, 1]: counts {counts:?} over heights {small:?}");
    println!(
        "  alpha_power = {:.3}  (residual {:.3})",
        report.alpha_power, report.residuals.0
    );

    // K over a subinterval of (0, 1): certification finds no points at all,
    // and the report degrades to flat growth instead of failing.
    let (counts, report) =
        count_report(&EllipticKCurve, 0.05, 0.75, &small, DEFAULT_CERTIFY_TOL, 4)?;
    println!(
        "\nK on [0.05, 0.75]: counts {counts:?}, alpha_power = {}",
        report.alpha_power
    );

    // fit_growth on synthetic data recovers a planted exponent exactly.
    let heights = [16, 64, 256, 1024];
    let synthetic: Vec<f64> = heights.iter().map(|&h| (h as f64).powf(1.5)).collect();
    let fit = fit_growth(&heights, &synthetic)?;
    println!(
        "\nplanted H^1.5 data: fitted alpha_power = {:.12}",
        fit.alpha_power
    );
    Ok(())
}
