//! Evaluate 2F1 by its power series and cross-check against the Euler
//! integral representation where both apply.

use hyperk::complex::ComplexValue;
use hyperk::hyp2f1::{f21_euler_integral, f21_series, HypParams};

fn main() -> hyperk::Result<()> {
    let params = HypParams::real(0.5, 0.5, 1.0)?;

    println!("2F1(1/2, 1/2; 1; z) along the real axis:");
    for z in [-0.5, 0.0, 0.25, 0.5, 0.75] {
        let r = f21_series(&params, ComplexValue::real(z), 1e-13)?;
        println!(
            "  z = {z:5}   value = {:.15}   ({} terms, tail bound {:.1e})",
            r.value.re, r.terms_used, r.truncation_bound
        );
    }

    // The same function at a complex argument, series against quadrature.
    let z = ComplexValue::new(0.3, 0.4);
    let series = f21_series(&params, z, 1e-13)?.value;
    let integral = f21_euler_integral(&params, z)?;
    println!("\nat z = {z}:");
    println!("  series   {series}");
    println!("  integral {integral}");
    println!("  difference {:.2e}", (series - integral).abs());

    // Parameters with a negative upper entry terminate the series early.
    let poly = HypParams::real(-3.0, 2.0, 1.5)?;
    let r = f21_series(&poly, ComplexValue::real(0.7), 1e-13)?;
    println!(
        "\n2F1(-3, 2; 3/2; 0.7) is a cubic: value = {:.15} after {} terms",
        r.value.re, r.terms_used
    );
    Ok(())
}
