//! A tour of the evaluation regions of the complete elliptic integral K.

use hyperk::complex::ComplexValue;
use hyperk::elliptic::{agm, k_above_cut, k_principal, k_split_integral, k_star_formula};
use std::f64::consts::PI;

fn main() -> hyperk::Result<()> {
    // K(0) = pi/2, and near the origin the series is exact to full precision.
    let k0 = k_principal(ComplexValue::real(0.0))?;
    println!("K(0)        = {:.16}  (pi/2 = {:.16})", k0.re, PI / 2.0);

    // The arithmetic-geometric mean gives an independent value on (0, 1).
    let k_half = k_principal(ComplexValue::real(0.5))?;
    let via_agm = PI / (2.0 * agm(1.0, (0.5_f64).sqrt()));
    println!("K(1/2)      = {:.16}", k_half.re);
    println!(
        "  agm check = {:.16}   difference {:.1e}",
        via_agm,
        (k_half.re - via_agm).abs()
    );

    // Left of the origin and off the axis both work through transformations.
    println!(
        "K(-1)       = {:.16}",
        k_principal(ComplexValue::real(-1.0))?.re
    );
    println!(
        "K(0.3+0.4i) = {}",
        k_principal(ComplexValue::new(0.3, 0.4))?
    );

    // On the cut [1, infinity) the principal value refuses...
    let err = k_principal(ComplexValue::real(2.0)).unwrap_err();
    println!("\nK(2) -> {err}");

    // ...but the one-sided values exist, and small vertical offsets approach them.
    let x = 2.0;
    let above = k_split_integral(x)?;
    let below = k_above_cut(x)?;
    let eps = 1e-7;
    println!("limit from above  {above}");
    println!(
        "  K(2+i*1e-7)   = {}",
        k_principal(ComplexValue::new(x, eps))?
    );
    println!("limit from below  {below}");
    println!(
        "  K(2-i*1e-7)   = {}",
        k_principal(ComplexValue::new(x, -eps))?
    );

    // Near z = 1 the logarithmic singularity is captured by a smooth remainder:
    // S(z) = K(z) + log(1-z)/pi * K(1-z) stays finite with S(1) = 2 ln 2.
    println!();
    for z in [0.9, 0.99, 0.999999] {
        let s = k_star_formula(ComplexValue::real(z))?;
        println!("S({z})  = {:.15}", s.re);
    }
    println!("2 ln 2      = {:.15}", 2.0 * (2.0_f64).ln());
    Ok(())
}
