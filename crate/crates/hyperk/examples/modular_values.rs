//! The modular lambda function and the j invariant, evaluated by inverting
//! the K-ratio map tau(z) = i K(1-z)/K(z) with a certified residual.

use hyperk::complex::ComplexValue;
use hyperk::modular::{j_from_tau, lambda_from_tau, tau_from_z};

fn c(re: f64, im: f64) -> ComplexValue {
    ComplexValue::new(re, im)
}

fn main() -> hyperk::Result<()> {
    // Classical special values.
    let at_i = lambda_from_tau(c(0.0, 1.0))?;
    println!(
        "lambda(i)    = {}   (exactly 1/2; residual {:.1e})",
        at_i.lambda, at_i.residual
    );

    let at_2i = lambda_from_tau(c(0.0, 2.0))?;
    let exact = ((2.0_f64).sqrt() - 1.0).powi(4); // (sqrt2 - 1)^4 = 17 - 12 sqrt2
    println!("lambda(2i)   = {}", at_2i.lambda);
    println!("  17-12*sqrt2 = {exact:.16}");

    let (j, _) = j_from_tau(c(0.0, 1.0))?;
    println!("j(i)         = {j}   (exactly 1728)");

    // Round trip: z -> tau -> lambda recovers z wherever both maps apply.
    println!("\nround trips lambda(tau(z)) vs z:");
    for z in [c(0.5, 0.0), c(0.3, 0.2), c(0.8, -0.1), c(0.05, 0.0)] {
        let tau = tau_from_z(z)?;
        let back = lambda_from_tau(tau)?;
        println!(
            "  z = {z:12}  tau = {tau:22}  back with error {:.1e}",
            (back.lambda - z).abs()
        );
    }

    // j is invariant under the six-fold anharmonic action on lambda.
    let z = c(0.3, 0.2);
    let one = c(1.0, 0.0);
    println!("\nj across the lambda orbit of {z}:");
    for w in [
        z,
        one - z,
        z.recip(),
        (one - z).recip(),
        one - z.recip(),
        z / (z - one),
    ] {
        let tau = tau_from_z(w)?;
        let (jw, _) = j_from_tau(tau)?;
        println!("  lambda = {w:24}  j = {jw}");
    }
    Ok(())
}
