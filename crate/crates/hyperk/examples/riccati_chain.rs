//! The logarithmic derivative q = K'(z)/K(z) is not itself hypergeometric,
//! but it satisfies a Riccati equation whose coefficients are polynomial
//! once the reciprocal pair w = 1/(z - z^2) is carried along.  That makes
//! (w1, w2, q_re, q_im) a Noetherian chain which can be integrated like any
//! other and checked against direct evaluation.

use hyperk::complex::ComplexValue;
use hyperk::elliptic::{k_derivative, k_principal};
use hyperk::pfaffian::dsl::parse_riccati_file;
use hyperk::pfaffian::{integrate_chain, riccati_system, verify_chain};

const RICCATI_FILE: &str = include_str!("chains/kquotient.riccati");

fn main() -> hyperk::Result<()> {
    let file = parse_riccati_file(RICCATI_FILE)?;
    let chain = riccati_system(
        &file.coeffs,
        file.prefix.as_ref(),
        file.base_point,
        file.q_init,
    )?;
    print!(
        "chain built from the riccati file verifies as {}, functions:",
        verify_chain(&chain).kind
    );
    for f in &chain.functions {
        print!(" {}", f.name);
    }
    println!();

    // Walk the real segment 0.1 -> 0.8 and compare the chain's q with
    // K'(x)/K(x) computed from scratch.
    println!("\n     x    q from the chain     K'(x)/K(x)        difference");
    let mut worst = 0.0_f64;
    for i in 0..=7 {
        let x = 0.1 + 0.7 * (i as f64) / 7.0;
        let values = integrate_chain(&chain, &[vec![0.1, 0.0], vec![x, 0.0]])?;
        let z = ComplexValue::real(x);
        let direct = k_derivative(z)?.re / k_principal(z)?.re;
        let diff = (values[2] - direct).abs();
        worst = worst.max(diff);
        println!("  {x:4.1}  {:.15}  {:.15}  {diff:.2e}", values[2], direct);
    }
    println!("\nlargest deviation {worst:.2e}");

    // The same machinery off the real axis: q there is genuinely complex.
    let target = vec![0.5, 0.3];
    let values = integrate_chain(&chain, &[vec![0.1, 0.0], vec![0.5, 0.0], target.clone()])?;
    let z = ComplexValue::new(target[0], target[1]);
    let q = k_derivative(z)? / k_principal(z)?;
    println!("\nat z = {z}:");
    println!("  chain  {} + {} i", values[2], values[3]);
    println!("  direct {} + {} i", q.re, q.im);
    Ok(())
}
