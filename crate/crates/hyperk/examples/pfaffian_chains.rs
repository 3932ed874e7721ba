//! Chains as data: parse a chain file, verify its kind symbolically,
//! integrate it, grow it with closure operations, and pull it back along
//! a polynomial map.

use hyperk::pfaffian::dsl::{parse_chain, serialize_chain};
use hyperk::pfaffian::poly::PolynomialExpr;
use hyperk::pfaffian::{
    closure_product, closure_reciprocal, closure_sum, first_order_linear_chain, integrate_chain,
    pull_back, verify_chain,
};
use num_rational::BigRational;
use num_traits::One;

const TAN_CHAIN: &str = include_str!("chains/tan.chain");

fn main() -> hyperk::Result<()> {
    let chain = parse_chain(TAN_CHAIN)?;
    let report = verify_chain(&chain);
    println!("tan.chain verifies as: {}", report.kind);

    let finals = integrate_chain(&chain, &[vec![0.0], vec![1.0]])?;
    println!("integrated 0 -> 1:");
    for (f, v) in chain.functions.iter().zip(&finals) {
        println!("  {:4} {v:.12}", f.name);
    }
    println!(
        "  (tan 1 = {:.12}, sin 1 = {:.12})\n",
        1.0_f64.tan(),
        1.0_f64.sin()
    );

    // Closure operations append derived functions with exact tables.
    let with_sum = closure_sum(&chain, 2, 3)?; // cos + sin
    let with_prod = closure_product(&with_sum, 0, 1)?; // tan * sec
    let with_recip = closure_reciprocal(&with_prod, 1)?; // 1 / sec
    println!(
        "after sum, product, reciprocal the chain is still {}",
        verify_chain(&with_recip).kind
    );
    let finals = integrate_chain(&with_recip, &[vec![0.0], vec![0.5]])?;
    let n = finals.len();
    println!(
        "  cos+sin at 0.5  {:.12}  (direct {:.12})",
        finals[n - 3],
        0.5_f64.cos() + 0.5_f64.sin()
    );
    println!(
        "  tan*sec at 0.5  {:.12}  (direct {:.12})",
        finals[n - 2],
        0.5_f64.tan() / 0.5_f64.cos()
    );
    println!(
        "  1/sec   at 0.5  {:.12}  (direct {:.12})\n",
        finals[n - 1],
        0.5_f64.cos()
    );

    // Pull the chain back along psi(x) = x^2, given as a one-function chain.
    let map = parse_chain("var x\nfun sq : dx = 2*x\nbase 0\ninit 0\nkind pfaffian\n")?;
    let pulled = pull_back(&chain, &map, &[0])?;
    println!("tan.chain pulled back along x^2:");
    print!("{}", serialize_chain(&pulled));
    let finals = integrate_chain(&pulled, &[vec![0.0], vec![0.9]])?;
    println!("  tan(0.81) via the pulled chain  {:.12}", finals[1]);
    println!(
        "  directly                        {:.12}\n",
        (0.81_f64).tan()
    );

    // A generated chain: q = u/v bookkeeping turns f' = f over z = x + iy
    // into a pfaffian chain whose tail components recover exp.
    let one = PolynomialExpr::constant(BigRational::one());
    let zero = PolynomialExpr::zero();
    let exp_chain = first_order_linear_chain(
        &one,
        &zero,
        None,
        [0.0, std::f64::consts::FRAC_PI_2],
        (0.0, 1.0),
        None,
    )?;
    println!(
        "generated chain for f' = f ({} functions, {})",
        exp_chain.functions.len(),
        verify_chain(&exp_chain).kind
    );
    let target = [0.3, 1.1];
    let finals = integrate_chain(
        &exp_chain,
        &[vec![0.0, std::f64::consts::FRAC_PI_2], target.to_vec()],
    )?;
    let expected = hyperk::complex::ComplexValue::new(target[0], target[1]).exp();
    println!(
        "  exp({}+{}i) from the chain  {:.12} + {:.12} i",
        target[0], target[1], finals[3], finals[2]
    );
    println!(
        "  directly                    {:.12} + {:.12} i",
        expected.re, expected.im
    );
    Ok(())
}
