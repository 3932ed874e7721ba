//! Loops around the singular point z = 1 realize the monodromy of the
//! hypergeometric equation behind K: once around multiplies the solution
//! vector (K(z), K(1-z)) by [[1, -2i], [0, 1]], twice by its square.

use hyperk::complex::ComplexValue;
use hyperk::elliptic::continue_along_path;
use hyperk::path::PathSpec;

fn c(re: f64, im: f64) -> ComplexValue {
    ComplexValue::new(re, im)
}

fn square_loop() -> Vec<ComplexValue> {
    vec![
        c(0.5, 0.5),
        c(0.5, -0.5),
        c(1.5, -0.5),
        c(1.5, 0.5),
        c(0.5, 0.5),
    ]
}

fn show(label: &str, m: &hyperk::MonodromyMatrix) {
    println!("{label}");
    for row in &m.entries {
        println!(
            "  [{:>18}  {:>18}]",
            format!("{}", row[0]),
            format!("{}", row[1])
        );
    }
}

fn main() -> hyperk::Result<()> {
    let once = PathSpec::new(square_loop(), 0.05)?;
    let state = continue_along_path(&once)?;
    show(
        "one counterclockwise loop around 1:",
        &state.accumulated_monodromy,
    );

    // The matrix acts on the starting values.
    let z0 = c(0.5, 0.5);
    let u0 = hyperk::elliptic::k_principal(z0)?;
    let v0 = hyperk::elliptic::k_principal(c(1.0, 0.0) - z0)?;
    let predicted = state.accumulated_monodromy.apply([u0, v0]);
    println!("continued K  {}", state.base_values[0]);
    println!("matrix * K0  {}\n", predicted[0]);

    let mut twice = square_loop();
    twice.extend_from_slice(&square_loop()[1..]);
    let state = continue_along_path(&PathSpec::new(twice, 0.05)?)?;
    show("the same loop twice:", &state.accumulated_monodromy);

    let mut reversed = square_loop();
    reversed.reverse();
    let state = continue_along_path(&PathSpec::new(reversed, 0.05)?)?;
    show("\nclockwise, the inverse:", &state.accumulated_monodromy);
    Ok(())
}
