//! Double-exponential (tanh-sinh) quadrature on (0, 1).
//!
//! The change of variable t = (1 + tanh((pi/2) sinh u))/2 pushes the
//! endpoints to infinity, so integrable endpoint singularities like
//! t^(b-1)(1-t)^(c-b-1) become harmless.  Integrands are supplied as the
//! complex *logarithm* of the integrand value, in terms of stable endpoint
//! data (t, 1-t, ln t, ln(1-t)), so nothing overflows even when t is
//! within 1e-300 of an endpoint.

use crate::complex::ComplexValue;
use crate::error::{Error, Result};

/// One quadrature node, with both endpoint distances in plain and log form.
#[derive(Clone, Copy, Debug)]
pub struct Sample {
    pub t: f64,
    pub one_minus_t: f64,
    pub ln_t: f64,
    pub ln_one_minus_t: f64,
}

/// ln cosh x without overflow for large |x|.
fn ln_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

/// ln(1/(1+e^{-2s})), i.e. ln of the logistic sigmoid of 2s.
fn ln_sigmoid_2(s: f64) -> f64 {
    if s >= 0.0 {
        -(-2.0 * s).exp().ln_1p()
    } else {
        2.0 * s - (2.0 * s).exp().ln_1p()
    }
}

fn node(u: f64) -> (Sample, f64) {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let s = half_pi * u.sinh();
    // t = sigmoid(2s), 1 - t = sigmoid(-2s), computed on the side that is
    // numerically tiny rather than by cancellation.
    let t = 1.0 / (1.0 + (-2.0 * s).exp());
    let one_minus_t = 1.0 / (1.0 + (2.0 * s).exp());
    let ln_t = ln_sigmoid_2(s);
    let ln_one_minus_t = ln_sigmoid_2(-s);
    // dt/du = (pi/4) cosh u / cosh^2 s, carried as a logarithm.
    let ln_weight = (std::f64::consts::FRAC_PI_4).ln() + ln_cosh(u) - 2.0 * ln_cosh(s);
    (
        Sample {
            t,
            one_minus_t,
            ln_t,
            ln_one_minus_t,
        },
        ln_weight,
    )
}

/// Past this |u| every weight underflows to zero against any integrand the
/// crate produces (ln weight < -1400).
const U_MAX: f64 = 6.8;
const MAX_LEVEL: u32 = 12;

/// Integrate exp(ln_f(sample)) over t in (0, 1).
///
/// `ln_f` returns the complex log of the integrand; a real part of -inf
/// marks a zero integrand value.  Returns (integral, error estimate) where
/// the estimate is the difference between the last two refinement levels.
/// Fails with `QuadratureError` when MAX_LEVEL refinements cannot bring the
/// estimate below `tol * max(1, |integral|)`.
pub fn tanh_sinh<F>(mut ln_f: F, tol: f64) -> Result<(ComplexValue, f64)>
where
    F: FnMut(&Sample) -> ComplexValue,
{
    let mut eval = |u: f64| -> ComplexValue {
        let (sample, ln_w) = node(u);
        let lf = ln_f(&sample);
        let magnitude = lf.re + ln_w;
        if magnitude == f64::NEG_INFINITY {
            return crate::complex::ZERO;
        }
        ComplexValue::new(magnitude, lf.im).exp()
    };

    let mut h = 1.0f64;
    // Level 0: trapezoid with spacing 1.
    let mut sum = eval(0.0);
    let mut k = 1;
    while (k as f64) * h <= U_MAX {
        let u = k as f64 * h;
        sum = sum + eval(u) + eval(-u);
        k += 1;
    }
    let mut estimate = f64::INFINITY;
    let mut value = sum.scale(h);

    for _level in 1..=MAX_LEVEL {
        h *= 0.5;
        // New nodes are the odd multiples of the refined h.
        let mut k = 1;
        while (k as f64) * h <= U_MAX {
            let u = k as f64 * h;
            sum = sum + eval(u) + eval(-u);
            k += 2;
        }
        let new_value = sum.scale(h);
        estimate = (new_value - value).abs();
        value = new_value;
        if estimate <= tol * value.abs().max(1.0) {
            return Ok((value, estimate));
        }
    }
    Err(Error::Quadrature(format!(
        "tanh-sinh failed to converge: estimate {estimate:.3e} exceeds tolerance {tol:.3e}"
    )))
}

/// Integrate a real integrand given as its natural log (None encodes a zero
/// value; the integrand must be nonnegative).
pub fn tanh_sinh_real<F>(mut ln_f: F, tol: f64) -> Result<(f64, f64)>
where
    F: FnMut(&Sample) -> f64,
{
    let (v, est) = tanh_sinh(|s| ComplexValue::new(ln_f(s), 0.0), tol)?;
    Ok((v.re, est))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn constant_integrand() {
        let (v, _) = tanh_sinh_real(|_| 0.0, 1e-12).unwrap();
        assert!((v - 1.0).abs() < 1e-12, "got {v}");
    }

    #[test]
    fn inverse_sqrt_endpoint() {
        // integral of t^(-1/2) over (0,1) = 2.
        let (v, _) = tanh_sinh_real(|s| -0.5 * s.ln_t, 1e-12).unwrap();
        assert!((v - 2.0).abs() < 1e-11, "got {v}");
    }

    #[test]
    fn beta_half_half() {
        // integral t^(-1/2) (1-t)^(-1/2) = Beta(1/2,1/2) = pi.
        let (v, _) = tanh_sinh_real(|s| -0.5 * s.ln_t - 0.5 * s.ln_one_minus_t, 1e-12).unwrap();
        assert!((v - PI).abs() < 1e-11, "got {v}");
    }

    #[test]
    fn beta_asymmetric_against_reflection_oracle() {
        // integral t^(a-1) (1-t)^(b-1) with a = 0.3, b = 0.7 equals
        // Gamma(.3)Gamma(.7) = pi / sin(.3 pi), via the reflection formula
        // (independent of our gamma implementation).
        let (v, _) = tanh_sinh_real(|s| -0.7 * s.ln_t - 0.3 * s.ln_one_minus_t, 1e-12).unwrap();
        let oracle = PI / (0.3 * PI).sin();
        assert!(
            (v - oracle).abs() < 1e-10 * oracle,
            "got {v}, want {oracle}"
        );
    }

    #[test]
    fn complex_power_closed_form() {
        // integral (1 - z t)^(-a) dt = (1 - (1-z)^(1-a)) / (z (1-a))
        // for the principal branch, z off [1, infinity).
        let z = ComplexValue::new(0.4, 0.7);
        let a = ComplexValue::new(1.5, -0.3);
        let one = crate::complex::ONE;
        let (v, _) = tanh_sinh(
            |s| {
                // 1 - z t computed as (1-z) + z(1-t) for endpoint accuracy.
                let w = (one - z) + z * s.one_minus_t;
                -a * w.ln()
            },
            1e-13,
        )
        .unwrap();
        let oracle = (one - (one - z).powc(one - a)) / (z * (one - a));
        assert!((v - oracle).abs() < 1e-11, "got {v}, want {oracle}");
    }

    #[test]
    fn error_estimate_is_reported_small_on_smooth_integrand() {
        // integral of 2t = 1.
        let (v, est) = tanh_sinh_real(|s| std::f64::consts::LN_2 + s.ln_t, 1e-12).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        assert!(est < 1e-10);
    }
}
