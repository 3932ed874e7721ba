//! The Gauss hypergeometric function 2F1(a, b; c; z).
//!
//! Two independent representations: the defining power series (used on
//! |z| <= 0.8, where a geometric tail bound is cheap and sound) and the
//! Euler integral (used off the series disk, and as a cross-check).  The
//! two agree to 1e-9 on overlapping domains; the test suite enforces that.

use crate::complex::{ComplexValue, ONE};
use crate::error::{Error, Result};
use crate::gamma::gamma;
use crate::quadrature::tanh_sinh;

/// Parameter triple with the single structural invariant: c is not zero or
/// a negative integer (otherwise every series denominator eventually dies).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HypParams {
    pub a: ComplexValue,
    pub b: ComplexValue,
    pub c: ComplexValue,
}

fn is_nonpositive_integer(z: ComplexValue) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

impl HypParams {
    pub fn new(a: ComplexValue, b: ComplexValue, c: ComplexValue) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b), ("c", c)] {
            if !v.is_finite() {
                return Err(Error::Param(format!("parameter {name} is not finite")));
            }
        }
        if is_nonpositive_integer(c) {
            return Err(Error::Param(format!(
                "c = {c} is zero or a negative integer"
            )));
        }
        Ok(Self { a, b, c })
    }

    pub fn real(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::new(
            ComplexValue::real(a),
            ComplexValue::real(b),
            ComplexValue::real(c),
        )
    }

    /// Degree of the terminating series when a or b is a non-positive
    /// integer (the smaller magnitude wins), else None.
    fn polynomial_degree(&self) -> Option<usize> {
        let mut deg: Option<usize> = None;
        for v in [self.a, self.b] {
            if is_nonpositive_integer(v) && v.re >= -(u32::MAX as f64) {
                let m = (-v.re) as usize;
                deg = Some(deg.map_or(m, |d| d.min(m)));
            }
        }
        deg
    }
}

/// Rising factorial (x)_n = x (x+1) ... (x+n-1), with (x)_0 = 1.
pub fn pochhammer(x: ComplexValue, n: u32) -> ComplexValue {
    let mut acc = ONE;
    for k in 0..n {
        acc = acc * (x + k as f64);
    }
    acc
}

/// Result of a series evaluation: the value, how many terms were summed,
/// and a bound on the discarded tail (exactly 0.0 for terminating series).
#[derive(Clone, Copy, Debug)]
pub struct SeriesResult {
    pub value: ComplexValue,
    pub terms_used: usize,
    pub truncation_bound: f64,
}

const TERM_CAP: usize = 100_000;

/// Power series sum of 2F1.  Intended domain |z| <= 0.8; accepts any |z| < 1
/// (terminating cases accept every z and report truncation_bound = 0).
///
/// The tail is bounded geometrically: once five consecutive term ratios sit
/// below 1, the remaining terms are dominated by a geometric series with
/// ratio just above the largest recent one.
pub fn f21_series(params: &HypParams, z: ComplexValue, tol: f64) -> Result<SeriesResult> {
    if !z.is_finite() {
        return Err(Error::Domain("z is not finite".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::Param("tol must be positive".into()));
    }
    let (a, b, c) = (params.a, params.b, params.c);

    if let Some(m) = params.polynomial_degree() {
        let mut term = ONE;
        let mut sum = ONE;
        for n in 0..m {
            let nf = n as f64;
            term = term * (a + nf) * (b + nf) * z / ((c + nf) * (nf + 1.0));
            sum = sum + term;
        }
        return Ok(SeriesResult {
            value: sum,
            terms_used: m + 1,
            truncation_bound: 0.0,
        });
    }

    if z.abs() >= 1.0 {
        return Err(Error::Domain(format!(
            "series diverges for |z| = {:.3} >= 1",
            z.abs()
        )));
    }

    let mut term = ONE;
    let mut sum = ONE;
    let mut recent: [f64; 5] = [f64::INFINITY; 5];
    for n in 0..TERM_CAP {
        let nf = n as f64;
        let next = term * (a + nf) * (b + nf) * z / ((c + nf) * (nf + 1.0));
        let ratio = if term.abs() > 0.0 {
            next.abs() / term.abs()
        } else {
            0.0
        };
        recent[n % 5] = ratio;
        term = next;
        sum = sum + term;
        let worst = recent.iter().cloned().fold(0.0f64, f64::max);
        if n >= 5 && worst < 0.97 {
            // Margin: halfway between the observed worst ratio and 1, then a
            // factor 2 on the whole bound.
            let r = 0.5 * (1.0 + worst);
            let bound = 2.0 * term.abs() * r / (1.0 - r);
            if bound <= tol * sum.abs().max(1.0) {
                return Ok(SeriesResult {
                    value: sum,
                    terms_used: n + 2,
                    truncation_bound: bound,
                });
            }
        }
    }
    Err(Error::Convergence(format!(
        "series did not converge within {TERM_CAP} terms at |z| = {:.6}",
        z.abs()
    )))
}

fn euler_precondition(params: &HypParams, z: ComplexValue) -> Result<()> {
    let (b, c) = (params.b, params.c);
    if !(c.re > b.re && b.re > 0.0) {
        return Err(Error::Param(format!(
            "Euler integral requires Re c > Re b > 0 (got Re b = {}, Re c = {})",
            b.re, c.re
        )));
    }
    if z.im == 0.0 && z.re >= 1.0 {
        return Err(Error::Param(
            "Euler integral requires arg(1-z) in (-pi, pi): z is on [1, infinity)".into(),
        ));
    }
    if !z.is_finite() {
        return Err(Error::Param("z is not finite".into()));
    }
    Ok(())
}

/// Euler integral representation
///   Gamma(c) / (Gamma(b) Gamma(c-b)) *
///     integral over (0,1) of t^(b-1) (1-t)^(c-b-1) (1 - z t)^(-a) dt,
/// returning the value together with the absolute error estimate.
pub fn f21_euler_integral_with_error(
    params: &HypParams,
    z: ComplexValue,
) -> Result<(ComplexValue, f64)> {
    euler_precondition(params, z)?;
    let (a, b, c) = (params.a, params.b, params.c);
    let prefactor = gamma(c)? / (gamma(b)? * gamma(c - b)?);
    let bm1 = b - ONE;
    let cbm1 = c - b - ONE;
    let one_minus_z = ONE - z;
    let (integral, est) = tanh_sinh(
        |s| {
            // 1 - z t = (1 - z) + z (1 - t), exact at both endpoints.
            let w = one_minus_z + z * s.one_minus_t;
            bm1 * s.ln_t + cbm1 * s.ln_one_minus_t - a * w.ln()
        },
        1e-11,
    )?;
    let value = prefactor * integral;
    let err = est * prefactor.abs();
    if err > 1e-9 * value.abs().max(1.0) {
        return Err(Error::Quadrature(format!(
            "integral error estimate {err:.3e} exceeds 1e-9"
        )));
    }
    Ok((value, err))
}

pub fn f21_euler_integral(params: &HypParams, z: ComplexValue) -> Result<ComplexValue> {
    f21_euler_integral_with_error(params, z).map(|(v, _)| v)
}

/// d/dz 2F1(a,b;c;z) = (a b / c) 2F1(a+1, b+1; c+1; z).
pub fn f21_derivative(params: &HypParams, z: ComplexValue, tol: f64) -> Result<ComplexValue> {
    let shifted = HypParams {
        a: params.a + ONE,
        b: params.b + ONE,
        c: params.c + ONE,
    };
    let factor = params.a * params.b / params.c;
    if z.abs() <= 0.8 || shifted.polynomial_degree().is_some() {
        Ok(factor * f21_series(&shifted, z, tol)?.value)
    } else {
        Ok(factor * f21_euler_integral(&shifted, z)?)
    }
}

/// Second solution of the hypergeometric equation around z = 0:
///   z^(1-c) 2F1(1+a-c, 1+b-c; 2-c; z),
/// for non-integer c, with z off the cut of the principal power.
pub fn second_solution(params: &HypParams, z: ComplexValue, tol: f64) -> Result<ComplexValue> {
    let c = params.c;
    if c.im == 0.0 && c.re.fract() == 0.0 {
        return Err(Error::Param(format!(
            "second solution requires non-integer c (got {c})"
        )));
    }
    if z.im == 0.0 && z.re <= 0.0 {
        return Err(Error::Domain(
            "z is on the cut of the principal power z^(1-c)".into(),
        ));
    }
    let shifted = HypParams {
        a: ONE + params.a - c,
        b: ONE + params.b - c,
        c: (ONE + ONE) - c,
    };
    let series = f21_series(&shifted, z, tol)?;
    Ok(z.powc(ONE - c) * series.value)
}

/// The conformal map w -> 4w / (1+w)^2 taking the open unit disk onto the
/// plane slit along [1, infinity).
pub fn mobius_disk_to_slitplane(w: ComplexValue) -> Result<ComplexValue> {
    let denom = ONE + w;
    if denom.abs() == 0.0 {
        return Err(Error::Pole("map has a pole at w = -1".into()));
    }
    Ok(w.scale(4.0) / (denom * denom))
}
