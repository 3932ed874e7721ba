//! Curves with certified evaluation.
//!
//! Each curve offers two enclosure routines. `enclose_fast` produces a sound
//! floating-point interval around f(x) that is cheap enough to call millions
//! of times while scanning a Farey ladder. `certify` produces an enclosure in
//! exact rational arithmetic whose width is at most a requested bound; it is
//! the final arbiter when a candidate rational point survives the fast scan.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

pub trait CertifiedCurve: Sync {
    fn name(&self) -> String;

    /// Closed interval of admissible abscissas.
    fn domain(&self) -> (f64, f64);

    /// Sound outward enclosure of f(num/den) in double precision. The width
    /// is far below the scan resolution on the curve's domain.
    fn enclose_fast(&self, num: i64, den: u64) -> Result<(f64, f64)>;

    /// Exact value for curves that carry rationals to rationals. `None`
    /// means the curve has no such shortcut, not that the value is
    /// irrational.
    fn exact_value(&self, _x: &BigRational) -> Option<BigRational> {
        None
    }

    /// Sound enclosure of f(x) of width at most `width`, computed in exact
    /// rational arithmetic.
    fn certify(&self, x: &BigRational, width: &BigRational) -> Result<(BigRational, BigRational)>;
}

fn rat_half() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(2))
}

/// Rational bounds pi_lo <= pi <= pi_hi sharp to 49 decimal places, ample
/// for any certification width this module accepts.
fn pi_bounds() -> &'static (BigRational, BigRational) {
    static PI: OnceLock<(BigRational, BigRational)> = OnceLock::new();
    PI.get_or_init(|| {
        let digits = "31415926535897932384626433832795028841971693993751";
        let num: BigInt = digits.parse().unwrap();
        let den = BigInt::from(10u32).pow(49);
        let lo = BigRational::new(num, den.clone());
        let hi = &lo + BigRational::new(BigInt::one(), den);
        (lo, hi)
    })
}

/// Parse "p/q", an integer, or a finite decimal into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational literal".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in '{s}'")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in '{s}'")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in '{s}'")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let sign = if whole.trim_start().starts_with('-') {
            -1
        } else {
            1
        };
        let w: BigInt = if whole == "-" || whole.is_empty() {
            BigInt::zero()
        } else {
            whole
                .parse()
                .map_err(|_| Error::Parse(format!("bad decimal '{s}'")))?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad decimal '{s}'")));
        }
        let f: BigInt = frac
            .parse()
            .map_err(|_| Error::Parse(format!("bad decimal '{s}'")))?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let v = BigRational::from_integer(w.abs()) + BigRational::new(f, scale);
        return Ok(if sign < 0 { -v } else { v });
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational literal '{s}'")))?;
    Ok(BigRational::from_integer(n))
}

/// Shared floating 2F1 sum with a running error budget: returns the value
/// and a sound bound on |computed - true| combining the geometric tail with
/// accumulated rounding on the term recurrence.
fn f21_f64_with_bound(a: f64, b: f64, c: f64, x: f64) -> Result<(f64, f64)> {
    let eps = f64::EPSILON;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut sum_abs = 1.0f64;
    let xa = x.abs();
    if xa > 0.8 + 1e-12 {
        return Err(Error::Domain(format!(
            "series enclosure needs |x| <= 0.8 (got {xa})"
        )));
    }
    let big = a.abs().max(b.abs()).max(c.abs());
    for n in 0..4000u32 {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * x;
        sum += term;
        sum_abs += term.abs();
        if !sum.is_finite() {
            return Err(Error::Convergence("floating series overflowed".into()));
        }
        if nf > 2.0 * big + 8.0 {
            // with M = max(|a|,|b|,|c|) every later term ratio is at most
            // |x| (k+M)^2 / ((k-M) k), and that majorant decreases in k,
            // so evaluating it here bounds the whole geometric tail
            let rho = xa * (nf + big) * (nf + big) / ((nf - big) * nf);
            if rho < 0.95 {
                let tail = term.abs() * rho / (1.0 - rho);
                if tail < 1e-14 {
                    // rounding: each term carries O(n) relative error from
                    // the recurrence plus the summation itself
                    let rounding = sum_abs * 8.0 * (nf + 4.0) * eps;
                    return Ok((sum, 2.0 * tail + rounding + f64::MIN_POSITIVE));
                }
            }
        }
    }
    Err(Error::Convergence(
        "floating series did not settle within 4000 terms".into(),
    ))
}

fn outward(v: f64, pad: f64) -> (f64, f64) {
    ((v - pad).next_down(), (v + pad).next_up())
}

/// 2F1 with exact rational parameters and argument, summed exactly with a
/// certified geometric tail. Requires |x| <= 4/5 and c not a nonpositive
/// integer; both are checked by the curve constructors.
fn f21_exact_enclosure(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    x: &BigRational,
    width: &BigRational,
) -> Result<(BigRational, BigRational)> {
    let xa = x.abs();
    let xa_f = xa.to_f64().unwrap_or(1.0);
    if xa_f > 0.8 {
        return Err(Error::Domain(format!(
            "exact series enclosure needs |x| <= 0.8 (got {xa_f})"
        )));
    }
    if x.is_zero() {
        return Ok((BigRational::one(), BigRational::one()));
    }
    // with M = max(|a|,|b|,|c|) every term ratio past index k is at most
    // |x| (k+M)^2 / ((k-M) k), and the majorant decreases in k, so its
    // value at the current index bounds the geometric tail exactly
    let m = a.abs().max(b.abs()).max(c.abs());
    let settle = 2 * (m.to_f64().unwrap_or(0.0).ceil() as u64) + 8;
    let half_width = width * rat_half();
    let rho_cap = BigRational::new(BigInt::from(19), BigInt::from(20));

    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for n in 0..200_000u64 {
        let nr = BigRational::from_integer(BigInt::from(n));
        let denom = (c + &nr) * (&nr + BigRational::one());
        if denom.is_zero() {
            return Err(Error::Param(
                "series coefficient denominator vanished".into(),
            ));
        }
        term = &term * (a + &nr) * (b + &nr) / denom * x;
        sum += &term;
        if n > settle {
            let up = &nr + &m;
            let rho = &xa * &up * &up / ((&nr - &m) * &nr);
            if rho < rho_cap {
                let bound = term.abs() * &rho / (BigRational::one() - &rho);
                if bound <= half_width {
                    return Ok((&sum - &bound, &sum + &bound));
                }
            }
        }
    }
    Err(Error::Certification(
        "exact series failed to reach the requested width".into(),
    ))
}

/// Multiply a positive enclosure by [pi/2 * lo, pi/2 * hi] bounds.
fn scale_by_half_pi(flo: &BigRational, fhi: &BigRational) -> Result<(BigRational, BigRational)> {
    if !flo.is_positive() {
        return Err(Error::Certification(
            "series enclosure lost positivity before the pi scaling".into(),
        ));
    }
    let (pl, ph) = pi_bounds();
    Ok((flo * pl * rat_half(), fhi * ph * rat_half()))
}

/// The exponential curve f(x) = exp(x), restricted to |x| <= 30.
pub struct ExpCurve;

const EXP_SPAN: f64 = 30.0;

fn exp_pos_exact(x: &BigRational, width: &BigRational) -> Result<(BigRational, BigRational)> {
    // Plain Taylor sum: once k+1 >= 2x the term ratio is at most 1/2, so
    // the tail after term k is at most term_k * rho / (1 - rho) with
    // rho = x/(k+1).
    let x_f = x.to_f64().unwrap_or(EXP_SPAN + 1.0);
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for k in 1..10_000u32 {
        let kr = BigRational::from_integer(BigInt::from(k));
        term = &term * x / &kr;
        sum += &term;
        if (k + 1) as f64 >= 2.0 * x_f + 2.0 {
            let rho = x / BigRational::from_integer(BigInt::from(k + 1));
            let tail = term.abs() * &rho / (BigRational::one() - &rho);
            if &tail <= width {
                return Ok((sum.clone(), &sum + &tail));
            }
        }
    }
    Err(Error::Certification(
        "exponential series failed to reach the requested width".into(),
    ))
}

impl CertifiedCurve for ExpCurve {
    fn name(&self) -> String {
        "exp".into()
    }

    fn domain(&self) -> (f64, f64) {
        (-EXP_SPAN, EXP_SPAN)
    }

    fn enclose_fast(&self, num: i64, den: u64) -> Result<(f64, f64)> {
        let x = num as f64 / den as f64;
        let v = x.exp();
        if !v.is_finite() {
            return Err(Error::Overflow("exp overflow in fast enclosure".into()));
        }
        // exp() is correct to about an ulp and the argument rounding
        // contributes |x| eps relatively; eight combined ulps is generous.
        let pad = v * (x.abs() + 2.0) * 8.0 * f64::EPSILON + f64::MIN_POSITIVE;
        Ok(outward(v, pad))
    }

    fn certify(&self, x: &BigRational, width: &BigRational) -> Result<(BigRational, BigRational)> {
        if x.is_zero() {
            return Ok((BigRational::one(), BigRational::one()));
        }
        let xa = x.abs();
        if xa.to_f64().unwrap_or(f64::MAX) > EXP_SPAN {
            return Err(Error::Domain(format!("exp curve admits |x| <= {EXP_SPAN}")));
        }
        if x.is_positive() {
            exp_pos_exact(x, width)
        } else {
            // exp(x) = 1 / exp(|x|); with exp(|x|) >= 1 the reciprocal
            // interval is no wider than the direct one.
            let (lo, hi) = exp_pos_exact(&xa, width)?;
            Ok((hi.recip(), lo.recip()))
        }
    }
}

/// The shifted identity f(x) = x + c (exact rational shift). Its rational
/// points match brute force exactly, which makes it the reference curve for
/// ladder experiments.
pub struct ShiftCurve {
    offset: BigRational,
}

impl ShiftCurve {
    pub fn new(offset: BigRational) -> Self {
        ShiftCurve { offset }
    }
}

impl CertifiedCurve for ShiftCurve {
    fn name(&self) -> String {
        format!("linear:{}", self.offset)
    }

    fn domain(&self) -> (f64, f64) {
        (-1e15, 1e15)
    }

    fn enclose_fast(&self, num: i64, den: u64) -> Result<(f64, f64)> {
        let v = num as f64 / den as f64 + self.offset.to_f64().unwrap_or(0.0);
        let pad = (v.abs() + 1.0) * 4.0 * f64::EPSILON;
        Ok(outward(v, pad))
    }

    fn exact_value(&self, x: &BigRational) -> Option<BigRational> {
        Some(x + &self.offset)
    }

    fn certify(&self, x: &BigRational, _width: &BigRational) -> Result<(BigRational, BigRational)> {
        let v = x + &self.offset;
        Ok((v.clone(), v))
    }
}

/// The complete elliptic integral f(x) = K(x) on |x| <= 4/5, certified
/// through the exact rational series of 2F1(1/2, 1/2; 1; x) and rational
/// bounds on pi.
pub struct EllipticKCurve;

impl CertifiedCurve for EllipticKCurve {
    fn name(&self) -> String {
        "k".into()
    }

    fn domain(&self) -> (f64, f64) {
        (-0.8, 0.8)
    }

    fn enclose_fast(&self, num: i64, den: u64) -> Result<(f64, f64)> {
        let x = num as f64 / den as f64;
        let (f, err) = f21_f64_with_bound(0.5, 0.5, 1.0, x)?;
        let v = f * std::f64::consts::FRAC_PI_2;
        let pad = (err + f.abs() * 4.0 * f64::EPSILON) * 2.0;
        Ok(outward(v, pad))
    }

    fn certify(&self, x: &BigRational, width: &BigRational) -> Result<(BigRational, BigRational)> {
        if width < &BigRational::new(BigInt::one(), BigInt::from(10u32).pow(45)) {
            return Err(Error::Certification(
                "pi bounds cap the certification width at 1e-45".into(),
            ));
        }
        let half = rat_half();
        let inner = width * BigRational::new(BigInt::from(1), BigInt::from(4));
        let (flo, fhi) = f21_exact_enclosure(&half, &half, &BigRational::one(), x, &inner)?;
        scale_by_half_pi(&flo, &fhi)
    }
}

/// The Gauss hypergeometric curve f(x) = 2F1(a, b; c; x) with exact rational
/// parameters, on |x| <= 4/5.
pub struct F21Curve {
    a: BigRational,
    b: BigRational,
    c: BigRational,
    a_f: f64,
    b_f: f64,
    c_f: f64,
}

impl F21Curve {
    pub fn new(a: BigRational, b: BigRational, c: BigRational) -> Result<Self> {
        if !c.is_positive() && c.is_integer() {
            return Err(Error::Param(format!(
                "c = {c} is a nonpositive integer; the series is undefined"
            )));
        }
        let a_f = a
            .to_f64()
            .ok_or_else(|| Error::Param("a out of range".into()))?;
        let b_f = b
            .to_f64()
            .ok_or_else(|| Error::Param("b out of range".into()))?;
        let c_f = c
            .to_f64()
            .ok_or_else(|| Error::Param("c out of range".into()))?;
        if a_f.abs() > 100.0 || b_f.abs() > 100.0 || c_f.abs() > 100.0 {
            return Err(Error::Param(
                "parameters beyond |100| are outside the supported range".into(),
            ));
        }
        Ok(F21Curve {
            a,
            b,
            c,
            a_f,
            b_f,
            c_f,
        })
    }
}

impl CertifiedCurve for F21Curve {
    fn name(&self) -> String {
        format!("f21:{},{},{}", self.a, self.b, self.c)
    }

    fn domain(&self) -> (f64, f64) {
        (-0.8, 0.8)
    }

    fn enclose_fast(&self, num: i64, den: u64) -> Result<(f64, f64)> {
        let x = num as f64 / den as f64;
        let (v, err) = f21_f64_with_bound(self.a_f, self.b_f, self.c_f, x)?;
        Ok(outward(v, err * 2.0))
    }

    fn certify(&self, x: &BigRational, width: &BigRational) -> Result<(BigRational, BigRational)> {
        f21_exact_enclosure(&self.a, &self.b, &self.c, x, width)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn width_of(pair: &(BigRational, BigRational)) -> BigRational {
        &pair.1 - &pair.0
    }

    fn contains_f64(pair: &(BigRational, BigRational), v: f64) -> bool {
        let v = BigRational::from_float(v).unwrap();
        pair.0 <= v && v <= pair.1
    }

    #[test]
    fn pi_bounds_are_tight_and_ordered() {
        let (lo, hi) = pi_bounds();
        assert!(lo < hi);
        let lo_f = lo.to_f64().unwrap();
        let hi_f = hi.to_f64().unwrap();
        assert!((lo_f - std::f64::consts::PI).abs() < 1e-15);
        assert!((hi_f - std::f64::consts::PI).abs() < 1e-15);
        let w = width_of(&(lo.clone(), hi.clone())).to_f64().unwrap();
        assert!(w <= 1e-49 * 1.01);
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-7").unwrap(), rat(-7, 1));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn exp_certify_brackets_the_true_value() {
        let c = ExpCurve;
        let w = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(25));
        for x in [rat(1, 3), rat(7, 5), rat(-2, 7), rat(0, 1), rat(20, 1)] {
            let pair = c.certify(&x, &w).unwrap();
            assert!(width_of(&pair) <= w, "width too large at {x}");
            assert!(pair.0 <= pair.1);
            let v = x.to_f64().unwrap().exp();
            // the f64 reference itself is only good to ~1 ulp, so compare
            // against a slightly inflated hull
            let hull = (
                &pair.0 - BigRational::from_float(v.abs() * 1e-12).unwrap(),
                &pair.1 + BigRational::from_float(v.abs() * 1e-12).unwrap(),
            );
            assert!(contains_f64(&hull, v), "exp({x}) escaped its enclosure");
        }
    }

    #[test]
    fn exp_fast_enclosure_contains_certified_value() {
        let c = ExpCurve;
        let w = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(30));
        for (num, den) in [(1i64, 3u64), (-5, 4), (0, 1), (13, 2)] {
            let (lo, hi) = c.enclose_fast(num, den).unwrap();
            let x = BigRational::new(BigInt::from(num), BigInt::from(den));
            let (clo, chi) = c.certify(&x, &w).unwrap();
            let lo_r = BigRational::from_float(lo).unwrap();
            let hi_r = BigRational::from_float(hi).unwrap();
            assert!(
                lo_r <= clo && chi <= hi_r,
                "fast interval must cover the exact one at {num}/{den}"
            );
        }
    }

    #[test]
    fn elliptic_curve_matches_frozen_value() {
        let c = EllipticKCurve;
        let w = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(20));
        let pair = c.certify(&rat(1, 2), &w).unwrap();
        assert!(width_of(&pair) <= w);
        let mid = ((&pair.0 + &pair.1) * rat_half()).to_f64().unwrap();
        assert!((mid - 1.8540746773013719).abs() < 1e-15);
        let (lo, hi) = c.enclose_fast(1, 2).unwrap();
        assert!(lo <= 1.8540746773013719 && 1.8540746773013719 <= hi);
        assert!(hi - lo < 5e-12);
    }

    #[test]
    fn elliptic_curve_negative_argument() {
        let c = EllipticKCurve;
        let w = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(18));
        let pair = c.certify(&rat(-1, 2), &w).unwrap();
        // K(-1/2) = 1.415737208425956... via AGM
        let agm_value = std::f64::consts::PI / (2.0 * crate::elliptic::agm(1.0, 1.5f64.sqrt()));
        let hull = (
            &pair.0 - BigRational::from_float(1e-12).unwrap(),
            &pair.1 + BigRational::from_float(1e-12).unwrap(),
        );
        assert!(contains_f64(&hull, agm_value));
    }

    #[test]
    fn f21_curve_certifies_and_rejects_bad_params() {
        assert!(F21Curve::new(rat(1, 2), rat(1, 2), rat(-2, 1)).is_err());
        let c = F21Curve::new(rat(1, 2), rat(1, 2), rat(1, 1)).unwrap();
        let w = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(20));
        let pair = c.certify(&rat(1, 2), &w).unwrap();
        assert!(width_of(&pair) <= w);
        let mid = ((&pair.0 + &pair.1) * rat_half()).to_f64().unwrap();
        // 2F1(1/2,1/2;1;1/2) = 2 K(1/2) / pi
        assert!((mid - 1.1803405990160962).abs() < 1e-14);
        let (lo, hi) = c.enclose_fast(1, 2).unwrap();
        assert!(lo <= mid && mid <= hi);
    }

    #[test]
    fn f21_exact_at_zero_is_one() {
        let w = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(30));
        let pair =
            f21_exact_enclosure(&rat(1, 3), &rat(1, 4), &rat(2, 1), &BigRational::zero(), &w)
                .unwrap();
        assert_eq!(pair.0, BigRational::one());
        assert_eq!(pair.1, BigRational::one());
    }

    #[test]
    fn shift_curve_is_exact() {
        let c = ShiftCurve::new(rat(1, 3));
        assert_eq!(c.exact_value(&rat(1, 6)).unwrap(), rat(1, 2));
        let w = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(18));
        let pair = c.certify(&rat(2, 3), &w).unwrap();
        assert_eq!(pair.0, rat(1, 1));
        assert_eq!(pair.1, rat(1, 1));
    }

    #[test]
    fn exp_domain_is_enforced() {
        let c = ExpCurve;
        let w = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(18));
        assert!(matches!(c.certify(&rat(31, 1), &w), Err(Error::Domain(_))));
    }

    #[test]
    fn k_certification_width_floor() {
        let c = EllipticKCurve;
        let w = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(60));
        assert!(matches!(
            c.certify(&rat(1, 2), &w),
            Err(Error::Certification(_))
        ));
    }
}
