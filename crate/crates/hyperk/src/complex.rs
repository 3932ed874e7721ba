//! Complex scalars with an explicit branch policy.
//!
//! Everything downstream (the hypergeometric series, the elliptic
//! integrals, the modular inversion) funnels through the determinations
//! fixed here: `arg` lands in the half-open interval (-pi, pi], logs carry
//! an explicit winding count, and square roots take a branch hint instead
//! of silently picking a sign.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

pub const ZERO: ComplexValue = ComplexValue { re: 0.0, im: 0.0 };
pub const ONE: ComplexValue = ComplexValue { re: 1.0, im: 0.0 };
pub const I: ComplexValue = ComplexValue { re: 0.0, im: 1.0 };

impl ComplexValue {
    pub fn new(re: f64, im: f64) -> Self {
        ComplexValue { re, im }
    }

    /// Constructor that enforces finite components, for values arriving
    /// from the outside (CLI flags, JSON, chain files).
    pub fn checked(re: f64, im: f64) -> Result<Self> {
        if re.is_finite() && im.is_finite() {
            Ok(ComplexValue { re, im })
        } else {
            Err(Error::Domain(format!(
                "complex value must have finite components, got ({re}, {im})"
            )))
        }
    }

    pub fn real(x: f64) -> Self {
        ComplexValue { re: x, im: 0.0 }
    }

    pub fn from_polar(r: f64, theta: f64) -> Self {
        ComplexValue::new(r * theta.cos(), r * theta.sin())
    }

    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn abs_sq(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    /// Principal argument in (-pi, pi].  The negative real axis belongs to
    /// the upper side: arg(-1) = pi, and a negative zero imaginary part is
    /// treated as +0 so the convention is half-open rather than ambiguous.
    pub fn arg(self) -> f64 {
        let im = if self.im == 0.0 { 0.0 } else { self.im };
        im.atan2(self.re)
    }

    pub fn conj(self) -> Self {
        ComplexValue::new(self.re, -self.im)
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn scale(self, s: f64) -> Self {
        ComplexValue::new(self.re * s, self.im * s)
    }

    pub fn exp(self) -> Self {
        let r = self.re.exp();
        ComplexValue::new(r * self.im.cos(), r * self.im.sin())
    }

    /// Principal logarithm as a plain value; use [`principal_log`] when the
    /// winding bookkeeping or the zero check matters.
    pub fn ln(self) -> Self {
        ComplexValue::new(self.abs().ln(), self.arg())
    }

    /// Principal square root: the result has Re >= 0, with the sign fixed
    /// on the negative real axis by arg = pi (so sqrt(-1) = i).
    pub fn sqrt(self) -> Self {
        ComplexValue::from_polar(self.abs().sqrt(), 0.5 * self.arg())
    }

    pub fn powc(self, w: ComplexValue) -> Self {
        if self == ZERO {
            return ZERO;
        }
        (w * self.ln()).exp()
    }

    pub fn powf(self, x: f64) -> Self {
        self.powc(ComplexValue::real(x))
    }

    pub fn sin(self) -> Self {
        ComplexValue::new(
            self.re.sin() * self.im.cosh(),
            self.re.cos() * self.im.sinh(),
        )
    }

    pub fn cos(self) -> Self {
        ComplexValue::new(
            self.re.cos() * self.im.cosh(),
            -self.re.sin() * self.im.sinh(),
        )
    }

    pub fn recip(self) -> Self {
        ONE / self
    }
}

impl Add for ComplexValue {
    type Output = ComplexValue;
    fn add(self, rhs: Self) -> Self {
        ComplexValue::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for ComplexValue {
    type Output = ComplexValue;
    fn sub(self, rhs: Self) -> Self {
        ComplexValue::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for ComplexValue {
    type Output = ComplexValue;
    fn mul(self, rhs: Self) -> Self {
        ComplexValue::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl Div for ComplexValue {
    type Output = ComplexValue;
    fn div(self, rhs: Self) -> Self {
        // Smith's algorithm; avoids overflow when one component dominates.
        if rhs.re.abs() >= rhs.im.abs() {
            let r = rhs.im / rhs.re;
            let d = rhs.re + rhs.im * r;
            ComplexValue::new((self.re + self.im * r) / d, (self.im - self.re * r) / d)
        } else {
            let r = rhs.re / rhs.im;
            let d = rhs.re * r + rhs.im;
            ComplexValue::new((self.re * r + self.im) / d, (self.im * r - self.re) / d)
        }
    }
}

impl Neg for ComplexValue {
    type Output = ComplexValue;
    fn neg(self) -> Self {
        ComplexValue::new(-self.re, -self.im)
    }
}

impl Add<f64> for ComplexValue {
    type Output = ComplexValue;
    fn add(self, rhs: f64) -> Self {
        ComplexValue::new(self.re + rhs, self.im)
    }
}

impl Sub<f64> for ComplexValue {
    type Output = ComplexValue;
    fn sub(self, rhs: f64) -> Self {
        ComplexValue::new(self.re - rhs, self.im)
    }
}

impl Mul<f64> for ComplexValue {
    type Output = ComplexValue;
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl Div<f64> for ComplexValue {
    type Output = ComplexValue;
    fn div(self, rhs: f64) -> Self {
        ComplexValue::new(self.re / rhs, self.im / rhs)
    }
}

impl Sub<ComplexValue> for f64 {
    type Output = ComplexValue;
    fn sub(self, rhs: ComplexValue) -> ComplexValue {
        ComplexValue::new(self - rhs.re, -rhs.im)
    }
}

impl Mul<ComplexValue> for f64 {
    type Output = ComplexValue;
    fn mul(self, rhs: ComplexValue) -> ComplexValue {
        rhs.scale(self)
    }
}

impl fmt::Display for ComplexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im >= 0.0 {
            write!(f, "{}+{}i", self.re, self.im)
        } else {
            write!(f, "{}{}i", self.re, self.im)
        }
    }
}

/// A logarithm remembered together with its sheet.
///
/// `value()` is `principal + 2 pi i * winding`, exactly; the principal part
/// always has imaginary part in (-pi, pi].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BranchedLog {
    pub principal: ComplexValue,
    pub winding: i32,
}

impl BranchedLog {
    pub fn value(self) -> ComplexValue {
        self.principal + ComplexValue::new(0.0, 2.0 * std::f64::consts::PI * self.winding as f64)
    }

    /// Move `turns` sheets up (positive) or down (negative).
    pub fn wind(self, turns: i32) -> Self {
        BranchedLog {
            principal: self.principal,
            winding: self.winding + turns,
        }
    }
}

/// Principal logarithm with winding 0.  Errors on z = 0, where no branch
/// exists.
pub fn principal_log(z: ComplexValue) -> Result<BranchedLog> {
    if z == ZERO {
        return Err(Error::Domain(
            "principal_log: no logarithm branch at z = 0".into(),
        ));
    }
    Ok(BranchedLog {
        principal: z.ln(),
        winding: 0,
    })
}

/// Which of the two square roots to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SqrtBranch {
    /// Re >= 0, with sqrt(negative real) = +i sqrt(|x|).
    Principal,
    /// The negated principal root; on the negative real axis this is the
    /// root with negative imaginary part.
    Negated,
}

pub fn branch_sqrt(w: ComplexValue, branch: SqrtBranch) -> ComplexValue {
    let p = w.sqrt();
    match branch {
        SqrtBranch::Principal => p,
        SqrtBranch::Negated => -p,
    }
}
