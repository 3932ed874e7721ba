//! The complete elliptic integral K(z) = (pi/2) 2F1(1/2, 1/2; 1; z) on the
//! plane slit along [1, infinity), its derivative, its boundary values on
//! the slit, and analytic continuation with monodromy bookkeeping.
//!
//! Conventions used throughout:
//! * argument is the parameter m = k^2 (the square of the modulus);
//! * `k_principal` is the principal branch, real on (-infinity, 1);
//! * the second basis solution of the underlying equation is K(1-z).

use crate::complex::{ComplexValue, ONE, ZERO};
use crate::error::{Error, Result};
use crate::hyp2f1::{f21_euler_integral, f21_series, HypParams};
use crate::ode::{integrate, OdeOptions};
use crate::path::{MonodromyMatrix, PathSpec};
use crate::quadrature::tanh_sinh_real;
use std::f64::consts::{FRAC_PI_2, LN_2, PI};

const CUT_MESSAGE: &str = "point on branch cut [1,∞)";

fn params_k() -> HypParams {
    HypParams {
        a: ComplexValue::real(0.5),
        b: ComplexValue::real(0.5),
        c: ONE,
    }
}

fn params_k_derivative() -> HypParams {
    HypParams {
        a: ComplexValue::real(1.5),
        b: ComplexValue::real(1.5),
        c: ComplexValue::real(2.0),
    }
}

fn on_cut(z: ComplexValue) -> bool {
    z.im == 0.0 && z.re >= 1.0
}

/// K by the hypergeometric series; caller guarantees |z| <= 0.8.
fn k_series(z: ComplexValue) -> Result<ComplexValue> {
    Ok(f21_series(&params_k(), z, 1e-15)?.value.scale(FRAC_PI_2))
}

/// K' by the hypergeometric series; caller guarantees |z| <= 0.8.
fn k_derivative_series(z: ComplexValue) -> Result<ComplexValue> {
    Ok(f21_series(&params_k_derivative(), z, 1e-15)?
        .value
        .scale(PI / 8.0))
}

/// The series S(z) = sum over n of [(1/2)_n / n!]^2 [psi(n+1) - psi(n+1/2)]
/// (1-z)^n, which equals K(z) + (log(1-z)/pi) K(1-z) and is analytic across
/// the slit near z = 1.  Returns (S, S') since the derivative shares all
/// coefficient work.
fn star_series(z: ComplexValue) -> Result<(ComplexValue, ComplexValue)> {
    let w = ONE - z;
    let r = w.abs();
    if r >= 1.0 {
        return Err(Error::Domain(format!(
            "star series requires |1-z| < 1 (got {r:.4})"
        )));
    }
    // c_n = t_n d_n with t_n = [(1/2)_n / n!]^2 and
    // d_n = psi(n+1) - psi(n+1/2): t_0 = 1, d_0 = 2 ln 2,
    // t_n = t_{n-1} ((2n-1)/(2n))^2, d_n = d_{n-1} + 1/n - 2/(2n-1).
    let mut t = 1.0f64;
    let mut d = 2.0 * LN_2;
    let mut sum = ComplexValue::real(d);
    let mut deriv = ZERO;
    let mut w_pow = ONE; // w^{n-1} entering iteration n
    for n in 1..4000usize {
        let nf = n as f64;
        t *= ((2.0 * nf - 1.0) / (2.0 * nf)).powi(2);
        d += 1.0 / nf - 2.0 / (2.0 * nf - 1.0);
        let cn = t * d;
        // S += c_n w^n; S' = -dS/dw * ... dS/dz = -sum n c_n w^(n-1).
        deriv = deriv - w_pow.scale(nf * cn);
        w_pow = w_pow * w;
        sum = sum + w_pow.scale(cn);
        // c_n decreases monotonically, so the geometric bound is sound; the
        // (n+2) factor covers the differentiated series as well.
        let tail = (nf + 2.0) * cn * r.powi(n as i32 + 1) / (1.0 - r);
        if tail <= 1e-15 * sum.abs().max(1.0) && n >= 4 {
            return Ok((sum, deriv));
        }
    }
    Err(Error::Convergence(format!(
        "star series stalled at |1-z| = {r:.6}"
    )))
}

/// The analytic combination L(z) = K(z) + (log(1-z)/pi) K(1-z) near z = 1,
/// valid for |1-z| < 1 (including on the slit itself, where the separate
/// terms jump but the sum does not).  L(1) = 2 ln 2.
pub fn k_star_formula(z: ComplexValue) -> Result<ComplexValue> {
    if !z.is_finite() {
        return Err(Error::Domain("z is not finite".into()));
    }
    Ok(star_series(z)?.0)
}

/// K via the star decomposition; caller guarantees |1-z| <= 0.8.
fn k_via_star(z: ComplexValue) -> Result<ComplexValue> {
    let (s, _) = star_series(z)?;
    let log_term = (ONE - z).ln();
    let k_complement = k_series(ONE - z)?;
    Ok(s - log_term * k_complement.scale(1.0 / PI))
}

/// K' via the differentiated star decomposition; caller guarantees
/// |1-z| <= 0.8.
fn k_derivative_via_star(z: ComplexValue) -> Result<ComplexValue> {
    let (_, s_prime) = star_series(z)?;
    let w = ONE - z;
    let k_c = k_series(w)?;
    let kp_c = k_derivative_series(w)?;
    Ok(s_prime + k_c / w.scale(PI) + w.ln() * kp_c.scale(1.0 / PI))
}

fn dist_point_to_segment(p: ComplexValue, a: ComplexValue, b: ComplexValue) -> f64 {
    let ab = b - a;
    let len_sq = ab.abs_sq();
    if len_sq == 0.0 {
        return (p - a).abs();
    }
    let t = (((p - a).re * ab.re) + ((p - a).im * ab.im)) / len_sq;
    let t = t.clamp(0.0, 1.0);
    (p - (a + ab.scale(t))).abs()
}

/// Evaluate (K, K') at z by continuing the hypergeometric equation from an
/// anchor point 1 + 1.5i (or its conjugate) along an arc of radius |z-1|
/// centred at 1, then radially in to z.  Used in the annulus
/// 0.8 < |z-1| < 1.25 near the slit where no series or integral
/// representation converges comfortably.  The whole route stays in one open
/// half-plane, so the result is the principal branch.
fn k_ode_eval(z: ComplexValue) -> Result<(ComplexValue, ComplexValue)> {
    debug_assert!(z.im != 0.0);
    let side = if z.im > 0.0 { 1.0 } else { -1.0 };
    let anchor = ComplexValue::new(1.0, 1.5 * side);

    // K at the anchor via the Pfaff transform into the star disk:
    // w = z/(z-1) has |1-w| = 2/3 there.
    let w = anchor / (anchor - ONE);
    let k_anchor = k_via_star(w)? / (ONE - anchor).sqrt();
    // K' at the anchor via the Euler integral (the segment [0, anchor]
    // stays 0.83 away from the singular point 1).
    let kp_anchor = f21_euler_integral(&params_k_derivative(), anchor)?.scale(PI / 8.0);

    // Waypoints: arc at radius 1.5 from the anchor angle to arg(z-1), then
    // a radial segment down to |z-1|.
    let theta_from = FRAC_PI_2 * side;
    let theta_to = (z - ONE).arg();
    let sweep = theta_to - theta_from;
    let segments = (sweep.abs() / 0.35).ceil().max(1.0) as usize;
    let mut points = Vec::with_capacity(segments + 2);
    for i in 0..=segments {
        let th = theta_from + sweep * (i as f64) / (segments as f64);
        points.push(ONE + ComplexValue::from_polar(1.5, th));
    }
    points.push(z);

    let mut state = [k_anchor.re, k_anchor.im, kp_anchor.re, kp_anchor.im];
    let opts = OdeOptions {
        rel_tol: 1e-12,
        abs_tol: 1e-12,
        max_step: 1.0,
    };
    for pair in points.windows(2) {
        let (za, zb) = (pair[0], pair[1]);
        let dz = zb - za;
        integrate(
            |s, y, dy| {
                let z = za + dz.scale(s);
                let u = ComplexValue::new(y[0], y[1]);
                let up = ComplexValue::new(y[2], y[3]);
                let upp = (u.scale(0.25) - (ONE - z.scale(2.0)) * up) / (z - z * z);
                let du = dz * up;
                let dup = dz * upp;
                dy[0] = du.re;
                dy[1] = du.im;
                dy[2] = dup.re;
                dy[3] = dup.im;
            },
            0.0,
            1.0,
            &mut state,
            &opts,
            |_, _, _| {},
        )?;
    }
    Ok((
        ComplexValue::new(state[0], state[1]),
        ComplexValue::new(state[2], state[3]),
    ))
}

/// Principal branch of K(z) on the plane slit along [1, infinity).
///
/// Routing: series on |z| <= 0.8; the star decomposition on |1-z| <= 0.8;
/// a Pfaff transform w = z/(z-1) into one of those disks when possible; an
/// anchored continuation of the defining equation in the remaining annulus
/// near the slit.
pub fn k_principal(z: ComplexValue) -> Result<ComplexValue> {
    if !z.is_finite() {
        return Err(Error::Domain("z is not finite".into()));
    }
    if on_cut(z) {
        return Err(Error::BranchCut(CUT_MESSAGE.into()));
    }
    if z.abs() <= 0.8 {
        return k_series(z);
    }
    if (ONE - z).abs() <= 0.8 {
        return k_via_star(z);
    }
    let w = z / (z - ONE);
    let sqrt_1mz = (ONE - z).sqrt();
    if w.abs() <= 0.8 {
        return Ok(k_series(w)? / sqrt_1mz);
    }
    if (ONE - w).abs() <= 0.8 {
        return Ok(k_via_star(w)? / sqrt_1mz);
    }
    Ok(k_ode_eval(z)?.0)
}

/// dK/dz = (pi/8) 2F1(3/2, 3/2; 2; z) on the same slit plane.
pub fn k_derivative(z: ComplexValue) -> Result<ComplexValue> {
    if !z.is_finite() {
        return Err(Error::Domain("z is not finite".into()));
    }
    if on_cut(z) {
        return Err(Error::BranchCut(CUT_MESSAGE.into()));
    }
    if z.abs() <= 0.8 {
        return k_derivative_series(z);
    }
    if (ONE - z).abs() <= 0.8 {
        return k_derivative_via_star(z);
    }
    if dist_point_to_segment(ONE, ZERO, z) >= 0.1 {
        return Ok(f21_euler_integral(&params_k_derivative(), z)?.scale(PI / 8.0));
    }
    Ok(k_ode_eval(z)?.1)
}

/// Real-axis arithmetic-geometric mean; for m < 1,
/// K(m) = pi / (2 agm(1, sqrt(1-m))).  Exposed as an independent oracle.
pub fn agm(a: f64, b: f64) -> f64 {
    assert!(a > 0.0 && b > 0.0, "agm needs positive arguments");
    let (mut a, mut b) = (a, b);
    for _ in 0..64 {
        let (na, nb) = (0.5 * (a + b), (a * b).sqrt());
        if (na - nb).abs() <= 4.0 * f64::EPSILON * na {
            return 0.5 * (na + nb);
        }
        a = na;
        b = nb;
    }
    0.5 * (a + b)
}

/// Both sides of the Pfaff transformation
///   K(z/(z-1)) = sqrt(1-z) K(z)
/// with principal branches, returned as (left, right) for inspection.
pub fn pfaff_transform_check(z: ComplexValue) -> Result<(ComplexValue, ComplexValue)> {
    let w = z / (z - ONE);
    let left = k_principal(w)?;
    let right = (ONE - z).sqrt() * k_principal(z)?;
    Ok((left, right))
}

/// The classical real integral for x > 1, split at the interior root:
/// with k = sqrt(x),
///   R = integral from 0 to 1/k of dt / sqrt((1-t^2)(1-x t^2)),
///   I = integral from 1/k to 1 of dt / sqrt((1-t^2)(x t^2-1)),
/// returned as R + iI.  This equals the boundary value of K from the upper
/// half-plane, lim K(x + iy) as y decreases to 0.
pub fn k_split_integral(x: f64) -> Result<ComplexValue> {
    if !(x > 1.0) {
        return Err(Error::Domain(format!(
            "split integral requires x > 1 (got {x})"
        )));
    }
    if !x.is_finite() {
        return Err(Error::Domain("x is not finite".into()));
    }
    let k = x.sqrt();
    // R: substitute t = s/k, so R = (1/k) * integral over s in (0,1) of
    // ds / sqrt((1 - s^2/x)(1 - s^2)); the singular factor at s = 1 is
    // (1-s)(1+s).
    let (r_val, _) = tanh_sinh_real(
        |s| {
            let ln_1m_s2_over_x = ((1.0 - s.t * s.t / x).max(f64::MIN_POSITIVE)).ln();
            -0.5 * (ln_1m_s2_over_x + s.ln_one_minus_t + (1.0 + s.t).ln())
        },
        1e-13,
    )?;
    let r_val = r_val / k;
    // I: substitute t = (1 + (k-1) s)/k so that k t - 1 = (k-1) s and
    // 1 - t = (1 - 1/k)(1 - s); all four factors stay stable at the ends.
    let scale = 1.0 - 1.0 / k;
    let (i_val, _) = tanh_sinh_real(
        |s| {
            let t = (1.0 + (k - 1.0) * s.t) / k;
            let ln_kt_m1 = (k - 1.0).ln() + s.ln_t;
            let ln_1mt = scale.ln() + s.ln_one_minus_t;
            let ln_1pt = (1.0 + t).ln();
            let ln_ktp1 = (k * t + 1.0).ln();
            -0.5 * (ln_1mt + ln_1pt + ln_kt_m1 + ln_ktp1)
        },
        1e-13,
    )?;
    let i_val = i_val * scale;
    Ok(ComplexValue::new(r_val, i_val))
}

/// The other boundary value on the slit: K continued to x > 1 with the
/// opposite sign of the imaginary part, lim K(x - iy) as y decreases to 0.
/// Satisfies k_above_cut(x) + 2i K(1-x) = k_split_integral(x).
pub fn k_above_cut(x: f64) -> Result<ComplexValue> {
    let split = k_split_integral(x)?;
    let complement = k_principal(ComplexValue::real(1.0 - x))?;
    Ok(split - crate::complex::I.scale(2.0) * complement)
}

/// State carried along an analytic continuation: the continued pair
/// (K(z), K(1-z)), the word of cut crossings as a matrix, and the endpoint.
#[derive(Clone, Copy, Debug)]
pub struct BranchState {
    /// The continued values (u, v) = (K(z), K(1-z)) at `current_point`.
    pub base_values: [ComplexValue; 2],
    /// The continued derivatives (u', v').
    pub derivatives: [ComplexValue; 2],
    /// Product of one crossing matrix per traversal of the cut [1, infinity),
    /// newest on the left; identity for paths that never cross.
    pub accumulated_monodromy: MonodromyMatrix,
    pub current_point: ComplexValue,
}

/// Continue the solution pair (K(z), K(1-z)) of the hypergeometric equation
///   (z - z^2) Y'' + (1 - 2z) Y' - Y/4 = 0
/// along a polyline path.  Both components ride the same equation; each
/// upward crossing of the cut [1, infinity) multiplies the accumulated
/// matrix on the left by [[1, -2i], [0, 1]], each downward crossing by its
/// inverse.  The equation is singular at 0 and 1, so the path must keep a
/// distance of at least 1e-6 from both.
pub fn continue_along_path(path: &PathSpec) -> Result<BranchState> {
    let z0 = path.start();
    if z0.im == 0.0 && (z0.re >= 1.0 || z0.re <= 0.0) {
        return Err(Error::Domain(
            "continuation must start where both K(z) and K(1-z) are principal \
             (off the real rays z <= 0 and z >= 1)"
                .into(),
        ));
    }
    for pair in path.waypoints().windows(2) {
        for singular in [ZERO, ONE] {
            if dist_point_to_segment(singular, pair[0], pair[1]) < 1e-6 {
                return Err(Error::Singularity(format!(
                    "path passes within 1e-6 of the singular point {singular}"
                )));
            }
        }
    }

    let u0 = k_principal(z0)?;
    let up0 = k_derivative(z0)?;
    let v0 = k_principal(ONE - z0)?;
    let vp0 = -k_derivative(ONE - z0)?;
    let mut state = [u0.re, u0.im, up0.re, up0.im, v0.re, v0.im, vp0.re, vp0.im];

    let mut monodromy = MonodromyMatrix::identity();
    let up = MonodromyMatrix::cut_crossing_up();
    let down = up.inverse();

    // Cut-crossing bookkeeping over the stream of accepted step endpoints.
    // A point landing exactly on the axis defers the decision to the next
    // off-axis point (equivalent to nudging the landing 1e-9 toward the
    // side it came from: touch-and-return does not cross).
    let mut prev_sign = if z0.im > 0.0 {
        1i8
    } else if z0.im < 0.0 {
        -1
    } else {
        0
    };
    let mut prev_point = z0;
    let mut stashed_re: Option<f64> = None;

    let opts = OdeOptions {
        rel_tol: 1e-12,
        abs_tol: 1e-12,
        max_step: 1.0,
    };

    for pair in path.waypoints().windows(2) {
        let (za, zb) = (pair[0], pair[1]);
        let dz = zb - za;
        let seg_opts = OdeOptions {
            max_step: (path.max_step() / dz.abs()).min(1.0),
            ..opts
        };
        integrate(
            |s, y, dy| {
                let z = za + dz.scale(s);
                let denom = z - z * z;
                for c in 0..2 {
                    let f = ComplexValue::new(y[4 * c], y[4 * c + 1]);
                    let fp = ComplexValue::new(y[4 * c + 2], y[4 * c + 3]);
                    let fpp = (f.scale(0.25) - (ONE - z.scale(2.0)) * fp) / denom;
                    let df = dz * fp;
                    let dfp = dz * fpp;
                    dy[4 * c] = df.re;
                    dy[4 * c + 1] = df.im;
                    dy[4 * c + 2] = dfp.re;
                    dy[4 * c + 3] = dfp.im;
                }
            },
            0.0,
            1.0,
            &mut state,
            &seg_opts,
            |_, s_new, _| {
                let z_new = za + dz.scale(s_new);
                let sign_new = if z_new.im > 0.0 {
                    1i8
                } else if z_new.im < 0.0 {
                    -1
                } else {
                    0
                };
                if sign_new == 0 {
                    if stashed_re.is_none() {
                        stashed_re = Some(z_new.re);
                    }
                } else {
                    if prev_sign != 0 && sign_new != prev_sign {
                        let re_cross = stashed_re.take().unwrap_or_else(|| {
                            let t = prev_point.im / (prev_point.im - z_new.im);
                            prev_point.re + t * (z_new.re - prev_point.re)
                        });
                        if re_cross > 1.0 {
                            let m = if sign_new > 0 { &up } else { &down };
                            monodromy = m.mul(&monodromy);
                        }
                    } else {
                        stashed_re = None;
                    }
                    prev_sign = sign_new;
                }
                prev_point = z_new;
            },
        )?;
    }

    Ok(BranchState {
        base_values: [
            ComplexValue::new(state[0], state[1]),
            ComplexValue::new(state[4], state[5]),
        ],
        derivatives: [
            ComplexValue::new(state[2], state[3]),
            ComplexValue::new(state[6], state[7]),
        ],
        accumulated_monodromy: monodromy,
        current_point: path.end(),
    })
}
