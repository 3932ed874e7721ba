//! Adaptive Runge-Kutta-Fehlberg 4(5) integration over real state vectors.
//!
//! Used for analytic continuation of the hypergeometric equation along
//! paths (8 real dimensions) and for evaluating definable chains along
//! polylines in their base space.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct OdeOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum step in the integration parameter.
    pub max_step: f64,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            abs_tol: 1e-12,
            max_step: 0.1,
        }
    }
}

const MAX_STEPS: usize = 2_000_000;

/// Integrate dy/ds = rhs(s, y) from s0 to s1 (s1 > s0), updating y in place.
/// The observer fires once per accepted step with (s_prev, s_new, y_new).
pub fn integrate<F, O>(
    mut rhs: F,
    s0: f64,
    s1: f64,
    y: &mut [f64],
    opts: &OdeOptions,
    mut observer: O,
) -> Result<()>
where
    F: FnMut(f64, &[f64], &mut [f64]),
    O: FnMut(f64, f64, &[f64]),
{
    assert!(s1 > s0, "integration interval must be forward");
    let n = y.len();
    let span = s1 - s0;
    let h_min = span * 1e-14;

    let mut k = vec![vec![0.0; n]; 6];
    let mut stage = vec![0.0; n];
    let mut y5 = vec![0.0; n];

    let mut s = s0;
    let mut h = opts.max_step.min(span);
    let mut steps = 0usize;

    while s < s1 {
        steps += 1;
        if steps > MAX_STEPS {
            return Err(Error::Step(format!(
                "step budget exhausted at s = {s:.6} of {s1:.6}"
            )));
        }
        if h < h_min {
            return Err(Error::Step(format!(
                "step size underflow ({h:.3e}) at s = {s:.6}"
            )));
        }
        if s + h > s1 {
            h = s1 - s;
        }

        rhs(s, y, &mut k[0]);
        // Fehlberg tableau.
        for i in 0..n {
            stage[i] = y[i] + h * 0.25 * k[0][i];
        }
        rhs(s + 0.25 * h, &stage, &mut k[1]);
        for i in 0..n {
            stage[i] = y[i] + h * (3.0 / 32.0 * k[0][i] + 9.0 / 32.0 * k[1][i]);
        }
        rhs(s + 3.0 / 8.0 * h, &stage, &mut k[2]);
        for i in 0..n {
            stage[i] = y[i]
                + h * (1932.0 / 2197.0 * k[0][i] - 7200.0 / 2197.0 * k[1][i]
                    + 7296.0 / 2197.0 * k[2][i]);
        }
        rhs(s + 12.0 / 13.0 * h, &stage, &mut k[3]);
        for i in 0..n {
            stage[i] = y[i]
                + h * (439.0 / 216.0 * k[0][i] - 8.0 * k[1][i] + 3680.0 / 513.0 * k[2][i]
                    - 845.0 / 4104.0 * k[3][i]);
        }
        rhs(s + h, &stage, &mut k[4]);
        for i in 0..n {
            stage[i] = y[i]
                + h * (-8.0 / 27.0 * k[0][i] + 2.0 * k[1][i] - 3544.0 / 2565.0 * k[2][i]
                    + 1859.0 / 4104.0 * k[3][i]
                    - 11.0 / 40.0 * k[4][i]);
        }
        rhs(s + 0.5 * h, &stage, &mut k[5]);

        let mut err_norm = 0.0f64;
        for i in 0..n {
            y5[i] = y[i]
                + h * (16.0 / 135.0 * k[0][i]
                    + 6656.0 / 12825.0 * k[2][i]
                    + 28561.0 / 56430.0 * k[3][i]
                    - 9.0 / 50.0 * k[4][i]
                    + 2.0 / 55.0 * k[5][i]);
            let y4 = y[i]
                + h * (25.0 / 216.0 * k[0][i]
                    + 1408.0 / 2565.0 * k[2][i]
                    + 2197.0 / 4104.0 * k[3][i]
                    - 1.0 / 5.0 * k[4][i]);
            let scale = opts.abs_tol + opts.rel_tol * y[i].abs().max(y5[i].abs());
            let e = (y5[i] - y4).abs() / scale;
            // f64::max ignores NaN, so overflow must be rejected explicitly.
            if !e.is_finite() || !y5[i].is_finite() {
                err_norm = f64::INFINITY;
                break;
            }
            err_norm = err_norm.max(e);
        }

        if err_norm <= 1.0 {
            let s_new = s + h;
            y.copy_from_slice(&y5);
            observer(s, s_new, y);
            s = s_new;
        }
        let factor = if err_norm > 0.0 {
            (0.9 * err_norm.powf(-0.2)).clamp(0.1, 4.0)
        } else {
            4.0
        };
        h = (h * factor).min(opts.max_step);
    }
    Ok(())
}
