//! Modular lambda and j values through period ratios.
//!
//! For z off the real cuts, tau(z) = i K(1-z) / K(z) lies in the upper half
//! plane, and z is the modular lambda value of that tau.  Inverting the map
//! (finding lambda for a given tau in the level-2 fundamental domain) is
//! done numerically with a damped Newton iteration seeded from a cached
//! grid of forward evaluations.  j comes from lambda by the classical
//! rational expression.

use crate::complex::{ComplexValue, I, ONE};
use crate::elliptic::k_principal;
use crate::error::{Error, Result};
use std::sync::OnceLock;

/// Period ratio tau(z) = i K(1-z) / K(z).
///
/// z = 0 and z = 1 are degenerate (one period diverges); other real z
/// outside (0, 1) sit on a branch cut of one of the two periods.
pub fn tau_from_z(z: ComplexValue) -> Result<ComplexValue> {
    if !z.is_finite() {
        return Err(Error::Domain("tau requires a finite argument".into()));
    }
    if z.im == 0.0 && (z.re == 0.0 || z.re == 1.0) {
        return Err(Error::Domain(format!(
            "tau is undefined at z = {}: a period degenerates",
            z.re
        )));
    }
    if z.im == 0.0 && !(0.0 < z.re && z.re < 1.0) {
        return Err(Error::BranchCut(
            "tau on real z outside (0, 1) sits on a period's branch cut".into(),
        ));
    }
    let k = k_principal(z)?;
    let k_comp = k_principal(ONE - z)?;
    Ok(I * k_comp / k)
}

/// Membership in the closed level-2 fundamental domain:
/// Im tau > 0, |Re tau| <= 1, |2 tau - 1| >= 1 and |2 tau + 1| >= 1.
pub fn in_fundamental_domain(tau: ComplexValue) -> bool {
    if !(tau.im > 0.0) || tau.re.abs() > 1.0 {
        return false;
    }
    let two = tau.scale(2.0);
    (two - ONE).abs() >= 1.0 && (two + ONE).abs() >= 1.0
}

#[derive(Clone, Copy, Debug)]
pub struct LambdaSolution {
    pub lambda: ComplexValue,
    /// |tau(lambda) - tau| at the accepted point.
    pub residual: f64,
}

const NEWTON_TOL: f64 = 1e-9;
const NEWTON_MAX_ITERS: usize = 200;

fn tau_checked(z: ComplexValue) -> Option<ComplexValue> {
    match tau_from_z(z) {
        Ok(t) if t.is_finite() => Some(t),
        _ => None,
    }
}

/// Forward evaluations of tau over a grid covering the lambda region the
/// inverse problem starts from; computed once.
fn seed_grid() -> &'static Vec<(ComplexValue, ComplexValue)> {
    static GRID: OnceLock<Vec<(ComplexValue, ComplexValue)>> = OnceLock::new();
    GRID.get_or_init(|| {
        let mut grid = Vec::with_capacity(1600);
        for i in 0..40 {
            let re = 0.02 + 0.96 * (i as f64) / 39.0;
            for j in 0..40 {
                let im = -0.4 + 0.8 * (j as f64) / 39.0;
                let z = ComplexValue::new(re, im);
                if let Some(t) = tau_checked(z) {
                    grid.push((z, t));
                }
            }
        }
        grid
    })
}

/// Invert tau(lambda) = tau for tau in the fundamental domain.
pub fn lambda_from_tau(tau: ComplexValue) -> Result<LambdaSolution> {
    if !tau.is_finite() {
        return Err(Error::Domain("tau must be finite".into()));
    }
    if !in_fundamental_domain(tau) {
        return Err(Error::Domain(
            "tau is outside the level-2 fundamental domain".into(),
        ));
    }
    let mut z = ComplexValue::new(0.5, 0.0);
    let mut best = f64::INFINITY;
    for (seed, t) in seed_grid() {
        let d = (*t - tau).abs();
        if d < best {
            best = d;
            z = *seed;
        }
    }
    let mut g = match tau_checked(z) {
        Some(t) => t - tau,
        None => {
            return Err(Error::Convergence(
                "could not evaluate tau at the seed".into(),
            ))
        }
    };
    let h = 1e-6;
    for _ in 0..NEWTON_MAX_ITERS {
        if g.abs() < NEWTON_TOL {
            return Ok(LambdaSolution {
                lambda: z,
                residual: g.abs(),
            });
        }
        let (tp, tm) = match (
            tau_checked(z + ComplexValue::real(h)),
            tau_checked(z - ComplexValue::real(h)),
        ) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(Error::Convergence(
                    "tau could not be differentiated near the iterate".into(),
                ))
            }
        };
        let gp = (tp - tm).scale(1.0 / (2.0 * h));
        if gp.abs() < 1e-14 {
            return Err(Error::Convergence(
                "the derivative of tau vanished during the inversion".into(),
            ));
        }
        let step = g / gp;
        let mut improved = false;
        for k in 0..7 {
            let damp = 0.5_f64.powi(k);
            let zt = z - step.scale(damp);
            if let Some(t) = tau_checked(zt) {
                let gt = t - tau;
                if gt.abs() < g.abs() {
                    z = zt;
                    g = gt;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            return Err(Error::Convergence(
                "the lambda iteration stalled before reaching tolerance".into(),
            ));
        }
    }
    Err(Error::Convergence(format!(
        "lambda did not converge within {NEWTON_MAX_ITERS} iterations"
    )))
}

/// j = 256 (1 - lambda + lambda^2)^3 / (lambda^2 (1 - lambda)^2).
pub fn j_from_lambda(lambda: ComplexValue) -> Result<ComplexValue> {
    if !lambda.is_finite() {
        return Err(Error::Domain("lambda must be finite".into()));
    }
    let one = ONE;
    let denom_factor = lambda * (one - lambda);
    if denom_factor.abs() == 0.0 {
        return Err(Error::Pole("j has a pole at lambda in {0, 1}".into()));
    }
    let num = one - lambda + lambda * lambda;
    Ok((num * num * num).scale(256.0) / (denom_factor * denom_factor))
}

/// j for a tau in the fundamental domain, together with the lambda value
/// the inversion found.
pub fn j_from_tau(tau: ComplexValue) -> Result<(ComplexValue, LambdaSolution)> {
    let sol = lambda_from_tau(tau)?;
    let j = j_from_lambda(sol.lambda)?;
    Ok((j, sol))
}
