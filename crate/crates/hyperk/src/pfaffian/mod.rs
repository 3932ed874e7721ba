//! Symbolic chains of functions closed under differentiation.
//!
//! A chain over base variables x_1..x_n is a sequence of functions
//! y_1..y_N together with polynomial tables P[i][k] expressing each partial
//! derivative: dy_i/dx_k = P[i][k](x, y).  A chain is *triangular* when
//! P[i][k] only references y_1..y_i, and *integrable* when the mixed total
//! derivatives agree symbolically.  Triangular and integrable means the
//! chain is pfaffian; integrable without triangularity is noetherian.
//!
//! The module provides the verifier, closure constructions (sums, products,
//! reciprocals), pull-backs along polynomial map chains, a builder for
//! first-order complex-linear equations, a builder for complex Riccati
//! systems, and numeric integration of a chain along a piecewise-linear
//! path in the base space.

pub mod dsl;
pub mod poly;

use crate::error::{Error, Result};
use crate::ode::{self, OdeOptions};
use num_rational::BigRational;
use num_traits::One;
pub use poly::{PolynomialExpr, VarRef};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainKind {
    Pfaffian,
    Noetherian,
}

impl fmt::Display for ChainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainKind::Pfaffian => write!(f, "pfaffian"),
            ChainKind::Noetherian => write!(f, "noetherian"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifiedKind {
    Pfaffian,
    Noetherian,
    Invalid,
}

impl fmt::Display for VerifiedKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifiedKind::Pfaffian => write!(f, "pfaffian"),
            VerifiedKind::Noetherian => write!(f, "noetherian"),
            VerifiedKind::Invalid => write!(f, "invalid"),
        }
    }
}

fn kind_rank(k: VerifiedKind) -> u8 {
    match k {
        VerifiedKind::Pfaffian => 2,
        VerifiedKind::Noetherian => 1,
        VerifiedKind::Invalid => 0,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainFunction {
    pub name: String,
    /// One polynomial per base variable: dy/dx_k = table[k](x, y).
    pub table: Vec<PolynomialExpr>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainSpec {
    pub n_base_vars: usize,
    pub base_var_names: Vec<String>,
    pub functions: Vec<ChainFunction>,
    pub base_point: Vec<f64>,
    pub initial_values: Vec<f64>,
    pub declared_kind: ChainKind,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl ChainSpec {
    pub fn new(
        base_var_names: Vec<String>,
        functions: Vec<ChainFunction>,
        base_point: Vec<f64>,
        initial_values: Vec<f64>,
        declared_kind: ChainKind,
    ) -> Result<Self> {
        let n = base_var_names.len();
        if n == 0 {
            return Err(Error::Domain(
                "a chain needs at least one base variable".into(),
            ));
        }
        let mut seen: Vec<&str> = Vec::new();
        for name in base_var_names
            .iter()
            .map(|s| s.as_str())
            .chain(functions.iter().map(|f| f.name.as_str()))
        {
            if !is_identifier(name) {
                return Err(Error::Domain(format!(
                    "'{name}' is not a valid variable name"
                )));
            }
            if seen.contains(&name) {
                return Err(Error::Domain(format!("duplicate variable name '{name}'")));
            }
            seen.push(name);
        }
        for f in &functions {
            if f.table.len() != n {
                return Err(Error::Domain(format!(
                    "function '{}' has {} derivative entries but there are {} base variables",
                    f.name,
                    f.table.len(),
                    n
                )));
            }
        }
        if base_point.len() != n {
            return Err(Error::Domain(format!(
                "base point has {} coordinates but there are {} base variables",
                base_point.len(),
                n
            )));
        }
        if initial_values.len() != functions.len() {
            return Err(Error::Domain(format!(
                "{} initial values for {} chain functions",
                initial_values.len(),
                functions.len()
            )));
        }
        if !base_point
            .iter()
            .chain(initial_values.iter())
            .all(|v| v.is_finite())
        {
            return Err(Error::Domain(
                "base point and initial values must be finite".into(),
            ));
        }
        Ok(Self {
            n_base_vars: n,
            base_var_names,
            functions,
            base_point,
            initial_values,
            declared_kind,
        })
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    fn function_index(&self, name: &str) -> Option<usize> {
        self.functions.iter().position(|f| f.name == name)
    }

    fn fresh_name(&self, want: &str) -> String {
        let taken = |s: &str| {
            self.base_var_names.iter().any(|n| n == s) || self.function_index(s).is_some()
        };
        if !taken(want) {
            return want.to_string();
        }
        let mut k = 2usize;
        loop {
            let cand = format!("{want}_{k}");
            if !taken(&cand) {
                return cand;
            }
            k += 1;
        }
    }

    /// Display name for a chain variable index, falling back to a synthetic
    /// name for out-of-range references so witnesses can still print.
    fn chain_display_names(&self, upto: usize) -> Vec<String> {
        let mut names: Vec<String> = self.functions.iter().map(|f| f.name.clone()).collect();
        while names.len() < upto {
            names.push(format!("y{}", names.len() + 1));
        }
        names
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub kind: VerifiedKind,
    pub witness: Option<String>,
}

/// Total derivative of `p` along base variable k, using the chain's tables
/// for the chain variables: D_k(p) = dp/dx_k + sum_m P[m][k] * dp/dy_m.
fn total_derivative(spec: &ChainSpec, p: &PolynomialExpr, k: usize) -> PolynomialExpr {
    let mut out = p.d_base(k);
    if let Some(max_chain) = p.max_chain_index() {
        for m in 0..=max_chain.min(spec.functions.len().saturating_sub(1)) {
            let dp = p.d_chain(m);
            if dp.is_zero() {
                continue;
            }
            out = out.add(&dp.mul(&spec.functions[m].table[k]));
        }
    }
    out
}

/// Classify a chain: check that every table entry references only variables
/// that exist, then triangularity, then symbolic integrability of the mixed
/// total derivatives.  Returns the computed kind with a witness when the
/// chain is invalid.
pub fn verify_chain(spec: &ChainSpec) -> VerifyReport {
    let n = spec.n_base_vars;
    let nfun = spec.functions.len();
    // Range check: a table may not reference variables that do not exist.
    for (i, f) in spec.functions.iter().enumerate() {
        for (k, p) in f.table.iter().enumerate() {
            if let Some(maxb) = p.max_base_index() {
                if maxb >= n {
                    return VerifyReport {
                        kind: VerifiedKind::Invalid,
                        witness: Some(format!(
                            "derivative of '{}' with respect to '{}' references base variable #{}, but there are only {}",
                            f.name,
                            spec.base_var_names[k],
                            maxb + 1,
                            n
                        )),
                    };
                }
            }
            if let Some(maxc) = p.max_chain_index() {
                if maxc >= nfun {
                    return VerifyReport {
                        kind: VerifiedKind::Invalid,
                        witness: Some(format!(
                            "derivative of '{}' with respect to '{}' references chain function #{}, but the chain has only {}",
                            f.name,
                            spec.base_var_names[k],
                            maxc + 1,
                            nfun
                        )),
                    };
                }
            }
        }
        let _ = i;
    }
    // Triangularity: function i may reference chain variables 1..=i.
    let mut triangular = true;
    'tri: for (i, f) in spec.functions.iter().enumerate() {
        for p in &f.table {
            if let Some(maxc) = p.max_chain_index() {
                if maxc > i {
                    triangular = false;
                    break 'tri;
                }
            }
        }
    }
    // Integrability: D_k(P[i][j]) == D_j(P[i][k]) for all i and j < k.
    for (i, f) in spec.functions.iter().enumerate() {
        for j in 0..n {
            for k in (j + 1)..n {
                let left = total_derivative(spec, &f.table[j], k);
                let right = total_derivative(spec, &f.table[k], j);
                let diff = left.sub(&right);
                if !diff.is_zero() {
                    let chain_names = spec.chain_display_names(nfun);
                    return VerifyReport {
                        kind: VerifiedKind::Invalid,
                        witness: Some(format!(
                            "mixed derivatives of '{}' disagree between '{}' and '{}': difference {}",
                            f.name,
                            spec.base_var_names[j],
                            spec.base_var_names[k],
                            poly::format_poly(&diff, &spec.base_var_names, &chain_names)
                        )),
                    };
                }
            }
        }
        let _ = i;
    }
    VerifyReport {
        kind: if triangular {
            VerifiedKind::Pfaffian
        } else {
            VerifiedKind::Noetherian
        },
        witness: None,
    }
}

const BLOWUP_LIMIT: f64 = 1e12;

/// Integrate the chain along a piecewise-linear path in the base space.
/// The first path point must equal the chain's base point.  Values growing
/// beyond 1e12 in magnitude are reported as a blow-up.
pub fn integrate_chain(spec: &ChainSpec, path: &[Vec<f64>]) -> Result<Vec<f64>> {
    integrate_chain_observed(spec, path, |_, _| {})
}

/// Same as [`integrate_chain`] but invokes the observer with the base point
/// and the chain values after every accepted step.
pub fn integrate_chain_observed<O: FnMut(&[f64], &[f64])>(
    spec: &ChainSpec,
    path: &[Vec<f64>],
    mut observer: O,
) -> Result<Vec<f64>> {
    if path.is_empty() {
        return Err(Error::Domain("integration path is empty".into()));
    }
    for p in path {
        if p.len() != spec.n_base_vars {
            return Err(Error::Domain(format!(
                "path point has {} coordinates but the chain has {} base variables",
                p.len(),
                spec.n_base_vars
            )));
        }
        if !p.iter().all(|v| v.is_finite()) {
            return Err(Error::Domain("path points must be finite".into()));
        }
    }
    let start_err: f64 = path[0]
        .iter()
        .zip(&spec.base_point)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if start_err > 1e-9 {
        return Err(Error::Domain(
            "integration path must start at the chain's base point".into(),
        ));
    }
    let n = spec.n_base_vars;
    let mut y = spec.initial_values.clone();
    let mut blew_up = false;
    let mut peak: f64 = y.iter().fold(0.0, |a, v| a.max(v.abs()));
    let opts = OdeOptions {
        rel_tol: 1e-12,
        abs_tol: 1e-12,
        max_step: 0.05,
    };
    for seg in path.windows(2) {
        let (p, q) = (&seg[0], &seg[1]);
        if p == q {
            continue;
        }
        let mut base = vec![0.0; n];
        let result = ode::integrate(
            |s, state, dy| {
                if blew_up || state.iter().any(|v| v.abs() > BLOWUP_LIMIT) {
                    blew_up = true;
                    dy.iter_mut().for_each(|d| *d = 0.0);
                    return;
                }
                for k in 0..n {
                    base[k] = p[k] + s * (q[k] - p[k]);
                }
                for (i, f) in spec.functions.iter().enumerate() {
                    let mut acc = 0.0;
                    for k in 0..n {
                        let dx = q[k] - p[k];
                        if dx != 0.0 {
                            acc += f.table[k].eval(&base, state) * dx;
                        }
                    }
                    dy[i] = acc;
                }
            },
            0.0,
            1.0,
            &mut y,
            &opts,
            |_, s_new, state| {
                for v in state {
                    peak = peak.max(v.abs());
                }
                let mut pt = vec![0.0; n];
                for k in 0..n {
                    pt[k] = p[k] + s_new * (q[k] - p[k]);
                }
                observer(&pt, state);
            },
        );
        if blew_up {
            return Err(Error::Blowup(format!(
                "chain function values exceeded {BLOWUP_LIMIT:e} during integration"
            )));
        }
        if let Err(e) = result {
            // Step-size collapse while the values are already huge means the
            // solution is running into a pole; report it as a blow-up.
            if matches!(e, Error::Step(_)) && peak > 1e9 {
                return Err(Error::Blowup(
                    "chain integration ran into a pole of the solution".into(),
                ));
            }
            return Err(e);
        }
    }
    Ok(y)
}

/// Append the sum of functions i and j as a new chain function.
pub fn closure_sum(spec: &ChainSpec, i: usize, j: usize) -> Result<ChainSpec> {
    check_index(spec, i)?;
    check_index(spec, j)?;
    let name = spec.fresh_name(&format!(
        "{}_plus_{}",
        spec.functions[i].name, spec.functions[j].name
    ));
    let table: Vec<PolynomialExpr> = (0..spec.n_base_vars)
        .map(|k| spec.functions[i].table[k].add(&spec.functions[j].table[k]))
        .collect();
    let init = spec.initial_values[i] + spec.initial_values[j];
    append_function(spec, name, table, init, None)
}

/// Append the product of functions i and j.  The raw product-rule table is
/// rewritten so occurrences of y_i*y_j collapse to the new variable; the
/// rewrite is kept only when it does not degrade the verified kind.
pub fn closure_product(spec: &ChainSpec, i: usize, j: usize) -> Result<ChainSpec> {
    check_index(spec, i)?;
    check_index(spec, j)?;
    let name = spec.fresh_name(&format!(
        "{}_times_{}",
        spec.functions[i].name, spec.functions[j].name
    ));
    let yi = PolynomialExpr::chain_var(i);
    let yj = PolynomialExpr::chain_var(j);
    let table: Vec<PolynomialExpr> = (0..spec.n_base_vars)
        .map(|k| {
            yj.mul(&spec.functions[i].table[k])
                .add(&yi.mul(&spec.functions[j].table[k]))
        })
        .collect();
    let init = spec.initial_values[i] * spec.initial_values[j];
    let rule: Vec<(usize, u16)> = if i == j {
        vec![(i, 2)]
    } else {
        vec![(i, 1), (j, 1)]
    };
    append_function(spec, name, table, init, Some((rule, true)))
}

/// Append the reciprocal of function i.  Rejected when the initial value is
/// zero.  Occurrences of y_i*y_new in the raw table collapse to 1 when the
/// rewrite preserves the verified kind.
pub fn closure_reciprocal(spec: &ChainSpec, i: usize) -> Result<ChainSpec> {
    check_index(spec, i)?;
    if spec.initial_values[i] == 0.0 {
        return Err(Error::ZeroDivision(format!(
            "cannot take the reciprocal of '{}': its value at the base point is 0",
            spec.functions[i].name
        )));
    }
    let name = spec.fresh_name(&format!("recip_{}", spec.functions[i].name));
    let new_idx = spec.functions.len();
    let y_new = PolynomialExpr::chain_var(new_idx);
    let neg_sq = y_new.mul(&y_new).neg();
    let table: Vec<PolynomialExpr> = (0..spec.n_base_vars)
        .map(|k| neg_sq.mul(&spec.functions[i].table[k]))
        .collect();
    let init = 1.0 / spec.initial_values[i];
    append_function(
        spec,
        name,
        table,
        init,
        Some((vec![(i, 1), (new_idx, 1)], false)),
    )
}

fn check_index(spec: &ChainSpec, i: usize) -> Result<()> {
    if i >= spec.functions.len() {
        return Err(Error::Domain(format!(
            "chain has {} functions, index {} does not exist",
            spec.functions.len(),
            i
        )));
    }
    Ok(())
}

/// Shared tail of the closure constructions: optionally rewrite the raw
/// table (`rule`, with `to_new` choosing whether the pattern becomes the
/// new variable or collapses to 1), verify both candidates, and keep the
/// rewrite only when its verified kind is at least as good.
fn append_function(
    spec: &ChainSpec,
    name: String,
    raw_table: Vec<PolynomialExpr>,
    init: f64,
    rule: Option<(Vec<(usize, u16)>, bool)>,
) -> Result<ChainSpec> {
    let new_idx = spec.functions.len();
    let build = |table: Vec<PolynomialExpr>| -> ChainSpec {
        let mut out = spec.clone();
        out.functions.push(ChainFunction {
            name: name.clone(),
            table,
        });
        out.initial_values.push(init);
        out
    };
    let raw = build(raw_table.clone());
    let chosen = match rule {
        None => raw,
        Some((pattern, to_new)) => {
            let target = if to_new { Some(new_idx) } else { None };
            let rewritten_table: Vec<PolynomialExpr> = raw_table
                .iter()
                .map(|p| p.rewrite_chain_product(&pattern, target))
                .collect();
            if rewritten_table == raw_table {
                raw
            } else {
                let rewritten = build(rewritten_table);
                if kind_rank(verify_chain(&rewritten).kind) >= kind_rank(verify_chain(&raw).kind) {
                    rewritten
                } else {
                    raw
                }
            }
        }
    };
    let report = verify_chain(&chosen);
    let mut out = chosen;
    out.declared_kind = match report.kind {
        VerifiedKind::Pfaffian => ChainKind::Pfaffian,
        VerifiedKind::Noetherian => ChainKind::Noetherian,
        VerifiedKind::Invalid => {
            return Err(Error::Composition(format!(
                "closure produced an invalid chain: {}",
                report.witness.unwrap_or_default()
            )))
        }
    };
    Ok(out)
}

/// Pull a chain back along a polynomial map whose components are functions
/// of another chain.  `coords[j]` names the map-chain function providing
/// the j-th coordinate of the map.  The result lives over the map chain's
/// base space and contains the map chain followed by the composed
/// functions.
pub fn pull_back(spec: &ChainSpec, map_chain: &ChainSpec, coords: &[usize]) -> Result<ChainSpec> {
    if coords.len() != spec.n_base_vars {
        return Err(Error::Composition(format!(
            "the chain has {} base variables but the map provides {} coordinates",
            spec.n_base_vars,
            coords.len()
        )));
    }
    for &c in coords {
        if c >= map_chain.functions.len() {
            return Err(Error::Composition(format!(
                "map chain has {} functions, coordinate index {} does not exist",
                map_chain.functions.len(),
                c
            )));
        }
    }
    let m = map_chain.functions.len();
    let n = map_chain.n_base_vars;
    let base_to: Vec<VarRef> = coords.iter().map(|&c| VarRef::Chain(c)).collect();
    let chain_to: Vec<VarRef> = (0..spec.functions.len())
        .map(|i| VarRef::Chain(m + i))
        .collect();

    let mut out = map_chain.clone();
    for f in &spec.functions {
        let name = out.fresh_name(&f.name);
        let table: Vec<PolynomialExpr> = (0..n)
            .map(|k| {
                let mut acc = PolynomialExpr::zero();
                for (j, &c) in coords.iter().enumerate() {
                    let remapped = f.table[j].remap(&base_to, &chain_to);
                    acc = acc.add(&remapped.mul(&map_chain.functions[c].table[k]));
                }
                acc
            })
            .collect();
        out.functions.push(ChainFunction { name, table });
    }

    // Initial values of the composed functions: the chain's functions
    // evaluated at the image of the map's base point.
    let image: Vec<f64> = coords
        .iter()
        .map(|&c| map_chain.initial_values[c])
        .collect();
    let at_base = image
        .iter()
        .zip(&spec.base_point)
        .all(|(a, b)| (a - b).abs() <= 1e-9);
    let composed_inits = if at_base {
        spec.initial_values.clone()
    } else {
        integrate_chain(spec, &[spec.base_point.clone(), image])?
    };
    out.initial_values.extend(composed_inits);

    let report = verify_chain(&out);
    out.declared_kind = match report.kind {
        VerifiedKind::Pfaffian => ChainKind::Pfaffian,
        VerifiedKind::Noetherian => ChainKind::Noetherian,
        VerifiedKind::Invalid => {
            return Err(Error::Composition(format!(
                "pull-back produced an invalid chain: {}",
                report.witness.unwrap_or_default()
            )))
        }
    };
    Ok(out)
}

/// Build the pfaffian chain for a first-order complex-linear equation
/// f'(z) = (a + i b)(z) f(z) + (h1 + i h2)(z) on the base variables
/// (x, y) = (Re z, Im z).
///
/// `a` and `b` are polynomials in the base variables forming the real and
/// imaginary parts of a holomorphic coefficient, so they must satisfy the
/// Cauchy-Riemann equations symbolically; the same holds for the optional
/// inhomogeneous pair.  `f0` is the value (u0, v0) of a reference
/// homogeneous solution at the base point and must have v0 != 0.  For the
/// inhomogeneous equation, `f_inhom` gives the full solution's value at the
/// base point (defaults to (0, 0)).
///
/// The homogeneous chain consists of q0 = u/v, q1 = 1/v, q2 = v, q3 = u;
/// the inhomogeneous extension adds r = 1/(1 + q0^2), the variation
/// coefficients c1, c2 of C = f/f_hom, and the solution components u, v.
/// The reciprocal enters through r because its collapsed derivative table
/// 2 q0 r (b, a) keeps every mixed-derivative identity exactly polynomial;
/// a table built on 1/(q2^2 + q3^2) would verify only modulo the relation
/// defining it, which the symbolic checker rightly rejects.
pub fn first_order_linear_chain(
    a: &PolynomialExpr,
    b: &PolynomialExpr,
    h: Option<(&PolynomialExpr, &PolynomialExpr)>,
    base_point: [f64; 2],
    f0: (f64, f64),
    f_inhom: Option<(f64, f64)>,
) -> Result<ChainSpec> {
    let check_pair = |re: &PolynomialExpr, im: &PolynomialExpr, what: &str| -> Result<()> {
        if re.max_chain_index().is_some() || im.max_chain_index().is_some() {
            return Err(Error::Domain(format!(
                "{what} must be polynomials in the base variables only"
            )));
        }
        if re.max_base_index().map_or(false, |i| i > 1)
            || im.max_base_index().map_or(false, |i| i > 1)
        {
            return Err(Error::Domain(format!(
                "{what} may only reference the two base variables"
            )));
        }
        let cr1 = re.d_base(0).sub(&im.d_base(1));
        let cr2 = re.d_base(1).add(&im.d_base(0));
        if !cr1.is_zero() || !cr2.is_zero() {
            return Err(Error::Domain(format!(
                "{what} do not satisfy the Cauchy-Riemann equations"
            )));
        }
        Ok(())
    };
    check_pair(a, b, "the coefficient parts")?;
    if let Some((h1, h2)) = h {
        check_pair(h1, h2, "the inhomogeneous parts")?;
    }
    let (u0, v0) = f0;
    if v0 == 0.0 {
        return Err(Error::Domain(
            "the reference solution value at the base point must have nonzero imaginary part"
                .into(),
        ));
    }
    if !(u0.is_finite() && v0.is_finite()) {
        return Err(Error::Domain("initial values must be finite".into()));
    }

    let one = PolynomialExpr::constant(BigRational::one());
    let q0 = PolynomialExpr::chain_var(0);
    let q1 = PolynomialExpr::chain_var(1);
    let q2 = PolynomialExpr::chain_var(2);

    // Shared holomorphic factors: f'/f = (a + i b) gives
    //   v_x / v = b q0 + a        u_x / u-side analogue: a q0 - b.
    let s_plus = b.mul(&q0).add(a); // b q0 + a
    let s_minus = a.mul(&q0).sub(b); // a q0 - b
    let one_plus_q0sq = one.add(&q0.mul(&q0));

    let mut functions = vec![
        ChainFunction {
            name: "q0".into(),
            table: vec![b.mul(&one_plus_q0sq).neg(), a.mul(&one_plus_q0sq).neg()],
        },
        ChainFunction {
            name: "q1".into(),
            table: vec![s_plus.mul(&q1).neg(), s_minus.mul(&q1).neg()],
        },
        ChainFunction {
            name: "q2".into(),
            table: vec![s_plus.mul(&q2), s_minus.mul(&q2)],
        },
        ChainFunction {
            name: "q3".into(),
            table: vec![s_minus.mul(&q2), s_plus.mul(&q2).neg()],
        },
    ];
    let mut inits = vec![u0 / v0, 1.0 / v0, v0, u0];

    if let Some((h1, h2)) = h {
        let q2 = PolynomialExpr::chain_var(2);
        let q3 = PolynomialExpr::chain_var(3);
        let r = PolynomialExpr::chain_var(4);
        let c1 = PolynomialExpr::chain_var(5);
        let c2 = PolynomialExpr::chain_var(6);

        // dr = 2 q0 r (b dx + a dy): the derivative of 1/(1 + q0^2) with
        // the factor r (1 + q0^2) already collapsed to 1.
        let two_q0_r = q0.mul(&r).scale(&BigRational::from_integer(2.into()));
        let r_table = vec![b.mul(&two_q0_r), a.mul(&two_q0_r)];

        // C' = (h1 + i h2) q1 r (q0 - i) componentwise.
        let q1r = q1.mul(&r);
        let c1_x = q1r.mul(&h1.mul(&q0).add(h2));
        let c1_y = q1r.mul(&h1.sub(&h2.mul(&q0)));
        let c1_table = vec![c1_x.clone(), c1_y.clone()];
        let c2_table = vec![c1_y.neg(), c1_x];

        // u = c1 q3 - c2 q2, v = c1 q2 + c2 q3, expanded by the product rule.
        let u_table: Vec<PolynomialExpr> = (0..2)
            .map(|k| {
                c1_table[k]
                    .mul(&q3)
                    .add(&c1.mul(&functions[3].table[k]))
                    .sub(&c2_table[k].mul(&q2))
                    .sub(&c2.mul(&functions[2].table[k]))
            })
            .collect();
        let v_table: Vec<PolynomialExpr> = (0..2)
            .map(|k| {
                c1_table[k]
                    .mul(&q2)
                    .add(&c1.mul(&functions[2].table[k]))
                    .add(&c2_table[k].mul(&q3))
                    .add(&c2.mul(&functions[3].table[k]))
            })
            .collect();

        functions.push(ChainFunction {
            name: "r".into(),
            table: r_table,
        });
        functions.push(ChainFunction {
            name: "c1".into(),
            table: c1_table,
        });
        functions.push(ChainFunction {
            name: "c2".into(),
            table: c2_table,
        });
        functions.push(ChainFunction {
            name: "u".into(),
            table: u_table,
        });
        functions.push(ChainFunction {
            name: "v".into(),
            table: v_table,
        });

        let (uf, vf) = f_inhom.unwrap_or((0.0, 0.0));
        let norm = u0 * u0 + v0 * v0;
        let r0 = v0 * v0 / norm;
        let c1_0 = (uf * u0 + vf * v0) / norm;
        let c2_0 = (vf * u0 - uf * v0) / norm;
        inits.extend_from_slice(&[r0, c1_0, c2_0, uf, vf]);
    }

    ChainSpec::new(
        vec!["x".into(), "y".into()],
        functions,
        base_point.to_vec(),
        inits,
        ChainKind::Pfaffian,
    )
}

/// Real and imaginary parts of the two coefficients of a complex Riccati
/// equation q'(z) + q(z)^2 + a1(z) q(z) + a0(z) = 0.
#[derive(Clone, Debug)]
pub struct RiccatiCoefficients {
    pub a1_re: PolynomialExpr,
    pub a1_im: PolynomialExpr,
    pub a0_re: PolynomialExpr,
    pub a0_im: PolynomialExpr,
}

/// Build the noetherian chain for a complex Riccati equation on the base
/// variables (x, y) = (Re z, Im z).  With q = u + i v the system is
///
///   u_x = -(u^2 - v^2 + A1 u - B1 v + A0)
///   v_x = -(2 u v + B1 u + A1 v + B0)
///   u_y = -v_x,   v_y = u_x
///
/// where A1 + i B1 and A0 + i B0 are the coefficients.  The coefficients
/// may reference the functions of an optional prefix chain (sharing the
/// base point), which is prepended to the result.  The chain is
/// constructed, not solved: q_init supplies q's value at the base point.
pub fn riccati_system(
    coeffs: &RiccatiCoefficients,
    prefix: Option<&ChainSpec>,
    base_point: [f64; 2],
    q_init: (f64, f64),
) -> Result<ChainSpec> {
    let m = prefix.map_or(0, |p| p.functions.len());
    if let Some(p) = prefix {
        if p.n_base_vars != 2 {
            return Err(Error::Domain(
                "a riccati prefix chain must have exactly two base variables".into(),
            ));
        }
        let close = p
            .base_point
            .iter()
            .zip(base_point.iter())
            .all(|(a, b)| (a - b).abs() <= 1e-12);
        if !close {
            return Err(Error::Domain(
                "the riccati system must share the prefix chain's base point".into(),
            ));
        }
    }
    for p in [&coeffs.a1_re, &coeffs.a1_im, &coeffs.a0_re, &coeffs.a0_im] {
        if p.max_base_index().map_or(false, |i| i > 1) {
            return Err(Error::Domain(
                "riccati coefficients may only reference the two base variables".into(),
            ));
        }
        if let Some(maxc) = p.max_chain_index() {
            if maxc >= m {
                return Err(Error::Composition(format!(
                    "riccati coefficient references chain function #{}, but the prefix has only {}",
                    maxc + 1,
                    m
                )));
            }
        }
    }

    let yu = PolynomialExpr::chain_var(m);
    let yv = PolynomialExpr::chain_var(m + 1);
    let a1 = &coeffs.a1_re;
    let b1 = &coeffs.a1_im;
    let a0 = &coeffs.a0_re;
    let b0 = &coeffs.a0_im;

    // p = u^2 - v^2 + A1 u - B1 v + A0, s = 2 u v + B1 u + A1 v + B0.
    let p_poly = yu
        .mul(&yu)
        .sub(&yv.mul(&yv))
        .add(&a1.mul(&yu))
        .sub(&b1.mul(&yv))
        .add(a0);
    let s_poly = yu
        .mul(&yv)
        .scale(&BigRational::from_integer(2.into()))
        .add(&b1.mul(&yu))
        .add(&a1.mul(&yv))
        .add(b0);

    let (mut functions, mut inits, base_names, base_pt) = match prefix {
        Some(p) => (
            p.functions.clone(),
            p.initial_values.clone(),
            p.base_var_names.clone(),
            p.base_point.clone(),
        ),
        None => (
            Vec::new(),
            Vec::new(),
            vec!["x".into(), "y".into()],
            base_point.to_vec(),
        ),
    };
    let u_name = if functions.iter().any(|f| f.name == "u") {
        "q_re"
    } else {
        "u"
    };
    let v_name = if functions.iter().any(|f| f.name == "v") {
        "q_im"
    } else {
        "v"
    };
    functions.push(ChainFunction {
        name: u_name.into(),
        table: vec![p_poly.neg(), s_poly.clone()],
    });
    functions.push(ChainFunction {
        name: v_name.into(),
        table: vec![s_poly.neg(), p_poly.neg()],
    });
    inits.push(q_init.0);
    inits.push(q_init.1);

    ChainSpec::new(base_names, functions, base_pt, inits, ChainKind::Noetherian)
}
