//! Exact multivariate polynomials over the rationals, in two banks of
//! variables: base variables x_1..x_n (coordinates of the chain's domain)
//! and chain variables y_1..y_N (the chain functions themselves).
//!
//! Everything downstream (triangularity, symbolic integrability, closure
//! constructions, pull-backs) reduces to exact arithmetic here, so there is
//! no floating point anywhere in this file except the evaluation hook.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A power product, exponents stored per variable bank with trailing zeros
/// trimmed so equal monomials compare equal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct Monomial {
    base: Vec<u16>,
    chain: Vec<u16>,
}

impl Monomial {
    fn normalized(mut base: Vec<u16>, mut chain: Vec<u16>) -> Self {
        while base.last() == Some(&0) {
            base.pop();
        }
        while chain.last() == Some(&0) {
            chain.pop();
        }
        Self { base, chain }
    }

    pub fn base_exponents(&self) -> &[u16] {
        &self.base
    }

    pub fn chain_exponents(&self) -> &[u16] {
        &self.chain
    }

    pub fn is_constant(&self) -> bool {
        self.base.is_empty() && self.chain.is_empty()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut base = vec![0u16; self.base.len().max(other.base.len())];
        for (i, e) in self.base.iter().enumerate() {
            base[i] += e;
        }
        for (i, e) in other.base.iter().enumerate() {
            base[i] += e;
        }
        let mut chain = vec![0u16; self.chain.len().max(other.chain.len())];
        for (i, e) in self.chain.iter().enumerate() {
            chain[i] += e;
        }
        for (i, e) in other.chain.iter().enumerate() {
            chain[i] += e;
        }
        Monomial::normalized(base, chain)
    }
}

/// Where a variable should land under a renaming substitution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarRef {
    Base(usize),
    Chain(usize),
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PolynomialExpr {
    terms: BTreeMap<Monomial, BigRational>,
}

impl PolynomialExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::default(), c);
        }
        Self { terms }
    }

    pub fn constant_i64(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn base_var(j: usize) -> Self {
        let mut base = vec![0u16; j + 1];
        base[j] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::normalized(base, Vec::new()), BigRational::one());
        Self { terms }
    }

    pub fn chain_var(i: usize) -> Self {
        let mut chain = vec![0u16; i + 1];
        chain[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::normalized(Vec::new(), chain), BigRational::one());
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The constant value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_constant() {
                return Some(c.clone());
            }
        }
        None
    }

    fn insert_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, coeff)| (m.clone(), coeff * c))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::constant(BigRational::one());
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Partial derivative with respect to base variable j.
    pub fn d_base(&self, j: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = *m.base.get(j).unwrap_or(&0);
            if e == 0 {
                continue;
            }
            let mut base = m.base.clone();
            base[j] -= 1;
            out.insert_term(
                Monomial::normalized(base, m.chain.clone()),
                c * BigRational::from_integer(BigInt::from(e)),
            );
        }
        out
    }

    /// Partial derivative with respect to chain variable i.
    pub fn d_chain(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = *m.chain.get(i).unwrap_or(&0);
            if e == 0 {
                continue;
            }
            let mut chain = m.chain.clone();
            chain[i] -= 1;
            out.insert_term(
                Monomial::normalized(m.base.clone(), chain),
                c * BigRational::from_integer(BigInt::from(e)),
            );
        }
        out
    }

    pub fn max_base_index(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter_map(|m| m.base.len().checked_sub(1))
            .max()
    }

    pub fn max_chain_index(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter_map(|m| m.chain.len().checked_sub(1))
            .max()
    }

    /// Rename variables: base variable j becomes `base_to[j]`, chain
    /// variable i becomes `chain_to[i]`.  Pure renaming (every target is a
    /// single variable), so monomials map to monomials.
    pub fn remap(&self, base_to: &[VarRef], chain_to: &[VarRef]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut base = Vec::new();
            let mut chain = Vec::new();
            let mut bump = |r: VarRef, e: u16| match r {
                VarRef::Base(j) => {
                    if base.len() <= j {
                        base.resize(j + 1, 0);
                    }
                    base[j] += e;
                }
                VarRef::Chain(i) => {
                    if chain.len() <= i {
                        chain.resize(i + 1, 0);
                    }
                    chain[i] += e;
                }
            };
            for (j, &e) in m.base.iter().enumerate() {
                if e > 0 {
                    bump(base_to[j], e);
                }
            }
            for (i, &e) in m.chain.iter().enumerate() {
                if e > 0 {
                    bump(chain_to[i], e);
                }
            }
            out.insert_term(Monomial::normalized(base, chain), c.clone());
        }
        out
    }

    /// Greedy monomial rewrite: wherever a monomial contains the whole
    /// `from` pattern (a product of chain variables with multiplicity), pull
    /// it out and insert `to_chain` instead (or nothing when `to_chain` is
    /// None, encoding a product that collapses to 1).  Applied repeatedly
    /// per monomial.
    pub fn rewrite_chain_product(&self, from: &[(usize, u16)], to_chain: Option<usize>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut chain = m.chain.clone();
            loop {
                let fits = from
                    .iter()
                    .all(|&(i, e)| chain.get(i).copied().unwrap_or(0) >= e);
                if !fits {
                    break;
                }
                for &(i, e) in from {
                    chain[i] -= e;
                }
                if let Some(t) = to_chain {
                    if chain.len() <= t {
                        chain.resize(t + 1, 0);
                    }
                    chain[t] += 1;
                }
            }
            out.insert_term(Monomial::normalized(m.base.clone(), chain), c.clone());
        }
        out
    }

    pub fn eval(&self, base: &[f64], chain: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = c.to_f64().unwrap_or(f64::NAN);
            for (j, &e) in m.base.iter().enumerate() {
                if e > 0 {
                    t *= base[j].powi(e as i32);
                }
            }
            for (i, &e) in m.chain.iter().enumerate() {
                if e > 0 {
                    t *= chain[i].powi(e as i32);
                }
            }
            acc += t;
        }
        acc
    }
}

/// Generic display with x1.. and y1.. names; the chain serializer formats
/// with real names instead.
impl fmt::Display for PolynomialExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base_names: Vec<String> = (0..self.max_base_index().map_or(0, |i| i + 1))
            .map(|j| format!("x{}", j + 1))
            .collect();
        let chain_names: Vec<String> = (0..self.max_chain_index().map_or(0, |i| i + 1))
            .map(|i| format!("y{}", i + 1))
            .collect();
        write!(f, "{}", format_poly(self, &base_names, &chain_names))
    }
}

/// Render a polynomial with the given variable names, in the syntax the
/// chain parser accepts.
pub fn format_poly(p: &PolynomialExpr, base_names: &[String], chain_names: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (m, c)) in p.terms.iter().enumerate() {
        let negative = c.is_negative();
        let mag = c.abs();
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        for (j, &e) in m.base.iter().enumerate() {
            if e == 1 {
                factors.push(base_names[j].clone());
            } else if e > 1 {
                factors.push(format!("{}^{}", base_names[j], e));
            }
        }
        for (i, &e) in m.chain.iter().enumerate() {
            if e == 1 {
                factors.push(chain_names[i].clone());
            } else if e > 1 {
                factors.push(format!("{}^{}", chain_names[i], e));
            }
        }
        if factors.is_empty() {
            out.push_str(&format_rational(&mag));
        } else {
            if !mag.is_one() {
                factors.insert(0, format_rational(&mag));
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
