//! Text format for chains.
//!
//! ```text
//! # tangent and friends
//! var x
//! fun f1 : dx = 1 + f1^2
//! fun f2 : dx = f1*f2
//! base 0
//! init 0 1
//! kind pfaffian
//! ```
//!
//! One `var` line names the base variables.  Each `fun` line gives one
//! chain function with a derivative clause `d<var> = <expr>` per base
//! variable, separated by semicolons.  Function names may be referenced
//! before their own `fun` line, which is what noetherian chains need.
//! Expressions are polynomials over the named variables with `+ - * ^` and
//! exact rational constants: integers, decimals (read exactly), and `/`
//! between constants.  `#` starts a comment.
//!
//! Riccati input files use the same header (the `fun` lines, if any,
//! become the prefix chain) plus a `riccati` directive with the four
//! coefficient expressions and a `qinit` line with the starting value.

use super::poly::{PolynomialExpr, VarRef};
use super::{ChainFunction, ChainKind, ChainSpec, RiccatiCoefficients};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

fn perr(line_no: usize, msg: impl AsRef<str>) -> Error {
    Error::Parse(format!("line {}: {}", line_no, msg.as_ref()))
}

/// A symbol table mapping names to polynomial variables.
struct Symbols<'a> {
    base: &'a [String],
    chain: &'a [String],
}

impl Symbols<'_> {
    fn lookup(&self, name: &str) -> Option<VarRef> {
        if let Some(j) = self.base.iter().position(|n| n == name) {
            return Some(VarRef::Base(j));
        }
        self.chain.iter().position(|n| n == name).map(VarRef::Chain)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str, line_no: usize) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                tokens.push(Token::Plus);
                i += 1;
            }
            '-' => {
                tokens.push(Token::Minus);
                i += 1;
            }
            '*' => {
                tokens.push(Token::Star);
                i += 1;
            }
            '/' => {
                tokens.push(Token::Slash);
                i += 1;
            }
            '^' => {
                tokens.push(Token::Caret);
                i += 1;
            }
            '(' => {
                tokens.push(Token::LParen);
                i += 1;
            }
            ')' => {
                tokens.push(Token::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let mut frac_digits = 0usize;
                if i < chars.len() && chars[i] == '.' {
                    i += 1;
                    let fs = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    frac_digits = i - fs;
                    if frac_digits == 0 {
                        return Err(perr(line_no, "digits expected after decimal point"));
                    }
                }
                let digits: String = chars[start..i].iter().filter(|c| **c != '.').collect();
                let numer: BigInt = digits
                    .parse()
                    .map_err(|_| perr(line_no, "bad number literal"))?;
                let denom = BigInt::from(10u32).pow(frac_digits as u32);
                tokens.push(Token::Number(BigRational::new(numer, denom)));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                tokens.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(perr(line_no, format!("unexpected character '{other}'"))),
        }
    }
    Ok(tokens)
}

struct ExprParser<'a> {
    tokens: &'a [Token],
    pos: usize,
    symbols: &'a Symbols<'a>,
    line_no: usize,
}

impl<'a> ExprParser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<&Token> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<PolynomialExpr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PolynomialExpr> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    let c = rhs.as_constant().ok_or_else(|| {
                        perr(self.line_no, "division is only supported by constants")
                    })?;
                    if c.is_zero() {
                        return Err(perr(self.line_no, "division by zero"));
                    }
                    acc = acc.scale(&c.recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<PolynomialExpr> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<PolynomialExpr> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.pos += 1;
            match self.next() {
                Some(Token::Number(n)) if n.is_integer() && !num_traits::Signed::is_negative(n) => {
                    let e: u32 = n
                        .to_integer()
                        .try_into()
                        .map_err(|_| perr(self.line_no, "exponent too large"))?;
                    return Ok(base.pow(e));
                }
                _ => {
                    return Err(perr(
                        self.line_no,
                        "'^' must be followed by a nonnegative integer",
                    ))
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<PolynomialExpr> {
        match self.next().cloned() {
            Some(Token::Number(n)) => Ok(PolynomialExpr::constant(n)),
            Some(Token::Ident(name)) => match self.symbols.lookup(&name) {
                Some(VarRef::Base(j)) => Ok(PolynomialExpr::base_var(j)),
                Some(VarRef::Chain(i)) => Ok(PolynomialExpr::chain_var(i)),
                None => Err(perr(self.line_no, format!("unknown symbol '{name}'"))),
            },
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(perr(self.line_no, "missing ')'")),
                }
            }
            _ => Err(perr(self.line_no, "expected a number, name, or '('")),
        }
    }
}

fn parse_expr(src: &str, symbols: &Symbols, line_no: usize) -> Result<PolynomialExpr> {
    let tokens = tokenize(src, line_no)?;
    if tokens.is_empty() {
        return Err(perr(line_no, "empty expression"));
    }
    let mut p = ExprParser {
        tokens: &tokens,
        pos: 0,
        symbols,
        line_no,
    };
    let e = p.expr()?;
    if p.pos != tokens.len() {
        return Err(perr(line_no, "trailing input after expression"));
    }
    Ok(e)
}

fn parse_floats(rest: &str, line_no: usize) -> Result<Vec<f64>> {
    rest.split_whitespace()
        .map(|tok| {
            tok.parse::<f64>()
                .map_err(|_| perr(line_no, format!("'{tok}' is not a number")))
        })
        .collect()
}

/// Lines with comments stripped, paired with their 1-based line numbers.
fn logical_lines(text: &str) -> Vec<(usize, String)> {
    text.lines()
        .enumerate()
        .filter_map(|(idx, raw)| {
            let no_comment = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            };
            let trimmed = no_comment.trim();
            if trimmed.is_empty() {
                None
            } else {
                Some((idx + 1, trimmed.to_string()))
            }
        })
        .collect()
}

struct RawFun {
    line_no: usize,
    name: String,
    clauses: String,
}

struct Header {
    base_names: Vec<String>,
    funs: Vec<RawFun>,
    base_point: Option<(usize, Vec<f64>)>,
    initial_values: Option<(usize, Vec<f64>)>,
    kind: Option<ChainKind>,
    extra: Vec<(usize, String)>,
}

/// First pass: classify lines and collect all names so function bodies can
/// reference functions defined later in the file.
fn scan(text: &str, allow_extra: bool) -> Result<Header> {
    let mut base_names: Option<Vec<String>> = None;
    let mut funs = Vec::new();
    let mut base_point = None;
    let mut initial_values = None;
    let mut kind = None;
    let mut extra = Vec::new();
    for (line_no, line) in logical_lines(text) {
        let (word, rest) = match line.find(char::is_whitespace) {
            Some(p) => (&line[..p], line[p..].trim().to_string()),
            None => (line.as_str(), String::new()),
        };
        match word {
            "var" => {
                if base_names.is_some() {
                    return Err(perr(line_no, "duplicate 'var' line"));
                }
                let names: Vec<String> = rest.split_whitespace().map(String::from).collect();
                if names.is_empty() {
                    return Err(perr(line_no, "'var' needs at least one name"));
                }
                base_names = Some(names);
            }
            "fun" => {
                let (name, clauses) = match rest.split_once(':') {
                    Some((n, c)) => (n.trim().to_string(), c.trim().to_string()),
                    None => return Err(perr(line_no, "'fun' line needs 'fun NAME : clauses'")),
                };
                if name.is_empty() {
                    return Err(perr(line_no, "missing function name"));
                }
                funs.push(RawFun {
                    line_no,
                    name,
                    clauses,
                });
            }
            "base" => {
                if base_point.is_some() {
                    return Err(perr(line_no, "duplicate 'base' line"));
                }
                base_point = Some((line_no, parse_floats(&rest, line_no)?));
            }
            "init" => {
                if initial_values.is_some() {
                    return Err(perr(line_no, "duplicate 'init' line"));
                }
                initial_values = Some((line_no, parse_floats(&rest, line_no)?));
            }
            "kind" => {
                if kind.is_some() {
                    return Err(perr(line_no, "duplicate 'kind' line"));
                }
                kind = Some(match rest.as_str() {
                    "pfaffian" => ChainKind::Pfaffian,
                    "noetherian" => ChainKind::Noetherian,
                    other => {
                        return Err(perr(
                            line_no,
                            format!("kind must be 'pfaffian' or 'noetherian', got '{other}'"),
                        ))
                    }
                });
            }
            other => {
                if allow_extra {
                    extra.push((line_no, line.clone()));
                } else {
                    return Err(perr(line_no, format!("unknown directive '{other}'")));
                }
            }
        }
    }
    let base_names = base_names.ok_or_else(|| Error::Parse("missing 'var' line".into()))?;
    Ok(Header {
        base_names,
        funs,
        base_point,
        initial_values,
        kind,
        extra,
    })
}

fn parse_fun_tables(header: &Header) -> Result<Vec<ChainFunction>> {
    let chain_names: Vec<String> = header.funs.iter().map(|f| f.name.clone()).collect();
    let symbols = Symbols {
        base: &header.base_names,
        chain: &chain_names,
    };
    let n = header.base_names.len();
    let mut out = Vec::new();
    for fun in &header.funs {
        let mut table: Vec<Option<PolynomialExpr>> = vec![None; n];
        for clause in fun.clauses.split(';') {
            let clause = clause.trim();
            if clause.is_empty() {
                return Err(perr(fun.line_no, "empty derivative clause"));
            }
            let (label, expr_src) = clause
                .split_once('=')
                .ok_or_else(|| perr(fun.line_no, "derivative clause needs 'd<var> = expr'"))?;
            let label = label.trim();
            let var_name = label.strip_prefix('d').ok_or_else(|| {
                perr(
                    fun.line_no,
                    format!("clause label '{label}' must be 'd<var>'"),
                )
            })?;
            let k = header
                .base_names
                .iter()
                .position(|v| v == var_name)
                .ok_or_else(|| perr(fun.line_no, format!("'{var_name}' is not a base variable")))?;
            if table[k].is_some() {
                return Err(perr(
                    fun.line_no,
                    format!("duplicate clause for '{var_name}'"),
                ));
            }
            table[k] = Some(parse_expr(expr_src.trim(), &symbols, fun.line_no)?);
        }
        let table: Vec<PolynomialExpr> = table
            .into_iter()
            .enumerate()
            .map(|(k, p)| {
                p.ok_or_else(|| {
                    perr(
                        fun.line_no,
                        format!("missing clause for 'd{}'", header.base_names[k]),
                    )
                })
            })
            .collect::<Result<_>>()?;
        out.push(ChainFunction {
            name: fun.name.clone(),
            table,
        });
    }
    Ok(out)
}

/// Parse the chain text format.
pub fn parse_chain(text: &str) -> Result<ChainSpec> {
    let header = scan(text, false)?;
    if header.funs.is_empty() {
        return Err(Error::Parse("a chain needs at least one 'fun' line".into()));
    }
    let functions = parse_fun_tables(&header)?;
    let (_, base_point) = header
        .base_point
        .clone()
        .ok_or_else(|| Error::Parse("missing 'base' line".into()))?;
    let (_, initial_values) = header
        .initial_values
        .clone()
        .ok_or_else(|| Error::Parse("missing 'init' line".into()))?;
    let kind = header
        .kind
        .ok_or_else(|| Error::Parse("missing 'kind' line".into()))?;
    ChainSpec::new(
        header.base_names.clone(),
        functions,
        base_point,
        initial_values,
        kind,
    )
}

/// Render a chain in the text format; `parse_chain` reads it back exactly.
pub fn serialize_chain(spec: &ChainSpec) -> String {
    let mut out = String::new();
    out.push_str("var ");
    out.push_str(&spec.base_var_names.join(" "));
    out.push('\n');
    let chain_names: Vec<String> = spec.functions.iter().map(|f| f.name.clone()).collect();
    for f in &spec.functions {
        out.push_str("fun ");
        out.push_str(&f.name);
        out.push_str(" : ");
        let clauses: Vec<String> = f
            .table
            .iter()
            .enumerate()
            .map(|(k, p)| {
                format!(
                    "d{} = {}",
                    spec.base_var_names[k],
                    super::poly::format_poly(p, &spec.base_var_names, &chain_names)
                )
            })
            .collect();
        out.push_str(&clauses.join(" ; "));
        out.push('\n');
    }
    out.push_str("base ");
    out.push_str(
        &spec
            .base_point
            .iter()
            .map(|v| format!("{v}"))
            .collect::<Vec<_>>()
            .join(" "),
    );
    out.push('\n');
    out.push_str("init ");
    out.push_str(
        &spec
            .initial_values
            .iter()
            .map(|v| format!("{v}"))
            .collect::<Vec<_>>()
            .join(" "),
    );
    out.push('\n');
    out.push_str(&format!("kind {}\n", spec.declared_kind));
    out
}

/// Parsed form of a riccati input file.
pub struct RiccatiFile {
    pub coeffs: RiccatiCoefficients,
    pub prefix: Option<ChainSpec>,
    pub base_point: [f64; 2],
    pub q_init: (f64, f64),
}

/// Parse a riccati input file: a chain header whose `fun` lines (if any)
/// form the prefix chain, plus `riccati` and `qinit` directives.
pub fn parse_riccati_file(text: &str) -> Result<RiccatiFile> {
    let header = scan(text, true)?;
    if header.base_names.len() != 2 {
        return Err(Error::Parse(
            "a riccati file needs exactly two base variables".into(),
        ));
    }
    let mut riccati_line: Option<(usize, String)> = None;
    let mut qinit_line: Option<(usize, String)> = None;
    for (line_no, line) in &header.extra {
        let (word, rest) = match line.find(char::is_whitespace) {
            Some(p) => (&line[..p], line[p..].trim().to_string()),
            None => (line.as_str(), String::new()),
        };
        match word {
            "riccati" => {
                if riccati_line.is_some() {
                    return Err(perr(*line_no, "duplicate 'riccati' line"));
                }
                riccati_line = Some((*line_no, rest));
            }
            "qinit" => {
                if qinit_line.is_some() {
                    return Err(perr(*line_no, "duplicate 'qinit' line"));
                }
                qinit_line = Some((*line_no, rest));
            }
            other => return Err(perr(*line_no, format!("unknown directive '{other}'"))),
        }
    }
    let (riccati_no, riccati_rest) =
        riccati_line.ok_or_else(|| Error::Parse("missing 'riccati' line".into()))?;
    let (qinit_no, qinit_rest) =
        qinit_line.ok_or_else(|| Error::Parse("missing 'qinit' line".into()))?;

    let (_, base_point) = header
        .base_point
        .clone()
        .ok_or_else(|| Error::Parse("missing 'base' line".into()))?;
    if base_point.len() != 2 {
        return Err(Error::Parse("'base' needs exactly two coordinates".into()));
    }

    let prefix = if header.funs.is_empty() {
        if header
            .initial_values
            .as_ref()
            .map_or(false, |(_, v)| !v.is_empty())
        {
            return Err(Error::Parse(
                "'init' values given but there are no prefix functions".into(),
            ));
        }
        None
    } else {
        let functions = parse_fun_tables(&header)?;
        let (_, initial_values) = header
            .initial_values
            .clone()
            .ok_or_else(|| Error::Parse("prefix functions need an 'init' line".into()))?;
        Some(ChainSpec::new(
            header.base_names.clone(),
            functions,
            base_point.clone(),
            initial_values,
            header.kind.unwrap_or(ChainKind::Noetherian),
        )?)
    };

    // Coefficient expressions may reference the prefix functions.
    let chain_names: Vec<String> = header.funs.iter().map(|f| f.name.clone()).collect();
    let symbols = Symbols {
        base: &header.base_names,
        chain: &chain_names,
    };
    let mut parts: [Option<PolynomialExpr>; 4] = [None, None, None, None];
    const PART_NAMES: [&str; 4] = ["a1_re", "a1_im", "a0_re", "a0_im"];
    for clause in riccati_rest.split(';') {
        let clause = clause.trim();
        let (label, expr_src) = clause
            .split_once('=')
            .ok_or_else(|| perr(riccati_no, "riccati clause needs 'name = expr'"))?;
        let label = label.trim();
        let slot = PART_NAMES
            .iter()
            .position(|n| *n == label)
            .ok_or_else(|| perr(riccati_no, format!("unknown riccati coefficient '{label}'")))?;
        if parts[slot].is_some() {
            return Err(perr(riccati_no, format!("duplicate coefficient '{label}'")));
        }
        parts[slot] = Some(parse_expr(expr_src.trim(), &symbols, riccati_no)?);
    }
    let [a1_re, a1_im, a0_re, a0_im] = parts;
    let missing = |p: Option<PolynomialExpr>, name: &str| {
        p.ok_or_else(|| perr(riccati_no, format!("missing coefficient '{name}'")))
    };
    let coeffs = RiccatiCoefficients {
        a1_re: missing(a1_re, "a1_re")?,
        a1_im: missing(a1_im, "a1_im")?,
        a0_re: missing(a0_re, "a0_re")?,
        a0_im: missing(a0_im, "a0_im")?,
    };

    let q = parse_floats(&qinit_rest, qinit_no)?;
    if q.len() != 2 {
        return Err(perr(qinit_no, "'qinit' needs exactly two values"));
    }
    Ok(RiccatiFile {
        coeffs,
        prefix,
        base_point: [base_point[0], base_point[1]],
        q_init: (q[0], q[1]),
    })
}

#[cfg(test)]
mod tests {
    use super::super::{integrate_chain, riccati_system, verify_chain, VerifiedKind};
    use super::*;

    const TAN_CHAIN: &str = "\
# tangent, secant, cosine, sine
var x
fun f1 : dx = 1 + f1^2
fun f2 : dx = f1*f2
fun f3 : dx = -f1*f3
fun f4 : dx = f3
base 0
init 0 1 1 0
kind pfaffian
";

    #[test]
    fn parses_the_tan_chain() {
        let chain = parse_chain(TAN_CHAIN).unwrap();
        assert_eq!(chain.n_base_vars, 1);
        assert_eq!(chain.functions.len(), 4);
        assert_eq!(chain.declared_kind, ChainKind::Pfaffian);
        assert_eq!(verify_chain(&chain).kind, VerifiedKind::Pfaffian);
        let finals = integrate_chain(&chain, &[vec![0.0], vec![1.0]]).unwrap();
        assert!((finals[0] - 1.0_f64.tan()).abs() < 1e-9);
    }

    #[test]
    fn forward_references_parse() {
        let text = "\
var x
fun s : dx = c
fun c : dx = -s
base 0
init 0 1
kind noetherian
";
        let chain = parse_chain(text).unwrap();
        assert_eq!(verify_chain(&chain).kind, VerifiedKind::Noetherian);
    }

    #[test]
    fn round_trip_is_exact() {
        let chain = parse_chain(TAN_CHAIN).unwrap();
        let text = serialize_chain(&chain);
        let again = parse_chain(&text).unwrap();
        assert_eq!(chain, again);
    }

    #[test]
    fn round_trip_of_a_generated_multivariable_chain() {
        use num_traits::One;
        let a = PolynomialExpr::constant(num_rational::BigRational::one());
        let b = PolynomialExpr::zero();
        let h1 = PolynomialExpr::constant(num_rational::BigRational::one());
        let h2 = PolynomialExpr::zero();
        let chain = super::super::first_order_linear_chain(
            &a,
            &b,
            Some((&h1, &h2)),
            [0.0, std::f64::consts::FRAC_PI_2],
            (0.0, 1.0),
            Some((0.0, 0.0)),
        )
        .unwrap();
        let text = serialize_chain(&chain);
        let again = parse_chain(&text).unwrap();
        assert_eq!(chain, again);
    }

    #[test]
    fn decimals_are_exact_rationals() {
        let text = "\
var x
fun f : dx = 0.25*f
base 0
init 1
kind pfaffian
";
        let chain = parse_chain(text).unwrap();
        let expected = PolynomialExpr::chain_var(0).scale(&num_rational::BigRational::new(
            num_bigint::BigInt::from(1),
            num_bigint::BigInt::from(4),
        ));
        assert_eq!(chain.functions[0].table[0], expected);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = "\
var x
fun f : dx = nope + 1
base 0
init 0
kind pfaffian
";
        let err = parse_chain(text).unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains("line 2"), "message was: {msg}");
        assert!(msg.contains("nope"), "message was: {msg}");
    }

    #[test]
    fn division_by_a_variable_is_rejected() {
        let text = "\
var x
fun f : dx = 1/f
base 0
init 1
kind pfaffian
";
        let err = parse_chain(text).unwrap_err();
        assert!(format!("{err}").contains("division"));
    }

    #[test]
    fn missing_clause_is_rejected() {
        let text = "\
var x y
fun f : dx = 1
base 0 0
init 0
kind pfaffian
";
        let err = parse_chain(text).unwrap_err();
        assert!(format!("{err}").contains("dy"));
    }

    #[test]
    fn riccati_file_without_prefix_builds_tanh() {
        let text = "\
var x y
base 0 0
riccati a1_re = 0 ; a1_im = 0 ; a0_re = -1 ; a0_im = 0
qinit 0 0
";
        let file = parse_riccati_file(text).unwrap();
        assert!(file.prefix.is_none());
        let chain = riccati_system(
            &file.coeffs,
            file.prefix.as_ref(),
            file.base_point,
            file.q_init,
        )
        .unwrap();
        let finals = integrate_chain(&chain, &[vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        assert!((finals[0] - 1.0_f64.tanh()).abs() < 1e-10);
    }

    #[test]
    fn riccati_file_with_prefix_parses() {
        let text = "\
var x y
fun g1 : dx = g1 ; dy = -g2
fun g2 : dx = g2 ; dy = g1
base 0 0
init 1 0
riccati a1_re = 0 ; a1_im = 0 ; a0_re = -g1 ; a0_im = -g2
qinit 1 0
";
        let file = parse_riccati_file(text).unwrap();
        let prefix = file.prefix.as_ref().unwrap();
        assert_eq!(prefix.functions.len(), 2);
        let chain = riccati_system(
            &file.coeffs,
            file.prefix.as_ref(),
            file.base_point,
            file.q_init,
        )
        .unwrap();
        assert_eq!(chain.functions.len(), 4);
        assert_eq!(verify_chain(&chain).kind, VerifiedKind::Noetherian);
    }
}
