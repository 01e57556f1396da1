//! Constant-coefficient linear ODEs, their transfer functions and frequency
//! responses.
//!
//! Equation grammar (whitespace-insensitive):
//!
//! ```text
//! equation := side '=' side            y terms left, u terms right
//! side     := ['-'] term (('+' | '-') term)*
//! term     := factor (('*' | '/') factor)*     at most one signal factor
//! factor   := signal | coeff
//! signal   := ('y' | 'u') "'"*  |  ('y' | 'u') '^(' k ')'     k in 0..=9
//! coeff    := p[/q] ['i'] | 'i' | NAME | '(' sum ')'
//! sum      := ['-'] product (('+' | '-') product)*
//! product  := coeff (('*' | '/') coeff)*
//! ```
//!
//! Files may also hold `# comments` and `param NAME = value` lines; `NAME`
//! can then appear wherever a coefficient can.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result, SyntaxError};
use crate::lexer::{tokenize, Cursor, Tok};
use crate::poly::Poly;
use crate::rational::{RationalExpr, Var};
use crate::roots::{aberth, squarefree_factors};
use crate::scalar::{GaussianRational, ToComplex};
use crate::transform::TransformResult;

/// Highest derivative order the grammar accepts.
pub const MAX_ORDER: usize = 9;

/// `Σ a_k y^(k) = Σ b_k u^(k)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinearODE {
    out_coeffs: Vec<GaussianRational>,
    in_coeffs: Vec<GaussianRational>,
    zero_initial: bool,
}

impl LinearODE {
    /// Trailing zero input coefficients are dropped (keeping at least one);
    /// the leading output coefficient must be nonzero.
    pub fn new(
        out_coeffs: Vec<GaussianRational>,
        mut in_coeffs: Vec<GaussianRational>,
        zero_initial: bool,
    ) -> Result<Self> {
        if out_coeffs.last().is_none_or(Zero::is_zero) {
            return Err(Error::ZeroLeadingCoefficient);
        }
        while in_coeffs.len() > 1 && in_coeffs.last().is_some_and(Zero::is_zero) {
            in_coeffs.pop();
        }
        if in_coeffs.is_empty() {
            in_coeffs.push(GaussianRational::zero());
        }
        Ok(Self {
            out_coeffs,
            in_coeffs,
            zero_initial,
        })
    }

    pub fn out_coeffs(&self) -> &[GaussianRational] {
        &self.out_coeffs
    }

    pub fn in_coeffs(&self) -> &[GaussianRational] {
        &self.in_coeffs
    }

    pub fn zero_initial(&self) -> bool {
        self.zero_initial
    }

    pub fn with_zero_initial(mut self, zero_initial: bool) -> Self {
        self.zero_initial = zero_initial;
        self
    }

    pub fn order(&self) -> usize {
        self.out_coeffs.len() - 1
    }
}

/// One sample of a Bode plot.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FrequencyResponsePoint {
    pub omega: f64,
    pub magnitude: f64,
    pub magnitude_db: f64,
    /// In `(-π, π]`.
    pub phase_rad: f64,
}

fn ratio_of(
    in_coeffs: &[GaussianRational],
    out_coeffs: &[GaussianRational],
    var: Var,
) -> RationalExpr {
    RationalExpr::new(
        Poly::new(in_coeffs.to_vec()),
        Poly::new(out_coeffs.to_vec()),
        var,
    )
    .expect("leading output coefficient is nonzero")
}

/// `H(s) = Σ b_k s^k / Σ a_k s^k`, valid under zero initial conditions.
pub fn transfer_function(ode: &LinearODE) -> Result<RationalExpr> {
    if !ode.zero_initial {
        return Err(Error::NonzeroInitialConditions);
    }
    Ok(ratio_of(&ode.in_coeffs, &ode.out_coeffs, Var::S))
}

/// `H(iω)`, with the decay hypotheses of the derivative rule as conditions.
pub fn frequency_response(ode: &LinearODE) -> TransformResult {
    let mut conditions = Vec::new();
    for (name, len) in [("y", ode.out_coeffs.len()), ("u", ode.in_coeffs.len())] {
        conditions.push(format!("{name} absolutely integrable"));
        for k in 0..len.saturating_sub(1) {
            conditions.push(format!(
                "{} -> 0 as t -> +inf and -inf",
                signal_name(name, k)
            ));
        }
    }
    TransformResult {
        expr: ratio_of(&ode.in_coeffs, &ode.out_coeffs, Var::IOmega),
        roc: None,
        conditions,
    }
}

/// Real frequencies where a response in `iω` has a pole, found from the exact
/// common real-root factor of `Re den(iω)` and `Im den(iω)`.
pub fn real_axis_poles(h: &RationalExpr) -> Vec<f64> {
    let on_axis = h
        .den()
        .compose_affine(GaussianRational::i(), GaussianRational::zero());
    let re = Poly::new(on_axis.coeffs().iter().map(|c| c.re.clone()).collect());
    let im = Poly::new(on_axis.coeffs().iter().map(|c| c.im.clone()).collect());
    let common = if im.is_zero() {
        re
    } else if re.is_zero() {
        im
    } else {
        re.gcd(&im)
    };
    let mut out = Vec::new();
    for (factor, _) in squarefree_factors(&common) {
        let coeffs: Vec<Complex<f64>> = factor.coeffs().iter().map(ToComplex::to_complex).collect();
        for z in aberth(&coeffs) {
            if z.im.abs() <= 1e-7 * (1.0 + z.re.abs()) {
                out.push(z.re);
            }
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

/// Log-spaced samples of `H(iω)` for `ω` in `[w_min, w_max]`.
pub fn bode_grid(
    h: &RationalExpr,
    w_min: f64,
    w_max: f64,
    points: usize,
) -> Result<Vec<FrequencyResponsePoint>> {
    if h.var() != Var::IOmega {
        return Err(Error::VarMismatch {
            left: h.var(),
            right: Var::IOmega,
        });
    }
    if !(w_min > 0.0 && w_min < w_max && w_max.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "need 0 < w_min < w_max, got [{w_min}, {w_max}]"
        )));
    }
    if points < 2 {
        return Err(Error::InvalidArgument(
            "a Bode grid needs at least 2 points".into(),
        ));
    }
    if let Some(&omega) = real_axis_poles(h)
        .iter()
        .find(|&&w| w >= w_min && w <= w_max)
    {
        return Err(Error::PoleOnGrid { omega });
    }
    let (lo, hi) = (w_min.log10(), w_max.log10());
    (0..points)
        .map(|k| {
            let omega = if k + 1 == points {
                w_max
            } else {
                10f64.powf(lo + (hi - lo) * k as f64 / (points - 1) as f64)
            };
            let v = h.eval(Complex::new(0.0, omega))?;
            let magnitude = v.norm();
            let mut phase_rad = v.arg();
            if phase_rad <= -std::f64::consts::PI {
                phase_rad = std::f64::consts::PI;
            }
            Ok(FrequencyResponsePoint {
                omega,
                magnitude,
                magnitude_db: 20.0 * magnitude.log10(),
                phase_rad,
            })
        })
        .collect()
}

fn signal_name(var: &str, k: usize) -> String {
    match k {
        0 => var.to_string(),
        1 => format!("{var}'"),
        2 => format!("{var}''"),
        _ => format!("{var}^({k})"),
    }
}

/// Canonical text form, highest order first: `y'' + 3*y' + 2*y = u' + u`.
pub fn print_ode(ode: &LinearODE) -> String {
    fn side(coeffs: &[GaussianRational], var: &str) -> String {
        let mut out = String::new();
        for (k, c) in coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let first = out.is_empty();
            let name = signal_name(var, k);
            if !c.is_real() {
                if !first {
                    out.push_str(" + ");
                }
                let _ = write!(out, "({c})*{name}");
                continue;
            }
            let negative = c.re < num_rational::BigRational::zero();
            match (first, negative) {
                (true, true) => out.push('-'),
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
                (true, false) => {}
            }
            let mag = if negative {
                -c.re.clone()
            } else {
                c.re.clone()
            };
            if mag.is_one() {
                out.push_str(&name);
            } else {
                let _ = write!(out, "{mag}*{name}");
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
    format!(
        "{} = {}",
        side(&ode.out_coeffs, "y"),
        side(&ode.in_coeffs, "u")
    )
}

impl std::fmt::Display for LinearODE {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&print_ode(self))
    }
}

/// Parses a single equation, or a file with comments and `param` lines.
pub fn parse_ode(text: &str) -> Result<LinearODE> {
    let mut params: HashMap<String, GaussianRational> = HashMap::new();
    let mut equation: Option<(usize, &str)> = None;
    let mut last_line = 1;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let mut cur = Cursor::new(tokenize(line, line_no)?);
        if cur.at_ident("param") {
            cur.bump();
            let Tok::Ident(name) = cur.peek().clone() else {
                return Err(cur
                    .error(format!(
                        "expected a parameter name, found {}",
                        cur.describe()
                    ))
                    .into());
            };
            if ["y", "u", "i", "param"].contains(&name.as_str()) {
                return Err(cur
                    .error(format!("`{name}` is reserved and cannot name a parameter"))
                    .into());
            }
            cur.bump();
            cur.expect_sym('=')?;
            let value = coeff_sum(&mut cur, &params)?;
            expect_end(&cur)?;
            params.insert(name, value);
            continue;
        }
        if let Some((first, _)) = equation {
            let e = cur.error(format!("second equation; the first one is on line {first}"));
            return Err(e.into());
        }
        equation = Some((line_no, line));
    }
    let Some((line_no, line)) = equation else {
        return Err(SyntaxError {
            line: last_line,
            column: 1,
            message: "expected an equation".into(),
        }
        .into());
    };
    let mut cur = Cursor::new(tokenize(line, line_no)?);
    let (out_terms, out_max) = side(&mut cur, &params, 'y')?;
    if !cur.at_sym('=') {
        return Err(cur
            .error(format!("expected `=` or `+`/`-`, found {}", cur.describe()))
            .into());
    }
    cur.bump();
    let (in_terms, _) = side(&mut cur, &params, 'u')?;
    expect_end(&cur)?;
    let Some(n) = out_max else {
        return Err(SyntaxError {
            line: line_no,
            column: 1,
            message: "left-hand side has no y term".into(),
        }
        .into());
    };
    let dense = |terms: &BTreeMap<usize, GaussianRational>, len: usize| {
        (0..len)
            .map(|k| {
                terms
                    .get(&k)
                    .cloned()
                    .unwrap_or_else(GaussianRational::zero)
            })
            .collect::<Vec<_>>()
    };
    let out = dense(&out_terms, n + 1);
    let inp = dense(&in_terms, in_terms.keys().max().map_or(1, |m| m + 1));
    LinearODE::new(out, inp, true)
}

fn expect_end(cur: &Cursor) -> std::result::Result<(), SyntaxError> {
    if *cur.peek() == Tok::End {
        Ok(())
    } else {
        Err(cur.error(format!("unexpected {}", cur.describe())))
    }
}

fn starts_factor(t: &Tok) -> bool {
    matches!(t, Tok::Num(_) | Tok::Ident(_)) || *t == Tok::Sym('(')
}

type SideTerms = (BTreeMap<usize, GaussianRational>, Option<usize>);

// Accumulated coefficients per order, plus the highest order written.
fn side(
    cur: &mut Cursor,
    params: &HashMap<String, GaussianRational>,
    var: char,
) -> std::result::Result<SideTerms, SyntaxError> {
    let mut terms: BTreeMap<usize, GaussianRational> = BTreeMap::new();
    let mut highest = None;
    let mut negative = false;
    let mut op_pos = cur.pos;
    if cur.at_sym('-') {
        cur.bump();
        negative = true;
    }
    loop {
        if !starts_factor(cur.peek()) {
            return Err(if cur.pos == op_pos {
                cur.error(format!("expected a term, found {}", cur.describe()))
            } else {
                cur.error_at(
                    op_pos,
                    format!(
                        "dangling `{}`: no term follows it",
                        if negative { '-' } else { '+' }
                    ),
                )
            });
        }
        let (coeff, order) = term(cur, params, var)?;
        let coeff = if negative { -coeff } else { coeff };
        if let Some(k) = order {
            let slot = terms.entry(k).or_insert_with(GaussianRational::zero);
            *slot = slot.clone() + coeff;
            highest = highest.max(Some(k));
        } else if !coeff.is_zero() {
            return Err(cur.error_at(op_pos, format!("constant term has no `{var}` factor")));
        }
        op_pos = cur.pos;
        if cur.eat_sym('+') {
            negative = false;
        } else if cur.eat_sym('-') {
            negative = true;
        } else {
            return Ok((terms, highest));
        }
    }
}

fn term(
    cur: &mut Cursor,
    params: &HashMap<String, GaussianRational>,
    var: char,
) -> std::result::Result<(GaussianRational, Option<usize>), SyntaxError> {
    let mut coeff = GaussianRational::one();
    let mut order = None;
    let mut divide = false;
    loop {
        let start = cur.pos;
        if let Some(k) = signal_factor(cur, var)? {
            if divide {
                return Err(cur.error_at(start, "cannot divide by a signal"));
            }
            if order.is_some() {
                return Err(cur.error_at(start, "product of two signals is not linear"));
            }
            order = Some(k);
        } else {
            let c = coeff_atom(cur, params)?;
            coeff = if divide {
                let inv = c
                    .inv()
                    .ok_or_else(|| cur.error_at(start, "division by zero"))?;
                coeff * inv
            } else {
                coeff * c
            };
        }
        if cur.eat_sym('*') {
            divide = false;
        } else if cur.eat_sym('/') {
            divide = true;
        } else {
            return Ok((coeff, order));
        }
    }
}

// `y'`, `y^(3)`, ...; `None` when the next token is not a signal name.
fn signal_factor(cur: &mut Cursor, var: char) -> std::result::Result<Option<usize>, SyntaxError> {
    let name = match cur.peek() {
        Tok::Ident(s) if s == "y" || s == "u" => s.clone(),
        _ => return Ok(None),
    };
    let start = cur.pos;
    if !name.starts_with(var) {
        let msg = if var == 'y' {
            "input terms in `u` belong on the right-hand side"
        } else {
            "output terms in `y` belong on the left-hand side"
        };
        return Err(cur.error(msg));
    }
    cur.bump();
    let mut order = 0;
    if cur.eat_sym('^') {
        cur.expect_sym('(')?;
        let Tok::Num(k) = cur.peek().clone() else {
            return Err(cur.error(format!(
                "expected a derivative order, found {}",
                cur.describe()
            )));
        };
        cur.bump();
        cur.expect_sym(')')?;
        order = usize::try_from(k).unwrap_or(usize::MAX);
    } else {
        while cur.eat_sym('\'') {
            order += 1;
        }
    }
    if order > MAX_ORDER {
        return Err(cur.error_at(
            start,
            format!("derivative order {order} exceeds {MAX_ORDER}"),
        ));
    }
    Ok(Some(order))
}

fn coeff_atom(
    cur: &mut Cursor,
    params: &HashMap<String, GaussianRational>,
) -> std::result::Result<GaussianRational, SyntaxError> {
    match cur.peek().clone() {
        Tok::Num(_) => {
            let r = cur.unsigned_rational()?;
            if cur.at_ident("i") {
                cur.bump();
                return Ok(GaussianRational::imag(r));
            }
            Ok(GaussianRational::real(r))
        }
        Tok::Ident(name) if name == "i" => {
            cur.bump();
            Ok(GaussianRational::i())
        }
        Tok::Ident(name) => match params.get(&name) {
            Some(v) => {
                cur.bump();
                Ok(v.clone())
            }
            None => Err(cur.error(format!("unknown parameter `{name}`"))),
        },
        Tok::Sym('(') => {
            cur.bump();
            let v = coeff_sum(cur, params)?;
            cur.expect_sym(')')?;
            Ok(v)
        }
        _ => Err(cur.error(format!("expected a coefficient, found {}", cur.describe()))),
    }
}

fn coeff_sum(
    cur: &mut Cursor,
    params: &HashMap<String, GaussianRational>,
) -> std::result::Result<GaussianRational, SyntaxError> {
    let mut negative = cur.eat_sym('-');
    let mut total = GaussianRational::zero();
    loop {
        let v = coeff_product(cur, params)?;
        total = if negative { total - v } else { total + v };
        if cur.eat_sym('+') {
            negative = false;
        } else if cur.eat_sym('-') {
            negative = true;
        } else {
            return Ok(total);
        }
    }
}

fn coeff_product(
    cur: &mut Cursor,
    params: &HashMap<String, GaussianRational>,
) -> std::result::Result<GaussianRational, SyntaxError> {
    let mut v = coeff_atom(cur, params)?;
    loop {
        if cur.eat_sym('*') {
            v = v * coeff_atom(cur, params)?;
        } else if cur.at_sym('/') {
            cur.bump();
            let start = cur.pos;
            let d = coeff_atom(cur, params)?;
            v = v * d
                .inv()
                .ok_or_else(|| cur.error_at(start, "division by zero"))?;
        } else {
            return Ok(v);
        }
    }
}
