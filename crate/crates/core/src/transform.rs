//! Rule-based symbolic Laplace and Fourier transforms.
//!
//! The base rule is `L[t^n e^{ct}] = n!/(s - c)^{n+1}`, applied after writing
//! sin/cos as complex exponentials. Fourier results are rational functions in
//! the monomial `iω`, so the Laplace-to-Fourier bridge is a relabeling.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::existence::require_fourier;
use crate::poly::Poly;
use crate::rational::{RationalExpr, Var};
use crate::scalar::{factorial, GaussianRational};
use crate::signal::{OscKind, SignalExpr, Support};

/// Left edge of a Laplace region of convergence `Re s > abscissa`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Abscissa {
    NegInfinity,
    At(BigRational),
}

impl Abscissa {
    pub fn to_f64(&self) -> f64 {
        match self {
            Abscissa::NegInfinity => f64::NEG_INFINITY,
            Abscissa::At(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }

    fn max(self, other: Abscissa) -> Abscissa {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl PartialOrd for Abscissa {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Abscissa {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Abscissa::NegInfinity, Abscissa::NegInfinity) => Ordering::Equal,
            (Abscissa::NegInfinity, _) => Ordering::Less,
            (_, Abscissa::NegInfinity) => Ordering::Greater,
            (Abscissa::At(a), Abscissa::At(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Abscissa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Abscissa::NegInfinity => f.write_str("-inf"),
            Abscissa::At(r) => write!(f, "{r}"),
        }
    }
}

/// A transform in canonical form plus the hypotheses it relied on.
#[derive(Clone, PartialEq, Debug)]
pub struct TransformResult {
    pub expr: RationalExpr,
    /// Laplace results only.
    pub roc: Option<Abscissa>,
    pub conditions: Vec<String>,
}

impl Serialize for TransformResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TransformResult", 5)?;
        st.serialize_field("var", &self.expr.var())?;
        st.serialize_field("num", self.expr.num().coeffs())?;
        st.serialize_field("den", self.expr.den().coeffs())?;
        st.serialize_field("roc", &self.roc.as_ref().map(|r| r.to_string()))?;
        st.serialize_field("conditions", &self.conditions)?;
        st.end()
    }
}

/// `f^{(k)}(0⁺)` for `k = 0..n-1`, exact.
#[derive(Clone, PartialEq, Debug)]
pub struct InitialValues {
    pub values: Vec<GaussianRational>,
}

impl InitialValues {
    pub fn of(f: &SignalExpr, n: u32) -> Result<Self> {
        let mut g = f.clone();
        let mut values = Vec::with_capacity(n as usize);
        for _ in 0..n {
            values.push(g.value_at_zero_plus());
            g = g.differentiate()?.normalize();
        }
        Ok(Self { values })
    }

    pub fn points(&self) -> Vec<Complex<f64>> {
        self.values
            .iter()
            .map(crate::scalar::ToComplex::to_complex)
            .collect()
    }
}

// (coefficient, power of t, rate, reversed)
type ExpTerm = (GaussianRational, u32, GaussianRational, bool);

// (pole, highest power, [(weight, power)])
type PoleGroup = (GaussianRational, u32, Vec<(GaussianRational, u32)>);

// Σ coeff·n!/(x - rate)^{n+1}, with x ↦ -x for reversed leaves. Every pole
// is known exactly, so the sum is built over one common denominator and
// reduced by exact root tests instead of a polynomial gcd.
fn exponential_sum(terms: &[ExpTerm], var: Var) -> RationalExpr {
    let mut groups: Vec<PoleGroup> = Vec::new();
    for (coeff, n, rate, reversed) in terms {
        // 1/(-x - r)^{n+1} = (-1)^{n+1}/(x + r)^{n+1}
        let pole = if *reversed {
            -rate.clone()
        } else {
            rate.clone()
        };
        let mut k = coeff.clone() * GaussianRational::real(factorial(*n));
        if *reversed && (n + 1) % 2 == 1 {
            k = -k;
        }
        if k.is_zero() {
            continue;
        }
        match groups.iter_mut().find(|g| g.0 == pole) {
            Some(g) => {
                g.1 = g.1.max(n + 1);
                g.2.push((k, n + 1));
            }
            None => groups.push((pole, n + 1, vec![(k, n + 1)])),
        }
    }
    let factors: Vec<Poly<GaussianRational>> = groups
        .iter()
        .map(|g| Poly::linear_root(g.0.clone()).pow(g.1))
        .collect();
    let mut num = Poly::zero();
    for (j, (pole, top, parts)) in groups.iter().enumerate() {
        let mut local = Poly::zero();
        for (k, power) in parts {
            local = &local + &Poly::linear_root(pole.clone()).pow(top - power).scale(k);
        }
        let others = factors
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != j)
            .fold(Poly::one(), |acc, (_, f)| &acc * f);
        num = &num + &(&local * &others);
    }
    if num.is_zero() {
        return RationalExpr::zero(var);
    }
    let mut powers: Vec<u32> = groups.iter().map(|g| g.1).collect();
    for (j, (pole, _, _)) in groups.iter().enumerate() {
        let root = Poly::linear_root(pole.clone());
        while powers[j] > 0 && num.eval(pole).is_zero() {
            num = num.div_rem(&root).expect("nonzero divisor").0;
            powers[j] -= 1;
        }
    }
    let den = groups
        .iter()
        .zip(&powers)
        .fold(Poly::one(), |acc, (g, &m)| {
            &acc * &Poly::linear_root(g.0.clone()).pow(m)
        });
    RationalExpr::from_reduced(num, den, var)
}

// Expanded exponential terms plus candidate pole locations.
fn expand(f: &SignalExpr) -> (Vec<ExpTerm>, Vec<GaussianRational>) {
    let mut terms = Vec::new();
    let mut poles = Vec::new();
    for t in f.normalize().terms() {
        let n = t.atom.poly_degree();
        let halves: &[bool] = match (t.atom.support(), t.reversed) {
            (Support::Causal, r) => {
                if r {
                    &[true]
                } else {
                    &[false]
                }
            }
            (Support::TwoSidedEven, _) => &[false, true],
        };
        for &rev in halves {
            // the mirrored half of a two-sided atom is sign·atom on t > 0
            let sign = if rev && t.atom.support() == Support::TwoSidedEven {
                t.atom.reflection_sign()
            } else {
                GaussianRational::one()
            };
            for (k, rate) in t.atom.euler_terms() {
                poles.push(if rev { -rate.clone() } else { rate.clone() });
                terms.push((t.coeff.clone() * sign.clone() * k, n, rate, rev));
            }
        }
    }
    (terms, poles)
}

fn tight_roc(expr: &RationalExpr, candidates: &[GaussianRational]) -> Abscissa {
    candidates
        .iter()
        .filter(|p| expr.den().eval(p).is_zero())
        .map(|p| Abscissa::At(p.re.clone()))
        .fold(Abscissa::NegInfinity, Abscissa::max)
}

fn laplace_with_poles(f: &SignalExpr) -> Result<(RationalExpr, Vec<GaussianRational>)> {
    if !f.is_causal() {
        return Err(Error::NonCausalInput);
    }
    let (terms, poles) = expand(f);
    Ok((exponential_sum(&terms, Var::S), poles))
}

/// Symbolic Laplace transform with the tight region of convergence.
pub fn laplace_symbolic(f: &SignalExpr) -> Result<TransformResult> {
    let (expr, poles) = laplace_with_poles(f)?;
    let roc = tight_roc(&expr, &poles);
    Ok(TransformResult {
        expr,
        roc: Some(roc),
        conditions: vec!["laplace_exists".into()],
    })
}

/// `F(s - s0)`, the transform of `e^{s0 t} f(t)`.
pub fn laplace_shift(f: &SignalExpr, s0: &GaussianRational) -> Result<TransformResult> {
    let (expr, poles) = laplace_with_poles(f)?;
    let shifted = expr.compose_affine(GaussianRational::one(), -s0.clone());
    let poles: Vec<_> = poles.into_iter().map(|p| p + s0.clone()).collect();
    let roc = tight_roc(&shifted, &poles);
    Ok(TransformResult {
        expr: shifted,
        roc: Some(roc),
        conditions: vec![
            "laplace_exists".into(),
            format!("frequency_shift s0 = {s0}"),
        ],
    })
}

/// `sⁿ F(s) - Σ_{k=1..n} s^{k-1} f^{(n-k)}(0⁺)`, the transform of the
/// `n`-th derivative.
pub fn laplace_derivative(f: &SignalExpr, n: u32) -> Result<TransformResult> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "differentiation order must be positive".into(),
        ));
    }
    let (expr, poles) = laplace_with_poles(f)?;
    f.nth_derivative(n)?;
    let init = InitialValues::of(f, n)?;
    let s_pow = |k: usize| Poly::monomial(GaussianRational::one(), k);
    let mut out = expr.mul(&RationalExpr::from_poly(s_pow(n as usize), Var::S))?;
    for k in 1..=n as usize {
        let v = init.values[n as usize - k].clone();
        if v.is_zero() {
            continue;
        }
        out = out.sub(&RationalExpr::from_poly(s_pow(k - 1).scale(&v), Var::S))?;
    }
    let roc = tight_roc(&out, &poles);
    Ok(TransformResult {
        expr: out,
        roc: Some(roc),
        conditions: vec![format!("laplace_exists_higher_deriv {n}")],
    })
}

/// `F(s)/s`, the transform of `t ↦ ∫₀ᵗ f`. The region is `Re s > max(roc, 0)`.
pub fn laplace_integral(f: &SignalExpr) -> Result<TransformResult> {
    let (expr, poles) = laplace_with_poles(f)?;
    let base_roc = tight_roc(&expr, &poles);
    let out = expr.div(&RationalExpr::var_monomial(Var::S))?;
    let roc = base_roc.max(Abscissa::At(BigRational::zero()));
    Ok(TransformResult {
        expr: out,
        roc: Some(roc),
        conditions: vec!["0 < Re s".into(), "laplace_exists".into()],
    })
}

/// Symbolic Fourier transform as a rational function of `iω`.
pub fn fourier_symbolic(f: &SignalExpr) -> Result<TransformResult> {
    require_fourier(f)?;
    let (terms, _) = expand(f);
    Ok(TransformResult {
        expr: exponential_sum(&terms, Var::IOmega),
        roc: None,
        conditions: vec!["fourier_exists".into()],
    })
}

fn fourier_with(
    f: &SignalExpr,
    condition: String,
    map: impl FnOnce(RationalExpr) -> Result<RationalExpr>,
) -> Result<TransformResult> {
    let base = fourier_symbolic(f)?;
    let mut conditions = base.conditions;
    conditions.push(condition);
    Ok(TransformResult {
        expr: map(base.expr)?,
        roc: None,
        conditions,
    })
}

fn omega_shift(e: &RationalExpr, w0: &BigRational) -> RationalExpr {
    // ω ↦ ω - w0 is iω ↦ iω - i·w0
    e.compose_affine(GaussianRational::one(), -GaussianRational::imag(w0.clone()))
}

/// `F(ω - w0)`, the transform of `e^{i w0 t} f(t)`.
pub fn fourier_shift(f: &SignalExpr, w0: &BigRational) -> Result<TransformResult> {
    fourier_with(f, format!("frequency_shift w0 = {w0}"), |e| {
        Ok(omega_shift(&e, w0))
    })
}

/// Cos: `(F(ω-w0) + F(ω+w0))/2`; Sin: `(F(ω-w0) - F(ω+w0))/(2i)`.
pub fn fourier_modulate(
    f: &SignalExpr,
    w0: &BigRational,
    kind: OscKind,
) -> Result<TransformResult> {
    fourier_with(f, format!("modulation {kind:?} w0 = {w0}"), |e| {
        let lo = omega_shift(&e, w0);
        let hi = omega_shift(&e, &-w0.clone());
        Ok(match kind {
            OscKind::Cos => lo.add(&hi)?.scale(&GaussianRational::from_ratio(1, 2)),
            OscKind::Sin => {
                let k = (GaussianRational::from_int(2) * GaussianRational::i())
                    .inv()
                    .expect("nonzero");
                lo.sub(&hi)?.scale(&k)
            }
        })
    })
}

/// `F(-ω)`, the transform of `f(-t)`.
pub fn fourier_time_reverse(f: &SignalExpr) -> Result<TransformResult> {
    fourier_with(f, "time_reversal".into(), |e| {
        Ok(e.compose_affine(-GaussianRational::one(), GaussianRational::zero()))
    })
}

/// `(iω)ⁿ F(ω)`, the transform of the `n`-th derivative.
///
/// Requires `f` and its first `n - 1` derivatives to be continuous at the
/// origin; a jump there would contribute a term the rule does not have.
pub fn fourier_derivative(f: &SignalExpr, n: u32) -> Result<TransformResult> {
    require_fourier(f)?;
    let mut g = f.clone();
    for k in 0..n {
        let (right, left) = (g.value_at_zero_plus(), g.value_at_zero_minus());
        if right != left {
            return Err(Error::NonDifferentiable(format!(
                "derivative {k} jumps at t = 0 (f(0-) = {left}, f(0+) = {right})"
            )));
        }
        g = g.differentiate()?.normalize();
        require_fourier(&g)?;
    }
    let mut conditions = vec![format!("fourier_exists_higher_deriv {n}")];
    for p in 0..n {
        conditions.push(format!("derivative {p} -> 0 at +inf and -inf"));
    }
    let base = fourier_symbolic(f)?;
    let z_pow = RationalExpr::from_poly(
        Poly::monomial(GaussianRational::one(), n as usize),
        Var::IOmega,
    );
    Ok(TransformResult {
        expr: base.expr.mul(&z_pow)?,
        roc: None,
        conditions,
    })
}

/// Fourier transform of a causal signal obtained from its Laplace transform at
/// `s = iω`; cross-checked against the direct Fourier rules.
pub fn laplace_to_fourier(f: &SignalExpr) -> Result<TransformResult> {
    if !f.is_causal() {
        return Err(Error::NonCausalInput);
    }
    require_fourier(f)?;
    let bridged = laplace_symbolic(f)?.expr.relabel(Var::IOmega);
    let direct = fourier_symbolic(f)?.expr;
    if !bridged.equals(&direct)? {
        return Err(Error::Inconsistent(format!(
            "Laplace at s = iw gives {bridged}, direct Fourier gives {direct}"
        )));
    }
    Ok(TransformResult {
        expr: bridged,
        roc: None,
        conditions: vec![
            "f(t) = 0 for t < 0".into(),
            "Re s = 0".into(),
            "fourier_exists".into(),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use crate::signal::{Atom, Osc};
    use crate::syntax::parse_signal;

    fn sig(s: &str) -> SignalExpr {
        parse_signal(s).unwrap()
    }

    fn rf(num: &[&str], den: &[&str], var: Var) -> RationalExpr {
        let p = |cs: &[&str]| Poly::new(cs.iter().map(|c| c.parse().unwrap()).collect());
        RationalExpr::new(p(num), p(den), var).unwrap()
    }

    fn s(num: &[&str], den: &[&str]) -> RationalExpr {
        rf(num, den, Var::S)
    }

    fn w(num: &[&str], den: &[&str]) -> RationalExpr {
        rf(num, den, Var::IOmega)
    }

    fn at(r: i64) -> Option<Abscissa> {
        Some(Abscissa::At(ratio(r, 1)))
    }

    #[test]
    fn laplace_base_rule() {
        let r = laplace_symbolic(&sig("causal(1)")).unwrap();
        assert!(r.expr.equals(&s(&["1"], &["0", "1"])).unwrap());
        assert_eq!(r.roc, at(0));
        let r = laplace_symbolic(&sig("causal(exp(-1*t))")).unwrap();
        assert!(r.expr.equals(&s(&["1"], &["1", "1"])).unwrap());
        assert_eq!(r.roc, at(-1));
        let r = laplace_symbolic(&sig("causal(t*exp(-2*t))")).unwrap();
        assert!(r.expr.equals(&s(&["1"], &["4", "4", "1"])).unwrap());
        assert_eq!(r.roc, at(-2));
        // cos(3t)e^{-t}: (s+1)/((s+1)^2+9), real coefficients after recombination
        let r = laplace_symbolic(&sig("causal(exp(-1*t)*cos(3*t))")).unwrap();
        assert!(r.expr.equals(&s(&["1", "1"], &["10", "2", "1"])).unwrap());
        assert!(r
            .expr
            .num()
            .coeffs()
            .iter()
            .chain(r.expr.den().coeffs())
            .all(|c| c.is_real()));
        assert_eq!(r.roc, at(-1));
        assert_eq!(
            laplace_symbolic(&sig("twosided(exp(-1*abs(t)))")).unwrap_err(),
            Error::NonCausalInput
        );
    }

    #[test]
    fn roc_is_tight_after_cancellation() {
        let f = sig("causal(exp(2*t)) + -1*causal(exp(2*t)) + causal(exp(-3*t))");
        assert_eq!(laplace_symbolic(&f).unwrap().roc, at(-3));
        assert_eq!(
            laplace_symbolic(&SignalExpr::zero()).unwrap().roc,
            Some(Abscissa::NegInfinity)
        );
    }

    #[test]
    fn shift_examples() {
        let r = laplace_shift(&sig("causal(1)"), &GaussianRational::from_int(-3)).unwrap();
        assert!(r.expr.equals(&s(&["1"], &["3", "1"])).unwrap());
        assert_eq!(r.roc, at(-3));
        let f = sig("causal(t^2*exp(-1*t)*sin(2*t))");
        let r = laplace_shift(&f, &GaussianRational::zero()).unwrap();
        assert!(r.expr.equals(&laplace_symbolic(&f).unwrap().expr).unwrap());
        let r = laplace_shift(&sig("causal(exp(-1*t))"), &GaussianRational::one()).unwrap();
        assert!(r.expr.equals(&s(&["1"], &["0", "1"])).unwrap());
        assert_eq!(r.roc, at(0));
    }

    #[test]
    fn derivative_examples() {
        let e = sig("causal(exp(-1*t))");
        let r = laplace_derivative(&e, 1).unwrap();
        assert!(r.expr.equals(&s(&["-1"], &["1", "1"])).unwrap());
        let direct = laplace_symbolic(&e.differentiate().unwrap()).unwrap();
        assert!(r.expr.equals(&direct.expr).unwrap());

        let r = laplace_derivative(&sig("causal(1)"), 1).unwrap();
        assert!(r.expr.is_zero());

        let f = sig("causal(t^2*exp(-1*t))");
        let r = laplace_derivative(&f, 2).unwrap();
        assert!(r
            .expr
            .equals(&s(&["0", "0", "2"], &["1", "3", "3", "1"]))
            .unwrap());
        let direct = laplace_symbolic(&f.nth_derivative(2).unwrap()).unwrap();
        assert!(r.expr.equals(&direct.expr).unwrap());
        assert_eq!(
            r.conditions,
            vec!["laplace_exists_higher_deriv 2".to_string()]
        );

        let iv = InitialValues::of(&sig("causal(t*exp(-1*t)) + causal(exp(-2*t))"), 3).unwrap();
        assert_eq!(
            iv.values,
            vec![
                GaussianRational::from_int(1),
                GaussianRational::from_int(-1),
                GaussianRational::from_int(2)
            ]
        );
    }

    #[test]
    fn integral_examples() {
        let e = sig("causal(exp(-1*t))");
        let r = laplace_integral(&e).unwrap();
        assert!(r.expr.equals(&s(&["1"], &["0", "1", "1"])).unwrap());
        assert_eq!(r.roc, at(0));
        let direct = laplace_symbolic(&e.antiderivative().unwrap()).unwrap();
        assert!(r.expr.equals(&direct.expr).unwrap());
        let r = laplace_integral(&sig("causal(1)")).unwrap();
        assert!(r.expr.equals(&s(&["1"], &["0", "0", "1"])).unwrap());
        assert!(laplace_integral(&SignalExpr::zero())
            .unwrap()
            .expr
            .is_zero());
    }

    #[test]
    fn fourier_examples() {
        let two = sig("twosided(exp(-1*abs(t)))");
        let r = fourier_symbolic(&two).unwrap();
        assert!(r.expr.equals(&w(&["-2"], &["-1", "0", "1"])).unwrap());
        assert_eq!(r.roc, None);
        let e = sig("causal(exp(-1*t))");
        assert!(fourier_symbolic(&e)
            .unwrap()
            .expr
            .equals(&w(&["1"], &["1", "1"]))
            .unwrap());
        assert!(matches!(
            fourier_symbolic(&sig("causal(1)")),
            Err(Error::NotAbsolutelyIntegrable(_))
        ));
    }

    #[test]
    fn fourier_rule_examples() {
        let two = sig("twosided(exp(-1*abs(t)))");
        let base = fourier_symbolic(&two).unwrap().expr;
        assert!(fourier_shift(&two, &ratio(0, 1))
            .unwrap()
            .expr
            .equals(&base)
            .unwrap());
        // 2/(1 + (ω-1)^2) with iω = z: ω = -i z, so (ω-1)^2 = (-iz - 1)^2 = -z^2 + 2iz + 1
        let shifted = fourier_shift(&two, &ratio(1, 1)).unwrap().expr;
        assert!(shifted.equals(&w(&["2"], &["2", "2 i", "-1"])).unwrap());
        let e = sig("causal(exp(-1*t))");
        // 1/(1 + i(ω-2)) = 1/(1 + z - 2i)
        let r = fourier_shift(&e, &ratio(2, 1)).unwrap().expr;
        assert!(r.equals(&w(&["1"], &["1-2 i", "1"])).unwrap());

        let f = sig("causal(t*exp(-1/2*t)*sin(1*t))");
        assert!(fourier_modulate(&f, &ratio(0, 1), OscKind::Cos)
            .unwrap()
            .expr
            .equals(&fourier_symbolic(&f).unwrap().expr)
            .unwrap());
        assert!(fourier_modulate(&f, &ratio(0, 1), OscKind::Sin)
            .unwrap()
            .expr
            .is_zero());

        assert!(fourier_time_reverse(&two)
            .unwrap()
            .expr
            .equals(&base)
            .unwrap());
        let r = fourier_time_reverse(&e).unwrap().expr;
        assert!(r.equals(&w(&["1"], &["1", "-1"])).unwrap());
        let sum = SignalExpr::Sum(vec![two.clone(), e.clone()]);
        let r = fourier_time_reverse(&sum).unwrap().expr;
        assert!(r
            .equals(&base.add(&w(&["1"], &["1", "-1"])).unwrap())
            .unwrap());
    }

    #[test]
    fn fourier_derivative_examples() {
        let te = sig("causal(t*exp(-1*t))");
        let r = fourier_derivative(&te, 1).unwrap().expr;
        assert!(r.equals(&w(&["0", "1"], &["1", "2", "1"])).unwrap());
        let direct = fourier_symbolic(&sig("causal(exp(-1*t)) + -1*causal(t*exp(-1*t))"))
            .unwrap()
            .expr;
        assert!(r.equals(&direct).unwrap());
        assert!(fourier_derivative(&te, 0)
            .unwrap()
            .expr
            .equals(&fourier_symbolic(&te).unwrap().expr)
            .unwrap());
        // jump at the origin
        assert!(matches!(
            fourier_derivative(&sig("causal(exp(-1*t))"), 1),
            Err(Error::NonDifferentiable(_))
        ));
        // a symmetric pair without a jump is fine
        let pair = sig("causal(exp(-1*t)) + -1*reverse(causal(exp(-1*t)))");
        assert!(
            fourier_derivative(&pair, 1).is_err(),
            "value jumps from -1 to 1"
        );
        let pair = sig("causal(exp(-1*t)) + reverse(causal(exp(-1*t)))");
        let r = fourier_derivative(&pair, 1).unwrap().expr;
        let d = fourier_symbolic(&pair.differentiate().unwrap())
            .unwrap()
            .expr;
        assert!(r.equals(&d).unwrap());
    }

    #[test]
    fn bridge_examples() {
        let r = laplace_to_fourier(&sig("causal(exp(-1*t))")).unwrap();
        assert!(r.expr.equals(&w(&["1"], &["1", "1"])).unwrap());
        let r = laplace_to_fourier(&sig("causal(t*exp(-2*t))")).unwrap();
        assert!(r.expr.equals(&w(&["1"], &["4", "4", "1"])).unwrap());
        assert_eq!(
            laplace_to_fourier(&sig("twosided(exp(-1*abs(t)))")).unwrap_err(),
            Error::NonCausalInput
        );
    }

    #[test]
    fn json_shape() {
        let r = laplace_symbolic(&sig("causal(exp(-1*t))")).unwrap();
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"var":"s","num":["1"],"den":["1","1"],"roc":"-1","conditions":["laplace_exists"]}"#
        );
        let r = fourier_symbolic(&sig("causal(exp((-1+1 i)*t))")).unwrap();
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"var":"iw","num":["1"],"den":["1-1 i","1"],"roc":null,"conditions":["fourier_exists"]}"#
        );
    }

    #[test]
    fn two_sided_with_oscillation() {
        // t e^{-|t|} is odd: F = 1/(z+1)^2 - 1/(1-z)^2
        let f: SignalExpr = Atom::two_sided(1, GaussianRational::from_int(-1), Osc::None)
            .unwrap()
            .into();
        let r = fourier_symbolic(&f).unwrap().expr;
        let expected = w(&["1"], &["1", "2", "1"])
            .sub(&w(&["1"], &["1", "-2", "1"]))
            .unwrap();
        assert!(r.equals(&expected).unwrap());
    }
}
