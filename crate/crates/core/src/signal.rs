//! Time-domain signal expressions.
//!
//! Every leaf is an [`Atom`] `t^n · e^{c·t} · [1 | sin(w t) | cos(w t)]`, either
//! gated to `t ≥ 0` or made two-sided with `e^{c·|t|}`. Leaves combine through
//! scaling, finite sums and time reversal. The grammar is closed under
//! differentiation, exponential/oscillatory modulation and integration from 0,
//! which is what the transform rules need.

use std::collections::BTreeMap;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{factorial, GaussianRational, Real, ToComplex};

/// Oscillatory factor of an atom.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Osc {
    None,
    Sin(BigRational),
    Cos(BigRational),
}

/// Where an atom lives on the time axis.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Support {
    /// Zero for `t < 0`.
    Causal,
    /// `t^n e^{c|t|} osc(w t)` on the whole line.
    TwoSidedEven,
}

/// Leaf signal `t^n · e^{c·t} · osc(w t)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Atom {
    poly_degree: u32,
    exp_rate: GaussianRational,
    osc: Osc,
    support: Support,
}

// Sorting key for merging like terms; BigRational is Ord, GaussianRational is not.
type AtomKey = (Support, u32, BigRational, BigRational, Osc);

impl Atom {
    pub fn causal(poly_degree: u32, exp_rate: GaussianRational, osc: Osc) -> Self {
        Self {
            poly_degree,
            exp_rate,
            osc,
            support: Support::Causal,
        }
    }

    /// Two-sided atoms must decay: `Re(c) < 0`.
    pub fn two_sided(poly_degree: u32, exp_rate: GaussianRational, osc: Osc) -> Result<Self> {
        if !exp_rate.re.is_negative() {
            return Err(Error::InvalidSignal(format!(
                "two-sided atom needs Re(c) < 0, got c = {exp_rate}"
            )));
        }
        Ok(Self {
            poly_degree,
            exp_rate,
            osc,
            support: Support::TwoSidedEven,
        })
    }

    /// Causal unit step.
    pub fn step() -> Self {
        Self::causal(0, GaussianRational::zero(), Osc::None)
    }

    pub fn poly_degree(&self) -> u32 {
        self.poly_degree
    }

    pub fn exp_rate(&self) -> &GaussianRational {
        &self.exp_rate
    }

    pub fn osc(&self) -> &Osc {
        &self.osc
    }

    pub fn support(&self) -> Support {
        self.support
    }

    fn key(&self) -> AtomKey {
        (
            self.support,
            self.poly_degree,
            self.exp_rate.re.clone(),
            self.exp_rate.im.clone(),
            self.osc.clone(),
        )
    }

    fn from_key(k: AtomKey) -> Self {
        Self {
            support: k.0,
            poly_degree: k.1,
            exp_rate: GaussianRational::new(k.2, k.3),
            osc: k.4,
        }
    }

    fn with_osc(&self, osc: Osc) -> Self {
        Self {
            osc,
            ..self.clone()
        }
    }

    pub fn eval<F: Real>(&self, t: F) -> Complex<F> {
        if self.support == Support::Causal && t < F::zero() {
            return Complex::zero();
        }
        let c: Complex<F> = self.exp_rate.to_complex();
        let tau = match self.support {
            Support::Causal => t,
            Support::TwoSidedEven => t.abs(),
        };
        let mut v = (c * tau).exp() * t.powi(self.poly_degree as i32);
        match &self.osc {
            Osc::None => {}
            Osc::Sin(w) => v = v * (crate::scalar::rational_to_real::<F>(w) * t).sin(),
            Osc::Cos(w) => v = v * (crate::scalar::rational_to_real::<F>(w) * t).cos(),
        }
        v
    }

    /// Exact right-hand limit at 0.
    fn value_at_zero(&self) -> GaussianRational {
        match (self.poly_degree, &self.osc) {
            (0, Osc::Sin(_)) => GaussianRational::zero(),
            (0, _) => GaussianRational::one(),
            _ => GaussianRational::zero(),
        }
    }

    /// `f(-t) = sign · f(t)` for two-sided atoms.
    pub(crate) fn reflection_sign(&self) -> GaussianRational {
        let odd = (self.poly_degree % 2 == 1) ^ matches!(self.osc, Osc::Sin(_));
        if odd {
            -GaussianRational::one()
        } else {
            GaussianRational::one()
        }
    }

    /// Writes the oscillation with complex exponentials:
    /// `Σ coeff · t^n · e^{rate·t}`.
    pub(crate) fn euler_terms(&self) -> Vec<(GaussianRational, GaussianRational)> {
        let c = self.exp_rate.clone();
        let half = GaussianRational::from_ratio(1, 2);
        match &self.osc {
            Osc::None => vec![(GaussianRational::one(), c)],
            Osc::Cos(w) => {
                let iw = GaussianRational::imag(w.clone());
                vec![(half.clone(), c.clone() + iw.clone()), (half, c - iw)]
            }
            Osc::Sin(w) => {
                let iw = GaussianRational::imag(w.clone());
                // 1/(2i) = -i/2
                let k = GaussianRational::imag(-ratio_half());
                vec![(k.clone(), c.clone() + iw.clone()), (-k, c - iw)]
            }
        }
    }
}

fn ratio_half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// Float snapshot of a signal for repeated pointwise evaluation, as used by
/// quadrature. Agrees with [`SignalExpr::eval`].
pub struct CompiledSignal<F> {
    terms: Vec<CompiledTerm<F>>,
}

struct CompiledTerm<F> {
    coeff: Complex<F>,
    degree: i32,
    rate: Complex<F>,
    osc: Option<(bool, F)>,
    two_sided: bool,
    reversed: bool,
}

impl<F: Real> CompiledSignal<F> {
    pub fn new(f: &SignalExpr) -> Self {
        let terms = f
            .terms()
            .into_iter()
            .filter(|t| !t.coeff.is_zero())
            .map(|t| CompiledTerm {
                coeff: t.coeff.to_complex(),
                degree: t.atom.poly_degree as i32,
                rate: t.atom.exp_rate.to_complex(),
                osc: match &t.atom.osc {
                    Osc::None => None,
                    Osc::Sin(w) => Some((true, crate::scalar::rational_to_real(w))),
                    Osc::Cos(w) => Some((false, crate::scalar::rational_to_real(w))),
                },
                two_sided: t.atom.support == Support::TwoSidedEven,
                reversed: t.reversed,
            })
            .collect();
        Self { terms }
    }

    pub fn eval(&self, t: F) -> Complex<F> {
        self.eval_times_exp(t, Complex::zero())
    }

    /// `f(t)·e^{k t}`, with `k t` folded into each exponent before
    /// exponentiating so that a growing signal against a decaying kernel
    /// never meets as `∞·0`.
    pub fn eval_times_exp(&self, t: F, k: Complex<F>) -> Complex<F> {
        let mut acc = Complex::zero();
        let kt = k * t;
        for term in &self.terms {
            let x = if term.reversed { -t } else { t };
            if !term.two_sided && x < F::zero() {
                continue;
            }
            let mut v = (term.rate * x.abs() + kt).exp() * x.powi(term.degree);
            if let Some((is_sin, w)) = term.osc {
                v = v * if is_sin { (w * x).sin() } else { (w * x).cos() };
            }
            acc = acc + term.coeff * v;
        }
        acc
    }
}

/// Time-domain signal AST.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum SignalExpr {
    Atom(Atom),
    Scale {
        coeff: GaussianRational,
        inner: Box<SignalExpr>,
    },
    /// Nonempty list of terms.
    Sum(Vec<SignalExpr>),
    /// `t ↦ f(-t)`.
    TimeReverse(Box<SignalExpr>),
}

/// One flattened term: `coeff · atom(±t)`.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Term {
    pub coeff: GaussianRational,
    pub atom: Atom,
    pub reversed: bool,
}

impl From<Atom> for SignalExpr {
    fn from(a: Atom) -> Self {
        SignalExpr::Atom(a)
    }
}

impl SignalExpr {
    /// The zero signal, written `0·step`.
    pub fn zero() -> Self {
        Self::scale(GaussianRational::zero(), Atom::step().into())
    }

    pub fn scale(coeff: GaussianRational, inner: SignalExpr) -> Self {
        SignalExpr::Scale {
            coeff,
            inner: Box::new(inner),
        }
    }

    /// Sum of terms; an empty list gives the zero signal.
    pub fn sum(terms: Vec<SignalExpr>) -> Self {
        if terms.is_empty() {
            Self::zero()
        } else {
            SignalExpr::Sum(terms)
        }
    }

    pub fn reverse(inner: SignalExpr) -> Self {
        SignalExpr::TimeReverse(Box::new(inner))
    }

    /// `a·f + b·g`.
    pub fn linear_combination(
        a: GaussianRational,
        f: SignalExpr,
        b: GaussianRational,
        g: SignalExpr,
    ) -> Self {
        SignalExpr::Sum(vec![Self::scale(a, f), Self::scale(b, g)])
    }

    /// Pointwise value at `t`.
    pub fn eval<F: Real>(&self, t: F) -> Complex<F> {
        match self {
            SignalExpr::Atom(a) => a.eval(t),
            SignalExpr::Scale { coeff, inner } => {
                let k: Complex<F> = coeff.to_complex();
                if k.is_zero() {
                    return Complex::zero();
                }
                k * inner.eval(t)
            }
            SignalExpr::Sum(terms) => terms.iter().fold(Complex::zero(), |acc, f| acc + f.eval(t)),
            SignalExpr::TimeReverse(inner) => inner.eval(-t),
        }
    }

    /// Visits every leaf with its accumulated coefficient and reversal parity.
    pub(crate) fn terms(&self) -> Vec<Term> {
        let mut out = Vec::new();
        self.collect_terms(GaussianRational::one(), false, &mut out);
        out
    }

    fn collect_terms(&self, coeff: GaussianRational, reversed: bool, out: &mut Vec<Term>) {
        match self {
            SignalExpr::Atom(a) => out.push(Term {
                coeff,
                atom: a.clone(),
                reversed,
            }),
            SignalExpr::Scale { coeff: k, inner } => {
                inner.collect_terms(coeff * k.clone(), reversed, out)
            }
            SignalExpr::Sum(ts) => {
                for t in ts {
                    t.collect_terms(coeff.clone(), reversed, out);
                }
            }
            SignalExpr::TimeReverse(inner) => inner.collect_terms(coeff, !reversed, out),
        }
    }

    /// Leaves with their reversal parity, ignoring coefficients.
    pub fn atoms(&self) -> Vec<(Atom, bool)> {
        self.terms()
            .into_iter()
            .map(|t| (t.atom, t.reversed))
            .collect()
    }

    /// True when no leaf has support on `t < 0`.
    pub fn is_causal(&self) -> bool {
        self.terms()
            .iter()
            .all(|t| t.atom.support == Support::Causal && !t.reversed)
    }

    /// Flattens to a sum of scaled atoms, merging like terms and dropping
    /// zero coefficients. Reversed two-sided atoms fold into a sign.
    pub fn normalize(&self) -> Self {
        let mut merged: BTreeMap<(AtomKey, bool), GaussianRational> = BTreeMap::new();
        for Term {
            mut coeff,
            atom,
            mut reversed,
        } in self.terms()
        {
            if reversed && atom.support == Support::TwoSidedEven {
                coeff = coeff * atom.reflection_sign();
                reversed = false;
            }
            let slot = merged
                .entry((atom.key(), reversed))
                .or_insert_with(GaussianRational::zero);
            *slot = slot.clone() + coeff;
        }
        Self::from_terms(
            merged
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((k, reversed), coeff)| Term {
                    coeff,
                    atom: Atom::from_key(k),
                    reversed,
                })
                .collect(),
        )
    }

    pub(crate) fn from_terms(terms: Vec<Term>) -> Self {
        let mut out: Vec<SignalExpr> = terms
            .into_iter()
            .filter(|t| !t.coeff.is_zero())
            .map(|t| {
                let base: SignalExpr = if t.reversed {
                    Self::reverse(t.atom.into())
                } else {
                    t.atom.into()
                };
                if t.coeff.is_one() {
                    base
                } else {
                    Self::scale(t.coeff, base)
                }
            })
            .collect();
        match out.len() {
            0 => Self::zero(),
            1 => out.pop().unwrap(),
            _ => SignalExpr::Sum(out),
        }
    }

    /// True when every coefficient path is zero (after merging like terms).
    pub fn is_zero_signal(&self) -> bool {
        self.normalize() == Self::zero()
    }

    /// Exact right-hand limit `f(0⁺)`.
    pub fn value_at_zero_plus(&self) -> GaussianRational {
        self.side_value(false)
    }

    /// Exact left-hand limit `f(0⁻)`.
    pub fn value_at_zero_minus(&self) -> GaussianRational {
        self.side_value(true)
    }

    fn side_value(&self, left: bool) -> GaussianRational {
        self.terms()
            .into_iter()
            .fold(GaussianRational::zero(), |acc, t| {
                // looking at 0⁻ of a reversed atom means looking at 0⁺ of the atom
                let atom_left = left ^ t.reversed;
                let v = match (t.atom.support, atom_left) {
                    (Support::Causal, true) => GaussianRational::zero(),
                    _ => t.atom.value_at_zero(),
                };
                acc + t.coeff * v
            })
    }

    /// Classical derivative. Causal atoms are differentiated on `t > 0`; the
    /// jump at the origin is not represented. Two-sided atoms are rejected.
    pub fn differentiate(&self) -> Result<Self> {
        match self {
            SignalExpr::Atom(a) => differentiate_atom(a),
            SignalExpr::Scale { coeff, inner } => {
                Ok(Self::scale(coeff.clone(), inner.differentiate()?))
            }
            SignalExpr::Sum(ts) => Ok(SignalExpr::Sum(
                ts.iter()
                    .map(|t| t.differentiate())
                    .collect::<Result<_>>()?,
            )),
            SignalExpr::TimeReverse(inner) => Ok(Self::scale(
                -GaussianRational::one(),
                Self::reverse(inner.differentiate()?),
            )),
        }
    }

    /// `n`-th derivative, normalized after each step.
    pub fn nth_derivative(&self, n: u32) -> Result<Self> {
        let mut f = self.clone();
        for _ in 0..n {
            f = f.differentiate()?.normalize();
        }
        Ok(f)
    }

    /// `e^{s0·t}·f(t)`, or `None` when a two-sided atom would leave the grammar.
    pub fn mul_exp(&self, s0: &GaussianRational) -> Option<Self> {
        if s0.is_zero() {
            return Some(self.clone());
        }
        let mut out = Vec::new();
        for mut t in self.normalize().terms() {
            if t.atom.support == Support::TwoSidedEven {
                return None;
            }
            // e^{s0 t}·g(-t) = [e^{-s0 τ} g(τ)] at τ = -t
            let shift = if t.reversed { -s0.clone() } else { s0.clone() };
            t.atom.exp_rate = t.atom.exp_rate.clone() + shift;
            out.push(t);
        }
        Some(Self::from_terms(out))
    }

    /// `cos(w0 t)·f(t)` or `sin(w0 t)·f(t)` via product-to-sum identities.
    pub fn mul_osc(&self, kind: OscKind, w0: &BigRational) -> Self {
        let mut out = Vec::new();
        for t in self.normalize().terms() {
            // on a reversed atom, sin(w0 t) = -sin(w0 τ)
            let sign = if t.reversed && kind == OscKind::Sin {
                -GaussianRational::one()
            } else {
                GaussianRational::one()
            };
            for (k, osc) in product_to_sum(t.atom.osc(), kind, w0) {
                out.push(Term {
                    coeff: t.coeff.clone() * sign.clone() * k,
                    atom: t.atom.with_osc(osc),
                    reversed: t.reversed,
                });
            }
        }
        Self::from_terms(out).normalize()
    }

    /// `e^{i w0 t}·f(t) = cos(w0 t) f + i·sin(w0 t) f`.
    pub fn mul_cexp(&self, w0: &BigRational) -> Self {
        Self::Sum(vec![
            self.mul_osc(OscKind::Cos, w0),
            Self::scale(GaussianRational::i(), self.mul_osc(OscKind::Sin, w0)),
        ])
        .normalize()
    }

    /// `t ↦ ∫₀ᵗ f(τ) dτ` for causal `f`.
    pub fn antiderivative(&self) -> Result<Self> {
        if !self.is_causal() {
            return Err(Error::NonCausalInput);
        }
        let mut out = Vec::new();
        for t in self.normalize().terms() {
            let n = t.atom.poly_degree;
            for (k, rate) in t.atom.euler_terms() {
                let coeff = t.coeff.clone() * k;
                if rate.is_zero() {
                    let c = coeff * GaussianRational::from_ratio(1, (n + 1) as i64);
                    out.push(Term {
                        coeff: c,
                        atom: Atom::causal(n + 1, rate, Osc::None),
                        reversed: false,
                    });
                    continue;
                }
                // ∫₀ᵗ τ^n e^{rτ} = e^{rt} Σ_k (-1)^k n!/(n-k)! t^{n-k} / r^{k+1} - (-1)^n n!/r^{n+1}
                let inv = rate.inv().expect("nonzero rate");
                let nf = GaussianRational::real(factorial(n));
                for k in 0..=n {
                    let mut c =
                        GaussianRational::real(factorial(n) / factorial(n - k)) * inv.pow(k + 1);
                    if k % 2 == 1 {
                        c = -c;
                    }
                    out.push(Term {
                        coeff: coeff.clone() * c,
                        atom: Atom::causal(n - k, rate.clone(), Osc::None),
                        reversed: false,
                    });
                }
                let mut c0 = nf * inv.pow(n + 1);
                if n % 2 == 0 {
                    c0 = -c0;
                }
                out.push(Term {
                    coeff: coeff.clone() * c0,
                    atom: Atom::step(),
                    reversed: false,
                });
            }
        }
        Ok(Self::from_terms(out).normalize())
    }
}

/// Modulating oscillation kind.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OscKind {
    Cos,
    Sin,
}

/// `osc(a t) · kind(b t)` as a weighted sum of single oscillations.
fn product_to_sum(existing: &Osc, kind: OscKind, b: &BigRational) -> Vec<(GaussianRational, Osc)> {
    let one = GaussianRational::one();
    let half = GaussianRational::from_ratio(1, 2);
    let neg_half = -half.clone();
    match (existing, kind) {
        (Osc::None, OscKind::Cos) => vec![(one, Osc::Cos(b.clone()))],
        (Osc::None, OscKind::Sin) => vec![(one, Osc::Sin(b.clone()))],
        // cos a cos b = [cos(a-b) + cos(a+b)]/2
        (Osc::Cos(a), OscKind::Cos) => {
            vec![(half.clone(), Osc::Cos(a - b)), (half, Osc::Cos(a + b))]
        }
        // sin a sin b = [cos(a-b) - cos(a+b)]/2
        (Osc::Sin(a), OscKind::Sin) => vec![(half, Osc::Cos(a - b)), (neg_half, Osc::Cos(a + b))],
        // sin a cos b = [sin(a+b) + sin(a-b)]/2
        (Osc::Sin(a), OscKind::Cos) => {
            vec![(half.clone(), Osc::Sin(a + b)), (half, Osc::Sin(a - b))]
        }
        // cos a sin b = [sin(a+b) - sin(a-b)]/2
        (Osc::Cos(a), OscKind::Sin) => vec![(half, Osc::Sin(a + b)), (neg_half, Osc::Sin(a - b))],
    }
}

fn differentiate_atom(a: &Atom) -> Result<SignalExpr> {
    if a.support == Support::TwoSidedEven {
        return Err(Error::NonDifferentiable(
            "two-sided atom has a kink at t = 0".to_string(),
        ));
    }
    let n = a.poly_degree;
    let mut terms = Vec::new();
    if n > 0 {
        terms.push(Term {
            coeff: GaussianRational::from_int(n as i64),
            atom: Atom {
                poly_degree: n - 1,
                ..a.clone()
            },
            reversed: false,
        });
    }
    terms.push(Term {
        coeff: a.exp_rate.clone(),
        atom: a.clone(),
        reversed: false,
    });
    match &a.osc {
        Osc::None => {}
        Osc::Cos(w) => terms.push(Term {
            coeff: GaussianRational::real(-w.clone()),
            atom: a.with_osc(Osc::Sin(w.clone())),
            reversed: false,
        }),
        Osc::Sin(w) => terms.push(Term {
            coeff: GaussianRational::real(w.clone()),
            atom: a.with_osc(Osc::Cos(w.clone())),
            reversed: false,
        }),
    }
    Ok(SignalExpr::from_terms(terms))
}

/// `eval_signal` in `f64`.
pub fn eval_signal(f: &SignalExpr, t: f64) -> Complex<f64> {
    f.eval(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn causal(n: u32, c: &str, osc: Osc) -> SignalExpr {
        Atom::causal(n, g(c), osc).into()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(causal(0, "0", Osc::None).eval(-1.0), Complex::new(0.0, 0.0));
        assert_eq!(causal(0, "-1", Osc::None).eval(0.0), Complex::new(1.0, 0.0));
        // t e^{-t} cos(2t) at t = 1, computed independently: e^{-1} cos 2
        let v = causal(1, "-1", Osc::Cos(ratio(2, 1))).eval(1.0);
        assert!((v.re - (-0.153_091_865_674_226_3)).abs() < 1e-12);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn two_sided_requires_decay() {
        assert!(Atom::two_sided(0, g("0"), Osc::None).is_err());
        assert!(Atom::two_sided(0, g("1/2"), Osc::None).is_err());
        let a = Atom::two_sided(0, g("-1"), Osc::None).unwrap();
        assert!((a.eval(-2.0f64).re - (-2.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn derivative_examples() {
        let e = causal(0, "-1", Osc::None);
        let d = e.differentiate().unwrap().normalize();
        assert_eq!(d, SignalExpr::scale(g("-1"), causal(0, "-1", Osc::None)));

        let te = causal(1, "-1", Osc::None);
        let d = te.differentiate().unwrap().normalize();
        let expected = SignalExpr::Sum(vec![
            causal(0, "-1", Osc::None),
            SignalExpr::scale(g("-1"), causal(1, "-1", Osc::None)),
        ])
        .normalize();
        assert_eq!(d, expected);

        let two: SignalExpr = Atom::two_sided(0, g("-1"), Osc::None).unwrap().into();
        assert!(matches!(
            two.differentiate(),
            Err(Error::NonDifferentiable(_))
        ));

        let step = causal(0, "0", Osc::None);
        assert!(step.differentiate().unwrap().is_zero_signal());
    }

    #[test]
    fn zero_limits() {
        let f = SignalExpr::Sum(vec![
            causal(0, "-1", Osc::Cos(ratio(3, 1))),
            SignalExpr::scale(g("2"), SignalExpr::reverse(causal(0, "-2", Osc::None))),
        ]);
        assert_eq!(f.value_at_zero_plus(), g("1"));
        assert_eq!(f.value_at_zero_minus(), g("2"));
        let two: SignalExpr = Atom::two_sided(0, g("-1"), Osc::None).unwrap().into();
        assert_eq!(two.value_at_zero_plus(), g("1"));
        assert_eq!(two.value_at_zero_minus(), g("1"));
    }

    #[test]
    fn normalize_folds_reversed_two_sided() {
        let a = Atom::two_sided(1, g("-1"), Osc::None).unwrap();
        let r = SignalExpr::reverse(a.clone().into()).normalize();
        assert_eq!(r, SignalExpr::scale(g("-1"), a.into()));
        for t in [-2.0, -0.3, 0.7, 3.0] {
            let lhs =
                SignalExpr::reverse(Atom::two_sided(1, g("-1"), Osc::None).unwrap().into()).eval(t);
            assert!((lhs - r.eval(t)).norm() < 1e-14);
        }
    }

    #[test]
    fn modulation_matches_pointwise_product() {
        let f = SignalExpr::Sum(vec![
            causal(1, "-1", Osc::Sin(ratio(2, 1))),
            SignalExpr::reverse(causal(0, "-1/2", Osc::Cos(ratio(1, 3)))),
            Atom::two_sided(2, g("-1"), Osc::Cos(ratio(1, 2)))
                .unwrap()
                .into(),
        ]);
        let w0 = ratio(3, 2);
        let wf = 1.5f64;
        let c = f.mul_osc(OscKind::Cos, &w0);
        let s = f.mul_osc(OscKind::Sin, &w0);
        let e = f.mul_cexp(&w0);
        for t in [-3.0, -1.1, -0.2, 0.4, 1.0, 2.5] {
            let v = f.eval(t);
            assert!((c.eval(t) - v * (wf * t).cos()).norm() < 1e-12);
            assert!((s.eval(t) - v * (wf * t).sin()).norm() < 1e-12);
            assert!((e.eval(t) - v * Complex::new(0.0, wf * t).exp()).norm() < 1e-12);
        }
    }

    #[test]
    fn exp_shift_matches_pointwise_product() {
        let f = SignalExpr::Sum(vec![
            causal(2, "-1", Osc::Cos(ratio(1, 1))),
            SignalExpr::reverse(causal(0, "-1", Osc::None)),
        ]);
        let s0 = g("-1/2+1 i");
        let m = f.mul_exp(&s0).unwrap();
        for t in [-2.0, -0.5, 0.5, 2.0] {
            let k = (Complex::new(-0.5, 1.0) * t).exp();
            assert!((m.eval(t) - f.eval(t) * k).norm() < 1e-12);
        }
        let two: SignalExpr = Atom::two_sided(0, g("-1"), Osc::None).unwrap().into();
        assert!(two.mul_exp(&s0).is_none());
    }

    #[test]
    fn antiderivative_matches_closed_forms() {
        // ∫₀ᵗ e^{-τ} = 1 - e^{-t}
        let a = causal(0, "-1", Osc::None).antiderivative().unwrap();
        for t in [0.0f64, 0.5, 2.0] {
            assert!((a.eval(t).re - (1.0 - (-t).exp())).abs() < 1e-14);
        }
        // ∫₀ᵗ 1 = t
        let a = causal(0, "0", Osc::None).antiderivative().unwrap();
        assert_eq!(a, causal(1, "0", Osc::None));
        // ∫₀ᵗ sin τ = 1 - cos t
        let a = causal(0, "0", Osc::Sin(ratio(1, 1)))
            .antiderivative()
            .unwrap();
        for t in [0.3, 1.7, 4.0f64] {
            let v = a.eval(t);
            assert!((v.re - (1.0 - t.cos())).abs() < 1e-13 && v.im.abs() < 1e-13);
        }
        let two: SignalExpr = Atom::two_sided(0, g("-1"), Osc::None).unwrap().into();
        assert!(matches!(two.antiderivative(), Err(Error::NonCausalInput)));
    }
}
