//! Rational functions in a single formal variable, kept in canonical form.

use std::fmt;

use num_complex::Complex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Poly, PolyDisplay};
use crate::scalar::{ExactField, Field, GaussianRational, Real, ToComplex};

/// Formal variable of a rational function.
///
/// `IOmega` denotes the monomial `iω`: Fourier-side expressions are polynomials
/// in `iω`, so relabeling `s ↦ iω` is a change of tag only.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Var {
    #[serde(rename = "s")]
    S,
    #[serde(rename = "iw")]
    IOmega,
}

impl Var {
    pub fn symbol(self) -> &'static str {
        match self {
            Var::S => "s",
            Var::IOmega => "(iw)",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::S => "s",
            Var::IOmega => "iw",
        })
    }
}

/// `num / den` in `var`.
///
/// Canonical form: numerator and denominator coprime, denominator monic, and
/// the zero function stored as `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction<K> {
    num: Poly<K>,
    den: Poly<K>,
    var: Var,
}

impl<K: ExactField> RationalFunction<K> {
    /// Builds and canonicalizes `num / den`.
    pub fn new(num: Poly<K>, den: Poly<K>, var: Var) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::canonical(num, den, var))
    }

    fn canonical(num: Poly<K>, den: Poly<K>, var: Var) -> Self {
        if num.is_zero() {
            return Self {
                num,
                den: Poly::one(),
                var,
            };
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g).expect("gcd nonzero");
        let (den, _) = den.div_rem(&g).expect("gcd nonzero");
        let lead = den.leading().expect("nonzero denominator").clone();
        let inv = K::one() / lead;
        Self {
            num: num.scale(&inv),
            den: den.scale(&inv),
            var,
        }
    }

    /// Wraps a pair the caller already knows is coprime with a monic denominator.
    pub(crate) fn from_reduced(num: Poly<K>, den: Poly<K>, var: Var) -> Self {
        debug_assert!(den.leading().is_some_and(|l| l.is_one()));
        Self { num, den, var }
    }

    pub fn from_poly(num: Poly<K>, var: Var) -> Self {
        Self {
            num,
            den: Poly::one(),
            var,
        }
    }

    pub fn constant(c: K, var: Var) -> Self {
        Self::from_poly(Poly::constant(c), var)
    }

    pub fn zero(var: Var) -> Self {
        Self::from_poly(Poly::zero(), var)
    }

    pub fn one(var: Var) -> Self {
        Self::constant(K::one(), var)
    }

    /// The variable itself.
    pub fn var_monomial(var: Var) -> Self {
        Self::from_poly(Poly::x(), var)
    }

    pub fn num(&self) -> &Poly<K> {
        &self.num
    }

    pub fn den(&self) -> &Poly<K> {
        &self.den
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Numerator degree exceeds denominator degree.
    pub fn is_improper(&self) -> bool {
        self.num.degree().unwrap_or(0) > self.den.degree().unwrap_or(0)
    }

    /// Re-canonicalizes; already-canonical input is returned unchanged.
    pub fn canonicalize(&self) -> Self {
        Self::canonical(self.num.clone(), self.den.clone(), self.var)
    }

    fn check_var(&self, other: &Self) -> Result<()> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(Error::VarMismatch {
                left: self.var,
                right: other.var,
            })
        }
    }

    /// Exact equality by cross-multiplication.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        self.check_var(other)?;
        Ok(&self.num * &other.den == &other.num * &self.den)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        // both operands are reduced, so only the shared denominator factor can cancel
        let g = self.den.gcd(&other.den);
        let div = |p: &Poly<K>| p.div_rem(&g).expect("gcd nonzero").0;
        let (da, db) = (div(&self.den), div(&other.den));
        let num = &(&self.num * &db) + &(&other.num * &da);
        if num.is_zero() {
            return Ok(Self::zero(self.var));
        }
        let h = num.gcd(&g);
        let num = num.div_rem(&h).expect("gcd nonzero").0;
        let den = &(&da * &db) * &g.div_rem(&h).expect("gcd nonzero").0;
        Ok(Self::from_reduced(num, den, self.var))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        Ok(Self::canonical(
            &self.num * &other.num,
            &self.den * &other.den,
            self.var,
        ))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        if other.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::canonical(
            &self.num * &other.den,
            &self.den * &other.num,
            self.var,
        ))
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
            var: self.var,
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero(self.var);
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
            var: self.var,
        }
    }

    /// Substitution `x ↦ scale·x + shift` in both numerator and denominator.
    pub fn compose_affine(&self, scale: K, shift: K) -> Self {
        if !scale.is_zero() {
            // an invertible substitution keeps numerator and denominator coprime
            let num = self.num.compose_affine(scale.clone(), shift.clone());
            let den = self.den.compose_affine(scale, shift);
            let inv = K::one() / den.leading().expect("nonzero denominator").clone();
            return Self {
                num: num.scale(&inv),
                den: den.scale(&inv),
                var: self.var,
            };
        }
        Self::canonical(
            self.num.compose_affine(scale.clone(), shift.clone()),
            self.den.compose_affine(scale, shift),
            self.var,
        )
    }

    /// Same polynomials, different variable tag.
    pub fn relabel(&self, var: Var) -> Self {
        Self {
            num: self.num.clone(),
            den: self.den.clone(),
            var,
        }
    }

    /// Exact evaluation; `None` at a pole.
    pub fn eval_exact(&self, x: &K) -> Option<K> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    /// Floating-point evaluation of `num(z) / den(z)`.
    ///
    /// Fails with [`Error::Pole`] when `|den(z)| ≤ 1e-12·(1 + |z|^deg(den))`.
    pub fn eval<F: Real>(&self, z: Complex<F>) -> Result<Complex<F>>
    where
        K: ToComplex<F>,
    {
        let d = self.den.eval_complex(z);
        let deg = self.den.degree().unwrap_or(0) as i32;
        let guard = F::lit(1e-12) * (F::one() + z.norm().powi(deg));
        if !(d.norm() > guard) {
            return Err(Error::Pole {
                re: z.re.to_f64().unwrap_or(f64::NAN),
                im: z.im.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(self.num.eval_complex(z) / d)
    }
}

impl<K: Field + fmt::Display> fmt::Display for RationalFunction<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = self.var.symbol();
        let num = PolyDisplay {
            poly: &self.num,
            var,
        };
        if self.den.is_constant() && self.den.coeff(0).is_one() {
            return write!(f, "{num}");
        }
        let den = PolyDisplay {
            poly: &self.den,
            var,
        };
        let wrap = |single: bool, s: String| if single { s } else { format!("({s})") };
        write!(
            f,
            "{}/{}",
            wrap(
                self.num.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1,
                num.to_string()
            ),
            wrap(
                self.den.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1,
                den.to_string()
            ),
        )
    }
}

/// Exact rational function over Gaussian rationals.
pub type RationalExpr = RationalFunction<GaussianRational>;

/// Convenience: `rational_equal` with the error contract.
pub fn rational_equal(f: &RationalExpr, g: &RationalExpr) -> Result<bool> {
    f.equals(g)
}

/// Convenience: float evaluation at a complex point.
pub fn eval_rational(f: &RationalExpr, z: Complex<f64>) -> Result<Complex<f64>> {
    f.eval(z)
}
