//! Scalar types: the exact Gaussian-rational coefficient field and the
//! floating-point traits the numeric side is generic over.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Floating-point scalar used by evaluation and quadrature (`f32` or `f64`).
pub trait Real: Float + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Lossy conversion from `f64` constants.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }
}
impl Real for f32 {}
impl Real for f64 {}

/// Coefficient field for polynomials and rational functions.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
}

/// Fields where `is_zero` is decidable exactly, so Euclid's algorithm terminates
/// with a true GCD.
pub trait ExactField: Field {
    /// Image in `Z/MODULUS`, when the element has one. Used only to detect
    /// coprime polynomials cheaply.
    fn residue(&self) -> Option<u64> {
        None
    }
}

/// Prime `≡ 1 (mod 4)`, so `-1` has a square root modulo it.
pub(crate) const MODULUS: u64 = 1_000_000_009;

pub(crate) fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64) -> u64 {
    pow_mod(a, MODULUS - 2)
}

fn sqrt_minus_one_mod() -> u64 {
    static ROOT: std::sync::OnceLock<u64> = std::sync::OnceLock::new();
    *ROOT.get_or_init(|| {
        (2..)
            .map(|g| pow_mod(g, (MODULUS - 1) / 4))
            .find(|&r| mul_mod(r, r) == MODULUS - 1)
            .expect("prime is 1 mod 4")
    })
}

fn rational_residue(q: &BigRational) -> Option<u64> {
    let m = BigInt::from(MODULUS);
    let reduce = |x: &BigInt| -> u64 {
        let r = x % &m;
        let r = if r.is_negative() { r + &m } else { r };
        r.to_u64().expect("reduced below modulus")
    };
    let den = reduce(q.denom());
    (den != 0).then(|| mul_mod(reduce(q.numer()), inv_mod(den)))
}

impl<T: Real> Field for Complex<T> {}
impl Field for BigRational {}
impl ExactField for BigRational {
    fn residue(&self) -> Option<u64> {
        rational_residue(self)
    }
}

/// Conversion of a coefficient into floating-point complex form.
pub trait ToComplex<F: Real> {
    fn to_complex(&self) -> Complex<F>;
}

impl<F: Real> ToComplex<F> for Complex<F> {
    fn to_complex(&self) -> Complex<F> {
        *self
    }
}

impl<F: Real> ToComplex<F> for BigRational {
    fn to_complex(&self) -> Complex<F> {
        Complex::new(rational_to_real(self), F::zero())
    }
}

pub(crate) fn rational_to_real<F: Real>(q: &BigRational) -> F {
    F::lit(q.to_f64().unwrap_or(f64::NAN))
}

/// Builds `p/q` as an exact rational. Panics when `q == 0`.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Complex number with exact rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(BigRational::from_integer(n.into()))
    }

    /// `p/q` on the real axis.
    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::real(ratio(p, q))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    /// `x·i` for real `x`.
    pub fn imag(im: BigRational) -> Self {
        Self {
            re: BigRational::zero(),
            im,
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }

    /// Float modulus.
    pub fn abs_f64(&self) -> f64 {
        let c: Complex<f64> = self.to_complex();
        c.norm()
    }
}

impl<F: Real> ToComplex<F> for GaussianRational {
    fn to_complex(&self) -> Complex<F> {
        Complex::new(rational_to_real(&self.re), rational_to_real(&self.im))
    }
}

impl From<BigRational> for GaussianRational {
    fn from(re: BigRational) -> Self {
        Self::real(re)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for GaussianRational {
    type Output = Self;
    /// Panics on division by zero, like integer division.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero Gaussian rational")
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Field for GaussianRational {}
impl ExactField for GaussianRational {
    fn residue(&self) -> Option<u64> {
        let re = rational_residue(&self.re)?;
        let im = rational_residue(&self.im)?;
        Some((re + mul_mod(im, sqrt_minus_one_mod())) % MODULUS)
    }
}

/// Formats as `re`, `im i`, or `re+im i` / `re-im i`; each part prints as `p` or `p/q`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{} i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{} i", self.re, -self.im.clone())
                } else {
                    write!(f, "{}+{} i", self.re, self.im)
                }
            }
        }
    }
}

/// Error from parsing a Gaussian-rational literal.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid Gaussian rational literal `{0}`")]
pub struct ParseGaussianError(pub String);

fn parse_rational_part(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl FromStr for GaussianRational {
    type Err = ParseGaussianError;

    /// Accepts the `Display` forms plus `i`, `-i`, `3i` and embedded whitespace.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = || ParseGaussianError(text.to_string());
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err());
        }
        let Some(body) = s.strip_suffix('i') else {
            return parse_rational_part(&s).map(Self::real).ok_or_else(err);
        };
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .next_back();
        let (re_txt, im_txt) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let im = match im_txt {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            t => parse_rational_part(t.strip_prefix('+').unwrap_or(t)).ok_or_else(err)?,
        };
        let re = if re_txt.is_empty() {
            BigRational::zero()
        } else {
            parse_rational_part(re_txt).ok_or_else(err)?
        };
        Ok(Self { re, im })
    }
}

impl serde::Serialize for GaussianRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for GaussianRational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Factorial as an exact rational.
pub(crate) fn factorial(n: u32) -> BigRational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    BigRational::from_integer(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn exact_field_ops() {
        let a = g("1/2+3/4 i");
        let b = g("-2+1 i");
        let q = a.clone() / b.clone();
        assert_eq!(q * b, a);
        assert_eq!(g("i") * g("i"), g("-1"));
        assert!(GaussianRational::zero().inv().is_none());
    }

    #[test]
    fn display_parse_forms() {
        for text in ["0", "3", "-1/2", "2/3 i", "-1 i", "1/2+3/4 i", "-5-1/3 i"] {
            let v = g(text);
            assert_eq!(v.to_string(), text);
            assert_eq!(g(&v.to_string()), v);
        }
        assert_eq!(g("i"), GaussianRational::i());
        assert_eq!(g("-i"), -GaussianRational::i());
        assert_eq!(g("1 + 2i"), g("1+2 i"));
        assert_eq!(g("4/8"), GaussianRational::from_ratio(1, 2));
        assert!("1/0".parse::<GaussianRational>().is_err());
        assert!("x".parse::<GaussianRational>().is_err());
        assert!("".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn float_view() {
        let c: Complex<f64> = g("1/4-1/2 i").to_complex();
        assert_eq!(c, Complex::new(0.25, -0.5));
        let c32: Complex<f32> = g("3").to_complex();
        assert_eq!(c32.re, 3.0f32);
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), ratio(1, 1));
        assert_eq!(factorial(5), ratio(120, 1));
    }
}
