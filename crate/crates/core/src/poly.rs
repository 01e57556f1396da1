//! Dense univariate polynomials over a coefficient field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::{ExactField, Field, Real, ToComplex};

/// Polynomial with coefficients stored lowest degree first.
///
/// The zero polynomial is the empty coefficient list; otherwise the last
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<K> {
    coeffs: Vec<K>,
}

impl<K: Field> Poly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn constant(c: K) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![K::zero(), K::one()])
    }

    /// `c·x^k`.
    pub fn monomial(c: K, k: usize) -> Self {
        let mut coeffs = vec![K::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `x - root`.
    pub fn linear_root(root: K) -> Self {
        Self::new(vec![-root, K::one()])
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<K> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&K> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> K {
        self.coeffs.get(k).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation in the coefficient field (Horner).
    pub fn eval(&self, x: &K) -> K {
        self.coeffs
            .iter()
            .rev()
            .fold(K::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Floating-point evaluation at a complex point.
    pub fn eval_complex<F: Real>(&self, z: Complex<F>) -> Complex<F>
    where
        K: ToComplex<F>,
    {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::zero(), |acc, c| acc * z + c.to_complex())
    }

    /// Substitution `x ↦ inner(x)`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * inner) + &Self::constant(c.clone())
        })
    }

    /// Substitution `x ↦ scale·x + shift`.
    pub fn compose_affine(&self, scale: K, shift: K) -> Self {
        self.compose(&Self::new(vec![shift, scale]))
    }

    /// `p(x) ↦ p(-x)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let mut n = K::zero();
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                out.push(c.clone() * n.clone());
            }
            n = n + K::one();
        }
        Self::new(out)
    }
}

impl<K: ExactField> Poly<K> {
    /// Euclidean division; `None` when dividing by zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lead = divisor.leading()?.clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Some((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![K::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = rem[k + dd].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * d.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Some((Self::new(quot), Self::new(rem)))
    }

    /// Scales so the leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => {
                let inv = K::one() / l.clone();
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        if !self.is_zero() && !other.is_zero() && modular_gcd_degree(self, other) == Some(0) {
            return Self::one();
        }
        // monic remainders keep the coefficient sizes in check
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            if b.degree() == Some(0) {
                return Self::one();
            }
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a
    }
}

// Degree of the gcd of the images modulo a prime. When both leading
// coefficients survive the reduction this bounds the true gcd degree from above.
fn modular_gcd_degree<K: ExactField>(a: &Poly<K>, b: &Poly<K>) -> Option<usize> {
    use crate::scalar::{inv_mod, mul_mod, MODULUS};
    let image = |p: &Poly<K>| -> Option<Vec<u64>> {
        let v = p
            .coeffs
            .iter()
            .map(ExactField::residue)
            .collect::<Option<Vec<u64>>>()?;
        (*v.last()? != 0).then_some(v)
    };
    let (mut a, mut b) = (image(a)?, image(b)?);
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    while !b.is_empty() {
        // a mod b over Z/p
        let inv = inv_mod(*b.last().unwrap());
        while a.len() >= b.len() {
            let c = mul_mod(*a.last().unwrap(), inv);
            let off = a.len() - b.len();
            for (j, &d) in b.iter().enumerate() {
                a[off + j] = (a[off + j] + MODULUS - mul_mod(c, d)) % MODULUS;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    Some(a.len() - 1)
}

impl<K: Field> Add for &Poly<K> {
    type Output = Poly<K>;
    fn add(self, rhs: Self) -> Poly<K> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<K: Field> Sub for &Poly<K> {
    type Output = Poly<K>;
    fn sub(self, rhs: Self) -> Poly<K> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<K: Field> Mul for &Poly<K> {
    type Output = Poly<K>;
    fn mul(self, rhs: Self) -> Poly<K> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![K::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<K: Field> Neg for &Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<K: Field> One for Poly<K> {
    fn one() -> Self {
        Poly::constant(K::one())
    }
}

impl<K: Field> Mul for Poly<K> {
    type Output = Poly<K>;
    fn mul(self, rhs: Self) -> Poly<K> {
        &self * &rhs
    }
}

/// Writes the polynomial in a variable name, highest degree first,
/// e.g. `s^2 + 3*s + 2`. Non-real coefficients are parenthesized.
pub struct PolyDisplay<'a, K> {
    pub poly: &'a Poly<K>,
    pub var: &'a str,
}

impl<K: Field + fmt::Display> fmt::Display for PolyDisplay<'_, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.poly.coeffs();
        if coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let compound = text.contains(' ') || text[1..].contains(['+', '-']);
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) if !compound => (true, rest.to_string()),
                _ => (false, text.clone()),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mag = if compound { format!("({mag})") } else { mag };
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != "1" {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "{}", self.var)?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational as G;

    fn p(cs: &[i64]) -> Poly<G> {
        Poly::new(cs.iter().map(|&c| G::from_int(c)).collect())
    }

    #[test]
    fn zero_is_canonical_empty() {
        assert!(p(&[0]).is_zero());
        assert!(p(&[0, 0, 0]).is_zero());
        assert_eq!(p(&[1, 2, 0]).degree(), Some(1));
    }

    #[test]
    fn modular_shortcut_only_fires_on_coprime_inputs() {
        let i = G::i();
        assert_eq!(
            i.residue().map(|r| crate::scalar::mul_mod(r, r)),
            Some(crate::scalar::MODULUS - 1)
        );
        // (x - i)(x + 2) and (x - i)(x - 1/3) share x - i
        let root = Poly::linear_root(i.clone());
        let a = &root * &p(&[2, 1]);
        let b = &root * &Poly::linear_root(G::from_ratio(1, 3));
        assert_eq!(modular_gcd_degree(&a, &b), Some(1));
        assert_eq!(a.gcd(&b), root);
        assert_eq!(modular_gcd_degree(&p(&[2, 1]), &p(&[-1, 0, 1])), Some(0));
        assert_eq!(p(&[2, 1]).gcd(&p(&[-1, 0, 1])), Poly::one());
        // a denominator divisible by the modulus has no image
        let big = G::real(num_rational::BigRational::new(
            1.into(),
            crate::scalar::MODULUS.into(),
        ));
        assert_eq!(big.residue(), None);
    }

    #[test]
    fn division_and_gcd() {
        // (s^2 - 4) / (s - 2) = s + 2
        let (q, r) = p(&[-4, 0, 1]).div_rem(&p(&[-2, 1])).unwrap();
        assert_eq!(q, p(&[2, 1]));
        assert!(r.is_zero());
        // gcd((s+1)^2, (s+1)(s+2)) = s + 1
        let a = p(&[1, 2, 1]);
        let b = p(&[2, 3, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        assert_eq!(p(&[3]).gcd(&p(&[0, 5])), p(&[1]));
        assert!(p(&[1]).div_rem(&Poly::zero()).is_none());
    }

    #[test]
    fn composition() {
        // (x^2)(x - 1) = x^2 - 2x + 1
        let sq = p(&[0, 0, 1]);
        assert_eq!(sq.compose_affine(G::one(), G::from_int(-1)), p(&[1, -2, 1]));
        assert_eq!(p(&[1, 2, 3, 4]).reflect(), p(&[1, -2, 3, -4]));
        assert_eq!(p(&[1, 2, 3]).derivative(), p(&[2, 6]));
    }

    #[test]
    fn display() {
        let d = |q: &Poly<G>| PolyDisplay { poly: q, var: "s" }.to_string();
        assert_eq!(d(&p(&[2, 3, 1])), "s^2 + 3*s + 2");
        assert_eq!(d(&p(&[-1, 0, -2])), "-2*s^2 - 1");
        assert_eq!(d(&Poly::zero()), "0");
        let c = Poly::new(vec![G::i(), G::one()]);
        assert_eq!(d(&c), "s + (1 i)");
    }

    #[test]
    fn float_eval() {
        let z = Complex::new(0.0, 1.0);
        let v = p(&[1, 0, 1]).eval_complex::<f64>(z);
        assert!(v.norm() < 1e-15);
    }
}
