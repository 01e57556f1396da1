//! Polynomial roots: exact square-free splitting, then Aberth iteration.

use num_complex::Complex;
use num_traits::Zero;
use serde::Serialize;

use crate::poly::Poly;
use crate::scalar::{ExactField, Real, ToComplex};

/// Numerically located root with its exact multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Root {
    pub re: f64,
    pub im: f64,
    pub multiplicity: u32,
}

impl Root {
    pub fn value(&self) -> Complex<f64> {
        Complex::new(self.re, self.im)
    }
}

/// Yun's square-free decomposition: `p = c · Π qᵢ^i` with each `qᵢ`
/// square-free and pairwise coprime. Constant factors are dropped.
pub fn squarefree_factors<K: ExactField>(p: &Poly<K>) -> Vec<(Poly<K>, u32)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let div = |x: &Poly<K>, y: &Poly<K>| x.div_rem(y).expect("nonzero divisor").0;
    let mut b = div(p, &a0);
    let c = div(&dp, &a0);
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        let next_b = div(&b, &a);
        let next_c = div(&d, &a);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        d = &next_c - &next_b.derivative();
        b = next_b;
        i += 1;
    }
    out
}

/// Roots of a polynomial with complex floating-point coefficients, lowest
/// degree first. Intended for square-free input; clustered roots converge
/// slowly and lose accuracy.
pub fn aberth<F: Real>(coeffs: &[Complex<F>]) -> Vec<Complex<F>> {
    let mut c: Vec<Complex<F>> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    if c.len() < 2 {
        return Vec::new();
    }
    let lead = *c.last().unwrap();
    let c: Vec<Complex<F>> = c.iter().map(|x| *x / lead).collect();
    let n = c.len() - 1;
    let eval = |z: Complex<F>| {
        let (mut p, mut dp) = (Complex::<F>::zero(), Complex::<F>::zero());
        for k in (0..=n).rev() {
            dp = dp * z + p;
            p = p * z + c[k];
        }
        (p, dp)
    };
    // starting circle from the geometric mean of the root moduli
    let radius = c[0]
        .norm()
        .powf(F::one() / F::from_usize(n).unwrap())
        .max(F::lit(0.5));
    let mut z: Vec<Complex<F>> = (0..n)
        .map(|k| {
            let theta = F::lit(2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4);
            Complex::from_polar(radius, theta)
        })
        .collect();
    let eps = F::epsilon() * F::lit(16.0);
    for _ in 0..1000 {
        let mut worst = F::zero();
        for k in 0..n {
            let (p, dp) = eval(z[k]);
            if p.is_zero() {
                continue;
            }
            let ratio = p / dp;
            let repulsion = (0..n)
                .filter(|&j| j != k)
                .fold(Complex::<F>::zero(), |acc, j| {
                    acc + Complex::new(F::one(), F::zero()) / (z[k] - z[j])
                });
            let step = ratio / (Complex::new(F::one(), F::zero()) - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[k] = z[k] - step;
                worst = worst.max(step.norm() / (F::one() + z[k].norm()));
            }
        }
        if worst <= eps {
            break;
        }
    }
    z
}

/// All roots of an exact polynomial with multiplicities, sorted by real then
/// imaginary part.
pub fn polynomial_roots<K>(p: &Poly<K>) -> Vec<Root>
where
    K: ExactField + ToComplex<f64>,
{
    let mut out = Vec::new();
    for (factor, mult) in squarefree_factors(p) {
        let coeffs: Vec<Complex<f64>> = factor.coeffs().iter().map(ToComplex::to_complex).collect();
        for z in aberth(&coeffs) {
            out.push(Root {
                re: z.re,
                im: z.im,
                multiplicity: mult,
            });
        }
    }
    out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    out
}

/// Exact check that `p` has no repeated factor.
pub fn is_squarefree<K: ExactField>(p: &Poly<K>) -> bool {
    p.gcd(&p.derivative()).degree().unwrap_or(0) == 0
}
