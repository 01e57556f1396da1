//! Globally adaptive Gauss–Kronrod (7, 15) quadrature for complex integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Where the oracle cuts an improper integral.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Truncation<F = f64> {
    /// Derived from the existence certificate so that the tail is below `abs_tol/10`.
    Auto,
    Fixed(F),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig<F = f64> {
    pub rel_tol: F,
    pub abs_tol: F,
    pub max_depth: u32,
    pub truncation: Truncation<F>,
}

impl<F: Real> Default for QuadratureConfig<F> {
    fn default() -> Self {
        Self {
            rel_tol: F::lit(1e-9),
            abs_tol: F::lit(1e-12),
            max_depth: 50,
            truncation: Truncation::Auto,
        }
    }
}

impl<F: Real> QuadratureConfig<F> {
    pub fn validate(&self) -> Result<()> {
        let positive = |x: F| x > F::zero() && x.is_finite();
        if !positive(self.rel_tol) || !positive(self.abs_tol) {
            return Err(Error::InvalidConfig(
                "tolerances must be positive and finite".into(),
            ));
        }
        if self.max_depth < 10 {
            return Err(Error::InvalidConfig(format!(
                "max_depth {} is below 10",
                self.max_depth
            )));
        }
        if let Truncation::Fixed(b) = self.truncation {
            if !positive(b) {
                return Err(Error::InvalidConfig(
                    "truncation point must be positive".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn with_truncation(mut self, truncation: Truncation<F>) -> Self {
        self.truncation = truncation;
        self
    }
}

/// Value together with the final error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate<F> {
    pub value: Complex<F>,
    /// Per-component error estimate (real part, imaginary part).
    pub error: (F, F),
    pub evaluations: usize,
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
// Gauss weights for the odd-indexed Kronrod nodes (and the centre).
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

struct Panel<F> {
    lo: F,
    hi: F,
    depth: u32,
    value: Complex<F>,
    error: (F, F),
}

impl<F: Real> Panel<F> {
    fn weight(&self) -> F {
        self.error.0.max(self.error.1)
    }
}

impl<F: Real> PartialEq for Panel<F> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<F: Real> Eq for Panel<F> {}
impl<F: Real> PartialOrd for Panel<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<F: Real> Ord for Panel<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .partial_cmp(&other.weight())
            .unwrap_or(Ordering::Equal)
    }
}

fn gk15<F: Real, G: FnMut(F) -> Complex<F>>(g: &mut G, lo: F, hi: F, depth: u32) -> Panel<F> {
    let half = (hi - lo) * F::lit(0.5);
    let centre = lo + half;
    let fc = g(centre);
    let mut kronrod = fc * F::lit(WGK[7]);
    let mut gauss = fc * F::lit(WG[3]);
    for j in 0..7 {
        let dx = half * F::lit(XGK[j]);
        let pair = g(centre - dx) + g(centre + dx);
        kronrod = kronrod + pair * F::lit(WGK[j]);
        if j % 2 == 1 {
            gauss = gauss + pair * F::lit(WG[j / 2]);
        }
    }
    let value = kronrod * half;
    let diff = (kronrod - gauss) * half;
    Panel {
        lo,
        hi,
        depth,
        value,
        error: (diff.re.abs(), diff.im.abs()),
    }
}

/// Upper bound on panels kept alive, a guard against pathological integrands.
const MAX_PANELS: usize = 1 << 18;

/// `∫_lo^hi g(t) dt` with real and imaginary parts controlled separately.
///
/// `split_width`, when given, pre-partitions the interval into panels of at
/// most that width before any adaptive refinement.
pub fn integrate_with_split<F, G>(
    mut g: G,
    lo: F,
    hi: F,
    cfg: &QuadratureConfig<F>,
    split_width: Option<F>,
) -> Result<Estimate<F>>
where
    F: Real,
    G: FnMut(F) -> Complex<F>,
{
    cfg.validate()?;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "integration bounds must satisfy lo < hi, got [{lo}, {hi}]"
        )));
    }
    let pieces = match split_width {
        Some(w) if w > F::zero() => ((hi - lo) / w)
            .ceil()
            .to_usize()
            .unwrap_or(1)
            .clamp(1, MAX_PANELS / 4),
        _ => 1,
    };
    let step = (hi - lo) / F::from_usize(pieces).expect("panel count");
    let mut heap = BinaryHeap::with_capacity(pieces * 2);
    for k in 0..pieces {
        let a = lo + step * F::from_usize(k).unwrap();
        let b = if k + 1 == pieces { hi } else { a + step };
        heap.push(gk15(&mut g, a, b, 0));
    }
    let mut evaluations = 15 * pieces;
    let totals = |heap: &BinaryHeap<Panel<F>>| {
        heap.iter().fold(
            (Complex::new(F::zero(), F::zero()), (F::zero(), F::zero())),
            |(v, e), p| (v + p.value, (e.0 + p.error.0, e.1 + p.error.1)),
        )
    };
    let (mut value, mut err) = totals(&heap);
    let tol = |v: F| cfg.abs_tol.max(cfg.rel_tol * v.abs());
    loop {
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(Error::InvalidArgument(
                "integrand is not finite on the interval".into(),
            ));
        }
        if err.0 <= tol(value.re) && err.1 <= tol(value.im) {
            // running sums drift, so confirm with a fresh pass
            (value, err) = totals(&heap);
            if err.0 <= tol(value.re) && err.1 <= tol(value.im) {
                return Ok(Estimate {
                    value,
                    error: err,
                    evaluations,
                });
            }
        }
        let worst = heap.pop().expect("at least one panel");
        let stuck = worst.depth >= cfg.max_depth || heap.len() + 2 > MAX_PANELS;
        let mid = worst.lo + (worst.hi - worst.lo) * F::lit(0.5);
        if stuck || !(worst.lo < mid && mid < worst.hi) {
            let (tol_re, tol_im) = (tol(value.re), tol(value.im));
            let (estimate, tolerance) = if err.0 / tol_re >= err.1 / tol_im {
                (err.0, tol_re)
            } else {
                (err.1, tol_im)
            };
            return Err(Error::ToleranceNotMet {
                estimate: estimate.to_f64().unwrap_or(f64::NAN),
                tolerance: tolerance.to_f64().unwrap_or(f64::NAN),
            });
        }
        let left = gk15(&mut g, worst.lo, mid, worst.depth + 1);
        let right = gk15(&mut g, mid, worst.hi, worst.depth + 1);
        value = value - worst.value + left.value + right.value;
        err = (
            (err.0 - worst.error.0 + left.error.0 + right.error.0).max(F::zero()),
            (err.1 - worst.error.1 + left.error.1 + right.error.1).max(F::zero()),
        );
        heap.push(left);
        heap.push(right);
        evaluations += 30;
    }
}

/// `∫_lo^hi g(t) dt` by global adaptive bisection.
pub fn integrate_adaptive<F, G>(g: G, lo: F, hi: F, cfg: &QuadratureConfig<F>) -> Result<Complex<F>>
where
    F: Real,
    G: FnMut(F) -> Complex<F>,
{
    integrate_with_split(g, lo, hi, cfg, None).map(|e| e.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real<F: Real>(f: impl Fn(F) -> F) -> impl FnMut(F) -> Complex<F> {
        move |t| Complex::new(f(t), F::zero())
    }

    #[test]
    fn examples() {
        let cfg = QuadratureConfig::<f64>::default();
        let v = integrate_adaptive(real(|_| 1.0), 0.0, 1.0, &cfg).unwrap();
        assert_eq!(v, Complex::new(1.0, 0.0));
        let v = integrate_adaptive(real(|t: f64| (-t).exp()), 0.0, 1.0, &cfg).unwrap();
        assert!((v.re - (1.0 - (-1.0f64).exp())).abs() < 1e-14);
        let v = integrate_adaptive(real(|t| t), -1.0, 1.0, &cfg).unwrap();
        assert!(v.norm() <= 1e-12);
    }

    #[test]
    fn complex_and_oscillatory() {
        let cfg = QuadratureConfig::<f64>::default();
        // ∫_0^{2π} e^{i 20 t} = 0, ∫_0^π sin t = 2
        let v = integrate_with_split(
            |t: f64| Complex::new(0.0, 20.0 * t).exp(),
            0.0,
            2.0 * std::f64::consts::PI,
            &cfg,
            Some(std::f64::consts::PI / 20.0),
        )
        .unwrap();
        assert!(v.value.norm() < 1e-11, "{v:?}");
        let v = integrate_adaptive(real(f64::sin), 0.0, std::f64::consts::PI, &cfg).unwrap();
        assert!((v.re - 2.0).abs() < 1e-12);
    }

    #[test]
    fn generic_over_f32() {
        let cfg = QuadratureConfig::<f32> {
            rel_tol: 1e-5,
            abs_tol: 1e-6,
            ..Default::default()
        };
        let v = integrate_adaptive(real(|t: f32| t * t), 0.0f32, 3.0, &cfg).unwrap();
        assert!((v.re - 9.0).abs() < 1e-4);
    }

    #[test]
    fn singular_integrand_reports_tolerance() {
        let cfg = QuadratureConfig::<f64> {
            max_depth: 12,
            ..Default::default()
        };
        let e = integrate_adaptive(real(|t: f64| 1.0 / t), 0.0, 1.0, &cfg).unwrap_err();
        assert!(matches!(e, Error::ToleranceNotMet { .. }), "{e:?}");
    }

    #[test]
    fn config_validation() {
        let bad = QuadratureConfig::<f64> {
            rel_tol: 0.0,
            ..Default::default()
        };
        assert!(matches!(bad.validate(), Err(Error::InvalidConfig(_))));
        let bad = QuadratureConfig::<f64> {
            max_depth: 9,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = QuadratureConfig::<f64>::default().with_truncation(Truncation::Fixed(-1.0));
        assert!(bad.validate().is_err());
        assert!(integrate_adaptive(real(|t| t), 1.0, 1.0, &QuadratureConfig::default()).is_err());
    }
}
