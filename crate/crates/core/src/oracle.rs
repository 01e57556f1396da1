//! Numerical Laplace and Fourier integrals, independent of the rule engine.
//!
//! Improper integrals are truncated at a point derived from an exponential
//! bound on `|f|`, so the discarded tail is at most `abs_tol/10`.

use num_complex::Complex;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::existence::{
    laplace_exists, on_side, poly_absorption, require_fourier, ExistenceVerdict, Side,
    GROWTH_MARGIN,
};
use crate::quadrature::{integrate_with_split, QuadratureConfig, Truncation};
use crate::scalar::{Real, ToComplex};
use crate::signal::{CompiledSignal, Osc, SignalExpr};

/// Oscillation frequencies above this get half-period panels up front.
const PRESPLIT_FREQUENCY: f64 = 4.0;

fn split_width(freq: f64) -> Option<f64> {
    (freq > PRESPLIT_FREQUENCY).then(|| std::f64::consts::PI / freq)
}

// Largest angular frequency present in f, ignoring the kernel.
fn signal_frequency(f: &SignalExpr) -> f64 {
    f.terms()
        .iter()
        .map(|t| {
            let w = match t.atom.osc() {
                Osc::None => 0.0,
                Osc::Sin(w) | Osc::Cos(w) => w.to_f64().unwrap_or(0.0).abs(),
            };
            t.atom.exp_rate().im.to_f64().unwrap_or(0.0).abs() + w
        })
        .fold(0.0, f64::max)
}

/// `b` with `M e^{-d b}/d ≤ abs_tol/10`, never below 1.
fn tail_cut(m: f64, d: f64, abs_tol: f64) -> f64 {
    ((10.0 * m / (abs_tol * d)).ln() / d).max(1.0)
}

/// The Auto truncation point of the Laplace integral at `Re s = s_re`.
pub fn laplace_truncation(f: &SignalExpr, s_re: f64, abs_tol: f64) -> Result<f64> {
    match laplace_exists(f, Complex::new(s_re, 0.0))? {
        ExistenceVerdict::LaplaceExists(cert) => Ok(tail_cut(cert.m, s_re - cert.a, abs_tol)),
        ExistenceVerdict::Fails { reason } => Err(Error::DivergentTransform(reason)),
        ExistenceVerdict::FourierExists => {
            unreachable!("laplace_exists never returns a Fourier verdict")
        }
    }
}

/// `∫₀^b f(t) e^{-st} dt` with `b` from the certificate, or fixed by `cfg`.
pub fn laplace_numeric<F: Real>(
    f: &SignalExpr,
    s: Complex<F>,
    cfg: &QuadratureConfig<F>,
) -> Result<Complex<F>> {
    cfg.validate()?;
    let s_re = s.re.to_f64().unwrap_or(f64::NAN);
    let auto = laplace_truncation(f, s_re, cfg.abs_tol.to_f64().unwrap_or(1e-12))?;
    let b = match cfg.truncation {
        Truncation::Auto => F::lit(auto),
        Truncation::Fixed(b) => b,
    };
    let freq = signal_frequency(f) + s.im.to_f64().unwrap_or(0.0).abs();
    let compiled = CompiledSignal::new(f);
    let integrand = |t: F| compiled.eval_times_exp(t, -s);
    integrate_with_split(integrand, F::zero(), b, cfg, split_width(freq).map(F::lit))
        .map(|e| e.value)
}

/// Decay witness of one half-line: `|f(t)| ≤ M e^{-r|t|}` there.
///
/// Returns `None` when no leaf lives on that side.
pub(crate) fn half_line_decay(f: &SignalExpr, side: Side) -> Option<(f64, f64)> {
    let terms: Vec<_> = f
        .normalize()
        .terms()
        .into_iter()
        .filter(|t| !t.coeff.is_zero() && on_side(t.atom.support(), t.reversed, side))
        .collect();
    let r = terms
        .iter()
        .map(|t| -t.atom.exp_rate().re.to_f64().unwrap_or(0.0))
        .fold(f64::INFINITY, f64::min);
    if terms.is_empty() {
        return None;
    }
    // absorb t^n into part of the decay rate
    let eps = GROWTH_MARGIN.min(r / 2.0);
    let m = terms
        .iter()
        .map(|t| {
            ToComplex::<f64>::to_complex(&t.coeff).norm()
                * poly_absorption(t.atom.poly_degree(), eps)
        })
        .sum::<f64>();
    Some((m, r - eps))
}

/// Auto truncation points `(positive side, negative side)` of the Fourier integral.
pub fn fourier_truncation(f: &SignalExpr, abs_tol: f64) -> Result<(Option<f64>, Option<f64>)> {
    require_fourier(f)?;
    let cut = |side| half_line_decay(f, side).map(|(m, r)| tail_cut(m, r, abs_tol));
    Ok((cut(Side::Positive), cut(Side::Negative)))
}

/// `∫ f(t) e^{-iωt} dt` as the sum of two truncated half-line integrals.
pub fn fourier_numeric<F: Real>(
    f: &SignalExpr,
    w: F,
    cfg: &QuadratureConfig<F>,
) -> Result<Complex<F>> {
    cfg.validate()?;
    let (pos, neg) = fourier_truncation(f, cfg.abs_tol.to_f64().unwrap_or(1e-12))?;
    let freq = signal_frequency(f) + w.to_f64().unwrap_or(0.0).abs();
    let split = split_width(freq).map(F::lit);
    let kernel = Complex::new(F::zero(), -w);
    let compiled = CompiledSignal::new(f);
    let integrand = |t: F| compiled.eval_times_exp(t, kernel);
    let cut = |auto: f64| match cfg.truncation {
        Truncation::Auto => F::lit(auto),
        Truncation::Fixed(b) => b,
    };
    let mut total = Complex::new(F::zero(), F::zero());
    if let Some(b) = pos {
        total = total + integrate_with_split(integrand, F::zero(), cut(b), cfg, split)?.value;
    }
    if let Some(b) = neg {
        total = total + integrate_with_split(integrand, -cut(b), F::zero(), cfg, split)?.value;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_signal;

    fn sig(s: &str) -> SignalExpr {
        parse_signal(s).unwrap()
    }

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    fn close(z: Complex<f64>, re: f64, im: f64, tol: f64) {
        assert!(
            (z - Complex::new(re, im)).norm() <= tol,
            "{z} vs {re}+{im}i"
        );
    }

    #[test]
    fn laplace_examples() {
        close(
            laplace_numeric(&sig("causal(1)"), Complex::new(2.0, 0.0), &cfg()).unwrap(),
            0.5,
            0.0,
            1e-8,
        );
        close(
            laplace_numeric(&sig("causal(exp(-1*t))"), Complex::new(1.0, 0.0), &cfg()).unwrap(),
            0.5,
            0.0,
            1e-8,
        );
        close(
            laplace_numeric(&sig("causal(t*exp(-2*t))"), Complex::new(0.0, 0.0), &cfg()).unwrap(),
            0.25,
            0.0,
            1e-8,
        );
        assert!(matches!(
            laplace_numeric(&sig("causal(exp(2*t))"), Complex::new(1.0, 0.0), &cfg()),
            Err(Error::DivergentTransform(_))
        ));
        // 1/(s+3) at s = 0 via the shifted step
        close(
            laplace_numeric(&sig("causal(exp(-3*t))"), Complex::new(0.0, 0.0), &cfg()).unwrap(),
            1.0 / 3.0,
            0.0,
            1e-8,
        );
        assert_eq!(
            laplace_numeric(
                &sig("twosided(exp(-1*abs(t)))"),
                Complex::new(1.0, 0.0),
                &cfg()
            ),
            Err(Error::NonCausalInput)
        );
    }

    #[test]
    fn laplace_off_axis() {
        // cos(3t) e^{-t} at s = 1 + 5i: (s+1)/((s+1)^2+9)
        let s = Complex::new(1.0, 5.0);
        let expected = (s + 1.0) / ((s + 1.0) * (s + 1.0) + 9.0);
        let v = laplace_numeric(&sig("causal(exp(-1*t)*cos(3*t))"), s, &cfg()).unwrap();
        assert!((v - expected).norm() < 1e-9, "{v} vs {expected}");
    }

    #[test]
    fn fourier_examples() {
        let two = sig("twosided(exp(-1*abs(t)))");
        close(fourier_numeric(&two, 0.0, &cfg()).unwrap(), 2.0, 0.0, 1e-8);
        close(fourier_numeric(&two, 1.0, &cfg()).unwrap(), 1.0, 0.0, 1e-8);
        close(
            fourier_numeric(&sig("causal(exp(-1*t))"), 0.0, &cfg()).unwrap(),
            1.0,
            0.0,
            1e-8,
        );
        // e^{it} e^{-|t|} at ω = 1 is 2
        let shifted = two.mul_cexp(&crate::scalar::ratio(1, 1));
        close(
            fourier_numeric(&shifted, 1.0, &cfg()).unwrap(),
            2.0,
            0.0,
            1e-8,
        );
        // cos(t) e^{-|t|} at ω = 0: (2/2 + 2/2)/2 = 1
        let modulated = two.mul_osc(crate::signal::OscKind::Cos, &crate::scalar::ratio(1, 1));
        close(
            fourier_numeric(&modulated, 0.0, &cfg()).unwrap(),
            1.0,
            0.0,
            1e-8,
        );
        assert!(matches!(
            fourier_numeric(&sig("causal(1)"), 0.0, &cfg()),
            Err(Error::NotAbsolutelyIntegrable(_))
        ));
    }

    #[test]
    fn fourier_high_frequency() {
        // 1/(1 + iω) at ω = 40
        let v = fourier_numeric(&sig("causal(exp(-1*t))"), 40.0, &cfg()).unwrap();
        let expected = Complex::new(1.0, 0.0) / Complex::new(1.0, 40.0);
        assert!((v - expected).norm() < 1e-10, "{v} vs {expected}");
    }

    #[test]
    fn truncation_formula() {
        // step at Re s = 2: a = 1/16, M = 1
        let d: f64 = 2.0 - 1.0 / 16.0;
        let b = laplace_truncation(&sig("causal(1)"), 2.0, 1e-12).unwrap();
        assert!((b - (10.0f64 / (1e-12 * d)).ln() / d).abs() < 1e-12);
        let (pos, neg) = fourier_truncation(&sig("causal(exp(-1*t))"), 1e-12).unwrap();
        assert!(pos.is_some() && neg.is_none());
    }

    #[test]
    fn doubling_truncation() {
        let f = sig("causal(t^2*exp(-1/2*t)*sin(3*t))");
        let s = Complex::new(0.25, 1.0);
        let b = laplace_truncation(&f, s.re, 1e-12).unwrap();
        let v1 = laplace_numeric(&f, s, &cfg()).unwrap();
        let v2 =
            laplace_numeric(&f, s, &cfg().with_truncation(Truncation::Fixed(2.0 * b))).unwrap();
        assert!((v1 - v2).norm() < 2e-12, "{}", (v1 - v2).norm());
    }

    #[test]
    fn generic_over_f32() {
        let c = QuadratureConfig::<f32> {
            rel_tol: 1e-5,
            abs_tol: 1e-6,
            ..Default::default()
        };
        let v = laplace_numeric(&sig("causal(exp(-1*t))"), Complex::new(1.0f32, 0.0), &c).unwrap();
        assert!((v.re - 0.5).abs() < 1e-4);
    }

    #[test]
    fn long_truncation_near_the_abscissa_stays_finite() {
        // b is in the hundreds here; e^{-t} and e^{0.9t} alone under/overflow
        let v =
            laplace_numeric(&sig("causal(exp(-1*t))"), Complex::new(-0.9, 0.0), &cfg()).unwrap();
        close(v, 10.0, 0.0, 1e-8);
    }
}
