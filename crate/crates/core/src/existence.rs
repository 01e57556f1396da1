//! Existence predicates for the Laplace and Fourier integrals.
//!
//! Exponential-order witnesses are computed structurally from the atoms, so a
//! certificate is sound by construction: `|f(t)| ≤ M·e^{a·t}` for every
//! `t ≥ 0`. Sampling is only offered as a falsifier.

use num_complex::Complex;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signal::{SignalExpr, Support};

/// Margin added to each atom's growth rate to absorb its polynomial factor.
pub const GROWTH_MARGIN: f64 = 1.0 / 16.0;

/// Witnesses `(M, a)` of `|f(t)| ≤ M·e^{a·t}` on `t ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpOrderCert {
    #[serde(rename = "M")]
    pub m: f64,
    pub a: f64,
}

impl ExpOrderCert {
    pub fn bound(&self, t: f64) -> f64 {
        self.m * (self.a * t).exp()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExistenceVerdict {
    LaplaceExists(ExpOrderCert),
    FourierExists,
    Fails { reason: String },
}

impl ExistenceVerdict {
    pub fn holds(&self) -> bool {
        !matches!(self, ExistenceVerdict::Fails { .. })
    }
}

/// `max(1, (n/(ε·e))^n)`, the constant in `t^n ≤ C·e^{ε t}`.
pub(crate) fn poly_absorption(n: u32, eps: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let n = n as f64;
    (n / (eps * std::f64::consts::E)).powf(n).max(1.0)
}

/// Structural exponential-order certificate.
///
/// Each atom `t^n e^{ct}·osc` contributes `a = Re(c) + ε` and
/// `M = |coeff|·max(1, (n/(εe))^n)`; sums take the largest rate and add the
/// constants. The bound also covers reversed and two-sided atoms since
/// `|t^n e^{c|t|}|` is even in `t`.
pub fn exp_order_cert(f: &SignalExpr) -> ExpOrderCert {
    let mut m = 0.0;
    let mut a = f64::NEG_INFINITY;
    for t in f.terms() {
        let rate = t.atom.exp_rate().re.to_f64().unwrap_or(f64::INFINITY) + GROWTH_MARGIN;
        a = a.max(rate);
        let k: Complex<f64> = crate::scalar::ToComplex::to_complex(&t.coeff);
        m += k.norm() * poly_absorption(t.atom.poly_degree(), GROWTH_MARGIN);
    }
    if m == 0.0 {
        m = 1.0;
    }
    ExpOrderCert { m, a }
}

/// Laplace existence at `s`: holds iff `Re(s) > a` for the structural certificate.
pub fn laplace_exists(f: &SignalExpr, s: Complex<f64>) -> Result<ExistenceVerdict> {
    if !f.is_causal() {
        return Err(Error::NonCausalInput);
    }
    let cert = exp_order_cert(f);
    if s.re > cert.a {
        Ok(ExistenceVerdict::LaplaceExists(cert))
    } else {
        Ok(ExistenceVerdict::Fails {
            reason: format!(
                "Re s <= a: Re s = {}, a = {} (no exponential-order witness)",
                s.re, cert.a
            ),
        })
    }
}

/// Which half-line a leaf occupies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Side {
    Positive,
    Negative,
}

pub(crate) fn on_side(support: Support, reversed: bool, side: Side) -> bool {
    match support {
        Support::TwoSidedEven => true,
        Support::Causal => (side == Side::Negative) == reversed,
    }
}

fn half_line_check(f: &SignalExpr, side: Side) -> std::result::Result<(), String> {
    for t in f.normalize().terms() {
        if t.coeff.is_zero() || !on_side(t.atom.support(), t.reversed, side) {
            continue;
        }
        if !t.atom.exp_rate().re.is_negative() {
            let line = match side {
                Side::Positive => "[0,∞)",
                Side::Negative => "(-∞,0]",
            };
            return Err(format!(
                "not absolutely integrable on {line}: atom t^{}·e^{{({})t}} does not decay",
                t.atom.poly_degree(),
                t.atom.exp_rate()
            ));
        }
    }
    Ok(())
}

/// Fourier existence as two half-line absolute-integrability checks.
/// Piecewise smoothness holds for every grammar signal.
pub fn fourier_exists(f: &SignalExpr) -> ExistenceVerdict {
    match half_line_check(f, Side::Positive).and_then(|_| half_line_check(f, Side::Negative)) {
        Ok(()) => ExistenceVerdict::FourierExists,
        Err(reason) => ExistenceVerdict::Fails { reason },
    }
}

/// The same predicate phrased as a single whole-line check: every leaf that
/// survives cancellation decays in `|t|`.
pub fn fourier_exists_whole_line(f: &SignalExpr) -> ExistenceVerdict {
    let bad = f
        .normalize()
        .terms()
        .into_iter()
        .find(|t| !t.coeff.is_zero() && !t.atom.exp_rate().re.is_negative());
    match bad {
        None => ExistenceVerdict::FourierExists,
        Some(t) => ExistenceVerdict::Fails {
            reason: format!(
                "not absolutely integrable on the real line: atom with rate {} does not decay",
                t.atom.exp_rate()
            ),
        },
    }
}

/// `Ok` when fourier_exists holds, otherwise the failure as an error.
pub(crate) fn require_fourier(f: &SignalExpr) -> Result<()> {
    match fourier_exists(f) {
        ExistenceVerdict::Fails { reason } => Err(Error::NotAbsolutelyIntegrable(reason)),
        _ => Ok(()),
    }
}

/// `t = 0` followed by `n - 1` log-spaced points in `[1e-3, t_max]`.
pub fn sample_times(n: usize, t_max: f64) -> Vec<f64> {
    let mut out = vec![0.0];
    if n < 2 {
        return out;
    }
    let (lo, hi) = (1e-3f64.ln(), t_max.ln());
    let steps = (n - 2).max(1) as f64;
    for k in 0..n - 1 {
        out.push((lo + (hi - lo) * k as f64 / steps).exp());
    }
    out
}

/// Falsification check of a claimed certificate on sample points.
///
/// Returns the first `(t, |f(t)|, M e^{at})` that violates the bound beyond a
/// relative slack of `1e-12`.
pub fn check_cert_sampled(
    f: &SignalExpr,
    cert: &ExpOrderCert,
    times: &[f64],
) -> Option<(f64, f64, f64)> {
    times.iter().find_map(|&t| {
        let lhs = f.eval(t).norm();
        let rhs = cert.bound(t);
        (lhs > rhs * (1.0 + 1e-12)).then_some((t, lhs, rhs))
    })
}
