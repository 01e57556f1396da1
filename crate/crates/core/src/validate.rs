//! Randomized property suites that cross-check the rule engine against
//! direct time-domain constructions and the quadrature oracle.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cases::{ltc_model, sallen_key_model, suspension_model};
use crate::error::Result;
use crate::existence::{exp_order_cert, fourier_exists};
use crate::ode::{frequency_response, transfer_function};
use crate::oracle::{fourier_numeric, laplace_numeric};
use crate::quadrature::QuadratureConfig;
use crate::rational::{RationalExpr, Var};
use crate::scalar::{ratio, GaussianRational};
use crate::signal::{Atom, Osc, OscKind, SignalExpr};
use crate::syntax::{parse_signal, print_signal};
use crate::transform::{
    fourier_derivative, fourier_modulate, fourier_shift, fourier_symbolic, fourier_time_reverse,
    laplace_derivative, laplace_integral, laplace_shift, laplace_symbolic, laplace_to_fourier,
};

/// Relative tolerance for numeric comparisons: `|a - b| ≤ tol·(1 + |b|)`.
pub const NUMERIC_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Table2,
    Table3,
    Bridge,
    CaseStudies,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Table2,
        Suite::Table3,
        Suite::Bridge,
        Suite::CaseStudies,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Table2 => "table2",
            Suite::Table3 => "table3",
            Suite::Bridge => "bridge",
            Suite::CaseStudies => "case-studies",
            Suite::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                format!(
                    "unknown suite `{s}` (expected table2, table3, bridge, case-studies or oracle)"
                )
            })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub property: String,
    pub inputs: String,
    pub lhs: String,
    pub rhs: String,
    /// Absolute difference for numeric checks; `None` for exact ones.
    pub delta: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub suite: String,
    pub cases_run: usize,
    pub failures: Vec<Failure>,
    pub seed: u64,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Named test signals covering every atom shape of the grammar.
pub fn catalog() -> Vec<(&'static str, SignalExpr)> {
    [
        ("step", "causal(1)"),
        ("decay", "causal(exp(-1*t))"),
        ("ramp-decay", "causal(t*exp(-2*t))"),
        ("damped-cos", "causal(exp(-1*t)*cos(3*t))"),
        ("damped-sin", "causal(exp(-1/2*t)*sin(2*t))"),
        ("quadratic-decay", "causal(t^2*exp(-1*t))"),
        ("growth", "causal(exp(1/2*t))"),
        ("ramp", "causal(t)"),
        ("sine", "causal(sin(1*t))"),
        (
            "mixture",
            "2*causal(exp(-3*t)) - causal(t*exp(-1*t)*cos(2*t))",
        ),
        ("complex-rate", "causal(exp((-1+2 i)*t))"),
        ("cubic-chirp", "causal(t^3*exp(-2*t)*sin(1/2*t))"),
        ("two-sided", "twosided(exp(-1*abs(t)))"),
        ("two-sided-odd", "twosided(t*exp(-2*abs(t)))"),
        ("two-sided-cos", "twosided(exp(-1*abs(t))*cos(2*t))"),
        (
            "anticausal-mix",
            "reverse(causal(exp(-1*t))) + causal(exp(-2*t))",
        ),
    ]
    .into_iter()
    .map(|(name, text)| (name, parse_signal(text).expect("catalog signal parses")))
    .collect()
}

/// Runs `n` randomized cases of every property in `suite`.
pub fn run_suite(suite: Suite, seed: u64, n: usize, cfg: &QuadratureConfig) -> ValidationReport {
    let mut ctx = Ctx {
        rng: ChaCha8Rng::seed_from_u64(seed),
        cfg: *cfg,
        cases: 0,
        failures: Vec::new(),
    };
    for _ in 0..n {
        match suite {
            Suite::Table2 => ctx.table2_case(),
            Suite::Table3 => ctx.table3_case(),
            Suite::Bridge => ctx.bridge_case(),
            Suite::CaseStudies => ctx.case_study_case(),
            Suite::Oracle => ctx.oracle_case(),
        }
    }
    ValidationReport {
        suite: suite.name().to_string(),
        cases_run: ctx.cases,
        failures: ctx.failures,
        seed,
    }
}

struct Ctx {
    rng: ChaCha8Rng,
    cfg: QuadratureConfig,
    cases: usize,
    failures: Vec<Failure>,
}

fn fmt_c(z: Complex<f64>) -> String {
    format!("{}{:+}i", z.re, z.im)
}

impl Ctx {
    fn fail(&mut self, property: &str, inputs: &str, lhs: String, rhs: String, delta: Option<f64>) {
        self.failures.push(Failure {
            property: property.into(),
            inputs: inputs.into(),
            lhs,
            rhs,
            delta,
        });
    }

    fn exact(
        &mut self,
        property: &str,
        inputs: &str,
        lhs: Result<RationalExpr>,
        rhs: Result<RationalExpr>,
    ) {
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => {
                if !l.equals(&r).unwrap_or(false) {
                    self.fail(property, inputs, l.to_string(), r.to_string(), None);
                }
            }
            (l, r) => self.fail(property, inputs, format!("{l:?}"), format!("{r:?}"), None),
        }
    }

    fn numeric(
        &mut self,
        property: &str,
        inputs: &str,
        lhs: Result<Complex<f64>>,
        rhs: Result<Complex<f64>>,
    ) {
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => {
                let delta = (l - r).norm();
                if !(delta <= NUMERIC_TOL * (1.0 + r.norm())) {
                    self.fail(property, inputs, fmt_c(l), fmt_c(r), Some(delta));
                }
            }
            (l, r) => self.fail(property, inputs, format!("{l:?}"), format!("{r:?}"), None),
        }
    }

    fn small_rational(&mut self, lo: i64, hi: i64) -> BigRational {
        let q = *[1i64, 2, 4].choose(&mut self.rng).unwrap();
        ratio(self.rng.gen_range(lo * q..=hi * q), q)
    }

    fn coefficient(&mut self) -> GaussianRational {
        let mut re = self.small_rational(-3, 3);
        if re.is_zero() {
            re = BigRational::one();
        }
        let im = if self.rng.gen_bool(0.25) {
            self.small_rational(-2, 2)
        } else {
            BigRational::zero()
        };
        GaussianRational::new(re, im)
    }

    fn osc(&mut self) -> Osc {
        let w = [ratio(1, 2), ratio(1, 1), ratio(2, 1), ratio(3, 1)]
            .choose(&mut self.rng)
            .unwrap()
            .clone();
        match self.rng.gen_range(0..4) {
            0 => Osc::Sin(w),
            1 => Osc::Cos(w),
            _ => Osc::None,
        }
    }

    /// Exponential rate with real part drawn from `re_choices`.
    fn rate(&mut self, re_choices: &[(i64, i64)]) -> GaussianRational {
        let (p, q) = *re_choices.choose(&mut self.rng).unwrap();
        let im = if self.rng.gen_bool(0.2) {
            ratio(self.rng.gen_range(-1..=1), 1)
        } else {
            BigRational::zero()
        };
        GaussianRational::new(ratio(p, q), im)
    }

    fn combine(&mut self, atoms: Vec<SignalExpr>) -> SignalExpr {
        let terms = atoms
            .into_iter()
            .map(|a| SignalExpr::scale(self.coefficient(), a))
            .collect::<Vec<_>>();
        SignalExpr::sum(terms)
    }

    /// Causal signal with degrees in `min_degree..=min_degree + 2`.
    fn causal_signal(&mut self, min_degree: u32) -> SignalExpr {
        const RATES: [(i64, i64); 6] = [(-3, 2), (-1, 1), (-1, 2), (0, 1), (1, 4), (1, 2)];
        let k = self.rng.gen_range(1..=3);
        let atoms = (0..k)
            .map(|_| {
                let n = self.rng.gen_range(min_degree..=min_degree + 2);
                let c = self.rate(&RATES);
                let osc = self.osc();
                Atom::causal(n, c, osc).into()
            })
            .collect();
        self.combine(atoms)
    }

    /// Absolutely integrable signal; `smooth_to` > 0 restricts to causal and
    /// reversed-causal atoms whose first `smooth_to` derivatives vanish at 0.
    fn integrable_signal(&mut self, causal_only: bool, smooth_to: u32) -> SignalExpr {
        const RATES: [(i64, i64); 4] = [(-3, 1), (-2, 1), (-1, 1), (-1, 2)];
        let k = self.rng.gen_range(1..=3);
        let atoms = (0..k)
            .map(|_| {
                let n = self.rng.gen_range(smooth_to..=smooth_to + 2);
                let c = self.rate(&RATES);
                let osc = self.osc();
                let kind = if causal_only {
                    0
                } else if smooth_to > 0 {
                    self.rng.gen_range(0..2)
                } else {
                    self.rng.gen_range(0..3)
                };
                match kind {
                    0 => Atom::causal(n, c, osc).into(),
                    1 => SignalExpr::reverse(Atom::causal(n, c, osc).into()),
                    _ => Atom::two_sided(n, c, osc).expect("negative rate").into(),
                }
            })
            .collect();
        self.combine(atoms)
    }

    /// A point comfortably inside the region where `f`'s certificate holds.
    fn laplace_point(&mut self, f: &SignalExpr) -> Complex<f64> {
        let a = exp_order_cert(f).a;
        Complex::new(
            a + 0.25 + self.rng.gen::<f64>(),
            self.rng.gen_range(-3.0..3.0),
        )
    }

    fn omega(&mut self) -> f64 {
        self.rng.gen_range(-5.0..5.0)
    }

    fn shift_frequency(&mut self) -> BigRational {
        let v = self.small_rational(-2, 2);
        if v.is_zero() {
            BigRational::one()
        } else {
            v
        }
    }

    fn laplace_shadow(
        &mut self,
        property: &str,
        inputs: &str,
        rule: &Result<RationalExpr>,
        direct: &SignalExpr,
    ) {
        let s = self.laplace_point(direct);
        let lhs = rule.clone().and_then(|e| e.eval(s));
        let rhs = laplace_numeric(direct, s, &self.cfg);
        self.numeric(
            &format!("{property} (numeric)"),
            &format!("{inputs}; s = {}", fmt_c(s)),
            lhs,
            rhs,
        );
    }

    fn fourier_shadow(
        &mut self,
        property: &str,
        inputs: &str,
        rule: &Result<RationalExpr>,
        direct: &SignalExpr,
    ) {
        let w = self.omega();
        let lhs = rule.clone().and_then(|e| e.eval(Complex::new(0.0, w)));
        let rhs = fourier_numeric(direct, w, &self.cfg);
        self.numeric(
            &format!("{property} (numeric)"),
            &format!("{inputs}; w = {w}"),
            lhs,
            rhs,
        );
    }

    fn table2_case(&mut self) {
        // linearity
        let (f, g) = (self.causal_signal(0), self.causal_signal(0));
        let (a, b) = (self.coefficient(), self.coefficient());
        let combo = SignalExpr::linear_combination(a.clone(), f.clone(), b.clone(), g.clone());
        let inputs = format!(
            "f = {}; g = {}; a = {a}; b = {b}",
            print_signal(&f),
            print_signal(&g)
        );
        let lhs = laplace_symbolic(&combo).map(|r| r.expr);
        let rhs = (|| {
            let ff = laplace_symbolic(&f)?.expr.scale(&a);
            ff.add(&laplace_symbolic(&g)?.expr.scale(&b))
        })();
        self.exact("laplace linearity", &inputs, lhs, rhs.clone());
        self.laplace_shadow("laplace linearity", &inputs, &rhs, &combo);
        self.cases += 1;

        // frequency shift
        let f = self.causal_signal(0);
        let s0 = GaussianRational::new(self.small_rational(-2, 1), self.small_rational(-1, 1));
        let shifted = f.mul_exp(&s0).expect("causal signal");
        let inputs = format!("f = {}; s0 = {s0}", print_signal(&f));
        let rule = laplace_shift(&f, &s0).map(|r| r.expr);
        self.exact(
            "laplace frequency shift",
            &inputs,
            rule.clone(),
            laplace_symbolic(&shifted).map(|r| r.expr),
        );
        self.laplace_shadow("laplace frequency shift", &inputs, &rule, &shifted);
        self.cases += 1;

        // n-th derivative; every other case satisfies the zero-initial-derivative precondition
        let n = self.rng.gen_range(1..=4);
        let zero_initial = (self.cases / 4).is_multiple_of(2);
        let f = self.causal_signal(if zero_initial { n } else { 0 });
        let inputs = format!("f = {}; n = {n}", print_signal(&f));
        let rule = laplace_derivative(&f, n).map(|r| r.expr);
        let derived = f.nth_derivative(n).expect("causal signals differentiate");
        self.exact(
            "laplace derivative",
            &inputs,
            rule.clone(),
            laplace_symbolic(&derived).map(|r| r.expr),
        );
        if zero_initial {
            let plain = laplace_symbolic(&f).and_then(|r| {
                let sn = RationalExpr::from_poly(
                    crate::poly::Poly::monomial(GaussianRational::one(), n as usize),
                    Var::S,
                );
                r.expr.mul(&sn)
            });
            self.exact(
                "laplace derivative (zero initial values)",
                &inputs,
                rule.clone(),
                plain,
            );
        }
        self.laplace_shadow("laplace derivative", &inputs, &rule, &derived);
        self.cases += 1;

        // integration
        let f = self.causal_signal(0);
        let inputs = format!("f = {}", print_signal(&f));
        let integral = f.antiderivative().expect("causal signals integrate");
        let rule = laplace_integral(&f).map(|r| r.expr);
        self.exact(
            "laplace integral",
            &inputs,
            rule.clone(),
            laplace_symbolic(&integral).map(|r| r.expr),
        );
        self.laplace_shadow("laplace integral", &inputs, &rule, &integral);
        self.cases += 1;
    }

    fn table3_case(&mut self) {
        // linearity
        let (f, g) = (
            self.integrable_signal(false, 0),
            self.integrable_signal(false, 0),
        );
        let (a, b) = (self.coefficient(), self.coefficient());
        let combo = SignalExpr::linear_combination(a.clone(), f.clone(), b.clone(), g.clone());
        let inputs = format!(
            "f = {}; g = {}; a = {a}; b = {b}",
            print_signal(&f),
            print_signal(&g)
        );
        let rhs = (|| {
            let ff = fourier_symbolic(&f)?.expr.scale(&a);
            ff.add(&fourier_symbolic(&g)?.expr.scale(&b))
        })();
        self.exact(
            "fourier linearity",
            &inputs,
            fourier_symbolic(&combo).map(|r| r.expr),
            rhs.clone(),
        );
        self.fourier_shadow("fourier linearity", &inputs, &rhs, &combo);
        self.cases += 1;

        // frequency shift
        let f = self.integrable_signal(false, 0);
        let w0 = self.shift_frequency();
        let shifted = f.mul_cexp(&w0);
        let inputs = format!("f = {}; w0 = {w0}", print_signal(&f));
        let rule = fourier_shift(&f, &w0).map(|r| r.expr);
        self.exact(
            "fourier frequency shift",
            &inputs,
            rule.clone(),
            fourier_symbolic(&shifted).map(|r| r.expr),
        );
        self.fourier_shadow("fourier frequency shift", &inputs, &rule, &shifted);
        self.cases += 1;

        // modulation
        for kind in [OscKind::Cos, OscKind::Sin] {
            let f = self.integrable_signal(false, 0);
            let w0 = self.shift_frequency();
            let modulated = f.mul_osc(kind, &w0);
            let inputs = format!("f = {}; w0 = {w0}", print_signal(&f));
            let property = format!(
                "fourier {} modulation",
                if kind == OscKind::Cos { "cos" } else { "sin" }
            );
            let rule = fourier_modulate(&f, &w0, kind).map(|r| r.expr);
            self.exact(
                &property,
                &inputs,
                rule.clone(),
                fourier_symbolic(&modulated).map(|r| r.expr),
            );
            self.fourier_shadow(&property, &inputs, &rule, &modulated);
            self.cases += 1;
        }

        // time reversal
        let f = self.integrable_signal(false, 0);
        let reversed = SignalExpr::reverse(f.clone());
        let inputs = format!("f = {}", print_signal(&f));
        let rule = fourier_time_reverse(&f).map(|r| r.expr);
        self.exact(
            "fourier time reversal",
            &inputs,
            rule.clone(),
            fourier_symbolic(&reversed).map(|r| r.expr),
        );
        self.fourier_shadow("fourier time reversal", &inputs, &rule, &reversed);
        self.cases += 1;

        // n-th derivative of a signal smooth through the origin
        let n = self.rng.gen_range(1..=3);
        let f = self.integrable_signal(false, n);
        let inputs = format!("f = {}; n = {n}", print_signal(&f));
        let derived = f.nth_derivative(n).expect("no two-sided atoms");
        let rule = fourier_derivative(&f, n).map(|r| r.expr);
        self.exact(
            "fourier derivative",
            &inputs,
            rule.clone(),
            fourier_symbolic(&derived).map(|r| r.expr),
        );
        self.fourier_shadow("fourier derivative", &inputs, &rule, &derived);
        self.cases += 1;
    }

    fn bridge_case(&mut self) {
        let f = self.integrable_signal(true, 0);
        let inputs = format!("f = {}", print_signal(&f));
        let bridged = laplace_to_fourier(&f).map(|r| r.expr);
        self.exact(
            "laplace at s = iw equals fourier",
            &inputs,
            bridged,
            fourier_symbolic(&f).map(|r| r.expr),
        );
        let w = self.omega();
        let lhs = laplace_numeric(&f, Complex::new(0.0, w), &self.cfg);
        let rhs = fourier_numeric(&f, w, &self.cfg);
        self.numeric(
            "laplace at s = iw equals fourier (numeric)",
            &format!("{inputs}; w = {w}"),
            lhs,
            rhs,
        );
        self.cases += 1;
    }

    fn positive_param(&mut self) -> BigRational {
        let q = self.rng.gen_range(1..=12);
        ratio(self.rng.gen_range(1..=40), q)
    }

    fn case_study_case(&mut self) {
        let (r, l, c) = (
            self.positive_param(),
            self.positive_param(),
            self.positive_param(),
        );
        let inputs = format!("R = {r}; L = {l}; C = {c}");
        match ltc_model(&r, &l, &c) {
            Ok((ode, expected)) => self.exact(
                "ltc transfer function",
                &inputs,
                transfer_function(&ode),
                Ok(expected),
            ),
            Err(e) => self.fail(
                "ltc transfer function",
                &inputs,
                format!("{e}"),
                String::new(),
                None,
            ),
        }
        self.cases += 1;

        let (m, b, k) = (
            self.positive_param(),
            self.positive_param(),
            self.positive_param(),
        );
        let inputs = format!("M = {m}; b = {b}; k = {k}");
        match suspension_model(&m, &b, &k) {
            Ok((ode, expected)) => self.exact(
                "suspension frequency response",
                &inputs,
                Ok(frequency_response(&ode).expr),
                Ok(expected),
            ),
            Err(e) => self.fail(
                "suspension frequency response",
                &inputs,
                format!("{e}"),
                String::new(),
                None,
            ),
        }
        self.cases += 1;

        let (r1, r2, c1, c2) = (
            self.positive_param(),
            self.positive_param(),
            self.positive_param(),
            self.positive_param(),
        );
        let inputs = format!("R1 = {r1}; R2 = {r2}; C1 = {c1}; C2 = {c2}");
        match sallen_key_model(&r1, &r2, &c1, &c2) {
            Ok((ode, expected)) => {
                let h = transfer_function(&ode);
                let dc = h
                    .as_ref()
                    .ok()
                    .and_then(|h| h.eval_exact(&GaussianRational::zero()));
                if dc != Some(GaussianRational::one()) {
                    self.fail(
                        "sallen-key unit dc gain",
                        &inputs,
                        format!("{dc:?}"),
                        "1".into(),
                        None,
                    );
                }
                self.exact("sallen-key transfer function", &inputs, h, Ok(expected));
            }
            Err(e) => self.fail(
                "sallen-key transfer function",
                &inputs,
                format!("{e}"),
                String::new(),
                None,
            ),
        }
        self.cases += 1;
    }

    fn oracle_case(&mut self) {
        let f = self.causal_signal(0);
        let inputs = format!("f = {}", print_signal(&f));
        let rule = laplace_symbolic(&f).map(|r| r.expr);
        self.laplace_shadow("laplace symbolic vs oracle", &inputs, &rule, &f);
        self.cases += 1;

        let f = self.integrable_signal(false, 0);
        debug_assert!(fourier_exists(&f).holds());
        let inputs = format!("f = {}", print_signal(&f));
        let rule = fourier_symbolic(&f).map(|r| r.expr);
        self.fourier_shadow("fourier symbolic vs oracle", &inputs, &rule, &f);
        self.cases += 1;
    }
}

/// Largest real part among `f`'s exponential rates, i.e. its true growth rate.
pub fn growth_rate(f: &SignalExpr) -> f64 {
    f.atoms()
        .iter()
        .map(|(a, _)| a.exp_rate().re.to_f64().unwrap_or(f64::NAN))
        .fold(f64::NEG_INFINITY, f64::max)
}
