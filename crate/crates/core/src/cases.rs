//! The three reference systems: a linear transfer converter, an automobile
//! suspension and a second-order Sallen-Key low-pass filter.
//!
//! Each constructor returns the ODE together with the closed-form transfer
//! function it must reproduce. The expected value is assembled from the
//! formula with rational-function arithmetic, not from the ODE coefficients.

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ode::LinearODE;
use crate::rational::{RationalExpr, Var};
use crate::scalar::GaussianRational;

#[derive(Clone, Debug, PartialEq)]
pub enum CaseStudyParams {
    Ltc {
        r: BigRational,
        l: BigRational,
        c: BigRational,
    },
    Suspension {
        m: BigRational,
        b: BigRational,
        k: BigRational,
    },
    SallenKey {
        r1: BigRational,
        r2: BigRational,
        c1: BigRational,
        c2: BigRational,
    },
}

/// Model names accepted by [`CaseStudyParams::from_assignments`].
pub const CASE_NAMES: [&str; 3] = ["ltc", "suspension", "sallen-key"];

fn positive(name: &str, v: &BigRational) -> Result<()> {
    if v.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositiveParameter(format!("{name} = {v}")))
    }
}

impl CaseStudyParams {
    pub fn name(&self) -> &'static str {
        match self {
            CaseStudyParams::Ltc { .. } => "ltc",
            CaseStudyParams::Suspension { .. } => "suspension",
            CaseStudyParams::SallenKey { .. } => "sallen-key",
        }
    }

    /// `(name, value)` pairs in the model's conventional order.
    pub fn assignments(&self) -> Vec<(&'static str, &BigRational)> {
        match self {
            CaseStudyParams::Ltc { r, l, c } => vec![("R", r), ("L", l), ("C", c)],
            CaseStudyParams::Suspension { m, b, k } => vec![("M", m), ("b", b), ("k", k)],
            CaseStudyParams::SallenKey { r1, r2, c1, c2 } => {
                vec![("R1", r1), ("R2", r2), ("C1", c1), ("C2", c2)]
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.assignments()
            .into_iter()
            .try_for_each(|(n, v)| positive(n, v))
    }

    /// Builds parameters for `model` from `NAME = value` pairs; unset ones are 1.
    pub fn from_assignments(model: &str, pairs: &[(String, BigRational)]) -> Result<Self> {
        let one = BigRational::one;
        let mut p = match model {
            "ltc" => CaseStudyParams::Ltc {
                r: one(),
                l: one(),
                c: one(),
            },
            "suspension" => CaseStudyParams::Suspension {
                m: one(),
                b: one(),
                k: one(),
            },
            "sallen-key" => CaseStudyParams::SallenKey {
                r1: one(),
                r2: one(),
                c1: one(),
                c2: one(),
            },
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown model `{other}` (expected one of {})",
                    CASE_NAMES.join(", ")
                )))
            }
        };
        for (name, value) in pairs {
            let slot = match (&mut p, name.as_str()) {
                (CaseStudyParams::Ltc { r, .. }, "R") => r,
                (CaseStudyParams::Ltc { l, .. }, "L") => l,
                (CaseStudyParams::Ltc { c, .. }, "C") => c,
                (CaseStudyParams::Suspension { m, .. }, "M") => m,
                (CaseStudyParams::Suspension { b, .. }, "b") => b,
                (CaseStudyParams::Suspension { k, .. }, "k") => k,
                (CaseStudyParams::SallenKey { r1, .. }, "R1") => r1,
                (CaseStudyParams::SallenKey { r2, .. }, "R2") => r2,
                (CaseStudyParams::SallenKey { c1, .. }, "C1") => c1,
                (CaseStudyParams::SallenKey { c2, .. }, "C2") => c2,
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "model `{model}` has no parameter `{name}`"
                    )))
                }
            };
            *slot = value.clone();
        }
        p.validate()?;
        Ok(p)
    }

    /// The model's ODE and expected transfer function (`s` for the
    /// converter and the filter, `iω` for the suspension).
    pub fn model(&self) -> Result<(LinearODE, RationalExpr)> {
        match self {
            CaseStudyParams::Ltc { r, l, c } => ltc_model(r, l, c),
            CaseStudyParams::Suspension { m, b, k } => suspension_model(m, b, k),
            CaseStudyParams::SallenKey { r1, r2, c1, c2 } => sallen_key_model(r1, r2, c1, c2),
        }
    }

    /// The model in the ODE file format, with symbolic coefficients.
    pub fn export(&self) -> String {
        let (title, equation) = match self {
            CaseStudyParams::Ltc { .. } => (
                "linear transfer converter",
                "y'' - 2/(R*C)*y' + 1/(L*C)*y = u'' - 1/(L*C)*u",
            ),
            CaseStudyParams::Suspension { .. } => {
                ("automobile suspension", "M*y'' + b*y' + k*y = b*u' + k*u")
            }
            CaseStudyParams::SallenKey { .. } => (
                "Sallen-Key low-pass filter",
                "R1*R2*C1*C2*y'' + C2*(R1 + R2)*y' + y = u",
            ),
        };
        let mut out = format!("# {title}\n");
        for (name, value) in self.assignments() {
            let _ = writeln!(out, "param {name} = {value}");
        }
        out.push_str(equation);
        out.push('\n');
        out
    }
}

fn g(v: &BigRational) -> GaussianRational {
    GaussianRational::real(v.clone())
}

fn konst(v: BigRational, var: Var) -> RationalExpr {
    RationalExpr::constant(GaussianRational::real(v), var)
}

/// Linear transfer converter:
/// `H(s) = (s² − 1/(LC)) / (1/(LC) − (2/(RC))·s + s²)`.
pub fn ltc_model(
    r: &BigRational,
    l: &BigRational,
    c: &BigRational,
) -> Result<(LinearODE, RationalExpr)> {
    positive("R", r)?;
    positive("L", l)?;
    positive("C", c)?;
    let inv_lc = (l * c).recip();
    let two_rc = BigRational::from_integer(2.into()) / (r * c);
    let ode = LinearODE::new(
        vec![g(&inv_lc), g(&-two_rc.clone()), GaussianRational::one()],
        vec![
            g(&-inv_lc.clone()),
            GaussianRational::zero(),
            GaussianRational::one(),
        ],
        true,
    )?;

    let s = RationalExpr::var_monomial(Var::S);
    let s2 = s.mul(&s)?;
    let num = s2.sub(&konst(inv_lc.clone(), Var::S))?;
    let den = konst(inv_lc, Var::S)
        .sub(&konst(two_rc, Var::S).mul(&s)?)?
        .add(&s2)?;
    Ok((ode, num.div(&den)?))
}

/// Automobile suspension:
/// `H(iω) = ((b/M)·iω + k/M) / (k/M + (b/M)·iω + (iω)²)`.
pub fn suspension_model(
    m: &BigRational,
    b: &BigRational,
    k: &BigRational,
) -> Result<(LinearODE, RationalExpr)> {
    positive("M", m)?;
    positive("b", b)?;
    positive("k", k)?;
    let ode = LinearODE::new(vec![g(k), g(b), g(m)], vec![g(k), g(b)], true)?;

    let z = RationalExpr::var_monomial(Var::IOmega);
    let (bm, km) = (konst(b / m, Var::IOmega), konst(k / m, Var::IOmega));
    let num = bm.mul(&z)?.add(&km)?;
    let den = km.add(&bm.mul(&z)?)?.add(&z.mul(&z)?)?;
    Ok((ode, num.div(&den)?))
}

/// Second-order Sallen-Key low-pass:
/// `H(s) = 1 / (R1·C1·R2·C2·s² + C2·(R1+R2)·s + 1)`.
pub fn sallen_key_model(
    r1: &BigRational,
    r2: &BigRational,
    c1: &BigRational,
    c2: &BigRational,
) -> Result<(LinearODE, RationalExpr)> {
    positive("R1", r1)?;
    positive("R2", r2)?;
    positive("C1", c1)?;
    positive("C2", c2)?;
    let a2 = r1 * c1 * r2 * c2;
    let a1 = c2 * (r1 + r2);
    let ode = LinearODE::new(
        vec![GaussianRational::one(), g(&a1), g(&a2)],
        vec![GaussianRational::one()],
        true,
    )?;

    let s = RationalExpr::var_monomial(Var::S);
    let den = konst(a2, Var::S)
        .mul(&s.mul(&s)?)?
        .add(&konst(a1, Var::S).mul(&s)?)?
        .add(&RationalExpr::one(Var::S))?;
    Ok((ode, RationalExpr::one(Var::S).div(&den)?))
}

/// Parses `R=1,L=2/3` style parameter lists.
pub fn parse_assignments(text: &str) -> Result<Vec<(String, BigRational)>> {
    text.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|pair| {
            let (name, value) = pair.split_once('=').ok_or_else(|| {
                Error::InvalidArgument(format!("expected NAME=value, got `{pair}`"))
            })?;
            let value: BigRational = value.trim().parse().map_err(|_| {
                Error::InvalidArgument(format!("`{}` is not a rational number", value.trim()))
            })?;
            Ok((name.trim().to_string(), value))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ode::{frequency_response, parse_ode, transfer_function};
    use crate::poly::Poly;
    use crate::scalar::ratio;

    fn q(p: i64) -> BigRational {
        ratio(p, 1)
    }

    fn rf(num: &[i64], den: &[i64], var: Var) -> RationalExpr {
        let p = |cs: &[i64]| Poly::new(cs.iter().map(|&c| GaussianRational::from_int(c)).collect());
        RationalExpr::new(p(num), p(den), var).unwrap()
    }

    #[test]
    fn ltc_examples() {
        let (ode, expected) = ltc_model(&q(1), &q(1), &q(1)).unwrap();
        assert!(expected
            .equals(&rf(&[-1, 0, 1], &[1, -2, 1], Var::S))
            .unwrap());
        assert!(transfer_function(&ode).unwrap().equals(&expected).unwrap());
        let (ode, expected) = ltc_model(&q(2), &q(1), &q(1)).unwrap();
        assert!(expected
            .equals(&rf(&[-1, 0, 1], &[1, -1, 1], Var::S))
            .unwrap());
        assert!(transfer_function(&ode).unwrap().equals(&expected).unwrap());
        assert!(matches!(
            ltc_model(&q(1), &q(0), &q(1)),
            Err(Error::NonPositiveParameter(_))
        ));
    }

    #[test]
    fn suspension_examples() {
        let (ode, expected) = suspension_model(&q(1), &q(1), &q(1)).unwrap();
        assert!(expected
            .equals(&rf(&[1, 1], &[1, 1, 1], Var::IOmega))
            .unwrap());
        assert!(frequency_response(&ode).expr.equals(&expected).unwrap());
        let (ode, expected) = suspension_model(&q(2), &q(4), &q(2)).unwrap();
        assert!(expected
            .equals(&rf(&[1, 2], &[1, 2, 1], Var::IOmega))
            .unwrap());
        assert!(frequency_response(&ode).expr.equals(&expected).unwrap());
        assert!(matches!(
            suspension_model(&q(-1), &q(1), &q(1)),
            Err(Error::NonPositiveParameter(_))
        ));
    }

    #[test]
    fn sallen_key_examples() {
        let (ode, expected) = sallen_key_model(&q(1), &q(1), &q(1), &q(1)).unwrap();
        assert!(expected.equals(&rf(&[1], &[1, 2, 1], Var::S)).unwrap());
        assert!(transfer_function(&ode).unwrap().equals(&expected).unwrap());
        let (ode, expected) = sallen_key_model(&q(1), &q(2), &q(1), &q(1)).unwrap();
        assert!(expected.equals(&rf(&[1], &[1, 3, 2], Var::S)).unwrap());
        assert!(transfer_function(&ode).unwrap().equals(&expected).unwrap());
        assert!(matches!(
            sallen_key_model(&q(1), &q(1), &q(1), &q(0)),
            Err(Error::NonPositiveParameter(_))
        ));
    }

    #[test]
    fn export_parses_back() {
        for model in CASE_NAMES {
            let pairs = parse_assignments(match model {
                "ltc" => "R=2, L=1/3, C=5",
                "suspension" => "M=2,b=4,k=2",
                _ => "R1=1,R2=2,C1=3/7,C2=1/2",
            })
            .unwrap();
            let p = CaseStudyParams::from_assignments(model, &pairs).unwrap();
            let (ode, _) = p.model().unwrap();
            assert_eq!(parse_ode(&p.export()).unwrap(), ode, "{model}");
        }
        assert!(CaseStudyParams::from_assignments("ltc", &[("X".into(), q(1))]).is_err());
        assert!(CaseStudyParams::from_assignments("rlc", &[]).is_err());
        assert!(matches!(
            CaseStudyParams::from_assignments("suspension", &[("k".into(), q(0))]),
            Err(Error::NonPositiveParameter(_))
        ));
    }
}
