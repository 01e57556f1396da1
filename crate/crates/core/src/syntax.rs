//! Text syntax for signals.
//!
//! ```text
//! signal  := term (('+' | '-') term)*
//! term    := coeff '*' term | '-' term | primary ['*' osc]
//! coeff   := ['-'] p[/q] | '(' complex ')'
//! primary := 'causal(' body ')' | 'twosided(' body ')' | 'reverse(' signal ')' | '(' signal ')'
//! body    := factor ('*' factor)*
//! factor  := '1' | 't' ['^' n] | 'exp(' [rate '*'] ('t' | 'abs(t)') ')' | osc
//! rate    := ['-'] p[/q] | '(' complex ')'
//! osc     := ('cos' | 'sin') '(' [['-'] p[/q] '*'] 't' ')'
//! ```
//!
//! `twosided` bodies must contain `exp(c*abs(t))` with `Re(c) < 0`; `causal`
//! bodies use `exp(c*t)`. A trailing `* cos(w*t)` after a primary folds into
//! an atom that has no oscillation yet. [`print_signal`] emits the canonical
//! form, which parses back to the same tree.

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::SyntaxError;
use crate::lexer::{tokenize, Cursor, Tok};
use crate::scalar::GaussianRational;
use crate::signal::{Atom, Osc, SignalExpr, Support};

/// Parses a signal expression.
pub fn parse_signal(text: &str) -> Result<SignalExpr, SyntaxError> {
    let mut cur = Cursor::new(tokenize(text, 1)?);
    if *cur.peek() == Tok::End {
        return Err(cur.error("empty signal"));
    }
    let f = signal(&mut cur)?;
    if *cur.peek() != Tok::End {
        return Err(cur.error(format!("unexpected {}", cur.describe())));
    }
    Ok(f)
}

fn signal(cur: &mut Cursor) -> Result<SignalExpr, SyntaxError> {
    let mut terms = vec![term(cur)?];
    loop {
        if cur.eat_sym('+') {
            terms.push(term(cur)?);
        } else if cur.eat_sym('-') {
            terms.push(negate(term(cur)?));
        } else {
            break;
        }
    }
    Ok(if terms.len() == 1 {
        terms.pop().unwrap()
    } else {
        SignalExpr::Sum(terms)
    })
}

fn negate(f: SignalExpr) -> SignalExpr {
    match f {
        SignalExpr::Scale { coeff, inner } => SignalExpr::Scale {
            coeff: -coeff,
            inner,
        },
        other => SignalExpr::scale(-GaussianRational::one(), other),
    }
}

fn term(cur: &mut Cursor) -> Result<SignalExpr, SyntaxError> {
    let save = cur.pos;
    if let Some(c) = try_coeff(cur) {
        if cur.eat_sym('*') {
            return Ok(SignalExpr::scale(c, term(cur)?));
        }
        // a bare number is never a signal
        return Err(cur.error(format!(
            "expected `*` after coefficient, found {}",
            cur.describe()
        )));
    }
    cur.pos = save;
    if cur.eat_sym('-') {
        return Ok(negate(term(cur)?));
    }
    let p = primary(cur)?;
    if cur.at_sym('*') && (is_ident(cur.peek_at(1), "cos") || is_ident(cur.peek_at(1), "sin")) {
        let at = cur.pos;
        cur.bump();
        let osc = osc_factor(cur)?;
        return match p {
            SignalExpr::Atom(a) if *a.osc() == Osc::None => Ok(rebuild(&a, osc)),
            _ => {
                cur.pos = at;
                Err(cur.error(
                    "a trailing cos/sin factor only applies to a single atom without oscillation",
                ))
            }
        };
    }
    Ok(p)
}

fn rebuild(a: &Atom, osc: Osc) -> SignalExpr {
    match a.support() {
        Support::Causal => Atom::causal(a.poly_degree(), a.exp_rate().clone(), osc).into(),
        Support::TwoSidedEven => Atom::two_sided(a.poly_degree(), a.exp_rate().clone(), osc)
            .expect("already validated")
            .into(),
    }
}

fn is_ident(t: &Tok, name: &str) -> bool {
    matches!(t, Tok::Ident(s) if s == name)
}

/// Coefficient followed by `*`; restores position and returns `None` otherwise.
fn try_coeff(cur: &mut Cursor) -> Option<GaussianRational> {
    let save = cur.pos;
    let parsed = if cur.at_sym('(') {
        cur.bump();
        cur.complex_literal().ok().filter(|_| cur.eat_sym(')'))
    } else if matches!(cur.peek(), Tok::Num(_))
        || (cur.at_sym('-') && matches!(cur.peek_at(1), Tok::Num(_)))
    {
        cur.signed_rational().ok().map(GaussianRational::real)
    } else {
        None
    };
    match parsed {
        Some(c) if cur.at_sym('*') => Some(c),
        _ => {
            cur.pos = save;
            None
        }
    }
}

fn primary(cur: &mut Cursor) -> Result<SignalExpr, SyntaxError> {
    match cur.peek().clone() {
        Tok::Ident(name) if name == "causal" || name == "twosided" => {
            let start = cur.error("");
            cur.bump();
            cur.expect_sym('(')?;
            let a = body(cur, name == "twosided", start)?;
            cur.expect_sym(')')?;
            Ok(a.into())
        }
        Tok::Ident(name) if name == "reverse" => {
            cur.bump();
            cur.expect_sym('(')?;
            let f = signal(cur)?;
            cur.expect_sym(')')?;
            Ok(SignalExpr::reverse(f))
        }
        Tok::Sym('(') => {
            cur.bump();
            let f = signal(cur)?;
            cur.expect_sym(')')?;
            Ok(f)
        }
        _ => Err(cur.error(format!(
            "expected `causal(`, `twosided(`, `reverse(` or `(`, found {}",
            cur.describe()
        ))),
    }
}

fn body(cur: &mut Cursor, two_sided: bool, start: SyntaxError) -> Result<Atom, SyntaxError> {
    let mut degree: Option<u32> = None;
    let mut rate: Option<GaussianRational> = None;
    let mut osc: Option<Osc> = None;
    loop {
        match cur.peek().clone() {
            Tok::Num(n) if n.is_one() => {
                cur.bump();
            }
            Tok::Ident(s) if s == "t" => {
                if degree.is_some() {
                    return Err(cur.error("repeated `t` factor"));
                }
                cur.bump();
                let n = if cur.eat_sym('^') {
                    match cur.bump() {
                        Tok::Num(n) => {
                            u32::try_from(n).map_err(|_| cur.error("exponent too large"))?
                        }
                        _ => return Err(cur.error("expected an integer exponent")),
                    }
                } else {
                    1
                };
                degree = Some(n);
            }
            Tok::Ident(s) if s == "exp" => {
                if rate.is_some() {
                    return Err(cur.error("repeated `exp` factor"));
                }
                cur.bump();
                cur.expect_sym('(')?;
                let c = if cur.at_sym('(') {
                    cur.bump();
                    let c = cur.complex_literal()?;
                    cur.expect_sym(')')?;
                    cur.expect_sym('*')?;
                    c
                } else if cur.at_sym('-')
                    && (is_ident(cur.peek_at(1), "t") || is_ident(cur.peek_at(1), "abs"))
                {
                    cur.bump();
                    -GaussianRational::one()
                } else if matches!(cur.peek(), Tok::Num(_)) || cur.at_sym('-') {
                    let r = cur.signed_rational()?;
                    cur.expect_sym('*')?;
                    GaussianRational::real(r)
                } else {
                    GaussianRational::one()
                };
                let uses_abs = if cur.at_ident("abs") {
                    cur.bump();
                    cur.expect_sym('(')?;
                    cur.expect_ident("t")?;
                    cur.expect_sym(')')?;
                    true
                } else {
                    cur.expect_ident("t")?;
                    false
                };
                if uses_abs != two_sided {
                    return Err(cur.error(if two_sided {
                        "twosided bodies use exp(c*abs(t))"
                    } else {
                        "abs(t) is only allowed inside twosided(...)"
                    }));
                }
                cur.expect_sym(')')?;
                rate = Some(c);
            }
            Tok::Ident(s) if s == "cos" || s == "sin" => {
                if osc.is_some() {
                    return Err(cur.error("at most one cos/sin factor per atom"));
                }
                osc = Some(osc_factor(cur)?);
            }
            _ => {
                return Err(cur.error(format!(
                    "expected a signal factor, found {}",
                    cur.describe()
                )))
            }
        }
        if !cur.eat_sym('*') {
            break;
        }
    }
    let n = degree.unwrap_or(0);
    let osc = osc.unwrap_or(Osc::None);
    if two_sided {
        let Some(c) = rate else {
            return Err(SyntaxError {
                message: "twosided(...) requires exp(c*abs(t)) with Re(c) < 0".into(),
                ..start
            });
        };
        Atom::two_sided(n, c, osc).map_err(|e| SyntaxError {
            message: e.to_string(),
            ..start
        })
    } else {
        Ok(Atom::causal(
            n,
            rate.unwrap_or_else(GaussianRational::zero),
            osc,
        ))
    }
}

fn osc_factor(cur: &mut Cursor) -> Result<Osc, SyntaxError> {
    let is_cos = cur.at_ident("cos");
    cur.bump();
    cur.expect_sym('(')?;
    let w = if cur.at_ident("t") {
        BigRational::one()
    } else {
        let w = cur.signed_rational()?;
        cur.expect_sym('*')?;
        w
    };
    cur.expect_ident("t")?;
    cur.expect_sym(')')?;
    Ok(if is_cos { Osc::Cos(w) } else { Osc::Sin(w) })
}

/// Canonical text form; `parse_signal(print_signal(f)) == f`.
pub fn print_signal(f: &SignalExpr) -> String {
    let mut out = String::new();
    write_signal(f, &mut out);
    out
}

fn write_coeff(c: &GaussianRational, out: &mut String) {
    if c.is_real() {
        let _ = write!(out, "{}", c.re);
    } else {
        let _ = write!(out, "({c})");
    }
}

fn write_signal(f: &SignalExpr, out: &mut String) {
    match f {
        SignalExpr::Sum(ts) => {
            for (k, t) in ts.iter().enumerate() {
                if k > 0 {
                    out.push_str(" + ");
                }
                write_term(t, out);
            }
        }
        other => write_term(other, out),
    }
}

fn write_term(f: &SignalExpr, out: &mut String) {
    match f {
        SignalExpr::Sum(_) => {
            out.push('(');
            write_signal(f, out);
            out.push(')');
        }
        SignalExpr::Scale { coeff, inner } => {
            write_coeff(coeff, out);
            out.push('*');
            write_term(inner, out);
        }
        SignalExpr::TimeReverse(inner) => {
            out.push_str("reverse(");
            write_signal(inner, out);
            out.push(')');
        }
        SignalExpr::Atom(a) => write_atom(a, out),
    }
}

fn write_atom(a: &Atom, out: &mut String) {
    let two_sided = a.support() == Support::TwoSidedEven;
    out.push_str(if two_sided { "twosided(" } else { "causal(" });
    let mut factors = Vec::new();
    match a.poly_degree() {
        0 => {}
        1 => factors.push("t".to_string()),
        n => factors.push(format!("t^{n}")),
    }
    let c = a.exp_rate();
    if !c.is_zero() || two_sided {
        let mut s = String::from("exp(");
        write_coeff(c, &mut s);
        s.push_str(if two_sided { "*abs(t))" } else { "*t)" });
        factors.push(s);
    }
    match a.osc() {
        Osc::None => {}
        Osc::Cos(w) => factors.push(format!("cos({w}*t)")),
        Osc::Sin(w) => factors.push(format!("sin({w}*t)")),
    }
    if factors.is_empty() {
        factors.push("1".to_string());
    }
    out.push_str(&factors.join(" * "));
    out.push(')');
}

impl std::fmt::Display for SignalExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&print_signal(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn parses_documented_forms() {
        let f = parse_signal("causal(t^2 * exp(-1/2*t) * cos(3*t))").unwrap();
        assert_eq!(f, Atom::causal(2, g("-1/2"), Osc::Cos(ratio(3, 1))).into());
        let f = parse_signal("causal(exp(-t))*sin(2*t)").unwrap();
        assert_eq!(f, Atom::causal(0, g("-1"), Osc::Sin(ratio(2, 1))).into());
        let f = parse_signal("twosided(exp(-1*abs(t)))").unwrap();
        assert_eq!(f, Atom::two_sided(0, g("-1"), Osc::None).unwrap().into());
        let f = parse_signal("causal(exp((-1 + 2 i)*t))").unwrap();
        assert_eq!(f, Atom::causal(0, g("-1+2 i"), Osc::None).into());
        let f = parse_signal("2*causal(1) - 1/3*reverse(causal(t))").unwrap();
        assert_eq!(
            f,
            SignalExpr::Sum(vec![
                SignalExpr::scale(g("2"), Atom::step().into()),
                SignalExpr::scale(
                    g("-1/3"),
                    SignalExpr::reverse(Atom::causal(1, g("0"), Osc::None).into())
                ),
            ])
        );
        assert_eq!(parse_signal("causal(1)").unwrap(), Atom::step().into());
    }

    #[test]
    fn rejects_malformed() {
        let e = parse_signal("causal(exp(-1*t)").unwrap_err();
        assert!(e.message.contains("expected `)`"), "{e}");
        assert_eq!(e.column, 17);
        assert!(parse_signal("twosided(exp(1*abs(t)))").is_err());
        assert!(parse_signal("twosided(t)").is_err());
        assert!(parse_signal("causal(exp(-1*abs(t)))").is_err());
        assert!(parse_signal("").is_err());
        assert!(parse_signal("3").is_err());
        assert!(parse_signal("causal(t) +").is_err());
        assert!(parse_signal("(causal(t) + causal(1))*cos(t)").is_err());
    }

    #[test]
    fn printer_round_trips() {
        for text in [
            "causal(1)",
            "causal(t^3 * exp(-2*t) * sin(1/2*t))",
            "twosided(t * exp(-1/4*abs(t)) * cos(-3*t))",
            "(1/2+1 i)*causal(exp((-1-1/3 i)*t)) + -1*reverse(causal(t))",
            "2*(causal(1) + reverse(2*causal(exp(-1*t))))",
            "0*causal(1)",
        ] {
            let f = parse_signal(text).unwrap();
            assert_eq!(print_signal(&f), text);
            assert_eq!(parse_signal(&print_signal(&f)).unwrap(), f);
        }
    }
}
