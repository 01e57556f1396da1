//! Tokenizer shared by the signal and ODE parsers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::SyntaxError;
use crate::scalar::GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub(crate) fn tokenize(text: &str, first_line: usize) -> Result<Vec<Token>, SyntaxError> {
    let mut out = Vec::new();
    let (mut line, mut column) = (first_line, 1);
    let chars: Vec<char> = text.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            k += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().collect();
            column += k - start;
            Tok::Num(digits.parse().expect("ascii digits"))
        } else if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            column += k - start;
            Tok::Ident(chars[start..k].iter().collect())
        } else if "+-*/^()'=,".contains(c) {
            k += 1;
            column += 1;
            Tok::Sym(c)
        } else {
            return Err(SyntaxError {
                line: l0,
                column: c0,
                message: format!("unexpected character `{c}`"),
            });
        };
        out.push(Token {
            tok,
            line: l0,
            column: c0,
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

/// Backtracking cursor over a token vector.
pub(crate) struct Cursor {
    toks: Vec<Token>,
    pub pos: usize,
}

impl Cursor {
    pub fn new(toks: Vec<Token>) -> Self {
        Self { toks, pos: 0 }
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    pub fn peek_at(&self, ahead: usize) -> &Tok {
        let k = (self.pos + ahead).min(self.toks.len() - 1);
        &self.toks[k].tok
    }

    pub fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn at_sym(&self, c: char) -> bool {
        *self.peek() == Tok::Sym(c)
    }

    pub fn at_ident(&self, name: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == name)
    }

    pub fn eat_sym(&mut self, c: char) -> bool {
        if self.at_sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn error(&self, message: impl Into<String>) -> SyntaxError {
        let t = &self.toks[self.pos];
        SyntaxError {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    pub fn error_at(&self, pos: usize, message: impl Into<String>) -> SyntaxError {
        let t = &self.toks[pos.min(self.toks.len() - 1)];
        SyntaxError {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    pub fn describe(&self) -> String {
        match self.peek() {
            Tok::Num(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::End => "end of input".to_string(),
        }
    }

    pub fn expect_sym(&mut self, c: char) -> Result<(), SyntaxError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`, found {}", self.describe())))
        }
    }

    pub fn expect_ident(&mut self, name: &str) -> Result<(), SyntaxError> {
        if self.at_ident(name) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected `{name}`, found {}", self.describe())))
        }
    }

    /// Unsigned `p` or `p/q`.
    pub fn unsigned_rational(&mut self) -> Result<BigRational, SyntaxError> {
        let Tok::Num(p) = self.peek().clone() else {
            return Err(self.error(format!("expected a number, found {}", self.describe())));
        };
        self.bump();
        if self.at_sym('/') && matches!(self.peek_at(1), Tok::Num(_)) {
            self.bump();
            let at = self.pos;
            let Tok::Num(q) = self.bump() else {
                unreachable!()
            };
            if q.is_zero() {
                return Err(self.error_at(at, "zero denominator in rational literal"));
            }
            return Ok(BigRational::new(p, q));
        }
        Ok(BigRational::from_integer(p))
    }

    /// `['-'] p[/q]`.
    pub fn signed_rational(&mut self) -> Result<BigRational, SyntaxError> {
        let neg = self.eat_sym('-');
        let r = self.unsigned_rational()?;
        Ok(if neg { -r } else { r })
    }

    /// Gaussian rational literal: `a`, `b i`, `a + b i`, `a - i`, `i`, ...
    pub fn complex_literal(&mut self) -> Result<GaussianRational, SyntaxError> {
        let first_neg = self.eat_sym('-');
        let (first, first_is_imag) = self.real_or_imag()?;
        let sign = |neg: bool, r: BigRational| if neg { -r } else { r };
        let first = sign(first_neg, first);
        if first_is_imag {
            return Ok(GaussianRational::imag(first));
        }
        if (self.at_sym('+') || self.at_sym('-'))
            && matches!(self.peek_at(1), Tok::Num(_) | Tok::Ident(_))
            && self.imag_follows(1)
        {
            let neg = self.bump() == Tok::Sym('-');
            let (im, is_imag) = self.real_or_imag()?;
            debug_assert!(is_imag);
            return Ok(GaussianRational::new(first, sign(neg, im)));
        }
        Ok(GaussianRational::real(first))
    }

    // whether the token run starting `ahead` is `i`, `p i` or `p/q i`
    fn imag_follows(&self, ahead: usize) -> bool {
        let is_i = |k: usize| matches!(self.peek_at(k), Tok::Ident(s) if s == "i");
        match self.peek_at(ahead) {
            Tok::Ident(s) => s == "i",
            Tok::Num(_) => {
                if *self.peek_at(ahead + 1) == Tok::Sym('/') {
                    is_i(ahead + 3)
                } else {
                    is_i(ahead + 1)
                }
            }
            _ => false,
        }
    }

    fn real_or_imag(&mut self) -> Result<(BigRational, bool), SyntaxError> {
        if self.at_ident("i") {
            self.bump();
            return Ok((BigRational::one(), true));
        }
        let r = self.unsigned_rational()?;
        if self.at_ident("i") {
            self.bump();
            return Ok((r, true));
        }
        Ok((r, false))
    }
}
