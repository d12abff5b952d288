//! Exact parser for sparse polynomial expressions with Gaussian-rational
//! coefficients.
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := coeff ('*' atom)* | atom ('*' atom)*
//! atom     := symbol ['^' nat]
//! coeff    := rational | '(' rational ('+'|'-') rational 'i' ')'
//! rational := ['-'] nat ['/' nat]
//! ```
//!
//! Whitespace is insignificant. A term may also start with `-` directly in
//! front of an atom (`-u^2`), which reads as `-1*u^2`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{BiPolynomial, GaussianRational, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprErrorKind {
    Syntax(String),
    UnsupportedCoefficient(String),
}

/// Parse failure at a 1-based character column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprError {
    pub column: usize,
    pub kind: ExprErrorKind,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprErrorKind::Syntax(m) => write!(f, "column {}: {m}", self.column),
            ExprErrorKind::UnsupportedCoefficient(t) => write!(
                f,
                "column {}: unsupported coefficient `{t}` (only Gaussian rationals are allowed)",
                self.column
            ),
        }
    }
}

impl std::error::Error for ExprError {}

/// Sparse polynomial: exponent vector (one entry per symbol) → coefficient.
pub type SparseTerms = BTreeMap<Vec<u32>, GaussianRational>;

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    symbols: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> ExprError {
        ExprError {
            column: self.pos + 1,
            kind: ExprErrorKind::Syntax(msg.into()),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    /// Scans a run of identifier or number characters without interpreting it.
    fn word(&mut self) -> (usize, String) {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_alphanumeric() || *c == '_' || *c == '.')
        {
            self.pos += 1;
        }
        (start, self.chars[start..self.pos].iter().collect())
    }

    fn nat(&mut self) -> Result<BigInt, ExprError> {
        let (start, w) = self.word();
        if w.is_empty() {
            return Err(self.err("expected a natural number"));
        }
        if w.chars().all(|c| c.is_ascii_digit()) {
            return Ok(w.parse().expect("digits"));
        }
        Err(ExprError {
            column: start + 1,
            kind: if w.starts_with(|c: char| c.is_ascii_digit()) || w.contains('.') {
                ExprErrorKind::UnsupportedCoefficient(w)
            } else {
                ExprErrorKind::Syntax(format!("expected a number, found `{w}`"))
            },
        })
    }

    fn rational(&mut self) -> Result<BigRational, ExprError> {
        let negative = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let num = self.nat()?;
        let den = if self.peek() == Some('/') {
            self.pos += 1;
            let at = self.pos;
            let d = self.nat()?;
            if d.is_zero() {
                return Err(ExprError {
                    column: at + 1,
                    kind: ExprErrorKind::Syntax("zero denominator".into()),
                });
            }
            d
        } else {
            BigInt::from(1)
        };
        let r = BigRational::new(num, den);
        Ok(if negative { -r } else { r })
    }

    /// Imaginary part `['-'] nat ['/' nat] 'i'`; the `i` is glued to the
    /// last number by the word scanner.
    fn imaginary(&mut self) -> Result<BigRational, ExprError> {
        let negative = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let (s1, w1) = self.word();
        let r = if let Some(n) = w1.strip_suffix('i') {
            BigRational::from_integer(parse_digits(n, s1)?)
        } else {
            let num = parse_digits(&w1, s1)?;
            if self.peek() != Some('/') {
                return Err(self.err("expected an imaginary part ending in `i`"));
            }
            self.pos += 1;
            let (s2, w2) = self.word();
            let d = w2.strip_suffix('i').ok_or_else(|| ExprError {
                column: s2 + 1,
                kind: ExprErrorKind::Syntax("expected an imaginary part ending in `i`".into()),
            })?;
            let den = parse_digits(d, s2)?;
            if den.is_zero() {
                return Err(ExprError {
                    column: s2 + 1,
                    kind: ExprErrorKind::Syntax("zero denominator".into()),
                });
            }
            BigRational::new(num, den)
        };
        Ok(if negative { -r } else { r })
    }

    fn coeff(&mut self) -> Result<GaussianRational, ExprError> {
        if self.peek() != Some('(') {
            return Ok(GaussianRational::real(self.rational()?));
        }
        self.pos += 1;
        let re = self.rational()?;
        let negative = match self.peek() {
            Some('+') => false,
            Some('-') => true,
            _ => return Err(self.err("expected `+` or `-` in complex coefficient")),
        };
        self.pos += 1;
        let im = self.imaginary()?;
        self.expect(')')?;
        Ok(GaussianRational::new(re, if negative { -im } else { im }))
    }

    fn atom(&mut self, exps: &mut [u32]) -> Result<(), ExprError> {
        let (start, w) = self.word();
        let idx = match self.symbols.iter().position(|s| *s == w) {
            Some(i) => i,
            None if w.is_empty() => return Err(self.err("expected a variable")),
            None if w == "i" => {
                return Err(ExprError {
                    column: start + 1,
                    kind: ExprErrorKind::Syntax("write the imaginary unit as `(0+1i)`".into()),
                })
            }
            None => {
                return Err(ExprError {
                    column: start + 1,
                    kind: ExprErrorKind::UnsupportedCoefficient(w),
                })
            }
        };
        let e = if self.peek() == Some('^') {
            self.pos += 1;
            let at = self.pos;
            let n = self.nat()?;
            u32::try_from(n).map_err(|_| ExprError {
                column: at + 1,
                kind: ExprErrorKind::Syntax("exponent too large".into()),
            })?
        } else {
            1
        };
        exps[idx] += e;
        Ok(())
    }

    fn term(&mut self, leading_minus: bool) -> Result<(Vec<u32>, GaussianRational), ExprError> {
        let mut exps = vec![0u32; self.symbols.len()];
        let mut c = GaussianRational::from_integer(1);
        let starts_numeric = matches!(self.peek(), Some('(') | Some('0'..='9'))
            || (self.peek() == Some('-')
                && matches!(self.chars.get(self.pos + 1..).and_then(|r| r.iter().find(|c| !c.is_whitespace())), Some('0'..='9')));
        if starts_numeric {
            c = self.coeff()?;
        } else {
            if self.peek() == Some('-') {
                self.pos += 1;
                c = -c;
            }
            self.atom(&mut exps)?;
        }
        while self.peek() == Some('*') {
            self.pos += 1;
            self.atom(&mut exps)?;
        }
        if leading_minus {
            c = -c;
        }
        Ok((exps, c))
    }

    fn expr(&mut self) -> Result<SparseTerms, ExprError> {
        let mut out = SparseTerms::new();
        let mut negate = false;
        loop {
            let (e, c) = self.term(negate)?;
            let slot = out.entry(e).or_default();
            *slot += &c;
            match self.peek() {
                Some('+') => negate = false,
                Some('-') => negate = true,
                None => break,
                Some(ch) => return Err(self.err(format!("unexpected `{ch}`"))),
            }
            self.pos += 1;
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }
}

fn parse_digits(d: &str, start: usize) -> Result<BigInt, ExprError> {
    if !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()) {
        Ok(d.parse().expect("digits"))
    } else if d.is_empty() || !(d.contains('.') || d.starts_with(|c: char| c.is_ascii_digit())) {
        Err(ExprError {
            column: start + 1,
            kind: ExprErrorKind::Syntax(format!("expected a number, found `{d}`")),
        })
    } else {
        Err(ExprError {
            column: start + 1,
            kind: ExprErrorKind::UnsupportedCoefficient(d.into()),
        })
    }
}

/// Parses `text` as a polynomial in `symbols`.
pub fn parse_expression(text: &str, symbols: &[&str]) -> Result<SparseTerms, ExprError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        symbols,
    };
    if p.peek().is_none() {
        return Err(p.err("empty expression"));
    }
    p.expr()
}

/// Parses a univariate polynomial in `var`.
pub fn parse_polynomial(text: &str, var: &str) -> Result<Polynomial, ExprError> {
    let terms = parse_expression(text, &[var])?;
    Ok(Polynomial::from_terms(
        terms.into_iter().map(|(e, c)| (e[0] as usize, c)),
    ))
}

/// Parses a polynomial in `(first, second)`.
pub fn parse_bipolynomial(text: &str, first: &str, second: &str) -> Result<BiPolynomial, ExprError> {
    let terms = parse_expression(text, &[first, second])?;
    Ok(BiPolynomial::from_terms(
        terms
            .into_iter()
            .map(|(e, c)| ((e[0] as usize, e[1] as usize), c)),
    ))
}

/// Writes terms in the syntax accepted by [`parse_expression`], in the
/// order given.
pub fn format_terms<'a>(
    terms: impl IntoIterator<Item = (Vec<u32>, &'a GaussianRational)>,
    symbols: &[&str],
) -> String {
    let mut out = String::new();
    for (exps, c) in terms {
        let mono: Vec<String> = exps
            .iter()
            .zip(symbols)
            .filter(|(e, _)| **e > 0)
            .map(|(e, s)| if *e == 1 { s.to_string() } else { format!("{s}^{e}") })
            .collect();
        let negative = c.is_real() && c.re().is_negative();
        let c = if negative { -c } else { c.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&c.to_string());
        } else {
            if !c.is_one() {
                out.push_str(&c.to_string());
                out.push('*');
            }
            out.push_str(&mono.join("*"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn format_polynomial(p: &Polynomial, var: &str) -> String {
    format_terms(p.terms().map(|(k, c)| (vec![k as u32], c)), &[var])
}

pub fn format_bipolynomial(p: &BiPolynomial, first: &str, second: &str) -> String {
    let mut terms: Vec<_> = p.terms().map(|((i, j), c)| (vec![i as u32, j as u32], c)).collect();
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    format_terms(terms, &[first, second])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
        GaussianRational::from_parts(re, im)
    }

    #[test]
    fn parses_family_coordinates() {
        let t = parse_expression("u^6 + t*u^7 + u^9", &["u", "t"]).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[&vec![7, 1]], GaussianRational::from_integer(1));
        let t = parse_expression("t*u", &["u", "t"]).unwrap();
        assert_eq!(t[&vec![1, 1]], GaussianRational::from_integer(1));
    }

    #[test]
    fn parses_gaussian_coefficients() {
        let t = parse_expression("(1/2-3/4i)*u^2 + (0+1i)*u", &["u"]).unwrap();
        assert_eq!(t[&vec![2]], gr((1, 2), (-3, 4)));
        assert_eq!(t[&vec![1]], gr((0, 1), (1, 1)));
        let t = parse_expression("(-2+-5i)*u", &["u"]).unwrap();
        assert_eq!(t[&vec![1]], gr((-2, 1), (-5, 1)));
    }

    #[test]
    fn signs_and_cancellation() {
        let t = parse_expression("-u^2 - 3/2*u + u^2", &["u"]).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[&vec![1]], GaussianRational::from_ratio(-3, 2));
        let t = parse_expression("2*u - -3*u", &["u"]).unwrap();
        assert_eq!(t[&vec![1]], GaussianRational::from_integer(5));
    }

    #[test]
    fn constants_are_exponent_zero() {
        let t = parse_expression("1+u", &["u"]).unwrap();
        assert_eq!(t[&vec![0]], GaussianRational::from_integer(1));
    }

    #[test]
    fn rejects_non_gaussian() {
        for bad in ["1.5*u", "sqrt*u", "u + pi"] {
            let e = parse_expression(bad, &["u"]).unwrap_err();
            assert!(matches!(e.kind, ExprErrorKind::UnsupportedCoefficient(_)), "{bad}: {e}");
        }
    }

    #[test]
    fn syntax_errors_carry_columns() {
        let e = parse_expression("u^2 +", &["u"]).unwrap_err();
        assert!(matches!(e.kind, ExprErrorKind::Syntax(_)));
        let e = parse_expression("u ^ ", &["u"]).unwrap_err();
        assert_eq!(e.column, 5);
        assert!(parse_expression("1/0*u", &["u"]).is_err());
        assert!(parse_expression("i*u", &["u"]).is_err());
        assert!(parse_expression("(1+2)*u", &["u"]).is_err());
        assert!(parse_expression("", &["u"]).is_err());
    }

    #[test]
    fn format_round_trips() {
        for text in ["u^6 + 1/2*u^7 - u^9", "(0+1i)*u^3 + (0+3i)*t*u^2", "-u", "0", "-3/2*t^2*u"] {
            let p = parse_bipolynomial(text, "u", "t").unwrap();
            let back = format_bipolynomial(&p, "u", "t");
            assert_eq!(parse_bipolynomial(&back, "u", "t").unwrap(), p, "{text} -> {back}");
        }
        let p = parse_polynomial("u^2 - 2*u^3", "u").unwrap();
        assert_eq!(format_polynomial(&p, "u"), "u^2 - 2*u^3");
    }
}
