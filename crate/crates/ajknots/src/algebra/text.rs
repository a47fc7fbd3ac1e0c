//! Text rendering and parsing in the shared polynomial grammar.
//!
//! Polynomials print as sums of terms `coeff*t^a*M^b*L^c`, for example
//! `3*t^-2*M^4*L^2 - 1`. The parser accepts that grammar and, more
//! generally, expressions built from integers, the variables `t`, `M`,
//! `L`, the operators `+ - * /`, integer powers `^k` and parentheses.
//! Rational functions print as `(numerator)/(denominator)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::laurent::{BivariateLaurent, UnivariateLaurent};
use super::ratfunc::RationalFunction;
use super::zpoly::ZPoly;
use crate::error::{Error, Result};

/// Parsed expression tree.
#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Expr {
    Num(BigInt),
    Var(char),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(char),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            out.push(Tok::Int(lit.parse().map_err(|_| Error::Parse(lit.clone()))?));
        } else if matches!(c, 't' | 'M' | 'L') {
            out.push(Tok::Var(c));
            i += 1;
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character '{c}' at {i}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = if self.eat('-') {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        let paren = self.eat('(');
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let v = match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                i64::try_from(v).map_err(|_| Error::Parse("exponent too large".into()))?
            }
            other => return Err(Error::Parse(format!("expected exponent, found {other:?}"))),
        };
        if paren && !self.eat(')') {
            return Err(Error::Parse("expected ')' after exponent".into()));
        }
        Ok(if neg { -v } else { v })
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Expr::Num(v)
            }
            Some(Tok::Var(c)) => {
                self.pos += 1;
                Expr::Var(c)
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("unbalanced parenthesis".into()));
                }
                e
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Expr::Neg(Box::new(self.factor()?))
            }
            other => return Err(Error::Parse(format!("unexpected token {other:?}"))),
        };
        if self.eat('^') {
            let k = self.exponent()?;
            Ok(Expr::Pow(Box::new(base), k))
        } else {
            Ok(base)
        }
    }
}

/// Parses an expression in the shared grammar.
pub(crate) fn parse_expr(s: &str) -> Result<Expr> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(e)
}

pub(crate) fn eval_rational(e: &Expr) -> Result<RationalFunction> {
    Ok(match e {
        Expr::Num(v) => RationalFunction::constant(BigRational::from_integer(v.clone())),
        Expr::Var('t') => RationalFunction::t(),
        Expr::Var('M') => RationalFunction::m(),
        Expr::Var(c) => return Err(Error::Parse(format!("variable {c} not allowed here"))),
        Expr::Add(a, b) => eval_rational(a)? + eval_rational(b)?,
        Expr::Sub(a, b) => eval_rational(a)? - eval_rational(b)?,
        Expr::Mul(a, b) => eval_rational(a)? * eval_rational(b)?,
        Expr::Div(a, b) => {
            eval_rational(a)?.div(&eval_rational(b)?).map_err(|_| Error::Parse("division by zero".into()))?
        }
        Expr::Neg(a) => -eval_rational(a)?,
        Expr::Pow(a, k) => {
            let base = eval_rational(a)?;
            let k = i32::try_from(*k).map_err(|_| Error::Parse("exponent too large".into()))?;
            base.pow(k).map_err(|_| Error::Parse("zero to a negative power".into()))?
        }
    })
}

/// Parses a rational function of `t` and `M`.
pub fn parse_rational(s: &str) -> Result<RationalFunction> {
    eval_rational(&parse_expr(s)?)
}

/// Parses a Laurent polynomial in `t` and `M`.
pub fn parse_bivariate(s: &str) -> Result<BivariateLaurent> {
    let r = parse_rational(s)?;
    if !r.is_laurent() {
        return Err(Error::Parse(format!("not a Laurent polynomial: {s}")));
    }
    Ok(r.numerator())
}

/// Parses a Laurent polynomial in `t` alone.
pub fn parse_univariate(s: &str) -> Result<UnivariateLaurent> {
    let b = parse_bivariate(s)?;
    if b.numer_poly().terms().iter().any(|(e, _)| e.1 != 0) {
        return Err(Error::Parse(format!("M occurs in a univariate polynomial: {s}")));
    }
    Ok(UnivariateLaurent::from_zpoly_over(b.numer_poly().clone(), b.denom_int().clone()))
}

fn power(var: &str, e: i64) -> Option<String> {
    match e {
        0 => None,
        1 => Some(var.to_string()),
        _ => Some(format!("{var}^{e}")),
    }
}

/// Renders one term with its sign handled by the caller.
fn format_term(c: &BigRational, factors: &[(&str, i64)]) -> String {
    let vars: Vec<String> = factors.iter().filter_map(|(v, e)| power(v, *e)).collect();
    let a = c.abs();
    if vars.is_empty() {
        return a.to_string();
    }
    let body = vars.join("*");
    if a.is_one() {
        body
    } else {
        format!("{a}*{body}")
    }
}

/// Joins signed terms as `a + b - c`.
pub(crate) fn join_terms(terms: impl IntoIterator<Item = (bool, String)>) -> String {
    let mut s = String::new();
    for (i, (neg, body)) in terms.into_iter().enumerate() {
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        s.push_str(&body);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Renders a polynomial in `t` and `M`, by decreasing `M`-exponent and
/// then decreasing `t`-exponent.
pub fn format_bivariate(p: &BivariateLaurent) -> String {
    let mut terms = p.terms();
    terms.sort_by(|x, y| (y.0 .1, y.0 .0).cmp(&(x.0 .1, x.0 .0)));
    join_terms(terms.iter().map(|((a, b), c)| (c.is_negative(), format_term(c, &[("t", *a), ("M", *b)]))))
}

/// Renders an integer polynomial in `M` and `L` stored with the
/// `L`-exponent in the first slot and the `M`-exponent in the second.
pub fn format_ml(p: &ZPoly) -> String {
    join_terms(p.terms().iter().rev().map(|((l, m), c)| {
        let q = BigRational::from_integer(c.clone());
        (c.is_negative(), format_term(&q, &[("M", *m), ("L", *l)]))
    }))
}

/// Renders a rational function as `(N)/(D)`, or as a polynomial when the
/// denominator is one.
pub fn format_rational(x: &RationalFunction) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let n = format_bivariate(&x.numerator());
    let (_, _, _, den) = x.parts();
    if den.is_one() {
        n
    } else {
        let d = format_bivariate(&BivariateLaurent::from_zpoly(den.clone()));
        format!("({n})/({d})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_example_round_trips() {
        let s = "3*t^-2*M^4 - 1";
        let p = parse_bivariate(s).unwrap();
        assert_eq!(format_bivariate(&p), "3*t^-2*M^4 - 1");
        assert_eq!(parse_bivariate(&format_bivariate(&p)).unwrap(), p);
    }

    #[test]
    fn rational_coefficients_print_and_parse() {
        let p = parse_bivariate("3/2*t - M/4").unwrap();
        assert_eq!(parse_bivariate(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn fraction_round_trip() {
        let x = parse_rational("(M^2*t^2 - M^-2*t^-2)/(t^2 - t^-2)").unwrap();
        assert_eq!(parse_rational(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn errors_are_reported() {
        assert!(parse_rational("t +").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("L").is_err());
        assert!(parse_bivariate("1/(t+1)").is_err());
        assert!(parse_rational("1/(t-t)").is_err());
    }
}
