//! Text syntax for polynomials, maps and group specifications.
//!
//! ```text
//! expr  := term (("+" | "-") term)*
//! term  := unary (("*" | "/") unary)*
//! unary := ("-" | "+") unary | power
//! power := atom ("^" INT)?
//! atom  := INT ("/" INT)? | IDENT | "zeta" "(" INT ")" | "(" expr ")"
//! ```
//!
//! `i` means `zeta(4)` unless it is a declared variable. Divisors must be
//! nonzero constants.

use std::fmt;

use num_bigint::BigInt;

use crate::numberfield::{lcm_u32, CycloNumber, Rational, MAX_CONDUCTOR};
use crate::polyring::{Monomial, MultiPoly, Ring};
use crate::refgroups::{GroupKind, RefGroupError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("zeta({order}) at {pos} does not live in Q(zeta_{conductor})")]
    Conductor {
        pos: usize,
        order: u32,
        conductor: u32,
    },
    #[error("expected a pair of polynomials, found {0} component(s)")]
    Arity(usize),
    #[error(transparent)]
    Group(#[from] RefGroupError),
}

/// Parsed expression before it is placed in a ring.
#[derive(Debug, Clone, PartialEq)]
pub enum ExprAst {
    Number(Rational),
    Zeta { order: u32, pos: usize },
    Var { name: String, pos: usize },
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    /// Division by a constant; the position is that of the divisor.
    Div(Box<ExprAst>, Box<ExprAst>, usize),
    Neg(Box<ExprAst>),
    Pow(Box<ExprAst>, u32),
    Paren(Box<ExprAst>),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    vars: &'a [String],
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((Tok::Int(n), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else if "+-*/^(),".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(ParseError::Syntax {
                pos: i,
                msg: format!("unexpected character `{}`", &text[i..].chars().next().unwrap()),
            });
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn small_int(&mut self, what: &str) -> Result<u32, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => match u32::try_from(&n) {
                Ok(v) => {
                    self.bump();
                    Ok(v)
                }
                Err(_) => self.err(format!("{what} too large")),
            },
            _ => self.err(format!("expected {what}")),
        }
    }

    fn expr(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    lhs = ExprAst::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Sym('-') => {
                    self.bump();
                    lhs = ExprAst::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    lhs = ExprAst::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Sym('/') => {
                    self.bump();
                    let pos = self.pos();
                    lhs = ExprAst::Div(Box::new(lhs), Box::new(self.unary()?), pos);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<ExprAst, ParseError> {
        match self.peek() {
            Tok::Sym('-') => {
                self.bump();
                Ok(ExprAst::Neg(Box::new(self.unary()?)))
            }
            Tok::Sym('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<ExprAst, ParseError> {
        let base = self.atom()?;
        if *self.peek() == Tok::Sym('^') {
            self.bump();
            let e = self.small_int("exponent")?;
            if *self.peek() == Tok::Sym('^') {
                return self.err("chained exponents need parentheses");
            }
            return Ok(ExprAst::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ExprAst, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => {
                let next_int = matches!(self.toks.get(self.at + 1), Some((Tok::Int(_), _)));
                if *self.peek() == Tok::Sym('/') && next_int {
                    self.bump();
                    let Tok::Int(d) = self.peek().clone() else {
                        unreachable!("checked above");
                    };
                    if d == BigInt::from(0) {
                        return self.err("zero denominator");
                    }
                    self.bump();
                    return Ok(ExprAst::Number(Rational::from_bigints(n, d)));
                }
                Ok(ExprAst::Number(Rational::from_bigints(n, BigInt::from(1))))
            }
            Tok::Ident(name) => {
                if self.vars.contains(&name) {
                    return Ok(ExprAst::Var { name, pos });
                }
                if name == "zeta" {
                    self.expect('(')?;
                    let p = self.pos();
                    let order = self.small_int("root order")?;
                    if order == 0 || order > MAX_CONDUCTOR {
                        return Err(ParseError::Syntax {
                            pos: p,
                            msg: format!("unsupported root order {order}"),
                        });
                    }
                    self.expect(')')?;
                    return Ok(ExprAst::Zeta { order, pos });
                }
                if name == "i" {
                    return Ok(ExprAst::Zeta { order: 4, pos });
                }
                Err(ParseError::UnknownVariable { pos, name })
            }
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(ExprAst::Paren(Box::new(e)))
            }
            Tok::End => Err(ParseError::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
            Tok::Sym(c) => Err(ParseError::Syntax {
                pos,
                msg: format!("unexpected `{c}`"),
            }),
        }
    }
}

/// Parses `text` into an expression tree over the given variable names.
pub fn parse_expr(text: &str, vars: &[String]) -> Result<ExprAst, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        vars,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("trailing input");
    }
    Ok(e)
}

impl ExprAst {
    /// Lcm of the orders of all roots of unity in the expression.
    pub fn conductor(&self) -> u32 {
        match self {
            ExprAst::Number(_) | ExprAst::Var { .. } => 1,
            ExprAst::Zeta { order, .. } => *order,
            ExprAst::Add(a, b) | ExprAst::Sub(a, b) | ExprAst::Mul(a, b) | ExprAst::Div(a, b, _) => {
                lcm_u32(a.conductor(), b.conductor())
            }
            ExprAst::Neg(a) | ExprAst::Pow(a, _) | ExprAst::Paren(a) => a.conductor(),
        }
    }

    pub fn eval(&self, ring: &Ring) -> Result<MultiPoly, ParseError> {
        Ok(match self {
            ExprAst::Number(r) => ring.constant_rational(r.clone()),
            ExprAst::Zeta { order, pos } => {
                let n = ring.conductor();
                if n % order != 0 {
                    return Err(ParseError::Conductor {
                        pos: *pos,
                        order: *order,
                        conductor: n,
                    });
                }
                ring.constant(CycloNumber::zeta_pow(n, (n / order) as i64))
            }
            ExprAst::Var { name, pos } => ring.var_named(name).map_err(|_| ParseError::UnknownVariable {
                pos: *pos,
                name: name.clone(),
            })?,
            ExprAst::Add(a, b) => &a.eval(ring)? + &b.eval(ring)?,
            ExprAst::Sub(a, b) => &a.eval(ring)? - &b.eval(ring)?,
            ExprAst::Mul(a, b) => &a.eval(ring)? * &b.eval(ring)?,
            ExprAst::Div(a, b, pos) => {
                let d = b.eval(ring)?;
                if !d.is_constant() || d.is_zero() {
                    return Err(ParseError::Syntax {
                        pos: *pos,
                        msg: "divisor must be a nonzero constant".into(),
                    });
                }
                let inv = d.constant_coeff().inv().expect("nonzero constant");
                a.eval(ring)?.scale(&inv)
            }
            ExprAst::Neg(a) => -a.eval(ring)?,
            ExprAst::Pow(a, e) => a.eval(ring)?.pow(*e),
            ExprAst::Paren(a) => a.eval(ring)?,
        })
    }
}

/// Parses a polynomial in `ring`; roots of unity are embedded into its field.
pub fn parse_poly(text: &str, ring: &Ring) -> Result<MultiPoly, ParseError> {
    parse_expr(text, ring.vars())?.eval(ring)
}

/// Parses a polynomial over the smallest field holding its constants.
pub fn parse_poly_auto(text: &str, vars: &[&str]) -> Result<MultiPoly, ParseError> {
    let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let ast = parse_expr(text, &names)?;
    let ring = Ring::new(vars, ast.conductor()).map_err(|e| ParseError::Syntax {
        pos: 0,
        msg: e.to_string(),
    })?;
    ast.eval(&ring)
}

/// Splits `(a, b, …)` into its top-level components.
pub fn split_tuple(text: &str) -> Result<Vec<&str>, ParseError> {
    let t = text.trim();
    let start = text.len() - text.trim_start().len();
    let inner = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or(ParseError::Syntax {
            pos: start,
            msg: "expected a parenthesized tuple".into(),
        })?;
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut last = 0;
    for (k, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&inner[last..k]);
                last = k + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(ParseError::Syntax {
                pos: start + 1 + k,
                msg: "unbalanced `)`".into(),
            });
        }
    }
    parts.push(&inner[last..]);
    Ok(parts)
}

/// Parses a pair of polynomials in `vars` sharing one field.
pub fn parse_pair(text: &str, vars: &[&str]) -> Result<(MultiPoly, MultiPoly), ParseError> {
    let parts = split_tuple(text)?;
    if parts.len() != 2 || parts.iter().any(|p| p.trim().is_empty()) {
        return Err(ParseError::Arity(parts.iter().filter(|p| !p.trim().is_empty()).count()));
    }
    let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let a = parse_expr(parts[0], &names)?;
    let b = parse_expr(parts[1], &names)?;
    let ring = Ring::new(vars, lcm_u32(a.conductor(), b.conductor())).map_err(|e| ParseError::Syntax {
        pos: 0,
        msg: e.to_string(),
    })?;
    Ok((a.eval(&ring)?, b.eval(&ring)?))
}

/// Parses `(f1, f2)` in the source variables x, y.
pub fn parse_map(text: &str) -> Result<crate::maps::PolyMap, ParseError> {
    let (f1, f2) = parse_pair(text, &["x", "y"])?;
    Ok(crate::maps::PolyMap::new(f1, f2).expect("components share a ring"))
}

pub fn parse_group_spec(text: &str) -> Result<GroupKind, ParseError> {
    Ok(text.parse::<GroupKind>()?)
}

/// Canonical rendering, e.g. `x^3 + (-24*zeta(6)+12)*y^2`.
pub fn format_poly(p: &MultiPoly) -> String {
    p.to_string()
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &[String], m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, v) in vars.iter().enumerate() {
        let e = m.exp(i);
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            f.write_str(v)?;
        } else {
            write!(f, "{v}^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let vars = self.ring().vars();
        for (k, (m, c)) in self.terms().iter().enumerate() {
            match c.as_rational() {
                Some(r) => {
                    let neg = r.is_negative();
                    match (k == 0, neg) {
                        (true, true) => f.write_str("-")?,
                        (true, false) => {}
                        (false, true) => f.write_str(" - ")?,
                        (false, false) => f.write_str(" + ")?,
                    }
                    let mag = r.abs();
                    if m.is_one() {
                        write!(f, "{mag}")?;
                    } else {
                        if !mag.is_one() {
                            write!(f, "{mag}*")?;
                        }
                        write_monomial(f, vars, m)?;
                    }
                }
                None => {
                    if k > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "({c})")?;
                    if !m.is_one() {
                        f.write_str("*")?;
                        write_monomial(f, vars, m)?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy(n: u32) -> Ring {
        Ring::of(&["x", "y"], n)
    }

    #[test]
    fn precedence() {
        let r = xy(1);
        let a = parse_poly("-x^2", &r).unwrap();
        assert_eq!(a, -(&r.var(0) * &r.var(0)));
        let b = parse_poly("2*x+3*y^2-1/2", &r).unwrap();
        assert_eq!(b.to_string(), "3*y^2 + 2*x - 1/2");
        assert_eq!(parse_poly("(x+y)^2", &r).unwrap().to_string(), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn errors_carry_positions() {
        let r = xy(1);
        assert!(matches!(parse_poly("x + z", &r), Err(ParseError::UnknownVariable { pos: 4, .. })));
        assert!(matches!(parse_poly("x +", &r), Err(ParseError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_poly("x y", &r), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("x/y", &r), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("x/(1-1)", &r), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("1/0", &r), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(
            parse_poly("zeta(5)*x", &xy(24)),
            Err(ParseError::Conductor { order: 5, .. })
        ));
    }

    #[test]
    fn cyclotomic_coefficients() {
        let p = parse_poly("x^3+(-24*zeta(6)+12)*y^2", &xy(6)).unwrap();
        assert_eq!(p.to_string(), "x^3 + (-24*zeta(6)+12)*y^2");
        let q = parse_poly("i*x", &xy(4)).unwrap();
        assert_eq!(q.to_string(), "(zeta(4))*x");
        // zeta(3) embeds into conductor 24 as zeta(24)^8
        let w = parse_poly("zeta(3)", &xy(24)).unwrap();
        assert_eq!(w.constant_coeff(), CycloNumber::zeta_pow(24, 8));
        let d = parse_poly("x/2 + 1/(18*zeta(6))*y", &xy(6)).unwrap();
        let c = CycloNumber::zeta(6).scale(&Rational::from_int(18)).inv().unwrap();
        assert_eq!(d.coefficient(&Monomial::var(1, 1)), c);
        assert_eq!(d.coefficient(&Monomial::var(0, 1)), CycloNumber::from_rational(6, Rational::new(1, 2)));
    }

    #[test]
    fn zero_and_tuples() {
        assert!(parse_poly("0", &xy(1)).unwrap().is_zero());
        assert_eq!(split_tuple("(x, (y+1)^2, 3)").unwrap().len(), 3);
        assert!(matches!(parse_pair("(x)", &["x", "y"]), Err(ParseError::Arity(1))));
        let (a, b) = parse_pair("(x, zeta(6)*y)", &["x", "y"]).unwrap();
        assert_eq!(a.conductor(), 6);
        assert_eq!(b.conductor(), 6);
    }
}
