//! Index-dependent set and function templates.
//!
//! Families of sets and functions are written as interval or function
//! literals whose endpoints and coefficients are arithmetic expressions in
//! one integer variable (`k`, `l`, `n`, `i` or `j`, all synonyms):
//!
//! ```text
//! expr  := term (("+" | "-") term)*
//! term  := unary (("*" | "/") unary)*
//! unary := "-" unary | power
//! power := atom ("^" unary)?
//! atom  := number | var | "(" expr ")"
//! ```
//!
//! Exponents must evaluate to integers. A set template is a `u`-separated
//! list of `[e1,e2)`-style parts or `{e}` points, with `-inf`/`inf` allowed
//! as bounds; a function template is a `;`-separated list of
//! `part: e` or `part: slope, intercept` entries.

use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, ParseError, Result};
use crate::piecewise::{Line, PiecewiseFn};
use crate::rat::Rat;
use crate::sets::{Bound, Domain, Interval, IntervalSet, SetParser};

const VARS: [&str; 5] = ["k", "l", "n", "i", "j"];

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Expr {
    Num(Rat),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let mut p = SetParser { src, pos: 0 };
        let e = parse_expr(&mut p)?;
        p.skip_ws();
        if p.pos < src.len() {
            return Err(ParseError::new("trailing input in expression", p.pos).into());
        }
        Ok(e)
    }

    pub fn has_var(&self) -> bool {
        match self {
            Expr::Num(_) => false,
            Expr::Var => true,
            Expr::Neg(a) => a.has_var(),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b)
            | Expr::Div(a, b)
            | Expr::Pow(a, b) => a.has_var() || b.has_var(),
        }
    }

    /// Value at the variable value `n`.
    pub fn eval(&self, n: i64) -> Result<Rat> {
        Ok(match self {
            Expr::Num(r) => r.clone(),
            Expr::Var => Rat::int(n),
            Expr::Neg(a) => -a.eval(n)?,
            Expr::Add(a, b) => a.eval(n)? + b.eval(n)?,
            Expr::Sub(a, b) => a.eval(n)? - b.eval(n)?,
            Expr::Mul(a, b) => a.eval(n)? * b.eval(n)?,
            Expr::Div(a, b) => {
                let d = b.eval(n)?;
                if d.is_zero() {
                    return Err(Error::InvalidArgument(format!(
                        "division by zero in `{self}` at {n}"
                    )));
                }
                a.eval(n)? / d
            }
            Expr::Pow(a, b) => {
                let e = b.eval(n)?;
                let e = e
                    .to_integer()
                    .and_then(|i| i.to_i64())
                    .filter(|i| i.abs() <= 1 << 16)
                    .ok_or_else(|| {
                        Error::InvalidArgument(format!(
                            "exponent {e} in `{self}` is not a small integer"
                        ))
                    })?;
                let base = a.eval(n)?;
                if base.is_zero() && e < 0 {
                    return Err(Error::InvalidArgument(format!(
                        "0 to a negative power in `{self}`"
                    )));
                }
                base.powi(e)
            }
        })
    }

    /// Replaces the variable by a constant.
    pub fn substitute(&self, value: &Rat) -> Expr {
        let b = |e: &Expr| Box::new(e.substitute(value));
        match self {
            Expr::Num(r) => Expr::Num(r.clone()),
            Expr::Var => Expr::Num(value.clone()),
            Expr::Neg(a) => Expr::Neg(b(a)),
            Expr::Add(x, y) => Expr::Add(b(x), b(y)),
            Expr::Sub(x, y) => Expr::Sub(b(x), b(y)),
            Expr::Mul(x, y) => Expr::Mul(b(x), b(y)),
            Expr::Div(x, y) => Expr::Div(b(x), b(y)),
            Expr::Pow(x, y) => Expr::Pow(b(x), b(y)),
        }
    }

    /// Symbolic limit as the variable tends to `+∞`; `None` when the rules
    /// below cannot decide it (indeterminate forms, oscillation).
    pub fn limit(&self) -> Option<Bound> {
        use Bound::{Finite, NegInf, PosInf};
        match self {
            Expr::Num(r) => Some(Finite(r.clone())),
            Expr::Var => Some(PosInf),
            Expr::Neg(a) => Some(neg_bound(a.limit()?)),
            Expr::Add(a, b) => add_limits(a.limit()?, b.limit()?),
            Expr::Sub(a, b) => add_limits(a.limit()?, neg_bound(b.limit()?)),
            Expr::Mul(a, b) => mul_limits(a.limit()?, b.limit()?),
            Expr::Div(a, b) => match (a.limit()?, b.limit()?) {
                (x, Finite(d)) if !d.is_zero() => mul_limits(x, Finite(d.recip())),
                (Finite(_), NegInf | PosInf) => Some(Finite(Rat::zero())),
                _ => None,
            },
            Expr::Pow(a, b) => {
                if !b.has_var() {
                    let e = b.eval(0).ok()?.to_integer()?.to_i64()?;
                    return pow_limit(a.limit()?, e);
                }
                if a.has_var() || b.limit()? != PosInf {
                    return None;
                }
                let c = a.eval(0).ok()?;
                let one = Rat::one();
                if c.abs() < one {
                    Some(Finite(Rat::zero()))
                } else if c == one {
                    Some(Finite(one))
                } else if c > one {
                    Some(PosInf)
                } else {
                    None
                }
            }
        }
    }
}

fn neg_bound(b: Bound) -> Bound {
    match b {
        Bound::NegInf => Bound::PosInf,
        Bound::PosInf => Bound::NegInf,
        Bound::Finite(r) => Bound::Finite(-r),
    }
}

fn add_limits(a: Bound, b: Bound) -> Option<Bound> {
    use Bound::{Finite, NegInf, PosInf};
    match (a, b) {
        (Finite(x), Finite(y)) => Some(Finite(x + y)),
        (PosInf, NegInf) | (NegInf, PosInf) => None,
        (PosInf, _) | (_, PosInf) => Some(PosInf),
        (NegInf, _) | (_, NegInf) => Some(NegInf),
    }
}

fn sign_inf(positive: bool) -> Bound {
    if positive {
        Bound::PosInf
    } else {
        Bound::NegInf
    }
}

fn mul_limits(a: Bound, b: Bound) -> Option<Bound> {
    use Bound::Finite;
    match (a, b) {
        (Finite(x), Finite(y)) => Some(Finite(x * y)),
        (Finite(x), inf) | (inf, Finite(x)) => {
            if x.is_zero() {
                None
            } else {
                Some(sign_inf((inf == Bound::PosInf) == x.is_positive()))
            }
        }
        (x, y) => Some(sign_inf(x == y)),
    }
}

fn pow_limit(a: Bound, e: i64) -> Option<Bound> {
    match a {
        Bound::Finite(x) if x.is_zero() && e < 0 => None,
        Bound::Finite(x) => Some(Bound::Finite(x.powi(e))),
        _ if e == 0 => Some(Bound::Finite(Rat::one())),
        _ if e < 0 => Some(Bound::Finite(Rat::zero())),
        Bound::PosInf => Some(Bound::PosInf),
        _ => Some(sign_inf(e % 2 == 0)),
    }
}

fn parse_expr(p: &mut SetParser<'_>) -> Result<Expr, ParseError> {
    let mut lhs = parse_term(p)?;
    loop {
        if p.eat("+") {
            lhs = Expr::Add(Box::new(lhs), Box::new(parse_term(p)?));
        } else if p.eat("-") {
            lhs = Expr::Sub(Box::new(lhs), Box::new(parse_term(p)?));
        } else {
            return Ok(lhs);
        }
    }
}

fn parse_term(p: &mut SetParser<'_>) -> Result<Expr, ParseError> {
    let mut lhs = parse_unary(p)?;
    loop {
        if p.eat("*") {
            lhs = Expr::Mul(Box::new(lhs), Box::new(parse_unary(p)?));
        } else if p.eat("/") {
            lhs = Expr::Div(Box::new(lhs), Box::new(parse_unary(p)?));
        } else {
            return Ok(lhs);
        }
    }
}

fn parse_unary(p: &mut SetParser<'_>) -> Result<Expr, ParseError> {
    if p.eat("-") {
        return Ok(Expr::Neg(Box::new(parse_unary(p)?)));
    }
    let base = parse_atom(p)?;
    if p.eat("^") {
        return Ok(Expr::Pow(Box::new(base), Box::new(parse_unary(p)?)));
    }
    Ok(base)
}

fn parse_atom(p: &mut SetParser<'_>) -> Result<Expr, ParseError> {
    p.skip_ws();
    let start = p.pos;
    if p.eat("(") {
        let e = parse_expr(p)?;
        if !p.eat(")") {
            return Err(ParseError::new("expected `)`", p.pos));
        }
        return Ok(e);
    }
    for v in VARS {
        let rest = p.rest();
        if rest.starts_with(v) && !rest[v.len()..].starts_with(|c: char| c.is_alphanumeric()) {
            p.pos += v.len();
            return Ok(Expr::Var);
        }
    }
    let len = p
        .rest()
        .find(|c: char| !(c.is_ascii_digit() || c == '.'))
        .unwrap_or(p.rest().len());
    if len == 0 {
        return Err(ParseError::new("expected a number, variable or `(`", start));
    }
    let lit = &p.src[start..start + len];
    p.pos += len;
    lit.parse::<Rat>()
        .map(Expr::Num)
        .map_err(|e| ParseError::new(e.message, start))
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(_) => 3,
        Expr::Pow(..) => 4,
        Expr::Num(r) if !r.is_integer() || r.is_negative() => 2,
        _ => 5,
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, e: &Expr, min: u8| {
            if prec(e) < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Expr::Num(r) => write!(f, "{r}"),
            Expr::Var => f.write_str("k"),
            Expr::Neg(a) => {
                f.write_str("-")?;
                wrap(f, a, 4)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                wrap(f, a, 1)?;
                f.write_str(if matches!(self, Expr::Add(..)) {
                    " + "
                } else {
                    " - "
                })?;
                wrap(f, b, 2)
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                wrap(f, a, 2)?;
                f.write_str(if matches!(self, Expr::Mul(..)) {
                    "*"
                } else {
                    "/"
                })?;
                wrap(f, b, 3)
            }
            Expr::Pow(a, b) => {
                wrap(f, a, 5)?;
                f.write_str("^")?;
                wrap(f, b, 4)
            }
        }
    }
}

/// An endpoint of a part template.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EndExpr {
    NegInf,
    PosInf,
    Expr(Expr),
}

impl EndExpr {
    pub fn eval(&self, n: i64) -> Result<Bound> {
        Ok(match self {
            EndExpr::NegInf => Bound::NegInf,
            EndExpr::PosInf => Bound::PosInf,
            EndExpr::Expr(e) => Bound::Finite(e.eval(n)?),
        })
    }

    pub fn limit(&self) -> Option<Bound> {
        match self {
            EndExpr::NegInf => Some(Bound::NegInf),
            EndExpr::PosInf => Some(Bound::PosInf),
            EndExpr::Expr(e) => e.limit(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartTemplate {
    pub lo: EndExpr,
    pub hi: EndExpr,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl PartTemplate {
    pub fn eval(&self, n: i64) -> Result<Option<Interval>> {
        let lo = self.lo.eval(n)?;
        let hi = self.hi.eval(n)?;
        if lo > hi {
            return Ok(None);
        }
        Ok(Interval::new(lo, hi, self.lo_closed, self.hi_closed))
    }
}

fn parse_end(p: &mut SetParser<'_>) -> Result<EndExpr, ParseError> {
    if p.eat("-inf") {
        Ok(EndExpr::NegInf)
    } else if p.eat("+inf") || p.eat("inf") {
        Ok(EndExpr::PosInf)
    } else {
        parse_expr(p).map(EndExpr::Expr)
    }
}

fn parse_part_template(p: &mut SetParser<'_>) -> Result<PartTemplate, ParseError> {
    p.skip_ws();
    if p.eat("{") {
        let e = parse_expr(p)?;
        if !p.eat("}") {
            return Err(ParseError::new("expected `}`", p.pos));
        }
        return Ok(PartTemplate {
            lo: EndExpr::Expr(e.clone()),
            hi: EndExpr::Expr(e),
            lo_closed: true,
            hi_closed: true,
        });
    }
    let lo_closed = if p.eat("[") {
        true
    } else if p.eat("(") {
        false
    } else {
        return Err(ParseError::new("expected `[`, `(` or `{`", p.pos));
    };
    let lo = parse_end(p)?;
    if !p.eat(",") {
        return Err(ParseError::new("expected `,`", p.pos));
    }
    let hi = parse_end(p)?;
    let hi_closed = if p.eat("]") {
        true
    } else if p.eat(")") {
        false
    } else {
        return Err(ParseError::new("expected `]` or `)`", p.pos));
    };
    Ok(PartTemplate {
        lo,
        hi,
        lo_closed,
        hi_closed,
    })
}

/// `n ↦ IntervalSet` given by a template such as `[1/2^(k+1), 1/2^k)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SetFormula {
    src: String,
    parts: Vec<PartTemplate>,
}

impl SetFormula {
    pub fn parse(src: &str) -> Result<SetFormula> {
        let mut p = SetParser { src, pos: 0 };
        p.skip_ws();
        let mut parts = Vec::new();
        if !p.eat("empty") {
            loop {
                parts.push(parse_part_template(&mut p)?);
                p.skip_ws();
                if p.pos == src.len() {
                    break;
                }
                if !(p.eat("u") || p.eat("U") || p.eat("∪")) {
                    return Err(ParseError::new("expected `u` between parts", p.pos).into());
                }
            }
        }
        p.skip_ws();
        if p.pos < src.len() {
            return Err(ParseError::new("trailing input", p.pos).into());
        }
        Ok(SetFormula {
            src: src.trim().to_string(),
            parts,
        })
    }

    pub fn parts(&self) -> &[PartTemplate] {
        &self.parts
    }

    pub fn eval(&self, n: i64) -> Result<IntervalSet> {
        let mut out = Vec::with_capacity(self.parts.len());
        for t in &self.parts {
            out.extend(t.eval(n)?);
        }
        Ok(IntervalSet::from_parts(out))
    }
}

impl fmt::Display for SetFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.src)
    }
}

impl std::str::FromStr for SetFormula {
    type Err = Error;
    fn from_str(s: &str) -> Result<SetFormula> {
        SetFormula::parse(s)
    }
}

impl Serialize for SetFormula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.src)
    }
}

impl<'de> Deserialize<'de> for SetFormula {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<SetFormula, D::Error> {
        let s = String::deserialize(d)?;
        SetFormula::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
struct FnEntry {
    part: PartTemplate,
    slope: Expr,
    intercept: Expr,
}

/// `n ↦ PiecewiseFn` given by a template such as `(0,1/k]: 1; (1/k,2/k): -k, 2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FnFormula {
    src: String,
    entries: Vec<FnEntry>,
}

impl FnFormula {
    pub fn parse(src: &str) -> Result<FnFormula> {
        let mut p = SetParser { src, pos: 0 };
        p.skip_ws();
        let mut entries = Vec::new();
        if !p.eat("zero") {
            loop {
                let part = parse_part_template(&mut p)?;
                if !p.eat(":") {
                    return Err(ParseError::new("expected `:` after part", p.pos).into());
                }
                let a = parse_expr(&mut p)?;
                let (slope, intercept) = if p.eat(",") {
                    (a, parse_expr(&mut p)?)
                } else {
                    (Expr::Num(Rat::zero()), a)
                };
                entries.push(FnEntry {
                    part,
                    slope,
                    intercept,
                });
                p.skip_ws();
                if p.pos == src.len() {
                    break;
                }
                if !p.eat(";") {
                    return Err(ParseError::new("expected `;` between pieces", p.pos).into());
                }
            }
        }
        p.skip_ws();
        if p.pos < src.len() {
            return Err(ParseError::new("trailing input", p.pos).into());
        }
        Ok(FnFormula {
            src: src.trim().to_string(),
            entries,
        })
    }

    /// The `n`-th function; parts are clipped to the domain carrier.
    pub fn eval(&self, domain: &Domain, n: i64) -> Result<PiecewiseFn> {
        let mut pieces = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            if let Some(iv) = e.part.eval(n)? {
                let line = Line::new(e.slope.eval(n)?, e.intercept.eval(n)?);
                let clipped = IntervalSet::from(iv).intersect(domain.carrier());
                pieces.extend(clipped.parts().iter().map(|p| (p.clone(), line.clone())));
            }
        }
        PiecewiseFn::new(domain.clone(), pieces)
    }
}

impl fmt::Display for FnFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.src)
    }
}

impl Serialize for FnFormula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.src)
    }
}

impl<'de> Deserialize<'de> for FnFormula {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<FnFormula, D::Error> {
        let s = String::deserialize(d)?;
        FnFormula::parse(&s).map_err(serde::de::Error::custom)
    }
}
