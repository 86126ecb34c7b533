//! Finite unions of rational-endpoint intervals and their Lebesgue measure.
//!
//! Every set the engines manipulate (superlevel sets, supports, filter
//! bases, neighbourhoods) is an [`IntervalSet`]. Endpoint flags are kept
//! exactly so that open, closed and compact sets can be told apart, even
//! though Lebesgue measure ignores them.
//!
//! # Literal syntax
//!
//! ```text
//! set      := "empty" | part ( UNION part )*
//! UNION    := "u" | "U" | "∪"
//! part     := ( "[" | "(" ) bound "," bound ( "]" | ")" )
//!           | "{" rational "}"
//! bound    := rational | "-inf" | "inf" | "+inf"
//! rational := ["-"|"+"] digits [ "/" digits | "." digits ]
//! ```
//!
//! Infinite bounds must sit next to a round bracket. Whitespace is free.
//! `Display` prints the same syntax, so printed sets parse back unchanged.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, ParseError, Result};
use crate::rat::Rat;

/// An interval endpoint on the extended real line.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Bound {
    NegInf,
    Finite(Rat),
    PosInf,
}

impl Bound {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Bound::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Bound::Finite(_))
    }

    pub(crate) fn shifted(&self, t: &Rat) -> Bound {
        match self {
            Bound::Finite(r) => Bound::Finite(r + t),
            other => other.clone(),
        }
    }
}

impl From<Rat> for Bound {
    fn from(r: Rat) -> Bound {
        Bound::Finite(r)
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => f.write_str("-inf"),
            Bound::PosInf => f.write_str("inf"),
            Bound::Finite(r) => write!(f, "{r}"),
        }
    }
}

/// Lebesgue measure of a set: a rational or `+∞`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Measure {
    Finite(Rat),
    Infinite,
}

impl Measure {
    pub fn zero() -> Measure {
        Measure::Finite(Rat::zero())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Measure::Finite(r) if r.is_zero())
    }

    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Measure::Finite(r) => Some(r),
            Measure::Infinite => None,
        }
    }
}

impl std::ops::Add for Measure {
    type Output = Measure;
    fn add(self, rhs: Measure) -> Measure {
        match (self, rhs) {
            (Measure::Finite(a), Measure::Finite(b)) => Measure::Finite(a + b),
            _ => Measure::Infinite,
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measure::Finite(r) => write!(f, "{r}"),
            Measure::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Measure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A non-empty interval. Infinite endpoints are always open.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Interval {
    lo: Bound,
    hi: Bound,
    lo_closed: bool,
    hi_closed: bool,
}

impl Interval {
    /// Builds an interval, returning `None` when it would be empty.
    pub fn new(lo: Bound, hi: Bound, lo_closed: bool, hi_closed: bool) -> Option<Interval> {
        let lo_closed = lo_closed && lo.is_finite();
        let hi_closed = hi_closed && hi.is_finite();
        if lo == Bound::PosInf || hi == Bound::NegInf {
            return None;
        }
        match lo.cmp(&hi) {
            Ordering::Greater => None,
            Ordering::Equal if !(lo_closed && hi_closed) => None,
            _ => Some(Interval {
                lo,
                hi,
                lo_closed,
                hi_closed,
            }),
        }
    }

    pub fn closed(a: Rat, b: Rat) -> Option<Interval> {
        Interval::new(a.into(), b.into(), true, true)
    }

    pub fn open(a: Rat, b: Rat) -> Option<Interval> {
        Interval::new(a.into(), b.into(), false, false)
    }

    pub fn closed_open(a: Rat, b: Rat) -> Option<Interval> {
        Interval::new(a.into(), b.into(), true, false)
    }

    pub fn open_closed(a: Rat, b: Rat) -> Option<Interval> {
        Interval::new(a.into(), b.into(), false, true)
    }

    pub fn point(p: Rat) -> Interval {
        Interval::new(p.clone().into(), p.into(), true, true).expect("point interval")
    }

    pub fn real_line() -> Interval {
        Interval::new(Bound::NegInf, Bound::PosInf, false, false).expect("real line")
    }

    pub fn lo(&self) -> &Bound {
        &self.lo
    }

    pub fn hi(&self) -> &Bound {
        &self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn length(&self) -> Measure {
        match (&self.lo, &self.hi) {
            (Bound::Finite(a), Bound::Finite(b)) => Measure::Finite(b - a),
            _ => Measure::Infinite,
        }
    }

    pub fn contains(&self, x: &Rat) -> bool {
        let above = match &self.lo {
            Bound::NegInf => true,
            Bound::Finite(a) => {
                if self.lo_closed {
                    x >= a
                } else {
                    x > a
                }
            }
            Bound::PosInf => false,
        };
        let below = match &self.hi {
            Bound::PosInf => true,
            Bound::Finite(b) => {
                if self.hi_closed {
                    x <= b
                } else {
                    x < b
                }
            }
            Bound::NegInf => false,
        };
        above && below
    }

    /// Sort key of the left end: a closed end starts before an open one.
    pub(crate) fn start_key(&self) -> (&Bound, bool) {
        (&self.lo, !self.lo_closed)
    }

    /// Sort key of the right end: an open end stops before a closed one.
    pub(crate) fn end_key(&self) -> (&Bound, bool) {
        (&self.hi, self.hi_closed)
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_closed) = if self.start_key() >= other.start_key() {
            (&self.lo, self.lo_closed)
        } else {
            (&other.lo, other.lo_closed)
        };
        let (hi, hi_closed) = if self.end_key() <= other.end_key() {
            (&self.hi, self.hi_closed)
        } else {
            (&other.hi, other.hi_closed)
        };
        Interval::new(lo.clone(), hi.clone(), lo_closed, hi_closed)
    }

    /// True when `self ∪ next` is a single interval; assumes `self` starts first.
    pub(crate) fn touches(&self, next: &Interval) -> bool {
        match self.hi.cmp(&next.lo) {
            Ordering::Greater => true,
            Ordering::Equal => self.hi_closed || next.lo_closed,
            Ordering::Less => false,
        }
    }

    /// A rational point of the interval, interior when the interval is proper.
    pub fn sample_point(&self) -> Rat {
        match (&self.lo, &self.hi) {
            (Bound::Finite(a), Bound::Finite(b)) => a.mid(b),
            (Bound::Finite(a), _) => a + &Rat::one(),
            (_, Bound::Finite(b)) => b - &Rat::one(),
            _ => Rat::zero(),
        }
    }

    pub fn translate(&self, t: &Rat) -> Interval {
        Interval {
            lo: self.lo.shifted(t),
            hi: self.hi.shifted(t),
            lo_closed: self.lo_closed,
            hi_closed: self.hi_closed,
        }
    }

    pub fn interior(&self) -> Option<Interval> {
        Interval::new(self.lo.clone(), self.hi.clone(), false, false)
    }

    pub fn closure(&self) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone(), true, true).expect("closure of non-empty")
    }

    /// Same endpoints with new flags (the result may be empty).
    pub fn with_flags(&self, lo_closed: bool, hi_closed: bool) -> Option<Interval> {
        Interval::new(self.lo.clone(), self.hi.clone(), lo_closed, hi_closed)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_degenerate() {
            return write!(f, "{{{}}}", self.lo);
        }
        write!(
            f,
            "{}{},{}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// A finite union of pairwise disjoint, non-adjacent intervals sorted left to right.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntervalSet {
    parts: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> IntervalSet {
        IntervalSet { parts: Vec::new() }
    }

    pub fn real_line() -> IntervalSet {
        IntervalSet::from(Interval::real_line())
    }

    /// Normalizes an arbitrary collection of intervals.
    pub fn from_parts(parts: impl IntoIterator<Item = Interval>) -> IntervalSet {
        let mut parts: Vec<Interval> = parts.into_iter().collect();
        parts.sort_by(|a, b| a.start_key().cmp(&b.start_key()));
        let mut out: Vec<Interval> = Vec::with_capacity(parts.len());
        for p in parts {
            match out.last_mut() {
                Some(last) if last.touches(&p) => {
                    if p.end_key() > last.end_key() {
                        last.hi = p.hi;
                        last.hi_closed = p.hi_closed;
                    }
                }
                _ => out.push(p),
            }
        }
        IntervalSet { parts: out }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.parts.iter().any(|p| p.contains(x))
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        IntervalSet::from_parts(self.parts.iter().chain(other.parts.iter()).cloned())
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            let (a, b) = (&self.parts[i], &other.parts[j]);
            if let Some(c) = a.intersect(b) {
                out.push(c);
            }
            if a.end_key() <= b.end_key() {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalSet::from_parts(out)
    }

    /// Complement in the real line.
    pub fn complement_in_reals(&self) -> IntervalSet {
        let mut out = Vec::new();
        let mut lo = Bound::NegInf;
        let mut lo_closed = false;
        for p in &self.parts {
            if let Some(gap) = Interval::new(lo, p.lo.clone(), lo_closed, !p.lo_closed) {
                out.push(gap);
            }
            lo = p.hi.clone();
            lo_closed = !p.hi_closed;
        }
        if let Some(gap) = Interval::new(lo, Bound::PosInf, lo_closed, false) {
            out.push(gap);
        }
        IntervalSet::from_parts(out)
    }

    pub fn difference(&self, other: &IntervalSet) -> IntervalSet {
        self.intersect(&other.complement_in_reals())
    }

    /// Complement relative to the domain; `self` must lie inside its carrier.
    pub fn complement(&self, within: &Domain) -> Result<IntervalSet> {
        if !self.is_subset(within.carrier()) {
            return Err(Error::NotInDomain(self.to_string()));
        }
        Ok(within.carrier().difference(self))
    }

    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        self.difference(other).is_empty()
    }

    /// `self ⊆ other` up to a Lebesgue-null set.
    pub fn is_subset_ae(&self, other: &IntervalSet) -> bool {
        self.difference(other).is_null()
    }

    pub fn measure(&self) -> Measure {
        self.parts
            .iter()
            .fold(Measure::zero(), |acc, p| acc + p.length())
    }

    pub fn is_null(&self) -> bool {
        self.measure().is_zero()
    }

    pub fn is_bounded(&self) -> bool {
        self.parts.iter().all(Interval::is_bounded)
    }

    /// Bounded with every endpoint closed.
    pub fn is_compact(&self) -> bool {
        self.parts
            .iter()
            .all(|p| p.is_bounded() && p.lo_closed && p.hi_closed)
    }

    pub fn interior(&self) -> IntervalSet {
        IntervalSet::from_parts(self.parts.iter().filter_map(Interval::interior))
    }

    pub fn closure(&self) -> IntervalSet {
        IntervalSet::from_parts(self.parts.iter().map(Interval::closure))
    }

    /// Open in the real line: every finite endpoint open.
    pub fn is_open(&self) -> bool {
        self.parts.iter().all(|p| !p.lo_closed && !p.hi_closed)
    }

    pub fn translate(&self, t: &Rat) -> IntervalSet {
        IntervalSet {
            parts: self.parts.iter().map(|p| p.translate(t)).collect(),
        }
    }

    /// Greatest lower bound of the set, `None` if empty.
    pub fn inf(&self) -> Option<&Bound> {
        self.parts.first().map(|p| &p.lo)
    }

    /// Least upper bound of the set, `None` if empty.
    pub fn sup(&self) -> Option<&Bound> {
        self.parts.last().map(|p| &p.hi)
    }

    /// All finite endpoints in increasing order.
    pub fn endpoints(&self) -> Vec<Rat> {
        let mut v: Vec<Rat> = self
            .parts
            .iter()
            .flat_map(|p| [p.lo.finite().cloned(), p.hi.finite().cloned()])
            .flatten()
            .collect();
        v.dedup();
        v
    }

    /// Replaces every closed finite endpoint by an open one `eps` further
    /// out; degenerate points become balls of radius `eps`. The result is
    /// open and contains `self`.
    pub fn open_thickening(&self, eps: &Rat) -> IntervalSet {
        IntervalSet::from_parts(self.parts.iter().filter_map(|p| {
            let lo = if p.lo_closed {
                p.lo.shifted(&-eps)
            } else {
                p.lo.clone()
            };
            let hi = if p.hi_closed {
                p.hi.shifted(eps)
            } else {
                p.hi.clone()
            };
            Interval::new(lo, hi, false, false)
        }))
    }

    /// Replaces every open endpoint by a closed one `eps` further in and
    /// truncates unbounded parts to `[-cap, cap]`. The result is compact
    /// and contained in `self`.
    pub fn compact_shrink(&self, eps: &Rat, cap: &Rat) -> IntervalSet {
        IntervalSet::from_parts(self.parts.iter().filter_map(|p| {
            let lo = match &p.lo {
                Bound::NegInf => Bound::Finite(-cap),
                Bound::Finite(a) if !p.lo_closed => Bound::Finite(a + eps),
                b => b.clone(),
            };
            let hi = match &p.hi {
                Bound::PosInf => Bound::Finite(cap.clone()),
                Bound::Finite(b) if !p.hi_closed => Bound::Finite(b - eps),
                b => b.clone(),
            };
            Interval::new(lo, hi, true, true)
        }))
    }
}

impl From<Interval> for IntervalSet {
    fn from(i: Interval) -> IntervalSet {
        IntervalSet { parts: vec![i] }
    }
}

impl From<Option<Interval>> for IntervalSet {
    fn from(i: Option<Interval>) -> IntervalSet {
        IntervalSet {
            parts: i.into_iter().collect(),
        }
    }
}

impl FromIterator<Interval> for IntervalSet {
    fn from_iter<T: IntoIterator<Item = Interval>>(iter: T) -> IntervalSet {
        IntervalSet::from_parts(iter)
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("empty");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" u ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for IntervalSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for IntervalSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<IntervalSet, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for IntervalSet {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<IntervalSet, ParseError> {
        SetParser { src: s, pos: 0 }.parse_set()
    }
}

impl FromStr for Interval {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Interval, ParseError> {
        let mut p = SetParser { src: s, pos: 0 };
        let i = p.parse_part()?;
        p.skip_ws();
        if p.pos < s.len() {
            return Err(ParseError::new("trailing input after interval", p.pos));
        }
        i.ok_or_else(|| ParseError::new("empty interval literal", 0))
    }
}

pub(crate) struct SetParser<'a> {
    pub(crate) src: &'a str,
    pub(crate) pos: usize,
}

impl SetParser<'_> {
    pub(crate) fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    pub(crate) fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    pub(crate) fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn parse_set(&mut self) -> std::result::Result<IntervalSet, ParseError> {
        self.skip_ws();
        if self.eat("empty") || self.eat("∅") {
            self.skip_ws();
            if self.pos < self.src.len() {
                return Err(ParseError::new("trailing input after `empty`", self.pos));
            }
            return Ok(IntervalSet::empty());
        }
        let mut parts = Vec::new();
        loop {
            if let Some(p) = self.parse_part()? {
                parts.push(p);
            }
            self.skip_ws();
            if self.pos == self.src.len() {
                break;
            }
            if !(self.eat("u") || self.eat("U") || self.eat("∪")) {
                return Err(ParseError::new("expected `u` between intervals", self.pos));
            }
        }
        Ok(IntervalSet::from_parts(parts))
    }

    /// One bracketed interval; `Ok(None)` for a well-formed empty interval such as `(1,1)`.
    pub(crate) fn parse_part(&mut self) -> std::result::Result<Option<Interval>, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("{") {
            let p = self.parse_bound()?;
            let Bound::Finite(p) = p else {
                return Err(ParseError::new("a point must be finite", start));
            };
            if !self.eat("}") {
                return Err(ParseError::new("expected `}`", self.pos));
            }
            return Ok(Some(Interval::point(p)));
        }
        let lo_closed = if self.eat("[") {
            true
        } else if self.eat("(") {
            false
        } else {
            return Err(ParseError::new("expected `[`, `(` or `{`", self.pos));
        };
        let lo = self.parse_bound()?;
        if !self.eat(",") {
            return Err(ParseError::new("expected `,`", self.pos));
        }
        let hi = self.parse_bound()?;
        let hi_closed = if self.eat("]") {
            true
        } else if self.eat(")") {
            false
        } else {
            return Err(ParseError::new("expected `]` or `)`", self.pos));
        };
        if (lo_closed && !lo.is_finite()) || (hi_closed && !hi.is_finite()) {
            return Err(ParseError::new(
                "infinite bound needs a round bracket",
                start,
            ));
        }
        if lo > hi {
            return Err(ParseError::new("lower bound exceeds upper bound", start));
        }
        Ok(Interval::new(lo, hi, lo_closed, hi_closed))
    }

    pub(crate) fn parse_bound(&mut self) -> std::result::Result<Bound, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("-inf") {
            return Ok(Bound::NegInf);
        }
        if self.eat("+inf") || self.eat("inf") {
            return Ok(Bound::PosInf);
        }
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_digit() || matches!(c, '-' | '+' | '/' | '.')))
            .unwrap_or(self.rest().len());
        if len == 0 {
            return Err(ParseError::new("expected a number", start));
        }
        let lit = &self.src[start..start + len];
        self.pos += len;
        lit.parse::<Rat>()
            .map(Bound::Finite)
            .map_err(|e| ParseError::new(e.message, start))
    }
}

/// The underlying space `X`: a non-empty interval set with Lebesgue measure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Domain {
    carrier: IntervalSet,
}

impl Domain {
    pub fn new(carrier: IntervalSet) -> Result<Domain> {
        if carrier.is_empty() {
            return Err(Error::InvalidArgument(
                "domain carrier must be non-empty".into(),
            ));
        }
        Ok(Domain { carrier })
    }

    pub fn real_line() -> Domain {
        Domain {
            carrier: IntervalSet::real_line(),
        }
    }

    /// Domain given by an interval-set literal.
    pub fn parse(s: &str) -> Result<Domain> {
        Domain::new(s.parse()?)
    }

    pub fn carrier(&self) -> &IntervalSet {
        &self.carrier
    }

    pub fn measure(&self) -> Measure {
        self.carrier.measure()
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.carrier.contains(x)
    }

    pub fn is_compact(&self) -> bool {
        self.carrier.is_compact()
    }

    /// The `m`-th set of an increasing compact exhaustion of `X`: open ends
    /// pulled in by `1/m`, infinite ends cut at `±m`, closed ends kept.
    /// Every compact subset of `X` lies in some member.
    pub fn compact_exhaustion(&self, m: u64) -> IntervalSet {
        let eps = Rat::new(1, m.max(1));
        self.carrier.compact_shrink(&eps, &Rat::int(m.max(1)))
    }

    /// `k` is compact and contained in `X` (compact as a subspace of `X`).
    pub fn is_compact_in(&self, k: &IntervalSet) -> bool {
        k.is_compact() && k.is_subset(&self.carrier)
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.carrier)
    }
}

impl Serialize for Domain {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// True iff `k` is compact and lies in the interior of `g`.
pub fn is_compact_subset(k: &IntervalSet, g: &IntervalSet) -> bool {
    k.is_compact() && k.is_subset(&g.interior())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    fn s(lit: &str) -> IntervalSet {
        lit.parse().unwrap()
    }

    #[test]
    fn adjacent_merge() {
        assert_eq!(s("[0,1) u [1,2)"), s("[0,2)"));
        // open-open at the same point leaves the point out
        assert_eq!(s("(0,1) u (1,2)").parts().len(), 2);
    }

    #[test]
    fn union_examples() {
        assert_eq!(IntervalSet::empty().union(&s("[0,1]")), s("[0,1]"));
        assert_eq!(
            s("[0,1/4) u [1/2,3/4)").union(&s("[1/8,5/8)")),
            s("[0,3/4)")
        );
    }

    #[test]
    fn intersect_examples() {
        assert_eq!(s("[0,1/2)").intersect(&s("[1/4,3/4)")), s("[1/4,1/2)"));
        assert!(s("[0,1)").intersect(&IntervalSet::empty()).is_empty());
        assert_eq!(
            s("(-1,0) u (0,1)").intersect(&s("(-1/4,1/4)")),
            s("(-1/4,0) u (0,1/4)")
        );
    }

    #[test]
    fn complement_examples() {
        let x = Domain::parse("[0,1)").unwrap();
        assert_eq!(s("[0,1/2)").complement(&x).unwrap(), s("[1/2,1)"));
        assert_eq!(IntervalSet::empty().complement(&x).unwrap(), s("[0,1)"));
        let y = Domain::parse("(0,1)").unwrap();
        assert_eq!(
            s("(0,1/3) u (2/3,1)").complement(&y).unwrap(),
            s("[1/3,2/3]")
        );
        assert!(matches!(
            s("[0,2]").complement(&y),
            Err(Error::NotInDomain(_))
        ));
    }

    #[test]
    fn measure_examples() {
        assert_eq!(s("[0,1/4) u [1/2,3/4)").measure(), Measure::Finite(q(1, 2)));
        assert!(s("{1/3}").measure().is_zero());
        for k in 1..6 {
            let e = s(&format!("(-1/{k},0) u (0,1/{k})"));
            assert_eq!(e.measure(), Measure::Finite(q(2, k)));
        }
        assert_eq!(s("(0,inf)").measure(), Measure::Infinite);
    }

    #[test]
    fn compact_subset_examples() {
        assert!(is_compact_subset(&s("[1/4,1/2]"), &s("(0,1)")));
        assert!(!is_compact_subset(&s("[0,1/2]"), &s("[0,1)")));
        assert!(is_compact_subset(
            &s("[1/8,1/4] u [3/8,1/2]"),
            &s("(0,3/4)")
        ));
        assert!(!is_compact_subset(&s("[1/8,1/4)"), &s("(0,3/4)")));
    }

    #[test]
    fn literal_roundtrip_and_errors() {
        let x = s("(-inf,0] u {1/2} u (3/4,1]");
        assert_eq!(x.to_string().parse::<IntervalSet>().unwrap(), x);
        assert!("[0,1".parse::<IntervalSet>().is_err());
        assert!("[0,1] v [2,3]".parse::<IntervalSet>().is_err());
        assert!("[-inf,0]".parse::<IntervalSet>().is_err());
        let err = "[0,1) u (a,2)".parse::<IntervalSet>().unwrap_err();
        assert_eq!(err.offset, 9);
    }

    #[test]
    fn exhaustion_is_increasing_and_compact() {
        let x = Domain::parse("(0,1) u [2,inf)").unwrap();
        let mut prev = IntervalSet::empty();
        for m in 1..10 {
            let k = x.compact_exhaustion(m);
            assert!(x.is_compact_in(&k));
            assert!(prev.is_subset(&k));
            prev = k;
        }
        assert_eq!(x.compact_exhaustion(4), s("[1/4,3/4] u [2,4]"));
    }
}
