//! Piecewise-linear functions with rational breakpoints.
//!
//! A [`PiecewiseFn`] partitions its domain's carrier into intervals, each
//! carrying an affine map `x ↦ slope·x + intercept`. Degenerate (single
//! point) pieces are allowed and are invisible to every measure-level
//! query. Where two proper pieces share a closed endpoint the right-hand
//! piece owns the point (left-closed/right-open lookup).
//!
//! # Literal syntax
//!
//! ```text
//! fn    := "zero" | entry ( ";" entry )*
//! entry := part ":" rational                   constant piece
//!        | part ":" rational "," rational      x ↦ a·x + b
//! ```
//!
//! `part` is an interval literal as in [`crate::sets`]. Parts of the domain
//! not covered by any entry are zero.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, ParseError, Result};
use crate::rat::Rat;
use crate::sets::{Bound, Domain, Interval, IntervalSet, SetParser};

/// Affine map `x ↦ slope·x + intercept`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Line {
    pub slope: Rat,
    pub intercept: Rat,
}

impl Line {
    pub fn new(slope: Rat, intercept: Rat) -> Line {
        Line { slope, intercept }
    }

    pub fn constant(c: Rat) -> Line {
        Line::new(Rat::zero(), c)
    }

    pub fn zero() -> Line {
        Line::constant(Rat::zero())
    }

    pub fn is_constant(&self) -> bool {
        self.slope.is_zero()
    }

    pub fn at(&self, x: &Rat) -> Rat {
        &(&self.slope * x) + &self.intercept
    }

    /// Limit of the line at a bound; infinite bounds only make sense for
    /// constant lines.
    pub fn at_bound(&self, b: &Bound) -> Option<Rat> {
        match b {
            Bound::Finite(x) => Some(self.at(x)),
            _ if self.is_constant() => Some(self.intercept.clone()),
            _ => None,
        }
    }

    pub fn neg(&self) -> Line {
        Line::new(-&self.slope, -&self.intercept)
    }

    pub fn scale(&self, c: &Rat) -> Line {
        Line::new(&self.slope * c, &self.intercept * c)
    }

    pub fn add(&self, other: &Line) -> Line {
        Line::new(
            &self.slope + &other.slope,
            &self.intercept + &other.intercept,
        )
    }

    /// `x ↦ self(x + t)`.
    pub fn shift(&self, t: &Rat) -> Line {
        Line::new(self.slope.clone(), &(&self.slope * t) + &self.intercept)
    }

    /// Abscissa where the two lines meet, if they are not parallel.
    pub fn crossing(&self, other: &Line) -> Option<Rat> {
        let ds = &self.slope - &other.slope;
        if ds.is_zero() {
            None
        } else {
            Some((&other.intercept - &self.intercept) / ds)
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Piece {
    pub interval: Interval,
    pub line: Line,
}

impl Piece {
    pub fn new(interval: Interval, line: Line) -> Piece {
        Piece { interval, line }
    }

    /// Positive-length piece (degenerate pieces are λ-null).
    pub fn is_proper(&self) -> bool {
        !self.interval.is_degenerate()
    }

    /// Values at the two ends (limits, for open ends).
    pub fn end_values(&self) -> (Rat, Rat) {
        let lo = self
            .line
            .at_bound(self.interval.lo())
            .expect("unbounded pieces are constant");
        let hi = self
            .line
            .at_bound(self.interval.hi())
            .expect("unbounded pieces are constant");
        (lo, hi)
    }

    fn sup_abs(&self) -> Rat {
        let (a, b) = self.end_values();
        a.abs().max(b.abs())
    }

    fn integral(&self) -> Option<Rat> {
        if !self.is_proper() {
            return Some(Rat::zero());
        }
        match (self.interval.lo(), self.interval.hi()) {
            (Bound::Finite(a), Bound::Finite(b)) => {
                let half = Rat::new(1, 2);
                let quad = &(&(b * b) - &(a * a)) * &half;
                Some(&(&self.line.slope * &quad) + &(&self.line.intercept * &(b - a)))
            }
            _ if self.line.intercept.is_zero() => Some(Rat::zero()),
            _ => None,
        }
    }
}

/// Piecewise-linear function on a [`Domain`], bounded, with finitely many pieces.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PiecewiseFn {
    domain: Domain,
    pieces: Vec<Piece>,
}

impl PiecewiseFn {
    /// Builds a function from possibly incomplete pieces; uncovered parts of
    /// the carrier become zero. Pieces may share single points (resolved by
    /// the right-hand-piece rule, explicit point pieces taking priority) but
    /// must not overlap on a set of positive length.
    pub fn new(
        domain: Domain,
        pieces: impl IntoIterator<Item = (Interval, Line)>,
    ) -> Result<PiecewiseFn> {
        let mut proper: Vec<Piece> = Vec::new();
        let mut points: Vec<(Rat, Rat)> = Vec::new();
        for (iv, line) in pieces {
            if !IntervalSet::from(iv.clone()).is_subset(domain.carrier()) {
                return Err(Error::NotInDomain(iv.to_string()));
            }
            if !iv.is_bounded() && !line.is_constant() {
                return Err(Error::InvalidArgument(format!(
                    "unbounded piece {iv} must have zero slope"
                )));
            }
            if iv.is_degenerate() {
                let p = iv.lo().finite().expect("degenerate is finite").clone();
                let v = line.at(&p);
                points.push((p, v));
            } else {
                proper.push(Piece::new(iv, line));
            }
        }
        proper.sort_by(|a, b| a.interval.start_key().cmp(&b.interval.start_key()));
        for i in 1..proper.len() {
            let (left, right) = proper.split_at_mut(i);
            let l = left.last_mut().expect("non-empty");
            if let Some(c) = l.interval.intersect(&right[0].interval) {
                if !c.is_degenerate() {
                    return Err(Error::InvalidArgument(format!(
                        "pieces {} and {} overlap",
                        l.interval, right[0].interval
                    )));
                }
                l.interval = l
                    .interval
                    .with_flags(l.interval.lo_closed(), false)
                    .expect("proper piece stays non-empty");
            }
        }
        points.sort();
        points.dedup();
        for w in points.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidArgument(format!(
                    "conflicting values at point {}",
                    w[0].0
                )));
            }
        }
        let point_set =
            IntervalSet::from_parts(points.iter().map(|(p, _)| Interval::point(p.clone())));
        let mut all: Vec<Piece> = Vec::new();
        for pc in proper {
            let rest = IntervalSet::from(pc.interval.clone()).difference(&point_set);
            all.extend(
                rest.parts()
                    .iter()
                    .map(|iv| Piece::new(iv.clone(), pc.line.clone())),
            );
        }
        all.extend(
            points
                .into_iter()
                .map(|(p, v)| Piece::new(Interval::point(p), Line::constant(v))),
        );
        Ok(PiecewiseFn::from_partition(domain, all))
    }

    /// Assembles pieces that are already pairwise disjoint inside the carrier.
    fn from_partition(domain: Domain, mut pieces: Vec<Piece>) -> PiecewiseFn {
        let covered = IntervalSet::from_parts(pieces.iter().map(|p| p.interval.clone()));
        let gaps = domain.carrier().difference(&covered);
        pieces.extend(
            gaps.parts()
                .iter()
                .map(|iv| Piece::new(iv.clone(), Line::zero())),
        );
        pieces.sort_by(|a, b| a.interval.start_key().cmp(&b.interval.start_key()));
        let mut out: Vec<Piece> = Vec::with_capacity(pieces.len());
        for p in pieces {
            if let Some(last) = out.last_mut() {
                if let Some(merged) = try_merge(last, &p) {
                    *last = merged;
                    continue;
                }
            }
            out.push(p);
        }
        PiecewiseFn {
            domain,
            pieces: out,
        }
    }

    pub fn zero(domain: Domain) -> PiecewiseFn {
        PiecewiseFn::from_partition(domain, Vec::new())
    }

    pub fn constant(domain: Domain, c: Rat) -> PiecewiseFn {
        let pieces = domain
            .carrier()
            .parts()
            .iter()
            .map(|iv| Piece::new(iv.clone(), Line::constant(c.clone())))
            .collect();
        PiecewiseFn::from_partition(domain, pieces)
    }

    /// `value · χ_set`; the set is clipped to the carrier.
    pub fn step(domain: Domain, set: &IntervalSet, value: Rat) -> PiecewiseFn {
        let clipped = set.intersect(domain.carrier());
        let pieces = clipped
            .parts()
            .iter()
            .map(|iv| Piece::new(iv.clone(), Line::constant(value.clone())))
            .collect();
        PiecewiseFn::from_partition(domain, pieces)
    }

    pub fn indicator(domain: Domain, set: &IntervalSet) -> PiecewiseFn {
        PiecewiseFn::step(domain, set, Rat::one())
    }

    /// Parses the function literal syntax described in the module docs.
    pub fn parse(domain: Domain, src: &str) -> Result<PiecewiseFn> {
        let mut p = SetParser { src, pos: 0 };
        p.skip_ws();
        if p.eat("zero") {
            p.skip_ws();
            if p.pos < src.len() {
                return Err(ParseError::new("trailing input after `zero`", p.pos).into());
            }
            return Ok(PiecewiseFn::zero(domain));
        }
        let mut pieces = Vec::new();
        loop {
            let at = p.pos;
            let iv = p.parse_part()?;
            if !p.eat(":") {
                return Err(ParseError::new("expected `:` after interval", p.pos).into());
            }
            let a = parse_finite(&mut p)?;
            let line = if p.eat(",") {
                Line::new(a, parse_finite(&mut p)?)
            } else {
                Line::constant(a)
            };
            match iv {
                Some(iv) => pieces.push((iv, line)),
                None => {
                    return Err(ParseError::new("empty interval in function literal", at).into())
                }
            }
            p.skip_ws();
            if p.pos == src.len() {
                break;
            }
            if !p.eat(";") {
                return Err(ParseError::new("expected `;` between pieces", p.pos).into());
            }
        }
        PiecewiseFn::new(domain, pieces)
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Exact value at `x` (right-hand-piece convention at shared breakpoints).
    pub fn eval(&self, x: &Rat) -> Result<Rat> {
        self.pieces
            .iter()
            .find(|p| p.interval.contains(x))
            .map(|p| p.line.at(x))
            .ok_or_else(|| Error::OutsideDomain(x.to_string()))
    }

    /// All slopes vanish on pieces of positive length.
    pub fn is_step(&self) -> bool {
        self.pieces
            .iter()
            .filter(|p| p.is_proper())
            .all(|p| p.line.is_constant())
    }

    /// Finite breakpoints, increasing.
    pub fn breakpoints(&self) -> Vec<Rat> {
        IntervalSet::from_parts(self.pieces.iter().map(|p| p.interval.clone()))
            .endpoints()
            .into_iter()
            .chain(self.pieces.iter().flat_map(|p| {
                [
                    p.interval.lo().finite().cloned(),
                    p.interval.hi().finite().cloned(),
                ]
                .into_iter()
                .flatten()
            }))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    fn map_pieces(&self, f: impl Fn(&Piece) -> Vec<Piece>) -> PiecewiseFn {
        let pieces = self.pieces.iter().flat_map(f).collect();
        PiecewiseFn::from_partition(self.domain.clone(), pieces)
    }

    pub fn abs(&self) -> PiecewiseFn {
        self.map_pieces(|p| {
            split_at_root(&p.interval, &p.line)
                .into_iter()
                .map(|iv| {
                    let s = iv.sample_point();
                    let line = if p.line.at(&s).is_negative() {
                        p.line.neg()
                    } else {
                        p.line.clone()
                    };
                    Piece::new(iv, line)
                })
                .collect()
        })
    }

    pub fn neg(&self) -> PiecewiseFn {
        self.map_pieces(|p| vec![Piece::new(p.interval.clone(), p.line.neg())])
    }

    pub fn scale(&self, c: &Rat) -> PiecewiseFn {
        self.map_pieces(|p| vec![Piece::new(p.interval.clone(), p.line.scale(c))])
    }

    /// Common refinement of two functions on the same domain.
    fn overlay<'a>(
        &'a self,
        other: &'a PiecewiseFn,
    ) -> Result<Vec<(Interval, &'a Line, &'a Line)>> {
        if self.domain != other.domain {
            return Err(Error::InvalidArgument(format!(
                "domain mismatch: {} vs {}",
                self.domain, other.domain
            )));
        }
        let (a, b) = (&self.pieces, &other.pieces);
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if let Some(c) = a[i].interval.intersect(&b[j].interval) {
                out.push((c, &a[i].line, &b[j].line));
            }
            if a[i].interval.end_key() <= b[j].interval.end_key() {
                i += 1;
            } else {
                j += 1;
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &PiecewiseFn) -> Result<PiecewiseFn> {
        let cells = self.overlay(other)?;
        let pieces = cells
            .into_iter()
            .map(|(iv, l1, l2)| Piece::new(iv, l1.add(l2)))
            .collect();
        Ok(PiecewiseFn::from_partition(self.domain.clone(), pieces))
    }

    pub fn sub(&self, other: &PiecewiseFn) -> Result<PiecewiseFn> {
        self.add(&other.neg())
    }

    /// `Σ cᵢ·uᵢ` over a common domain.
    pub fn linear_combo(terms: &[(Rat, &PiecewiseFn)]) -> Result<PiecewiseFn> {
        let (first, rest) = terms
            .split_first()
            .ok_or_else(|| Error::InvalidArgument("empty linear combination".into()))?;
        rest.iter()
            .try_fold(first.1.scale(&first.0), |acc, (c, u)| acc.add(&u.scale(c)))
    }

    /// Pointwise minimum; crossings become new breakpoints.
    pub fn min(&self, other: &PiecewiseFn) -> Result<PiecewiseFn> {
        let cells = self.overlay(other)?;
        let pieces = cells
            .into_iter()
            .flat_map(|(iv, l1, l2)| lower_envelope(&iv, l1, l2))
            .collect();
        Ok(PiecewiseFn::from_partition(self.domain.clone(), pieces))
    }

    pub fn max(&self, other: &PiecewiseFn) -> Result<PiecewiseFn> {
        Ok(self.neg().min(&other.neg())?.neg())
    }

    /// Pointwise minimum of a non-empty list.
    pub fn min_of(us: &[&PiecewiseFn]) -> Result<PiecewiseFn> {
        let (first, rest) = us
            .split_first()
            .ok_or_else(|| Error::InvalidArgument("min_of needs at least one function".into()))?;
        rest.iter().try_fold((*first).clone(), |acc, u| acc.min(u))
    }

    /// Product; defined when, on every cell of positive length, at least one
    /// factor is constant.
    pub fn product(&self, other: &PiecewiseFn) -> Result<PiecewiseFn> {
        let cells = self.overlay(other)?;
        let mut pieces = Vec::with_capacity(cells.len());
        for (iv, l1, l2) in cells {
            let line = if iv.is_degenerate() {
                let x = iv.sample_point();
                Line::constant(&l1.at(&x) * &l2.at(&x))
            } else if l2.is_constant() {
                l1.scale(&l2.intercept)
            } else if l1.is_constant() {
                l2.scale(&l1.intercept)
            } else {
                return Err(Error::Unsupported(format!(
                    "product of two non-constant affine pieces on {iv} is not piecewise linear"
                )));
            };
            pieces.push(Piece::new(iv, line));
        }
        Ok(PiecewiseFn::from_partition(self.domain.clone(), pieces))
    }

    /// `x ↦ self(x + t)` on the same domain; values pulled in from outside the
    /// carrier are zero.
    pub fn translate(&self, t: &Rat) -> PiecewiseFn {
        let shift = -t;
        let carrier = self.domain.carrier();
        let mut pieces = Vec::new();
        for p in &self.pieces {
            let moved = IntervalSet::from(p.interval.translate(&shift)).intersect(carrier);
            let line = p.line.shift(t);
            pieces.extend(
                moved
                    .parts()
                    .iter()
                    .map(|iv| Piece::new(iv.clone(), line.clone())),
            );
        }
        PiecewiseFn::from_partition(self.domain.clone(), pieces)
    }

    /// `{x : u(x) > α}` (or `≥` when `strict` is false), exactly.
    pub fn upper_set(&self, alpha: &Rat, strict: bool) -> IntervalSet {
        IntervalSet::from_parts(
            self.pieces
                .iter()
                .filter_map(|p| solve_above(&p.interval, &p.line, alpha, strict)),
        )
    }

    /// `{x : |u(x)| > α}` for `α ≥ 0`, or `≥ α` when `strict` is false.
    pub fn abs_level_set(&self, alpha: &Rat, strict: bool) -> IntervalSet {
        IntervalSet::from_parts(self.pieces.iter().flat_map(|p| {
            let up = solve_above(&p.interval, &p.line, alpha, strict);
            let down = solve_above(&p.interval, &p.line.neg(), alpha, strict);
            up.into_iter().chain(down)
        }))
    }

    /// The superlevel set `A_α(u) = {x : |u(x)| > α}`; requires `α > 0`.
    pub fn superlevel(&self, alpha: &Rat) -> Result<IntervalSet> {
        if !alpha.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "superlevel threshold must be positive, got {alpha}"
            )));
        }
        Ok(self.abs_level_set(alpha, true))
    }

    /// `{x : u(x) ≠ 0}`.
    pub fn support(&self) -> IntervalSet {
        self.abs_level_set(&Rat::zero(), true)
    }

    /// Essential supremum of `|u|`; λ-null pieces are ignored.
    pub fn ess_sup_norm(&self) -> Rat {
        self.pieces
            .iter()
            .filter(|p| p.is_proper())
            .map(Piece::sup_abs)
            .max()
            .unwrap_or_else(Rat::zero)
    }

    /// Essential supremum and infimum of `u` itself, `None` on a null carrier.
    pub fn ess_bounds(&self) -> Option<(Rat, Rat)> {
        let vals: Vec<Rat> = self
            .pieces
            .iter()
            .filter(|p| p.is_proper())
            .flat_map(|p| {
                let (a, b) = p.end_values();
                [a, b]
            })
            .collect();
        let lo = vals.iter().min()?.clone();
        let hi = vals.iter().max()?.clone();
        Some((lo, hi))
    }

    /// True if `u = value` almost everywhere on `set`.
    pub fn is_constant_on(&self, set: &IntervalSet, value: &Rat) -> bool {
        self.pieces.iter().all(|p| {
            let overlap = IntervalSet::from(p.interval.clone()).intersect(set);
            overlap.is_null() || (p.line.is_constant() && &p.line.intercept == value)
        })
    }

    /// Almost-everywhere equality.
    pub fn ae_eq(&self, other: &PiecewiseFn) -> Result<bool> {
        Ok(self.sub(other)?.ess_sup_norm().is_zero())
    }

    /// Applies a polynomial (coefficients in ascending powers) value-wise to a
    /// step function.
    pub fn compose_poly(&self, coeffs: &[Rat]) -> Result<PiecewiseFn> {
        if !self.is_step() {
            return Err(Error::Unsupported(
                "polynomial composition needs a step function".into(),
            ));
        }
        Ok(self.map_pieces(|p| {
            let v = if p.is_proper() {
                p.line.intercept.clone()
            } else {
                p.line.at(&p.interval.sample_point())
            };
            vec![Piece::new(
                p.interval.clone(),
                Line::constant(eval_poly(coeffs, &v)),
            )]
        }))
    }

    /// `∫_E u dλ`; `None` if the integral diverges.
    pub fn integral_over(&self, set: &IntervalSet) -> Option<Rat> {
        let mut total = Rat::zero();
        for p in &self.pieces {
            let cut = IntervalSet::from(p.interval.clone()).intersect(set);
            for iv in cut.parts() {
                total = total + Piece::new(iv.clone(), p.line.clone()).integral()?;
            }
        }
        Some(total)
    }
}

/// Horner evaluation, coefficients in ascending powers.
pub fn eval_poly(coeffs: &[Rat], t: &Rat) -> Rat {
    coeffs
        .iter()
        .rev()
        .fold(Rat::zero(), |acc, c| &(&acc * t) + c)
}

fn parse_finite(p: &mut SetParser<'_>) -> Result<Rat> {
    let at = p.pos;
    match p.parse_bound()? {
        Bound::Finite(r) => Ok(r),
        _ => Err(ParseError::new("coefficient must be finite", at).into()),
    }
}

fn try_merge(last: &Piece, next: &Piece) -> Option<Piece> {
    if !last.interval.touches(&next.interval) {
        return None;
    }
    let line = if last.line == next.line
        || (!next.is_proper() && last.line.at(&next.interval.sample_point()) == next.line.intercept)
    {
        last.line.clone()
    } else if !last.is_proper()
        && next.line.at(&last.interval.sample_point()) == last.line.intercept
    {
        next.line.clone()
    } else {
        return None;
    };
    let (hi, hi_closed) = if next.interval.end_key() >= last.interval.end_key() {
        (next.interval.hi().clone(), next.interval.hi_closed())
    } else {
        (last.interval.hi().clone(), last.interval.hi_closed())
    };
    let iv = Interval::new(
        last.interval.lo().clone(),
        hi,
        last.interval.lo_closed(),
        hi_closed,
    )?;
    Some(Piece::new(iv, line))
}

/// Splits `iv` at an interior abscissa `r`: `iv ∩ (-∞, r)` and `iv ∩ [r, ∞)`.
fn split_interval(iv: &Interval, r: &Rat) -> Vec<Interval> {
    let left = Interval::new(Bound::NegInf, Bound::Finite(r.clone()), false, false);
    let right = Interval::new(Bound::Finite(r.clone()), Bound::PosInf, true, false);
    [left, right]
        .into_iter()
        .flatten()
        .filter_map(|h| iv.intersect(&h))
        .collect()
}

fn interior_contains(iv: &Interval, x: &Rat) -> bool {
    iv.interior().is_some_and(|i| i.contains(x))
}

fn split_at_root(iv: &Interval, line: &Line) -> Vec<Interval> {
    match line.crossing(&Line::zero()) {
        Some(r) if interior_contains(iv, &r) => split_interval(iv, &r),
        _ => vec![iv.clone()],
    }
}

fn lower_envelope(iv: &Interval, l1: &Line, l2: &Line) -> Vec<Piece> {
    if let Some(r) = l1.crossing(l2) {
        if interior_contains(iv, &r) {
            // left of the crossing the steeper line is lower
            let (left, right) = if l1.slope > l2.slope {
                (l1, l2)
            } else {
                (l2, l1)
            };
            let parts = split_interval(iv, &r);
            return parts
                .into_iter()
                .map(|p| {
                    let line = if p.contains(&r) { right } else { left };
                    Piece::new(p, line.clone())
                })
                .collect();
        }
    }
    let s = iv.sample_point();
    let line = match l1.at(&s).cmp(&l2.at(&s)) {
        Ordering::Greater => l2,
        _ => l1,
    };
    vec![Piece::new(iv.clone(), line.clone())]
}

/// `{x ∈ iv : line(x) > α}` (`≥` if not strict).
fn solve_above(iv: &Interval, line: &Line, alpha: &Rat, strict: bool) -> Option<Interval> {
    let cmp_ok = |v: &Rat| if strict { v > alpha } else { v >= alpha };
    match line.slope.cmp(&Rat::zero()) {
        Ordering::Equal => cmp_ok(&line.intercept).then(|| iv.clone()),
        ord => {
            let t = (alpha - &line.intercept) / &line.slope;
            let half = if ord == Ordering::Greater {
                Interval::new(Bound::Finite(t), Bound::PosInf, !strict, false)
            } else {
                Interval::new(Bound::NegInf, Bound::Finite(t), false, !strict)
            }?;
            iv.intersect(&half)
        }
    }
}

impl fmt::Display for PiecewiseFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nonzero: Vec<&Piece> = self
            .pieces
            .iter()
            .filter(|p| p.line != Line::zero())
            .collect();
        if nonzero.is_empty() {
            return f.write_str("zero");
        }
        for (i, p) in nonzero.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            if p.line.is_constant() {
                write!(f, "{}: {}", p.interval, p.line.intercept)?;
            } else {
                write!(f, "{}: {}, {}", p.interval, p.line.slope, p.line.intercept)?;
            }
        }
        Ok(())
    }
}
