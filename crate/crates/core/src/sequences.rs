//! Sequence families `k ↦ u_k` and their certificates.
//!
//! A [`SequenceFamily`] produces its `k`-th term on demand. Certificates
//! are claims about *all* terms (disjoint supports, nested superlevel
//! kernels, monotone envelopes, ...); [`SequenceFamily::verify_certificate`]
//! checks each claim exactly for `k` up to a budget, and the verdict engine
//! trusts it beyond that.

use std::fmt;

use crate::enclosure::{self, Enclosure};
use crate::error::{Error, Result};
use crate::formula::{Expr, FnFormula, SetFormula};
use crate::piecewise::{eval_poly, PiecewiseFn};
use crate::rat::Rat;
use crate::sets::{Bound, Domain, IntervalSet, Measure};

/// A point handed to an analytic evaluator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EvalPoint {
    Rational(Rat),
    /// The irrational point `x = 1/(π·q)`.
    InversePiMultiple(Rat),
}

impl EvalPoint {
    pub fn approx(&self) -> f64 {
        match self {
            EvalPoint::Rational(x) => x.to_f64(),
            EvalPoint::InversePiMultiple(q) => 1.0 / (std::f64::consts::PI * q.to_f64()),
        }
    }

    /// Rigorous enclosure of the point itself.
    pub fn enclosure(&self) -> Enclosure {
        match self {
            EvalPoint::Rational(x) => Enclosure::exact(x.clone()),
            EvalPoint::InversePiMultiple(q) => {
                let p = enclosure::pi();
                let a = (&p.lo * q).recip();
                let b = (&p.hi * q).recip();
                if a <= b {
                    Enclosure::new(a, b)
                } else {
                    Enclosure::new(b, a)
                }
            }
        }
    }
}

impl fmt::Display for EvalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalPoint::Rational(x) => write!(f, "{x}"),
            EvalPoint::InversePiMultiple(q) => write!(f, "1/(pi*{q})"),
        }
    }
}

/// Built-in analytic families.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Evaluable {
    /// `u_k(x) = sin(1/(k x))` on `(0, 2π)`.
    SinReciprocal,
}

impl Evaluable {
    /// Rational subinterval of the natural domain, used where a [`Domain`] is needed.
    pub fn domain(&self) -> Domain {
        let two_pi = (&enclosure::pi().lo * &Rat::int(2)).round_down(32);
        Domain::new(IntervalSet::from(crate::sets::Interval::open(
            Rat::zero(),
            two_pi,
        )))
        .expect("non-empty")
    }

    pub fn contains(&self, p: &EvalPoint) -> bool {
        let e = p.enclosure();
        let two_pi_lo = &enclosure::pi().lo * &Rat::int(2);
        e.lo.is_positive() && e.hi < two_pi_lo
    }

    /// Every term is continuous on the whole open domain.
    pub fn continuous_at(&self, _k: u64, p: &EvalPoint) -> bool {
        self.contains(p)
    }

    /// Certified enclosure of `u_k(p)`.
    pub fn eval(&self, k: u64, p: &EvalPoint) -> Result<Enclosure> {
        if !self.contains(p) {
            return Err(Error::OutsideDomain(p.to_string()));
        }
        let k = Rat::int(k);
        Ok(match p {
            EvalPoint::Rational(x) => enclosure::sin_rat(&(&k * x).recip()),
            EvalPoint::InversePiMultiple(q) => enclosure::sin_pi_rat(&(q / &k)),
        })
    }
}

/// Value-wise post-processing of another family.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Transform {
    Abs,
    /// `t ↦ p(t) − p(0)` with ascending coefficients.
    Poly(Vec<Rat>),
}

impl Transform {
    /// `L` with `|F(t) − F(0)| ≤ L|t|` for `|t| ≤ bound`.
    pub fn lipschitz_at_zero(&self, bound: &Rat) -> Rat {
        match self {
            Transform::Abs => Rat::one(),
            Transform::Poly(c) => c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| &a.abs() * &bound.powi(i as i64 - 1))
                .sum(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FamilyKind {
    /// Finite list; indices past the end repeat the last term.
    ExplicitList(Vec<PiecewiseFn>),
    /// `u_k = χ_{A_k}`, clipped to the carrier.
    Indicator(SetFormula),
    /// `u_k(x) = base(x + k·step)`.
    Translate {
        base: PiecewiseFn,
        step: Rat,
    },
    /// Height-one tents: `1` on `0 < |x| ≤ 1/k`, `0` for `|x| ≥ 2/k`, linear between.
    Tent,
    Formula(FnFormula),
    /// `u_k = Σ_{i ≤ I} α_i χ_{A_k^i}`, with `Σ_{i > I} |α_i| ≤ tail(I)`.
    Summable {
        coefficient: Expr,
        template: String,
        sets: Vec<SetFormula>,
        tail: Expr,
    },
    Evaluable(Evaluable),
    Mapped {
        inner: Box<SequenceFamily>,
        transform: Transform,
    },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Certificate {
    /// Supports of distinct terms meet in a null set.
    DisjointSupports,
    /// `kernel(k) ⊆ A_α(u_k)`, nested non-increasing, of positive measure.
    SuperlevelKernel { alpha: Rat, kernel: SetFormula },
    /// Translate family whose profile vanishes at `±∞`.
    EscapeBound,
    /// `|u_{k+1}| ≤ |u_k|` almost everywhere.
    MonotoneEnvelope,
    /// `‖u_k‖∞ → limit`, optionally with `|‖u_k‖∞ − limit| ≤ rate(k)`.
    NormLimit { limit: Rat, rate: Option<Expr> },
    /// For summable families: each `{A_k^i}_k` is disjoint and `tail(I) → 0`.
    SummableDisjoint,
    /// Nested sets `S_k ⊇ supp(u_k)`.
    SupportEnvelope(SetFormula),
}

impl Certificate {
    pub fn id(&self) -> &'static str {
        match self {
            Certificate::DisjointSupports => "disjoint-supports",
            Certificate::SuperlevelKernel { .. } => "superlevel-kernel",
            Certificate::EscapeBound => "escape-bound",
            Certificate::MonotoneEnvelope => "monotone-envelope",
            Certificate::NormLimit { .. } => "norm-limit",
            Certificate::SummableDisjoint => "summable-disjoint",
            Certificate::SupportEnvelope(_) => "support-envelope",
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::SuperlevelKernel { alpha, kernel } => {
                write!(f, "superlevel-kernel(alpha={alpha}, kernel={kernel})")
            }
            Certificate::NormLimit {
                limit,
                rate: Some(r),
            } => write!(f, "norm-limit({limit}, rate={r})"),
            Certificate::NormLimit { limit, rate: None } => write!(f, "norm-limit({limit})"),
            Certificate::SupportEnvelope(s) => write!(f, "support-envelope({s})"),
            other => f.write_str(other.id()),
        }
    }
}

/// Outcome of a passed certificate check.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct CertificateReport {
    pub certificate: String,
    pub checked_up_to: u64,
    pub detail: String,
}

/// The `k`-th term of a family.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Term {
    Piecewise(PiecewiseFn),
    Evaluable { family: Evaluable, k: u64 },
}

impl Term {
    pub fn piecewise(&self) -> Option<&PiecewiseFn> {
        match self {
            Term::Piecewise(u) => Some(u),
            Term::Evaluable { .. } => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SequenceFamily {
    pub name: String,
    pub domain: Domain,
    pub kind: FamilyKind,
    /// Declared `M` with `‖u_k‖∞ ≤ M` for every `k`.
    pub bound: Rat,
    pub certificates: Vec<Certificate>,
}

/// Replaces the standalone identifier `i` by `(n)`.
fn substitute_i(template: &str, n: u64) -> String {
    let chars: Vec<char> = template.chars().collect();
    let mut out = String::with_capacity(template.len() + 8);
    for (idx, &c) in chars.iter().enumerate() {
        let prev = idx.checked_sub(1).map(|j| chars[j]);
        let next = chars.get(idx + 1).copied();
        let alone = |o: Option<char>| !o.is_some_and(|ch| ch.is_alphanumeric() || ch == '_');
        if c == 'i' && alone(prev) && alone(next) {
            out.push_str(&format!("({n})"));
        } else {
            out.push(c);
        }
    }
    out
}

impl SequenceFamily {
    pub fn new(
        name: impl Into<String>,
        domain: Domain,
        kind: FamilyKind,
        bound: Rat,
    ) -> SequenceFamily {
        SequenceFamily {
            name: name.into(),
            domain,
            kind,
            bound,
            certificates: Vec::new(),
        }
    }

    pub fn with(mut self, c: Certificate) -> SequenceFamily {
        self.certificates.push(c);
        self
    }

    pub fn explicit(name: &str, terms: Vec<PiecewiseFn>) -> Result<SequenceFamily> {
        let first = terms
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty family".into()))?;
        let domain = first.domain().clone();
        if terms.iter().any(|u| u.domain() != &domain) {
            return Err(Error::InvalidArgument(
                "terms live on different domains".into(),
            ));
        }
        let bound = terms
            .iter()
            .map(PiecewiseFn::ess_sup_norm)
            .max()
            .unwrap_or_else(Rat::zero);
        Ok(SequenceFamily::new(
            name,
            domain,
            FamilyKind::ExplicitList(terms),
            bound,
        ))
    }

    pub fn indicator(name: &str, domain: Domain, sets: &str) -> Result<SequenceFamily> {
        Ok(SequenceFamily::new(
            name,
            domain,
            FamilyKind::Indicator(SetFormula::parse(sets)?),
            Rat::one(),
        ))
    }

    pub fn translate(name: &str, base: PiecewiseFn, step: Rat) -> Result<SequenceFamily> {
        if step.is_zero() {
            return Err(Error::InvalidArgument(
                "translation step must be non-zero".into(),
            ));
        }
        let bound = base.ess_sup_norm();
        let domain = base.domain().clone();
        Ok(SequenceFamily::new(
            name,
            domain,
            FamilyKind::Translate { base, step },
            bound,
        ))
    }

    pub fn tent(name: &str, domain: Domain) -> SequenceFamily {
        SequenceFamily::new(name, domain, FamilyKind::Tent, Rat::one())
    }

    pub fn formula(
        name: &str,
        domain: Domain,
        template: &str,
        bound: Rat,
    ) -> Result<SequenceFamily> {
        Ok(SequenceFamily::new(
            name,
            domain,
            FamilyKind::Formula(FnFormula::parse(template)?),
            bound,
        ))
    }

    /// `u_k = Σ_{i=1}^{truncation} α(i) χ_{A_k^i}` where `template` is a set
    /// template in `k` mentioning `i`, and `tail(I)` bounds `Σ_{i>I} |α(i)|`.
    pub fn summable(
        name: &str,
        domain: Domain,
        coefficient: &str,
        template: &str,
        truncation: u64,
        tail: &str,
    ) -> Result<SequenceFamily> {
        if truncation == 0 {
            return Err(Error::InvalidArgument("truncation must be positive".into()));
        }
        let coefficient = Expr::parse(coefficient)?;
        let tail = Expr::parse(tail)?;
        let sets = (1..=truncation)
            .map(|i| SetFormula::parse(&substitute_i(template, i)))
            .collect::<Result<Vec<_>>>()?;
        let mut bound = tail.eval(truncation as i64)?.abs();
        for i in 1..=truncation {
            bound = bound + coefficient.eval(i as i64)?.abs();
        }
        Ok(SequenceFamily::new(
            name,
            domain,
            FamilyKind::Summable {
                coefficient,
                template: template.to_string(),
                sets,
                tail,
            },
            bound,
        ))
    }

    pub fn sin_reciprocal(name: &str) -> SequenceFamily {
        let e = Evaluable::SinReciprocal;
        SequenceFamily::new(name, e.domain(), FamilyKind::Evaluable(e), Rat::one())
    }

    pub fn is_evaluable(&self) -> bool {
        match &self.kind {
            FamilyKind::Evaluable(_) => true,
            FamilyKind::Mapped { inner, .. } => inner.is_evaluable(),
            _ => false,
        }
    }

    pub fn certificate(&self, id: &str) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.id() == id)
    }

    /// The `k`-th term, `k ≥ 1`.
    pub fn term(&self, k: u64) -> Result<Term> {
        if k == 0 {
            return Err(Error::InvalidArgument(
                "terms are indexed from k = 1".into(),
            ));
        }
        let n =
            i64::try_from(k).map_err(|_| Error::InvalidArgument(format!("index {k} too large")))?;
        let d = &self.domain;
        let u = match &self.kind {
            FamilyKind::ExplicitList(list) => {
                let idx = (k as usize).min(list.len()) - 1;
                list[idx].clone()
            }
            FamilyKind::Indicator(sets) => PiecewiseFn::indicator(d.clone(), &sets.eval(n)?),
            FamilyKind::Translate { base, step } => base.translate(&(step * &Rat::int(n))),
            FamilyKind::Tent => tent_term(d, n)?,
            FamilyKind::Formula(f) => f.eval(d, n)?,
            FamilyKind::Summable {
                coefficient, sets, ..
            } => {
                let mut acc = PiecewiseFn::zero(d.clone());
                for (i, s) in sets.iter().enumerate() {
                    let c = coefficient.eval(i as i64 + 1)?;
                    acc = acc.add(&PiecewiseFn::step(d.clone(), &s.eval(n)?, c))?;
                }
                acc
            }
            FamilyKind::Evaluable(e) => {
                return Ok(Term::Evaluable {
                    family: e.clone(),
                    k,
                });
            }
            FamilyKind::Mapped { inner, transform } => {
                let t = inner.term(k)?;
                let u = t.piecewise().ok_or_else(|| {
                    Error::Unsupported(
                        "transforms of analytic families are not representable".into(),
                    )
                })?;
                apply_transform(u, transform)?
            }
        };
        Ok(Term::Piecewise(u))
    }

    /// Piecewise term or an `Unsupported` error for analytic families.
    pub fn piecewise_term(&self, k: u64) -> Result<PiecewiseFn> {
        match self.term(k)? {
            Term::Piecewise(u) => Ok(u),
            Term::Evaluable { .. } => Err(Error::Unsupported(format!(
                "family `{}` is analytic; its terms are not piecewise linear",
                self.name
            ))),
        }
    }

    /// The family `|u_k|`. Certificates about `|u_k|` carry over unchanged.
    pub fn map_abs(&self) -> SequenceFamily {
        let certificates = self.certificates.clone();
        let kind = match &self.kind {
            FamilyKind::ExplicitList(l) => {
                FamilyKind::ExplicitList(l.iter().map(PiecewiseFn::abs).collect())
            }
            FamilyKind::Translate { base, step } => FamilyKind::Translate {
                base: base.abs(),
                step: step.clone(),
            },
            _ => FamilyKind::Mapped {
                inner: Box::new(self.clone()),
                transform: Transform::Abs,
            },
        };
        SequenceFamily {
            name: format!("|{}|", self.name),
            domain: self.domain.clone(),
            kind,
            bound: self.bound.clone(),
            certificates,
        }
    }

    /// The family `F∘u_k − F(0)` for a polynomial `F`; only certificates that
    /// depend on supports survive.
    pub fn map_poly(&self, coeffs: &[Rat]) -> Result<SequenceFamily> {
        let mut c = coeffs.to_vec();
        if c.is_empty() {
            c.push(Rat::zero());
        }
        c[0] = Rat::zero();
        let bound: Rat = c
            .iter()
            .enumerate()
            .map(|(i, a)| &a.abs() * &self.bound.powi(i as i64))
            .sum();
        let kind = match &self.kind {
            FamilyKind::ExplicitList(l) => FamilyKind::ExplicitList(
                l.iter()
                    .map(|u| apply_transform(u, &Transform::Poly(c.clone())))
                    .collect::<Result<_>>()?,
            ),
            FamilyKind::Translate { base, step } => FamilyKind::Translate {
                base: apply_transform(base, &Transform::Poly(c.clone()))?,
                step: step.clone(),
            },
            _ => FamilyKind::Mapped {
                inner: Box::new(self.clone()),
                transform: Transform::Poly(c.clone()),
            },
        };
        let certificates = self
            .certificates
            .iter()
            .filter(|c| {
                matches!(
                    c,
                    Certificate::DisjointSupports
                        | Certificate::EscapeBound
                        | Certificate::SummableDisjoint
                        | Certificate::SupportEnvelope(_)
                )
            })
            .cloned()
            .collect();
        Ok(SequenceFamily {
            name: format!("F({})", self.name),
            domain: self.domain.clone(),
            kind,
            bound,
            certificates,
        })
    }

    /// The summable family underneath any value maps, with a constant `L`
    /// such that `|u_k| ≤ L·|w_k|` pointwise for the inner terms `w_k`.
    pub fn summable_core(&self) -> Option<(&SequenceFamily, Rat)> {
        match &self.kind {
            FamilyKind::Summable { .. } => Some((self, Rat::one())),
            FamilyKind::Mapped { inner, transform } => {
                let (core, l) = inner.summable_core()?;
                Some((core, &l * &transform.lipschitz_at_zero(&inner.bound)))
            }
            _ => None,
        }
    }

    /// Checks `‖u_k‖∞ ≤ M` for `k ≤ budget`.
    pub fn verify_bound(&self, budget: u64) -> Result<()> {
        if self.is_evaluable() {
            return Ok(());
        }
        for k in 1..=budget {
            let norm = self.piecewise_term(k)?.ess_sup_norm();
            if norm > self.bound {
                return Err(Error::NormBound {
                    k,
                    norm: norm.to_string(),
                    bound: self.bound.to_string(),
                });
            }
        }
        Ok(())
    }

    /// Exact check of a certificate's claim for every `k ≤ budget`.
    pub fn verify_certificate(&self, c: &Certificate, budget: u64) -> Result<CertificateReport> {
        let budget = budget.max(2);
        let fail = |k: u64, detail: String| Error::CertificateFailed {
            certificate: c.to_string(),
            k,
            detail,
        };
        let ok = |detail: String| CertificateReport {
            certificate: c.to_string(),
            checked_up_to: budget,
            detail,
        };
        match c {
            Certificate::DisjointSupports => {
                let supports = (1..=budget)
                    .map(|k| Ok(self.piecewise_term(k)?.support()))
                    .collect::<Result<Vec<_>>>()?;
                if let Some((i, j, w)) = first_overlap(&supports) {
                    return Err(fail(
                        j,
                        format!("supports of terms {i} and {j} overlap on {w}"),
                    ));
                }
                Ok(ok(format!(
                    "{} supports pairwise a.e. disjoint",
                    supports.len()
                )))
            }
            Certificate::SuperlevelKernel { alpha, kernel } => {
                if !alpha.is_positive() {
                    return Err(fail(0, format!("threshold {alpha} must be positive")));
                }
                let mut prev: Option<IntervalSet> = None;
                for k in 1..=budget {
                    let ker = kernel.eval(k as i64)?.intersect(self.domain.carrier());
                    if ker.is_null() {
                        return Err(fail(k, format!("kernel {ker} is null")));
                    }
                    let a = self.piecewise_term(k)?.superlevel(alpha)?;
                    if !ker.is_subset_ae(&a) {
                        let w = ker.difference(&a);
                        return Err(fail(k, format!("kernel leaves A_{alpha}(u_{k}) on {w}")));
                    }
                    if let Some(p) = &prev {
                        if !ker.is_subset_ae(p) {
                            return Err(fail(
                                k,
                                format!(
                                    "kernel not nested: {} outside previous",
                                    ker.difference(p)
                                ),
                            ));
                        }
                    }
                    prev = Some(ker);
                }
                Ok(ok(format!("kernels nested, positive and inside A_{alpha}")))
            }
            Certificate::EscapeBound => {
                let FamilyKind::Translate { base, .. } = &self.kind else {
                    return Err(Error::Unsupported(
                        "escape bounds are derived for translate families only".into(),
                    ));
                };
                let tails = base_tails(base);
                if tails.iter().any(|v| !v.is_zero()) {
                    return Err(fail(
                        1,
                        format!("profile does not vanish at infinity (tail values {tails:?})"),
                    ));
                }
                Ok(ok("profile vanishes outside a bounded window".into()))
            }
            Certificate::MonotoneEnvelope => {
                let mut prev = self.piecewise_term(1)?.abs();
                for k in 2..=budget {
                    let cur = self.piecewise_term(k)?.abs();
                    let bad = cur.sub(&prev)?.upper_set(&Rat::zero(), true);
                    if !bad.is_null() {
                        return Err(fail(k - 1, format!("|u_{k}| > |u_{}| on {bad}", k - 1)));
                    }
                    prev = cur;
                }
                Ok(ok("|u_k| non-increasing a.e.".into()))
            }
            Certificate::NormLimit { limit, rate } => {
                if limit.is_negative() {
                    return Err(fail(0, format!("negative norm limit {limit}")));
                }
                if let Some(r) = rate {
                    if r.limit() != Some(Bound::Finite(Rat::zero())) {
                        return Err(fail(0, format!("rate `{r}` does not tend to 0")));
                    }
                }
                let monotone = self.certificate("monotone-envelope").is_some();
                for k in 1..=budget {
                    let norm = self.piecewise_term(k)?.ess_sup_norm();
                    if monotone && &norm < limit {
                        return Err(fail(
                            k,
                            format!("norm {norm} below the claimed monotone limit {limit}"),
                        ));
                    }
                    if let Some(r) = rate {
                        let allowed = r.eval(k as i64)?;
                        if (&norm - limit).abs() > allowed {
                            return Err(fail(
                                k,
                                format!("|{norm} - {limit}| exceeds rate {allowed}"),
                            ));
                        }
                    }
                }
                Ok(ok(match rate {
                    Some(r) => format!("norms within rate `{r}` of {limit}"),
                    None => format!("norms consistent with limit {limit}; rate not declared"),
                }))
            }
            Certificate::SummableDisjoint => {
                if let FamilyKind::Mapped { inner, .. } = &self.kind {
                    return inner.verify_certificate(c, budget);
                }
                let FamilyKind::Summable {
                    coefficient,
                    sets,
                    tail,
                    ..
                } = &self.kind
                else {
                    return Err(Error::Unsupported(
                        "summable certificate needs a summable family".into(),
                    ));
                };
                if tail.limit() != Some(Bound::Finite(Rat::zero())) {
                    return Err(fail(0, format!("tail bound `{tail}` does not tend to 0")));
                }
                for (idx, s) in sets.iter().enumerate() {
                    let fam = (1..=budget)
                        .map(|k| Ok(s.eval(k as i64)?.intersect(self.domain.carrier())))
                        .collect::<Result<Vec<_>>>()?;
                    if let Some((a, b, w)) = first_overlap(&fam) {
                        return Err(fail(
                            b,
                            format!("A_{a}^{} and A_{b}^{} overlap on {w}", idx + 1, idx + 1),
                        ));
                    }
                }
                let horizon = sets.len() as i64 + 64;
                for cut in 0..sets.len() as i64 {
                    let mut partial = Rat::zero();
                    for i in cut + 1..=horizon {
                        partial = partial + coefficient.eval(i)?.abs();
                    }
                    let declared = tail.eval(cut)?;
                    if partial > declared {
                        return Err(fail(
                            0,
                            format!("tail({cut}) = {declared} below partial sum {partial}"),
                        ));
                    }
                }
                Ok(ok(format!(
                    "{} disjoint families, tail `{tail}` → 0",
                    sets.len()
                )))
            }
            Certificate::SupportEnvelope(env) => {
                let mut prev: Option<IntervalSet> = None;
                for k in 1..=budget {
                    let s = env.eval(k as i64)?;
                    let supp = self.piecewise_term(k)?.support();
                    if !supp.is_subset_ae(&s) {
                        return Err(fail(
                            k,
                            format!("support escapes envelope on {}", supp.difference(&s)),
                        ));
                    }
                    if let Some(p) = &prev {
                        if !s.is_subset_ae(p) {
                            return Err(fail(k, "envelope not nested".into()));
                        }
                    }
                    prev = Some(s);
                }
                Ok(ok("supports inside nested envelope".into()))
            }
        }
    }

    /// Verifies every declared certificate and the norm bound.
    pub fn verify_all(&self, budget: u64) -> Result<Vec<CertificateReport>> {
        self.verify_bound(budget)?;
        self.certificates
            .iter()
            .map(|c| self.verify_certificate(c, budget))
            .collect()
    }
}

fn tent_term(d: &Domain, k: i64) -> Result<PiecewiseFn> {
    let t = format!("(-2/{k},-1/{k}): {k}, 2; [-1/{k},0): 1; (0,1/{k}]: 1; (1/{k},2/{k}): -{k}, 2");
    FnFormula::parse(&t)?.eval(d, 1)
}

fn apply_transform(u: &PiecewiseFn, t: &Transform) -> Result<PiecewiseFn> {
    match t {
        Transform::Abs => Ok(u.abs()),
        Transform::Poly(c) => {
            let shifted = u.compose_poly(c)?;
            let c0 = eval_poly(c, &Rat::zero());
            Ok(shifted.sub(&PiecewiseFn::constant(u.domain().clone(), c0))?)
        }
    }
}

/// Values of the unbounded pieces of a profile (its limits at `±∞`).
fn base_tails(base: &PiecewiseFn) -> Vec<Rat> {
    base.pieces()
        .iter()
        .filter(|p| !p.interval.is_bounded())
        .map(|p| p.line.intercept.clone())
        .collect()
}

/// First pair `(i, j)` (1-based) of sets meeting in positive measure.
pub(crate) fn first_overlap(sets: &[IntervalSet]) -> Option<(u64, u64, IntervalSet)> {
    let all_finite = sets
        .iter()
        .all(|s| matches!(s.measure(), Measure::Finite(_)));
    if all_finite {
        let total: Rat = sets
            .iter()
            .filter_map(|s| s.measure().finite().cloned())
            .sum();
        let union = sets
            .iter()
            .fold(IntervalSet::empty(), |acc, s| acc.union(s));
        if union.measure() == Measure::Finite(total) {
            return None;
        }
    }
    for j in 1..sets.len() {
        for i in 0..j {
            let w = sets[i].intersect(&sets[j]);
            if !w.is_null() {
                return Some((i as u64 + 1, j as u64 + 1, w));
            }
        }
    }
    None
}
