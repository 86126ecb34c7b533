//! Restriction to `C₀(X)` of finitely additive measures.
//!
//! A purely finitely additive `{0,1}`-valued measure `ω` is never
//! constructed; it is represented by a nested filter base `B_ℓ` and only
//! the answers forced for every extension are used: `ω(E) = 1` if some
//! `B_ℓ ⊆ E` a.e., `ω(E) = 0` if some `B_ℓ ∩ E` is null, and undetermined
//! otherwise. From these the regular Borel measure `ν̂` representing
//! `v ↦ ∫ v dν` on `C₀(X)` is computed exactly.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::SetFormula;
use crate::piecewise::PiecewiseFn;
use crate::rat::Rat;
use crate::sets::{Bound, Domain, Interval, IntervalSet, Measure};

/// Indices `ℓ` probed when resolving a query.
fn probe_ells() -> impl Iterator<Item = i64> {
    (1..=64).chain((7..=12).map(|j| 1i64 << j))
}

/// Indices over which nesting, positivity and monotone endpoints are checked.
const BASE_CHECK: i64 = 64;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum TriBool {
    Zero,
    One,
    Undetermined,
}

impl fmt::Display for TriBool {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TriBool::Zero => "0",
            TriBool::One => "1",
            TriBool::Undetermined => "?",
        })
    }
}

/// Some `ω ∈ 𝔊` with `ω(B_ℓ) = 1` for every `ℓ`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FilterBaseMeasure {
    pub base: SetFormula,
    /// `(ℓ, B_ℓ ∩ X)` at the probe indices.
    #[serde(skip)]
    probes: Vec<(i64, IntervalSet)>,
}

impl FilterBaseMeasure {
    /// Checks `B_{ℓ+1} ⊆ B_ℓ` and `λ(B_ℓ) > 0` for `ℓ ≤ 64`.
    pub fn new(domain: &Domain, base: SetFormula) -> Result<FilterBaseMeasure> {
        let mut prev: Option<IntervalSet> = None;
        for l in 1..=BASE_CHECK {
            let b = base.eval(l)?.intersect(domain.carrier());
            if b.is_null() {
                return Err(Error::InvalidArgument(format!(
                    "filter base {base} is null at l = {l}"
                )));
            }
            if let Some(p) = &prev {
                if !b.is_subset_ae(p) {
                    return Err(Error::InvalidArgument(format!(
                        "filter base {base} is not nested at l = {l}"
                    )));
                }
            }
            prev = Some(b);
        }
        let probes = probe_ells()
            .map(|l| Ok((l, base.eval(l)?.intersect(domain.carrier()))))
            .collect::<Result<_>>()?;
        Ok(FilterBaseMeasure { base, probes })
    }

    fn probe(&self, l: i64) -> Option<&IntervalSet> {
        self.probes.iter().find(|(m, _)| *m == l).map(|(_, b)| b)
    }

    fn set(&self, domain: &Domain, l: i64) -> Result<IntervalSet> {
        match self.probe(l) {
            Some(b) => Ok(b.clone()),
            None => Ok(self.base.eval(l)?.intersect(domain.carrier())),
        }
    }

    /// Forced value of `ω` on a set squeezed between `lower ⊆ E ⊆ upper`.
    fn query(&self, lower: &IntervalSet, upper: &IntervalSet) -> Result<TriBool> {
        for (_, b) in &self.probes {
            if b.is_subset_ae(lower) {
                return Ok(TriBool::One);
            }
            if b.intersect(upper).is_null() {
                return Ok(TriBool::Zero);
            }
        }
        Ok(TriBool::Undetermined)
    }
}

/// A query set: a finite union of intervals, or `⋃_{k ≥ from} parts(k)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum QuerySet {
    Finite(IntervalSet),
    CountableUnion { parts: SetFormula, from: i64 },
}

/// Terms of a countable union materialised before the tail hull.
const UNION_TERMS: i64 = 64;

impl QuerySet {
    /// `(lower, upper)` with `lower ⊆ E ⊆ upper`; equal for finite unions.
    pub fn squeeze(&self) -> Result<(IntervalSet, IntervalSet)> {
        match self {
            QuerySet::Finite(s) => Ok((s.clone(), s.clone())),
            QuerySet::CountableUnion { parts, from } => {
                let n = from + UNION_TERMS;
                let mut lower = IntervalSet::empty();
                for k in *from..=n {
                    lower = lower.union(&parts.eval(k)?);
                }
                let upper = lower.union(&tail_hull(parts, n)?);
                Ok((lower, upper))
            }
        }
    }
}

impl fmt::Display for QuerySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuerySet::Finite(s) => write!(f, "{s}"),
            QuerySet::CountableUnion { parts, from } => write!(f, "U_{{k>={from}}} {parts}"),
        }
    }
}

/// Closed hull of `⋃_{k > n} parts(k)`, from monotone endpoint sequences
/// and their limits.
fn tail_hull(parts: &SetFormula, n: i64) -> Result<IntervalSet> {
    let mut hull = IntervalSet::empty();
    for p in parts.parts() {
        let mut ends = Vec::new();
        for e in [&p.lo, &p.hi] {
            let seq: Vec<Bound> = (n + 1..=n + BASE_CHECK)
                .map(|k| e.eval(k))
                .collect::<Result<_>>()?;
            let up = seq.windows(2).all(|w| w[0] <= w[1]);
            let down = seq.windows(2).all(|w| w[0] >= w[1]);
            if !up && !down {
                return Err(Error::UnsupportedOracle(format!(
                    "endpoint of {parts} is not monotone"
                )));
            }
            let lim = e.limit().ok_or_else(|| {
                Error::UnsupportedOracle(format!("endpoint of {parts} has no limit"))
            })?;
            let first = seq[0].clone();
            ends.push(if first <= lim {
                (first, lim)
            } else {
                (lim, first)
            });
        }
        let lo = ends[0].0.clone();
        let hi = ends[1].1.clone();
        if lo <= hi {
            hull = hull.union(&Interval::new(lo, hi, true, true).into());
        }
    }
    Ok(hull)
}

/// `ν = Σ c_i ω_i + g·λ` with `c_i > 0` and integrable `g ≥ 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompositeFA {
    pub domain: Domain,
    pub atoms: Vec<(Rat, FilterBaseMeasure)>,
    pub density: PiecewiseFn,
}

impl CompositeFA {
    pub fn new(
        domain: Domain,
        atoms: Vec<(Rat, SetFormula)>,
        density: PiecewiseFn,
    ) -> Result<CompositeFA> {
        if density.domain() != &domain {
            return Err(Error::InvalidArgument(
                "density lives on a different domain".into(),
            ));
        }
        if density.ess_bounds().is_some_and(|(lo, _)| lo.is_negative()) {
            return Err(Error::InvalidArgument(
                "density must be non-negative".into(),
            ));
        }
        if density.integral_over(domain.carrier()).is_none() {
            return Err(Error::InvalidArgument("density is not integrable".into()));
        }
        let atoms = atoms
            .into_iter()
            .map(|(c, b)| {
                if !c.is_positive() {
                    return Err(Error::InvalidArgument(format!(
                        "atom coefficient {c} must be positive"
                    )));
                }
                Ok((c, FilterBaseMeasure::new(&domain, b)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CompositeFA {
            domain,
            atoms,
            density,
        })
    }

    pub fn atom(domain: Domain, base: &str) -> Result<CompositeFA> {
        let density = PiecewiseFn::zero(domain.clone());
        CompositeFA::new(
            domain,
            vec![(Rat::one(), SetFormula::parse(base)?)],
            density,
        )
    }

    pub fn density_only(density: PiecewiseFn) -> Result<CompositeFA> {
        CompositeFA::new(density.domain().clone(), Vec::new(), density)
    }

    /// `ν(X)`.
    pub fn total(&self) -> Rat {
        let atoms: Rat = self.atoms.iter().map(|(c, _)| c.clone()).sum();
        atoms
            + self
                .density
                .integral_over(self.domain.carrier())
                .expect("integrable")
    }

    fn density_on(&self, s: &IntervalSet) -> Rat {
        self.density.integral_over(s).expect("integrable")
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FaQuery {
    pub lower: Rat,
    pub upper: Rat,
    pub determined: bool,
    pub atoms: Vec<TriBool>,
}

/// Bounds on `ν(E)` valid for every extension of the filter bases.
pub fn fa_query(nu: &CompositeFA, e: &QuerySet) -> Result<FaQuery> {
    let (lower_set, upper_set) = e.squeeze()?;
    let lower_set = lower_set.intersect(nu.domain.carrier());
    let upper_set = upper_set.intersect(nu.domain.carrier());
    let mut lower = nu.density_on(&lower_set);
    let mut upper = nu.density_on(&upper_set);
    let mut answers = Vec::with_capacity(nu.atoms.len());
    for (c, w) in &nu.atoms {
        let t = w.query(&lower_set, &upper_set)?;
        match t {
            TriBool::One => {
                lower = lower + c;
                upper = upper + c;
            }
            TriBool::Undetermined => upper = upper + c,
            TriBool::Zero => {}
        }
        answers.push(t);
    }
    Ok(FaQuery {
        lower,
        upper,
        determined: answers.iter().all(|t| *t != TriBool::Undetermined),
        atoms: answers,
    })
}

fn fa_finite(nu: &CompositeFA, s: &IntervalSet) -> Result<FaQuery> {
    fa_query(nu, &QuerySet::Finite(s.clone()))
}

/// `Σ m_j δ_{x_j} + g·λ`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RegularBorel {
    pub point_masses: Vec<(Rat, Rat)>,
    #[serde(serialize_with = "show")]
    pub density: PiecewiseFn,
}

fn show<S: serde::Serializer>(u: &PiecewiseFn, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(u)
}

impl RegularBorel {
    pub fn measure(&self, b: &IntervalSet) -> Rat {
        let points: Rat = self
            .point_masses
            .iter()
            .filter(|(x, _)| b.contains(x))
            .map(|(_, m)| m.clone())
            .sum();
        points + self.density.integral_over(b).expect("integrable")
    }

    pub fn total(&self) -> Rat {
        self.measure(self.density.domain().carrier())
    }

    pub fn point_mass_total(&self) -> Rat {
        self.point_masses.iter().map(|(_, m)| m.clone()).sum()
    }
}

impl fmt::Display for RegularBorel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .point_masses
            .iter()
            .map(|(x, m)| format!("{m}*delta_{x}"))
            .collect();
        if self.density.ess_sup_norm().is_positive() {
            parts.push(format!("({})*lambda", self.density));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Where a filter base concentrates in `X∞`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum Accumulation {
    /// At `x0 ∈ X`, with some `B_ℓ` of compact closure in `X`.
    Point(Rat),
    /// At the point at infinity: every compact eventually misses the base.
    Infinity,
}

/// Limit analysis of a base with monotone endpoints.
pub fn accumulation(domain: &Domain, w: &FilterBaseMeasure) -> Result<Accumulation> {
    let mut limits: Vec<(Bound, Bound)> = Vec::new();
    for p in w.base.parts() {
        let alive = p
            .eval(BASE_CHECK)?
            .is_some_and(|i| !IntervalSet::from(i).intersect(domain.carrier()).is_null());
        if !alive {
            continue;
        }
        for e in [&p.lo, &p.hi] {
            let seq: Vec<Bound> = (1..=BASE_CHECK).map(|k| e.eval(k)).collect::<Result<_>>()?;
            let up = seq.windows(2).all(|w| w[0] <= w[1]);
            let down = seq.windows(2).all(|w| w[0] >= w[1]);
            if !up && !down {
                return Err(Error::UnsupportedOracle(format!(
                    "base {} has a non-monotone endpoint",
                    w.base
                )));
            }
        }
        let lo = p.lo.limit();
        let hi = p.hi.limit();
        match (lo, hi) {
            (Some(a), Some(b)) => limits.push((a, b)),
            _ => {
                return Err(Error::UnsupportedOracle(format!(
                    "base {} has an endpoint without a limit",
                    w.base
                )))
            }
        }
    }
    let unresolved = || {
        Error::UnsupportedOracle(format!(
            "base {} does not shrink to a single point of X∞",
            w.base
        ))
    };
    let (first_lo, first_hi) = limits.first().cloned().ok_or_else(unresolved)?;
    if limits.iter().any(|(a, b)| *a != first_lo || *b != first_hi) || first_lo != first_hi {
        if limits
            .iter()
            .all(|(a, b)| a == b && matches!(a, Bound::PosInf | Bound::NegInf))
        {
            return Ok(Accumulation::Infinity);
        }
        return Err(unresolved());
    }
    match first_lo {
        Bound::Finite(x) => {
            if domain.contains(&x) {
                let compact = (1..=BASE_CHECK).any(|l| {
                    w.set(domain, l)
                        .map(|b| {
                            domain.is_compact_in(&b.closure().intersect(domain.carrier()))
                                && b.closure().is_subset(domain.carrier())
                        })
                        .unwrap_or(false)
                });
                if compact {
                    Ok(Accumulation::Point(x))
                } else {
                    Err(unresolved())
                }
            } else {
                Ok(Accumulation::Infinity)
            }
        }
        _ => Ok(Accumulation::Infinity),
    }
}

/// The regular Borel measure `ν̂` with `∫ v dν̂ = ∫ v dν` for `v ∈ C₀(X)`.
///
/// Each atom becomes `c·δ_{x0}` or vanishes; the density passes through.
/// The atom part is cross-checked against `sup_{K ⊆ G} ν(K)` on a grid of
/// open sets `G`.
pub fn hat(nu: &CompositeFA) -> Result<RegularBorel> {
    let mut masses: BTreeMap<Rat, Rat> = BTreeMap::new();
    for (c, w) in &nu.atoms {
        if let Accumulation::Point(x) = accumulation(&nu.domain, w)? {
            let e = masses.entry(x).or_insert_with(Rat::zero);
            *e = &*e + c;
        }
    }
    let out = RegularBorel {
        point_masses: masses.into_iter().collect(),
        density: nu.density.clone(),
    };
    validate_against_minimax(nu, &out)?;
    Ok(out)
}

fn test_opens(nu: &CompositeFA, out: &RegularBorel) -> Vec<IntervalSet> {
    let carrier = nu.domain.carrier();
    let mut pts: Vec<Rat> = carrier.endpoints();
    for (x, _) in &out.point_masses {
        pts.push(x.clone());
        for j in 1..=4 {
            let r = Rat::pow2(-j);
            pts.push(x - &r);
            pts.push(x + &r);
        }
    }
    for (_, w) in &nu.atoms {
        if let Ok(b) = w.set(&nu.domain, 1) {
            pts.extend(b.endpoints());
        }
    }
    pts.sort();
    pts.dedup();
    let mut opens = Vec::new();
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            if let Some(g) = Interval::open(a.clone(), b.clone()) {
                let g = IntervalSet::from(g).intersect(carrier);
                if !g.is_null() {
                    opens.push(g);
                }
            }
        }
    }
    opens.push(carrier.interior());
    opens
}

fn validate_against_minimax(nu: &CompositeFA, out: &RegularBorel) -> Result<()> {
    let atoms_only = CompositeFA {
        domain: nu.domain.clone(),
        atoms: nu.atoms.clone(),
        density: PiecewiseFn::zero(nu.domain.clone()),
    };
    for g in test_opens(nu, out) {
        let mut best = Rat::zero();
        for m in 1..=16 {
            let k = g.compact_shrink(&Rat::pow2(-m), &Rat::pow2(m));
            best = best.max(fa_finite(&atoms_only, &k)?.lower);
        }
        let want = out
            .point_masses
            .iter()
            .filter(|(x, _)| g.contains(x))
            .map(|(_, m)| m.clone())
            .sum::<Rat>();
        if best != want {
            return Err(Error::OracleInconsistency(format!(
                "on {g}: inner compact values reach {best} but the point masses give {want}"
            )));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MinimaxSide {
    /// `inf_{G ⊇ B} sup_{K ⊆ G} ν(K)`.
    InfSup,
    /// `sup_{K ⊆ B} inf_{G ⊇ K} ν(G)`.
    SupInf,
}

/// Both minimax orderings evaluated over dyadic test families: opens
/// `G_n = B^{2^-n} ∩ X` and compacts `K_m` shrunk by `2^-m`, with the inner
/// index refined twice as far as the outer one. Returns bounds on the
/// budget-truncated value.
pub fn minimax_value(
    nu: &CompositeFA,
    b: &IntervalSet,
    side: MinimaxSide,
    budget: u32,
) -> Result<(Rat, Rat)> {
    let carrier = nu.domain.carrier();
    let b = b.intersect(carrier);
    let budget = budget.max(1) as i64;
    let thick = |s: &IntervalSet, n: i64| s.open_thickening(&Rat::pow2(-n)).intersect(carrier);
    let shrink = |s: &IntervalSet, m: i64| s.compact_shrink(&Rat::pow2(-m), &Rat::pow2(m));
    let mut outer: Option<(Rat, Rat)> = None;
    for n in 1..=budget {
        let mut inner: Option<(Rat, Rat)> = None;
        match side {
            MinimaxSide::InfSup => {
                let g = thick(&b, n);
                for m in 1..=2 * budget {
                    let q = fa_finite(nu, &shrink(&g, m))?;
                    inner = Some(match inner {
                        Some((lo, hi)) => (lo.max(q.lower), hi.max(q.upper)),
                        None => (q.lower, q.upper),
                    });
                }
                let (lo, hi) = inner.expect("non-empty range");
                outer = Some(match outer {
                    Some((a, c)) => (a.min(lo), c.min(hi)),
                    None => (lo, hi),
                });
            }
            MinimaxSide::SupInf => {
                let k = shrink(&b, n);
                for m in 1..=2 * budget {
                    let q = fa_finite(nu, &thick(&k, m))?;
                    inner = Some(match inner {
                        Some((lo, hi)) => (lo.min(q.lower), hi.min(q.upper)),
                        None => (q.lower, q.upper),
                    });
                }
                let (lo, hi) = inner.expect("non-empty range");
                outer = Some(match outer {
                    Some((a, c)) => (a.max(lo), c.max(hi)),
                    None => (lo, hi),
                });
            }
        }
    }
    Ok(outer.expect("budget is positive"))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SingularityWitness {
    pub point: Rat,
    pub mass: Rat,
    /// `(n, K_n, λ(K_n))` with `ν(K_n) ≥ α` forced.
    pub compacts: Vec<(u64, String, Rat)>,
}

/// Nested compacts `K_n = [x0 − 1/n, x0 + 1/n] ∩ X` around a point mass of
/// `ν̂` of size at least `α`, each with forced `ν(K_n) ≥ α` and
/// `λ(K_n) → 0`.
pub fn singularity_witness(
    nu: &CompositeFA,
    alpha: &Rat,
    budget: u64,
) -> Result<Option<SingularityWitness>> {
    if !alpha.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "alpha {alpha} must be positive"
        )));
    }
    let h = hat(nu)?;
    let Some((x, m)) = h.point_masses.iter().find(|(_, m)| m >= alpha).cloned() else {
        return Ok(None);
    };
    let mut compacts = Vec::new();
    for n in 1..=budget.max(1) {
        let r = Rat::new(1, n as i64);
        let Some(ball) = Interval::closed(&x - &r, &x + &r) else {
            continue;
        };
        let k = IntervalSet::from(ball);
        if !nu.domain.is_compact_in(&k) {
            continue;
        }
        let q = fa_finite(nu, &k)?;
        if &q.lower < alpha {
            return Err(Error::OracleInconsistency(format!(
                "compact {k} around the point mass at {x} has forced value {} < {alpha}",
                q.lower
            )));
        }
        let len = match k.measure() {
            Measure::Finite(v) => v,
            Measure::Infinite => unreachable!("compact sets have finite measure"),
        };
        compacts.push((n, k.to_string(), len));
    }
    Ok(Some(SingularityWitness {
        point: x,
        mass: m,
        compacts,
    }))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct HowdReport {
    pub lower_on_k: Rat,
    pub hat_on_b: Rat,
    pub upper_on_g: Rat,
}

/// Checks `ν(K) ≤ ν̂(B) ≤ ν(G)` for compact `K ⊆ B ⊆ G` open.
pub fn howd_bounds_check(
    nu: &CompositeFA,
    k: &IntervalSet,
    b: &IntervalSet,
    g: &IntervalSet,
) -> Result<HowdReport> {
    if !nu.domain.is_compact_in(k) {
        return Err(Error::InvalidArgument(format!(
            "{k} is not a compact subset of X"
        )));
    }
    if !g.is_open() {
        return Err(Error::InvalidArgument(format!("{g} is not open")));
    }
    if !k.is_subset(b) || !b.is_subset(g) {
        return Err(Error::InvalidArgument(format!(
            "need K ⊆ B ⊆ G, got {k}, {b}, {g}"
        )));
    }
    let lower_on_k = fa_finite(nu, k)?.lower;
    let upper_on_g = fa_finite(nu, &g.intersect(nu.domain.carrier()))?.upper;
    let hat_on_b = hat(nu)?.measure(&b.intersect(nu.domain.carrier()));
    if lower_on_k > hat_on_b {
        return Err(Error::OracleInconsistency(format!(
            "nu(K) = {lower_on_k} exceeds nu-hat(B) = {hat_on_b}"
        )));
    }
    if hat_on_b > upper_on_g {
        return Err(Error::OracleInconsistency(format!(
            "nu-hat(B) = {hat_on_b} exceeds nu(G) = {upper_on_g}"
        )));
    }
    Ok(HowdReport {
        lower_on_k,
        hat_on_b,
        upper_on_g,
    })
}
