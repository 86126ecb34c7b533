//! Weak convergence at a point of the one-point compactification `X∞`.
//!
//! Neighbourhoods of a finite `x` are the balls `(x−1/ℓ, x+1/ℓ) ∩ X`;
//! neighbourhoods of the point at infinity are `X ∖ K_ℓ` for the compact
//! exhaustion `K_ℓ` of `X`. A sequence is weakly null at `x0` when the
//! subsequence criterion holds on some neighbourhood of `x0`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::formula::SetFormula;
use crate::piecewise::PiecewiseFn;
use crate::rat::Rat;
use crate::sequences::{Certificate, FamilyKind, SequenceFamily};
use crate::sets::{Bound, Domain, Interval, IntervalSet, Measure};
use crate::weaknull::{kernel_candidates, test_weak_null, Policy, Verdict, VerdictClass};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ExtPoint {
    Finite(Rat),
    Infinity,
}

impl fmt::Display for ExtPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtPoint::Finite(x) => write!(f, "{x}"),
            ExtPoint::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<ExtPoint> {
        match s.trim() {
            "inf" | "infinity" => Ok(ExtPoint::Infinity),
            t => t.parse::<Rat>().map(ExtPoint::Finite).map_err(|_| {
                Error::InvalidArgument(format!("bad point `{t}`: expected a rational or `inf`"))
            }),
        }
    }
}

impl Serialize for ExtPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The canonical decreasing neighbourhood base of a point of `X∞`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NeighborhoodBase {
    domain: Domain,
    x0: ExtPoint,
}

impl NeighborhoodBase {
    pub fn new(domain: &Domain, x0: ExtPoint) -> Result<NeighborhoodBase> {
        if let ExtPoint::Finite(x) = &x0 {
            if !domain.carrier().closure().contains(x) {
                return Err(Error::NotInDomain(format!(
                    "{x} is not in the closure of {domain}"
                )));
            }
        }
        Ok(NeighborhoodBase {
            domain: domain.clone(),
            x0,
        })
    }

    pub fn x0(&self) -> &ExtPoint {
        &self.x0
    }

    /// The `ℓ`-th neighbourhood (`ℓ ≥ 1`), open in `X`.
    pub fn nbhd(&self, l: u64) -> IntervalSet {
        let l = l.max(1);
        match &self.x0 {
            ExtPoint::Finite(x) => {
                let r = Rat::new(1, l as i64);
                let ball: IntervalSet = Interval::open(x - &r, x + &r).into();
                ball.intersect(self.domain.carrier())
            }
            ExtPoint::Infinity => self
                .domain
                .carrier()
                .difference(&self.domain.compact_exhaustion(l)),
        }
    }

    /// Whether every neighbourhood meets `s` in positive measure.
    pub fn accumulates(&self, s: &IntervalSet) -> bool {
        s.intersect(self.domain.carrier())
            .parts()
            .iter()
            .filter(|p| !p.is_degenerate())
            .any(|p| self.touches(p))
    }

    /// Whether the closure of a proper interval inside `X` reaches `x0`.
    fn touches(&self, p: &Interval) -> bool {
        match &self.x0 {
            ExtPoint::Finite(x) => p.closure().contains(x),
            ExtPoint::Infinity => [p.lo(), p.hi()].into_iter().any(|b| match b {
                Bound::Finite(e) => !self.domain.contains(e),
                _ => true,
            }),
        }
    }

    /// Limit value of a proper piece at `x0`, if the piece reaches it.
    fn limit_values(&self, u: &PiecewiseFn) -> Vec<Rat> {
        let mut out = Vec::new();
        for p in u.pieces().iter().filter(|p| p.is_proper()) {
            match &self.x0 {
                ExtPoint::Finite(x) if p.interval.closure().contains(x) => out.push(p.line.at(x)),
                ExtPoint::Finite(_) => {}
                ExtPoint::Infinity => {
                    for b in [p.interval.lo(), p.interval.hi()] {
                        match b {
                            Bound::Finite(e) if !self.domain.contains(e) => out.push(p.line.at(e)),
                            Bound::Finite(_) => {}
                            _ => out.push(p.line.intercept.clone()),
                        }
                    }
                }
            }
        }
        out
    }
}

/// `{α : λ{|u − α| < ε} > 0 for all ε > 0}`: the closed value intervals
/// swept by the pieces of positive length.
pub fn essential_range(u: &PiecewiseFn) -> IntervalSet {
    essential_range_on(u, u.domain().carrier())
}

/// Essential range of `u` restricted to `g`.
pub fn essential_range_on(u: &PiecewiseFn, g: &IntervalSet) -> IntervalSet {
    let mut out = IntervalSet::empty();
    for p in u.pieces() {
        for part in IntervalSet::from(p.interval.clone()).intersect(g).parts() {
            if part.is_degenerate() {
                continue;
            }
            let a = p
                .line
                .at_bound(part.lo())
                .expect("unbounded pieces are constant");
            let b = p
                .line
                .at_bound(part.hi())
                .expect("unbounded pieces are constant");
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            out = out.union(&Interval::closed(lo, hi).into());
        }
    }
    out
}

/// Essential range of `u` at `x0`: the values reached with positive measure
/// in every neighbourhood. For piecewise-linear `u` these are the limits at
/// `x0` of the pieces whose closure reaches `x0`.
pub fn essential_range_at(u: &PiecewiseFn, x0: &ExtPoint) -> Result<IntervalSet> {
    let base = NeighborhoodBase::new(u.domain(), x0.clone())?;
    Ok(base
        .limit_values(u)
        .into_iter()
        .fold(IntervalSet::empty(), |acc, v| {
            acc.union(&Interval::point(v).into())
        }))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum LocalNull {
    /// The family is weakly null on all of `X`.
    Global { scheme: String },
    /// `x∞` is isolated: a neighbourhood is empty.
    EmptyNeighbourhood { ell: u64 },
    /// The declared support envelope eventually avoids a neighbourhood.
    SupportEscapes { envelope: String, limit: String },
    /// Translates eventually show only the vanishing far tail near `x0`.
    TranslateWindow { tail: String },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LocalRow {
    pub ell: u64,
    pub j: usize,
    pub k: u64,
    /// `λ(⋂_{j≤J} kernel(k_j) ∩ nbhd(ℓ))`.
    pub kernel_measure: Measure,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LocalWitness {
    pub source: String,
    pub alpha: Rat,
    pub subsequence: String,
    pub kernel: String,
    pub rows: Vec<LocalRow>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LocalEvidence {
    pub global: VerdictClass,
    pub neighbourhoods: Vec<(u64, String)>,
    pub trust: String,
    pub notes: Vec<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum LocalVerdict {
    NullCertified {
        x0: ExtPoint,
        reason: LocalNull,
        evidence: LocalEvidence,
    },
    NonNullCertified {
        x0: ExtPoint,
        witness: LocalWitness,
        evidence: LocalEvidence,
    },
    Inconclusive {
        x0: ExtPoint,
        evidence: LocalEvidence,
    },
}

impl LocalVerdict {
    pub fn class(&self) -> VerdictClass {
        match self {
            LocalVerdict::NullCertified { .. } => VerdictClass::Null,
            LocalVerdict::NonNullCertified { .. } => VerdictClass::NonNull,
            LocalVerdict::Inconclusive { .. } => VerdictClass::Inconclusive,
        }
    }

    pub fn evidence(&self) -> &LocalEvidence {
        match self {
            LocalVerdict::NullCertified { evidence, .. }
            | LocalVerdict::NonNullCertified { evidence, .. }
            | LocalVerdict::Inconclusive { evidence, .. } => evidence,
        }
    }
}

impl fmt::Display for LocalVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalVerdict::NullCertified { x0, reason, .. } => {
                let r = reason_id(reason);
                write!(f, "NullCertified at {x0} ({r})")
            }
            LocalVerdict::NonNullCertified { x0, witness, .. } => {
                write!(
                    f,
                    "NonNullCertified at {x0} (alpha={}, via {})",
                    witness.alpha, witness.source
                )
            }
            LocalVerdict::Inconclusive { x0, .. } => write!(f, "Inconclusive at {x0}"),
        }
    }
}

fn reason_id(r: &LocalNull) -> &'static str {
    match r {
        LocalNull::Global { .. } => "global",
        LocalNull::EmptyNeighbourhood { .. } => "empty-neighbourhood",
        LocalNull::SupportEscapes { .. } => "support-escapes",
        LocalNull::TranslateWindow { .. } => "translate-window",
    }
}

const ELLS: [u64; 5] = [1, 4, 16, 64, 256];

/// Decides weak nullity of `f` at `x0`.
pub fn test_weak_null_at(
    f: &SequenceFamily,
    x0: &ExtPoint,
    policy: &Policy,
) -> Result<LocalVerdict> {
    let base = NeighborhoodBase::new(&f.domain, x0.clone())?;
    let global = test_weak_null(f, policy)?;
    let mut evidence = LocalEvidence {
        global: global.class(),
        neighbourhoods: ELLS.iter().map(|&l| (l, base.nbhd(l).to_string())).collect(),
        trust: format!(
            "certificates verified exactly for k <= {} and trusted beyond; envelope and translate limits are symbolic",
            policy.k_max
        ),
        notes: Vec::new(),
    };
    let x0 = x0.clone();

    let null = local_null(f, &base, &global)?;
    let witness = if f.is_evaluable() {
        None
    } else {
        local_witness(f, &base, policy)?
    };
    match (null, witness) {
        (Some(reason), Some(w)) => Err(Error::CertificateConflict(format!(
            "at {x0}: {} against witness {}",
            reason_id(&reason),
            w.source
        ))),
        (Some(reason), None) => Ok(LocalVerdict::NullCertified {
            x0,
            reason,
            evidence,
        }),
        (None, Some(witness)) => Ok(LocalVerdict::NonNullCertified {
            x0,
            witness,
            evidence,
        }),
        (None, None) => {
            evidence
                .notes
                .push("no neighbourhood certificate applies at this point".into());
            Ok(LocalVerdict::Inconclusive { x0, evidence })
        }
    }
}

fn local_null(
    f: &SequenceFamily,
    base: &NeighborhoodBase,
    global: &Verdict,
) -> Result<Option<LocalNull>> {
    if let Verdict::NullCertified { scheme, .. } = global {
        return Ok(Some(LocalNull::Global {
            scheme: scheme.id().into(),
        }));
    }
    if let Some(&l) = ELLS.iter().find(|&&l| base.nbhd(l).is_null()) {
        return Ok(Some(LocalNull::EmptyNeighbourhood { ell: l }));
    }
    let declared = match f.certificate("support-envelope") {
        Some(Certificate::SupportEnvelope(env)) => Some(env.clone()),
        _ => None,
    };
    for env in declared.into_iter().chain(structural_envelope(f)) {
        if let Some(limit) = envelope_escapes(&env, base) {
            return Ok(Some(LocalNull::SupportEscapes {
                envelope: env.to_string(),
                limit,
            }));
        }
    }
    if let (
        FamilyKind::Translate {
            base: profile,
            step,
        },
        ExtPoint::Finite(_),
    ) = (&f.kind, base.x0())
    {
        if let Some(tail) = far_tail(profile, step) {
            if tail.is_zero() {
                return Ok(Some(LocalNull::TranslateWindow {
                    tail: tail.to_string(),
                }));
            }
        }
    }
    Ok(None)
}

/// Support envelope implied by the family's own shape.
fn structural_envelope(f: &SequenceFamily) -> Option<SetFormula> {
    match &f.kind {
        FamilyKind::Indicator(sets) => Some(sets.clone()),
        FamilyKind::Tent => SetFormula::parse("(-2/k, 2/k)").ok(),
        _ => None,
    }
}

/// Value of the profile tail that slides over every bounded window.
fn far_tail(profile: &PiecewiseFn, step: &Rat) -> Option<Rat> {
    let want_right = step.is_positive();
    if step.is_zero() {
        return None;
    }
    profile
        .pieces()
        .iter()
        .find(|p| {
            if want_right {
                matches!(p.interval.hi(), Bound::PosInf)
            } else {
                matches!(p.interval.lo(), Bound::NegInf)
            }
        })
        .map(|p| p.line.intercept.clone())
}

/// If every envelope part converges to a closed limit interval that stays
/// clear of `x0`, the supports eventually miss a neighbourhood.
fn envelope_escapes(env: &SetFormula, base: &NeighborhoodBase) -> Option<String> {
    let mut limits = Vec::new();
    for part in env.parts() {
        let lo = part.lo.limit()?;
        let hi = part.hi.limit()?;
        limits.push((lo, hi));
    }
    let clear = limits.iter().all(|(lo, hi)| match base.x0() {
        ExtPoint::Finite(x) => {
            let below = matches!(hi, Bound::Finite(h) if h < x) || matches!(hi, Bound::NegInf);
            let above = matches!(lo, Bound::Finite(l) if l > x) || matches!(lo, Bound::PosInf);
            below || above
        }
        ExtPoint::Infinity => match (lo, hi) {
            (Bound::Finite(l), Bound::Finite(h)) => Interval::closed(l.clone(), h.clone())
                .map(|i| IntervalSet::from(i).is_subset(&base.domain.carrier().interior()))
                .unwrap_or(true),
            _ => false,
        },
    });
    clear.then(|| {
        let shown: Vec<String> = limits
            .iter()
            .map(|(a, b)| format!("[{}, {}]", show(a), show(b)))
            .collect();
        shown.join(" u ")
    })
}

fn show(b: &Bound) -> String {
    match b {
        Bound::NegInf => "-inf".into(),
        Bound::PosInf => "inf".into(),
        Bound::Finite(x) => x.to_string(),
    }
}

/// Multiple of the budget at which a kernel must still accumulate at `x0`.
const FAR_PROBE: u64 = 16;

fn local_witness(
    f: &SequenceFamily,
    base: &NeighborhoodBase,
    policy: &Policy,
) -> Result<Option<LocalWitness>> {
    for c in kernel_candidates(f)? {
        if c.escapes && matches!(base.x0(), ExtPoint::Finite(_)) {
            continue;
        }
        let far = c.start + FAR_PROBE * policy.j_max as u64;
        if !base.accumulates(&(c.kernel)(far)?) {
            continue;
        }
        let ks: Vec<u64> = (c.start..c.start + policy.j_max as u64).collect();
        let mut kcut = f.domain.carrier().clone();
        let mut rows = Vec::new();
        let mut ok = true;
        for (idx, &k) in ks.iter().enumerate() {
            let ker = (c.kernel)(k)?;
            if !ker.is_subset_ae(&f.piecewise_term(k)?.superlevel(&c.alpha)?) {
                return Err(Error::InvariantViolation(format!(
                    "{} kernel at k = {k} leaves the superlevel set",
                    c.source
                )));
            }
            kcut = kcut.intersect(&ker);
            if !base.accumulates(&kcut) {
                ok = false;
                break;
            }
            for &l in &ELLS {
                rows.push(LocalRow {
                    ell: l,
                    j: idx + 1,
                    k,
                    kernel_measure: kcut.intersect(&base.nbhd(l)).measure(),
                });
            }
        }
        if ok {
            return Ok(Some(LocalWitness {
                source: c.source.into(),
                alpha: c.alpha,
                subsequence: format!("arith:{}:1", c.start),
                kernel: c.description,
                rows,
            }));
        }
    }
    if let FamilyKind::Translate {
        base: profile,
        step,
    } = &f.kind
    {
        if let (ExtPoint::Finite(x), Some(tail)) = (base.x0(), far_tail(profile, step)) {
            if !tail.is_zero() {
                return translate_window_witness(f, profile, step, x, &tail, policy).map(Some);
            }
        }
    }
    Ok(None)
}

/// Once `x0 + 1` sits inside the far tail, every term is `tail` on the unit
/// ball around `x0`.
fn translate_window_witness(
    f: &SequenceFamily,
    profile: &PiecewiseFn,
    step: &Rat,
    x: &Rat,
    tail: &Rat,
    policy: &Policy,
) -> Result<LocalWitness> {
    let alpha = &tail.abs() / &Rat::int(2);
    let edge = profile
        .pieces()
        .iter()
        .find(|p| !p.interval.is_bounded() && &p.line.intercept == tail)
        .and_then(|p| {
            if step.is_positive() {
                p.interval.lo().finite().cloned()
            } else {
                p.interval.hi().finite().cloned()
            }
        })
        .unwrap_or_else(Rat::zero);
    let one = Rat::one();
    let need = if step.is_positive() {
        (&(&edge - &(x - &one)) / step).ceil()
    } else {
        (&(&edge - &(x + &one)) / step).ceil()
    };
    let start = need
        .max(num_bigint::BigInt::from(1))
        .try_into()
        .unwrap_or(u64::MAX);
    let ball = NeighborhoodBase::new(&f.domain, ExtPoint::Finite(x.clone()))?;
    let mut rows = Vec::new();
    let mut cut = f.domain.carrier().clone();
    for (idx, k) in (start..start + policy.j_max as u64).enumerate() {
        cut = cut.intersect(&f.piecewise_term(k)?.superlevel(&alpha)?);
        let g1 = ball.nbhd(1);
        if !g1.is_subset_ae(&cut) {
            return Err(Error::InvariantViolation(format!(
                "translate window at {x} not covered by the far tail at k = {k}"
            )));
        }
        for &l in &ELLS {
            rows.push(LocalRow {
                ell: l,
                j: idx + 1,
                k,
                kernel_measure: cut.intersect(&ball.nbhd(l)).measure(),
            });
        }
    }
    Ok(LocalWitness {
        source: "translate-window".into(),
        alpha,
        subsequence: format!("arith:{start}:1"),
        kernel: format!("nbhd_1({x})"),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    fn dom(s: &str) -> Domain {
        Domain::parse(s).unwrap()
    }

    fn set(s: &str) -> IntervalSet {
        s.parse().unwrap()
    }

    fn quick() -> Policy {
        Policy {
            k_max: 24,
            j_max: 6,
            ..Policy::default()
        }
    }

    fn ramp() -> SequenceFamily {
        let u = PiecewiseFn::parse(Domain::real_line(), "(-inf,0): 1; [0,1): -1, 1").unwrap();
        SequenceFamily::translate("ramp", u, Rat::one()).unwrap()
    }

    #[test]
    fn parse_points() {
        assert_eq!("inf".parse::<ExtPoint>().unwrap(), ExtPoint::Infinity);
        assert_eq!(
            "1/3".parse::<ExtPoint>().unwrap(),
            ExtPoint::Finite(q(1, 3))
        );
        assert!("x".parse::<ExtPoint>().is_err());
    }

    #[test]
    fn neighbourhoods_shrink() {
        let d = dom("[0,1)");
        let b = NeighborhoodBase::new(&d, ExtPoint::Finite(Rat::zero())).unwrap();
        assert_eq!(b.nbhd(4), set("[0,1/4)"));
        let inf = NeighborhoodBase::new(&d, ExtPoint::Infinity).unwrap();
        assert_eq!(inf.nbhd(4), set("(3/4,1)"));
        let line = NeighborhoodBase::new(&Domain::real_line(), ExtPoint::Infinity).unwrap();
        assert_eq!(line.nbhd(3), set("(-inf,-3) u (3,inf)"));
        assert!(NeighborhoodBase::new(&d, ExtPoint::Finite(Rat::int(2))).is_err());
        let compact = NeighborhoodBase::new(&dom("[0,1]"), ExtPoint::Infinity).unwrap();
        assert!(compact.nbhd(1).is_null());
    }

    #[test]
    fn ranges() {
        let d = dom("[0,1)");
        let chi = PiecewiseFn::indicator(d.clone(), &set("[0,1/2)"));
        assert_eq!(essential_range(&chi), set("[0,0] u [1,1]"));
        assert_eq!(
            essential_range(&PiecewiseFn::constant(d, q(3, 2))),
            set("[3/2,3/2]")
        );
        let tent = SequenceFamily::tent("t", dom("(-1,1)"))
            .piecewise_term(4)
            .unwrap();
        assert_eq!(essential_range(&tent), set("[0,1]"));

        assert_eq!(
            essential_range_at(&chi, &ExtPoint::Finite(q(1, 4))).unwrap(),
            set("[1,1]")
        );
        let profile = ramp().piecewise_term(1).unwrap();
        assert_eq!(
            essential_range_at(&profile, &ExtPoint::Infinity).unwrap(),
            set("[0,0] u [1,1]")
        );
        let centred = PiecewiseFn::indicator(dom("(-1,1)"), &set("(0,1/2)"));
        assert_eq!(
            essential_range_at(&centred, &ExtPoint::Finite(Rat::zero())).unwrap(),
            set("[0,0] u [1,1]")
        );
    }

    #[test]
    fn ramp_translates() {
        assert_eq!(
            test_weak_null(&ramp(), &quick()).unwrap().class(),
            VerdictClass::NonNull
        );
        for x in [q(0, 1), q(-7, 2), q(5, 1)] {
            let v = test_weak_null_at(&ramp(), &ExtPoint::Finite(x), &quick()).unwrap();
            assert_eq!(v.class(), VerdictClass::Null, "{v}");
        }
        let v = test_weak_null_at(&ramp(), &ExtPoint::Infinity, &quick()).unwrap();
        assert_eq!(v.class(), VerdictClass::NonNull);
    }

    #[test]
    fn zero_family_is_null_everywhere() {
        let z = SequenceFamily::explicit("z", vec![PiecewiseFn::zero(dom("(-1,1)"))]).unwrap();
        for x0 in [
            ExtPoint::Finite(Rat::zero()),
            ExtPoint::Finite(q(1, 2)),
            ExtPoint::Infinity,
        ] {
            assert_eq!(
                test_weak_null_at(&z, &x0, &quick()).unwrap().class(),
                VerdictClass::Null
            );
        }
    }

    #[test]
    fn tents_localise_at_the_origin() {
        let t = SequenceFamily::tent("t", dom("(-1,1)"))
            .with(Certificate::SuperlevelKernel {
                alpha: q(1, 2),
                kernel: SetFormula::parse("(-1/k,0) u (0,1/k)").unwrap(),
            })
            .with(Certificate::SupportEnvelope(
                SetFormula::parse("(-2/k,2/k)").unwrap(),
            ));
        let at0 = test_weak_null_at(&t, &ExtPoint::Finite(Rat::zero()), &quick()).unwrap();
        assert_eq!(at0.class(), VerdictClass::NonNull);
        for x0 in [
            ExtPoint::Finite(q(1, 2)),
            ExtPoint::Finite(q(-1, 3)),
            ExtPoint::Infinity,
        ] {
            assert_eq!(
                test_weak_null_at(&t, &x0, &quick()).unwrap().class(),
                VerdictClass::Null,
                "{x0}"
            );
        }
    }

    #[test]
    fn moving_boundary_regression() {
        let f = SequenceFamily::indicator("u", dom("(-1,1)"), "[1/2^(k+1), 1/2^k)")
            .unwrap()
            .with(Certificate::DisjointSupports);
        for k in 1..=6u64 {
            let u = f.piecewise_term(k).unwrap();
            let x = ExtPoint::Finite(Rat::pow2(-(k as i64)));
            assert_eq!(essential_range_at(&u, &x).unwrap(), set("[0,0] u [1,1]"));
        }
        assert_eq!(
            test_weak_null(&f, &quick()).unwrap().class(),
            VerdictClass::Null
        );
        let at0 = test_weak_null_at(&f, &ExtPoint::Finite(Rat::zero()), &quick()).unwrap();
        assert_eq!(at0.class(), VerdictClass::Null);
    }

    #[test]
    fn far_tail_window_witness() {
        let u = PiecewiseFn::parse(Domain::real_line(), "(-inf,0): 0; [0,inf): 1").unwrap();
        let f = SequenceFamily::translate("up", u, Rat::one()).unwrap();
        let v = test_weak_null_at(&f, &ExtPoint::Finite(Rat::int(-5)), &quick()).unwrap();
        assert_eq!(v.class(), VerdictClass::NonNull, "{v}");
    }
}
