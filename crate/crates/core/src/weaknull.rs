//! The weak-nullity verdict engine.
//!
//! A bounded sequence `u_k` in `L∞` is weakly null exactly when, for every
//! `α > 0` and every strictly increasing `k_1 < k_2 < …`, some finite
//! intersection `⋂_{j≤J} A_α(u_{k_j})` is null; equivalently
//! `v_J = min_{j≤J} |u_{k_j}|` tends to zero in norm. Finite computation
//! cannot range over all subsequences, so definite verdicts come only from
//! verified certificates:
//!
//! * null: eventually-zero lists, disjoint supports, escaping translates,
//!   monotone envelopes with norm limit `0`, summable disjoint families;
//! * non-null: nested superlevel kernels, monotone envelopes with a
//!   positive norm limit, eventually-constant non-zero lists, and point
//!   witnesses for analytic families.
//!
//! Everything else is [`Verdict::Inconclusive`], carrying the exact
//! measure table over the `(α, subsequence, J)` grid.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::piecewise::PiecewiseFn;
use crate::rat::Rat;
use crate::sequences::{
    Certificate, CertificateReport, EvalPoint, Evaluable, FamilyKind, SequenceFamily,
};
use crate::sets::{Bound, Interval, IntervalSet, Measure};

/// A strictly increasing index sequence `k_1 < k_2 < …`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Subsequence {
    Identity,
    Even,
    Odd,
    /// `k_j = 2^j`.
    Dyadic,
    Arithmetic {
        start: u64,
        step: u64,
    },
    Explicit(Vec<u64>),
    /// `4, 32, 512, …` with `k_{j+1} = 2^{j+2} k_j`, so each term divides the next.
    DivisibilityChain,
}

impl Subsequence {
    /// The `j`-th index (`j ≥ 1`), if representable.
    pub fn nth(&self, j: usize) -> Option<u64> {
        if j == 0 {
            return None;
        }
        let j64 = j as u64;
        match self {
            Subsequence::Identity => Some(j64),
            Subsequence::Even => j64.checked_mul(2),
            Subsequence::Odd => j64.checked_mul(2).map(|x| x - 1),
            Subsequence::Dyadic => 1u64.checked_shl(j as u32).filter(|_| j < 64),
            Subsequence::Arithmetic { start, step } => {
                step.checked_mul(j64 - 1)?.checked_add(*start)
            }
            Subsequence::Explicit(list) => list.get(j - 1).copied(),
            Subsequence::DivisibilityChain => divisibility_chain(j).last()?.to_u64(),
        }
    }

    /// The first `n` indices.
    pub fn prefix(&self, n: usize) -> Result<Vec<u64>> {
        (1..=n)
            .map(|j| {
                self.nth(j).ok_or_else(|| {
                    Error::InvalidArgument(format!("subsequence `{self}` has no index {j}"))
                })
            })
            .collect()
    }

    /// As many of the first `n` indices as are representable.
    pub fn available(&self, n: usize) -> Vec<u64> {
        (1..=n).map_while(|j| self.nth(j)).collect()
    }

    pub fn is_structured(&self) -> bool {
        !matches!(self, Subsequence::Explicit(_))
    }

    pub fn explicit(list: Vec<u64>) -> Result<Subsequence> {
        check_increasing(&list)?;
        Ok(Subsequence::Explicit(list))
    }

    pub fn default_strategies() -> Vec<Subsequence> {
        vec![
            Subsequence::Identity,
            Subsequence::Even,
            Subsequence::Odd,
            Subsequence::Dyadic,
        ]
    }
}

impl fmt::Display for Subsequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subsequence::Identity => f.write_str("identity"),
            Subsequence::Even => f.write_str("even"),
            Subsequence::Odd => f.write_str("odd"),
            Subsequence::Dyadic => f.write_str("dyadic"),
            Subsequence::Arithmetic { start, step } => write!(f, "arith:{start}:{step}"),
            Subsequence::Explicit(l) => {
                let parts: Vec<String> = l.iter().map(u64::to_string).collect();
                f.write_str(&parts.join(","))
            }
            Subsequence::DivisibilityChain => f.write_str("chain"),
        }
    }
}

impl FromStr for Subsequence {
    type Err = Error;

    /// `identity`, `even`, `odd`, `dyadic`, `chain`, `arith:START:STEP` or a
    /// comma-separated increasing list.
    fn from_str(s: &str) -> Result<Subsequence> {
        let t = s.trim();
        Ok(match t {
            "identity" => Subsequence::Identity,
            "even" => Subsequence::Even,
            "odd" => Subsequence::Odd,
            "dyadic" => Subsequence::Dyadic,
            "chain" => Subsequence::DivisibilityChain,
            _ if t.starts_with("arith:") => {
                let mut it = t["arith:".len()..].split(':');
                let parse = |x: Option<&str>| {
                    x.and_then(|v| v.trim().parse::<u64>().ok()).ok_or_else(|| {
                        Error::InvalidArgument(format!("bad arithmetic subsequence `{t}`"))
                    })
                };
                let start = parse(it.next())?;
                let step = parse(it.next())?;
                if start == 0 || step == 0 || it.next().is_some() {
                    return Err(Error::InvalidArgument(format!(
                        "bad arithmetic subsequence `{t}`"
                    )));
                }
                Subsequence::Arithmetic { start, step }
            }
            _ => {
                let list = t
                    .split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<u64>()
                            .map_err(|_| Error::InvalidArgument(format!("bad subsequence `{t}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Subsequence::explicit(list)?
            }
        })
    }
}

fn check_increasing(ks: &[u64]) -> Result<()> {
    if ks.is_empty() {
        return Err(Error::InvalidArgument("empty subsequence".into()));
    }
    if ks[0] == 0 {
        return Err(Error::InvalidArgument("indices start at 1".into()));
    }
    if let Some(w) = ks.windows(2).find(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(format!(
            "subsequence not strictly increasing at {} -> {}",
            w[0], w[1]
        )));
    }
    Ok(())
}

/// Engine settings.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Policy {
    /// Thresholds; `None` derives the default grid from the family.
    pub alpha_grid: Option<Vec<Rat>>,
    pub strategies: Vec<Subsequence>,
    /// Longest prefix `J` tabulated.
    pub j_max: usize,
    /// Certificates and norm bounds are checked for `k ≤ k_max`.
    pub k_max: u64,
}

impl Default for Policy {
    fn default() -> Policy {
        Policy {
            alpha_grid: None,
            strategies: Subsequence::default_strategies(),
            j_max: 12,
            k_max: 256,
        }
    }
}

const GRID_CAP: usize = 32;

/// `{2^-n : n ≤ 8}` together with the distinct positive `|values|` taken by
/// the first terms, largest first, capped at 32 entries.
pub fn default_alpha_grid(f: &SequenceFamily, k_max: u64) -> Result<Vec<Rat>> {
    let mut grid: BTreeSet<Rat> = (0..=8).map(|n| Rat::pow2(-n)).collect();
    if !f.is_evaluable() {
        for k in 1..=k_max.min(16) {
            let u = f.piecewise_term(k)?;
            for p in u.pieces().iter().filter(|p| p.is_proper()) {
                let (a, b) = p.end_values();
                grid.extend([a.abs(), b.abs()].into_iter().filter(Rat::is_positive));
            }
        }
    }
    Ok(grid.into_iter().rev().take(GRID_CAP).collect())
}

/// One line of the `(subsequence, J)` evidence table.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct EvidenceRow {
    pub subsequence: String,
    pub j: usize,
    pub k: u64,
    /// `‖v_J‖∞`.
    pub v_norm: Rat,
    /// `λ(⋂_{j≤J} A_α(u_{k_j}))`, aligned with [`Evidence::alphas`].
    pub measures: Vec<Measure>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Evidence {
    pub alphas: Vec<Rat>,
    pub rows: Vec<EvidenceRow>,
    pub certificates: Vec<CertificateReport>,
    pub trust: String,
    pub notes: Vec<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CountingRow {
    pub epsilon: Rat,
    /// Window outside which `|u| < ε`, when one is used.
    pub window: Option<String>,
    /// Every subsequence has `‖v_J‖∞ ≤ ε` once `J ≥ terms_needed`.
    pub terms_needed: u64,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "scheme", rename_all = "kebab-case")]
pub enum NullScheme {
    EventuallyZero {
        from_index: u64,
    },
    DisjointSupports,
    EscapeBound {
        counting: Vec<CountingRow>,
    },
    MonotoneNormLimit {
        norms: Vec<(u64, Rat)>,
    },
    SummableDisjoint {
        counting: Vec<CountingRow>,
    },
    /// `|F(t)| ≤ L|t|` on the value range, so `v_J` of the mapped family is
    /// at most `L` times that of the inner one.
    Composition {
        inner: Box<NullScheme>,
        lipschitz: Rat,
    },
}

impl NullScheme {
    pub fn id(&self) -> &'static str {
        match self {
            NullScheme::EventuallyZero { .. } => "eventually-zero",
            NullScheme::DisjointSupports => "disjoint-supports",
            NullScheme::EscapeBound { .. } => "escape-bound",
            NullScheme::MonotoneNormLimit { .. } => "monotone-norm-limit",
            NullScheme::SummableDisjoint { .. } => "summable-disjoint",
            NullScheme::Composition { .. } => "composition",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct WitnessRow {
    pub j: usize,
    pub k: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_measure: Option<Measure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intersection_measure: Option<Measure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower_bound: Option<Rat>,
}

/// Evidence that `⋂_{j≤J} A_α(u_{k_j})` stays non-null along one subsequence.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Witness {
    pub source: String,
    pub alpha: Rat,
    pub subsequence: String,
    pub kernel: String,
    pub rows: Vec<WitnessRow>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    NullCertified {
        scheme: NullScheme,
        evidence: Evidence,
    },
    NonNullCertified {
        witness: Witness,
        evidence: Evidence,
    },
    Inconclusive {
        evidence: Evidence,
    },
}

/// Verdict class without payload.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictClass {
    Null,
    NonNull,
    Inconclusive,
}

impl fmt::Display for VerdictClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictClass::Null => "NullCertified",
            VerdictClass::NonNull => "NonNullCertified",
            VerdictClass::Inconclusive => "Inconclusive",
        })
    }
}

impl Verdict {
    pub fn class(&self) -> VerdictClass {
        match self {
            Verdict::NullCertified { .. } => VerdictClass::Null,
            Verdict::NonNullCertified { .. } => VerdictClass::NonNull,
            Verdict::Inconclusive { .. } => VerdictClass::Inconclusive,
        }
    }

    pub fn evidence(&self) -> &Evidence {
        match self {
            Verdict::NullCertified { evidence, .. }
            | Verdict::NonNullCertified { evidence, .. }
            | Verdict::Inconclusive { evidence } => evidence,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::NonNullCertified { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn scheme(&self) -> Option<&NullScheme> {
        match self {
            Verdict::NullCertified { scheme, .. } => Some(scheme),
            _ => None,
        }
    }
}

/// `v_J = min_{j≤J} |u_{k_j}|`.
pub fn v_inf(f: &SequenceFamily, subseq: &[u64], j: usize) -> Result<PiecewiseFn> {
    check_increasing(subseq)?;
    if j == 0 || j > subseq.len() {
        return Err(Error::InvalidArgument(format!(
            "J = {j} outside 1..={}",
            subseq.len()
        )));
    }
    let mut v = f.piecewise_term(subseq[0])?.abs();
    for &k in &subseq[1..j] {
        v = v.min(&f.piecewise_term(k)?.abs())?;
    }
    Ok(v)
}

/// `λ(⋂_{j≤J} A_α(u_{k_j}))`, cross-checked against `λ(A_α(v_J))`.
pub fn intersection_measure(
    f: &SequenceFamily,
    subseq: &[u64],
    alpha: &Rat,
    j: usize,
) -> Result<Measure> {
    let v = v_inf(f, subseq, j)?;
    let mut cut = f.domain.carrier().clone();
    for &k in &subseq[..j] {
        cut = cut.intersect(&f.piecewise_term(k)?.superlevel(alpha)?);
    }
    let direct = cut.measure();
    let via_v = v.superlevel(alpha)?.measure();
    if direct != via_v {
        return Err(Error::InvariantViolation(format!(
            "intersection measure {direct} differs from superlevel measure of v_J {via_v}"
        )));
    }
    Ok(direct)
}

fn evidence_rows(
    f: &SequenceFamily,
    alphas: &[Rat],
    strategies: &[Subsequence],
    j_max: usize,
) -> Result<Vec<EvidenceRow>> {
    let mut rows = Vec::new();
    for s in strategies {
        let ks = s.available(j_max);
        let mut v: Option<PiecewiseFn> = None;
        let mut cuts: Vec<IntervalSet> = vec![f.domain.carrier().clone(); alphas.len()];
        for (idx, &k) in ks.iter().enumerate() {
            let u = f.piecewise_term(k)?.abs();
            let nv = match &v {
                Some(prev) => prev.min(&u)?,
                None => u.clone(),
            };
            let mut measures = Vec::with_capacity(alphas.len());
            for (a, cut) in alphas.iter().zip(cuts.iter_mut()) {
                *cut = cut.intersect(&u.superlevel(a)?);
                let m = cut.measure();
                let check = nv.superlevel(a)?.measure();
                if m != check {
                    return Err(Error::InvariantViolation(format!(
                        "alpha {a}, {s}, J = {}: intersection {m} vs v_J superlevel {check}",
                        idx + 1
                    )));
                }
                measures.push(m);
            }
            rows.push(EvidenceRow {
                subsequence: s.to_string(),
                j: idx + 1,
                k,
                v_norm: nv.ess_sup_norm(),
                measures,
            });
            v = Some(nv);
        }
    }
    Ok(rows)
}

fn trust_statement(k_max: u64, structured: bool) -> String {
    let mut s = format!(
        "certificates verified exactly for k <= {k_max} and trusted beyond; the measure table covers only the listed subsequences"
    );
    if structured {
        s.push_str("; structured subsequence strategies are an engineering choice, not a proof over all subsequences");
    }
    s
}

enum Decision {
    Null(NullScheme),
    NonNull(Witness),
}

/// Decides weak nullity of `f` under `policy`.
pub fn test_weak_null(f: &SequenceFamily, policy: &Policy) -> Result<Verdict> {
    if policy.j_max == 0 {
        return Err(Error::InvalidArgument("J budget must be positive".into()));
    }
    f.verify_bound(policy.k_max)?;
    let certificates = f
        .certificates
        .iter()
        .map(|c| f.verify_certificate(c, policy.k_max))
        .collect::<Result<Vec<_>>>()?;
    let alphas = match &policy.alpha_grid {
        Some(g) => {
            if let Some(a) = g.iter().find(|a| !a.is_positive()) {
                return Err(Error::InvalidArgument(format!(
                    "alpha {a} must be positive"
                )));
            }
            g.clone()
        }
        None => default_alpha_grid(f, policy.k_max)?,
    };
    let structured = policy.strategies.iter().any(Subsequence::is_structured);
    let mut evidence = Evidence {
        alphas: alphas.clone(),
        rows: Vec::new(),
        certificates,
        trust: trust_statement(policy.k_max, structured),
        notes: Vec::new(),
    };

    if let FamilyKind::Evaluable(e) = &f.kind {
        evidence
            .notes
            .push("analytic family: measure table replaced by point witnesses".into());
        return Ok(match evaluable_witness(e, policy.j_max)? {
            Some(w) => Verdict::NonNullCertified {
                witness: w,
                evidence,
            },
            None => Verdict::Inconclusive { evidence },
        });
    }

    evidence.rows = evidence_rows(f, &alphas, &policy.strategies, policy.j_max)?;

    let nulls = null_decisions(f, &alphas, policy)?;
    let nonnulls = nonnull_decisions(f, policy)?;
    if let (Some(n), Some(w)) = (nulls.first(), nonnulls.first()) {
        return Err(Error::CertificateConflict(format!(
            "scheme {} certifies nullity while {} certifies a witness",
            n.id(),
            w.source
        )));
    }
    let decision = nulls
        .into_iter()
        .next()
        .map(Decision::Null)
        .or_else(|| nonnulls.into_iter().next().map(Decision::NonNull));
    Ok(match decision {
        Some(Decision::Null(scheme)) => Verdict::NullCertified { scheme, evidence },
        Some(Decision::NonNull(witness)) => Verdict::NonNullCertified { witness, evidence },
        None => {
            evidence.notes.push(
                "no certificate scheme applies; weak nullity quantifies over all subsequences"
                    .into(),
            );
            Verdict::Inconclusive { evidence }
        }
    })
}

fn null_decisions(f: &SequenceFamily, alphas: &[Rat], policy: &Policy) -> Result<Vec<NullScheme>> {
    let mut out = Vec::new();
    if let FamilyKind::ExplicitList(list) = &f.kind {
        let last = list.last().expect("explicit lists are non-empty");
        if last.ess_sup_norm().is_zero() {
            out.push(NullScheme::EventuallyZero {
                from_index: list.len() as u64,
            });
        }
    }
    let has = |id: &str| f.certificate(id).is_some();
    if has("disjoint-supports") {
        out.push(NullScheme::DisjointSupports);
    }
    if let FamilyKind::Translate { base, step } = &f.kind {
        if f.verify_certificate(&Certificate::EscapeBound, 2).is_ok() {
            out.push(NullScheme::EscapeBound {
                counting: escape_counting(base, step, alphas),
            });
        }
    }
    if let Some(Certificate::NormLimit {
        limit,
        rate: Some(_),
    }) = f.certificate("norm-limit")
    {
        if has("monotone-envelope") && limit.is_zero() {
            let norms = (1..=policy.k_max.min(policy.j_max as u64))
                .map(|k| Ok((k, f.piecewise_term(k)?.ess_sup_norm())))
                .collect::<Result<Vec<_>>>()?;
            out.push(NullScheme::MonotoneNormLimit { norms });
        }
    }
    if let FamilyKind::Mapped { inner, transform } = &f.kind {
        if let Verdict::NullCertified { scheme, .. } = test_weak_null(inner, policy)? {
            out.push(NullScheme::Composition {
                inner: Box::new(scheme),
                lipschitz: transform.lipschitz_at_zero(&inner.bound),
            });
        }
    }
    if has("summable-disjoint") {
        if let Some((FamilyKind::Summable { tail, .. }, lip)) =
            f.summable_core().map(|(c, l)| (&c.kind, l))
        {
            let mut counting = Vec::new();
            for a in alphas {
                let cut =
                    (0..=64i64).find(|&i| tail.eval(i).map(|t| &(&t * &lip) < a).unwrap_or(false));
                if let Some(i) = cut {
                    counting.push(CountingRow {
                        epsilon: a.clone(),
                        window: None,
                        terms_needed: i as u64 + 1,
                    });
                }
            }
            out.push(NullScheme::SummableDisjoint { counting });
        }
    }
    Ok(out)
}

/// For each `ε`, translates of `{|u| ≥ ε} ⊆ [a, b]` by distinct multiples
/// of `step` cannot share a point once more than `(b−a)/|step| + 1` are
/// intersected.
fn escape_counting(base: &PiecewiseFn, step: &Rat, alphas: &[Rat]) -> Vec<CountingRow> {
    alphas
        .iter()
        .map(|eps| {
            let s = base.abs_level_set(eps, false);
            match (
                s.inf().and_then(|b| b.finite()),
                s.sup().and_then(|b| b.finite()),
            ) {
                (Some(a), Some(b)) => {
                    let width = b - a;
                    let n = (&width / &step.abs()).floor() + BigInt::from(2);
                    CountingRow {
                        epsilon: eps.clone(),
                        window: Some(format!("[{a},{b}]")),
                        terms_needed: n.to_u64().unwrap_or(u64::MAX),
                    }
                }
                _ => CountingRow {
                    epsilon: eps.clone(),
                    window: None,
                    terms_needed: 1,
                },
            }
        })
        .collect()
}

type KernelFn<'a> = Box<dyn Fn(u64) -> Result<IntervalSet> + 'a>;

/// A candidate non-null witness: `kernel(k) ⊆ A_α(u_k)` for `k ≥ start`.
pub(crate) struct KernelCandidate<'a> {
    pub source: &'static str,
    pub alpha: Rat,
    pub start: u64,
    pub description: String,
    pub kernel: KernelFn<'a>,
    /// The kernels leave every compact set.
    pub escapes: bool,
}

pub(crate) fn kernel_candidates(f: &SequenceFamily) -> Result<Vec<KernelCandidate<'_>>> {
    let mut out = Vec::new();
    if let FamilyKind::ExplicitList(list) = &f.kind {
        let last = list.last().expect("non-empty");
        let norm = last.ess_sup_norm();
        if norm.is_positive() {
            let alpha = &norm / &Rat::int(2);
            let kernel = last.superlevel(&alpha)?;
            out.push(KernelCandidate {
                source: "eventually-constant",
                escapes: false,
                alpha,
                start: list.len() as u64,
                description: kernel.to_string(),
                kernel: Box::new(move |_| Ok(kernel.clone())),
            });
        }
    }
    if let Some(Certificate::SuperlevelKernel { alpha, kernel }) =
        f.certificate("superlevel-kernel")
    {
        let carrier = f.domain.carrier().clone();
        out.push(KernelCandidate {
            source: "superlevel-kernel",
            escapes: false,
            alpha: alpha.clone(),
            start: 1,
            description: kernel.to_string(),
            kernel: Box::new(move |k| Ok(kernel.eval(k as i64)?.intersect(&carrier))),
        });
    }
    if let Some(Certificate::NormLimit { limit, .. }) = f.certificate("norm-limit") {
        if f.certificate("monotone-envelope").is_some() && limit.is_positive() {
            let alpha = limit / &Rat::int(2);
            let a = alpha.clone();
            out.push(KernelCandidate {
                source: "monotone-norm-limit",
                escapes: false,
                alpha: alpha.clone(),
                start: 1,
                description: format!("A_{alpha}(u_k)"),
                kernel: Box::new(move |k| f.piecewise_term(k)?.superlevel(&a)),
            });
        }
    }
    if let FamilyKind::Translate { base, step } = &f.kind {
        if let Some(c) = translate_tail_kernel(base, step) {
            out.push(c);
        }
    }
    Ok(out)
}

/// A profile tail with value `c ≠ 0` on `(-∞, a)` (or `(b, ∞)`) puts
/// `(-∞, a − k·step)` (or `(b − k·step, ∞)`) inside `A_{|c|/2}(u_k)`.
fn translate_tail_kernel(base: &PiecewiseFn, step: &Rat) -> Option<KernelCandidate<'static>> {
    for p in base.pieces() {
        let value = p.line.intercept.clone();
        if value.is_zero() || p.interval.is_bounded() {
            continue;
        }
        let alpha = &value.abs() / &Rat::int(2);
        let step = step.clone();
        if matches!(p.interval.lo(), Bound::NegInf) {
            let a = p.interval.hi().clone();
            return Some(KernelCandidate {
                source: "translate-tail",
                escapes: true,
                alpha,
                start: 1,
                description: format!("(-inf, {} - k*{step})", show_bound(&a)),
                kernel: Box::new(move |k| {
                    let hi = a.shifted(&-(&step * &Rat::int(k as i64)));
                    Ok(Interval::new(Bound::NegInf, hi, false, false).into())
                }),
            });
        }
        let b = p.interval.lo().clone();
        return Some(KernelCandidate {
            source: "translate-tail",
            escapes: true,
            alpha,
            start: 1,
            description: format!("({} - k*{step}, inf)", show_bound(&b)),
            kernel: Box::new(move |k| {
                let lo = b.shifted(&-(&step * &Rat::int(k as i64)));
                Ok(Interval::new(lo, Bound::PosInf, false, false).into())
            }),
        });
    }
    None
}

fn show_bound(b: &Bound) -> String {
    match b {
        Bound::NegInf => "-inf".into(),
        Bound::PosInf => "inf".into(),
        Bound::Finite(x) => x.to_string(),
    }
}

fn nonnull_decisions(f: &SequenceFamily, policy: &Policy) -> Result<Vec<Witness>> {
    kernel_candidates(f)?
        .iter()
        .map(|c| {
            let ks: Vec<u64> = (c.start..c.start + policy.j_max as u64).collect();
            kernel_witness(f, c, &ks)
        })
        .collect()
}

/// Checks `λ(⋂_{j≤J} kernel(k_j)) > 0` and that this set lies a.e. in
/// `⋂_{j≤J} A_α(u_{k_j})` for every prefix.
fn kernel_witness(f: &SequenceFamily, c: &KernelCandidate<'_>, ks: &[u64]) -> Result<Witness> {
    let mut cut = f.domain.carrier().clone();
    let mut kcut = f.domain.carrier().clone();
    let mut rows = Vec::with_capacity(ks.len());
    for (idx, &k) in ks.iter().enumerate() {
        cut = cut.intersect(&f.piecewise_term(k)?.superlevel(&c.alpha)?);
        kcut = kcut.intersect(&(c.kernel)(k)?);
        let km = kcut.measure();
        if km.is_zero() || !kcut.is_subset_ae(&cut) {
            return Err(Error::InvariantViolation(format!(
                "{} witness breaks at J = {}: kernel {kcut} not inside the intersection",
                c.source,
                idx + 1
            )));
        }
        rows.push(WitnessRow {
            j: idx + 1,
            k: k.to_string(),
            kernel_measure: Some(km),
            intersection_measure: Some(cut.measure()),
            point: None,
            lower_bound: None,
        });
    }
    Ok(Witness {
        source: c.source.into(),
        alpha: c.alpha.clone(),
        subsequence: format!("arith:{}:1", ks[0]),
        kernel: c.description.clone(),
        rows,
    })
}

/// Prime-power point witnesses along the odd indices, where `2` divides no
/// term and every value is `±1`.
fn evaluable_witness(e: &Evaluable, j_max: usize) -> Result<Option<Witness>> {
    let odd = Subsequence::Odd.prefix(j_max)?;
    let mut rows = Vec::new();
    let mut delta: Option<Rat> = None;
    for j in 1..=j_max {
        let prefix = &odd[..j];
        let Some((point, pm)) = prime_power_point(prefix) else {
            return Ok(None);
        };
        if pm != 2 {
            return Ok(None);
        }
        let check = witness_lower_bound(e, prefix, &point, &Rat::new(1, 2))?;
        if !check.certified {
            return Ok(None);
        }
        delta = Some(match delta {
            Some(d) => d.min(check.min_lower.clone()),
            None => check.min_lower.clone(),
        });
        rows.push(WitnessRow {
            j,
            k: prefix[j - 1].to_string(),
            kernel_measure: None,
            intersection_measure: None,
            point: Some(point.to_string()),
            lower_bound: Some(check.min_lower),
        });
    }
    let delta = delta.unwrap_or_else(Rat::zero);
    Ok(Some(Witness {
        source: "prime-power-point".into(),
        alpha: &delta / &Rat::int(2),
        subsequence: Subsequence::Odd.to_string(),
        kernel: "neighbourhood of x_J = 1/(pi*lcm(k_1..k_J)/2) where every term is continuous"
            .into(),
        rows,
    }))
}

/// Result of certifying `|u_{k_j}(x)| ≥ δ` for every `j ≤ J`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PointCheck {
    pub certified: bool,
    pub delta: Rat,
    pub min_lower: Rat,
    pub values: Vec<(String, Enclosure)>,
}

/// Certifies `‖v_J‖∞ ≥ δ` through rigorous enclosures of each
/// `|u_{k_j}(x)|` at a point where every term is continuous. A too-wide
/// enclosure yields `certified = false`, never a false certificate.
pub fn witness_lower_bound(
    e: &Evaluable,
    subseq: &[u64],
    x: &EvalPoint,
    delta: &Rat,
) -> Result<PointCheck> {
    check_increasing(subseq)?;
    let ks: Vec<BigInt> = subseq.iter().map(|&k| BigInt::from(k)).collect();
    witness_lower_bound_big(e, &ks, x, delta)
}

/// As [`witness_lower_bound`] for indices beyond `u64`.
pub fn witness_lower_bound_big(
    e: &Evaluable,
    ks: &[BigInt],
    x: &EvalPoint,
    delta: &Rat,
) -> Result<PointCheck> {
    if !e.contains(x) {
        return Err(Error::OutsideDomain(x.to_string()));
    }
    let mut values = Vec::with_capacity(ks.len());
    let mut min_lower: Option<Rat> = None;
    for k in ks {
        let enc = eval_big_index(e, k, x)?;
        let lower = enc.abs_lower();
        min_lower = Some(match min_lower {
            Some(m) => m.min(lower),
            None => lower,
        });
        values.push((k.to_string(), enc));
    }
    let min_lower = min_lower.unwrap_or_else(Rat::zero);
    let certified = !delta.is_positive() || &min_lower >= delta;
    Ok(PointCheck {
        certified,
        delta: delta.clone(),
        min_lower,
        values,
    })
}

fn eval_big_index(e: &Evaluable, k: &BigInt, x: &EvalPoint) -> Result<Enclosure> {
    match e {
        Evaluable::SinReciprocal => {
            let k = Rat::from(k.clone());
            Ok(match x {
                EvalPoint::Rational(p) => crate::enclosure::sin_rat(&(&k * p).recip()),
                EvalPoint::InversePiMultiple(q) => crate::enclosure::sin_pi_rat(&(q / &k)),
            })
        }
    }
}

pub fn lcm(ks: &[u64]) -> BigInt {
    ks.iter()
        .fold(BigInt::one(), |acc, &k| acc.lcm(&BigInt::from(k)))
}

/// `Some((p, m))` if `v = p^m` with `p` prime and `m ≥ 1`.
fn as_prime_power(v: u64) -> Option<(u64, u32)> {
    if v < 2 {
        return None;
    }
    let p = (2..).find(|d| v.is_multiple_of(*d) || d * d > v).map(|d| {
        if v.is_multiple_of(d) {
            d
        } else {
            v
        }
    })?;
    let mut rest = v;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

/// Smallest prime power `p^m` dividing none of the `k_j`.
pub fn prime_power_nondivisor(ks: &[u64]) -> Option<(u64, u32)> {
    if ks.is_empty() || ks.contains(&0) {
        return None;
    }
    let top = ks.iter().copied().max()?.checked_add(1)?;
    (2..=top)
        .filter_map(|v| as_prime_power(v).map(|pm| (v, pm)))
        .find(|(v, _)| ks.iter().all(|k| k % v != 0))
        .map(|(_, pm)| pm)
}

/// The point `x_J = (π·lcm(k_1..k_J)/p^m)^{-1}` and the prime power used.
pub fn prime_power_point(prefix: &[u64]) -> Option<(EvalPoint, u64)> {
    let (p, m) = prime_power_nondivisor(prefix)?;
    let pm = p.checked_pow(m)?;
    Some((prime_power_point_for(prefix, pm), pm))
}

/// `x_J` for a caller-chosen modulus `p^m`.
pub fn prime_power_point_for(prefix: &[u64], pm: u64) -> EvalPoint {
    EvalPoint::InversePiMultiple(Rat::from(lcm(prefix)) / Rat::int(pm as i64))
}

/// `k'_0 = 1`, `k'_{j+1} = 2^{j+2} k'_j`; returns `k'_1..k'_J`.
pub fn divisibility_chain(j_count: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(j_count);
    let mut k = BigInt::one();
    for j in 0..j_count {
        k <<= j + 2;
        out.push(k.clone());
    }
    out
}

/// Nested-interval point for the divisibility chain: returns the indices
/// `k'_1..k'_J` and `x_J = 1/(m_0 π)`.
pub fn dyadic_divisibility_point(j_count: usize) -> Result<(Vec<BigInt>, EvalPoint)> {
    if j_count == 0 {
        return Err(Error::InvalidArgument("J must be positive".into()));
    }
    let chain = divisibility_chain(j_count);
    let all: Vec<BigInt> = std::iter::once(BigInt::one())
        .chain(chain.iter().cloned())
        .collect();
    let two = Rat::int(2);
    let mut m = Rat::from(all[j_count].clone()) / &two;
    for i in (0..j_count).rev() {
        let len = Rat::from(all[i].clone());
        m = &m - &(&len / &two);
    }
    if m.is_zero() {
        return Err(Error::InvariantViolation(
            "degenerate nested midpoint".into(),
        ));
    }
    Ok((chain, EvalPoint::InversePiMultiple(m)))
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::NullCertified { scheme, .. } => write!(f, "NullCertified({})", scheme.id()),
            Verdict::NonNullCertified { witness, .. } => {
                write!(
                    f,
                    "NonNullCertified(alpha={}, via {})",
                    witness.alpha, witness.source
                )
            }
            Verdict::Inconclusive { .. } => f.write_str("Inconclusive"),
        }
    }
}
