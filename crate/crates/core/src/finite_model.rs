//! Finite measure spaces `X = {0, …, n−1}` with the full power set, where
//! the dual-space objects are finite and can be enumerated outright.
//!
//! Subsets are bit masks. A finitely additive set function is determined
//! by its point masses, so [`FAVector`] stores those.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polytope;
use crate::rat::Rat;

/// Largest `n` accepted by the subset enumerations.
pub const MAX_POINTS: usize = 12;
/// Largest `n` for the exhaustive search over `{0,1}`-valued set functions.
pub const MAX_BRUTE_POINTS: usize = 4;
/// Largest `n` for vertex enumeration of the dual unit ball.
pub const MAX_VERTEX_POINTS: usize = 6;

pub type Subset = u32;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FiniteSpace {
    weights: Vec<Rat>,
}

impl FiniteSpace {
    pub fn new(weights: Vec<Rat>) -> Result<FiniteSpace> {
        if weights.is_empty() || weights.len() > MAX_POINTS {
            return Err(Error::InvalidArgument(format!(
                "finite spaces have 1..={MAX_POINTS} points, got {}",
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(Error::InvalidArgument(format!("negative weight {w}")));
        }
        Ok(FiniteSpace { weights })
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn full(&self) -> Subset {
        ((1u64 << self.n()) - 1) as Subset
    }

    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        0..=self.full()
    }

    pub fn measure(&self, e: Subset) -> Rat {
        members(e, self.n()).map(|i| self.weights[i].clone()).sum()
    }

    /// Whether `e` lies in `𝒩`, i.e. consists of zero-weight points.
    pub fn is_null(&self, e: Subset) -> bool {
        members(e, self.n()).all(|i| self.weights[i].is_zero())
    }

    pub fn positive_points(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&i| self.weights[i].is_positive())
            .collect()
    }

    fn check_len(&self, len: usize, what: &str) -> Result<()> {
        if len != self.n() {
            return Err(Error::InvalidArgument(format!(
                "{what} has {len} entries, space has {} points",
                self.n()
            )));
        }
        Ok(())
    }
}

fn members(e: Subset, n: usize) -> impl Iterator<Item = usize> {
    (0..n).filter(move |i| e >> i & 1 == 1)
}

/// A finitely additive set function, stored as point masses.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct FAVector {
    pub masses: Vec<Rat>,
}

impl FAVector {
    pub fn new(masses: Vec<Rat>) -> FAVector {
        FAVector { masses }
    }

    pub fn zero(n: usize) -> FAVector {
        FAVector {
            masses: vec![Rat::zero(); n],
        }
    }

    pub fn eval(&self, e: Subset) -> Rat {
        members(e, self.masses.len())
            .map(|i| self.masses[i].clone())
            .sum()
    }

    pub fn neg(&self) -> FAVector {
        FAVector::new(self.masses.iter().map(|m| -m).collect())
    }

    pub fn vanishes_on_null(&self, s: &FiniteSpace) -> bool {
        self.masses
            .iter()
            .zip(s.weights())
            .all(|(m, w)| w.is_positive() || m.is_zero())
    }

    /// `|ν|(X)`.
    pub fn total_variation(&self) -> Rat {
        self.masses.iter().map(Rat::abs).sum()
    }
}

/// The `{0,1}`-valued measure concentrated at `point`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct ZeroOneMeasure {
    pub point: usize,
}

impl ZeroOneMeasure {
    pub fn eval(&self, e: Subset) -> Rat {
        if e >> self.point & 1 == 1 {
            Rat::one()
        } else {
            Rat::zero()
        }
    }

    pub fn to_fa(&self, n: usize) -> FAVector {
        let mut v = FAVector::zero(n);
        v.masses[self.point] = Rat::one();
        v
    }
}

/// The elements of `𝔊`: one point mass per positive-weight point.
pub fn enumerate_g(s: &FiniteSpace) -> Vec<ZeroOneMeasure> {
    s.positive_points()
        .into_iter()
        .map(|point| ZeroOneMeasure { point })
        .collect()
}

/// Exhaustive search over every `{0,1}`-valued set function on the power
/// set, keeping those with `ω(X) = 1`, finite additivity and `ω(𝒩) = 0`.
/// Each survivor is returned as its table of values indexed by subset.
pub fn bruteforce_g(s: &FiniteSpace) -> Result<Vec<Vec<bool>>> {
    if s.n() > MAX_BRUTE_POINTS {
        return Err(Error::InvalidArgument(format!(
            "brute force is limited to {MAX_BRUTE_POINTS} points"
        )));
    }
    let sets = 1usize << s.n();
    let full = s.full() as usize;
    let mut out = Vec::new();
    for code in 0u64..(1u64 << sets) {
        let w = |e: usize| code >> e & 1 == 1;
        if !w(full) || w(0) {
            continue;
        }
        if (0..sets).any(|e| w(e) && s.is_null(e as Subset)) {
            continue;
        }
        let additive = (0..sets).all(|a| {
            (0..sets)
                .filter(|b| a & b == 0)
                .all(|b| u8::from(w(a | b)) == u8::from(w(a)) + u8::from(w(b)))
        });
        if additive {
            out.push((0..sets).map(w).collect());
        }
    }
    Ok(out)
}

/// A family of subsets of `X`, as a membership table indexed by subset.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SetFamily {
    n: usize,
    members: Vec<bool>,
}

impl SetFamily {
    pub fn from_sets(s: &FiniteSpace, sets: &[Subset]) -> SetFamily {
        let mut members = vec![false; 1 << s.n()];
        for &e in sets {
            members[e as usize] = true;
        }
        SetFamily { n: s.n(), members }
    }

    pub fn contains(&self, e: Subset) -> bool {
        self.members.get(e as usize).copied().unwrap_or(false)
    }

    pub fn sets(&self) -> impl Iterator<Item = Subset> + '_ {
        (0..self.members.len())
            .filter(|&e| self.members[e])
            .map(|e| e as Subset)
    }

    /// Filter axioms: `X ∈ 𝓕`, `𝓕 ∩ 𝒩 = ∅`, closure under intersection and supersets.
    pub fn check_filter(&self, s: &FiniteSpace) -> Result<(), String> {
        let full = s.full();
        if !self.contains(full) {
            return Err("X is not a member".into());
        }
        if let Some(e) = self.sets().find(|&e| s.is_null(e)) {
            return Err(format!("null set {e:#b} is a member"));
        }
        for a in self.sets() {
            for b in self.sets() {
                if !self.contains(a & b) {
                    return Err(format!("{a:#b} and {b:#b} lack their intersection"));
                }
            }
            for sup in 0..=full {
                if sup & a == a && !self.contains(sup) {
                    return Err(format!("superset {sup:#b} of {a:#b} missing"));
                }
            }
        }
        Ok(())
    }

    /// Maximality: no `E ∉ 𝓕` meets every member outside `𝒩`, so no
    /// strictly larger filter exists.
    pub fn check_maximal(&self, s: &FiniteSpace) -> Result<(), String> {
        self.check_filter(s)?;
        for e in s.subsets() {
            if !self.contains(e) && self.sets().all(|f| !s.is_null(e & f)) {
                return Err(format!("{e:#b} can be added"));
            }
        }
        Ok(())
    }
}

/// `𝓕(ω) = {E : ω(E) = 1}`.
pub fn ultrafilter_of(s: &FiniteSpace, w: &ZeroOneMeasure) -> SetFamily {
    let sets: Vec<Subset> = s.subsets().filter(|&e| w.eval(e).is_one()).collect();
    SetFamily::from_sets(s, &sets)
}

/// The measure `ω(E) = [E ∈ 𝓕]` of an ultrafilter.
pub fn measure_of(s: &FiniteSpace, f: &SetFamily) -> Result<ZeroOneMeasure> {
    f.check_maximal(s).map_err(Error::InvalidArgument)?;
    let core = f.sets().fold(s.full(), |acc, e| acc & e);
    let pts: Vec<usize> = members(core, s.n()).collect();
    match pts.as_slice() {
        [p] => Ok(ZeroOneMeasure { point: *p }),
        _ => Err(Error::InvariantViolation(format!(
            "ultrafilter core {core:#b} is not a point"
        ))),
    }
}

/// `ω ↦ 𝓕(ω) ↦ ω′`, checking the filter axioms on the way.
pub fn ultrafilter_roundtrip(s: &FiniteSpace, w: &ZeroOneMeasure) -> Result<ZeroOneMeasure> {
    let f = ultrafilter_of(s, w);
    let back = measure_of(s, &f)?;
    if back != *w {
        return Err(Error::InvariantViolation(format!(
            "roundtrip {w:?} -> {back:?}"
        )));
    }
    Ok(back)
}

/// `∫ u dν = Σ u_i ν_i`.
pub fn integrate(u: &[Rat], nu: &FAVector) -> Result<Rat> {
    if u.len() != nu.masses.len() {
        return Err(Error::InvalidArgument(format!(
            "value vector has {} entries, measure has {}",
            u.len(),
            nu.masses.len()
        )));
    }
    Ok(u.iter().zip(&nu.masses).map(|(a, b)| a * b).sum())
}

/// Half the smallest gap between distinct entries; below it every
/// `ε`-band around a value isolates that value.
fn resolving_eps(values: &[Rat]) -> Rat {
    let distinct: BTreeSet<&Rat> = values.iter().collect();
    let v: Vec<&Rat> = distinct.into_iter().collect();
    v.windows(2)
        .map(|w| w[1] - w[0])
        .min()
        .map(|g| &g / &Rat::int(2))
        .unwrap_or_else(Rat::one)
}

fn omega_band(u: &[Rat], w: &ZeroOneMeasure, alpha: &Rat, eps: &Rat) -> Rat {
    let band = u
        .iter()
        .enumerate()
        .filter(|(_, x)| (*x - alpha).abs() < *eps)
        .fold(0 as Subset, |acc, (i, _)| acc | (1 << i));
    w.eval(band)
}

/// The unique `α` with `ω{|u − α| < ε} = 1` for all `ε > 0`, checked against
/// `∫ u dω = α` and `∫ |u| dω = |α|`.
pub fn dirac_alpha(s: &FiniteSpace, u: &[Rat], w: &ZeroOneMeasure) -> Result<Rat> {
    s.check_len(u.len(), "value vector")?;
    if !s.weights()[w.point].is_positive() {
        return Err(Error::InvalidArgument(format!("point {} is null", w.point)));
    }
    let eps = resolving_eps(u);
    let hits: Vec<&Rat> = u
        .iter()
        .filter(|a| omega_band(u, w, a, &eps).is_one())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let [alpha] = hits.as_slice() else {
        return Err(Error::InvariantViolation(format!(
            "{} candidate values",
            hits.len()
        )));
    };
    let alpha = (*alpha).clone();
    let fa = w.to_fa(s.n());
    let abs_u: Vec<Rat> = u.iter().map(Rat::abs).collect();
    if integrate(u, &fa)? != alpha || integrate(&abs_u, &fa)? != alpha.abs() {
        return Err(Error::InvariantViolation(format!(
            "alpha {alpha} disagrees with the integrals"
        )));
    }
    Ok(alpha)
}

/// Whether `α + δ` satisfies the band condition at `ε = |δ|/2`; used to
/// confirm uniqueness on a grid of perturbations.
pub fn band_holds(u: &[Rat], w: &ZeroOneMeasure, alpha: &Rat, eps: &Rat) -> bool {
    omega_band(u, w, alpha, eps).is_one()
}

/// Both sides of `{∫ u dω : ω ∈ 𝔊} = 𝓡(u)`, computed independently.
pub fn essential_range_bruteforce(s: &FiniteSpace, u: &[Rat]) -> Result<Vec<Rat>> {
    s.check_len(u.len(), "value vector")?;
    let left: BTreeSet<Rat> = enumerate_g(s)
        .iter()
        .map(|w| integrate(u, &w.to_fa(s.n())))
        .collect::<Result<_>>()?;
    let eps = resolving_eps(u);
    let right: BTreeSet<Rat> = u
        .iter()
        .filter(|a| {
            let band = u
                .iter()
                .enumerate()
                .filter(|(_, x)| (*x - *a).abs() < eps)
                .fold(0 as Subset, |acc, (i, _)| acc | (1 << i));
            s.measure(band).is_positive()
        })
        .cloned()
        .collect();
    if left != right {
        return Err(Error::InvariantViolation(format!(
            "integral side {left:?} differs from essential range {right:?}"
        )));
    }
    Ok(left.into_iter().collect())
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Jordan {
    pub plus: FAVector,
    pub minus: FAVector,
    pub total_variation: Rat,
}

/// `ν⁺ = ν ∨ 0` by the sign split, cross-checked on every subset against
/// `sup_{F ⊆ E} ν(F)`, with `ν = ν⁺ − ν⁻` and `ν⁺ ∧ ν⁻ = 0`.
pub fn jordan(s: &FiniteSpace, nu: &FAVector) -> Result<Jordan> {
    s.check_len(nu.masses.len(), "measure")?;
    let plus = FAVector::new(
        nu.masses
            .iter()
            .map(|m| m.clone().max(Rat::zero()))
            .collect(),
    );
    let minus = FAVector::new(nu.masses.iter().map(|m| (-m).max(Rat::zero())).collect());
    for e in s.subsets() {
        let sup = subsets_of(e)
            .map(|f| nu.eval(f))
            .max()
            .expect("E has subsets");
        if sup != plus.eval(e) {
            return Err(Error::InvariantViolation(format!(
                "sup formula {sup} vs {} on {e:#b}",
                plus.eval(e)
            )));
        }
        let neg_sup = subsets_of(e)
            .map(|f| nu.neg().eval(f))
            .max()
            .expect("E has subsets");
        if neg_sup != minus.eval(e) {
            return Err(Error::InvariantViolation(format!(
                "negative part mismatch on {e:#b}"
            )));
        }
        let meet = subsets_of(e)
            .map(|f| plus.eval(f) + minus.eval(e & !f))
            .min()
            .expect("E has subsets");
        if !meet.is_zero() {
            return Err(Error::InvariantViolation(format!(
                "positive and negative parts overlap on {e:#b}"
            )));
        }
        if plus.eval(e) - minus.eval(e) != nu.eval(e) {
            return Err(Error::InvariantViolation(format!(
                "decomposition fails on {e:#b}"
            )));
        }
    }
    let total_variation = plus.eval(s.full()) + minus.eval(s.full());
    if total_variation != nu.total_variation() {
        return Err(Error::InvariantViolation("total variation mismatch".into()));
    }
    Ok(Jordan {
        plus,
        minus,
        total_variation,
    })
}

/// All subsets of `e`, including `∅` and `e`.
fn subsets_of(e: Subset) -> impl Iterator<Item = Subset> {
    let mut next = Some(e);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & e) };
        Some(cur)
    })
}

/// `ν = μ + γ` with `μ` purely finitely additive and `γ` countably
/// additive. On a finite space every additive set function is countably
/// additive, so `μ = 0` and `γ = ν`.
pub fn yosida_hewitt(nu: &FAVector) -> (FAVector, FAVector) {
    (FAVector::zero(nu.masses.len()), nu.clone())
}

/// Atom formula `ω(E) = λ(E ∩ E_ω)/λ(E_ω)` with `E_ω = {point}`.
pub fn atom_formula_holds(s: &FiniteSpace, w: &ZeroOneMeasure) -> bool {
    let atom: Subset = 1 << w.point;
    let la = s.measure(atom);
    la.is_positive() && s.subsets().all(|e| w.eval(e) == &s.measure(e & atom) / &la)
}

/// Vertices of `{ν : |ν|(X) ≤ 1, ν = 0 on 𝒩}` by exact vertex
/// enumeration, checked to be exactly `{±ω : ω ∈ 𝔊}`.
pub fn extreme_points_unit_ball(s: &FiniteSpace) -> Result<Vec<FAVector>> {
    if s.n() > MAX_VERTEX_POINTS {
        return Err(Error::InvalidArgument(format!(
            "vertex enumeration is limited to {MAX_VERTEX_POINTS} points"
        )));
    }
    let pos = s.positive_points();
    if pos.is_empty() {
        return Ok(vec![FAVector::zero(s.n())]);
    }
    let (a, b) = polytope::l1_ball(pos.len());
    let mut verts: Vec<FAVector> = polytope::vertices(&a, &b)?
        .into_iter()
        .map(|v| {
            let mut m = vec![Rat::zero(); s.n()];
            for (&i, x) in pos.iter().zip(v) {
                m[i] = x;
            }
            FAVector::new(m)
        })
        .collect();
    verts.sort();
    let mut expected: Vec<FAVector> = enumerate_g(s)
        .iter()
        .flat_map(|w| {
            let v = w.to_fa(s.n());
            [v.neg(), v]
        })
        .collect();
    expected.sort();
    if verts != expected {
        return Err(Error::InvariantViolation(format!(
            "vertices {verts:?} differ from the signed 0-1 measures {expected:?}"
        )));
    }
    Ok(verts)
}

/// A sequence of value vectors `u_1, u_2, …` given by a finite prefix
/// followed by a repeating cycle.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EventuallyPeriodic {
    pub prefix: Vec<Vec<Rat>>,
    pub cycle: Vec<Vec<Rat>>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RainwaterReport {
    /// `∫ u_k dν` converges for every `ν` in the dual unit ball.
    pub all_functionals: bool,
    /// `∫ u_k dν` converges at every extreme point.
    pub extreme_points: bool,
}

/// Convergence of `∫ u_k dν` over the whole dual ball against convergence
/// at its extreme points only. The sequence converges against `ν` iff `ν`
/// is constant on the cycle; the ball spans the non-null coordinates, so
/// the first side holds iff all cycle vectors agree there.
pub fn rainwater_check(s: &FiniteSpace, seq: &EventuallyPeriodic) -> Result<RainwaterReport> {
    if seq.cycle.is_empty() {
        return Err(Error::InvalidArgument("empty cycle".into()));
    }
    for v in seq.prefix.iter().chain(&seq.cycle) {
        s.check_len(v.len(), "value vector")?;
    }
    let pos = s.positive_points();
    let first = &seq.cycle[0];
    let all_functionals = seq
        .cycle
        .iter()
        .all(|v| pos.iter().all(|&i| v[i] == first[i]));
    let verts = extreme_points_unit_ball(s)?;
    let mut extreme_points = true;
    for nu in &verts {
        let base = integrate(first, nu)?;
        for v in &seq.cycle {
            if integrate(v, nu)? != base {
                extreme_points = false;
            }
        }
    }
    if all_functionals != extreme_points {
        return Err(Error::InvariantViolation(format!(
            "ball-wide convergence {all_functionals} but extreme-point convergence {extreme_points}"
        )));
    }
    Ok(RainwaterReport {
        all_functionals,
        extreme_points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    fn space(w: &[i64]) -> FiniteSpace {
        FiniteSpace::new(w.iter().map(|&x| Rat::int(x)).collect()).unwrap()
    }

    fn vals(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| Rat::int(x)).collect()
    }

    #[test]
    fn zero_one_measures() {
        assert_eq!(enumerate_g(&space(&[1, 1, 1])).len(), 3);
        let g = enumerate_g(&space(&[1, 0, 2]));
        assert_eq!(g.iter().map(|w| w.point).collect::<Vec<_>>(), vec![0, 2]);
        assert!(enumerate_g(&space(&[0, 0])).is_empty());
        assert!(FiniteSpace::new(vec![]).is_err());
        assert!(FiniteSpace::new(vec![Rat::int(-1)]).is_err());
    }

    #[test]
    fn brute_force_finds_only_point_masses() {
        for w in [&[1, 1, 1][..], &[1, 0, 2], &[0, 1, 1, 3], &[2]] {
            let s = space(w);
            let found = bruteforce_g(&s).unwrap();
            let principal: Vec<Vec<bool>> = enumerate_g(&s)
                .iter()
                .map(|w| s.subsets().map(|e| w.eval(e).is_one()).collect())
                .collect();
            assert_eq!(found.len(), principal.len());
            for p in &principal {
                assert!(found.contains(p));
            }
        }
    }

    #[test]
    fn ultrafilters() {
        let s = space(&[1, 1, 1]);
        let w = ZeroOneMeasure { point: 1 };
        let f = ultrafilter_of(&s, &w);
        assert!(f.sets().all(|e| e & 0b010 != 0));
        assert_eq!(f.sets().count(), 4);
        assert_eq!(ultrafilter_roundtrip(&s, &w).unwrap(), w);

        let s4 = space(&[1, 2, 0, 1]);
        for w in enumerate_g(&s4) {
            let f = ultrafilter_of(&s4, &w);
            f.check_filter(&s4).unwrap();
            f.check_maximal(&s4).unwrap();
        }
        let both = SetFamily::from_sets(&s, &[0b011, 0b111]);
        assert!(both.check_filter(&s).is_ok());
        assert!(both.check_maximal(&s).is_err());
        assert!(measure_of(&s, &both).is_err());
    }

    #[test]
    fn integrals() {
        let s = space(&[1, 1, 1]);
        let u = vals(&[3, 3, 5]);
        assert_eq!(
            integrate(&u, &ZeroOneMeasure { point: 2 }.to_fa(3)).unwrap(),
            Rat::int(5)
        );
        assert_eq!(integrate(&u, &FAVector::zero(3)).unwrap(), Rat::zero());
        let mixed = FAVector::new(vec![q(1, 2), q(1, 2), Rat::zero()]);
        assert_eq!(integrate(&vals(&[1, -1, 7]), &mixed).unwrap(), Rat::zero());
        assert!(integrate(&vals(&[1]), &mixed).is_err());

        let w0 = ZeroOneMeasure { point: 0 };
        assert_eq!(dirac_alpha(&s, &u, &w0).unwrap(), Rat::int(3));
        for n in 0..10 {
            let d = Rat::pow2(-n);
            for delta in [d.clone(), -&d] {
                assert!(!band_holds(
                    &u,
                    &w0,
                    &(Rat::int(3) + &delta),
                    &(&d / &Rat::int(2))
                ));
            }
        }
        let s2 = space(&[1, 1]);
        assert_eq!(
            dirac_alpha(&s2, &vals(&[-2, 4]), &w0).unwrap(),
            Rat::int(-2)
        );
    }

    #[test]
    fn essential_ranges() {
        assert_eq!(
            essential_range_bruteforce(&space(&[1, 1]), &vals(&[0, 1])).unwrap(),
            vals(&[0, 1])
        );
        assert_eq!(
            essential_range_bruteforce(&space(&[1, 0]), &vals(&[0, 9])).unwrap(),
            vals(&[0])
        );
    }

    #[test]
    fn jordan_parts() {
        let s = space(&[1, 1]);
        let j = jordan(&s, &FAVector::new(vals(&[1, -2]))).unwrap();
        assert_eq!(j.plus.masses, vals(&[1, 0]));
        assert_eq!(j.minus.masses, vals(&[0, 2]));
        assert_eq!(j.total_variation, Rat::int(3));
        let pos = jordan(&s, &FAVector::new(vals(&[2, 0]))).unwrap();
        assert_eq!(pos.minus, FAVector::zero(2));
    }

    #[test]
    fn extreme_points() {
        assert_eq!(extreme_points_unit_ball(&space(&[1, 1])).unwrap().len(), 4);
        let v = extreme_points_unit_ball(&space(&[1, 0, 1])).unwrap();
        assert_eq!(v.len(), 4);
        assert!(v.iter().all(|nu| nu.masses[1].is_zero()));
        assert_eq!(
            extreme_points_unit_ball(&space(&[1, 1, 1])).unwrap().len(),
            6
        );
        assert_eq!(
            extreme_points_unit_ball(&space(&[1, 2, 3, 1, 1, 5]))
                .unwrap()
                .len(),
            12
        );
    }

    #[test]
    fn rainwater() {
        let s = space(&[1, 1, 0]);
        let constant = EventuallyPeriodic {
            prefix: vec![vals(&[9, 9, 9])],
            cycle: vec![vals(&[1, 2, 3])],
        };
        let r = rainwater_check(&s, &constant).unwrap();
        assert!(r.all_functionals && r.extreme_points);
        let alternating = EventuallyPeriodic {
            prefix: vec![],
            cycle: vec![vals(&[0, 1, 0]), vals(&[0, -1, 0])],
        };
        let r = rainwater_check(&s, &alternating).unwrap();
        assert!(!r.all_functionals && !r.extreme_points);
        let hidden = EventuallyPeriodic {
            prefix: vec![],
            cycle: vec![vals(&[1, 1, 0]), vals(&[1, 1, 7])],
        };
        assert!(rainwater_check(&s, &hidden).unwrap().all_functionals);
    }

    #[test]
    fn trivial_decompositions() {
        let s = space(&[1, 3, 0]);
        let nu = FAVector::new(vec![q(1, 3), q(-2, 5), Rat::zero()]);
        let (mu, gamma) = yosida_hewitt(&nu);
        assert_eq!(mu, FAVector::zero(3));
        assert_eq!(gamma, nu);
        for w in enumerate_g(&s) {
            assert!(atom_formula_holds(&s, &w));
        }
    }
}
