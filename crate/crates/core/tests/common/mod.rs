#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use weaknull_core::formula::SetFormula;
use weaknull_core::piecewise::PiecewiseFn;
use weaknull_core::rat::{q, Rat};
use weaknull_core::sequences::{Certificate, SequenceFamily};
use weaknull_core::sets::{Domain, IntervalSet};
use weaknull_core::weaknull::{Policy, Subsequence};

pub fn dom(s: &str) -> Domain {
    Domain::parse(s).unwrap()
}

pub fn set(s: &str) -> IntervalSet {
    s.parse().unwrap()
}

pub fn quick_policy() -> Policy {
    Policy {
        alpha_grid: Some(vec![q(1, 8), q(1, 4), q(1, 2), q(3, 4)]),
        strategies: vec![Subsequence::Identity, Subsequence::Odd, Subsequence::Dyadic],
        j_max: 6,
        k_max: 16,
    }
}

fn small_value<R: Rng>(rng: &mut R) -> Rat {
    q(rng.gen_range(-4..=4), 4)
}

/// A step function on `[0,1)` with breakpoints on the grid `1/8`.
pub fn random_step<R: Rng>(rng: &mut R) -> PiecewiseFn {
    let mut cuts: Vec<i64> = (1..8).filter(|_| rng.gen_bool(0.4)).collect();
    cuts.insert(0, 0);
    cuts.push(8);
    let src = cuts
        .windows(2)
        .map(|w| format!("[{}/8,{}/8): {}", w[0], w[1], small_value(rng)))
        .collect::<Vec<_>>()
        .join("; ");
    PiecewiseFn::parse(dom("[0,1)"), &src).unwrap()
}

/// A step profile on `ℝ` supported in `[-2, 2)`, plus optional constant tails.
pub fn random_profile<R: Rng>(rng: &mut R, tails: bool) -> PiecewiseFn {
    let mut parts = Vec::new();
    if tails {
        parts.push(format!("(-inf,-2): {}", small_value(rng)));
    }
    for a in -4..4 {
        if rng.gen_bool(0.5) {
            parts.push(format!("[{}/2,{}/2): {}", a, a + 1, small_value(rng)));
        }
    }
    if tails {
        parts.push(format!("[2,inf): {}", small_value(rng)));
    }
    if parts.is_empty() {
        parts.push("[0,1): 1".into());
    }
    PiecewiseFn::parse(Domain::real_line(), &parts.join("; ")).unwrap()
}

/// Random families from shapes the engine can decide.
pub fn random_family<R: Rng>(rng: &mut R) -> SequenceFamily {
    let fracs = [q(1, 1), q(5, 4), q(3, 2), q(7, 4), q(2, 1)];
    match rng.gen_range(0..5) {
        0 => {
            let n = rng.gen_range(1..=4);
            SequenceFamily::explicit("list", (0..n).map(|_| random_step(rng)).collect()).unwrap()
        }
        1 => {
            let i = rng.gen_range(0..4);
            let j = rng.gen_range(i + 1..5);
            let s = rng.gen_range(0..3);
            let f = SequenceFamily::indicator(
                "blocks",
                dom("[0,1)"),
                &format!("[{}/2^(k+{s}), {}/2^(k+{s}))", fracs[i], fracs[j]),
            )
            .unwrap()
            .with(Certificate::DisjointSupports);
            let c = [q(1, 2), q(-1, 1), q(3, 4), q(1, 1)]
                .choose(rng)
                .unwrap()
                .clone();
            f.map_poly(&[Rat::zero(), c]).unwrap()
        }
        2 => {
            let step = [q(1, 1), q(-1, 1), q(1, 2), q(-1, 2)]
                .choose(rng)
                .unwrap()
                .clone();
            SequenceFamily::translate("bump", random_profile(rng, false), step)
                .unwrap()
                .with(Certificate::EscapeBound)
        }
        3 => {
            let c = fracs[rng.gen_range(0..5)].clone();
            let s = rng.gen_range(0..3);
            SequenceFamily::indicator("left", dom("[0,1)"), &format!("[0, {c}/2^(k+{s}))"))
                .unwrap()
                .with(Certificate::SuperlevelKernel {
                    alpha: q(1, 2),
                    kernel: SetFormula::parse(&format!("(0, {c}/2^(k+{s}))")).unwrap(),
                })
        }
        _ => {
            let step = [q(1, 1), q(-1, 1)].choose(rng).unwrap().clone();
            SequenceFamily::translate("tails", random_profile(rng, true), step).unwrap()
        }
    }
}

/// Random piecewise families for the set-measure identities.
pub fn random_piecewise_family<R: Rng>(rng: &mut R) -> SequenceFamily {
    if rng.gen_bool(0.2) {
        return SequenceFamily::tent("tent", dom("(-1,1)"));
    }
    random_family(rng)
}
