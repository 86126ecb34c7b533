//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{dom, quick_policy, random_family, random_piecewise_family};
use weaknull_core::corpus;
use weaknull_core::finite_model::{
    band_holds, bruteforce_g, dirac_alpha, enumerate_g, essential_range_bruteforce,
    extreme_points_unit_ball, jordan, FAVector, FiniteSpace,
};
use weaknull_core::formula::SetFormula;
use weaknull_core::localize::{test_weak_null_at, ExtPoint};
use weaknull_core::piecewise::PiecewiseFn;
use weaknull_core::rat::{q, Rat};
use weaknull_core::restrict::{
    fa_query, hat, howd_bounds_check, singularity_witness, CompositeFA, QuerySet,
};
use weaknull_core::sequences::Evaluable;
use weaknull_core::sets::{Interval, IntervalSet, Measure};
use weaknull_core::weaknull::{
    dyadic_divisibility_point, intersection_measure, prime_power_point, test_weak_null, v_inf,
    witness_lower_bound, witness_lower_bound_big, Policy, Subsequence, VerdictClass,
};

/// Largest prefix length for the exact per-`J` checks.
const J_CHECK: usize = 12;
/// Sampled rationals for pointwise convergence.
const POINTWISE_SAMPLES: usize = 1000;
/// Finite sample of points for the localized verdicts.
const LOCAL_SAMPLES: usize = 20;
/// Slack below the analytic sine bounds.
const SINE_SLACK: f64 = 1e-6;
/// Largest admissible enclosure width.
const ENCLOSURE_WIDTH: f64 = 1e-9;
const FINITE_TRIALS: usize = 100;
const PROPERTY_TRIALS: usize = 1000;
const HOWD_CASES: usize = 50;
const SEED: u64 = 0x5eed_2026;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn policy() -> Policy {
    Policy {
        k_max: 64,
        j_max: J_CHECK,
        ..Policy::default()
    }
}

fn class_of(
    f: &weaknull_core::sequences::SequenceFamily,
    p: &Policy,
) -> Result<VerdictClass, String> {
    test_weak_null(f, p)
        .map(|v| v.class())
        .map_err(|e| format!("{}: {e}", f.name))
}

fn dyadic_triple() -> Outcome {
    let p = policy();
    let u = class_of(&corpus::dyadic_blocks(), &p)?;
    let right = class_of(&corpus::dyadic_blocks_right(), &p)?;
    let left = class_of(&corpus::dyadic_blocks_left(), &p)?;
    ensure(
        u == VerdictClass::Null && right == VerdictClass::Null && left == VerdictClass::NonNull,
        || format!("classes {u}, {right}, {left}"),
    )?;
    let f = corpus::dyadic_blocks_left();
    let ks: Vec<u64> = (1..=J_CHECK as u64).collect();
    for j in 1..=J_CHECK {
        let v = v_inf(&f, &ks, j).map_err(|e| e.to_string())?;
        let tail = IntervalSet::from(
            Interval::closed_open(Rat::zero(), Rat::pow2(-(j as i64 + 1))).unwrap(),
        );
        let want = PiecewiseFn::indicator(dom("(-1,1)"), &tail);
        ensure(v.ae_eq(&want).map_err(|e| e.to_string())?, || {
            format!("v_{j} = {v}")
        })?;
    }
    Ok(format!(
        "u, u- null; u+ non-null; v_J = 1 on (0, 2^-(J+1)) for J <= {J_CHECK}"
    ))
}

fn tents() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let f = corpus::tents();
    for _ in 0..POINTWISE_SAMPLES {
        let den: i64 = rng.gen_range(2..=1000);
        let mut num: i64 = rng.gen_range(1..den);
        if rng.gen_bool(0.5) {
            num = -num;
        }
        let x = q(num, den);
        let cutoff = (Rat::int(2) / x.abs()).ceil();
        let cutoff: u64 = cutoff
            .try_into()
            .map_err(|_| "cutoff overflow".to_string())?;
        for k in cutoff..cutoff + 4 {
            let v = f
                .piecewise_term(k)
                .and_then(|u| u.eval(&x))
                .map_err(|e| e.to_string())?;
            ensure(v.is_zero(), || format!("u_{k}({x}) = {v}"))?;
        }
    }
    let v = test_weak_null(&f, &policy()).map_err(|e| e.to_string())?;
    let w = v.witness().ok_or_else(|| format!("verdict {v}"))?;
    for j in 1..=J_CHECK {
        let row = w
            .rows
            .iter()
            .find(|r| r.j == j)
            .ok_or_else(|| format!("no row for J = {j}"))?;
        let k: i64 = row.k.parse().map_err(|_| "bad index".to_string())?;
        ensure(row.kernel_measure == Some(Measure::Finite(q(2, k))), || {
            format!("row {row:?}")
        })?;
    }
    Ok(format!(
        "u_k(x) -> 0 at {POINTWISE_SAMPLES} rationals; kernel measure 2/k_J for J <= {J_CHECK}"
    ))
}

fn translates() -> Outcome {
    let p = policy();
    let bump = class_of(&corpus::escaping_bump(), &p)?;
    ensure(bump == VerdictClass::Null, || {
        format!("escaping bump {bump}")
    })?;
    let ramp = corpus::ramp_translates();
    let mut points: Vec<Rat> = (0..LOCAL_SAMPLES as i64)
        .map(|i| q(7 * i - 60, 4))
        .collect();
    points.sort();
    for x in &points {
        let v = test_weak_null_at(&ramp, &ExtPoint::Finite(x.clone()), &p)
            .map_err(|e| e.to_string())?;
        ensure(v.class() == VerdictClass::Null, || format!("at {x}: {v}"))?;
    }
    let v = test_weak_null_at(&ramp, &ExtPoint::Infinity, &p).map_err(|e| e.to_string())?;
    ensure(v.class() == VerdictClass::NonNull, || {
        format!("at infinity: {v}")
    })?;
    Ok(format!(
        "bump null; ramp null at {LOCAL_SAMPLES} points, non-null at infinity"
    ))
}

fn sine() -> Outcome {
    let e = Evaluable::SinReciprocal;
    let width = Rat::from_f64(ENCLOSURE_WIDTH).unwrap();
    let prefix = [2u64, 4, 8, 16];
    let (x, pm) = prime_power_point(&prefix).ok_or("no prime power")?;
    let floor = Rat::from_f64((std::f64::consts::PI / 3.0).sin() - SINE_SLACK).unwrap();
    let pp = witness_lower_bound(&e, &prefix, &x, &floor).map_err(|e| e.to_string())?;
    ensure(pp.certified, || {
        format!("prime power {pm}: min {}", pp.min_lower.to_f64())
    })?;
    ensure(pp.values.iter().all(|(_, v)| v.width() <= width), || {
        "wide enclosure".into()
    })?;
    let (ks, xd) = dyadic_divisibility_point(J_CHECK).map_err(|e| e.to_string())?;
    let floor = Rat::from_f64(std::f64::consts::FRAC_1_SQRT_2 - SINE_SLACK).unwrap();
    let dy = witness_lower_bound_big(&e, &ks, &xd, &floor).map_err(|e| e.to_string())?;
    ensure(dy.certified, || {
        format!("chain: min {}", dy.min_lower.to_f64())
    })?;
    ensure(dy.values.iter().all(|(_, v)| v.width() <= width), || {
        "wide enclosure".into()
    })?;
    Ok(format!(
        "prefix (2,4,8,16) via {pm}: {:.9}; divisibility chain J={J_CHECK}: {:.9}",
        pp.min_lower.to_f64(),
        dy.min_lower.to_f64()
    ))
}

fn finite_models() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for trial in 0..FINITE_TRIALS {
        let n = rng.gen_range(1..=4);
        let mut weights: Vec<Rat> = (0..n)
            .map(|_| {
                if rng.gen_bool(0.2) {
                    Rat::zero()
                } else {
                    q(rng.gen_range(1..=9), rng.gen_range(1..=9))
                }
            })
            .collect();
        if weights.iter().all(Rat::is_zero) {
            weights[0] = Rat::one();
        }
        let s = FiniteSpace::new(weights).map_err(|e| e.to_string())?;
        let g = enumerate_g(&s);
        let tables: Vec<Vec<bool>> = g
            .iter()
            .map(|w| s.subsets().map(|e| w.eval(e).is_one()).collect())
            .collect();
        let mut brute = bruteforce_g(&s).map_err(|e| e.to_string())?;
        brute.sort();
        let mut sorted = tables.clone();
        sorted.sort();
        ensure(brute == sorted, || {
            format!("trial {trial}: 0-1 measures differ")
        })?;

        let verts = extreme_points_unit_ball(&s).map_err(|e| format!("trial {trial}: {e}"))?;
        let mut want: Vec<FAVector> = g
            .iter()
            .flat_map(|w| [w.to_fa(n), w.to_fa(n).neg()])
            .collect();
        want.sort();
        ensure(verts == want, || format!("trial {trial}: vertices differ"))?;

        let u: Vec<Rat> = (0..n)
            .map(|_| q(rng.gen_range(-6..=6), rng.gen_range(1..=3)))
            .collect();
        let range =
            essential_range_bruteforce(&s, &u).map_err(|e| format!("trial {trial}: {e}"))?;
        let mut direct: Vec<Rat> = s
            .positive_points()
            .into_iter()
            .map(|i| u[i].clone())
            .collect();
        direct.sort();
        direct.dedup();
        ensure(range == direct, || {
            format!("trial {trial}: range {range:?}")
        })?;

        let nu = FAVector::new(
            (0..n)
                .map(|i| {
                    if s.weights()[i].is_zero() {
                        Rat::zero()
                    } else {
                        q(rng.gen_range(-5..=5), rng.gen_range(1..=4))
                    }
                })
                .collect(),
        );
        jordan(&s, &nu).map_err(|e| format!("trial {trial}: {e}"))?;

        for w in &g {
            let a = dirac_alpha(&s, &u, w).map_err(|e| format!("trial {trial}: {e}"))?;
            ensure(a == u[w.point], || format!("trial {trial}: alpha {a}"))?;
            for e in 0..8 {
                let d = Rat::pow2(-e);
                for delta in [d.clone(), -d.clone()] {
                    let eps = &delta.abs() / &Rat::int(2);
                    ensure(!band_holds(&u, w, &(&a + &delta), &eps), || {
                        format!("trial {trial}: second alpha")
                    })?;
                }
            }
        }
    }
    Ok(format!("{FINITE_TRIALS} random spaces with n <= 4"))
}

fn howd_grid() -> Vec<(IntervalSet, IntervalSet, IntervalSet)> {
    let pairs = [
        (1, 1),
        (1, 3),
        (2, 4),
        (2, 6),
        (3, 5),
        (4, 4),
        (4, 7),
        (5, 6),
        (1, 7),
        (6, 7),
    ];
    pairs
        .iter()
        .map(|&(i, j)| {
            let k = IntervalSet::from(Interval::closed(q(i, 8), q(j, 8)).unwrap());
            let b = IntervalSet::from(
                Interval::closed_open(q(4 * i - 1, 32), q(4 * j + 1, 32)).unwrap(),
            );
            let g = IntervalSet::from(Interval::open(q(2 * i - 1, 16), q(2 * j + 1, 16)).unwrap());
            (k, b, g)
        })
        .collect()
}

fn restrict() -> Outcome {
    let escaping = hat(&corpus::escaping_atom()).map_err(|e| e.to_string())?;
    ensure(
        escaping.point_masses.is_empty() && escaping.total().is_zero(),
        || format!("escaping: {escaping}"),
    )?;
    let dirac = hat(&corpus::dirac_atom()).map_err(|e| e.to_string())?;
    ensure(
        dirac.point_masses == vec![(q(1, 2), Rat::one())] && dirac.total().is_one(),
        || format!("dirac: {dirac}"),
    )?;

    let unit = dom("(0,1)");
    let density = PiecewiseFn::parse(unit.clone(), "(0,1/2): 1; [1/2,1): 2").unwrap();
    let mixed = CompositeFA::new(
        unit.clone(),
        vec![(
            q(1, 3),
            SetFormula::parse("(1/4 - 1/(8*l), 1/4 + 1/(8*l))").unwrap(),
        )],
        density.clone(),
    )
    .map_err(|e| e.to_string())?;
    let measures = [
        corpus::escaping_atom(),
        corpus::dirac_atom(),
        corpus::closed_dirac_atom(),
        CompositeFA::density_only(density).map_err(|e| e.to_string())?,
        mixed,
    ];
    let mut cases = 0;
    for nu in &measures {
        for (k, b, g) in howd_grid() {
            howd_bounds_check(nu, &k, &b, &g).map_err(|e| format!("K={k} B={b} G={g}: {e}"))?;
            cases += 1;
        }
    }
    ensure(cases == HOWD_CASES, || format!("{cases} cases"))?;

    let nu = CompositeFA::atom(unit, "[1/2 - 1/l, 1/2 + 1/l]").map_err(|e| e.to_string())?;
    let w = singularity_witness(&nu, &q(1, 2), 64)
        .map_err(|e| e.to_string())?
        .ok_or("no singularity witness")?;
    ensure(w.compacts.len() > 32, || {
        format!("{} compacts", w.compacts.len())
    })?;
    for (n, kn, len) in &w.compacts {
        ensure(*len == q(2, *n as i64), || format!("lambda(K_{n}) = {len}"))?;
        let k: IntervalSet = kn.parse().map_err(|_| "bad compact".to_string())?;
        let lower = fa_query(&nu, &QuerySet::Finite(k))
            .map_err(|e| e.to_string())?
            .lower;
        ensure(lower.is_one(), || format!("nu(K_{n}) >= {lower}"))?;
    }
    Ok(format!(
        "escaping atom -> 0, centred atom -> delta_1/2; {HOWD_CASES} bound checks; {} compacts with lambda = 2/n",
        w.compacts.len()
    ))
}

fn properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let p = quick_policy();
    let mut composed = 0;
    for trial in 0..PROPERTY_TRIALS {
        let f = random_family(&mut rng);
        let a = class_of(&f, &p).map_err(|e| format!("trial {trial}: {e}"))?;
        let b = class_of(&f.map_abs(), &p).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure(a == b, || {
            format!("trial {trial}: {} gives {a} but |.| gives {b}", f.name)
        })?;
        if a == VerdictClass::Null && f.piecewise_term(1).map(|u| u.is_step()).unwrap_or(false) {
            let sq = f
                .map_poly(&[Rat::zero(), Rat::zero(), Rat::one()])
                .map_err(|e| e.to_string())?;
            let c = class_of(&sq, &p).map_err(|e| format!("trial {trial}: {e}"))?;
            ensure(c == VerdictClass::Null, || {
                format!("trial {trial}: square of {} gives {c}", f.name)
            })?;
            composed += 1;
        }
    }
    let strategies = [
        Subsequence::Identity,
        Subsequence::Even,
        Subsequence::Odd,
        Subsequence::Dyadic,
    ];
    for trial in 0..PROPERTY_TRIALS {
        let f = random_piecewise_family(&mut rng);
        let s = &strategies[rng.gen_range(0..strategies.len())];
        let ks = s.prefix(6).map_err(|e| e.to_string())?;
        let j = rng.gen_range(1..=5);
        let alpha = q(rng.gen_range(1..8), 8);
        let beta = &alpha + &q(rng.gen_range(1..4), 8);
        let m =
            intersection_measure(&f, &ks, &alpha, j).map_err(|e| format!("trial {trial}: {e}"))?;
        let v = v_inf(&f, &ks, j).map_err(|e| e.to_string())?;
        let sa = v.superlevel(&alpha).map_err(|e| e.to_string())?;
        ensure(m == sa.measure(), || {
            format!("trial {trial}: {m} vs {}", sa.measure())
        })?;
        let sb = v.superlevel(&beta).map_err(|e| e.to_string())?;
        ensure(sb.is_subset(&sa), || {
            format!("trial {trial}: not monotone in alpha")
        })?;
        let next = v_inf(&f, &ks, j + 1).map_err(|e| e.to_string())?;
        let sn = next.superlevel(&alpha).map_err(|e| e.to_string())?;
        ensure(sn.is_subset(&sa), || {
            format!("trial {trial}: not monotone in J")
        })?;
    }
    Ok(format!(
        "{PROPERTY_TRIALS} verdict pairs ({composed} squared), {PROPERTY_TRIALS} measure identities"
    ))
}

fn dini() -> Outcome {
    let p = policy();
    let decay = class_of(&corpus::dini_decay(), &p)?;
    let plateau = class_of(&corpus::dini_plateau(), &p)?;
    ensure(
        decay == VerdictClass::Null && plateau == VerdictClass::NonNull,
        || format!("decay {decay}, plateau {plateau}"),
    )?;
    Ok("limit 0 null, limit 1/2 non-null".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (1, "dyadic triple", dyadic_triple),
        (2, "tents", tents),
        (3, "translates", translates),
        (4, "sine witnesses", sine),
        (5, "finite models", finite_models),
        (6, "restriction to C0", restrict),
        (7, "cross-cutting properties", properties),
        (8, "monotone families", dini),
    ];
    let mut failed = 0;
    for (n, name, check) in criteria {
        let t = Instant::now();
        let out = check();
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(d) => println!("criterion {n} PASS {name}: {d} [{secs:.2}s]"),
            Err(d) => {
                failed += 1;
                println!("criterion {n} FAIL {name}: {d} [{secs:.2}s]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
