mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{dom, quick_policy, random_piecewise_family, random_step};
use weaknull_core::corpus;
use weaknull_core::finite_model::{
    atom_formula_holds, enumerate_g, extreme_points_unit_ball, yosida_hewitt, FAVector, FiniteSpace,
};
use weaknull_core::localize::{essential_range, essential_range_at, test_weak_null_at, ExtPoint};
use weaknull_core::piecewise::PiecewiseFn;
use weaknull_core::rat::{q, Rat};
use weaknull_core::restrict::accumulation;
use weaknull_core::restrict::{fa_query, hat, Accumulation, CompositeFA, QuerySet, TriBool};
use weaknull_core::sequences::SequenceFamily;
use weaknull_core::sets::{Bound, Domain, Interval, IntervalSet, Measure};
use weaknull_core::weaknull::{
    intersection_measure, test_weak_null, v_inf, Policy, Subsequence, VerdictClass,
};

fn arb_bound_pair() -> impl Strategy<Value = (Bound, Bound)> {
    let end = prop_oneof![
        8 => (-16i64..=16).prop_map(|n| Bound::Finite(q(n, 8))),
        1 => Just(Bound::NegInf),
        1 => Just(Bound::PosInf),
    ];
    (end.clone(), end).prop_map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
}

fn arb_interval() -> impl Strategy<Value = Interval> {
    (arb_bound_pair(), any::<bool>(), any::<bool>())
        .prop_filter_map("empty interval", |((a, b), lc, hc)| {
            Interval::new(a, b, lc, hc)
        })
}

fn arb_set() -> impl Strategy<Value = IntervalSet> {
    prop::collection::vec(arb_interval(), 0..5).prop_map(IntervalSet::from_parts)
}

fn arb_bounded_set() -> impl Strategy<Value = IntervalSet> {
    arb_set().prop_map(|s| s.intersect(&"[-2,2]".parse().unwrap()))
}

fn arb_step() -> impl Strategy<Value = PiecewiseFn> {
    any::<u64>().prop_map(|seed| random_step(&mut ChaCha8Rng::seed_from_u64(seed)))
}

fn arb_family() -> impl Strategy<Value = SequenceFamily> {
    any::<u64>().prop_map(|seed| random_piecewise_family(&mut ChaCha8Rng::seed_from_u64(seed)))
}

fn arb_alpha() -> impl Strategy<Value = Rat> {
    (1i64..16).prop_map(|n| q(n, 8))
}

fn arb_subsequence() -> impl Strategy<Value = Subsequence> {
    prop_oneof![
        Just(Subsequence::Identity),
        Just(Subsequence::Even),
        Just(Subsequence::Odd),
        Just(Subsequence::Dyadic),
        (1u64..4, 1u64..4).prop_map(|(start, step)| Subsequence::Arithmetic { start, step }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn de_morgan(a in arb_set(), b in arb_set()) {
        prop_assert_eq!(
            a.union(&b).complement_in_reals(),
            a.complement_in_reals().intersect(&b.complement_in_reals())
        );
        prop_assert_eq!(
            a.intersect(&b).complement_in_reals(),
            a.complement_in_reals().union(&b.complement_in_reals())
        );
        prop_assert_eq!(a.complement_in_reals().complement_in_reals(), a);
    }

    #[test]
    fn measure_is_additive(a in arb_set(), b in arb_set()) {
        let b = b.difference(&a);
        prop_assert_eq!(a.union(&b).measure(), a.measure() + b.measure());
    }

    #[test]
    fn normalisation_is_idempotent(s in arb_set()) {
        prop_assert_eq!(IntervalSet::from_parts(s.parts().to_vec()), s.clone());
        let doubled = IntervalSet::from_parts(s.parts().iter().chain(s.parts()).cloned());
        prop_assert_eq!(doubled, s);
    }

    #[test]
    fn complement_measure(a in arb_bounded_set()) {
        let x = Domain::parse("[-2,2]").unwrap();
        let c = a.complement(&x).unwrap();
        prop_assert_eq!(c.measure() + a.measure(), Measure::Finite(Rat::int(4)));
    }

    #[test]
    fn superlevel_norm_duality(u in arb_step(), alpha in arb_alpha()) {
        let null = u.superlevel(&alpha).unwrap().is_null();
        prop_assert_eq!(null, u.ess_sup_norm() <= alpha);
    }

    #[test]
    fn min_of_is_pointwise(us in prop::collection::vec(arb_step(), 1..5), i in 0i64..8) {
        let refs: Vec<&PiecewiseFn> = us.iter().collect();
        let m = PiecewiseFn::min_of(&refs).unwrap();
        let x = q(2 * i + 1, 16);
        let want = us.iter().map(|u| u.eval(&x).unwrap()).min().unwrap();
        prop_assert_eq!(m.eval(&x).unwrap(), want);
    }

    #[test]
    fn terms_are_deterministic(f in arb_family(), k in 1u64..20) {
        prop_assert_eq!(f.term(k).unwrap(), f.term(k).unwrap());
    }

    #[test]
    fn translate_superlevels_shift(seed in any::<u64>(), k in 1u64..12, alpha in arb_alpha()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = common::random_profile(&mut rng, seed % 2 == 0);
        let step = q(1, 2);
        let f = SequenceFamily::translate("t", base.clone(), step.clone()).unwrap();
        let moved = base.superlevel(&alpha).unwrap().translate(&-(&step * &Rat::int(k as i64)));
        prop_assert_eq!(f.piecewise_term(k).unwrap().superlevel(&alpha).unwrap(), moved);
    }

    #[test]
    fn criterion_equivalence(f in arb_family(), s in arb_subsequence(), j in 1usize..6, alpha in arb_alpha()) {
        let ks = s.prefix(7).unwrap();
        let m = intersection_measure(&f, &ks, &alpha, j).unwrap();
        let v = v_inf(&f, &ks, j).unwrap();
        prop_assert_eq!(m.is_zero(), v.ess_sup_norm() <= alpha);
        prop_assert_eq!(&m, &v.superlevel(&alpha).unwrap().measure());
        let next = v_inf(&f, &ks, j + 1).unwrap();
        prop_assert!(next.superlevel(&alpha).unwrap().is_subset(&v.superlevel(&alpha).unwrap()));
    }

    #[test]
    fn local_range_inside_global(u in arb_step(), i in 0i64..=8) {
        let x0 = ExtPoint::Finite(q(i, 8));
        let local = essential_range_at(&u, &x0).unwrap();
        prop_assert!(local.is_subset(&essential_range(&u)));
    }

    #[test]
    fn finite_spaces(weights in prop::collection::vec(0i64..5, 1..=4), masses in prop::collection::vec(-4i64..=4, 4)) {
        let s = FiniteSpace::new(weights.iter().map(|&w| Rat::int(w)).collect()).unwrap();
        let nu = FAVector::new((0..s.n()).map(|i| if weights[i] == 0 { Rat::zero() } else { Rat::int(masses[i]) }).collect());
        let (mu, gamma) = yosida_hewitt(&nu);
        prop_assert!(mu.masses.iter().all(Rat::is_zero));
        prop_assert_eq!(gamma, nu);
        let g = enumerate_g(&s);
        for w in &g {
            prop_assert!(atom_formula_holds(&s, w));
        }
        let verts = extreme_points_unit_ball(&s).unwrap();
        let expected = if g.is_empty() { 1 } else { 2 * g.len() };
        prop_assert_eq!(verts.len(), expected);
    }

    #[test]
    fn single_atoms_are_dirac_or_zero(c in 1i64..8, left in 0i64..2, right in 0i64..2, escape in any::<bool>()) {
        let base = if escape {
            format!("(0, {c}/(8*l))")
        } else if left + right == 0 {
            format!("({c}/8, {c}/8 + 1/(16*l))")
        } else {
            format!("({c}/8 - {left}/(16*l), {c}/8 + {right}/(16*l))")
        };
        let domain = dom("(0,1)");
        let nu = CompositeFA::atom(domain.clone(), &base).unwrap();
        let h = hat(&nu).unwrap();
        match h.point_masses.as_slice() {
            [] => prop_assert!(matches!(accumulation(&domain, &nu.atoms[0].1).unwrap(), Accumulation::Infinity)),
            [(x, m)] => {
                prop_assert!(m.is_one());
                for r in 1..8 {
                    let g = Interval::open(x - &Rat::pow2(-r), x + &Rat::pow2(-r)).unwrap();
                    let g = IntervalSet::from(g).intersect(domain.carrier());
                    prop_assert_eq!(fa_query(&nu, &QuerySet::Finite(g)).unwrap().atoms, vec![TriBool::One]);
                }
            }
            other => prop_assert!(false, "{other:?}"),
        }
        prop_assert!(h.total() <= nu.total());
        prop_assert_eq!(h.total() == nu.total(), !h.point_masses.is_empty());
    }

    #[test]
    fn hat_is_monotone(a in arb_set(), b in arb_set()) {
        let nu = corpus::dirac_atom();
        let h = hat(&nu).unwrap();
        let small = a.intersect(&b);
        prop_assert!(h.measure(&small) <= h.measure(&a));
    }

    #[test]
    fn regular_densities_pass_through(s in arb_set(), u in arb_step()) {
        let x = dom("[0,1]");
        let density = PiecewiseFn::parse(x.clone(), "[0,1]: 1").unwrap()
            .add(&PiecewiseFn::parse(x.clone(), &u.to_string().replace("[0,1)", "[0,1]")).unwrap_or_else(|_| PiecewiseFn::zero(x.clone())).abs())
            .unwrap();
        let nu = CompositeFA::density_only(density).unwrap();
        let h = hat(&nu).unwrap();
        let b = s.intersect(x.carrier());
        let direct = fa_query(&nu, &QuerySet::Finite(b.clone())).unwrap();
        prop_assert_eq!(&direct.lower, &direct.upper);
        prop_assert_eq!(h.measure(&b), direct.lower);
    }
}

fn corpus_policy() -> Policy {
    Policy {
        k_max: 32,
        j_max: 8,
        ..quick_policy()
    }
}

#[test]
fn corpus_verdicts_ignore_absolute_values() {
    let p = corpus_policy();
    for f in corpus::families() {
        let a = test_weak_null(&f, &p).unwrap().class();
        let b = test_weak_null(&f.map_abs(), &p).unwrap().class();
        assert_eq!(a, b, "{}", f.name);
    }
}

#[test]
fn squares_of_null_step_families_are_null() {
    let p = corpus_policy();
    for f in corpus::families() {
        let step = f.piecewise_term(1).unwrap().is_step();
        if step && test_weak_null(&f, &p).unwrap().class() == VerdictClass::Null {
            let sq = f.map_poly(&[Rat::zero(), Rat::zero(), Rat::one()]).unwrap();
            assert_eq!(
                test_weak_null(&sq, &p).unwrap().class(),
                VerdictClass::Null,
                "{}",
                f.name
            );
        }
    }
}

#[test]
fn null_families_converge_pointwise() {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let p = corpus_policy();
    let eps = q(1, 128);
    for f in corpus::families() {
        if test_weak_null(&f, &p).unwrap().class() != VerdictClass::Null {
            continue;
        }
        let late: Vec<PiecewiseFn> = (200..=204).map(|k| f.piecewise_term(k).unwrap()).collect();
        let mut tested = 0;
        while tested < 1000 {
            let x = q(rng.gen_range(-4000..4000), rng.gen_range(1..=1000));
            if x.is_zero() || !f.domain.contains(&x) {
                continue;
            }
            for u in &late {
                assert!(u.eval(&x).unwrap().abs() <= eps, "{} at {x}", f.name);
            }
            tested += 1;
        }
    }
}

#[test]
fn null_families_have_shrinking_infima() {
    let p = corpus_policy();
    for f in corpus::families() {
        let v = test_weak_null(&f, &p).unwrap();
        if v.class() != VerdictClass::Null {
            continue;
        }
        let norms: Vec<Rat> = v
            .evidence()
            .rows
            .iter()
            .filter(|r| r.subsequence == "identity")
            .map(|r| r.v_norm.clone())
            .collect();
        assert!(
            norms.windows(2).all(|w| w[1] <= w[0]),
            "{}: {norms:?}",
            f.name
        );
        assert!(norms.last().unwrap() <= &q(1, 8), "{}: {norms:?}", f.name);
    }
}

#[test]
fn global_verdicts_localise() {
    let p = corpus_policy();
    let points = [q(0, 1), q(1, 2), q(-1, 2), q(1, 4), q(3, 1)];
    for f in corpus::families() {
        let global = test_weak_null(&f, &p).unwrap().class();
        let mut sample: Vec<ExtPoint> = points
            .iter()
            .filter(|x| f.domain.carrier().closure().contains(x))
            .cloned()
            .map(ExtPoint::Finite)
            .collect();
        sample.push(ExtPoint::Infinity);
        let local: Vec<VerdictClass> = sample
            .iter()
            .map(|x0| test_weak_null_at(&f, x0, &p).unwrap().class())
            .collect();
        match global {
            VerdictClass::Null => assert!(
                local.iter().all(|c| *c == VerdictClass::Null),
                "{}: {local:?}",
                f.name
            ),
            VerdictClass::NonNull => assert!(
                local.contains(&VerdictClass::NonNull),
                "{}: {local:?}",
                f.name
            ),
            VerdictClass::Inconclusive => {}
        }
    }
}
