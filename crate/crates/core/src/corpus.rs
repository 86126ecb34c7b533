//! Built-in illustrations with their expected outcomes.

use serde::Serialize;

use crate::error::Result;
use crate::formula::{Expr, SetFormula};
use crate::localize::{essential_range_at, test_weak_null_at, ExtPoint};
use crate::piecewise::PiecewiseFn;
use crate::rat::{q, Rat};
use crate::restrict::{hat, singularity_witness, CompositeFA};
use crate::sequences::{Certificate, Evaluable, SequenceFamily};
use crate::sets::{Domain, IntervalSet};
use crate::weaknull::{
    dyadic_divisibility_point, prime_power_point, test_weak_null, witness_lower_bound,
    witness_lower_bound_big, Policy,
};

fn dom(s: &str) -> Domain {
    Domain::parse(s).expect("built-in domain")
}

fn formula(s: &str) -> SetFormula {
    SetFormula::parse(s).expect("built-in formula")
}

/// `χ_{[2^-(k+1), 2^-k)}` on `(-1,1)`.
pub fn dyadic_blocks() -> SequenceFamily {
    SequenceFamily::indicator("dyadic-blocks", dom("(-1,1)"), "[1/2^(k+1), 1/2^k)")
        .expect("built-in family")
        .with(Certificate::DisjointSupports)
}

/// The blocks shifted right by their own half-width.
pub fn dyadic_blocks_right() -> SequenceFamily {
    SequenceFamily::indicator("dyadic-blocks-right", dom("(-1,1)"), "[1/2^k, 3/2^(k+1))")
        .expect("built-in family")
        .with(Certificate::DisjointSupports)
}

/// The blocks shifted left onto `[0, 2^-(k+1))`.
pub fn dyadic_blocks_left() -> SequenceFamily {
    SequenceFamily::indicator("dyadic-blocks-left", dom("(-1,1)"), "[0, 1/2^(k+1))")
        .expect("built-in family")
        .with(Certificate::SuperlevelKernel {
            alpha: q(1, 2),
            kernel: formula("(0, 1/2^(k+1))"),
        })
}

/// `Σ_i 2^-i χ_{A_k^i}` with `A_k^i = [2^-(k+i), 2^-(k+i-1))`.
pub fn weighted_dyadic_sum() -> SequenceFamily {
    SequenceFamily::summable(
        "weighted-dyadic-sum",
        dom("[0,1)"),
        "1/2^i",
        "[1/2^(k+i), 1/2^(k+i-1))",
        8,
        "1/2^i",
    )
    .expect("built-in family")
    .with(Certificate::SummableDisjoint)
}

/// A compactly supported hat translated to the left.
pub fn escaping_bump() -> SequenceFamily {
    let bump = PiecewiseFn::parse(Domain::real_line(), "[0,1): 1, 0; [1,2): -1, 2")
        .expect("built-in profile");
    SequenceFamily::translate("escaping-bump", bump, Rat::one())
        .expect("built-in family")
        .with(Certificate::EscapeBound)
}

/// A profile with `u → 1` at `-∞` and `u → 0` at `+∞`, translated.
pub fn ramp_translates() -> SequenceFamily {
    let u = PiecewiseFn::parse(Domain::real_line(), "(-inf,0): 1; [0,1): -1, 1")
        .expect("built-in profile");
    SequenceFamily::translate("ramp-translates", u, Rat::one()).expect("built-in family")
}

pub fn sine_reciprocal() -> SequenceFamily {
    SequenceFamily::sin_reciprocal("sine-reciprocal")
}

/// Height-one tents shrinking to the origin.
pub fn tents() -> SequenceFamily {
    SequenceFamily::tent("tents", dom("(-1,1)"))
        .with(Certificate::SuperlevelKernel {
            alpha: q(1, 2),
            kernel: formula("(-1/k,0) u (0,1/k)"),
        })
        .with(Certificate::SupportEnvelope(formula("(-2/k,2/k)")))
}

/// `u_k ≡ 1/k`, monotone with norm limit `0`.
pub fn dini_decay() -> SequenceFamily {
    SequenceFamily::formula("dini-decay", dom("[0,1)"), "[0,1): 1/k", Rat::one())
        .expect("built-in family")
        .with(Certificate::MonotoneEnvelope)
        .with(Certificate::NormLimit {
            limit: Rat::zero(),
            rate: Some(Expr::parse("1/k").expect("built-in rate")),
        })
}

/// `u_k ≡ 1/2 + 1/(2k)`, monotone with norm limit `1/2`.
pub fn dini_plateau() -> SequenceFamily {
    SequenceFamily::formula(
        "dini-plateau",
        dom("[0,1)"),
        "[0,1): 1/2 + 1/(2*k)",
        Rat::one(),
    )
    .expect("built-in family")
    .with(Certificate::MonotoneEnvelope)
    .with(Certificate::NormLimit {
        limit: q(1, 2),
        rate: None,
    })
}

pub fn escaping_atom() -> CompositeFA {
    CompositeFA::atom(dom("(0,1)"), "(0, 1/l)").expect("built-in atom")
}

pub fn dirac_atom() -> CompositeFA {
    CompositeFA::atom(dom("(0,1)"), "(1/2 - 1/l, 1/2 + 1/l)").expect("built-in atom")
}

pub fn closed_dirac_atom() -> CompositeFA {
    CompositeFA::atom(dom("(0,1)"), "[1/2 - 1/(2*l+2), 1/2 + 1/(2*l+2)]").expect("built-in atom")
}

/// Every built-in family, for property sweeps.
pub fn families() -> Vec<SequenceFamily> {
    vec![
        dyadic_blocks(),
        dyadic_blocks_right(),
        dyadic_blocks_left(),
        weighted_dyadic_sum(),
        escaping_bump(),
        ramp_translates(),
        tents(),
        dini_decay(),
        dini_plateau(),
    ]
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CorpusOutcome {
    pub id: &'static str,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
    pub detail: String,
}

struct Item {
    id: &'static str,
    expected: &'static str,
    run: fn(&Policy) -> Result<(String, String)>,
}

fn class(f: &SequenceFamily, p: &Policy) -> Result<(String, String)> {
    let v = test_weak_null(f, p)?;
    Ok((v.class().to_string(), v.to_string()))
}

fn local_classes(f: &SequenceFamily, points: &[ExtPoint], p: &Policy) -> Result<(String, String)> {
    let mut observed = Vec::new();
    for x0 in points {
        let v = test_weak_null_at(f, x0, p)?;
        observed.push(format!("{x0}:{}", v.class()));
    }
    Ok((observed.join(" "), String::new()))
}

fn sine_witnesses(_: &Policy) -> Result<(String, String)> {
    let e = Evaluable::SinReciprocal;
    let prefix = [2u64, 4, 8, 16];
    let (x, pm) = prime_power_point(&prefix).expect("a prime power avoids a finite prefix");
    let floor = q(866025, 1_000_000);
    let pp = witness_lower_bound(&e, &prefix, &x, &floor)?;
    let (ks, xd) = dyadic_divisibility_point(12)?;
    let dy = witness_lower_bound_big(&e, &ks, &xd, &q(707106, 1_000_000))?;
    let observed = if pp.certified && dy.certified {
        "certified"
    } else {
        "uncertified"
    };
    Ok((
        observed.into(),
        format!(
            "prime power {pm}: min |u| >= {:.9}; divisibility chain J=12: min |u| >= {:.9}",
            pp.min_lower.to_f64(),
            dy.min_lower.to_f64()
        ),
    ))
}

fn boundary_ranges(p: &Policy) -> Result<(String, String)> {
    let f = dyadic_blocks();
    let want: IntervalSet = "[0,0] u [1,1]".parse().expect("literal");
    let mut ok = true;
    for k in 1..=8u64 {
        let u = f.piecewise_term(k)?;
        ok &= essential_range_at(&u, &ExtPoint::Finite(Rat::pow2(-(k as i64))))? == want;
    }
    let global = test_weak_null(&f, p)?.class();
    let ranges = if ok { "{0,1}" } else { "other" };
    Ok((format!("range {ranges}, {global}"), String::new()))
}

fn hat_of(nu: CompositeFA) -> Result<(String, String)> {
    let h = hat(&nu)?;
    Ok((h.to_string(), String::new()))
}

fn singular(_: &Policy) -> Result<(String, String)> {
    let nu = closed_dirac_atom();
    let Some(w) = singularity_witness(&nu, &q(1, 2), 16)? else {
        return Ok(("none".into(), String::new()));
    };
    let shrinking = w.compacts.iter().all(|(n, _, len)| *len == q(2, *n as i64));
    let observed = if shrinking {
        "K_n with measure 2/n"
    } else {
        "other"
    };
    Ok((
        observed.into(),
        format!("point {} mass {}", w.point, w.mass),
    ))
}

fn items() -> Vec<Item> {
    vec![
        Item {
            id: "dyadic-blocks",
            expected: "NullCertified",
            run: |p| class(&dyadic_blocks(), p),
        },
        Item {
            id: "dyadic-blocks-right",
            expected: "NullCertified",
            run: |p| class(&dyadic_blocks_right(), p),
        },
        Item {
            id: "dyadic-blocks-left",
            expected: "NonNullCertified",
            run: |p| class(&dyadic_blocks_left(), p),
        },
        Item {
            id: "weighted-dyadic-sum",
            expected: "NullCertified",
            run: |p| class(&weighted_dyadic_sum(), p),
        },
        Item {
            id: "escaping-bump",
            expected: "NullCertified",
            run: |p| class(&escaping_bump(), p),
        },
        Item {
            id: "ramp-translates",
            expected: "NonNullCertified",
            run: |p| class(&ramp_translates(), p),
        },
        Item {
            id: "ramp-translates-local",
            expected: "-3:NullCertified 0:NullCertified 5/2:NullCertified inf:NonNullCertified",
            run: |p| {
                let pts = [q(-3, 1), q(0, 1), q(5, 2)].map(ExtPoint::Finite);
                let mut pts = pts.to_vec();
                pts.push(ExtPoint::Infinity);
                local_classes(&ramp_translates(), &pts, p)
            },
        },
        Item {
            id: "sine-reciprocal",
            expected: "NonNullCertified",
            run: |p| class(&sine_reciprocal(), p),
        },
        Item {
            id: "sine-reciprocal-witnesses",
            expected: "certified",
            run: sine_witnesses,
        },
        Item {
            id: "tents",
            expected: "NonNullCertified",
            run: |p| class(&tents(), p),
        },
        Item {
            id: "tents-local",
            expected: "0:NonNullCertified 1/2:NullCertified inf:NullCertified",
            run: |p| {
                local_classes(
                    &tents(),
                    &[
                        ExtPoint::Finite(Rat::zero()),
                        ExtPoint::Finite(q(1, 2)),
                        ExtPoint::Infinity,
                    ],
                    p,
                )
            },
        },
        Item {
            id: "moving-boundary",
            expected: "range {0,1}, NullCertified",
            run: boundary_ranges,
        },
        Item {
            id: "dini-decay",
            expected: "NullCertified",
            run: |p| class(&dini_decay(), p),
        },
        Item {
            id: "dini-plateau",
            expected: "NonNullCertified",
            run: |p| class(&dini_plateau(), p),
        },
        Item {
            id: "escaping-atom",
            expected: "0",
            run: |_| hat_of(escaping_atom()),
        },
        Item {
            id: "dirac-atom",
            expected: "1*delta_1/2",
            run: |_| hat_of(dirac_atom()),
        },
        Item {
            id: "singular-atom",
            expected: "K_n with measure 2/n",
            run: singular,
        },
    ]
}

/// Runs every item; engine errors count as mismatches.
pub fn run_corpus(policy: &Policy) -> Vec<CorpusOutcome> {
    let mut out: Vec<CorpusOutcome> = items()
        .into_iter()
        .map(|it| {
            let (observed, detail) = match (it.run)(policy) {
                Ok(r) => r,
                Err(e) => ("error".into(), e.to_string()),
            };
            CorpusOutcome {
                id: it.id,
                expected: it.expected.into(),
                pass: observed == it.expected,
                observed,
                detail,
            }
        })
        .collect();
    out.sort_by_key(|o| o.id);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_passes() {
        let policy = Policy {
            k_max: 32,
            j_max: 8,
            ..Policy::default()
        };
        for o in run_corpus(&policy) {
            assert!(o.pass, "{o:?}");
        }
    }
}
