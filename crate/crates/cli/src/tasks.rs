//! Task dispatch.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use weaknull_core::corpus;
use weaknull_core::finite_model::{
    atom_formula_holds, dirac_alpha, enumerate_g, essential_range_bruteforce,
    extreme_points_unit_ball, jordan, rainwater_check, yosida_hewitt, EventuallyPeriodic, FAVector,
    FiniteSpace,
};
use weaknull_core::localize::{essential_range, essential_range_at, test_weak_null_at};
use weaknull_core::rat::Rat;
use weaknull_core::restrict::{
    fa_query, hat, howd_bounds_check, minimax_value, singularity_witness, MinimaxSide,
};
use weaknull_core::weaknull::{test_weak_null, Policy, VerdictClass};

use crate::problem::{parse_rat_list, Ctx, Overrides, ProblemFile};
use crate::CliError;

const DEFAULT_MINIMAX_BUDGET: u32 = 8;
const SINGULARITY_BUDGET: u64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Weaknull,
    WeaknullAt,
    Essrange,
    EssrangeAt,
    FiniteModel,
    Restrict,
    Corpus,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Weaknull => "weaknull",
            Task::WeaknullAt => "weaknull-at",
            Task::Essrange => "essrange",
            Task::EssrangeAt => "essrange-at",
            Task::FiniteModel => "finite-model",
            Task::Restrict => "restrict",
            Task::Corpus => "corpus",
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Task {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Task, CliError> {
        [
            Task::Weaknull,
            Task::WeaknullAt,
            Task::Essrange,
            Task::EssrangeAt,
            Task::FiniteModel,
            Task::Restrict,
            Task::Corpus,
        ]
        .into_iter()
        .find(|t| t.name() == s)
        .ok_or_else(|| CliError::Input(format!("unknown task `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Definite,
    Inconclusive,
    /// A corpus item disagreed with its expected verdict.
    Mismatch,
}

/// A task's result before it is wrapped into a report.
pub struct Outcome {
    pub result: Value,
    pub status: Status,
    pub trust: String,
    /// Human-readable lines.
    pub lines: Vec<String>,
    /// Extra records emitted before the report line in machine format.
    pub records: Vec<Value>,
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report values serialize")
}

fn status_of(c: VerdictClass) -> Status {
    match c {
        VerdictClass::Inconclusive => Status::Inconclusive,
        _ => Status::Definite,
    }
}

pub fn execute(task: Task, source: Option<&str>, o: &Overrides) -> Result<Outcome, CliError> {
    let file = match source {
        Some(s) => ProblemFile::parse(s)?,
        None => ProblemFile::default(),
    };
    if let Some(t) = &file.task {
        let declared: Task = t.parse()?;
        if declared != task {
            return Err(CliError::Input(format!(
                "config declares task `{declared}` but `{task}` was requested"
            )));
        }
    }
    let ctx = Ctx {
        source: source.unwrap_or(""),
    };
    match task {
        Task::Weaknull => weaknull(&file, &ctx, o),
        Task::WeaknullAt => weaknull_at(&file, &ctx, o),
        Task::Essrange => essrange(&file, &ctx, None),
        Task::EssrangeAt => {
            let x0 = file.x0(&ctx, o)?;
            essrange(&file, &ctx, Some(x0))
        }
        Task::FiniteModel => finite_model(&file, &ctx, o),
        Task::Restrict => restrict(&file, &ctx),
        Task::Corpus => corpus_run(&file.policy(o)?),
    }
}

fn weaknull(file: &ProblemFile, ctx: &Ctx, o: &Overrides) -> Result<Outcome, CliError> {
    let f = file.family(ctx)?;
    let p = file.policy(o)?;
    let v = test_weak_null(&f, &p)?;
    let ev = v.evidence();
    let mut lines = vec![format!("family {}: {v}", f.name)];
    for c in &ev.certificates {
        lines.push(format!("certificate {}", to_value(c)));
    }
    if let Some(w) = v.witness() {
        lines.push(format!(
            "witness: alpha {} along {} with kernel {}",
            w.alpha, w.subsequence, w.kernel
        ));
        for r in &w.rows {
            lines.push(format!("  {}", to_value(r)));
        }
    }
    for n in &ev.notes {
        lines.push(format!("note: {n}"));
    }
    Ok(Outcome {
        status: status_of(v.class()),
        trust: ev.trust.clone(),
        result: json!({"family": f.name, "verdict": to_value(&v)}),
        lines,
        records: Vec::new(),
    })
}

fn weaknull_at(file: &ProblemFile, ctx: &Ctx, o: &Overrides) -> Result<Outcome, CliError> {
    let f = file.family(ctx)?;
    let p = file.policy(o)?;
    let x0 = file.x0(ctx, o)?;
    let v = test_weak_null_at(&f, &x0, &p)?;
    let ev = v.evidence();
    let mut lines = vec![
        format!("family {} at {x0}: {v}", f.name),
        format!("global verdict class: {}", ev.global),
    ];
    for n in &ev.notes {
        lines.push(format!("note: {n}"));
    }
    Ok(Outcome {
        status: status_of(v.class()),
        trust: ev.trust.clone(),
        result: json!({"family": f.name, "x0": x0.to_string(), "verdict": to_value(&v)}),
        lines,
        records: Vec::new(),
    })
}

fn essrange(
    file: &ProblemFile,
    ctx: &Ctx,
    x0: Option<weaknull_core::localize::ExtPoint>,
) -> Result<Outcome, CliError> {
    let u = file.function(ctx)?;
    let (range, line) = match &x0 {
        None => {
            let r = essential_range(&u);
            let l = format!("essential range: {r}");
            (r, l)
        }
        Some(x) => {
            let r = essential_range_at(&u, x)?;
            let l = format!("essential range at {x}: {r}");
            (r, l)
        }
    };
    Ok(Outcome {
        status: Status::Definite,
        trust: "exact rational arithmetic; no certificates involved".into(),
        result: json!({
            "function": u.to_string(),
            "x0": x0.map(|x| x.to_string()),
            "range": range.to_string(),
        }),
        lines: vec![line],
        records: Vec::new(),
    })
}

fn vector(
    ctx: &Ctx,
    file: &ProblemFile,
    field: &str,
    flag: &Option<String>,
    conf: Option<&Vec<String>>,
) -> Result<Option<Vec<Rat>>, CliError> {
    match (flag, conf) {
        (Some(s), _) => parse_rat_list(s).map(Some),
        (None, Some(l)) => file.rat_list(ctx, field, l).map(Some),
        (None, None) => Ok(None),
    }
}

fn finite_model(file: &ProblemFile, ctx: &Ctx, o: &Overrides) -> Result<Outcome, CliError> {
    let spec = file.finite_model.clone().unwrap_or_default();
    let weights = vector(
        ctx,
        file,
        "finite_model.weights",
        &o.weights,
        Some(&spec.weights),
    )?
    .filter(|w| !w.is_empty())
    .ok_or_else(|| CliError::Input("no weights (use --weights or [finite_model])".into()))?;
    let values = vector(
        ctx,
        file,
        "finite_model.values",
        &o.values,
        spec.values.as_ref(),
    )?;
    let measure = vector(
        ctx,
        file,
        "finite_model.measure",
        &o.measure,
        spec.measure.as_ref(),
    )?;
    let s = FiniteSpace::new(weights)?;
    let g = enumerate_g(&s);
    let atoms_ok = g.iter().all(|w| atom_formula_holds(&s, w));
    let points: Vec<usize> = g.iter().map(|w| w.point).collect();
    let verts = extreme_points_unit_ball(&s)?;
    let mut lines = vec![
        format!("0-1 measures: delta at points {points:?}"),
        format!("atom formula holds: {atoms_ok}"),
        format!("extreme points of the dual unit ball: {}", verts.len()),
    ];
    let mut result = json!({
        "weights": s.weights(),
        "zero_one_points": points,
        "atom_formula": atoms_ok,
        "extreme_points": to_value(&verts),
    });
    if let Some(u) = &values {
        let range = essential_range_bruteforce(&s, u)?;
        let alphas = g
            .iter()
            .map(|w| Ok((w.point, dirac_alpha(&s, u, w)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        lines.push(format!(
            "essential range: {{{}}}",
            range
                .iter()
                .map(Rat::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        ));
        result["values"] = to_value(u);
        result["essential_range"] = to_value(&range);
        result["dirac_alpha"] = to_value(&alphas);
    }
    if let Some(m) = &measure {
        let nu = FAVector::new(m.clone());
        let j = jordan(&s, &nu)?;
        let (pfa, ca) = yosida_hewitt(&nu);
        lines.push(format!("total variation: {}", j.total_variation));
        result["measure"] = to_value(m);
        result["jordan"] = to_value(&j);
        result["yosida_hewitt"] =
            json!({"purely_finitely_additive": pfa, "countably_additive": ca});
    }
    if let Some(seq) = &spec.sequence {
        let conv = |rows: &Vec<Vec<String>>| -> Result<Vec<Vec<Rat>>, CliError> {
            rows.iter()
                .map(|r| file.rat_list(ctx, "finite_model.sequence", r))
                .collect()
        };
        let ep = EventuallyPeriodic {
            prefix: conv(&seq.prefix)?,
            cycle: conv(&seq.cycle)?,
        };
        let r = rainwater_check(&s, &ep)?;
        lines.push(format!(
            "weak convergence: {} (extreme points alone: {})",
            r.all_functionals, r.extreme_points
        ));
        result["rainwater"] = to_value(&r);
    }
    Ok(Outcome {
        status: Status::Definite,
        trust: "exhaustive enumeration over all subsets; exact rational arithmetic".into(),
        result,
        lines,
        records: Vec::new(),
    })
}

fn restrict(file: &ProblemFile, ctx: &Ctx) -> Result<Outcome, CliError> {
    let nu = file.composite(ctx)?;
    let spec = file.restrict_spec()?;
    let h = hat(&nu)?;
    let mut lines = vec![format!("restriction to C0: {h}")];
    let mut queries = Vec::new();
    for qs in file.query_sets(ctx)? {
        let r = fa_query(&nu, &qs)?;
        lines.push(format!(
            "nu({qs}) in [{}, {}]{}",
            r.lower,
            r.upper,
            if r.determined {
                ""
            } else {
                " (undetermined across extensions)"
            }
        ));
        queries.push(json!({"set": qs.to_string(), "answer": to_value(&r)}));
    }
    let budget = spec.minimax_budget.unwrap_or(DEFAULT_MINIMAX_BUDGET);
    let mut minimax = Vec::new();
    for b in file.sets(ctx, "restrict.minimax", &spec.minimax)? {
        let inf_sup = minimax_value(&nu, &b, MinimaxSide::InfSup, budget)?;
        let sup_inf = minimax_value(&nu, &b, MinimaxSide::SupInf, budget)?;
        lines.push(format!(
            "minimax on {b}: inf-sup in [{}, {}], sup-inf in [{}, {}]",
            inf_sup.0, inf_sup.1, sup_inf.0, sup_inf.1
        ));
        minimax.push(json!({"set": b.to_string(), "inf_sup": to_value(&inf_sup), "sup_inf": to_value(&sup_inf)}));
    }
    let singular = match &spec.singularity_alpha {
        Some(a) => {
            let alpha = file.rat_field(ctx, "restrict.singularity_alpha", a)?;
            let w = singularity_witness(&nu, &alpha, SINGULARITY_BUDGET)?;
            match &w {
                Some(w) => lines.push(format!(
                    "singular at {} (mass {}): {} compacts, last {} of length {}",
                    w.point,
                    w.mass,
                    w.compacts.len(),
                    w.compacts.last().map_or("-", |c| c.1.as_str()),
                    w.compacts.last().map_or(Rat::zero(), |c| c.2.clone())
                )),
                None => lines.push(format!("no point mass of size >= {alpha}")),
            }
            to_value(&w)
        }
        None => Value::Null,
    };
    let mut howd = Vec::new();
    for c in &spec.howd {
        let k = file
            .sets(ctx, "restrict.howd.k", std::slice::from_ref(&c.k))?
            .remove(0);
        let b = file
            .sets(ctx, "restrict.howd.b", std::slice::from_ref(&c.b))?
            .remove(0);
        let g = file
            .sets(ctx, "restrict.howd.g", std::slice::from_ref(&c.g))?
            .remove(0);
        let r = howd_bounds_check(&nu, &k, &b, &g)?;
        lines.push(format!(
            "{} <= hat({b}) = {} <= {}",
            r.lower_on_k, r.hat_on_b, r.upper_on_g
        ));
        howd.push(json!({"k": k.to_string(), "b": b.to_string(), "g": g.to_string(), "bounds": to_value(&r)}));
    }
    Ok(Outcome {
        status: Status::Definite,
        trust: "answers use only values forced by the filter bases, so they hold for every finitely additive extension; undetermined regions may differ between extensions".into(),
        result: json!({
            "hat": h.to_string(),
            "hat_terms": to_value(&h),
            "total": nu.total(),
            "queries": queries,
            "minimax": minimax,
            "singularity": singular,
            "howd": howd,
        }),
        lines,
        records: Vec::new(),
    })
}

fn corpus_run(p: &Policy) -> Result<Outcome, CliError> {
    let items = corpus::run_corpus(p);
    let failed = items.iter().filter(|i| !i.pass).count();
    let lines = items
        .iter()
        .map(|i| {
            let mut l = format!(
                "{} {}: {}",
                if i.pass { "PASS" } else { "FAIL" },
                i.id,
                i.observed
            );
            if !i.pass {
                l.push_str(&format!(" (expected {})", i.expected));
            }
            if !i.detail.is_empty() {
                l.push_str(&format!(" [{}]", i.detail));
            }
            l
        })
        .chain([format!(
            "{} of {} items pass",
            items.len() - failed,
            items.len()
        )])
        .collect();
    let records = items
        .iter()
        .map(|i| {
            let mut v = to_value(i);
            v["record"] = json!("corpus-item");
            v
        })
        .collect();
    Ok(Outcome {
        status: if failed == 0 {
            Status::Definite
        } else {
            Status::Mismatch
        },
        trust: "each item carries the trust statement of its engine".into(),
        result: json!({"items": to_value(&items), "passed": items.len() - failed, "failed": failed}),
        lines,
        records,
    })
}
