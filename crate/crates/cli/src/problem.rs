//! Declarative problem files.

use serde::{Deserialize, Serialize};

use weaknull_core::error::Error as CoreError;
use weaknull_core::formula::{Expr, SetFormula};
use weaknull_core::localize::ExtPoint;
use weaknull_core::piecewise::PiecewiseFn;
use weaknull_core::rat::Rat;
use weaknull_core::restrict::{CompositeFA, QuerySet};
use weaknull_core::sequences::{Certificate, SequenceFamily};
use weaknull_core::sets::{Domain, IntervalSet};
use weaknull_core::weaknull::{Policy, Subsequence};

use crate::CliError;

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub task: Option<String>,
    pub domain: Option<String>,
    pub x0: Option<String>,
    pub function: Option<String>,
    pub family: Option<FamilySpec>,
    pub policy: Option<PolicySpec>,
    pub finite_model: Option<FiniteSpec>,
    pub restrict: Option<RestrictSpec>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub kind: String,
    pub name: Option<String>,
    pub sets: Option<String>,
    pub terms: Option<Vec<String>>,
    pub base: Option<String>,
    pub step: Option<String>,
    pub template: Option<String>,
    pub bound: Option<String>,
    pub coefficient: Option<String>,
    pub truncation: Option<u64>,
    pub tail: Option<String>,
    pub transform: Option<String>,
    #[serde(default)]
    pub certificates: Vec<CertificateSpec>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateSpec {
    #[serde(rename = "type")]
    pub kind: String,
    pub alpha: Option<String>,
    pub kernel: Option<String>,
    pub limit: Option<String>,
    pub rate: Option<String>,
    pub sets: Option<String>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PolicySpec {
    pub budget_j: Option<usize>,
    pub budget_k: Option<u64>,
    pub alpha_grid: Option<Vec<String>>,
    pub subsequences: Option<Vec<String>>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteSpec {
    pub weights: Vec<String>,
    pub values: Option<Vec<String>>,
    pub measure: Option<Vec<String>>,
    pub sequence: Option<PeriodicSpec>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PeriodicSpec {
    #[serde(default)]
    pub prefix: Vec<Vec<String>>,
    pub cycle: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictSpec {
    #[serde(default)]
    pub atoms: Vec<AtomSpec>,
    pub density: Option<String>,
    #[serde(default)]
    pub queries: Vec<String>,
    #[serde(default)]
    pub unions: Vec<UnionSpec>,
    #[serde(default)]
    pub minimax: Vec<String>,
    pub minimax_budget: Option<u32>,
    pub singularity_alpha: Option<String>,
    #[serde(default)]
    pub howd: Vec<HowdSpec>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct AtomSpec {
    pub coefficient: String,
    pub base: String,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct UnionSpec {
    pub parts: String,
    pub from: i64,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct HowdSpec {
    pub k: String,
    pub b: String,
    pub g: String,
}

/// Command-line overrides of the file's policy.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    pub budget_j: Option<usize>,
    pub budget_k: Option<u64>,
    pub alpha_grid: Option<String>,
    pub subseq: Option<String>,
    pub x0: Option<String>,
    pub weights: Option<String>,
    pub values: Option<String>,
    pub measure: Option<String>,
}

/// 1-based line and column of `offset` within the first quoted occurrence
/// of `literal` in `source`.
fn locate(source: &str, literal: &str, offset: usize) -> Option<(usize, usize)> {
    let start = ["\"", "'"]
        .iter()
        .find_map(|q| source.find(&format!("{q}{literal}{q}")))?
        + 1
        + offset.min(literal.len());
    let before = &source[..start];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    Some((line, col))
}

/// Parsing context: the raw file text, for error positions.
pub struct Ctx<'a> {
    pub source: &'a str,
}

impl Ctx<'_> {
    fn lit<T>(&self, field: &str, text: &str, r: Result<T, CoreError>) -> Result<T, CliError> {
        r.map_err(|e| match e {
            CoreError::Parse(pe) => match locate(self.source, text, pe.offset) {
                Some((line, col)) => CliError::Input(format!(
                    "{field}: {} at line {line}, column {col}",
                    pe.message
                )),
                None => CliError::Input(format!("{field}: {pe}")),
            },
            other => CliError::from(other),
        })
    }

    fn rat(&self, field: &str, text: &str) -> Result<Rat, CliError> {
        self.lit(
            field,
            text,
            text.trim().parse::<Rat>().map_err(CoreError::from),
        )
    }

    fn set(&self, field: &str, text: &str) -> Result<IntervalSet, CliError> {
        self.lit(
            field,
            text,
            text.parse::<IntervalSet>().map_err(CoreError::from),
        )
    }

    fn formula(&self, field: &str, text: &str) -> Result<SetFormula, CliError> {
        self.lit(field, text, SetFormula::parse(text))
    }

    fn expr(&self, field: &str, text: &str) -> Result<Expr, CliError> {
        self.lit(field, text, Expr::parse(text))
    }

    fn function(&self, field: &str, domain: &Domain, text: &str) -> Result<PiecewiseFn, CliError> {
        self.lit(field, text, PiecewiseFn::parse(domain.clone(), text))
    }

    fn rats(&self, field: &str, list: &[String]) -> Result<Vec<Rat>, CliError> {
        list.iter().map(|s| self.rat(field, s)).collect()
    }
}

fn need<'a>(v: &'a Option<String>, field: &str) -> Result<&'a str, CliError> {
    v.as_deref()
        .ok_or_else(|| CliError::Input(format!("missing field `{field}`")))
}

/// Comma-separated rationals.
pub fn parse_rat_list(s: &str) -> Result<Vec<Rat>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<Rat>()
                .map_err(|e| CliError::Input(format!("`{t}`: {e}")))
        })
        .collect()
}

impl ProblemFile {
    pub fn parse(source: &str) -> Result<ProblemFile, CliError> {
        toml::from_str(source).map_err(|e| CliError::Input(format!("config: {e}")))
    }

    pub fn domain(&self, ctx: &Ctx) -> Result<Domain, CliError> {
        let d = need(&self.domain, "domain")?;
        ctx.lit("domain", d, Domain::parse(d))
    }

    pub fn x0(&self, ctx: &Ctx, o: &Overrides) -> Result<ExtPoint, CliError> {
        let text =
            o.x0.as_deref()
                .or(self.x0.as_deref())
                .ok_or_else(|| CliError::Input("missing `x0` (config field or --x0)".into()))?;
        ctx.lit("x0", text, text.trim().parse::<ExtPoint>())
    }

    pub fn function(&self, ctx: &Ctx) -> Result<PiecewiseFn, CliError> {
        let domain = self.domain(ctx)?;
        ctx.function("function", &domain, need(&self.function, "function")?)
    }

    pub fn policy(&self, o: &Overrides) -> Result<Policy, CliError> {
        let spec = self.policy.clone().unwrap_or_default();
        let mut p = Policy::default();
        if let Some(j) = o.budget_j.or(spec.budget_j) {
            p.j_max = j;
        }
        if let Some(k) = o.budget_k.or(spec.budget_k) {
            p.k_max = k;
        }
        if p.j_max == 0 || p.k_max == 0 {
            return Err(CliError::Input("budgets must be positive".into()));
        }
        p.alpha_grid = match (&o.alpha_grid, &spec.alpha_grid) {
            (Some(s), _) => Some(parse_rat_list(s)?),
            (None, Some(l)) => Some(parse_rat_list(&l.join(","))?),
            (None, None) => None,
        };
        if let Some(g) = &p.alpha_grid {
            if g.is_empty() || g.iter().any(|a| !a.is_positive()) {
                return Err(CliError::Input(
                    "alpha grid entries must be positive".into(),
                ));
            }
        }
        let strategies: Option<Vec<String>> = match (&o.subseq, &spec.subsequences) {
            (Some(s), _) => Some(s.split(';').map(str::to_string).collect()),
            (None, l) => l.clone(),
        };
        if let Some(list) = strategies {
            p.strategies = list
                .iter()
                .map(|s| {
                    s.trim()
                        .parse::<Subsequence>()
                        .map_err(|e| CliError::Input(format!("subsequence `{s}`: {e}")))
                })
                .collect::<Result<_, _>>()?;
        }
        Ok(p)
    }

    pub fn family(&self, ctx: &Ctx) -> Result<SequenceFamily, CliError> {
        let spec = self
            .family
            .as_ref()
            .ok_or_else(|| CliError::Input("missing [family] table".into()))?;
        let name = spec.name.clone().unwrap_or_else(|| spec.kind.clone());
        let mut f = match spec.kind.as_str() {
            "sine" => SequenceFamily::sin_reciprocal(&name),
            kind => {
                let domain = self.domain(ctx)?;
                match kind {
                    "indicator" => {
                        let sets = need(&spec.sets, "family.sets")?;
                        ctx.lit("family.sets", sets, SequenceFamily::indicator(&name, domain, sets))?
                    }
                    "explicit" => {
                        let terms = spec
                            .terms
                            .as_ref()
                            .ok_or_else(|| CliError::Input("missing field `family.terms`".into()))?;
                        let fs = terms
                            .iter()
                            .map(|t| ctx.function("family.terms", &domain, t))
                            .collect::<Result<Vec<_>, _>>()?;
                        SequenceFamily::explicit(&name, fs)?
                    }
                    "translate" => {
                        let base = ctx.function("family.base", &domain, need(&spec.base, "family.base")?)?;
                        let step = ctx.rat("family.step", need(&spec.step, "family.step")?)?;
                        SequenceFamily::translate(&name, base, step)?
                    }
                    "tent" => SequenceFamily::tent(&name, domain),
                    "formula" => {
                        let t = need(&spec.template, "family.template")?;
                        let bound = ctx.rat("family.bound", need(&spec.bound, "family.bound")?)?;
                        ctx.lit("family.template", t, SequenceFamily::formula(&name, domain, t, bound))?
                    }
                    "summable" => {
                        let c = need(&spec.coefficient, "family.coefficient")?;
                        let t = need(&spec.template, "family.template")?;
                        let tail = need(&spec.tail, "family.tail")?;
                        let n = spec
                            .truncation
                            .ok_or_else(|| CliError::Input("missing field `family.truncation`".into()))?;
                        ctx.lit("family", t, SequenceFamily::summable(&name, domain, c, t, n, tail))?
                    }
                    other => {
                        return Err(CliError::Input(format!(
                            "unknown family kind `{other}` (indicator, explicit, translate, tent, formula, summable, sine)"
                        )))
                    }
                }
            }
        };
        for c in &spec.certificates {
            f = f.with(certificate(ctx, c)?);
        }
        match spec.transform.as_deref() {
            None => Ok(f),
            Some("abs") => Ok(f.map_abs()),
            Some(t) if t.starts_with("poly:") => {
                let coeffs = parse_rat_list(&t["poly:".len()..])?;
                Ok(f.map_poly(&coeffs)?)
            }
            Some(t) => Err(CliError::Input(format!(
                "unknown transform `{t}` (abs or poly:c0,c1,...)"
            ))),
        }
    }

    pub fn composite(&self, ctx: &Ctx) -> Result<CompositeFA, CliError> {
        let domain = self.domain(ctx)?;
        let spec = self.restrict_spec()?;
        let atoms = spec
            .atoms
            .iter()
            .map(|a| {
                let base = strip_base_prefix(&a.base);
                Ok((
                    ctx.rat("restrict.atoms.coefficient", &a.coefficient)?,
                    ctx.formula("restrict.atoms.base", base)?,
                ))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let density = match &spec.density {
            Some(d) => ctx.function("restrict.density", &domain, d)?,
            None => PiecewiseFn::zero(domain.clone()),
        };
        Ok(CompositeFA::new(domain, atoms, density)?)
    }

    pub fn restrict_spec(&self) -> Result<&RestrictSpec, CliError> {
        self.restrict
            .as_ref()
            .ok_or_else(|| CliError::Input("missing [restrict] table".into()))
    }

    pub fn query_sets(&self, ctx: &Ctx) -> Result<Vec<QuerySet>, CliError> {
        let spec = self.restrict_spec()?;
        let mut out = Vec::new();
        for s in &spec.queries {
            out.push(QuerySet::Finite(ctx.set("restrict.queries", s)?));
        }
        for u in &spec.unions {
            out.push(QuerySet::CountableUnion {
                parts: ctx.formula("restrict.unions.parts", &u.parts)?,
                from: u.from,
            });
        }
        Ok(out)
    }

    pub fn sets(
        &self,
        ctx: &Ctx,
        field: &str,
        list: &[String],
    ) -> Result<Vec<IntervalSet>, CliError> {
        list.iter().map(|s| ctx.set(field, s)).collect()
    }

    pub fn rat_field(&self, ctx: &Ctx, field: &str, text: &str) -> Result<Rat, CliError> {
        ctx.rat(field, text)
    }

    pub fn rat_list(&self, ctx: &Ctx, field: &str, list: &[String]) -> Result<Vec<Rat>, CliError> {
        ctx.rats(field, list)
    }
}

/// Accepts `B(l) = <expr>` as well as the bare expression.
fn strip_base_prefix(s: &str) -> &str {
    let t = s.trim_start();
    match t.strip_prefix("B(l)") {
        Some(rest) => rest
            .trim_start()
            .strip_prefix('=')
            .unwrap_or(rest)
            .trim_start(),
        None => s,
    }
}

fn certificate(ctx: &Ctx, c: &CertificateSpec) -> Result<Certificate, CliError> {
    Ok(match c.kind.as_str() {
        "disjoint-supports" => Certificate::DisjointSupports,
        "escape-bound" => Certificate::EscapeBound,
        "monotone-envelope" => Certificate::MonotoneEnvelope,
        "summable-disjoint" => Certificate::SummableDisjoint,
        "superlevel-kernel" => Certificate::SuperlevelKernel {
            alpha: ctx.rat("certificate.alpha", need(&c.alpha, "certificate.alpha")?)?,
            kernel: ctx.formula("certificate.kernel", need(&c.kernel, "certificate.kernel")?)?,
        },
        "norm-limit" => Certificate::NormLimit {
            limit: ctx.rat("certificate.limit", need(&c.limit, "certificate.limit")?)?,
            rate: c
                .rate
                .as_deref()
                .map(|r| ctx.expr("certificate.rate", r))
                .transpose()?,
        },
        "support-envelope" => Certificate::SupportEnvelope(
            ctx.formula("certificate.sets", need(&c.sets, "certificate.sets")?)?,
        ),
        other => {
            return Err(CliError::Input(format!(
                "unknown certificate type `{other}`"
            )));
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions() {
        let src = "domain = \"(0,1)\"\nfunction = \"[0,1/2: 1\"\n";
        assert_eq!(locate(src, "[0,1/2: 1", 0), Some((2, 13)));
        assert_eq!(locate(src, "[0,1/2: 1", 6), Some((2, 19)));
        assert_eq!(locate(src, "nope", 0), None);
    }

    #[test]
    fn base_prefix() {
        assert_eq!(strip_base_prefix("B(l) = (0, 1/l)"), "(0, 1/l)");
        assert_eq!(strip_base_prefix("(0, 1/l)"), "(0, 1/l)");
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(ProblemFile::parse("domain = \"(0,1)\"\ncolour = 1\n").is_err());
        assert!(ProblemFile::parse("[family]\nkind = \"tent\"\nbogus = 1\n").is_err());
    }
}
