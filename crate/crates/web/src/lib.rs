//! Browser bindings: three operations, each taking literal strings and
//! returning a JSON document.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use weaknull_core::formula::SetFormula;
use weaknull_core::localize::{essential_range, essential_range_at, test_weak_null_at, ExtPoint};
use weaknull_core::piecewise::PiecewiseFn;
use weaknull_core::rat::Rat;
use weaknull_core::restrict::{hat, CompositeFA};
use weaknull_core::sequences::{Certificate, SequenceFamily};
use weaknull_core::sets::Domain;
use weaknull_core::weaknull::{test_weak_null, Policy};

/// Budgets small enough for an interactive page.
fn demo_policy() -> Policy {
    Policy {
        j_max: 10,
        k_max: 64,
        ..Policy::default()
    }
}

fn err(e: impl ToString) -> String {
    e.to_string()
}

fn x0_of(s: &str) -> Result<Option<ExtPoint>, String> {
    match s.trim() {
        "" => Ok(None),
        t => t.parse::<ExtPoint>().map(Some).map_err(err),
    }
}

/// `""`, `disjoint-supports`, `escape-bound` or `kernel ALPHA FORMULA`.
fn certificate_of(s: &str) -> Result<Option<Certificate>, String> {
    let t = s.trim();
    if t.is_empty() {
        return Ok(None);
    }
    match t {
        "disjoint-supports" => return Ok(Some(Certificate::DisjointSupports)),
        "escape-bound" => return Ok(Some(Certificate::EscapeBound)),
        _ => {}
    }
    let rest = t
        .strip_prefix("kernel")
        .ok_or_else(|| format!("unknown certificate `{t}`"))?
        .trim_start();
    let (alpha, kernel) = rest
        .split_once(char::is_whitespace)
        .ok_or("expected `kernel ALPHA FORMULA`")?;
    Ok(Some(Certificate::SuperlevelKernel {
        alpha: alpha.parse::<Rat>().map_err(err)?,
        kernel: SetFormula::parse(kernel.trim()).map_err(err)?,
    }))
}

/// Weak-null verdict for `u_k = χ_{A_k}`, globally or at `x0`.
pub fn classify_indicator(
    domain: &str,
    sets: &str,
    certificate: &str,
    x0: &str,
) -> Result<Value, String> {
    let d = Domain::parse(domain).map_err(err)?;
    let mut f = SequenceFamily::indicator("demo", d, sets).map_err(err)?;
    if let Some(c) = certificate_of(certificate)? {
        f = f.with(c);
    }
    let p = demo_policy();
    Ok(match x0_of(x0)? {
        None => {
            let v = test_weak_null(&f, &p).map_err(err)?;
            json!({"summary": v.to_string(), "class": v.class(), "verdict": v})
        }
        Some(x) => {
            let v = test_weak_null_at(&f, &x, &p).map_err(err)?;
            json!({"summary": v.to_string(), "class": v.class(), "verdict": v})
        }
    })
}

/// Essential range of a piecewise-linear function, globally or at `x0`.
pub fn essrange(domain: &str, function: &str, x0: &str) -> Result<Value, String> {
    let d = Domain::parse(domain).map_err(err)?;
    let u = PiecewiseFn::parse(d, function).map_err(err)?;
    let r = match x0_of(x0)? {
        None => essential_range(&u),
        Some(x) => essential_range_at(&u, &x).map_err(err)?,
    };
    Ok(json!({"function": u.to_string(), "range": r.to_string()}))
}

/// `ν̂` for a single atom given by its filter base `B(ℓ)`.
pub fn restrict_atom(domain: &str, base: &str) -> Result<Value, String> {
    let d = Domain::parse(domain).map_err(err)?;
    let nu = CompositeFA::atom(d, base).map_err(err)?;
    let h = hat(&nu).map_err(err)?;
    Ok(json!({
        "hat": h.to_string(),
        "total": h.total(),
        "escaped": &nu.total() - &h.total(),
    }))
}

fn wrap(r: Result<Value, String>) -> Result<String, JsValue> {
    r.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = classifyIndicator)]
pub fn classify_indicator_js(
    domain: &str,
    sets: &str,
    certificate: &str,
    x0: &str,
) -> Result<String, JsValue> {
    wrap(classify_indicator(domain, sets, certificate, x0))
}

#[wasm_bindgen(js_name = essentialRange)]
pub fn essrange_js(domain: &str, function: &str, x0: &str) -> Result<String, JsValue> {
    wrap(essrange(domain, function, x0))
}

#[wasm_bindgen(js_name = restrictAtom)]
pub fn restrict_atom_js(domain: &str, base: &str) -> Result<String, JsValue> {
    wrap(restrict_atom(domain, base))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certificates() {
        assert_eq!(certificate_of("").unwrap(), None);
        assert!(matches!(
            certificate_of("kernel 1/2 (0, 1/2^(k+1))").unwrap(),
            Some(Certificate::SuperlevelKernel { .. })
        ));
        assert!(certificate_of("kernel 1/2").is_err());
        assert!(certificate_of("bogus").is_err());
    }
}
