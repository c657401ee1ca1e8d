//! JSON and text renderings of library values.

use luna_datum::document::{emit_number, DatumDocument, VectorSpec};
use luna_datum::luna::SphericalRootMatch;
use luna_datum::{arith, Color, Cone, LunaDatum, Rat, RootDatum, Sublattice, Subspace, Violation};
use serde_json::{json, Map, Value};

pub fn numbers(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(emit_number).collect())
}

pub fn vector(g: &RootDatum, x: &[Rat]) -> Value {
    VectorSpec::describe(g, x).to_json()
}

pub fn lattice(m: &Sublattice) -> Value {
    Value::Array(m.basis().iter().map(|b| numbers(&arith::to_q(b))).collect())
}

pub fn subspace(w: &Subspace) -> Value {
    Value::Array(w.basis().iter().map(|b| numbers(b)).collect())
}

pub fn datum(s: &LunaDatum) -> Value {
    DatumDocument::from_datum(s).to_json()
}

pub fn violations(vs: &[Violation]) -> Value {
    Value::Array(vs.iter().map(|v| Value::String(v.to_string())).collect())
}

pub fn root_names(g: &RootDatum, xs: impl IntoIterator<Item = usize>) -> Value {
    Value::Array(xs.into_iter().map(|i| Value::String(g.root_name(i))).collect())
}

/// Each color with its values on the spherical roots, in the order of `Sigma`.
pub fn colors(s: &LunaDatum, colors: &[Color]) -> Value {
    let g = s.group();
    let sigma = s.sigma_q();
    Value::Array(
        colors
            .iter()
            .map(|c| {
                let on_sigma: Vec<Rat> = sigma.iter().map(|x| s.pair(&c.rho, x).expect("Σ ⊆ ℳ")).collect();
                json!({
                    "label": c.label,
                    "type": c.ctype.to_string(),
                    "rho": numbers(c.rho.values()),
                    "moved": root_names(g, c.moved.iter().copied()),
                    "on_sigma": numbers(&on_sigma),
                })
            })
            .collect(),
    )
}

pub fn cone(c: &Cone) -> Value {
    json!({
        "rays": Value::Array(c.extremal_rays().iter().map(|r| numbers(&arith::to_q(r))).collect()),
        "lineality": subspace(c.lineality()),
    })
}

pub fn spherical_root(g: &RootDatum, m: &SphericalRootMatch) -> Value {
    json!({
        "gamma": vector(g, &arith::to_q(&m.gamma)),
        "row": m.row,
        "support": m.support_type,
        "lambda": emit_number(&m.lambda),
        "Spp": root_names(g, m.spp.iter().copied()),
        "Sp_gamma": root_names(g, m.sp_gamma.iter().copied()),
    })
}

/// `path  value` lines; nested objects and arrays of objects are flattened.
pub fn text(report: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", report, &mut rows);
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let pad = width - k.chars().count();
        out.push_str(&format!("{k}{}  {v}\n", " ".repeat(pad)));
    }
    out
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (k, x) in map {
                flatten(&join(k), x, rows);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object()) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, rows);
            }
        }
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}

pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
}
