//! The JSON datum file format.
//!
//! ```json
//! {
//!   "group": {"preset": "Spin7"},
//!   "M": [{"a1": 1}, {"a2": 2, "a3": 2}],
//!   "Sigma": [{"a1": 1}, {"a2": 2, "a3": 2}],
//!   "Sp": ["a3"],
//!   "Da": [{"label": "D+", "rho": [1, -1]}, {"label": "D-", "rho": [1, -1]}]
//! }
//! ```
//!
//! A vector is either an array of coordinates in the character lattice or
//! an object with keys `aK` (simple roots) and `eK` (unit vectors). Numbers
//! are JSON integers or strings `"p"`, `"p/q"`. Each `rho` lists the values
//! of the color on the rows of `M` in the order given.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::arith::{fmt_rat, parse_rat, to_q, to_z, QVec, Rat, ZVec};
use crate::error::{Error, Result};
use crate::integer_geometry::{rank, Sublattice};
use crate::luna::{AbstractColor, LunaDatum};
use crate::root_datum::{DynkinType, Factor, Isogeny, RootDatum};

const PRESETS: [&str; 8] = ["SL2", "PGL2", "SL3", "Spin5", "Spin7", "G2", "SL2xSL2", "PGL2xPGL2"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupDescriptor {
    Preset(String),
    Factors { factors: Vec<Factor>, torus_rank: usize },
    Raw { roots: Vec<ZVec>, coroots: Vec<ZVec> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VectorSpec {
    Coords(QVec),
    /// Keys `aK` or `eK`, 1-based.
    Named(BTreeMap<String, Rat>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorSpec {
    pub label: String,
    pub rho: QVec,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatumDocument {
    pub group: GroupDescriptor,
    pub m: Vec<VectorSpec>,
    pub sigma: Vec<VectorSpec>,
    pub sp: Vec<String>,
    pub da: Vec<ColorSpec>,
}

fn parse_err(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse { location: location.into(), message: message.into() }
}

fn parse_number(v: &Value, at: &str) -> Result<Rat> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(k) => Ok(Rat::from_integer(k.into())),
            None => Err(parse_err(at, format!("`{n}` is not an exact integer; use \"p/q\""))),
        },
        Value::String(s) => parse_rat(s).map_err(|_| parse_err(at, format!("`{s}` is not a rational literal"))),
        other => Err(parse_err(at, format!("expected a number, found {other}"))),
    }
}

/// An integer when integral, else a `"p/q"` string.
pub fn emit_number(x: &Rat) -> Value {
    match i64::try_from(x.to_integer()) {
        Ok(k) if x.is_integer() => json!(k),
        _ => Value::String(fmt_rat(x)),
    }
}

fn parse_numbers(v: &Value, at: &str) -> Result<QVec> {
    let items = v.as_array().ok_or_else(|| parse_err(at, "expected an array of numbers"))?;
    items.iter().enumerate().map(|(i, x)| parse_number(x, &format!("{at}[{i}]"))).collect()
}

fn parse_integers(v: &Value, at: &str) -> Result<ZVec> {
    let q = parse_numbers(v, at)?;
    to_z(&q).ok_or_else(|| parse_err(at, "expected integers"))
}

fn parse_vector(v: &Value, at: &str) -> Result<VectorSpec> {
    match v {
        Value::Array(_) => parse_numbers(v, at).map(VectorSpec::Coords),
        Value::Object(map) => {
            let mut out = BTreeMap::new();
            for (k, x) in map {
                out.insert(k.clone(), parse_number(x, &format!("{at}.{k}"))?);
            }
            Ok(VectorSpec::Named(out))
        }
        other => Err(parse_err(at, format!("expected a vector, found {other}"))),
    }
}

fn parse_vectors(v: Option<&Value>, at: &str) -> Result<Vec<VectorSpec>> {
    let Some(v) = v else { return Ok(Vec::new()) };
    let items = v.as_array().ok_or_else(|| parse_err(at, "expected an array of vectors"))?;
    items.iter().enumerate().map(|(i, x)| parse_vector(x, &format!("{at}[{i}]"))).collect()
}

fn parse_group(v: &Value) -> Result<GroupDescriptor> {
    let obj = v.as_object().ok_or_else(|| parse_err("group", "expected an object"))?;
    if let Some(p) = obj.get("preset") {
        let name = p.as_str().ok_or_else(|| parse_err("group.preset", "expected a string"))?;
        return Ok(GroupDescriptor::Preset(name.to_string()));
    }
    if let Some(fs) = obj.get("factors") {
        let items = fs.as_array().ok_or_else(|| parse_err("group.factors", "expected an array"))?;
        let mut factors = Vec::new();
        for (i, f) in items.iter().enumerate() {
            let at = format!("group.factors[{i}]");
            let ty = f.get("type").and_then(Value::as_str).ok_or_else(|| parse_err(&at, "missing `type`"))?;
            let ty = DynkinType::from_letter(ty)
                .map_err(|_| parse_err(format!("{at}.type"), format!("unknown Dynkin type `{ty}`")))?;
            let rank = f.get("rank").and_then(Value::as_u64).ok_or_else(|| parse_err(&at, "missing `rank`"))?;
            let isogeny = match f.get("isogeny") {
                None => Isogeny::SimplyConnected,
                Some(x) => serde_json::from_value(x.clone())
                    .map_err(|_| parse_err(format!("{at}.isogeny"), "expected `simply_connected` or `adjoint`"))?,
            };
            factors.push(Factor { ty, rank: rank as usize, isogeny });
        }
        let torus_rank = match obj.get("torus_rank") {
            None => 0,
            Some(t) => t.as_u64().ok_or_else(|| parse_err("group.torus_rank", "expected a count"))? as usize,
        };
        return Ok(GroupDescriptor::Factors { factors, torus_rank });
    }
    if let Some(raw) = obj.get("raw") {
        let rows = |key: &str| -> Result<Vec<ZVec>> {
            let at = format!("group.raw.{key}");
            let items = raw.get(key).and_then(Value::as_array).ok_or_else(|| parse_err(&at, "expected an array"))?;
            items.iter().enumerate().map(|(i, x)| parse_integers(x, &format!("{at}[{i}]"))).collect()
        };
        return Ok(GroupDescriptor::Raw { roots: rows("roots")?, coroots: rows("coroots")? });
    }
    Err(parse_err("group", "expected `preset`, `factors` or `raw`"))
}

impl GroupDescriptor {
    pub fn resolve(&self) -> Result<RootDatum> {
        match self {
            GroupDescriptor::Preset(name) => RootDatum::preset(name),
            GroupDescriptor::Factors { factors, torus_rank } => RootDatum::build(factors, *torus_rank),
            GroupDescriptor::Raw { roots, coroots } => {
                let n = roots.first().or(coroots.first()).map_or(0, Vec::len);
                RootDatum::from_raw(n, roots.clone(), coroots.clone())
            }
        }
    }

    /// A preset name when one matches, else the factor list, else raw data.
    pub fn describe(g: &RootDatum) -> GroupDescriptor {
        for name in PRESETS {
            if RootDatum::preset(name).is_ok_and(|p| &p == g) {
                return GroupDescriptor::Preset(name.to_string());
            }
        }
        if !g.factors().is_empty() || g.rank() == g.torus_rank() {
            return GroupDescriptor::Factors { factors: g.factors().to_vec(), torus_rank: g.torus_rank() };
        }
        GroupDescriptor::Raw { roots: g.simple_roots().to_vec(), coroots: g.simple_coroots().to_vec() }
    }

    pub fn to_json(&self) -> Value {
        match self {
            GroupDescriptor::Preset(name) => json!({ "preset": name }),
            GroupDescriptor::Factors { factors, torus_rank } => {
                let fs: Vec<Value> = factors
                    .iter()
                    .map(|f| json!({ "type": f.ty.letter().to_string(), "rank": f.rank, "isogeny": f.isogeny }))
                    .collect();
                json!({ "factors": fs, "torus_rank": torus_rank })
            }
            GroupDescriptor::Raw { roots, coroots } => {
                let rows = |xs: &[ZVec]| -> Vec<Value> {
                    xs.iter()
                        .map(|r| Value::Array(r.iter().map(|x| emit_number(&Rat::from_integer(x.clone()))).collect()))
                        .collect()
                };
                json!({ "raw": { "roots": rows(roots), "coroots": rows(coroots) } })
            }
        }
    }
}

impl VectorSpec {
    pub fn resolve(&self, g: &RootDatum, at: &str) -> Result<QVec> {
        let n = g.rank();
        match self {
            VectorSpec::Coords(v) => {
                if v.len() != n {
                    return Err(parse_err(at, format!("expected {n} coordinates, found {}", v.len())));
                }
                Ok(v.clone())
            }
            VectorSpec::Named(map) => {
                let mut out = vec![Rat::from_integer(0.into()); n];
                for (k, c) in map {
                    if let Some(i) = g.root_index(k) {
                        for (o, x) in out.iter_mut().zip(g.simple_root(i)) {
                            *o += c * x;
                        }
                    } else if let Some(i) = unit_index(k).filter(|&i| i < n) {
                        out[i] += c;
                    } else {
                        return Err(parse_err(format!("{at}.{k}"), format!("unknown root or coordinate name `{k}`")));
                    }
                }
                Ok(out)
            }
        }
    }

    /// Root coefficients when `x` lies in the root span, else coordinates.
    pub fn describe(g: &RootDatum, x: &[Rat]) -> VectorSpec {
        match g.root_coefficients(x) {
            Ok(c) if g.from_root_coefficients(&c) == x => VectorSpec::Named(
                c.iter()
                    .enumerate()
                    .filter(|(_, v)| !num_traits::Zero::is_zero(*v))
                    .map(|(i, v)| (g.root_name(i), v.clone()))
                    .collect(),
            ),
            _ => VectorSpec::Coords(x.to_vec()),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            VectorSpec::Coords(v) => Value::Array(v.iter().map(emit_number).collect()),
            VectorSpec::Named(map) => Value::Object(map.iter().map(|(k, v)| (k.clone(), emit_number(v))).collect()),
        }
    }
}

fn unit_index(name: &str) -> Option<usize> {
    let k: usize = name.strip_prefix('e')?.parse().ok()?;
    k.checked_sub(1)
}

impl DatumDocument {
    pub fn from_json_str(text: &str) -> Result<DatumDocument> {
        let v: Value = serde_json::from_str(text)
            .map_err(|e| parse_err(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
        DatumDocument::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<DatumDocument> {
        let obj = v.as_object().ok_or_else(|| parse_err("document", "expected an object"))?;
        for key in obj.keys() {
            if !["group", "M", "Sigma", "Sp", "Da"].contains(&key.as_str()) {
                return Err(parse_err(key.as_str(), "unknown field"));
            }
        }
        let group = parse_group(obj.get("group").ok_or_else(|| parse_err("document", "missing `group`"))?)?;
        let m = parse_vectors(Some(obj.get("M").ok_or_else(|| parse_err("document", "missing `M`"))?), "M")?;
        let sigma = parse_vectors(obj.get("Sigma"), "Sigma")?;
        let sp = match obj.get("Sp") {
            None => Vec::new(),
            Some(x) => {
                let items = x.as_array().ok_or_else(|| parse_err("Sp", "expected an array of root names"))?;
                items
                    .iter()
                    .enumerate()
                    .map(|(i, n)| {
                        n.as_str()
                            .map(str::to_string)
                            .ok_or_else(|| parse_err(format!("Sp[{i}]"), "expected a root name"))
                    })
                    .collect::<Result<_>>()?
            }
        };
        let mut da = Vec::new();
        if let Some(x) = obj.get("Da") {
            let items = x.as_array().ok_or_else(|| parse_err("Da", "expected an array of colors"))?;
            for (i, c) in items.iter().enumerate() {
                let at = format!("Da[{i}]");
                let label = c.get("label").and_then(Value::as_str).ok_or_else(|| parse_err(&at, "missing `label`"))?;
                let rho =
                    parse_numbers(c.get("rho").ok_or_else(|| parse_err(&at, "missing `rho`"))?, &format!("{at}.rho"))?;
                da.push(ColorSpec { label: label.to_string(), rho });
            }
        }
        Ok(DatumDocument { group, m, sigma, sp, da })
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("group".into(), self.group.to_json());
        obj.insert("M".into(), Value::Array(self.m.iter().map(VectorSpec::to_json).collect()));
        obj.insert("Sigma".into(), Value::Array(self.sigma.iter().map(VectorSpec::to_json).collect()));
        obj.insert("Sp".into(), json!(self.sp));
        let da: Vec<Value> = self
            .da
            .iter()
            .map(|c| json!({ "label": c.label, "rho": Value::Array(c.rho.iter().map(emit_number).collect()) }))
            .collect();
        obj.insert("Da".into(), Value::Array(da));
        Value::Object(obj)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        s.push('\n');
        s
    }

    /// The rows of `M` as given, in ambient coordinates.
    pub fn m_rows(&self, g: &RootDatum) -> Result<Vec<QVec>> {
        let rows: Vec<QVec> =
            self.m.iter().enumerate().map(|(i, v)| v.resolve(g, &format!("M[{i}]"))).collect::<Result<_>>()?;
        for (i, r) in rows.iter().enumerate() {
            if to_z(r).is_none() {
                return Err(parse_err(format!("M[{i}]"), "not a character: coordinates must be integers"));
            }
        }
        if rank(&rows, g.rank()) != rows.len() {
            return Err(parse_err("M", "rows are linearly dependent"));
        }
        Ok(rows)
    }

    /// Builds the datum. Axioms are not checked here.
    pub fn resolve(&self) -> Result<LunaDatum> {
        let g = Arc::new(self.group.resolve()?);
        let n = g.rank();
        let rows = self.m_rows(&g)?;
        let rows_z: Vec<ZVec> = rows.iter().map(|r| to_z(r).expect("checked")).collect();
        let m = Sublattice::from_generators(n, &rows_z)?;
        let mut sigma = Vec::new();
        for (i, v) in self.sigma.iter().enumerate() {
            let at = format!("Sigma[{i}]");
            let x = v.resolve(&g, &at)?;
            sigma.push(to_z(&x).ok_or_else(|| parse_err(&at, "not a character: coordinates must be integers"))?);
        }
        let mut sp = BTreeSet::new();
        for (i, name) in self.sp.iter().enumerate() {
            let k = g
                .root_index(name)
                .ok_or_else(|| parse_err(format!("Sp[{i}]"), format!("unknown root name `{name}`")))?;
            sp.insert(k);
        }
        let mut da = Vec::new();
        for (i, c) in self.da.iter().enumerate() {
            let at = format!("Da[{i}].rho");
            if c.rho.len() != rows.len() {
                return Err(parse_err(
                    at,
                    format!("expected {} values (one per row of M), found {}", rows.len(), c.rho.len()),
                ));
            }
            let rho = m.functional_from_values(&rows, &c.rho)?;
            da.push(AbstractColor { label: c.label.clone(), rho });
        }
        LunaDatum::new(g, m, sigma, sp, da).map_err(|e| match e {
            Error::Malformed(msg) => parse_err("document", msg),
            other => other,
        })
    }

    /// Canonical form: Hermite rows of `M`, sorted `Σ`, `Sᵖ` and `𝒟ᵃ`.
    pub fn from_datum(s: &LunaDatum) -> DatumDocument {
        let g = s.group();
        let s = s.canonical();
        DatumDocument {
            group: GroupDescriptor::describe(g),
            m: s.lattice().basis().iter().map(|b| VectorSpec::Coords(to_q(b))).collect(),
            sigma: s.sigma().iter().map(|x| VectorSpec::describe(g, &to_q(x))).collect(),
            sp: s.sp().iter().map(|&i| g.root_name(i)).collect(),
            da: s.da().iter().map(|d| ColorSpec { label: d.label.clone(), rho: d.rho.0.clone() }).collect(),
        }
    }
}

/// Parses a JSON array of vectors as the generators of a lattice.
pub fn parse_lattice(g: &RootDatum, v: &Value, at: &str) -> Result<Sublattice> {
    let mut gens = Vec::new();
    for (i, spec) in parse_vectors(Some(v), at)?.iter().enumerate() {
        let here = format!("{at}[{i}]");
        let x = spec.resolve(g, &here)?;
        gens.push(to_z(&x).ok_or_else(|| parse_err(&here, "not a character: coordinates must be integers"))?);
    }
    Sublattice::from_generators(g.rank(), &gens)
}

/// Parses a datum file.
pub fn parse_datum(text: &str) -> Result<LunaDatum> {
    DatumDocument::from_json_str(text)?.resolve()
}

/// The canonical text of a datum.
pub fn emit_datum(s: &LunaDatum) -> String {
    DatumDocument::from_datum(s).to_json_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{qvec, zvec};

    const EX51: &str = r#"{
        "group": {"preset": "Spin7"},
        "M": [{"a1": 1}, {"a2": 2, "a3": 2}],
        "Sigma": [{"a1": 1}, {"a2": 2, "a3": 2}],
        "Sp": ["a3"],
        "Da": [{"label": "D+", "rho": [1, -1]}, {"label": "D-", "rho": ["1", "-1/1"]}]
    }"#;

    #[test]
    fn parses_spin7_example() {
        let s = parse_datum(EX51).unwrap();
        assert_eq!(s.group().rank(), 3);
        assert_eq!(s.lattice().basis(), &[zvec(&[2, 0, 0]), zvec(&[0, 1, 0])]);
        assert_eq!(s.sigma(), &[zvec(&[-2, 2, 0]), zvec(&[2, -1, 0])]);
        assert_eq!(s.sp(), &BTreeSet::from([2]));
        assert!(crate::luna::validate(&s).is_empty());
    }

    #[test]
    fn canonical_emit_is_a_fixed_point() {
        let once = emit_datum(&parse_datum(EX51).unwrap());
        let twice = emit_datum(&parse_datum(&once).unwrap());
        assert_eq!(once, twice);
    }

    #[test]
    fn errors_carry_locations() {
        let bad_rho = EX51.replace("[1, -1]}, {\"label\": \"D-\"", "[1]}, {\"label\": \"D-\"");
        match parse_datum(&bad_rho) {
            Err(Error::Parse { location, .. }) => assert_eq!(location, "Da[0].rho"),
            other => panic!("{other:?}"),
        }
        match parse_datum(&EX51.replace("\"a3\"]", "\"a9\"]")) {
            Err(Error::Parse { location, .. }) => assert_eq!(location, "Sp[0]"),
            other => panic!("{other:?}"),
        }
        match parse_datum(&EX51.replace("\"-1/1\"", "\"x\"")) {
            Err(Error::Parse { location, .. }) => assert_eq!(location, "Da[1].rho[1]"),
            other => panic!("{other:?}"),
        }
        match parse_datum(
            &EX51.replace(
                "{\"a1\": 1}, {\"a2\": 2, \"a3\": 2}],\n        \"Sigma\"",
                "[1, 0], [0, 1]],\n        \"Sigma\"",
            ),
        ) {
            Err(Error::Parse { location, .. }) => assert_eq!(location, "M[0]"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fractional_values_round_trip() {
        assert_eq!(emit_number(&Rat::new(1.into(), 2.into())), json!("1/2"));
        assert_eq!(parse_number(&json!("-3/6"), "x").unwrap(), Rat::new((-1).into(), 2.into()));
        assert!(parse_number(&json!(0.5), "x").is_err());
        let g = RootDatum::preset("SL2xSL2").unwrap();
        let half = VectorSpec::describe(&g, &[Rat::from_integer(1.into()), Rat::from_integer(1.into())]);
        assert_eq!(half.to_json(), json!({"a1": "1/2", "a2": "1/2"}));
        assert_eq!(half.resolve(&g, "v").unwrap(), qvec(&[1, 1]));
    }

    #[test]
    fn factor_descriptor_round_trip() {
        let d = GroupDescriptor::Factors {
            factors: vec![Factor { ty: DynkinType::C, rank: 3, isogeny: Isogeny::Adjoint }],
            torus_rank: 1,
        };
        let g = d.resolve().unwrap();
        assert_eq!(GroupDescriptor::describe(&g), d);
        assert_eq!(parse_group(&d.to_json()).unwrap(), d);
        assert_eq!(
            GroupDescriptor::describe(&RootDatum::preset("Spin7").unwrap()),
            GroupDescriptor::Preset("Spin7".into())
        );
    }
}
