//! `luna`: command-line front end for Luna data files.
//!
//! Every run prints one report. Exit status: 0 when the answer is positive,
//! 1 when the input is well formed but the answer is negative, 2 on parse
//! or usage errors.

mod render;

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use luna_datum::arith::parse_rat;
use luna_datum::containment::{self, check_pair, distinguished_roots_alternative, distinguished_roots_discrepancies};
use luna_datum::document::{parse_lattice, DatumDocument};
use luna_datum::{
    datum_equal, full_colors, is_subdatum, quotient_datum, spherical_roots_of_group, stein_decompose, subdatum,
    validate, valuation_cone, ColoredSubspace, DistinguishedPair, Error, LatticeIndex, LunaDatum, QVec, Sublattice,
    Subspace,
};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use render::object;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Command {
    Validate,
    Colors,
    ValuationCone,
    SphericalRoots,
    Normalizer,
    IdentityComponent,
    Connected,
    DistinguishedRoots,
    Quotient,
    CheckColoredSubspace,
    CheckPair,
    Subdatum,
    EnumerateFinite,
    IsSubdatum,
    Stein,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Validate and transform Luna data of spherical subgroups.
#[derive(Debug, Parser)]
#[command(name = "luna", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Datum file (JSON).
    input: PathBuf,
    /// Largest index for `enumerate-finite`.
    #[arg(long)]
    bound: Option<u64>,
    /// `LATTICE:labels` for `check-pair`, `subdatum` and `stein`. LATTICE is
    /// an inline JSON array of vectors or a file holding one.
    #[arg(long)]
    pair: Option<String>,
    /// `r1;r2;...:labels` for `quotient` and `check-colored-subspace`. Each
    /// row lists values on the rows of `M` in the datum file.
    #[arg(long)]
    subspace: Option<String>,
    /// Candidate subdatum file for `is-subdatum`.
    #[arg(long)]
    candidate: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

/// A well-formed answer; `success` decides between exit 0 and 1.
struct Outcome {
    success: bool,
    result: Value,
}

fn positive(result: Value) -> Result<Outcome, Error> {
    Ok(Outcome { success: true, result })
}

fn answer(success: bool, result: Value) -> Result<Outcome, Error> {
    Ok(Outcome { success, result })
}

struct Input {
    doc: DatumDocument,
    datum: LunaDatum,
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse { location: path.display().to_string(), message: e.to_string() })
}

fn usage(message: impl Into<String>) -> Error {
    Error::Parse { location: "arguments".into(), message: message.into() }
}

/// Splits `spec:labels` at the last colon outside JSON.
fn split_labels(spec: &str) -> (&str, BTreeSet<String>) {
    match spec.rsplit_once(':') {
        Some((head, tail)) if !tail.contains(['}', ']', '"']) => {
            let labels = tail.split(',').map(str::trim).filter(|l| !l.is_empty()).map(str::to_string).collect();
            (head, labels)
        }
        _ => (spec, BTreeSet::new()),
    }
}

fn parse_pair(input: &Input, spec: &str) -> Result<DistinguishedPair, Error> {
    let (lattice, d1) = split_labels(spec);
    let text = if lattice.trim_start().starts_with('[') { lattice.to_string() } else { read(Path::new(lattice))? };
    let v: Value =
        serde_json::from_str(&text).map_err(|e| Error::Parse { location: "--pair".into(), message: e.to_string() })?;
    let mt = parse_lattice(input.datum.group(), &v, "--pair")?;
    Ok(DistinguishedPair { mt, d1 })
}

fn parse_subspace(input: &Input, spec: &str) -> Result<ColoredSubspace, Error> {
    let (rows, d1) = split_labels(spec);
    let s = &input.datum;
    let m_rows = input.doc.m_rows(s.group())?;
    let mut forms: Vec<QVec> = Vec::new();
    for (i, row) in rows.split(';').map(str::trim).filter(|r| !r.is_empty()).enumerate() {
        let values = row
            .split(',')
            .map(parse_rat)
            .collect::<Result<QVec, _>>()
            .map_err(|_| Error::Parse { location: format!("--subspace row {i}"), message: format!("`{row}`") })?;
        if values.len() != m_rows.len() {
            return Err(Error::Parse {
                location: format!("--subspace row {i}"),
                message: format!("expected {} values (one per row of M), found {}", m_rows.len(), values.len()),
            });
        }
        forms.push(s.lattice().functional_from_values(&m_rows, &values)?.0);
    }
    Ok(ColoredSubspace { n1: Subspace::span(s.rank(), &forms)?, d1 })
}

fn witness(pair: &DistinguishedPair) -> Value {
    json!({ "M": render::lattice(&pair.mt), "D1": pair.d1.iter().collect::<Vec<_>>() })
}

fn index_in(m: &Sublattice, sub: &Sublattice) -> Result<Value, Error> {
    Ok(match m.index_of(sub)? {
        LatticeIndex::Finite(k) => json!(k.to_string().parse::<u64>().unwrap_or(u64::MAX)),
        LatticeIndex::Infinite => json!("infinite"),
    })
}

fn run(args: &Args, input: &Input) -> Result<Outcome, Error> {
    let s = &input.datum;
    let g = s.group();
    let require = |o: &Option<String>, flag: &str| o.clone().ok_or_else(|| usage(format!("missing --{flag}")));
    match args.command {
        Command::Validate => {
            let vs = validate(s);
            answer(
                vs.is_empty(),
                object(vec![("valid", json!(vs.is_empty())), ("violations", render::violations(&vs))]),
            )
        }
        Command::Colors => positive(object(vec![("colors", render::colors(s, &full_colors(s)?))])),
        Command::ValuationCone => {
            full_colors(s)?;
            positive(render::cone(&valuation_cone(s)))
        }
        Command::SphericalRoots => {
            let all = spherical_roots_of_group(g);
            let items: Vec<Value> = all.iter().map(|m| render::spherical_root(g, m)).collect();
            positive(object(vec![("count", json!(items.len())), ("roots", Value::Array(items))]))
        }
        Command::Normalizer => positive(object(vec![("datum", render::datum(&containment::normalizer_datum(s)?))])),
        Command::IdentityComponent => {
            let s0 = containment::identity_component_datum(s)?;
            positive(object(vec![
                ("datum", render::datum(&s0)),
                ("equal_to_input", json!(datum_equal(&s0, s))),
                ("violations", render::violations(&validate(&s0))),
            ]))
        }
        Command::Connected => {
            let closure = containment::d_closure(s, s.lattice())?;
            let connected = &closure == s.lattice();
            answer(
                connected,
                object(vec![
                    ("connected", json!(connected)),
                    ("M_circle", render::lattice(&closure)),
                    ("index", index_in(&closure, s.lattice())?),
                ]),
            )
        }
        Command::DistinguishedRoots => {
            let show = |xs: Vec<luna_datum::ZVec>| {
                Value::Array(xs.iter().map(|x| render::vector(g, &luna_datum::arith::to_q(x))).collect())
            };
            positive(object(vec![
                ("sigma_plus", show(containment::distinguished_roots(s)?)),
                ("alternative", show(distinguished_roots_alternative(s)?)),
                ("discrepancies", show(distinguished_roots_discrepancies(s)?)),
            ]))
        }
        Command::Quotient => {
            let c = parse_subspace(input, &require(&args.subspace, "subspace")?)?;
            match quotient_datum(s, &c) {
                Ok(q) => positive(object(vec![("colored", json!(true)), ("datum", render::datum(&q))])),
                Err(Error::NotColored) => answer(false, object(vec![("colored", json!(false))])),
                Err(e) => Err(e),
            }
        }
        Command::CheckColoredSubspace => {
            let c = parse_subspace(input, &require(&args.subspace, "subspace")?)?;
            let colored = containment::is_colored_subspace(s, &c.n1, &c.d1)?;
            answer(colored, object(vec![("colored", json!(colored)), ("N1", render::subspace(&c.n1))]))
        }
        Command::CheckPair => {
            let pair = parse_pair(input, &require(&args.pair, "pair")?)?;
            let check = check_pair(s, &pair.mt, &pair.d1)?;
            let saturated = pair.mt.saturation_in(s.lattice())? == pair.mt;
            let show = |xs: &[luna_datum::ZVec]| {
                Value::Array(xs.iter().map(|x| render::vector(g, &luna_datum::arith::to_q(x))).collect())
            };
            answer(
                check.distinguished,
                object(vec![
                    ("pair", witness(&pair)),
                    ("colored", json!(check.colored)),
                    ("distinguished", json!(check.distinguished)),
                    ("sigma_tilde", show(&check.sigma_tilde)),
                    ("sigma_0", show(&check.sigma_0)),
                    ("sigma_0_plus", show(&check.sigma_0_plus)),
                    ("offending", show(&check.offending)),
                    ("saturated", json!(saturated)),
                    ("colored_subspace_pair", json!(check.distinguished && saturated)),
                    ("distinguished_subgroup", json!(check.distinguished && pair.d1.is_empty())),
                ]),
            )
        }
        Command::Subdatum => {
            let pair = parse_pair(input, &require(&args.pair, "pair")?)?;
            match subdatum(s, &pair) {
                Ok(sub) => answer(
                    sub.violations.is_empty(),
                    object(vec![
                        ("pair", witness(&pair)),
                        ("datum", render::datum(&sub.datum)),
                        ("violations", render::violations(&sub.violations)),
                    ]),
                ),
                Err(Error::NotDistinguished) => {
                    answer(false, object(vec![("pair", witness(&pair)), ("distinguished", json!(false))]))
                }
                Err(e) => Err(e),
            }
        }
        Command::EnumerateFinite => {
            let bound = args.bound.ok_or_else(|| usage("missing --bound"))?;
            let found = containment::enumerate_finite_subdata(s, bound)?;
            let mut items = Vec::new();
            for sub in &found {
                items.push(object(vec![
                    ("index", index_in(s.lattice(), sub.datum.lattice())?),
                    ("M", render::lattice(sub.datum.lattice())),
                    ("datum", render::datum(&sub.datum)),
                    ("violations", render::violations(&sub.violations)),
                ]));
            }
            positive(object(vec![
                ("bound", json!(bound)),
                ("count", json!(items.len())),
                ("subdata", Value::Array(items)),
            ]))
        }
        Command::IsSubdatum => {
            let path = args.candidate.as_ref().ok_or_else(|| usage("missing --candidate"))?;
            let st = DatumDocument::from_json_str(&read(path)?)?.resolve()?;
            let found = is_subdatum(&st, s)?;
            let w = found.as_ref().map_or(Value::Null, witness);
            answer(found.is_some(), object(vec![("subdatum", json!(found.is_some())), ("witness", w)]))
        }
        Command::Stein => {
            let pair = parse_pair(input, &require(&args.pair, "pair")?)?;
            let (c, mt) = match stein_decompose(s, &pair) {
                Ok(x) => x,
                Err(Error::NotDistinguished) => {
                    return answer(false, object(vec![("pair", witness(&pair)), ("distinguished", json!(false))]))
                }
                Err(e) => return Err(e),
            };
            let s0 = quotient_datum(s, &c)?;
            let direct = subdatum(s, &pair)?.datum;
            let via = subdatum(&s0, &DistinguishedPair { mt: mt.clone(), d1: BTreeSet::new() })?.datum;
            let round_trip = datum_equal(&direct, &via);
            answer(
                round_trip,
                object(vec![
                    (
                        "colored_subspace",
                        json!({ "N1": render::subspace(&c.n1), "D1": c.d1.iter().collect::<Vec<_>>() }),
                    ),
                    ("quotient", render::datum(&s0)),
                    ("finite_part", json!({ "M": render::lattice(&mt), "index": index_in(s0.lattice(), &mt)? })),
                    ("round_trip", json!(round_trip)),
                ]),
            )
        }
    }
}

fn command_name(c: Command) -> String {
    c.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

fn derived(s: &LunaDatum) -> Value {
    match full_colors(s) {
        Ok(colors) => {
            object(vec![("colors", render::colors(s, &colors)), ("valuation_cone", render::cone(&valuation_cone(s)))])
        }
        Err(_) => Value::Null,
    }
}

/// Builds the report; the exit status is read back from it.
fn report(args: &Args) -> Value {
    let mut out = serde_json::Map::new();
    out.insert("command".into(), json!(command_name(args.command)));
    let bytes = fs::read(&args.input);
    let digest = bytes.as_ref().map(|b| hex::encode(Sha256::digest(b))).ok();
    out.insert("input_digest".into(), json!(digest));
    let loaded = read(&args.input).and_then(|text| {
        let doc = DatumDocument::from_json_str(&text)?;
        let datum = doc.resolve()?;
        Ok(Input { doc, datum })
    });
    let input = match loaded {
        Ok(i) => i,
        Err(e) => return finish(out, Err(e), Value::Null),
    };
    let outcome = run(args, &input);
    finish(out, outcome, derived(&input.datum))
}

fn finish(mut out: serde_json::Map<String, Value>, outcome: Result<Outcome, Error>, derived: Value) -> Value {
    match outcome {
        Ok(o) => {
            out.insert("success".into(), json!(o.success));
            out.insert("result".into(), o.result);
        }
        Err(Error::InvalidDatum(vs)) => {
            out.insert("success".into(), json!(false));
            out.insert("result".into(), object(vec![("valid", json!(false)), ("violations", render::violations(&vs))]));
        }
        Err(e) => {
            out.insert("success".into(), json!(false));
            let location = match &e {
                Error::Parse { location, .. } => json!(location),
                _ => Value::Null,
            };
            out.insert("error".into(), json!({ "message": e.to_string(), "location": location }));
        }
    }
    out.insert("derived".into(), derived);
    Value::Object(out)
}

fn exit_code(report: &Value) -> u8 {
    if report.get("error").is_some() {
        2
    } else if report["success"] == json!(true) {
        0
    } else {
        1
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let report = report(&args);
    let out = match args.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
        Format::Text => render::text(&report),
    };
    // A closed pipe is not an error of ours; the exit status still stands.
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    ExitCode::from(exit_code(&report))
}
