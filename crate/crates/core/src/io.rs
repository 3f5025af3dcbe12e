//! JSON encodings of polytopes, functions, measures and height values.
//!
//! Rationals are written as canonical "p/q" strings; on input, JSON
//! integers and decimal strings are accepted as well.

use serde_json::{json, Map, Value};

use crate::concave_calculus::float::FloatPA;
use crate::concave_calculus::{Affine, ConcavePA};
use crate::error::{Error, Result};
use crate::heights::{PlaceData, RoofFunction};
use crate::lattice_polytopes::Polyhedron;
use crate::logq::LogQ;
use crate::measures::DiscreteMeasure;
use crate::scalar::{fmt_f64, fmt_q, parse_q, Vector, Q};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// A float rounded to the 12 significant digits used for output.
pub fn float_value(x: f64) -> Value {
    fmt_f64(x).parse::<f64>().ok().and_then(serde_json::Number::from_f64).map(Value::Number).unwrap_or(Value::Null)
}

pub fn q_value(x: &Q) -> Value {
    Value::String(fmt_q(x))
}

pub fn vector_value(v: &[Q]) -> Value {
    Value::Array(v.iter().map(q_value).collect())
}

pub fn parse_rational(v: &Value) -> Result<Q> {
    match v {
        Value::String(s) => parse_q(s),
        Value::Number(n) => parse_q(&n.to_string()),
        _ => Err(parse_err(format!("expected a rational, found {v}"))),
    }
}

pub fn parse_vector(v: &Value) -> Result<Vector> {
    v.as_array().ok_or_else(|| parse_err("expected an array of rationals"))?.iter().map(parse_rational).collect()
}

fn parse_vectors(v: Option<&Value>) -> Result<Vec<Vector>> {
    match v {
        None | Some(Value::Null) => Ok(Vec::new()),
        Some(a) => a.as_array().ok_or_else(|| parse_err("expected an array of vectors"))?.iter().map(parse_vector).collect(),
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(format!("missing field {key:?}")))
}

fn check_dims(dim: Option<usize>, vs: &[Vector]) -> Result<()> {
    if let Some(d) = dim {
        if vs.iter().any(|v| v.len() != d) {
            return Err(parse_err(format!("coordinates must have length {d}")));
        }
    }
    Ok(())
}

/// {"dim": n, "vertices": [[...]], "rays": [[...]]}
pub fn parse_polytope(v: &Value) -> Result<Polyhedron> {
    let dim = v.get("dim").and_then(Value::as_u64).map(|d| d as usize);
    let verts = parse_vectors(v.get("vertices"))?;
    let rays = parse_vectors(v.get("rays"))?;
    check_dims(dim, &verts)?;
    check_dims(dim, &rays)?;
    if verts.is_empty() {
        return Err(parse_err("a polyhedron needs at least one vertex"));
    }
    Polyhedron::hull(&verts, &rays)
}

pub fn polytope_value(p: &Polyhedron) -> Value {
    json!({
        "dim": p.ambient_dim(),
        "vertices": p.vertices().iter().map(|v| vector_value(v)).collect::<Vec<_>>(),
        "rays": p.rays().iter().map(|v| vector_value(v)).collect::<Vec<_>>(),
    })
}

pub fn h_rep_value(p: &Polyhedron) -> Value {
    let enc = |fs: &[crate::lattice_polytopes::Facet]| -> Vec<Value> {
        fs.iter()
            .map(|f| json!({"normal": f.normal.iter().map(|x| x.to_string().parse::<Value>().unwrap_or(Value::Null)).collect::<Vec<_>>(), "offset": fmt_q(&f.offset)}))
            .collect()
    };
    json!({"facets": enc(p.facets()), "equations": enc(p.equations())})
}

/// A parsed function: exact when every constant is rational.
pub enum Function {
    Exact(ConcavePA),
    Float(FloatPA),
}

/// {"dim": n, "pieces": [{"m": [...], "c": "p/q" | float}], "domain": polytope | "all"}
pub fn parse_function(v: &Value) -> Result<Function> {
    let pieces = field(v, "pieces")?.as_array().ok_or_else(|| parse_err("pieces must be an array"))?;
    if pieces.is_empty() {
        return Err(parse_err("a function needs at least one piece"));
    }
    let dim = v.get("dim").and_then(Value::as_u64).map(|d| d as usize);
    let slopes: Vec<Vector> = pieces.iter().map(|p| parse_vector(field(p, "m")?)).collect::<Result<_>>()?;
    check_dims(dim, &slopes)?;
    let n = slopes[0].len();
    let is_float = pieces.iter().any(|p| p.get("c").is_some_and(|c| c.is_f64()));
    let domain = match v.get("domain") {
        None => None,
        Some(Value::String(s)) if s == "all" => None,
        Some(d) => Some(parse_polytope(d)?),
    };
    if is_float {
        if domain.is_some() {
            return Err(Error::Unsupported("float constants are only supported on the whole space".into()));
        }
        let pcs = slopes
            .into_iter()
            .zip(pieces)
            .map(|(m, p)| Ok((m, field(p, "c")?.as_f64().ok_or_else(|| parse_err("bad constant"))?)))
            .collect::<Result<Vec<_>>>()?;
        return Ok(Function::Float(FloatPA::new(pcs)?));
    }
    let affs = slopes
        .into_iter()
        .zip(pieces)
        .map(|(m, p)| Ok(Affine::new(m, p.get("c").map(parse_rational).transpose()?.unwrap_or_default())))
        .collect::<Result<Vec<_>>>()?;
    let f = match domain {
        None => ConcavePA::on_space(affs)?,
        Some(d) => {
            if d.ambient_dim() != n {
                return Err(parse_err("domain dimension does not match the pieces"));
            }
            ConcavePA::new(affs, d)?
        }
    };
    Ok(Function::Exact(f))
}

pub fn parse_exact_function(v: &Value) -> Result<ConcavePA> {
    match parse_function(v)? {
        Function::Exact(f) => Ok(f),
        Function::Float(_) => Err(Error::Unsupported("this operation needs rational constants".into())),
    }
}

pub fn function_value(f: &ConcavePA) -> Value {
    let dom = f.domain();
    let domain = if dom.facets().is_empty() && dom.equations().is_empty() { json!("all") } else { polytope_value(dom) };
    json!({
        "dim": f.dim(),
        "pieces": f.pieces().iter().map(|p| json!({"m": vector_value(&p.slope), "c": fmt_q(&p.constant)})).collect::<Vec<_>>(),
        "domain": domain,
    })
}

pub fn measure_value(m: &DiscreteMeasure) -> Value {
    json!({
        "atoms": m.atoms().iter().map(|a| vector_value(a)).collect::<Vec<_>>(),
        "masses": m.masses().iter().map(q_value).collect::<Vec<_>>(),
    })
}

/// {"exact": "...", "float": x}
pub fn logq_value(x: &LogQ) -> Value {
    json!({"exact": x.to_string(), "float": float_value(x.to_f64())})
}

/// "inf" or a prime.
pub fn parse_place(s: &str) -> Result<PlaceData> {
    match s.trim() {
        "inf" | "infinity" | "arch" => Ok(PlaceData::infinity()),
        t => PlaceData::prime(t.parse().map_err(|_| parse_err(format!("bad place {t:?}")))?),
    }
}

pub fn parse_affine(v: &Value) -> Result<Affine> {
    Ok(Affine::new(parse_vector(field(v, "m")?)?, v.get("c").map(parse_rational).transpose()?.unwrap_or_default()))
}

pub fn parse_affines(v: &Value) -> Result<Vec<Affine>> {
    v.as_array().ok_or_else(|| parse_err("expected an array of affine forms"))?.iter().map(parse_affine).collect()
}

pub fn parse_rationals(v: &Value) -> Result<Vec<Q>> {
    parse_vector(v)
}

/// {"type": "pa", "function": ...} or {"type": "entropic", "forms": [...], "weights": [...]}
pub fn parse_roof(v: &Value) -> Result<RoofFunction> {
    match field(v, "type")?.as_str() {
        Some("pa") => Ok(RoofFunction::PiecewiseAffine(parse_exact_function(field(v, "function")?)?)),
        Some("entropic") => {
            Ok(RoofFunction::Entropic { forms: parse_affines(field(v, "forms")?)?, weights: parse_rationals(field(v, "weights")?)? })
        }
        _ => Err(parse_err("roof type must be \"pa\" or \"entropic\"")),
    }
}

/// Flattens a JSON document into tab-separated lines.
pub fn to_tsv(v: &Value) -> String {
    fn cell(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            Value::Null => String::new(),
            other => other.to_string(),
        }
    }
    let mut out = String::new();
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Array(rows) if rows.iter().all(Value::is_object) && !rows.is_empty() => {
                        out.push_str(&table(k, rows));
                    }
                    _ => out.push_str(&format!("{k}\t{}\n", cell(val))),
                }
            }
        }
        Value::Array(rows) if rows.iter().all(Value::is_object) => out.push_str(&table("", rows)),
        other => out.push_str(&format!("{}\n", cell(other))),
    }
    return out;

    fn table(name: &str, rows: &[Value]) -> String {
        let mut keys: Vec<String> = Vec::new();
        for r in rows {
            for k in r.as_object().map(Map::keys).into_iter().flatten() {
                if !keys.contains(k) {
                    keys.push(k.clone());
                }
            }
        }
        let mut s = String::new();
        if !name.is_empty() {
            s.push_str(&format!("# {name}\n"));
        }
        s.push_str(&keys.join("\t"));
        s.push('\n');
        for r in rows {
            let line: Vec<String> = keys.iter().map(|k| r.get(k).map(cell).unwrap_or_default()).collect();
            s.push_str(&line.join("\t"));
            s.push('\n');
        }
        s
    }
}
