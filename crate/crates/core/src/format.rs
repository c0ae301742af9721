//! JSON file formats: algebra files, vector-field files and point-map files.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::lie::{BasisBracket, LieAlgebra};
use crate::linalg::zero_vector;
use crate::poly::Poly;
use crate::rational::parse_rational;
use crate::vectorfield::{PointMap, PolyVectorField};

#[derive(Deserialize)]
#[serde(untagged)]
enum BasisRef {
    Index(usize),
    Name(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketEntry {
    left: BasisRef,
    right: BasisRef,
    result: Map<String, Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    name: String,
    basis: Vec<String>,
    #[serde(default)]
    brackets: Vec<BracketEntry>,
}

fn resolve(basis: &[String], r: &BasisRef) -> Result<usize> {
    match r {
        BasisRef::Index(i) if *i < basis.len() => Ok(*i),
        BasisRef::Index(i) => Err(Error::Format(format!("basis index {i} out of range"))),
        BasisRef::Name(name) => basis
            .iter()
            .position(|b| b == name)
            .or_else(|| name.parse::<usize>().ok().filter(|&i| i < basis.len()))
            .ok_or_else(|| Error::Format(format!("unknown basis element {name:?}"))),
    }
}

fn rational_value(v: &Value, context: &str) -> Result<crate::Rational> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() => n.to_string(),
        _ => return Err(Error::Format(format!("{context}: expected a rational string"))),
    };
    parse_rational(text.trim()).map_err(|e| Error::Format(format!("{context}: {e}")))
}

/// Parses an algebra file. Basis references may be names or 0-based indices.
pub fn parse_algebra(text: &str) -> Result<LieAlgebra> {
    let file: AlgebraFile = serde_json::from_str(text)?;
    let n = file.basis.len();
    for (i, name) in file.basis.iter().enumerate() {
        if file.basis[..i].contains(name) {
            return Err(Error::Format(format!("duplicate basis name {name:?}")));
        }
    }
    let mut brackets = Vec::with_capacity(file.brackets.len());
    for (idx, entry) in file.brackets.iter().enumerate() {
        let left = resolve(&file.basis, &entry.left)?;
        let right = resolve(&file.basis, &entry.right)?;
        let mut result = zero_vector(n);
        for (key, value) in &entry.result {
            let k = resolve(&file.basis, &BasisRef::Name(key.clone()))?;
            result[k] = rational_value(value, &format!("bracket #{idx}, component {key}"))?;
        }
        brackets.push(BasisBracket { left, right, result });
    }
    LieAlgebra::from_brackets(file.name, file.basis, &brackets)
}

/// Serializes an algebra with its nonzero brackets `[Q_i, Q_j]`, `i < j`, in
/// basis order. Output is pretty-printed JSON with a trailing newline.
pub fn algebra_to_json(g: &LieAlgebra) -> String {
    let names = g.basis_names();
    let brackets: Vec<Value> = g
        .nonzero_brackets()
        .into_iter()
        .map(|b| {
            let mut result = Map::new();
            for (k, x) in b.result.iter().enumerate() {
                if *x != crate::Rational::from_integer(0.into()) {
                    result.insert(names[k].clone(), Value::String(x.to_string()));
                }
            }
            let mut entry = Map::new();
            entry.insert("left".into(), Value::String(names[b.left].clone()));
            entry.insert("right".into(), Value::String(names[b.right].clone()));
            entry.insert("result".into(), Value::Object(result));
            Value::Object(entry)
        })
        .collect();
    let mut root = Map::new();
    root.insert("name".into(), Value::String(g.name().to_string()));
    root.insert(
        "basis".into(),
        Value::Array(names.iter().cloned().map(Value::String).collect()),
    );
    root.insert("brackets".into(), Value::Array(brackets));
    let mut out = serde_json::to_string_pretty(&Value::Object(root)).expect("json");
    out.push('\n');
    out
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldEntry {
    name: String,
    components: Map<String, Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldFile {
    variables: Vec<String>,
    fields: Vec<FieldEntry>,
}

fn check_variables(vars: &[String]) -> Result<()> {
    for (i, v) in vars.iter().enumerate() {
        let valid = v
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(Error::Format(format!("invalid variable name {v:?}")));
        }
        if vars[..i].contains(v) {
            return Err(Error::Format(format!("duplicate variable {v:?}")));
        }
    }
    Ok(())
}

fn parse_components(
    vars: &[String],
    components: &Map<String, Value>,
    context: &str,
) -> Result<Vec<Poly>> {
    let mut out = vec![Poly::zero(vars.len()); vars.len()];
    for (key, value) in components {
        let idx = vars
            .iter()
            .position(|v| v == key)
            .ok_or_else(|| Error::Format(format!("{context}: unknown variable {key:?}")))?;
        let Value::String(text) = value else {
            return Err(Error::Format(format!("{context}.{key}: expected a polynomial string")));
        };
        out[idx] = Poly::parse(text, vars).map_err(|e| match e {
            Error::Parse { position, message } => Error::Format(format!(
                "{context}.{key}: parse error at position {position}: {message}"
            )),
            other => other,
        })?;
    }
    Ok(out)
}

/// Parses a vector-field file into its variable list and named fields, in
/// file order.
pub fn parse_fields(text: &str) -> Result<(Vec<String>, Vec<(String, PolyVectorField)>)> {
    let file: FieldFile = serde_json::from_str(text)?;
    check_variables(&file.variables)?;
    let mut fields = Vec::with_capacity(file.fields.len());
    for entry in &file.fields {
        if fields.iter().any(|(n, _)| n == &entry.name) {
            return Err(Error::Format(format!("duplicate field name {:?}", entry.name)));
        }
        let comps = parse_components(&file.variables, &entry.components, &entry.name)?;
        fields.push((
            entry.name.clone(),
            PolyVectorField::new(file.variables.clone(), comps),
        ));
    }
    Ok((file.variables, fields))
}

/// Serializes named fields in the vector-field file format; zero components
/// are omitted.
pub fn fields_to_json(variables: &[String], fields: &[(String, PolyVectorField)]) -> String {
    let entries: Vec<Value> = fields
        .iter()
        .map(|(name, q)| {
            let mut comps = Map::new();
            for (var, p) in variables.iter().zip(q.components()) {
                if !p.is_zero() {
                    comps.insert(var.clone(), Value::String(p.format(variables)));
                }
            }
            let mut entry = Map::new();
            entry.insert("name".into(), Value::String(name.clone()));
            entry.insert("components".into(), Value::Object(comps));
            Value::Object(entry)
        })
        .collect();
    let mut root = Map::new();
    root.insert(
        "variables".into(),
        Value::Array(variables.iter().cloned().map(Value::String).collect()),
    );
    root.insert("fields".into(), Value::Array(entries));
    let mut out = serde_json::to_string_pretty(&Value::Object(root)).expect("json");
    out.push('\n');
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MapFile {
    variables: Vec<String>,
    forward: Map<String, Value>,
    inverse: Map<String, Value>,
}

/// Parses a point-map file; variables missing from `forward`/`inverse` map to
/// themselves. Invertibility is verified.
pub fn parse_point_map(text: &str) -> Result<PointMap> {
    let file: MapFile = serde_json::from_str(text)?;
    check_variables(&file.variables)?;
    let n = file.variables.len();
    let identity_fill = |given: Vec<Poly>, map: &Map<String, Value>| -> Vec<Poly> {
        given
            .into_iter()
            .enumerate()
            .map(|(i, p)| {
                if map.contains_key(&file.variables[i]) {
                    p
                } else {
                    Poly::var(n, i)
                }
            })
            .collect()
    };
    let forward = identity_fill(
        parse_components(&file.variables, &file.forward, "forward")?,
        &file.forward,
    );
    let inverse = identity_fill(
        parse_components(&file.variables, &file.inverse, "inverse")?,
        &file.inverse,
    );
    PointMap::new(file.variables, forward, inverse)
}
