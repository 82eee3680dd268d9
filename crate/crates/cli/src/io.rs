//! Instance files: `{"A":[x,y], "B":[x,y], "paths":{"a":[[x,y],...], ...}}`
//! with coordinates given as integers or `"p/q"` strings.

use std::fs;
use std::path::Path;

use serde_json::{json, Map, Value};
use sheltered_core::geometry::{parse_rational, Instance, PathLabel, Point, Rational};

use crate::CliError;

fn parse_coord(v: &Value, what: &str) -> Result<Rational, CliError> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rational::from_integer(i.into())),
            None => Err(CliError::Parse(format!(
                "{what}: non-integer number {n}; write it as a \"p/q\" string"
            ))),
        },
        Value::String(s) => parse_rational(s).map_err(|e| CliError::Parse(format!("{what}: {e}"))),
        other => Err(CliError::Parse(format!("{what}: expected a coordinate, found {other}"))),
    }
}

pub fn parse_point(v: &Value, what: &str) -> Result<Point, CliError> {
    match v.as_array().map(Vec::as_slice) {
        Some([x, y]) => Ok(Point::new(parse_coord(x, what)?, parse_coord(y, what)?)),
        _ => Err(CliError::Parse(format!("{what}: expected [x, y]"))),
    }
}

pub fn parse_instance(doc: &Value) -> Result<Instance, CliError> {
    let field = |k: &str| {
        doc.get(k)
            .ok_or_else(|| CliError::Parse(format!("missing field `{k}`")))
    };
    let start = parse_point(field("A")?, "A")?;
    let end = parse_point(field("B")?, "B")?;
    let paths = field("paths")?;
    let mut out: Vec<Vec<Point>> = Vec::new();
    for label in PathLabel::ALL {
        let key = label.as_str();
        let pts = paths
            .get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| CliError::Parse(format!("missing path `{key}`")))?;
        let verts = pts
            .iter()
            .enumerate()
            .map(|(i, p)| parse_point(p, &format!("paths.{key}[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(verts);
    }
    let c = out.pop().expect("three paths");
    let b = out.pop().expect("three paths");
    let a = out.pop().expect("three paths");
    Ok(Instance::new(start, end, a, b, c))
}

pub fn load_instance(path: &Path) -> Result<Instance, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let doc: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    parse_instance(&doc)
}

pub fn rational_json(r: &Rational) -> Value {
    if r.is_integer() {
        if let Ok(i) = i64::try_from(r.to_integer()) {
            return json!(i);
        }
    }
    json!(r.to_string())
}

pub fn point_json(p: &Point) -> Value {
    json!([rational_json(&p.x), rational_json(&p.y)])
}

pub fn instance_json(inst: &Instance) -> Value {
    let mut paths = Map::new();
    for path in &inst.paths {
        paths.insert(
            path.label.as_str().to_string(),
            Value::Array(path.vertices.iter().map(point_json).collect()),
        );
    }
    json!({
        "A": point_json(&inst.start),
        "B": point_json(&inst.end),
        "paths": paths,
    })
}

pub fn write_json(path: &Path, v: &Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(v).expect("json values serialize");
    fs::write(path, text + "\n").map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_keeps_rationals_exact() {
        let doc = json!({
            "A": [0, 0], "B": ["7/2", 0],
            "paths": {
                "a": [[0, 0], ["1/3", 1], ["7/2", 0]],
                "b": [[0, 0], [1, "-2/5"], ["7/2", 0]],
                "c": [[0, 0], [2, "-3"], ["7/2", 0]],
            }
        });
        let inst = parse_instance(&doc).unwrap();
        assert_eq!(parse_instance(&instance_json(&inst)).unwrap(), inst);
        assert_eq!(instance_json(&inst)["B"], json!(["7/2", 0]));
    }

    #[test]
    fn rejects_zero_denominator_and_floats() {
        assert!(matches!(parse_coord(&json!("1/0"), "x"), Err(CliError::Parse(_))));
        assert!(matches!(parse_coord(&json!(0.5), "x"), Err(CliError::Parse(_))));
    }
}
