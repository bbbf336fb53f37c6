//! JSON file formats for algebras and flags.
//!
//! Algebra files look like
//! `{"field": {"type": "Fp", "p": 10007}, "relations": [[[..3..] x3] x3]}`
//! with scalars given as integers or rational strings. Flag files are either
//! `{"W": [[..], [..]] | null, "l": 1, "U": [[..]] | null, "m": 0}` or
//! `{"levels": [{"basis": [[..]], "level": 2}, ...]}`, where an entry with
//! level `k` spans `W^(j)` for every `j` above the previous entry's level
//! and at most `k`.

use std::path::Path;

use serde_json::{json, Value};

use crate::algebra::QuadraticAlgebra;
use crate::error::{schema, Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::linalg::Subspace;
use crate::testconfig::Filtration;

/// An algebra over either supported base field.
#[derive(Debug, Clone)]
pub enum AnyAlgebra {
    Rational(QuadraticAlgebra<Rationals>),
    Prime(QuadraticAlgebra<PrimeField>),
}

impl AnyAlgebra {
    pub fn spec(&self) -> FieldSpec {
        match self {
            AnyAlgebra::Rational(a) => a.field().spec(),
            AnyAlgebra::Prime(a) => a.field().spec(),
        }
    }

    pub fn hash(&self) -> &str {
        match self {
            AnyAlgebra::Rational(a) => a.hash(),
            AnyAlgebra::Prime(a) => a.hash(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyAlgebra::Rational(a) => algebra_to_json(a),
            AnyAlgebra::Prime(a) => algebra_to_json(a),
        }
    }
}

fn scalar<F: Field>(field: &F, v: &Value, path: &str) -> Result<F::Elem> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(field.from_i64(i))
            } else if let Some(u) = n.as_u64() {
                field.parse(&u.to_string()).map_err(|e| schema(path, e.to_string()))
            } else {
                Err(schema(path, "expected an integer or a rational string"))
            }
        }
        Value::String(s) => field.parse(s).map_err(|e| schema(path, e.to_string())),
        _ => Err(schema(path, "expected an integer or a rational string")),
    }
}

fn array<'a>(v: &'a Value, path: &str, len: Option<usize>) -> Result<&'a Vec<Value>> {
    let arr = v.as_array().ok_or_else(|| schema(path, "expected an array"))?;
    if let Some(len) = len {
        if arr.len() != len {
            return Err(schema(path, format!("expected {len} entries, found {}", arr.len())));
        }
    }
    Ok(arr)
}

fn scalar_json<F: Field>(field: &F, a: &F::Elem) -> Value {
    let s = field.format(a);
    match s.parse::<i64>() {
        Ok(i) => json!(i),
        Err(_) => json!(s),
    }
}

/// Reads the field of an algebra document.
pub fn field_spec(doc: &Value) -> Result<FieldSpec> {
    let f = doc.get("field").ok_or_else(|| schema("$.field", "missing"))?;
    let spec: FieldSpec =
        serde_json::from_value(f.clone()).map_err(|e| schema("$.field", e.to_string()))?;
    spec.validate().map_err(|e| schema("$.field", e.to_string()))?;
    Ok(spec)
}

/// Parses the relation coefficients of an algebra document over `field`.
pub fn relations_from_json<F: Field>(field: &F, doc: &Value) -> Result<Vec<F::Elem>> {
    let rel = doc
        .get("relations")
        .ok_or_else(|| schema("$.relations", "missing"))?;
    let mut coeffs = Vec::with_capacity(27);
    for (i, ri) in array(rel, "$.relations", Some(3))?.iter().enumerate() {
        let pi = format!("$.relations[{i}]");
        for (a, ra) in array(ri, &pi, Some(3))?.iter().enumerate() {
            let pa = format!("{pi}[{a}]");
            for (b, v) in array(ra, &pa, Some(3))?.iter().enumerate() {
                coeffs.push(scalar(field, v, &format!("{pa}[{b}]"))?);
            }
        }
    }
    Ok(coeffs)
}

pub fn algebra_from_json(doc: &Value) -> Result<AnyAlgebra> {
    match field_spec(doc)? {
        FieldSpec::Rationals => {
            let c = relations_from_json(&Rationals, doc)?;
            Ok(AnyAlgebra::Rational(QuadraticAlgebra::new(&Rationals, c)?))
        }
        FieldSpec::Prime { p } => {
            let f = PrimeField::new(p)?;
            let c = relations_from_json(&f, doc)?;
            Ok(AnyAlgebra::Prime(QuadraticAlgebra::new(&f, c)?))
        }
    }
}

pub fn algebra_to_json<F: Field>(a: &QuadraticAlgebra<F>) -> Value {
    let f = a.field();
    let rel: Vec<Vec<Vec<Value>>> = (0..3)
        .map(|i| {
            (0..3)
                .map(|x| (0..3).map(|y| scalar_json(f, a.coeff(i, x, y))).collect())
                .collect()
        })
        .collect();
    json!({ "field": f.spec(), "relations": rel })
}

pub fn load_algebra(path: impl AsRef<Path>) -> Result<AnyAlgebra> {
    let text = std::fs::read_to_string(path)?;
    let doc: Value = serde_json::from_str(&text)?;
    algebra_from_json(&doc)
}

fn rows_from_json<F: Field>(field: &F, v: &Value, path: &str) -> Result<Vec<Vec<F::Elem>>> {
    array(v, path, None)?
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let pr = format!("{path}[{r}]");
            array(row, &pr, Some(3))?
                .iter()
                .enumerate()
                .map(|(c, x)| scalar(field, x, &format!("{pr}[{c}]")))
                .collect()
        })
        .collect()
}

fn optional_subspace<F: Field>(field: &F, doc: &Value, key: &str) -> Result<Option<Subspace<F>>> {
    match doc.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => {
            let path = format!("$.{key}");
            let rows = rows_from_json(field, v, &path)?;
            Ok(Some(Subspace::from_rows(field, 3, rows)))
        }
    }
}

fn count(doc: &Value, key: &str) -> Result<usize> {
    match doc.get(key) {
        None | Some(Value::Null) => Ok(0),
        Some(v) => v
            .as_u64()
            .map(|x| x as usize)
            .ok_or_else(|| schema(format!("$.{key}"), "expected a non-negative integer")),
    }
}

/// Parses a flag document in either supported layout.
pub fn flag_from_json<F: Field>(field: &F, doc: &Value) -> Result<Filtration<F>> {
    if !doc.is_object() {
        return Err(schema("$", "expected an object"));
    }
    let wrap = |path: &str, e: Error| match e {
        Error::InvalidFiltration(msg) => schema(path, msg),
        other => other,
    };
    if let Some(levels) = doc.get("levels") {
        let entries = array(levels, "$.levels", None)?;
        let mut parsed: Vec<(usize, Subspace<F>)> = Vec::with_capacity(entries.len());
        for (i, e) in entries.iter().enumerate() {
            let p = format!("$.levels[{i}]");
            let level = e
                .get("level")
                .and_then(Value::as_u64)
                .ok_or_else(|| schema(format!("{p}.level"), "expected a positive integer"))?
                as usize;
            if level == 0 {
                return Err(schema(format!("{p}.level"), "levels start at 1"));
            }
            let basis = e
                .get("basis")
                .ok_or_else(|| schema(format!("{p}.basis"), "missing"))?;
            let rows = rows_from_json(field, basis, &format!("{p}.basis"))?;
            if parsed.last().is_some_and(|(l, _)| *l >= level) {
                return Err(schema(format!("{p}.level"), "levels must be strictly increasing"));
            }
            parsed.push((level, Subspace::from_rows(field, 3, rows)));
        }
        let mut out = Vec::new();
        for (level, space) in parsed {
            while out.len() < level {
                out.push(space.clone());
            }
        }
        return Filtration::new(field, out).map_err(|e| wrap("$.levels", e));
    }
    let w = optional_subspace(field, doc, "W")?;
    let u = optional_subspace(field, doc, "U")?;
    let l = count(doc, "l")?;
    let m = count(doc, "m")?;
    Filtration::flag(field, w, l, u, m).map_err(|e| wrap("$", e))
}

/// Serializes a filtration in the `levels` layout.
pub fn flag_to_json<F: Field>(filt: &Filtration<F>) -> Value {
    let f = filt.field();
    let levels = filt.levels();
    let mut entries = Vec::new();
    for (j, lev) in levels.iter().enumerate() {
        if levels.get(j + 1) == Some(lev) {
            continue;
        }
        let basis: Vec<Vec<Value>> = lev
            .basis()
            .iter()
            .map(|r| r.iter().map(|x| scalar_json(f, x)).collect())
            .collect();
        entries.push(json!({ "basis": basis, "level": j + 1 }));
    }
    json!({ "levels": entries })
}

pub fn load_flag<F: Field>(field: &F, path: impl AsRef<Path>) -> Result<Filtration<F>> {
    let text = std::fs::read_to_string(path)?;
    let doc: Value = serde_json::from_str(&text)?;
    flag_from_json(field, &doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_path_of_bad_scalar() {
        let doc = json!({
            "field": {"type": "Fp", "p": 7},
            "relations": [[[0,1,0],[0,0,0],[0,0,0]],
                          [[0,0,0],[0,0,"x"],[0,0,0]],
                          [[0,0,0],[0,0,0],[1,0,0]]]
        });
        match algebra_from_json(&doc) {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "$.relations[1][1][2]"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_field() {
        let doc = json!({"field": {"type": "Fp", "p": 9}, "relations": []});
        assert!(matches!(algebra_from_json(&doc), Err(Error::Schema { .. })));
    }

    #[test]
    fn rational_strings_parse() {
        let doc = json!({
            "field": {"type": "Q"},
            "relations": [[[0,0,0],[0,0,1],[0,"-1/2",0]],
                          [[0,0,"-3"],[0,0,0],[1,0,0]],
                          [[0,1,0],[-1,0,0],[0,0,0]]]
        });
        let a = algebra_from_json(&doc).unwrap();
        assert_eq!(a.spec(), FieldSpec::Rationals);
        let back = a.to_json();
        assert_eq!(back["relations"][0][2][1], json!("-1/2"));
        assert_eq!(back["relations"][1][0][2], json!(-3));
    }

    #[test]
    fn both_flag_layouts_agree() {
        let f = PrimeField::new(7).unwrap();
        let a = flag_from_json(
            &f,
            &json!({"W": [[1,0,0],[0,1,0]], "l": 2, "U": [[1,0,0]], "m": 1}),
        )
        .unwrap();
        let b = flag_from_json(
            &f,
            &json!({"levels": [
                {"basis": [[1,0,0],[0,1,0]], "level": 2},
                {"basis": [[1,0,0]], "level": 3}
            ]}),
        )
        .unwrap();
        assert_eq!(a.levels(), b.levels());
        let c = flag_from_json(&f, &flag_to_json(&a)).unwrap();
        assert_eq!(a.levels(), c.levels());
    }

    #[test]
    fn non_nested_levels_are_rejected() {
        let f = PrimeField::new(7).unwrap();
        let r = flag_from_json(
            &f,
            &json!({"levels": [
                {"basis": [[1,0,0]], "level": 1},
                {"basis": [[0,1,0]], "level": 2}
            ]}),
        );
        assert!(matches!(r, Err(Error::Schema { .. })));
    }
}
