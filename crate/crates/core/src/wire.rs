//! JSON forms for elements, matrices, subspaces, point sets and counts.
//!
//! Elements are written as a single integer when the ring is `Z_m` (pairwise
//! coprime components) and as an array of component residues otherwise.
//! Integers are accepted as input for any ring via `Z -> R`.

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::matrix::Matrix;
use crate::ring::{Element, RingSpec};
use crate::singular::TypedSubspace;
use crate::subspace::Subspace;

/// Serde helpers writing big integers as decimal strings.
pub mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }

    pub mod option {
        use num_bigint::BigUint;
        use serde::Serializer;

        pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(v) => s.serialize_str(&v.to_string()),
                None => s.serialize_none(),
            }
        }
    }
}

fn format_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

pub fn element_to_json(ring: &RingSpec, e: &Element) -> Value {
    match ring.int_encode(e) {
        Ok(v) => json!(v),
        Err(_) => json!(e.residues()),
    }
}

pub fn element_from_json(ring: &RingSpec, v: &Value) -> Result<Element> {
    if let Some(i) = v.as_i64() {
        return Ok(ring.from_int(i));
    }
    if let Some(u) = v.as_u64() {
        return Ok(ring.from_int((u % ring.order()) as i64));
    }
    let parts = v.as_array().ok_or_else(|| {
        format_err(format!(
            "element must be an integer or residue array, got {v}"
        ))
    })?;
    let residues = parts
        .iter()
        .map(|p| {
            p.as_u64().ok_or_else(|| {
                format_err(format!("residue must be a nonnegative integer, got {p}"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if residues.len() != ring.len() {
        return Err(format_err(format!(
            "element has {} residues, ring {ring} has {}",
            residues.len(),
            ring.len()
        )));
    }
    ring.crt_combine(&residues)
}

pub fn vector_to_json(ring: &RingSpec, v: &[Element]) -> Value {
    Value::Array(v.iter().map(|e| element_to_json(ring, e)).collect())
}

pub fn vector_from_json(ring: &RingSpec, v: &Value) -> Result<Vec<Element>> {
    v.as_array()
        .ok_or_else(|| format_err(format!("vector must be an array, got {v}")))?
        .iter()
        .map(|e| element_from_json(ring, e))
        .collect()
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    let ring = m.ring();
    json!({
        "ring": ring.to_string(),
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": m.entries().iter().map(|e| element_to_json(ring, e)).collect::<Vec<_>>(),
    })
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name)
        .ok_or_else(|| format_err(format!("missing field {name:?}")))
}

fn usize_field(v: &Value, name: &str) -> Result<usize> {
    field(v, name)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| format_err(format!("{name:?} must be a nonnegative integer")))
}

fn ring_field(v: &Value, ring: Option<&RingSpec>) -> Result<RingSpec> {
    let own = match v.get("ring") {
        Some(r) => Some(RingSpec::parse(
            r.as_str()
                .ok_or_else(|| format_err("\"ring\" must be a string"))?,
        )?),
        None => None,
    };
    match (own, ring) {
        (Some(a), Some(b)) if &a != b => Err(Error::RingMismatch),
        (Some(a), _) => Ok(a),
        (None, Some(b)) => Ok(b.clone()),
        (None, None) => Err(format_err("no ring given")),
    }
}

/// Reads the object form, or nested row arrays when `ring` is supplied.
pub fn matrix_from_json(v: &Value, ring: Option<&RingSpec>) -> Result<Matrix> {
    if let Some(rows) = v.as_array() {
        let ring = ring.ok_or_else(|| format_err("nested-array matrices need a ring"))?;
        let rows = rows
            .iter()
            .map(|r| vector_from_json(ring, r))
            .collect::<Result<Vec<_>>>()?;
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(format_err("ragged matrix rows"));
        }
        return Matrix::from_elements(ring, rows.len(), cols, &rows.concat());
    }
    let ring = ring_field(v, ring)?;
    let (rows, cols) = (usize_field(v, "rows")?, usize_field(v, "cols")?);
    let entries = vector_from_json(&ring, field(v, "entries")?)?;
    if entries.len() != rows * cols {
        return Err(format_err(format!(
            "{} entries for a {rows}x{cols} matrix",
            entries.len()
        )));
    }
    Matrix::from_elements(&ring, rows, cols, &entries)
}

pub fn subspace_to_json(s: &Subspace) -> Value {
    json!({
        "ring": s.ring().to_string(),
        "ambient": s.ambient(),
        "dim": s.dim(),
        "matrix": matrix_to_json(&s.display()),
        "canonical": true,
    })
}

/// Reads the subspace form or any matrix form, canonicalising the rows.
pub fn subspace_from_json(v: &Value, ring: Option<&RingSpec>) -> Result<Subspace> {
    let m = match v.get("matrix") {
        Some(inner) => matrix_from_json(inner, Some(&ring_field(v, ring)?))?,
        None => matrix_from_json(v, ring)?,
    };
    Subspace::from_matrix(&m)
}

pub fn point_set_to_json(ps: &PointSet) -> Value {
    let ring = ps.ring();
    json!({
        "ring": ring.to_string(),
        "ambient": ps.ambient(),
        "size": ps.len(),
        "points": ps.points().iter().map(|p| vector_to_json(ring, &p.display().row(0))).collect::<Vec<_>>(),
    })
}

/// Reads `{"ring", "ambient", "points"}` or a bare array of vectors.
pub fn point_set_from_json(v: &Value, ring: Option<&RingSpec>) -> Result<PointSet> {
    let (ring, points) = match v.get("points") {
        Some(p) => (ring_field(v, ring)?, p),
        None => (
            ring.cloned()
                .ok_or_else(|| format_err("bare point arrays need a ring"))?,
            v,
        ),
    };
    let vectors = points
        .as_array()
        .ok_or_else(|| format_err("points must be an array"))?
        .iter()
        .map(|p| vector_from_json(&ring, p))
        .collect::<Result<Vec<_>>>()?;
    let ambient = match v.get("ambient") {
        Some(_) => usize_field(v, "ambient")?,
        None => vectors
            .first()
            .map(Vec::len)
            .ok_or_else(|| format_err("empty point array needs \"ambient\""))?,
    };
    if vectors.iter().any(|p| p.len() != ambient) {
        return Err(format_err("points of different lengths"));
    }
    PointSet::from_vectors(&ring, ambient, &vectors)
}

pub fn typed_to_json(t: &TypedSubspace) -> Value {
    json!({
        "subspace": subspace_to_json(&t.subspace),
        "m": t.m,
        "t": t.t,
        "typed": t.typed,
    })
}

pub fn count_to_json(query: &str, value: &BigUint) -> Value {
    json!({ "query": query, "value": value.to_string() })
}
