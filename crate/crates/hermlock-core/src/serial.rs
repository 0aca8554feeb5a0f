//! JSON wire formats: Gram matrices and vectors as arrays of coefficient
//! vectors, unitary elements bundled with their ring spec string and Gram
//! matrix. Round-trips are bit-exact because elements are canonical
//! coefficient vectors.

use crate::error::{Error, Result};
use crate::group::UnitaryElement;
use crate::hermitian::HermitianSpace;
use crate::linalg::Mat;
use crate::ring::{Element, Ring};
use num_bigint::BigUint;
use serde_json::{json, Value};
use std::str::FromStr;

/// A big integer as a JSON number (arbitrary precision is enabled).
pub fn biguint_to_json(n: &BigUint) -> Value {
    Value::Number(serde_json::Number::from_str(&n.to_string()).expect("decimal digits parse"))
}

pub fn element_to_json(el: &Element) -> Value {
    json!(el.coeffs())
}

/// Entry syntax: either a plain integer (goes through Z → A) or a full
/// coefficient vector.
pub fn element_from_json(ring: &Ring, v: &Value) -> Result<Element> {
    match v {
        Value::Number(n) => {
            let k = n
                .as_i64()
                .ok_or_else(|| Error::BadInput(format!("entry {} is not a small integer", n)))?;
            Ok(ring.from_i64(k))
        }
        Value::Array(items) => {
            let coeffs = items
                .iter()
                .map(|x| x.as_u64().ok_or_else(|| Error::BadInput("coefficients must be unsigned integers".into())))
                .collect::<Result<Vec<u64>>>()?;
            ring.from_coeffs(coeffs)
        }
        _ => Err(Error::BadInput("matrix entries must be integers or coefficient arrays".into())),
    }
}

pub fn mat_to_json(m: &Mat) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array((0..m.cols()).map(|j| element_to_json(m.at(i, j))).collect()))
        .collect();
    Value::Array(rows)
}

pub fn mat_from_json(ring: &Ring, v: &Value) -> Result<Mat> {
    let rows = v.as_array().ok_or_else(|| Error::BadInput("expected a JSON array of rows".into()))?;
    if rows.is_empty() {
        return Err(Error::BadInput("matrix needs at least one row".into()));
    }
    let mut entries = Vec::new();
    let mut cols = None;
    for row in rows {
        let row = row.as_array().ok_or_else(|| Error::BadInput("each row must be a JSON array".into()))?;
        match cols {
            None => cols = Some(row.len()),
            Some(c) if c != row.len() => return Err(Error::BadInput("ragged rows".into())),
            _ => {}
        }
        for entry in row {
            entries.push(element_from_json(ring, entry)?);
        }
    }
    Mat::new(ring.clone(), rows.len(), cols.unwrap(), entries)
}

/// A column vector: JSON array of entries.
pub fn vector_from_json(ring: &Ring, v: &Value) -> Result<Mat> {
    let items = v.as_array().ok_or_else(|| Error::BadInput("expected a JSON array".into()))?;
    let mut entries = Vec::new();
    for item in items {
        entries.push(element_from_json(ring, item)?);
    }
    Mat::new(ring.clone(), items.len(), 1, entries)
}

pub fn vector_to_json(v: &Mat) -> Value {
    Value::Array((0..v.rows()).map(|i| element_to_json(v.at(i, 0))).collect())
}

pub fn unitary_to_json(g: &UnitaryElement) -> Value {
    json!({
        "ring": g.space().ring().spec().to_string(),
        "gram": mat_to_json(g.space().gram()),
        "matrix": mat_to_json(g.mat()),
    })
}

pub fn unitary_from_json(v: &Value) -> Result<UnitaryElement> {
    let spec_str = v
        .get("ring")
        .and_then(|x| x.as_str())
        .ok_or_else(|| Error::BadInput("missing 'ring' spec string".into()))?;
    let spec = spec_str.parse()?;
    let ring = Ring::make(spec)?;
    let gram = mat_from_json(&ring, v.get("gram").ok_or_else(|| Error::BadInput("missing 'gram'".into()))?)?;
    let mat = mat_from_json(&ring, v.get("matrix").ok_or_else(|| Error::BadInput("missing 'matrix'".into()))?)?;
    let space = HermitianSpace::new(gram)?;
    UnitaryElement::new(space, mat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::transitivity_witness;
    use crate::hermitian::Kind;
    use crate::ring::{Family, FixedElement, RingSpec};

    #[test]
    fn unitary_round_trip_is_bit_exact() {
        let ring = Ring::make(RingSpec::new(Family::Ramified, 3, 1, 2)).unwrap();
        let s = HermitianSpace::standard(&ring, 2, Kind::I).unwrap();
        let v = s.basis_vector(0);
        let w = s.represent_length(&FixedElement::try_new(&ring, ring.one()).unwrap()).unwrap();
        let g = transitivity_witness(&s, &v, &w).unwrap();
        let blob = unitary_to_json(&g);
        let text = serde_json::to_string(&blob).unwrap();
        let back = unitary_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.mat(), g.mat());
        assert_eq!(back.space().gram(), g.space().gram());
    }

    #[test]
    fn mat_accepts_integer_shorthand() {
        let ring = Ring::make(RingSpec::new(Family::Orthogonal, 3, 1, 2)).unwrap();
        let v: Value = serde_json::from_str("[[1, -1], [[2], 0]]").unwrap();
        let m = mat_from_json(&ring, &v).unwrap();
        assert_eq!(*m.at(0, 1), ring.from_i64(-1));
        assert_eq!(*m.at(1, 0), ring.from_i64(2));
    }

    #[test]
    fn big_numbers_serialize_as_numbers() {
        let n = BigUint::parse_bytes(b"123456789012345678901234567890", 10).unwrap();
        let v = biguint_to_json(&n);
        assert_eq!(serde_json::to_string(&v).unwrap(), "123456789012345678901234567890");
    }
}
