//! Browser bindings for the interactive demo page in `www/`: explore group
//! orders across the four ring families, sweep Weil degree tables in
//! (q, l, m), and classify user-entered Gram matrices.
//!
//! The `*_json` functions hold all the logic and return JSON strings, so
//! they are testable on any target; the `#[wasm_bindgen]` exports are thin
//! wrappers over them.

use hermlock_core::counting::{self, LengthClass};
use hermlock_core::hermitian::{HermitianSpace, Kind};
use hermlock_core::ring::{Ring, RingSpec};
use hermlock_core::serial;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn err_str(e: hermlock_core::Error) -> String {
    e.to_string()
}

/// Order of U_m plus the structure constants that enter the formula.
pub fn order_json(ring_spec: &str, m: u32, kind: &str) -> Result<String, String> {
    let spec: RingSpec = ring_spec.parse().map_err(err_str)?;
    let kind: Kind = kind.parse().map_err(err_str)?;
    let order = counting::unitary_order(&spec, m, kind).map_err(err_str)?;
    let c = hermlock_core::StructConstants::for_spec(&spec);
    let out = json!({
        "ring": spec.to_string(),
        "m": m,
        "kind": kind.to_string(),
        "order": serial::biguint_to_json(&order),
        "constants": {
            "card_ring": serial::biguint_to_json(&c.card_ring),
            "card_units": serial::biguint_to_json(&c.card_units),
            "card_radical": serial::biguint_to_json(&c.card_radical),
            "card_fixed": serial::biguint_to_json(&c.card_fixed),
            "card_trace_zero": serial::biguint_to_json(&c.card_trace_zero),
            "card_norm_one": serial::biguint_to_json(&c.card_norm_one),
            "norm_surjective": c.norm_surjective,
        },
    });
    Ok(out.to_string())
}

/// Weil degrees for every (m, kind, t-class) cell up to m_max at one (q, l).
pub fn weil_table_json(q: u64, l: u32, m_max: u32) -> Result<String, String> {
    if m_max < 2 || m_max > 64 {
        return Err("m_max must be between 2 and 64".into());
    }
    let mut rows = Vec::new();
    for m in 2..=m_max {
        for kind in [Kind::I, Kind::II] {
            for class in [LengthClass::UnitSquare, LengthClass::UnitNonSquare, LengthClass::NonUnit] {
                match counting::weil_degree(q, l, m, kind, class) {
                    Ok(d) => rows.push(json!({
                        "m": m,
                        "kind": kind.to_string(),
                        "t": class.to_string(),
                        "index": serial::biguint_to_json(&d.index),
                        "c": serial::biguint_to_json(&d.c),
                        "degree": serial::biguint_to_json(&d.degree),
                        "case": d.case,
                    })),
                    Err(hermlock_core::Error::InvalidCase(_)) => rows.push(json!({
                        "m": m, "kind": kind.to_string(), "t": class.to_string(), "degree": Value::Null,
                    })),
                    Err(e) => return Err(err_str(e)),
                }
            }
        }
    }
    Ok(json!({ "q": q, "l": l, "rows": rows }).to_string())
}

/// Kind, isotropy, and the normalized diagonal of a user-entered Gram
/// matrix.
pub fn classify_json(ring_spec: &str, gram_json: &str) -> Result<String, String> {
    let spec: RingSpec = ring_spec.parse().map_err(err_str)?;
    let ring = Ring::make(spec).map_err(err_str)?;
    let value: Value = serde_json::from_str(gram_json).map_err(|e| format!("gram is not valid JSON: {}", e))?;
    let gram = serial::mat_from_json(&ring, &value).map_err(err_str)?;
    let space = HermitianSpace::new(gram).map_err(err_str)?;
    let kind = space.classify_kind();
    let (p, d) = space.orthogonalize();
    let out = json!({
        "ring": spec.to_string(),
        "m": space.rank(),
        "kind": kind.to_string(),
        "isotropic": space.is_isotropic(),
        "standard_type": d.iter().map(|x| serial::element_to_json(x.as_el())).collect::<Vec<_>>(),
        "congruence": serial::mat_to_json(&p),
    });
    Ok(out.to_string())
}

#[wasm_bindgen]
pub fn order(ring_spec: &str, m: u32, kind: &str) -> Result<String, JsValue> {
    order_json(ring_spec, m, kind).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn weil_table(q: u64, l: u32, m_max: u32) -> Result<String, JsValue> {
    weil_table_json(q, l, m_max).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn classify(ring_spec: &str, gram_json: &str) -> Result<String, JsValue> {
    classify_json(ring_spec, gram_json).map_err(|e| JsValue::from_str(&e))
}
