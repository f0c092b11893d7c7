//! Browser bindings for `hkdet`.
//!
//! Each exported function returns a JSON string. The `*_json` functions hold
//! the logic and are plain Rust so they can be tested natively; the
//! `#[wasm_bindgen]` wrappers only convert errors into JS exceptions.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use hkdet::closedforms::hk_closed;
use hkdet::polyfit::{interpolate_hk, RationalRepr};
use hkdet::staircase::{is_staircase, margins_to_matrix, Margins};

/// Largest `m`, `n` and `q` the page will evaluate in one call.
const MAX_DIM: u32 = 12;
const MAX_Q: u64 = 400;

fn check_dims(m: u32, n: u32) -> Result<(), String> {
    if !(1..=MAX_DIM).contains(&m) || !(1..=MAX_DIM).contains(&n) {
        return Err(format!("m and n must lie in 1..={MAX_DIM}"));
    }
    Ok(())
}

/// `HK(q)` for `q = 1..=q_max` as `[{"q": .., "hk": ".."}, ..]`.
pub fn hk_table_json(m: u32, n: u32, q_max: u64) -> Result<String, String> {
    check_dims(m, n)?;
    if !(1..=MAX_Q).contains(&q_max) {
        return Err(format!("q_max must lie in 1..={MAX_Q}"));
    }
    let rows: Vec<Value> = (1..=q_max)
        .map(|q| json!({ "q": q, "hk": hk_closed(m, n, q).to_string() }))
        .collect();
    Ok(Value::Array(rows).to_string())
}

fn parse_list(text: &str, what: &str) -> Result<Vec<u64>, String> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| format!("{what}: {t:?} is not a natural number"))
        })
        .collect()
}

/// The staircase matrix with the given comma-separated margins.
pub fn staircase_json(rows: &str, cols: &str) -> Result<String, String> {
    let rows = parse_list(rows, "rows")?;
    let cols = parse_list(cols, "cols")?;
    if rows.len() > MAX_DIM as usize || cols.len() > MAX_DIM as usize {
        return Err(format!("at most {MAX_DIM} rows and columns"));
    }
    let margins = Margins::new(rows, cols).map_err(|e| e.to_string())?;
    let mat = margins_to_matrix(&margins);
    Ok(json!({
        "matrix": mat.to_rows(),
        "staircase": is_staircase(&mat),
        "total": margins.total(),
    })
    .to_string())
}

/// The fitted polynomial `HK(q)` with exact coefficients.
pub fn fit_json(m: u32, n: u32) -> Result<String, String> {
    check_dims(m, n)?;
    let poly = interpolate_hk(m, n).map_err(|e| e.to_string())?;
    let lead = poly.leading_coefficient().map_err(|e| e.to_string())?;
    let coefficients: Vec<RationalRepr> =
        poly.coefficients().iter().map(RationalRepr::from).collect();
    Ok(json!({
        "degree": poly.degree(),
        "coefficients": coefficients
            .iter()
            .map(|c| json!({ "num": c.num, "den": c.den }))
            .collect::<Vec<_>>(),
        "leading_coefficient": lead.to_string(),
        "display": poly.to_string(),
    })
    .to_string())
}

#[wasm_bindgen]
pub fn hk_table(m: u32, n: u32, q_max: u32) -> Result<String, JsValue> {
    hk_table_json(m, n, u64::from(q_max)).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn staircase(rows: &str, cols: &str) -> Result<String, JsValue> {
    staircase_json(rows, cols).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn fit(m: u32, n: u32) -> Result<String, JsValue> {
    fit_json(m, n).map_err(|e| JsValue::from_str(&e))
}
