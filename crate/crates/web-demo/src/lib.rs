//! Browser bindings. Each export returns a JSON or circuit string; errors
//! surface as JavaScript exceptions carrying the message.

use cnot_dihedral::canon2::classify;
use cnot_dihedral::circuit::parse;
use cnot_dihedral::layered::{BoundRow, CostMode, LayerSet};
use cnot_dihedral::rb::rb_sequences;
use cnot_dihedral::Modulus;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Keeps page-driven layer builds small enough for a browser tab.
pub const BROWSER_BUDGET: usize = 2_000_000;

#[derive(Serialize)]
struct Classified {
    class: &'static str,
    params: String,
    cx: u32,
    circuit: String,
    gates_in: usize,
    gates_out: usize,
}

#[derive(Serialize)]
struct Layers {
    rows: Vec<BoundRow>,
    total: usize,
    closed: bool,
    bounds_ok: bool,
}

fn modulus(m: u32) -> Result<Modulus, String> {
    Modulus::new(m).map_err(|e| e.to_string())
}

pub fn classify_json(text: &str) -> Result<String, String> {
    let circuit = parse(text).map_err(|e| e.to_string())?;
    let form = classify(&circuit.evaluate()).map_err(|e| e.to_string())?;
    let canonical = form.to_circuit(circuit.modulus());
    let out = Classified {
        class: form.class.name(),
        params: form.params(),
        cx: form.class.cx_cost(),
        circuit: canonical.inline(),
        gates_in: circuit.len(),
        gates_out: canonical.len(),
    };
    Ok(serde_json::to_string(&out).expect("serializable"))
}

pub fn layers_json(n: usize, m: u32, mode: &str, rmax: usize) -> Result<String, String> {
    let mode = match mode {
        "cx" => CostMode::Cx,
        "cs" => CostMode::Cs,
        other => return Err(format!("unknown mode `{other}`")),
    };
    let set = LayerSet::build(mode, n, modulus(m)?, rmax, BROWSER_BUDGET).map_err(|e| e.to_string())?;
    let report = set.bound_report();
    let out = Layers { total: set.total(), closed: set.is_closed(), bounds_ok: report.ok, rows: report.rows };
    Ok(serde_json::to_string(&out).expect("serializable"))
}

pub fn rb_text(length: usize, m: u32, seed: u64) -> Result<String, String> {
    if length == 0 {
        return Err("length must be at least 1".into());
    }
    Ok(rb_sequences(length, modulus(m)?, seed, 1).remove(0).to_text())
}

#[wasm_bindgen(js_name = classifyCircuit)]
pub fn classify_circuit(text: &str) -> Result<String, JsValue> {
    classify_json(text).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = layerTable)]
pub fn layer_table(n: usize, m: u32, mode: &str, rmax: usize) -> Result<String, JsValue> {
    layers_json(n, m, mode, rmax).map_err(|e| JsValue::from_str(&e))
}

/// `seed` arrives as a JavaScript BigInt.
#[wasm_bindgen(js_name = rbSequence)]
pub fn rb_sequence(length: usize, m: u32, seed: u64) -> Result<String, JsValue> {
    rb_text(length, m, seed).map_err(|e| JsValue::from_str(&e))
}
