//! Exhaustive minimal-CX search on two qubits, used to confirm that each
//! canonical class is optimal.

use super::{classify, FormClass};
use crate::circuit::{Circuit, Gate};
use crate::group::{GroupElement, Modulus};
use serde::Serialize;
use std::collections::HashMap;

fn gate_element(gate: Gate, m: Modulus) -> GroupElement {
    Circuit::from_gates(2, m, vec![gate]).expect("valid two-qubit gate").evaluate()
}

/// Minimal number of CX gates for every two-qubit element, by layered
/// breadth-first search: X, T (and CS when `allow_cs`) are free, each CX
/// costs one.
pub fn min_cx_costs(m: Modulus, allow_cs: bool) -> HashMap<GroupElement, u32> {
    let mut free: Vec<GroupElement> = (0..2)
        .flat_map(|q| [Gate::X(q), Gate::T { qubit: q, power: 1 % m.get() }])
        .map(|g| gate_element(g, m))
        .collect();
    if allow_cs {
        free.push(GroupElement::controlled_s(0, 1, 1 % m.cs_order(), 2, m).expect("valid CS"));
    }
    let cx: Vec<GroupElement> = [(0, 1), (1, 0)]
        .into_iter()
        .map(|(control, target)| gate_element(Gate::Cx { control, target }, m))
        .collect();

    let mut cost = HashMap::new();
    let mut frontier = vec![GroupElement::identity(2, m).expect("two qubits")];
    for level in 0u32.. {
        // Free closure of the frontier at this level.
        let mut layer = Vec::new();
        let mut stack: Vec<GroupElement> = frontier.drain(..).filter(|u| !cost.contains_key(u)).collect();
        for u in &stack {
            cost.insert(u.clone(), level);
        }
        while let Some(u) = stack.pop() {
            for g in &free {
                let v = g * &u;
                if !cost.contains_key(&v) {
                    cost.insert(v.clone(), level);
                    stack.push(v);
                }
            }
            layer.push(u);
        }
        frontier = layer
            .iter()
            .flat_map(|u| cx.iter().map(move |g| g * u))
            .filter(|v| !cost.contains_key(v))
            .collect();
        if frontier.is_empty() {
            break;
        }
    }
    cost
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassCostRow {
    pub class: FormClass,
    pub expected_cost: u32,
    pub elements: usize,
    pub min_cost: u32,
    pub max_cost: u32,
    /// Elements whose searched cost differs from the class cost.
    pub mismatches: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassCostReport {
    pub m: Modulus,
    pub total: usize,
    pub rows: Vec<ClassCostRow>,
    /// Elements needing at least one CX whose optimum in `{X, T, CX}` exceeds
    /// the optimum in `{X, T, CS, CX}`: a minimal circuit would need both CS
    /// and CX.
    pub mixing_violations: usize,
    pub ok: bool,
}

/// Compares the searched minimal CX cost of every element with the CX
/// count of its canonical class.
pub fn verify_class_costs(m: Modulus) -> ClassCostReport {
    let with_cs = min_cx_costs(m, true);
    let pure = min_cx_costs(m, false);
    let mut rows: Vec<ClassCostRow> = FormClass::ALL
        .iter()
        .map(|&class| ClassCostRow {
            class,
            expected_cost: class.cx_cost(),
            elements: 0,
            min_cost: u32::MAX,
            max_cost: 0,
            mismatches: 0,
        })
        .collect();
    let mut mixing_violations = 0;
    let mut unclassified = 0;
    for (u, &cost) in &with_cs {
        let Ok(form) = classify(u) else {
            unclassified += 1;
            continue;
        };
        let row = &mut rows[form.class as usize];
        row.elements += 1;
        row.min_cost = row.min_cost.min(cost);
        row.max_cost = row.max_cost.max(cost);
        if cost != row.expected_cost {
            row.mismatches += 1;
        }
        if cost >= 1 && pure.get(u) != Some(&cost) {
            mixing_violations += 1;
        }
    }
    let total = with_cs.len();
    let ok = unclassified == 0
        && mixing_violations == 0
        && total as u64 == m.two_qubit_order()
        && pure.len() == total
        && rows.iter().all(|r| r.mismatches == 0 && r.elements as u64 == r.class.size(m));
    ClassCostReport { m, total, rows, mixing_violations, ok }
}
