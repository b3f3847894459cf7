//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. All checks are exact; the only numeric
//! tolerance is the dense-matrix comparison in criterion 9.

mod common;

use cnot_dihedral::canon2::{classify, enumerate_forms, form_count, rng_from_seed, verify_class_costs, FormClass, FormTable};
use cnot_dihedral::identities::{verify_all, RuleStatus};
use cnot_dihedral::layered::{closure, CostMode, LayerSet, DEFAULT_BUDGET};
use cnot_dihedral::rb::rb_sequences;
use cnot_dihedral::{Circuit, Gate, GroupElement, Modulus};
use std::collections::{HashMap, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

/// Entrywise tolerance when matching dense products up to a global phase.
const DENSE_TOL: f64 = 1e-9;

const MODULI: [u32; 4] = [2, 3, 4, 8];

fn md(m: u32) -> Modulus {
    Modulus::new(m).unwrap()
}

fn d(m: u32) -> u32 {
    if m.is_multiple_of(2) { 2 } else { 1 }
}

fn element(m: Modulus, gates: Vec<Gate>) -> GroupElement {
    Circuit::from_gates(2, m, gates).unwrap().evaluate()
}

fn generators(m: Modulus, with_cx: bool, with_cs: bool) -> Vec<GroupElement> {
    let mut gens = Vec::new();
    for q in 0..2 {
        gens.push(element(m, vec![Gate::X(q)]));
        gens.push(element(m, vec![Gate::T { qubit: q, power: 1 }]));
    }
    if with_cx {
        gens.push(element(m, vec![Gate::Cx { control: 0, target: 1 }]));
        gens.push(element(m, vec![Gate::Cx { control: 1, target: 0 }]));
    }
    if with_cs {
        gens.push(element(m, vec![Gate::Cs { a: 0, b: 1, power: m.reduce_cs(1) }]));
    }
    gens
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

struct Outcome {
    ok: bool,
    detail: String,
}

fn group_order() -> Outcome {
    let mut detail = Vec::new();
    let mut ok = true;
    for m in MODULI {
        let expected = (24 * m.pow(3) / d(m)) as usize;
        let bfs = closure(&generators(md(m), true, false), DEFAULT_BUDGET).unwrap();
        let forms: HashSet<GroupElement> = enumerate_forms(md(m)).map(|f| f.to_element(md(m))).collect();
        let good = bfs.len() == expected && forms.len() == expected && bfs == forms;
        ok &= good;
        detail.push(format!("m={m}: bfs {} forms {} expected {expected}", bfs.len(), forms.len()));
    }
    Outcome { ok, detail: detail.join("; ") }
}

fn class_sizes() -> Outcome {
    let mut detail = Vec::new();
    let mut ok = true;
    for m in MODULI {
        let base = (m.pow(3) / d(m)) as usize;
        let expected: Vec<usize> = [4, 8, 8, 4].iter().map(|f| f * base).collect();
        let mut enumerated: HashMap<FormClass, usize> = HashMap::new();
        for f in enumerate_forms(md(m)) {
            *enumerated.entry(f.class).or_default() += 1;
        }
        let mut classified: HashMap<FormClass, usize> = HashMap::new();
        for u in closure(&generators(md(m), true, false), DEFAULT_BUDGET).unwrap() {
            *classified.entry(classify(&u).unwrap().class).or_default() += 1;
        }
        let a: Vec<usize> = FormClass::ALL.iter().map(|c| enumerated.get(c).copied().unwrap_or(0)).collect();
        let b: Vec<usize> = FormClass::ALL.iter().map(|c| classified.get(c).copied().unwrap_or(0)).collect();
        ok &= a == expected && b == expected;
        detail.push(format!("m={m}: {a:?}"));
    }
    Outcome { ok, detail: detail.join("; ") }
}

fn cs_subgroup() -> Outcome {
    let mut detail = Vec::new();
    let mut ok = true;
    for m in MODULI {
        let expected = (4 * m.pow(3) / d(m)) as usize;
        let sub = closure(&generators(md(m), false, true), DEFAULT_BUDGET).unwrap();
        let closed = sub.iter().all(|a| sub.iter().all(|b| sub.contains(&(a * b))));
        let layered = LayerSet::build(CostMode::Cs, 2, md(m), 16, DEFAULT_BUDGET).unwrap();
        let same = layered.is_closed() && layered.total() == sub.len() && sub.iter().all(|u| layered.contains(u));
        ok &= sub.len() == expected && closed && same;
        detail.push(format!("m={m}: {} of {expected}", sub.len()));
    }
    Outcome { ok, detail: detail.join("; ") }
}

fn identity_suite() -> Outcome {
    let mut ok = true;
    let mut rules = 0;
    let mut skipped = Vec::new();
    for m in MODULI {
        for n in [2, 3] {
            let report = verify_all(md(m), n);
            ok &= report.all_passed();
            rules += report.rules.len();
            for r in &report.rules {
                if r.status == RuleStatus::Skipped {
                    ok &= m % 2 == 1;
                    skipped.push(format!("{}@m={m},n={n}", r.name));
                }
                if let Some(c) = &r.counterexample {
                    println!("    counterexample {} m={m} n={n} i={} j={} k={}", r.name, c.i, c.j, c.k);
                }
            }
        }
    }
    Outcome { ok, detail: format!("{rules} rule runs, skipped {}", skipped.join(" ")) }
}

fn sharpness() -> Outcome {
    let mut detail = Vec::new();
    let mut ok = true;
    for m in MODULI {
        let h = LayerSet::build(CostMode::Cs, 2, md(m), 1, DEFAULT_BUDGET).unwrap().layer_sizes();
        let f = LayerSet::build(CostMode::Cx, 2, md(m), 1, DEFAULT_BUDGET).unwrap().layer_sizes();
        let h1 = h.get(1).copied().unwrap_or(0);
        let f1 = f.get(1).copied().unwrap_or(0);
        let h_ok = h1 == 2 * h[0];
        let f_ok = f1 == (2 * m / d(m)) as usize * f[0];
        ok &= h_ok && f_ok;
        detail.push(format!(
            "m={m}: H {h1}/{}{} F {f1}/{}{}",
            h[0],
            if h_ok { "" } else { " (!)" },
            f[0],
            if f_ok { "" } else { " (!)" }
        ));
    }
    Outcome { ok, detail: detail.join("; ") }
}

fn bounds() -> Outcome {
    let mut runs: Vec<(CostMode, usize, u32, usize)> = Vec::new();
    for m in MODULI {
        runs.push((CostMode::Cx, 2, m, 16));
        runs.push((CostMode::Cs, 2, m, 16));
    }
    for m in [2, 4] {
        runs.push((CostMode::Cx, 3, m, 2));
        runs.push((CostMode::Cs, 3, m, 2));
    }
    let mut ok = true;
    let mut layers = 0;
    for (mode, n, m, r_max) in runs {
        let set = LayerSet::build(mode, n, md(m), r_max, DEFAULT_BUDGET).unwrap();
        let report = set.bound_report();
        if !report.ok {
            println!("    bound violated: mode={mode} n={n} m={m}");
        }
        ok &= report.ok;
        layers += report.rows.len();
    }
    Outcome { ok, detail: format!("{layers} layers checked") }
}

fn cost_optimality() -> Outcome {
    let mut detail = Vec::new();
    let mut ok = true;
    for m in [2, 4, 8] {
        let report = verify_class_costs(md(m));
        ok &= report.ok && report.total == (24 * m.pow(3) / d(m)) as usize;
        let mismatches: usize = report.rows.iter().map(|r| r.mismatches).sum();
        detail.push(format!("m={m}: {} mismatches, {} mixed", mismatches, report.mixing_violations));
    }
    Outcome { ok, detail: detail.join("; ") }
}

fn round_trip() -> Outcome {
    let mut ok = true;
    let mut total = 0;
    for m in MODULI {
        let mm = md(m);
        let table = FormTable::build(mm).unwrap();
        ok &= table.len() as u64 == form_count(mm);
        for f in enumerate_forms(mm) {
            let u = f.to_circuit(mm).evaluate();
            let back = classify(&u);
            ok &= back.as_ref() == Ok(&f) && table.get(&u) == Some(f);
            total += 1;
        }
    }
    Outcome { ok, detail: format!("{total} forms") }
}

fn oracle_equivalence() -> Outcome {
    let mut rng = rng_from_seed(0x5eed_0009);
    let mut failures = 0;
    for trial in 0..10_000 {
        let m = md(if trial % 2 == 0 { 3 } else { 8 });
        let n = 1 + trial % 3;
        let c = common::random_circuit(&mut rng, n, m, 20);
        let dense = common::circuit_matrix(&c);
        let exact = common::element_matrix(&c.evaluate());
        if common::global_phase_between(&dense, &exact, m, DENSE_TOL).is_none() {
            failures += 1;
        }
    }
    Outcome { ok: failures == 0, detail: format!("10000 circuits, {failures} mismatches") }
}

fn rb_soundness() -> Outcome {
    let m = md(8);
    let generate = || -> Vec<String> {
        (1..=50)
            .flat_map(|length| rb_sequences(length, m, 1000 + length as u64, 20))
            .map(|s| s.to_text())
            .collect()
    };
    let first = generate();
    let mut ok = first.len() == 1000;
    for text in &first {
        ok &= cnot_dihedral::circuit::parse(text).unwrap().evaluate().is_identity();
    }
    ok &= generate() == first;
    Outcome { ok, detail: format!("{} sequences", first.len()) }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("group order", group_order, Duration::from_secs(5)),
        ("class sizes", class_sizes, Duration::from_secs(5)),
        ("cs-dihedral subgroup", cs_subgroup, Duration::from_secs(2)),
        ("identity suite", identity_suite, Duration::from_secs(5)),
        ("bound sharpness", sharpness, Duration::from_secs(5)),
        ("layer bounds", bounds, Duration::from_secs(60)),
        ("cost optimality", cost_optimality, Duration::from_secs(30)),
        ("round trip", round_trip, Duration::from_secs(10)),
        ("oracle equivalence", oracle_equivalence, Duration::from_secs(10)),
        ("rb soundness", rb_soundness, Duration::from_secs(5)),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let ok = outcome.ok && elapsed <= *limit;
        failed += usize::from(!ok);
        println!(
            "{} {:>2} {:<22} {:>7.2}s/{}s  {}",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            name,
            elapsed.as_secs_f64(),
            limit.as_secs(),
            outcome.detail
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
