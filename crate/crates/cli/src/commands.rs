use crate::output::Out;
use crate::{Command, Failure, FormFormat};
use anyhow::{anyhow, Context};
use cnot_dihedral::canon2::{classify, enumerate_forms, verify_class_costs, CanonicalForm, FormClass};
use cnot_dihedral::circuit::parse_with_warnings;
use cnot_dihedral::identities::{verify_all, RuleStatus};
use cnot_dihedral::layered::{CostMode, LayerError, LayerSet};
use cnot_dihedral::rb::rb_sequences;
use cnot_dihedral::{Circuit, Modulus};
use serde::Serialize;
use std::fs;
use std::path::Path;

pub fn run(command: Command, out: &mut Out) -> Result<(), Failure> {
    match command {
        Command::Enumerate { m, class, format } => enumerate(out, m, class.as_deref(), format),
        Command::Classify { file } => classify_file(out, &file),
        Command::Generate { n, m, mode, rmax, budget } => generate(out, n as usize, m, mode.into(), rmax, budget),
        Command::Cost { file, mode, rmax, budget } => cost(out, &file, mode.into(), rmax, budget),
        Command::Verify { m, n, class_costs } => verify(out, m, n as usize, class_costs),
        Command::RbSeq { length, m, seed, count, out: dir } => rb_seq(out, length as usize, m, seed, count, dir.as_deref()),
    }
}

fn read_circuit(path: &Path) -> anyhow::Result<Circuit> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let (circuit, warnings) = parse_with_warnings(&text).with_context(|| format!("parsing {}", path.display()))?;
    for w in warnings {
        eprintln!("cdg: warning: {}:{}: {}", path.display(), w.line, w.message);
    }
    Ok(circuit)
}

#[derive(Serialize)]
struct FormRecord<'a> {
    index: usize,
    class: &'a str,
    params: String,
    circuit: String,
    key: String,
}

fn form_record(index: usize, f: &CanonicalForm, m: Modulus) -> FormRecord<'static> {
    let circuit = f.to_circuit(m);
    FormRecord {
        index,
        class: f.class.name(),
        params: f.params(),
        circuit: circuit.inline(),
        key: circuit.evaluate().canonical_key().to_hex(),
    }
}

fn enumerate(out: &mut Out, m: Modulus, class: Option<&str>, format: FormFormat) -> Result<(), Failure> {
    let class = class
        .map(|c| FormClass::from_name(c).ok_or_else(|| anyhow!("--class: unknown class `{c}`")))
        .transpose()?;
    let forms = enumerate_forms(m).filter(|f| class.is_none_or(|c| f.class == c));
    for (i, f) in forms.enumerate() {
        let rec = form_record(i, &f, m);
        if out.json {
            out.record(&rec);
        } else {
            out.line(match format {
                FormFormat::Circuits => rec.circuit,
                FormFormat::Params => rec.params,
                FormFormat::Keys => rec.key,
            });
        }
    }
    Ok(())
}

fn classify_file(out: &mut Out, path: &Path) -> Result<(), Failure> {
    let circuit = read_circuit(path)?;
    let form = classify(&circuit.evaluate()).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    let rec = form_record(0, &form, circuit.modulus());
    if out.json {
        out.record(&rec);
    } else {
        out.line(format!("class    {}", rec.class));
        out.line(format!("params   {}", rec.params));
        out.line(format!("cx       {}", form.class.cx_cost()));
        out.line(format!("circuit  {}", rec.circuit));
    }
    Ok(())
}

fn layer_failure(e: LayerError) -> Failure {
    match e {
        LayerError::Group(g) => Failure::Input(g.into()),
        other => Failure::Check(other.to_string()),
    }
}

fn generate(out: &mut Out, n: usize, m: Modulus, mode: CostMode, rmax: usize, budget: usize) -> Result<(), Failure> {
    let set = LayerSet::build(mode, n, m, rmax, budget).map_err(layer_failure)?;
    let report = set.bound_report();
    if out.json {
        for row in &report.rows {
            out.record(row);
        }
        #[derive(Serialize)]
        struct Summary {
            total: usize,
            closed: bool,
            bounds_ok: bool,
        }
        out.record(&Summary { total: set.total(), closed: set.is_closed(), bounds_ok: report.ok });
    } else {
        let rows: Vec<Vec<String>> = report
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.layer.to_string(),
                    r.size.to_string(),
                    r.candidates.to_string(),
                    r.step_bound.map_or("-".into(), |b| b.to_string()),
                    r.closed_bound.to_string(),
                    out.status(r.within, if r.within { "ok" } else { "VIOLATED" }),
                ]
            })
            .collect();
        out.table(&["layer", "size", "candidates", "step_bound", "closed_bound", "bounds"], &rows);
        out.line(format!(
            "total {}  mode {}  n {}  m {}  {}",
            set.total(),
            mode,
            n,
            m,
            if set.is_closed() { "closed" } else { "depth cap reached" }
        ));
    }
    if report.ok {
        Ok(())
    } else {
        Err(Failure::Check("layer sizes exceed the counting bounds".into()))
    }
}

fn cost(out: &mut Out, path: &Path, mode: CostMode, rmax: usize, budget: usize) -> Result<(), Failure> {
    let circuit = read_circuit(path)?;
    let set = LayerSet::build(mode, circuit.n(), circuit.modulus(), rmax, budget).map_err(layer_failure)?;
    let (cost, witness) = set.min_cost(&circuit.evaluate()).map_err(layer_failure)?;
    if out.json {
        #[derive(Serialize)]
        struct CostRecord {
            mode: CostMode,
            cost: u32,
            witness: String,
        }
        out.record(&CostRecord { mode, cost, witness: witness.inline() });
    } else {
        out.line(format!("{mode} cost {cost}"));
        out.line(witness.serialize().trim_end());
    }
    Ok(())
}

fn verify(out: &mut Out, m: Modulus, n: usize, class_costs: bool) -> Result<(), Failure> {
    let report = verify_all(m, n);
    let mut ok = report.all_passed();
    if out.json {
        #[derive(Serialize)]
        struct RuleRecord<'a> {
            name: &'a str,
            status: &'a str,
            instances: usize,
        }
        for r in &report.rules {
            out.record(&RuleRecord { name: r.name, status: r.status.as_str(), instances: r.instances });
        }
    } else {
        let rows: Vec<Vec<String>> = report
            .rules
            .iter()
            .map(|r| {
                vec![
                    r.name.to_string(),
                    out.status(r.status != RuleStatus::Fail, r.status.as_str()),
                    r.instances.to_string(),
                ]
            })
            .collect();
        out.table(&["rule", "status", "instances"], &rows);
    }
    for r in &report.rules {
        if let Some(c) = &r.counterexample {
            eprintln!("cdg: {} fails at i={} j={} k={}: {} != {}", r.name, c.i, c.j, c.k, c.lhs, c.rhs);
        }
    }
    if class_costs {
        if n != 2 {
            return Err(anyhow!("--class-costs needs --n 2").into());
        }
        let costs = verify_class_costs(m);
        ok &= costs.ok;
        if out.json {
            for row in &costs.rows {
                out.record(row);
            }
        } else {
            let rows: Vec<Vec<String>> = costs
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.class.name().to_string(),
                        r.elements.to_string(),
                        r.expected_cost.to_string(),
                        format!("{}..{}", r.min_cost, r.max_cost),
                        out.status(r.mismatches == 0, &r.mismatches.to_string()),
                    ]
                })
                .collect();
            out.line("");
            out.table(&["class", "elements", "cx", "searched", "mismatches"], &rows);
            out.line(format!("mixed cs/cx optima: {}", costs.mixing_violations));
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Check(format!("verification failed at m={m} n={n}")))
    }
}

fn rb_seq(out: &mut Out, length: usize, m: Modulus, seed: u64, count: usize, dir: Option<&Path>) -> Result<(), Failure> {
    let sequences = rb_sequences(length, m, seed, count);
    if let Some(dir) = dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (i, s) in sequences.iter().enumerate() {
            let path = dir.join(format!("seq_{i:04}.txt"));
            fs::write(&path, s.to_text()).with_context(|| format!("writing {}", path.display()))?;
            if !out.json {
                out.line(path.display().to_string());
            }
        }
    }
    if out.json {
        #[derive(Serialize)]
        struct SeqRecord {
            index: usize,
            length: usize,
            inverse: String,
            circuit: String,
        }
        for (i, s) in sequences.iter().enumerate() {
            out.record(&SeqRecord { index: i, length, inverse: s.inverse().params(), circuit: s.circuit().inline() });
        }
    } else if dir.is_none() {
        for (i, s) in sequences.iter().enumerate() {
            if i > 0 {
                out.line("");
            }
            out.line(s.to_text().trim_end());
        }
    }
    Ok(())
}
