//! Moves single-qubit gates toward the start of a circuit through the
//! two-qubit gates, in the way the layered construction absorbs them.

use crate::circuit::{Circuit, Gate};
use crate::group::Modulus;

/// Dihedral element on one qubit as `X^flip` followed by `T^power`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Dihedral {
    flip: bool,
    power: u32,
}

impl Dihedral {
    /// `X` after `T^p X^f` is `T^-p X^(f+1)` up to phase.
    fn then_x(&mut self, m: Modulus) {
        self.flip = !self.flip;
        self.power = m.reduce_t(-(self.power as i64));
    }

    fn then_t(&mut self, k: i64, m: Modulus) {
        self.power = m.reduce_t(self.power as i64 + k);
    }

    fn apply(&mut self, gate: Gate, m: Modulus) {
        match gate {
            Gate::X(_) => self.then_x(m),
            Gate::T { power, .. } => self.then_t(power as i64, m),
            _ => unreachable!("two-qubit gate in a single-qubit segment"),
        }
    }
}

/// Per-qubit single-qubit content between two-qubit gates.
#[derive(Clone, Debug)]
struct Segment(Vec<Dihedral>);

impl Segment {
    fn emit(&self, out: &mut Circuit) {
        for (q, d) in self.0.iter().enumerate() {
            if d.flip {
                out.push_unchecked(Gate::X(q));
            }
            out.push_t(q, d.power as i64);
        }
    }
}

/// Returns an equivalent circuit in which every single-qubit gate that can
/// pass a two-qubit gate has been moved before it, and the single-qubit
/// gates between consecutive two-qubit gates are written per qubit as
/// `x q` then `t q k`.
///
/// What stays behind a `cx c t` is a power of `T` on `t` below `m/d`;
/// nothing stays behind a `cs`. CX and CS counts are unchanged.
pub fn push_single_qubit_left(c: &Circuit) -> Circuit {
    let (n, m) = (c.n(), c.modulus());
    let mut segments = vec![Segment(vec![Dihedral::default(); n])];
    let mut two_qubit = Vec::new();
    for &g in c.gates() {
        if g.is_two_qubit() {
            two_qubit.push(g);
            segments.push(Segment(vec![Dihedral::default(); n]));
        } else {
            let (q, _) = g.qubits();
            segments.last_mut().unwrap().0[q].apply(g, m);
        }
    }

    for s in (1..segments.len()).rev() {
        let after = std::mem::replace(&mut segments[s], Segment(vec![Dihedral::default(); n]));
        let (moved, kept, gate) = pass_through(two_qubit[s - 1], after, m);
        two_qubit[s - 1] = gate;
        segments[s] = kept;
        let before = &mut segments[s - 1];
        for g in moved {
            let (q, _) = g.qubits();
            before.0[q].apply(g, m);
        }
    }

    let mut out = Circuit::new(n, m).expect("same n as input");
    segments[0].emit(&mut out);
    for (gate, seg) in two_qubit.iter().zip(&segments[1..]) {
        out.push_unchecked(*gate);
        seg.emit(&mut out);
    }
    out
}

/// Rewrites `[gate; after]` as `[moved; gate'; kept]`.
fn pass_through(gate: Gate, after: Segment, m: Modulus) -> (Vec<Gate>, Segment, Gate) {
    let n = after.0.len();
    let mut moved = Vec::new();
    let mut kept = Segment(vec![Dihedral::default(); n]);
    let push_dihedral = |moved: &mut Vec<Gate>, q: usize, d: Dihedral| {
        if d.flip {
            moved.push(Gate::X(q));
        }
        if d.power != 0 {
            moved.push(Gate::T { qubit: q, power: d.power });
        }
    };

    match gate {
        Gate::Cx { control, target } => {
            // Control first: X_c emerges as X_c X_t, T_c commutes.
            let dc = after.0[control];
            if dc.flip {
                moved.push(Gate::X(control));
                moved.push(Gate::X(target));
            }
            if dc.power != 0 {
                moved.push(Gate::T { qubit: control, power: dc.power });
            }
            // Target: X_t commutes, Z_t emerges as Z_c Z_t.
            let dt = after.0[target];
            if dt.flip {
                moved.push(Gate::X(target));
            }
            let mut rest = dt.power;
            if m.is_even() && rest >= m.get() / 2 {
                let z = m.get() / 2;
                moved.push(Gate::T { qubit: control, power: z });
                moved.push(Gate::T { qubit: target, power: z });
                rest -= z;
            }
            kept.0[target].power = rest;
            for (q, d) in after.0.iter().enumerate() {
                if q != control && q != target {
                    push_dihedral(&mut moved, q, *d);
                }
            }
            (moved, kept, gate)
        }
        Gate::Cs { a, b, mut power } => {
            // X on either qubit inverts CS and leaves S^e on the other one.
            for (q, other) in [(a, b), (b, a)] {
                let d = after.0[q];
                if d.flip {
                    moved.push(Gate::X(q));
                    let s = m.reduce_t(2 * power as i64);
                    if s != 0 {
                        moved.push(Gate::T { qubit: other, power: s });
                    }
                    power = m.reduce_cs(-(power as i64));
                }
                if d.power != 0 {
                    moved.push(Gate::T { qubit: q, power: d.power });
                }
            }
            for (q, d) in after.0.iter().enumerate() {
                if q != a && q != b {
                    push_dihedral(&mut moved, q, *d);
                }
            }
            (moved, kept, Gate::Cs { a, b, power })
        }
        _ => unreachable!("pass_through on a single-qubit gate"),
    }
}
