//! Gate-level circuits over `{X, T^k, CX, CS^e}` and their evaluation.
//!
//! Gate lists are temporal: the first gate acts first. A circuit
//! `[g1, g2, g3]` therefore evaluates to the matrix product `g3 · g2 · g1`.

mod text;

pub use text::{parse, parse_with_warnings, ParseError, ParseWarning};

use crate::group::{check_index, check_qubits, qubit_bit, GroupElement, GroupError, Modulus};
use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    X(usize),
    /// `T^power`, `power` in `[0, m)`.
    T { qubit: usize, power: u32 },
    Cx { control: usize, target: usize },
    /// `CS^power` on an unordered pair, `power` in `[0, m/d)`.
    Cs { a: usize, b: usize, power: u32 },
}

impl Gate {
    pub fn is_two_qubit(&self) -> bool {
        matches!(self, Gate::Cx { .. } | Gate::Cs { .. })
    }

    pub fn qubits(&self) -> (usize, Option<usize>) {
        match *self {
            Gate::X(q) | Gate::T { qubit: q, .. } => (q, None),
            Gate::Cx { control, target } => (control, Some(target)),
            Gate::Cs { a, b, .. } => (a, Some(b)),
        }
    }

    fn validate(&self, n: usize, m: Modulus) -> Result<(), GroupError> {
        let (q0, q1) = self.qubits();
        check_index(q0, n)?;
        if let Some(q1) = q1 {
            check_index(q1, n)?;
            if q0 == q1 {
                return Err(GroupError::RepeatedQubit(q0));
            }
        }
        match *self {
            Gate::T { power, .. } if power >= m.get() => {
                Err(GroupError::ExponentOutOfRange { exponent: power, bound: m.get() })
            }
            Gate::Cs { power, .. } if power >= m.cs_order() => {
                Err(GroupError::ExponentOutOfRange { exponent: power, bound: m.cs_order() })
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::X(q) => write!(f, "x {q}"),
            Gate::T { qubit, power } => write!(f, "t {qubit} {power}"),
            Gate::Cx { control, target } => write!(f, "cx {control} {target}"),
            Gate::Cs { a, b, power } => write!(f, "cs {a} {b} {power}"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GateCounts {
    pub cx: usize,
    pub cs: usize,
    pub x: usize,
    pub t: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    n: usize,
    m: Modulus,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n: usize, m: Modulus) -> Result<Self, GroupError> {
        check_qubits(n)?;
        Ok(Circuit { n, m, gates: Vec::new() })
    }

    pub fn from_gates(n: usize, m: Modulus, gates: Vec<Gate>) -> Result<Self, GroupError> {
        let mut c = Circuit::new(n, m)?;
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> Modulus {
        self.m
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<(), GroupError> {
        gate.validate(self.n, self.m)?;
        self.gates.push(gate);
        Ok(())
    }

    /// Appends `T^power` reduced mod `m`, skipping the identity power.
    pub(crate) fn push_t(&mut self, qubit: usize, power: i64) {
        let power = self.m.reduce_t(power);
        if power != 0 {
            self.gates.push(Gate::T { qubit, power });
        }
    }

    /// Appends `CS^power` reduced mod `m/d`, skipping the identity power.
    pub(crate) fn push_cs(&mut self, a: usize, b: usize, power: i64) {
        let power = self.m.reduce_cs(power);
        if power != 0 {
            self.gates.push(Gate::Cs { a, b, power });
        }
    }

    pub(crate) fn push_unchecked(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    /// Temporal concatenation: `self` runs first.
    pub fn then(&self, other: &Circuit) -> Result<Circuit, GroupError> {
        if self.n != other.n || self.m != other.m {
            return Err(GroupError::Mismatch("circuits on different n or m".into()));
        }
        let mut gates = self.gates.clone();
        gates.extend_from_slice(&other.gates);
        Ok(Circuit { n: self.n, m: self.m, gates })
    }

    /// Product of the gates in temporal order.
    pub fn evaluate(&self) -> GroupElement {
        let mut u = GroupElement::identity(self.n, self.m).expect("circuit has valid n");
        let (n, m) = (self.n, self.m);
        for gate in &self.gates {
            match *gate {
                Gate::X(q) => u.lmul_x(q),
                Gate::T { qubit, power } => {
                    let bit = qubit_bit(n, qubit);
                    let phase = m.t_phase(power);
                    u.lmul_diagonal(|y| if y & bit != 0 { phase } else { 0 });
                }
                Gate::Cx { control, target } => u.lmul_cx(control, target),
                Gate::Cs { a, b, power } => {
                    let mask = qubit_bit(n, a) | qubit_bit(n, b);
                    let phase = m.cs_phase(power);
                    u.lmul_diagonal(|y| if y & mask == mask { phase } else { 0 });
                }
            }
        }
        u
    }

    /// `CS^e` and `T^0` count as zero; every CX counts.
    pub fn gate_counts(&self) -> GateCounts {
        let mut counts = GateCounts::default();
        for gate in &self.gates {
            match *gate {
                Gate::X(_) => counts.x += 1,
                Gate::T { power, .. } if power != 0 => counts.t += 1,
                Gate::Cx { .. } => counts.cx += 1,
                Gate::Cs { power, .. } if power != 0 => counts.cs += 1,
                _ => {}
            }
        }
        counts
    }

    /// Lowers every `CS^e` to `T_a^e T_b^e · CX · T_b^{-e} · CX`.
    pub fn expand_cs(&self) -> Circuit {
        let mut out = Circuit { n: self.n, m: self.m, gates: Vec::new() };
        for gate in &self.gates {
            match *gate {
                Gate::Cs { a, b, power } => {
                    if power == 0 {
                        continue;
                    }
                    let e = power as i64;
                    out.push_unchecked(Gate::Cx { control: a, target: b });
                    out.push_t(b, -e);
                    out.push_unchecked(Gate::Cx { control: a, target: b });
                    out.push_t(a, e);
                    out.push_t(b, e);
                }
                g => out.push_unchecked(g),
            }
        }
        out
    }

    /// Gates on one line separated by `"; "`; the format `enumerate` prints.
    pub fn inline(&self) -> String {
        self.gates.iter().map(Gate::to_string).collect::<Vec<_>>().join("; ")
    }

    /// Text form in the circuit file grammar.
    pub fn serialize(&self) -> String {
        let mut out = format!("qubits {}\nm {}\n", self.n, self.m);
        for g in &self.gates {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Generator;

    fn m(v: u32) -> Modulus {
        Modulus::new(v).unwrap()
    }

    fn circ(n: usize, md: u32, gates: Vec<Gate>) -> Circuit {
        Circuit::from_gates(n, m(md), gates).unwrap()
    }

    #[test]
    fn double_cx_is_identity() {
        let c = circ(2, 8, vec![Gate::Cx { control: 0, target: 1 }; 2]);
        assert!(c.evaluate().is_identity());
    }

    #[test]
    fn cs_diagonal() {
        let c = circ(2, 8, vec![Gate::Cs { a: 0, b: 1, power: 1 }]);
        assert_eq!(c.evaluate().phases().values(), &[0, 0, 0, 4]);
    }

    #[test]
    fn t_moves_across_cx_pair() {
        let lhs = circ(
            2,
            8,
            vec![
                Gate::T { qubit: 1, power: 1 },
                Gate::Cx { control: 0, target: 1 },
                Gate::Cx { control: 1, target: 0 },
            ],
        );
        let rhs = circ(
            2,
            8,
            vec![
                Gate::Cx { control: 0, target: 1 },
                Gate::Cx { control: 1, target: 0 },
                Gate::T { qubit: 0, power: 1 },
            ],
        );
        assert_eq!(lhs.evaluate(), rhs.evaluate());
    }

    #[test]
    fn evaluation_matches_generator_products() {
        let md = 8;
        let gates = vec![
            Gate::X(0),
            Gate::T { qubit: 1, power: 3 },
            Gate::Cx { control: 1, target: 0 },
            Gate::T { qubit: 0, power: 5 },
        ];
        let c = circ(2, md, gates.clone());
        let mut expected = GroupElement::identity(2, m(md)).unwrap();
        for g in gates {
            let gen = match g {
                Gate::X(q) => Generator::X(q),
                Gate::T { qubit, power } => Generator::T { qubit, power },
                Gate::Cx { control, target } => Generator::Cx { control, target },
                Gate::Cs { .. } => unreachable!(),
            };
            expected = &GroupElement::generator(gen, 2, m(md)).unwrap() * &expected;
        }
        assert_eq!(c.evaluate(), expected);
    }

    #[test]
    fn cs_power_equals_repeated_macro() {
        for md in [2, 3, 4, 8] {
            let modulus = m(md);
            for e in 0..modulus.cs_order() {
                let direct = circ(2, md, vec![Gate::Cs { a: 0, b: 1, power: e }]);
                let mut unit = Circuit::new(2, modulus).unwrap();
                // T_0 T_1 · CX · T_1^dagger · CX, temporal order reversed.
                unit.push_unchecked(Gate::Cx { control: 0, target: 1 });
                unit.push_t(1, -1);
                unit.push_unchecked(Gate::Cx { control: 0, target: 1 });
                unit.push_t(0, 1);
                unit.push_t(1, 1);
                let mut repeated = Circuit::new(2, modulus).unwrap();
                for _ in 0..e {
                    repeated = repeated.then(&unit).unwrap();
                }
                assert_eq!(direct.evaluate(), repeated.evaluate(), "m={md} e={e}");
                assert_eq!(direct.expand_cs().evaluate(), direct.evaluate());
                let swapped = circ(2, md, vec![Gate::Cs { a: 1, b: 0, power: e }]);
                assert_eq!(swapped.evaluate(), direct.evaluate());
            }
        }
    }

    #[test]
    fn counts() {
        assert_eq!(Circuit::new(2, m(8)).unwrap().gate_counts(), GateCounts::default());
        let c = circ(
            2,
            8,
            vec![
                Gate::Cs { a: 0, b: 1, power: 0 },
                Gate::Cs { a: 0, b: 1, power: 2 },
                Gate::T { qubit: 0, power: 0 },
                Gate::T { qubit: 0, power: 1 },
                Gate::X(1),
                Gate::Cx { control: 0, target: 1 },
                Gate::Cx { control: 0, target: 1 },
            ],
        );
        assert_eq!(c.gate_counts(), GateCounts { cx: 2, cs: 1, x: 1, t: 1 });
    }

    #[test]
    fn invalid_gates_rejected() {
        let mut c = Circuit::new(2, m(8)).unwrap();
        assert!(c.push(Gate::X(2)).is_err());
        assert!(c.push(Gate::Cx { control: 0, target: 0 }).is_err());
        assert!(c.push(Gate::Cs { a: 0, b: 1, power: 4 }).is_err());
        assert!(c.push(Gate::T { qubit: 0, power: 8 }).is_err());
        assert!(c.is_empty());
    }
}
