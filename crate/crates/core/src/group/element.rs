use super::{
    check_index, check_qubits, qubit_bit, AffineMap, GroupError, Modulus, MonomialMatrix,
    PhaseCoefficients, PhaseTable,
};
use std::fmt;
use std::ops::Mul;

/// One of the group's generating gates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    X(usize),
    /// `T^k` on a qubit, `0 <= k < m`.
    T { qubit: usize, power: u32 },
    Cx { control: usize, target: usize },
}

/// An element of the CNOT-Dihedral group, modulo global phase.
///
/// Immutable once built; every constructor and operation returns a
/// normalized value.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    map: AffineMap,
    phases: PhaseTable,
}

impl GroupElement {
    pub fn identity(n: usize, m: Modulus) -> Result<Self, GroupError> {
        Ok(GroupElement { map: AffineMap::identity(n)?, phases: PhaseTable::zero(n, m)? })
    }

    /// Builds an element from an affine map and a normalized phase table,
    /// checking the divisibility condition on the phase polynomial.
    pub fn from_parts(map: AffineMap, phases: PhaseTable) -> Result<Self, GroupError> {
        if map.n() != phases.n() {
            return Err(GroupError::Mismatch(format!(
                "map on {} qubits, phases on {}",
                map.n(),
                phases.n()
            )));
        }
        let coeffs = phases.coefficients();
        if let Some(&monomial) = coeffs.divisibility_violations().first() {
            return Err(GroupError::Divisibility {
                monomial,
                weight: monomial.count_ones(),
                value: coeffs.values()[monomial],
            });
        }
        Ok(GroupElement { map, phases })
    }

    pub fn generator(gate: Generator, n: usize, m: Modulus) -> Result<Self, GroupError> {
        check_qubits(n)?;
        let mut map = AffineMap::identity(n)?;
        let mut values = vec![0u32; 1 << n];
        match gate {
            Generator::X(q) => {
                check_index(q, n)?;
                map = AffineMap::new(n, map.rows().to_vec(), qubit_bit(n, q) as u16)?;
            }
            Generator::T { qubit, power } => {
                check_index(qubit, n)?;
                if power >= m.get() {
                    return Err(GroupError::ExponentOutOfRange { exponent: power, bound: m.get() });
                }
                let bit = qubit_bit(n, qubit);
                for (x, v) in values.iter_mut().enumerate() {
                    if x & bit != 0 {
                        *v = m.t_phase(power);
                    }
                }
            }
            Generator::Cx { control, target } => {
                check_index(control, n)?;
                check_index(target, n)?;
                if control == target {
                    return Err(GroupError::RepeatedQubit(control));
                }
                let mut rows = map.rows().to_vec();
                rows[target] |= qubit_bit(n, control) as u16;
                map = AffineMap::new(n, rows, 0)?;
            }
        }
        Ok(GroupElement { map, phases: PhaseTable::from_values_unchecked(n, m, values) })
    }

    /// `CS^e` on the pair `(a, b)`: the diagonal element with phase `4e` on
    /// `x_a = x_b = 1`.
    pub fn controlled_s(a: usize, b: usize, power: u32, n: usize, m: Modulus) -> Result<Self, GroupError> {
        check_qubits(n)?;
        check_index(a, n)?;
        check_index(b, n)?;
        if a == b {
            return Err(GroupError::RepeatedQubit(a));
        }
        if power >= m.cs_order() {
            return Err(GroupError::ExponentOutOfRange { exponent: power, bound: m.cs_order() });
        }
        let mask = qubit_bit(n, a) | qubit_bit(n, b);
        let values = (0..1usize << n)
            .map(|x| if x & mask == mask { m.cs_phase(power) } else { 0 })
            .collect();
        Ok(GroupElement {
            map: AffineMap::identity(n)?,
            phases: PhaseTable::from_values_unchecked(n, m, values),
        })
    }

    pub fn n(&self) -> usize {
        self.map.n()
    }

    pub fn modulus(&self) -> Modulus {
        self.phases.modulus()
    }

    pub fn map(&self) -> &AffineMap {
        &self.map
    }

    pub fn phases(&self) -> &PhaseTable {
        &self.phases
    }

    pub fn is_identity(&self) -> bool {
        self.map.rows().iter().enumerate().all(|(q, &r)| r as usize == qubit_bit(self.n(), q))
            && self.map.shift() == 0
            && self.phases.values().iter().all(|&v| v == 0)
    }

    /// `(phase, f(x))` for basis state `x`.
    pub fn act(&self, x: usize) -> (u32, usize) {
        (self.phases.get(x), self.map.apply(x))
    }

    fn check_compatible(&self, other: &GroupElement) -> Result<(), GroupError> {
        if self.n() != other.n() || self.modulus() != other.modulus() {
            return Err(GroupError::Mismatch(format!(
                "(n={}, m={}) vs (n={}, m={})",
                self.n(),
                self.modulus(),
                other.n(),
                other.modulus()
            )));
        }
        Ok(())
    }

    /// Matrix product `self · other`: `other` acts first.
    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check_compatible(other)?;
        let modulus = self.modulus().phase_modulus();
        let values = (0..1usize << self.n())
            .map(|x| (other.phases.get(x) + self.phases.get(other.map.apply(x))) % modulus)
            .collect();
        let mut phases = PhaseTable::from_values_unchecked(self.n(), self.modulus(), values);
        phases.normalize();
        Ok(GroupElement { map: self.map.after(&other.map), phases })
    }

    pub fn inverse(&self) -> GroupElement {
        let inv = self.map.inverse();
        let modulus = self.modulus().phase_modulus();
        let values = (0..1usize << self.n())
            .map(|y| (modulus - self.phases.get(inv.apply(y))) % modulus)
            .collect();
        let mut phases = PhaseTable::from_values_unchecked(self.n(), self.modulus(), values);
        phases.normalize();
        GroupElement { map: inv, phases }
    }

    pub fn equals(&self, other: &GroupElement) -> Result<bool, GroupError> {
        self.check_compatible(other)?;
        Ok(self == other)
    }

    /// Deterministic byte serialization, injective on group elements.
    ///
    /// Layout: `n` (1 byte), `m` (u32 LE), each row of `A` as a
    /// `ceil(n/8)`-byte little-endian mask, `b` in the same width, then the
    /// `2^n` phase residues as u32 LE in increasing basis-index order.
    pub fn canonical_key(&self) -> CanonicalKey {
        let n = self.n();
        let width = n.div_ceil(8);
        let mut bytes = Vec::with_capacity(5 + (n + 1) * width + 4 * (1 << n));
        bytes.push(n as u8);
        bytes.extend_from_slice(&self.modulus().get().to_le_bytes());
        for &row in self.map.rows().iter().chain(std::iter::once(&self.map.shift())) {
            bytes.extend_from_slice(&row.to_le_bytes()[..width]);
        }
        for &v in self.phases.values() {
            bytes.extend_from_slice(&v.to_le_bytes());
        }
        CanonicalKey(bytes)
    }

    pub fn to_unitary(&self) -> Result<MonomialMatrix, GroupError> {
        MonomialMatrix::from_element(self)
    }

    pub fn phase_coefficients(&self) -> PhaseCoefficients {
        self.phases.coefficients()
    }

    /// Adds `shift` to every raw phase before renormalizing. The result is
    /// always the same element; exposed for testing the projective quotient.
    pub fn with_global_phase(&self, shift: u32) -> GroupElement {
        let raw: Vec<i64> = self.phases.values().iter().map(|&v| v as i64 + shift as i64).collect();
        let phases = PhaseTable::from_raw(self.n(), self.modulus(), &raw)
            .expect("table length fixed by n");
        GroupElement { map: self.map.clone(), phases }
    }

    // Left multiplication by single gates, used by circuit evaluation.

    pub(crate) fn lmul_x(&mut self, q: usize) {
        self.map.flip(q);
    }

    pub(crate) fn lmul_cx(&mut self, control: usize, target: usize) {
        self.map.add_row(control, target);
    }

    /// Left-multiplies by a diagonal whose phase depends on the output state.
    pub(crate) fn lmul_diagonal(&mut self, phase_of_output: impl Fn(usize) -> u32) {
        let modulus = self.modulus().phase_modulus();
        let map = &self.map;
        for (x, v) in self.phases.values_mut().iter_mut().enumerate() {
            *v = (*v + phase_of_output(map.apply(x))) % modulus;
        }
        self.phases.normalize();
    }
}

impl Mul for &GroupElement {
    type Output = GroupElement;

    /// Panics on mismatched `n` or `m`; use [`GroupElement::compose`] to
    /// get an error instead.
    fn mul(self, rhs: &GroupElement) -> GroupElement {
        self.compose(rhs).expect("operands on the same qubits and modulus")
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        let rows: Vec<String> = self.map.rows().iter().map(|r| format!("{:0n$b}", r)).collect();
        write!(
            f,
            "GroupElement(n={}, m={}, A=[{}], b={:0n$b}, p={:?})",
            n,
            self.modulus(),
            rows.join(","),
            self.map.shift(),
            self.phases.values()
        )
    }
}

/// Opaque, hashable, deterministic identity of a group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}
