use super::{check_qubits, GroupError, Modulus};

/// Pointwise phases `p(x)` in units of `pi/m`, normalized so `p(0) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhaseTable {
    n: usize,
    m: Modulus,
    values: Vec<u32>,
}

impl PhaseTable {
    pub fn zero(n: usize, m: Modulus) -> Result<Self, GroupError> {
        check_qubits(n)?;
        Ok(PhaseTable { n, m, values: vec![0; 1 << n] })
    }

    /// Validates range and normalization; does not renormalize.
    pub fn new(n: usize, m: Modulus, values: Vec<u32>) -> Result<Self, GroupError> {
        check_qubits(n)?;
        if values.len() != 1 << n {
            return Err(GroupError::TableLength { got: values.len(), expected: 1 << n });
        }
        let bound = m.phase_modulus();
        if let Some(&value) = values.iter().find(|&&v| v >= bound) {
            return Err(GroupError::PhaseOutOfRange { value, bound });
        }
        if values[0] != 0 {
            return Err(GroupError::PhaseNotNormalized);
        }
        Ok(PhaseTable { n, m, values })
    }

    /// Reduces arbitrary integer phases mod `2m` and removes the global phase.
    pub fn from_raw(n: usize, m: Modulus, raw: &[i64]) -> Result<Self, GroupError> {
        check_qubits(n)?;
        if raw.len() != 1 << n {
            return Err(GroupError::TableLength { got: raw.len(), expected: 1 << n });
        }
        let modulus = m.phase_modulus() as i64;
        let base = raw[0];
        let values = raw.iter().map(|&v| (v - base).rem_euclid(modulus) as u32).collect();
        Ok(PhaseTable { n, m, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> Modulus {
        self.m
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn get(&self, x: usize) -> u32 {
        self.values[x]
    }

    pub(crate) fn values_mut(&mut self) -> &mut [u32] {
        &mut self.values
    }

    pub(crate) fn from_values_unchecked(n: usize, m: Modulus, values: Vec<u32>) -> Self {
        PhaseTable { n, m, values }
    }

    /// Subtracts `p(0)` from every entry.
    pub(crate) fn normalize(&mut self) {
        let base = self.values[0];
        if base != 0 {
            let modulus = self.m.phase_modulus();
            for v in &mut self.values {
                *v = (*v + modulus - base) % modulus;
            }
        }
    }

    /// Binary Möbius transform: `c[a] = sum over b ⊆ a of (-1)^{|a|-|b|} p(b)`.
    pub fn coefficients(&self) -> PhaseCoefficients {
        let modulus = self.m.phase_modulus();
        let mut c = self.values.clone();
        for bit in (0..self.n).map(|i| 1usize << i) {
            for mask in 0..c.len() {
                if mask & bit != 0 {
                    c[mask] = (c[mask] + modulus - c[mask ^ bit]) % modulus;
                }
            }
        }
        PhaseCoefficients { n: self.n, m: self.m, values: c }
    }
}

/// Monomial coefficients of the phase polynomial, indexed by subset mask.
///
/// Entry `a` is the coefficient of `prod_{q in a} x_q`; entry 0 is the
/// constant term and is always zero for normalized tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PhaseCoefficients {
    n: usize,
    m: Modulus,
    values: Vec<u32>,
}

impl PhaseCoefficients {
    pub fn new(n: usize, m: Modulus, values: Vec<u32>) -> Result<Self, GroupError> {
        check_qubits(n)?;
        if values.len() != 1 << n {
            return Err(GroupError::TableLength { got: values.len(), expected: 1 << n });
        }
        let bound = m.phase_modulus();
        if let Some(&value) = values.iter().find(|&&v| v >= bound) {
            return Err(GroupError::PhaseOutOfRange { value, bound });
        }
        Ok(PhaseCoefficients { n, m, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> Modulus {
        self.m
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Coefficient of the monomial over `qubits` (order irrelevant).
    pub fn get(&self, qubits: &[usize]) -> u32 {
        let mask = qubits.iter().fold(0, |acc, &q| acc | super::qubit_bit(self.n, q));
        self.values[mask]
    }

    /// Monomials whose coefficient lies outside `2^{|a|-1} Z_{2m}`.
    ///
    /// In `Z_{2m}` the multiples of `2^w` form the subgroup generated by
    /// `gcd(2^w, 2m)`, which is what gets tested.
    pub fn divisibility_violations(&self) -> Vec<usize> {
        self.violations_at_shift(1)
    }

    /// Same test with the stronger exponent `|a|`, which every reachable
    /// element meets because `T` contributes phase 2.
    pub fn strong_divisibility_violations(&self) -> Vec<usize> {
        self.violations_at_shift(0)
    }

    fn violations_at_shift(&self, shift: u32) -> Vec<usize> {
        let modulus = self.m.phase_modulus() as u64;
        (1..self.values.len())
            .filter(|&mask| {
                let exp = (mask.count_ones() - shift).min(40);
                let g = gcd(1u64 << exp, modulus);
                !(self.values[mask] as u64).is_multiple_of(g)
            })
            .collect()
    }

    pub fn constant_term(&self) -> u32 {
        self.values[0]
    }

    /// Zeta transform back to a phase table. Rejects a constant term or any
    /// coefficient failing divisibility.
    pub fn to_phase_table(&self) -> Result<PhaseTable, GroupError> {
        if self.values[0] != 0 {
            return Err(GroupError::PhaseNotNormalized);
        }
        if let Some(&monomial) = self.divisibility_violations().first() {
            return Err(GroupError::Divisibility {
                monomial,
                weight: monomial.count_ones(),
                value: self.values[monomial],
            });
        }
        let modulus = self.m.phase_modulus();
        let mut p = self.values.clone();
        for bit in (0..self.n).map(|i| 1usize << i) {
            for mask in 0..p.len() {
                if mask & bit != 0 {
                    p[mask] = (p[mask] + p[mask ^ bit]) % modulus;
                }
            }
        }
        Ok(PhaseTable { n: self.n, m: self.m, values: p })
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: u32) -> Modulus {
        Modulus::new(v).unwrap()
    }

    /// Brute-force inclusion-exclusion over subsets.
    fn mobius_oracle(p: &[u32], modulus: i64) -> Vec<u32> {
        (0..p.len())
            .map(|a| {
                let mut acc = 0i64;
                for (b, &pb) in p.iter().enumerate() {
                    if b & !a == 0 {
                        let sign = if (a.count_ones() - b.count_ones()) % 2 == 0 { 1 } else { -1 };
                        acc += sign * pb as i64;
                    }
                }
                acc.rem_euclid(modulus) as u32
            })
            .collect()
    }

    #[test]
    fn controlled_s_coefficients() {
        // p(1,1) = 4 at m = 8, all else 0.
        let table = PhaseTable::new(2, m(8), vec![0, 0, 0, 4]).unwrap();
        let c = table.coefficients();
        assert_eq!(c.get(&[0]), 0);
        assert_eq!(c.get(&[1]), 0);
        assert_eq!(c.get(&[0, 1]), 4);
        assert_eq!(c.values(), &mobius_oracle(table.values(), 16)[..]);
        assert!(c.divisibility_violations().is_empty());
    }

    #[test]
    fn mobius_matches_brute_force() {
        let values = vec![0, 6, 2, 14, 4, 10, 12, 8];
        let table = PhaseTable::new(3, m(8), values.clone()).unwrap();
        assert_eq!(table.coefficients().values(), &mobius_oracle(&values, 16)[..]);
    }

    #[test]
    fn indivisible_coefficient_rejected() {
        // Quadratic coefficient 1 is odd: not in 2 Z_16.
        let c = PhaseCoefficients::new(2, m(8), vec![0, 2, 2, 1]).unwrap();
        assert_eq!(c.divisibility_violations(), vec![3]);
        assert!(matches!(c.to_phase_table(), Err(GroupError::Divisibility { monomial: 3, .. })));
    }

    #[test]
    fn divisibility_saturates_at_modulus() {
        // Cubic term needs 2^2 | c in Z_6, i.e. gcd(4, 6) = 2 | c.
        let mut values = vec![0; 8];
        values[7] = 2;
        let c = PhaseCoefficients::new(3, m(3), values).unwrap();
        assert!(c.divisibility_violations().is_empty());
    }

    #[test]
    fn raw_tables_normalize() {
        let t = PhaseTable::from_raw(1, m(4), &[3, -1]).unwrap();
        assert_eq!(t.values(), &[0, 4]);
    }

    #[test]
    fn invalid_tables_rejected() {
        assert_eq!(PhaseTable::new(1, m(4), vec![1, 0]), Err(GroupError::PhaseNotNormalized));
        assert_eq!(
            PhaseTable::new(1, m(4), vec![0, 8]),
            Err(GroupError::PhaseOutOfRange { value: 8, bound: 8 })
        );
    }
}
