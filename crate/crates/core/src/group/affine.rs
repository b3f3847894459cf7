use super::{check_qubits, qubit_bit, GroupError};

/// Reversible affine map `x -> A x + b` over F2.
///
/// `rows[j]` is the mask of input qubits that feed output qubit `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineMap {
    n: usize,
    rows: Vec<u16>,
    shift: u16,
}

impl AffineMap {
    pub fn identity(n: usize) -> Result<Self, GroupError> {
        check_qubits(n)?;
        let rows = (0..n).map(|q| qubit_bit(n, q) as u16).collect();
        Ok(AffineMap { n, rows, shift: 0 })
    }

    /// Builds a map from row masks and a shift; fails if `A` is singular.
    pub fn new(n: usize, rows: Vec<u16>, shift: u16) -> Result<Self, GroupError> {
        check_qubits(n)?;
        let full = ((1usize << n) - 1) as u16;
        if rows.len() != n {
            return Err(GroupError::TableLength { got: rows.len(), expected: n });
        }
        if rows.iter().any(|r| r & !full != 0) || shift & !full != 0 {
            return Err(GroupError::Mismatch(format!("mask wider than {n} qubits")));
        }
        let map = AffineMap { n, rows, shift };
        if !map.is_invertible() {
            return Err(GroupError::Singular);
        }
        Ok(map)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[u16] {
        &self.rows
    }

    pub fn shift(&self) -> u16 {
        self.shift
    }

    /// Matrix entry `A[row][col]`.
    pub fn entry(&self, row: usize, col: usize) -> bool {
        self.rows[row] as usize & qubit_bit(self.n, col) != 0
    }

    pub fn apply_linear(&self, x: usize) -> usize {
        let mut y = 0;
        for (j, &row) in self.rows.iter().enumerate() {
            if (row as usize & x).count_ones() & 1 == 1 {
                y |= qubit_bit(self.n, j);
            }
        }
        y
    }

    pub fn apply(&self, x: usize) -> usize {
        self.apply_linear(x) ^ self.shift as usize
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &AffineMap) -> AffineMap {
        let rows = self
            .rows
            .iter()
            .map(|&row| {
                let mut acc = 0u16;
                for k in 0..self.n {
                    if row as usize & qubit_bit(self.n, k) != 0 {
                        acc ^= inner.rows[k];
                    }
                }
                acc
            })
            .collect();
        let shift = (self.apply_linear(inner.shift as usize) as u16) ^ self.shift;
        AffineMap { n: self.n, rows, shift }
    }

    pub fn is_invertible(&self) -> bool {
        self.linear_inverse().is_some()
    }

    /// Gauss-Jordan elimination on `[A | I]`.
    fn linear_inverse(&self) -> Option<Vec<u16>> {
        let n = self.n;
        let mut a = self.rows.clone();
        let mut inv: Vec<u16> = (0..n).map(|q| qubit_bit(n, q) as u16).collect();
        for col in 0..n {
            let bit = qubit_bit(n, col) as u16;
            let pivot = (col..n).find(|&r| a[r] & bit != 0)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            for r in 0..n {
                if r != col && a[r] & bit != 0 {
                    a[r] ^= a[col];
                    inv[r] ^= inv[col];
                }
            }
        }
        Some(inv)
    }

    pub fn inverse(&self) -> AffineMap {
        let rows = self
            .linear_inverse()
            .expect("affine map invariant: A is invertible");
        let mut inv = AffineMap { n: self.n, rows, shift: 0 };
        inv.shift = inv.apply_linear(self.shift as usize) as u16;
        inv
    }

    pub(crate) fn flip(&mut self, q: usize) {
        self.shift ^= qubit_bit(self.n, q) as u16;
    }

    /// Left-multiplies by `CX(control, target)`.
    pub(crate) fn add_row(&mut self, control: usize, target: usize) {
        self.rows[target] ^= self.rows[control];
        if self.shift as usize & qubit_bit(self.n, control) != 0 {
            self.shift ^= qubit_bit(self.n, target) as u16;
        }
    }
}
