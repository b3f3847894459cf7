use super::{GroupElement, GroupError};

/// Exact monomial unitary: each column `x` has a single nonzero entry
/// `exp(i*pi*e/m)` at row `f(x)`, stored as the integer exponent `e` mod `2m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMatrix {
    n: usize,
    phase_modulus: u32,
    rows: Vec<usize>,
    exponents: Vec<u32>,
}

impl MonomialMatrix {
    pub(crate) fn from_element(u: &GroupElement) -> Result<Self, GroupError> {
        let n = u.n();
        let (rows, exponents) = (0..1usize << n).map(|x| {
            let (phase, y) = u.act(x);
            (y, phase)
        }).unzip();
        Ok(MonomialMatrix { n, phase_modulus: u.modulus().phase_modulus(), rows, exponents })
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn phase_modulus(&self) -> u32 {
        self.phase_modulus
    }

    /// Root-of-unity exponent at `(row, col)`, `None` for a zero entry.
    pub fn entry(&self, row: usize, col: usize) -> Option<u32> {
        (self.rows[col] == row).then(|| self.exponents[col])
    }

    pub fn to_dense(&self) -> Vec<Vec<Option<u32>>> {
        (0..self.dim())
            .map(|r| (0..self.dim()).map(|c| self.entry(r, c)).collect())
            .collect()
    }

    /// The constant `s` with `self = exp(i*pi*s/m) * other`, if any.
    pub fn phase_offset_from(&self, other: &MonomialMatrix) -> Option<u32> {
        if self.n != other.n || self.phase_modulus != other.phase_modulus || self.rows != other.rows {
            return None;
        }
        let modulus = self.phase_modulus;
        let offset = (self.exponents[0] + modulus - other.exponents[0]) % modulus;
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(&a, &b)| (a + modulus - b) % modulus == offset)
            .then_some(offset)
    }
}
