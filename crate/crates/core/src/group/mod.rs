//! Exact arithmetic on CNOT-Dihedral group elements.
//!
//! An element acts on computational basis states as
//! `U|x> = exp(i*pi*p(x)/m) |A x + b>`, with `A` invertible over F2 and the
//! phase table `p` taking values in `Z_{2m}`. The global phase is removed by
//! pinning `p(0) = 0`, so structural equality is group equality.
//!
//! Basis indices put qubit 0 in the most significant bit: on `n` qubits, qubit
//! `q` is bit `n - 1 - q` of the index. Every bitmask in this module (affine
//! rows, shifts, phase-table indices, monomial subsets) uses that encoding.

mod affine;
mod element;
mod phase;
mod unitary;

pub use affine::AffineMap;
pub use element::{CanonicalKey, Generator, GroupElement};
pub use phase::{PhaseCoefficients, PhaseTable};
pub use unitary::MonomialMatrix;

use serde::Serialize;
use std::fmt;
use thiserror::Error;

/// Hard cap on the qubit count. Phase tables have `2^n` entries.
pub const MAX_QUBITS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("qubit count {0} is outside 1..={MAX_QUBITS}")]
    InvalidQubitCount(usize),
    #[error("modulus {0} is outside 2..={max}", max = Modulus::MAX)]
    InvalidModulus(u32),
    #[error("qubit index {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("two-qubit gate needs distinct qubits, got {0} twice")]
    RepeatedQubit(usize),
    #[error("exponent {exponent} outside [0, {bound})")]
    ExponentOutOfRange { exponent: u32, bound: u32 },
    #[error("operands disagree: {0}")]
    Mismatch(String),
    #[error("linear part is singular over F2")]
    Singular,
    #[error("phase table must vanish on the all-zero basis state")]
    PhaseNotNormalized,
    #[error("phase value {value} outside [0, {bound})")]
    PhaseOutOfRange { value: u32, bound: u32 },
    #[error("coefficient {value} of monomial {monomial:#b} is not divisible by 2^{}", weight - 1)]
    Divisibility { monomial: usize, weight: u32, value: u32 },
    #[error("wrong table length {got}, expected {expected}")]
    TableLength { got: usize, expected: usize },
}

/// The integer `m` fixing `T = diag(1, exp(2*pi*i/m))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Modulus(u32);

impl Modulus {
    pub const MAX: u32 = 1 << 20;

    pub fn new(m: u32) -> Result<Self, GroupError> {
        if (2..=Self::MAX).contains(&m) {
            Ok(Modulus(m))
        } else {
            Err(GroupError::InvalidModulus(m))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// `gcd(m, 2)`.
    pub fn d(self) -> u32 {
        if self.0.is_multiple_of(2) {
            2
        } else {
            1
        }
    }

    pub fn is_even(self) -> bool {
        self.d() == 2
    }

    /// Phases live in `Z_{2m}` (units of `pi/m`).
    pub fn phase_modulus(self) -> u32 {
        2 * self.0
    }

    /// Order of `S = T^2`, hence of `CS`: `m/d`.
    pub fn cs_order(self) -> u32 {
        self.0 / self.d()
    }

    /// Phase contributed by `T^k` on `|1>`.
    pub fn t_phase(self, k: u32) -> u32 {
        ((2 * k as u64) % self.phase_modulus() as u64) as u32
    }

    /// Phase contributed by `CS^e` on `|11>`.
    pub fn cs_phase(self, e: u32) -> u32 {
        ((4 * e as u64) % self.phase_modulus() as u64) as u32
    }

    pub fn reduce_t(self, k: i64) -> u32 {
        k.rem_euclid(self.0 as i64) as u32
    }

    pub fn reduce_cs(self, e: i64) -> u32 {
        e.rem_euclid(self.cs_order() as i64) as u32
    }

    /// `24 m^3 / d`, the order of the two-qubit group.
    pub fn two_qubit_order(self) -> u64 {
        24 * (self.0 as u64).pow(3) / self.d() as u64
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) fn check_qubits(n: usize) -> Result<(), GroupError> {
    if (1..=MAX_QUBITS).contains(&n) {
        Ok(())
    } else {
        Err(GroupError::InvalidQubitCount(n))
    }
}

pub(crate) fn check_index(qubit: usize, n: usize) -> Result<(), GroupError> {
    if qubit < n {
        Ok(())
    } else {
        Err(GroupError::QubitOutOfRange { qubit, n })
    }
}

/// Bit of qubit `q` in a basis index on `n` qubits.
#[inline]
pub(crate) fn qubit_bit(n: usize, q: usize) -> usize {
    1 << (n - 1 - q)
}
