//! Randomized-benchmarking sequences over the two-qubit group.
//!
//! A sequence is `length` uniformly sampled canonical forms followed by the
//! canonical form of the inverse of their product, so the whole sequence
//! evaluates to the identity. All randomness comes from one ChaCha8 stream
//! seeded with `seed_from_u64`, which is platform independent.

use crate::canon2::{classify, rng_from_seed, sample_with, CanonicalForm};
use crate::circuit::Circuit;
use crate::group::{GroupElement, Modulus};
use rand::Rng;
use std::fmt::Write;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RbSequence {
    m: Modulus,
    forms: Vec<CanonicalForm>,
    inverse: CanonicalForm,
}

impl RbSequence {
    /// Draws one sequence from `rng`. `length` must be at least 1.
    pub fn sample<R: Rng + ?Sized>(length: usize, m: Modulus, rng: &mut R) -> RbSequence {
        assert!(length >= 1, "sequence length must be positive");
        let forms: Vec<CanonicalForm> = (0..length).map(|_| sample_with(m, rng)).collect();
        let product = forms
            .iter()
            .fold(GroupElement::identity(2, m).expect("two qubits"), |acc, f| &f.to_element(m) * &acc);
        let inverse = classify(&product.inverse()).expect("inverse lies in the two-qubit group");
        RbSequence { m, forms, inverse }
    }

    pub fn modulus(&self) -> Modulus {
        self.m
    }

    /// Sampled forms in temporal order.
    pub fn forms(&self) -> &[CanonicalForm] {
        &self.forms
    }

    pub fn inverse(&self) -> &CanonicalForm {
        &self.inverse
    }

    /// The whole sequence as one circuit.
    pub fn circuit(&self) -> Circuit {
        let mut c = Circuit::new(2, self.m).expect("two qubits");
        for f in self.forms.iter().chain([&self.inverse]) {
            c = c.then(&f.to_circuit(self.m)).expect("same shape");
        }
        c
    }

    /// Circuit text with a comment before each element.
    pub fn to_text(&self) -> String {
        let mut out = format!("qubits 2\nm {}\n", self.m);
        for (i, f) in self.forms.iter().enumerate() {
            writeln!(out, "# element {} {}", i + 1, f.params()).unwrap();
            push_gates(&mut out, &f.to_circuit(self.m));
        }
        writeln!(out, "# inverse {}", self.inverse.params()).unwrap();
        push_gates(&mut out, &self.inverse.to_circuit(self.m));
        out
    }
}

fn push_gates(out: &mut String, c: &Circuit) {
    for g in c.gates() {
        writeln!(out, "{g}").unwrap();
    }
}

/// `count` sequences of the given length from a single seeded stream.
pub fn rb_sequences(length: usize, m: Modulus, seed: u64, count: usize) -> Vec<RbSequence> {
    let mut rng = rng_from_seed(seed);
    (0..count).map(|_| RbSequence::sample(length, m, &mut rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::parse;

    #[test]
    fn sequences_return_to_identity() {
        let m = Modulus::new(8).unwrap();
        for seq in rb_sequences(7, m, 11, 20) {
            assert!(seq.circuit().evaluate().is_identity());
            assert!(parse(&seq.to_text()).unwrap().evaluate().is_identity());
            let counts = seq.inverse().to_circuit(m).gate_counts();
            assert!(counts.cx <= 3 && counts.cs <= 1);
        }
    }

    #[test]
    fn same_seed_same_text() {
        let m = Modulus::new(3).unwrap();
        let a: Vec<String> = rb_sequences(5, m, 42, 4).iter().map(RbSequence::to_text).collect();
        let b: Vec<String> = rb_sequences(5, m, 42, 4).iter().map(RbSequence::to_text).collect();
        let c: Vec<String> = rb_sequences(5, m, 43, 4).iter().map(RbSequence::to_text).collect();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn text_layout() {
        let seq = rb_sequences(2, Modulus::new(4).unwrap(), 0, 1).remove(0);
        let text = seq.to_text();
        assert!(text.starts_with("qubits 2\nm 4\n# element 1 class="));
        assert!(text.contains("\n# element 2 class="));
        assert!(text.contains("\n# inverse class="));
    }
}
