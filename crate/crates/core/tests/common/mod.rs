//! Dense floating-point gate matrices built from Kronecker products, used
//! as an oracle independent of the group arithmetic.

#![allow(dead_code)]

use cnot_dihedral::{Circuit, Gate, GroupElement, Modulus};
use num_complex::Complex64 as C64;
use rand::Rng;
use std::f64::consts::PI;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

#[derive(Clone, Debug)]
pub struct Dense {
    pub dim: usize,
    pub a: Vec<C64>,
}

impl Dense {
    pub fn identity(dim: usize) -> Dense {
        let mut a = vec![ZERO; dim * dim];
        for i in 0..dim {
            a[i * dim + i] = ONE;
        }
        Dense { dim, a }
    }

    pub fn from_2x2(v: [C64; 4]) -> Dense {
        Dense { dim: 2, a: v.to_vec() }
    }

    pub fn at(&self, r: usize, c: usize) -> C64 {
        self.a[r * self.dim + c]
    }

    pub fn matmul(&self, o: &Dense) -> Dense {
        let d = self.dim;
        let mut a = vec![ZERO; d * d];
        for i in 0..d {
            for k in 0..d {
                let x = self.at(i, k);
                if x == ZERO {
                    continue;
                }
                for j in 0..d {
                    a[i * d + j] += x * o.at(k, j);
                }
            }
        }
        Dense { dim: d, a }
    }

    pub fn kron(&self, o: &Dense) -> Dense {
        let d = self.dim * o.dim;
        let mut a = vec![ZERO; d * d];
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..o.dim {
                    for l in 0..o.dim {
                        a[(i * o.dim + k) * d + j * o.dim + l] = self.at(i, j) * o.at(k, l);
                    }
                }
            }
        }
        Dense { dim: d, a }
    }

    pub fn plus(&self, o: &Dense) -> Dense {
        Dense { dim: self.dim, a: self.a.iter().zip(&o.a).map(|(&x, &y)| x + y).collect() }
    }
}

fn x2() -> Dense {
    Dense::from_2x2([ZERO, ONE, ONE, ZERO])
}

fn p0() -> Dense {
    Dense::from_2x2([ONE, ZERO, ZERO, ZERO])
}

fn p1() -> Dense {
    Dense::from_2x2([ZERO, ZERO, ZERO, ONE])
}

fn diag2(z: C64) -> Dense {
    Dense::from_2x2([ONE, ZERO, ZERO, z])
}

/// Kronecker product over qubits 0..n, qubit 0 leftmost.
fn embed(n: usize, factors: &[(usize, Dense)]) -> Dense {
    let mut out = Dense::identity(1);
    for q in 0..n {
        let f = factors.iter().find(|(p, _)| *p == q).map(|(_, d)| d.clone()).unwrap_or_else(|| Dense::identity(2));
        out = out.kron(&f);
    }
    out
}

/// `T = diag(1, e^{2πi/m})`, `CS = diag(1, 1, 1, e^{4πi/m})`.
pub fn gate_matrix(n: usize, m: Modulus, g: &Gate) -> Dense {
    let omega = |k: f64| C64::cis(2.0 * PI * k / m.get() as f64);
    match *g {
        Gate::X(q) => embed(n, &[(q, x2())]),
        Gate::T { qubit, power } => embed(n, &[(qubit, diag2(omega(power as f64)))]),
        Gate::Cx { control, target } => {
            embed(n, &[(control, p0())]).plus(&embed(n, &[(control, p1()), (target, x2())]))
        }
        Gate::Cs { a, b, power } => {
            let id = embed(n, &[]);
            let both = embed(n, &[(a, p1()), (b, p1())]);
            let shift = omega(2.0 * power as f64) + C64::new(-1.0, 0.0);
            let scaled = Dense { dim: both.dim, a: both.a.iter().map(|&z| z * shift).collect() };
            id.plus(&scaled)
        }
    }
}

/// Product of gate matrices, first gate rightmost.
pub fn circuit_matrix(c: &Circuit) -> Dense {
    let mut u = Dense::identity(1 << c.n());
    for g in c.gates() {
        u = gate_matrix(c.n(), c.modulus(), g).matmul(&u);
    }
    u
}

pub fn element_matrix(u: &GroupElement) -> Dense {
    let mono = u.to_unitary().unwrap();
    let m = u.modulus().get() as f64;
    let dim = mono.dim();
    let mut out = Dense { dim, a: vec![ZERO; dim * dim] };
    for (r, row) in mono.to_dense().into_iter().enumerate() {
        for (c, e) in row.into_iter().enumerate() {
            if let Some(e) = e {
                out.a[r * dim + c] = C64::cis(PI * e as f64 / m);
            }
        }
    }
    out
}

/// Exponent `k` (units of π/m) with `a = e^{iπk/m} b` entrywise within `tol`.
pub fn global_phase_between(a: &Dense, b: &Dense, m: Modulus, tol: f64) -> Option<u32> {
    (0..m.phase_modulus()).find(|&k| {
        let z = C64::cis(PI * k as f64 / m.get() as f64);
        a.a.iter().zip(&b.a).all(|(&x, &y)| (x - z * y).norm() <= tol)
    })
}

pub fn random_gate<R: Rng>(rng: &mut R, n: usize, m: Modulus) -> Gate {
    let kinds = if n == 1 { 2 } else { 4 };
    match rng.gen_range(0..kinds) {
        0 => Gate::X(rng.gen_range(0..n)),
        1 => Gate::T { qubit: rng.gen_range(0..n), power: rng.gen_range(0..m.get()) },
        k => {
            let a = rng.gen_range(0..n);
            let b = (a + rng.gen_range(1..n)) % n;
            if k == 2 {
                Gate::Cx { control: a, target: b }
            } else {
                Gate::Cs { a, b, power: rng.gen_range(0..m.cs_order()) }
            }
        }
    }
}

pub fn random_circuit<R: Rng>(rng: &mut R, n: usize, m: Modulus, max_len: usize) -> Circuit {
    let len = rng.gen_range(0..=max_len);
    Circuit::from_gates(n, m, (0..len).map(|_| random_gate(rng, n, m)).collect()).unwrap()
}
