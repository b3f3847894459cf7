//! Catalog of rewrite identities, stored as circuit templates, plus an
//! exhaustive checker and the single-qubit normalizer used in synthesis.
//!
//! Templates use the circuit grammar with symbolic operands: qubit roles `i`
//! and `j`, and exponents built from integers, `k` (ranging over `[0, m)`),
//! `m` and `m/2`, combined with `+` and `-`. Gate lists are temporal, so
//! each rule's `formula` (a matrix product) reads in the opposite order.

mod normalize;

pub use normalize::push_single_qubit_left;

use crate::circuit::{Circuit, Gate};
use crate::group::Modulus;
use serde::Serialize;
use std::sync::OnceLock;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role {
    I,
    J,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Atom {
    One,
    K,
    M,
    HalfM,
}

/// Signed sum of atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Expr(Vec<(i64, Atom)>);

impl Expr {
    fn parse(token: &str) -> Expr {
        let mut terms = Vec::new();
        let mut sign = 1;
        let mut current = String::new();
        let flush = |current: &mut String, sign: i64, terms: &mut Vec<(i64, Atom)>| {
            if current.is_empty() {
                return;
            }
            let term = match current.as_str() {
                "k" => (sign, Atom::K),
                "m" => (sign, Atom::M),
                "m/2" => (sign, Atom::HalfM),
                digits => (
                    sign * digits.parse::<i64>().unwrap_or_else(|_| panic!("bad template exponent {token}")),
                    Atom::One,
                ),
            };
            terms.push(term);
            current.clear();
        };
        for ch in token.chars() {
            match ch {
                '+' | '-' => {
                    flush(&mut current, sign, &mut terms);
                    sign = if ch == '-' { -1 } else { 1 };
                }
                c => current.push(c),
            }
        }
        flush(&mut current, sign, &mut terms);
        Expr(terms)
    }

    fn uses_k(&self) -> bool {
        self.0.iter().any(|&(_, a)| a == Atom::K)
    }

    fn uses_half_m(&self) -> bool {
        self.0.iter().any(|&(_, a)| a == Atom::HalfM)
    }

    fn eval(&self, k: i64, m: Modulus) -> i64 {
        let m = m.get() as i64;
        self.0
            .iter()
            .map(|&(c, a)| {
                c * match a {
                    Atom::One => 1,
                    Atom::K => k,
                    Atom::M => m,
                    Atom::HalfM => m / 2,
                }
            })
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum TemplateGate {
    X(Role),
    T(Role, Expr),
    Cx(Role, Role),
    Cs(Role, Role, Expr),
}

/// A parameterized temporal gate list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    source: String,
    gates: Vec<TemplateGate>,
}

impl Template {
    fn parse(source: &str) -> Template {
        let role = |w: &str| match w {
            "i" => Role::I,
            "j" => Role::J,
            other => panic!("bad template qubit role {other}"),
        };
        let gates = source
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|stmt| {
                let w: Vec<&str> = stmt.split_whitespace().collect();
                match w.as_slice() {
                    ["x", q] => TemplateGate::X(role(q)),
                    ["t", q, e] => TemplateGate::T(role(q), Expr::parse(e)),
                    ["cx", a, b] => TemplateGate::Cx(role(a), role(b)),
                    ["cs", a, b, e] => TemplateGate::Cs(role(a), role(b), Expr::parse(e)),
                    _ => panic!("bad template statement `{stmt}`"),
                }
            })
            .collect();
        Template { source: source.to_string(), gates }
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    fn exprs(&self) -> impl Iterator<Item = &Expr> {
        self.gates.iter().filter_map(|g| match g {
            TemplateGate::T(_, e) | TemplateGate::Cs(_, _, e) => Some(e),
            _ => None,
        })
    }

    fn uses_j(&self) -> bool {
        self.gates.iter().any(|g| match g {
            TemplateGate::X(r) | TemplateGate::T(r, _) => *r == Role::J,
            TemplateGate::Cx(..) | TemplateGate::Cs(..) => true,
        })
    }

    /// Concrete circuit for qubits `(i, j)` and parameter `k`.
    pub fn instantiate(&self, i: usize, j: usize, k: u32, n: usize, m: Modulus) -> Circuit {
        let q = |r: &Role| if *r == Role::I { i } else { j };
        let mut c = Circuit::new(n, m).expect("valid qubit count");
        for g in &self.gates {
            match g {
                TemplateGate::X(r) => c.push_unchecked(Gate::X(q(r))),
                TemplateGate::T(r, e) => c.push_unchecked(Gate::T {
                    qubit: q(r),
                    power: m.reduce_t(e.eval(k as i64, m)),
                }),
                TemplateGate::Cx(a, b) => c.push_unchecked(Gate::Cx { control: q(a), target: q(b) }),
                TemplateGate::Cs(a, b, e) => c.push_unchecked(Gate::Cs {
                    a: q(a),
                    b: q(b),
                    power: m.reduce_cs(e.eval(k as i64, m)),
                }),
            }
        }
        c
    }
}

/// Two circuit templates asserted to evaluate to the same group element.
#[derive(Clone, Debug)]
pub struct IdentityRule {
    pub name: &'static str,
    /// Matrix-product statement of the identity.
    pub formula: &'static str,
    pub lhs: Template,
    pub rhs: Template,
    /// Uses `Z = T^{m/2}`, which exists only for even `m`.
    pub even_m_only: bool,
}

impl IdentityRule {
    fn new(name: &'static str, formula: &'static str, lhs: &str, rhs: &str) -> Self {
        let lhs = Template::parse(lhs);
        let rhs = Template::parse(rhs);
        let even_m_only = lhs.exprs().chain(rhs.exprs()).any(Expr::uses_half_m);
        IdentityRule { name, formula, lhs, rhs, even_m_only }
    }

    pub fn uses_parameter(&self) -> bool {
        self.lhs.exprs().chain(self.rhs.exprs()).any(Expr::uses_k)
    }

    pub fn two_qubit(&self) -> bool {
        self.lhs.uses_j() || self.rhs.uses_j()
    }

    pub fn applies_to(&self, m: Modulus) -> bool {
        !self.even_m_only || m.is_even()
    }
}

/// Every rule, in a fixed order.
pub fn catalog() -> &'static [IdentityRule] {
    static RULES: OnceLock<Vec<IdentityRule>> = OnceLock::new();
    RULES.get_or_init(|| {
        let r = IdentityRule::new;
        vec![
            // Single-qubit dihedral relations.
            r("dihedral.tdg", "T^dg = T^(m-1)", "t i -1", "t i m-1"),
            r("dihedral.xtx", "X T X = T^dg", "x i; t i 1; x i", "t i -1"),
            r("dihedral.txt", "T X T = X", "t i 1; x i; t i 1", "x i"),
            r("dihedral.txtdg", "T X T^dg = S X", "t i -1; x i; t i 1", "x i; t i 2"),
            // CS as a CX/T product, both orderings.
            r("cs.def.left", "CS_ij = T_i T_j . CX_ij . T^dg_j . CX_ij", "cs i j 1",
              "cx i j; t j -1; cx i j; t i 1; t j 1"),
            r("cs.def.right", "CS_ij = CX_ij . T^dg_j . CX_ij . T_i T_j", "cs i j 1",
              "t i 1; t j 1; cx i j; t j -1; cx i j"),
            r("cs.cx.left", "CS_ij . CX_ij = T_i T_j . CX_ij . T^dg_j", "cx i j; cs i j 1",
              "t j -1; cx i j; t i 1; t j 1"),
            r("cs.cx.right", "CX_ij . CS_ij = T^dg_j . CX_ij . T_i T_j", "cs i j 1; cx i j",
              "t i 1; t j 1; cx i j; t j -1"),
            r("csdg.def.left", "CS^dg_ij = T^dg_i T^dg_j . CX_ij . T_j . CX_ij", "cs i j -1",
              "cx i j; t j 1; cx i j; t i -1; t j -1"),
            r("csdg.def.right", "CS^dg_ij = CX_ij . T_j . CX_ij . T^dg_i T^dg_j", "cs i j -1",
              "t i -1; t j -1; cx i j; t j 1; cx i j"),
            r("cs.sym", "CS_ji = CS_ij", "cs j i 1", "cs i j 1"),
            r("csdg.sym", "CS^dg_ji = CS^dg_ij", "cs j i -1", "cs i j -1"),
            // T powers commute with CS on either qubit.
            r("cs.t.target", "T^k_j . CS_ij = CS_ij . T^k_j", "cs i j 1; t j k", "t j k; cs i j 1"),
            r("cs.t.control", "T^k_i . CS_ij = CS_ij . T^k_i", "cs i j 1; t i k", "t i k; cs i j 1"),
            r("cs.t.both", "T^k_i T^k_j . CS_ij = CS_ij . T^k_i T^k_j", "cs i j 1; t i k; t j k",
              "t i k; t j k; cs i j 1"),
            // X conjugation of CS.
            r("cs.x.control", "X_i . CS_ij . X_i = CS^dg_ij . S_j", "x i; cs i j 1; x i", "t j 2; cs i j -1"),
            r("cs.x.control.comm", "X_i . CS_ij . X_i = S_j . CS^dg_ij", "x i; cs i j 1; x i", "cs i j -1; t j 2"),
            r("cs.x.target", "X_j . CS_ij . X_j = CS^dg_ij . S_i", "x j; cs i j 1; x j", "t i 2; cs i j -1"),
            r("cs.x.target.comm", "X_j . CS_ij . X_j = S_i . CS^dg_ij", "x j; cs i j 1; x j", "cs i j -1; t i 2"),
            r("cs.x.both", "X_i X_j . CS_ij . X_i X_j = CS_ij . S^dg_i S^dg_j",
              "x i; x j; cs i j 1; x i; x j", "t i -2; t j -2; cs i j 1"),
            r("cs.x.both.comm", "X_i X_j . CS_ij . X_i X_j = S^dg_i S^dg_j . CS_ij",
              "x i; x j; cs i j 1; x i; x j", "cs i j 1; t i -2; t j -2"),
            // CX relations.
            r("cx.x.target", "X_j . CX_ij = CX_ij . X_j", "cx i j; x j", "x j; cx i j"),
            r("cx.t.control", "T^k_i . CX_ij = CX_ij . T^k_i", "cx i j; t i k", "t i k; cx i j"),
            r("cx.x.control", "CX_ij . X_i . CX_ij = X_i X_j", "cx i j; x i; cx i j", "x i; x j"),
            r("cx.z", "CX_ij . Z_j . CX_ij = Z_i Z_j", "cx i j; t j m/2; cx i j", "t i m/2; t j m/2"),
            r("cxcx.t", "T_j . CX_ij . CX_ji = CX_ij . CX_ji . T_i", "cx j i; cx i j; t j 1",
              "t i 1; cx j i; cx i j"),
        ]
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleStatus {
    Pass,
    Fail,
    Skipped,
}

impl RuleStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RuleStatus::Pass => "pass",
            RuleStatus::Fail => "fail",
            RuleStatus::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub i: usize,
    pub j: usize,
    pub k: u32,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RuleOutcome {
    pub name: &'static str,
    pub status: RuleStatus,
    pub instances: usize,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub m: Modulus,
    pub n: usize,
    pub rules: Vec<RuleOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.rules.iter().all(|r| r.status != RuleStatus::Fail)
    }

    /// One `name status` line per rule.
    pub fn listing(&self) -> String {
        self.rules.iter().map(|r| format!("{} {}\n", r.name, r.status.as_str())).collect()
    }
}

pub fn verify_rule(rule: &IdentityRule, m: Modulus, n: usize) -> RuleOutcome {
    if !rule.applies_to(m) || (rule.two_qubit() && n < 2) {
        return RuleOutcome { name: rule.name, status: RuleStatus::Skipped, instances: 0, counterexample: None };
    }
    let pairs: Vec<(usize, usize)> = if rule.two_qubit() {
        (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect()
    } else {
        (0..n).map(|i| (i, i)).collect()
    };
    let ks = if rule.uses_parameter() { m.get() } else { 1 };
    let mut instances = 0;
    for &(i, j) in &pairs {
        for k in 0..ks {
            instances += 1;
            let lhs = rule.lhs.instantiate(i, j, k, n, m);
            let rhs = rule.rhs.instantiate(i, j, k, n, m);
            if lhs.evaluate() != rhs.evaluate() {
                return RuleOutcome {
                    name: rule.name,
                    status: RuleStatus::Fail,
                    instances,
                    counterexample: Some(Counterexample { i, j, k, lhs: lhs.inline(), rhs: rhs.inline() }),
                };
            }
        }
    }
    RuleOutcome { name: rule.name, status: RuleStatus::Pass, instances, counterexample: None }
}

/// Checks every rule over all qubit pairs of `n` qubits and every `k`.
pub fn verify_all(m: Modulus, n: usize) -> VerifyReport {
    let rules = catalog().iter().map(|rule| verify_rule(rule, m, n)).collect();
    VerifyReport { m, n, rules }
}
