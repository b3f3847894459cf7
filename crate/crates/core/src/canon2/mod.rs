//! Canonical forms of the two-qubit CNOT-Dihedral group.
//!
//! Every element has exactly one form in one of four classes, written as
//! matrix products with `D = X_0^x0 X_1^x1 · T_0^t0 T_1^t1`:
//!
//! | class      | form                                      | CX | CS |
//! |------------|-------------------------------------------|----|----|
//! | CS-Dihedral| `CS^e · D`                                | 0  | 1 if e≠0 |
//! | CX-like    | `D · CX_ij · T_j^e`                       | 1  | 0  |
//! | Double-CX  | `D · CX_ij · CX_ji · T_j^e`               | 2  | 0  |
//! | Triple-CX  | `D · CX_01 · CX_10 · T_1^e · CX_01`       | 3  | 0  |
//!
//! with `x0, x1 ∈ {0,1}`, `t0, t1 ∈ [0, m)`, `e ∈ [0, m/d)` and the
//! direction `(i, j)` either `(0, 1)` or `(1, 0)`. Class sizes are
//! `4, 8, 8, 4` times `m^3/d`.

mod costs;
mod sample;

pub use costs::{min_cx_costs, verify_class_costs, ClassCostReport, ClassCostRow};
pub use sample::{rng_from_seed, sample_uniform, sample_with};

use crate::circuit::{Circuit, Gate};
use crate::group::{GroupElement, Modulus};
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("canonical forms exist only for two qubits, got {0}")]
    NotTwoQubits(usize),
    #[error("element is not in the group generated by X, T and CX")]
    NotInGroup,
    #[error("form parameter out of range: {0}")]
    Range(String),
    #[error("modulus {0} and form modulus {1} disagree")]
    ModulusMismatch(Modulus, Modulus),
    #[error("lookup table capped at m <= {max}, got {0}", max = FormTable::MAX_MODULUS)]
    TableTooLarge(Modulus),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormClass {
    CsDihedral,
    CxLike,
    DoubleCx,
    TripleCx,
}

impl FormClass {
    pub const ALL: [FormClass; 4] =
        [FormClass::CsDihedral, FormClass::CxLike, FormClass::DoubleCx, FormClass::TripleCx];

    /// CX gates in the canonical circuit, which is the minimum possible.
    pub fn cx_cost(self) -> u32 {
        self as u32
    }

    pub fn has_direction(self) -> bool {
        matches!(self, FormClass::CxLike | FormClass::DoubleCx)
    }

    /// Multiplier of `m^3/d` in the class size.
    pub fn size_factor(self) -> u64 {
        match self {
            FormClass::CsDihedral | FormClass::TripleCx => 4,
            FormClass::CxLike | FormClass::DoubleCx => 8,
        }
    }

    pub fn size(self, m: Modulus) -> u64 {
        self.size_factor() * (m.get() as u64).pow(3) / m.d() as u64
    }

    pub fn name(self) -> &'static str {
        match self {
            FormClass::CsDihedral => "cs-dihedral",
            FormClass::CxLike => "cx-like",
            FormClass::DoubleCx => "double-cx",
            FormClass::TripleCx => "triple-cx",
        }
    }

    pub fn from_name(s: &str) -> Option<FormClass> {
        FormClass::ALL.into_iter().find(|c| c.name() == s)
    }
}

impl fmt::Display for FormClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Control and target of the first CX in a directed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Direction {
    #[serde(rename = "0->1")]
    ZeroOne,
    #[serde(rename = "1->0")]
    OneZero,
}

impl Direction {
    pub fn pair(self) -> (usize, usize) {
        match self {
            Direction::ZeroOne => (0, 1),
            Direction::OneZero => (1, 0),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalForm {
    pub class: FormClass,
    /// `Some` exactly for CX-like and Double-CX.
    pub direction: Option<Direction>,
    /// X on qubits 0 and 1.
    pub flip: [bool; 2],
    /// T powers on qubits 0 and 1, in `[0, m)`.
    pub tpow: [u32; 2],
    /// CS power (CS-Dihedral) or core T power, in `[0, m/d)`.
    pub exponent: u32,
}

impl CanonicalForm {
    pub fn new(
        m: Modulus,
        class: FormClass,
        direction: Option<Direction>,
        flip: [bool; 2],
        tpow: [u32; 2],
        exponent: u32,
    ) -> Result<Self, CanonError> {
        if class.has_direction() != direction.is_some() {
            return Err(CanonError::Range(format!("direction {direction:?} for {class}")));
        }
        if tpow.iter().any(|&t| t >= m.get()) {
            return Err(CanonError::Range(format!("t powers {tpow:?} with m = {m}")));
        }
        if exponent >= m.cs_order() {
            return Err(CanonError::Range(format!("exponent {exponent} with m/d = {}", m.cs_order())));
        }
        Ok(CanonicalForm { class, direction, flip, tpow, exponent })
    }

    pub fn identity() -> Self {
        CanonicalForm {
            class: FormClass::CsDihedral,
            direction: None,
            flip: [false; 2],
            tpow: [0; 2],
            exponent: 0,
        }
    }

    /// Parameters as `key=value` pairs, the `params` output format.
    pub fn params(&self) -> String {
        let dir = match self.direction {
            Some(Direction::ZeroOne) => " dir=0->1",
            Some(Direction::OneZero) => " dir=1->0",
            None => "",
        };
        format!(
            "class={}{} x0={} x1={} t0={} t1={} e={}",
            self.class, dir, self.flip[0] as u8, self.flip[1] as u8, self.tpow[0], self.tpow[1], self.exponent
        )
    }

    /// The temporal-order circuit whose product is this form.
    pub fn to_circuit(&self, m: Modulus) -> Circuit {
        let mut c = Circuit::new(2, m).expect("two qubits");
        let e = self.exponent as i64;
        let cx = |c: &mut Circuit, control, target| c.push_unchecked(Gate::Cx { control, target });
        match (self.class, self.direction.map(Direction::pair)) {
            (FormClass::CsDihedral, _) => {
                // CS^e · X · T: T first, CS last.
                emit_dihedral(&mut c, self);
                c.push_cs(0, 1, e);
                return c;
            }
            (FormClass::CxLike, Some((i, j))) => {
                c.push_t(j, e);
                cx(&mut c, i, j);
            }
            (FormClass::DoubleCx, Some((i, j))) => {
                c.push_t(j, e);
                cx(&mut c, j, i);
                cx(&mut c, i, j);
            }
            (FormClass::TripleCx, _) => {
                cx(&mut c, 0, 1);
                c.push_t(1, e);
                cx(&mut c, 1, 0);
                cx(&mut c, 0, 1);
            }
            _ => unreachable!("direction presence checked at construction"),
        }
        emit_dihedral(&mut c, self);
        c
    }

    pub fn to_element(&self, m: Modulus) -> GroupElement {
        self.to_circuit(m).evaluate()
    }
}

/// `X_0^x0 X_1^x1 · T_0^t0 T_1^t1` in temporal order: T gates, then X gates.
fn emit_dihedral(c: &mut Circuit, form: &CanonicalForm) {
    c.push_t(0, form.tpow[0] as i64);
    c.push_t(1, form.tpow[1] as i64);
    for q in 0..2 {
        if form.flip[q] {
            c.push_unchecked(Gate::X(q));
        }
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.params())
    }
}

/// Number of forms, `24 m^3 / d`.
pub fn form_count(m: Modulus) -> u64 {
    m.two_qubit_order()
}

/// Forms per (class, direction) block: `4 m^2 · m/d`.
fn block_size(m: Modulus) -> u64 {
    4 * (m.get() as u64).pow(2) * m.cs_order() as u64
}

/// Ordered (class, direction) blocks.
const BLOCKS: [(FormClass, Option<Direction>); 6] = [
    (FormClass::CsDihedral, None),
    (FormClass::CxLike, Some(Direction::ZeroOne)),
    (FormClass::CxLike, Some(Direction::OneZero)),
    (FormClass::DoubleCx, Some(Direction::ZeroOne)),
    (FormClass::DoubleCx, Some(Direction::OneZero)),
    (FormClass::TripleCx, None),
];

/// Position of `form` in [`enumerate_forms`] order.
pub fn form_index(m: Modulus, form: &CanonicalForm) -> u64 {
    let block = BLOCKS.iter().position(|&b| b == (form.class, form.direction)).expect("valid form") as u64;
    let (mm, order) = (m.get() as u64, m.cs_order() as u64);
    let within = (((form.flip[0] as u64 * 2 + form.flip[1] as u64) * mm + form.tpow[0] as u64) * mm
        + form.tpow[1] as u64)
        * order
        + form.exponent as u64;
    block * block_size(m) + within
}

/// Inverse of [`form_index`]; `index < form_count(m)`.
pub fn form_from_index(m: Modulus, index: u64) -> CanonicalForm {
    assert!(index < form_count(m), "form index {index} out of range");
    let (mm, order) = (m.get() as u64, m.cs_order() as u64);
    let (class, direction) = BLOCKS[(index / block_size(m)) as usize];
    let mut rest = index % block_size(m);
    let exponent = (rest % order) as u32;
    rest /= order;
    let t1 = (rest % mm) as u32;
    rest /= mm;
    let t0 = (rest % mm) as u32;
    rest /= mm;
    CanonicalForm {
        class,
        direction,
        flip: [rest / 2 == 1, rest % 2 == 1],
        tpow: [t0, t1],
        exponent,
    }
}

/// All forms ordered by class, then direction (`0->1` first), then
/// `(x0, x1, t0, t1, e)` lexicographically.
pub fn enumerate_forms(m: Modulus) -> impl Iterator<Item = CanonicalForm> {
    (0..form_count(m)).map(move |i| form_from_index(m, i))
}

/// Solves `2 e = r (mod m)` for `e` in `[0, m/d)`.
fn halve(r: i64, m: Modulus) -> Option<u32> {
    let mm = m.get() as i64;
    let r = r.rem_euclid(mm);
    if m.is_even() {
        (r % 2 == 0).then(|| ((r / 2) % (mm / 2)) as u32)
    } else {
        Some((r * ((mm + 1) / 2)).rem_euclid(mm) as u32)
    }
}

/// Finds the canonical form of a two-qubit element.
///
/// The linear part picks the class and direction (the six invertible 2x2
/// matrices over F2 correspond one-to-one to the six blocks). Writing
/// `h(x) = p(x)/2 mod m` at `x = 01, 10, 11`, each block's phase table is
/// linear in `(t0, t1, e)`; e.g. for CX-like `0->1`,
/// `h = (e + t1, t0 + t1, e + t0)`. Those systems are solved directly and
/// the result is checked by rebuilding the element.
pub fn classify(u: &GroupElement) -> Result<CanonicalForm, CanonError> {
    if u.n() != 2 {
        return Err(CanonError::NotTwoQubits(u.n()));
    }
    let m = u.modulus();
    let map = u.map();
    // Images of |10> and |01> under the linear part.
    let cols = (map.apply_linear(0b10), map.apply_linear(0b01));
    let (class, direction) = match cols {
        (0b10, 0b01) => (FormClass::CsDihedral, None),
        (0b11, 0b01) => (FormClass::CxLike, Some(Direction::ZeroOne)),
        (0b10, 0b11) => (FormClass::CxLike, Some(Direction::OneZero)),
        (0b11, 0b10) => (FormClass::DoubleCx, Some(Direction::ZeroOne)),
        (0b01, 0b11) => (FormClass::DoubleCx, Some(Direction::OneZero)),
        (0b01, 0b10) => (FormClass::TripleCx, None),
        _ => return Err(CanonError::NotInGroup),
    };
    let shift = map.shift() as usize;
    let flip = [shift & 0b10 != 0, shift & 0b01 != 0];
    if class == FormClass::CsDihedral {
        return classify_diagonal(u, flip);
    }
    let p = u.phases().values();
    if p.iter().any(|v| v % 2 != 0) {
        return Err(CanonError::NotInGroup);
    }
    let h = |x: usize| (p[x] / 2) as i64;
    let (h01, h10, h11) = (h(0b01), h(0b10), h(0b11));
    // (2e residue, t0 + e, t1 + e)
    let (twice_e, b0, b1) = match (class, direction) {
        (FormClass::CxLike, Some(Direction::ZeroOne)) => (h01 + h11 - h10, h11, h01),
        (FormClass::CxLike, _) => (h10 + h11 - h01, h10, h11),
        (FormClass::DoubleCx, Some(Direction::ZeroOne)) => (h01 + h11 - h10, h01, h11),
        (FormClass::DoubleCx, _) => (h10 + h11 - h01, h11, h10),
        _ => (h01 + h10 - h11, h01, h10),
    };
    let exponent = halve(twice_e, m).ok_or(CanonError::NotInGroup)?;
    let e = exponent as i64;
    let mm = m.get() as i64;
    let form = CanonicalForm {
        class,
        direction,
        flip,
        tpow: [(b0 - e).rem_euclid(mm) as u32, (b1 - e).rem_euclid(mm) as u32],
        exponent,
    };
    if form.to_element(m) != *u {
        return Err(CanonError::NotInGroup);
    }
    Ok(form)
}

/// CS-Dihedral case. `U · X^flip = CS^e · T_0^(±t0) T_1^(±t1)` is
/// diagonal, the sign being negative on flipped qubits.
fn classify_diagonal(u: &GroupElement, flip: [bool; 2]) -> Result<CanonicalForm, CanonError> {
    let m = u.modulus();
    let mut flips = Circuit::new(2, m).expect("two qubits");
    for (q, &f) in flip.iter().enumerate() {
        if f {
            flips.push_unchecked(Gate::X(q));
        }
    }
    let w = u * &flips.evaluate();
    let p = w.phases().values();
    if p.iter().any(|v| v % 2 != 0) {
        return Err(CanonError::NotInGroup);
    }
    let mm = m.get() as i64;
    let h = |x: usize| (p[x] / 2) as i64;
    let exponent = halve(h(0b11) - h(0b10) - h(0b01), m).ok_or(CanonError::NotInGroup)?;
    let sign = |f: bool| if f { -1 } else { 1 };
    let form = CanonicalForm {
        class: FormClass::CsDihedral,
        direction: None,
        flip,
        tpow: [
            (sign(flip[0]) * h(0b10)).rem_euclid(mm) as u32,
            (sign(flip[1]) * h(0b01)).rem_euclid(mm) as u32,
        ],
        exponent,
    };
    if form.to_element(m) != *u {
        return Err(CanonError::NotInGroup);
    }
    Ok(form)
}

/// Exhaustive element-to-form map, an oracle for [`classify`].
pub struct FormTable {
    m: Modulus,
    forms: HashMap<GroupElement, CanonicalForm>,
}

impl FormTable {
    /// `24 * 64^3 / 2` is about 3.1M entries.
    pub const MAX_MODULUS: u32 = 64;

    pub fn build(m: Modulus) -> Result<Self, CanonError> {
        if m.get() > Self::MAX_MODULUS {
            return Err(CanonError::TableTooLarge(m));
        }
        let forms = enumerate_forms(m).map(|f| (f.to_element(m), f)).collect();
        Ok(FormTable { m, forms })
    }

    pub fn modulus(&self) -> Modulus {
        self.m
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn get(&self, u: &GroupElement) -> Option<CanonicalForm> {
        self.forms.get(u).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::parse;
    use std::collections::HashSet;

    fn m(v: u32) -> Modulus {
        Modulus::new(v).unwrap()
    }

    #[test]
    fn class_totals() {
        for (md, expected) in [(8, [1024, 2048, 2048, 1024]), (3, [108, 216, 216, 108])] {
            let mut counts = [0u64; 4];
            for f in enumerate_forms(m(md)) {
                counts[f.class as usize] += 1;
            }
            assert_eq!(counts, expected);
            for class in FormClass::ALL {
                assert_eq!(class.size(m(md)), expected[class as usize]);
            }
        }
        assert_eq!(enumerate_forms(m(2)).count(), 96);
    }

    #[test]
    fn index_round_trip() {
        let md = m(4);
        for (i, f) in enumerate_forms(md).enumerate() {
            assert_eq!(form_index(md, &f), i as u64);
        }
    }

    #[test]
    fn trivial_forms() {
        let md = m(8);
        assert!(CanonicalForm::identity().to_circuit(md).is_empty());
        let triple = CanonicalForm::new(md, FormClass::TripleCx, None, [false; 2], [0; 2], 0).unwrap();
        assert_eq!(triple.to_circuit(md).inline(), "cx 0 1; cx 1 0; cx 0 1");
        let cx = CanonicalForm::new(md, FormClass::CxLike, Some(Direction::ZeroOne), [false; 2], [0; 2], 0).unwrap();
        assert_eq!(cx.to_circuit(md).inline(), "cx 0 1");
    }

    #[test]
    fn swap_is_triple() {
        let md = m(8);
        let swap = parse("qubits 2\nm 8\ncx 0 1\ncx 1 0\ncx 0 1\n").unwrap().evaluate();
        // SWAP exchanges |01> and |10> with no phase.
        assert_eq!(swap.map().apply(0b01), 0b10);
        assert!(swap.phases().values().iter().all(|&v| v == 0));
        let f = classify(&swap).unwrap();
        assert_eq!(f.class, FormClass::TripleCx);
        assert_eq!((f.flip, f.tpow, f.exponent), ([false; 2], [0; 2], 0));
        let _ = md;
    }

    #[test]
    fn classify_examples() {
        let id = GroupElement::identity(2, m(8)).unwrap();
        assert_eq!(classify(&id).unwrap(), CanonicalForm::identity());
        let cs = parse("qubits 2\nm 8\ncs 0 1 1\n").unwrap().evaluate();
        let f = classify(&cs).unwrap();
        assert_eq!((f.class, f.exponent, f.tpow, f.flip), (FormClass::CsDihedral, 1, [0; 2], [false; 2]));
    }

    #[test]
    fn classify_rejects_other_sizes() {
        let u = GroupElement::identity(3, m(8)).unwrap();
        assert_eq!(classify(&u), Err(CanonError::NotTwoQubits(3)));
    }

    #[test]
    fn round_trip_and_distinctness() {
        for md in [2, 3, 4, 8] {
            let md = m(md);
            let table = FormTable::build(md).unwrap();
            assert_eq!(table.len() as u64, form_count(md));
            for f in enumerate_forms(md) {
                let u = f.to_element(md);
                assert_eq!(classify(&u).unwrap(), f);
                assert_eq!(table.get(&u), Some(f));
                let counts = f.to_circuit(md).gate_counts();
                assert_eq!(counts.cx as u32, f.class.cx_cost());
                assert_eq!(counts.cs, (f.class == FormClass::CsDihedral && f.exponent != 0) as usize);
            }
        }
    }

    #[test]
    fn cs_dihedral_is_a_subgroup() {
        let md = m(4);
        let elems: Vec<GroupElement> = enumerate_forms(md)
            .filter(|f| f.class == FormClass::CsDihedral)
            .map(|f| f.to_element(md))
            .collect();
        let set: HashSet<&GroupElement> = elems.iter().collect();
        for a in &elems {
            for b in &elems {
                assert!(set.contains(&(a * b)));
            }
        }
    }

    #[test]
    fn cs_order() {
        for md in [2, 3, 4, 8, 12] {
            let md = m(md);
            let order = md.cs_order();
            let mut acc = GroupElement::identity(2, md).unwrap();
            let cs = GroupElement::controlled_s(0, 1, 1 % order, 2, md).unwrap();
            for power in 1..=order {
                acc = &cs * &acc;
                assert_eq!(acc.is_identity(), power == order, "m={md} power={power}");
            }
        }
    }

    #[test]
    fn table_cap() {
        assert!(matches!(FormTable::build(m(65)), Err(CanonError::TableTooLarge(_))));
    }

    #[test]
    fn out_of_range_forms() {
        let md = m(8);
        assert!(CanonicalForm::new(md, FormClass::CxLike, None, [false; 2], [0; 2], 0).is_err());
        assert!(CanonicalForm::new(md, FormClass::TripleCx, None, [false; 2], [8, 0], 0).is_err());
        assert!(CanonicalForm::new(md, FormClass::TripleCx, None, [false; 2], [0, 0], 4).is_err());
    }
}
