//! Layered construction of the n-qubit group by minimal CX or CS count.
//!
//! Layer 0 is the product of single-qubit dihedral groups, `(2m)^n`
//! elements. In CX mode every element of minimal cost `r + 1` has the form
//! `T_j^l · CX_ij · U'` with `U'` of cost `r`, `i != j` and `l < m/d`; in CS
//! mode it is `CS_ij^{±1} · U'` with `i < j`. Each layer is generated from
//! the previous one only and deduplicated against everything seen so far,
//! so the layer index of an element is its minimal cost.
//!
//! Generation order is fixed (parents by canonical key, then `(i, j)`, then
//! the exponent) and the first candidate to produce an element becomes its
//! witness, so contents and witnesses are reproducible.

mod bounds;

pub use bounds::{BoundReport, BoundRow};

use crate::circuit::{Circuit, Gate};
use crate::group::{GroupElement, GroupError, Modulus};
use serde::Serialize;
use std::collections::{HashMap, HashSet};
use std::fmt;
use thiserror::Error;

pub const DEFAULT_BUDGET: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LayerError {
    #[error("element budget of {budget} exhausted while building layer {layer}")]
    BudgetExceeded { budget: usize, layer: usize },
    #[error("element not reached within {layers} layers; raise the depth cap")]
    NotCovered { layers: usize },
    #[error("element lies outside the CS-Dihedral subgroup")]
    OutsideCsSubgroup,
    #[error("element not generated by this layer set")]
    NotInGroup,
    #[error("operation needs {expected} mode, layer set is {actual} mode")]
    WrongMode { expected: CostMode, actual: CostMode },
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CostMode {
    Cx,
    Cs,
}

impl fmt::Display for CostMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CostMode::Cx => "cx",
            CostMode::Cs => "cs",
        })
    }
}

/// How an element was first produced.
#[derive(Clone, Copy, Debug)]
enum Origin {
    /// Mixed-radix index into the dihedral product, qubit 0 most significant.
    Seed(u64),
    Cx { parent: u32, control: u8, target: u8, power: u32 },
    Cs { parent: u32, a: u8, b: u8, power: u32 },
}

/// Per-qubit `(flip, t power)` of seed `index`.
impl Origin {
    fn with_parent(self, id: u32) -> Origin {
        match self {
            Origin::Cx { control, target, power, .. } => Origin::Cx { parent: id, control, target, power },
            Origin::Cs { a, b, power, .. } => Origin::Cs { parent: id, a, b, power },
            seed => seed,
        }
    }
}

fn decode_seed(index: u64, n: usize, m: Modulus) -> Vec<(bool, u32)> {
    let radix = 2 * m.get() as u64;
    let mut digits = vec![(false, 0); n];
    let mut rest = index;
    for q in (0..n).rev() {
        let d = rest % radix;
        rest /= radix;
        digits[q] = (d >= m.get() as u64, (d % m.get() as u64) as u32);
    }
    digits
}

fn seed_circuit(index: u64, n: usize, m: Modulus) -> Circuit {
    let mut c = Circuit::new(n, m).expect("valid n");
    for (q, (flip, power)) in decode_seed(index, n, m).into_iter().enumerate() {
        c.push_t(q, power as i64);
        if flip {
            c.push_unchecked(Gate::X(q));
        }
    }
    c
}

/// The `(2m)^n` products of single-qubit `X^f T^l`, in seed-index order.
pub fn seed_layer(n: usize, m: Modulus) -> Result<Vec<GroupElement>, GroupError> {
    GroupElement::identity(n, m)?;
    let count = (2 * m.get() as u64).pow(n as u32);
    Ok((0..count).map(|i| seed_circuit(i, n, m).evaluate()).collect())
}

/// Elements stratified by minimal CX (or CS) count.
pub struct LayerSet {
    mode: CostMode,
    n: usize,
    m: Modulus,
    budget: usize,
    elements: Vec<GroupElement>,
    origins: Vec<Origin>,
    depth_of: Vec<u32>,
    index: HashMap<GroupElement, u32>,
    layers: Vec<Vec<u32>>,
    candidates: Vec<u64>,
    closed: bool,
}

impl LayerSet {
    /// Layer 0 only.
    pub fn new(mode: CostMode, n: usize, m: Modulus, budget: usize) -> Result<Self, LayerError> {
        let seeds = seed_layer(n, m)?;
        if seeds.len() > budget {
            return Err(LayerError::BudgetExceeded { budget, layer: 0 });
        }
        let mut set = LayerSet {
            mode,
            n,
            m,
            budget,
            elements: Vec::with_capacity(seeds.len()),
            origins: Vec::with_capacity(seeds.len()),
            depth_of: Vec::with_capacity(seeds.len()),
            index: HashMap::with_capacity(seeds.len()),
            layers: Vec::new(),
            candidates: vec![seeds.len() as u64],
            closed: false,
        };
        let mut layer = Vec::with_capacity(seeds.len());
        for (i, u) in seeds.into_iter().enumerate() {
            if let Some(id) = set.insert(u, Origin::Seed(i as u64)) {
                layer.push(id);
            }
        }
        set.seal(layer);
        Ok(set)
    }

    /// Extends until `r_max` layers past the seed or until closure.
    pub fn build(mode: CostMode, n: usize, m: Modulus, r_max: usize, budget: usize) -> Result<Self, LayerError> {
        let mut set = LayerSet::new(mode, n, m, budget)?;
        while set.depth() < r_max && set.extend()? {}
        Ok(set)
    }

    pub fn mode(&self) -> CostMode {
        self.mode
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> Modulus {
        self.m
    }

    /// Index of the last nonempty layer.
    pub fn depth(&self) -> usize {
        self.layers.len() - 1
    }

    /// True once an extension produced nothing new.
    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn layer_sizes(&self) -> Vec<usize> {
        self.layers.iter().map(Vec::len).collect()
    }

    pub fn total(&self) -> usize {
        self.elements.len()
    }

    /// Candidates produced while generating each layer, duplicates included.
    pub fn candidates(&self) -> &[u64] {
        &self.candidates
    }

    /// Elements of layer `r`, sorted by canonical key.
    pub fn layer(&self, r: usize) -> impl Iterator<Item = &GroupElement> {
        self.layers[r].iter().map(move |&id| &self.elements[id as usize])
    }

    pub fn contains(&self, u: &GroupElement) -> bool {
        self.index.contains_key(u)
    }

    fn insert(&mut self, u: GroupElement, origin: Origin) -> Option<u32> {
        if self.index.contains_key(&u) {
            return None;
        }
        let id = self.elements.len() as u32;
        self.index.insert(u.clone(), id);
        self.elements.push(u);
        self.origins.push(origin);
        self.depth_of.push(self.layers.len() as u32);
        Some(id)
    }

    fn seal(&mut self, mut layer: Vec<u32>) {
        layer.sort_by_cached_key(|&id| self.elements[id as usize].canonical_key());
        self.layers.push(layer);
    }

    /// Adds the next layer in this set's mode; returns false at closure.
    pub fn extend(&mut self) -> Result<bool, LayerError> {
        match self.mode {
            CostMode::Cx => self.extend_cx(),
            CostMode::Cs => self.extend_cs(),
        }
    }

    pub fn extend_cx(&mut self) -> Result<bool, LayerError> {
        if self.mode != CostMode::Cx {
            return Err(LayerError::WrongMode { expected: CostMode::Cx, actual: self.mode });
        }
        let (n, m) = (self.n, self.m);
        let mut gadgets = Vec::new();
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                for l in 0..m.cs_order() {
                    let mut c = Circuit::new(n, m)?;
                    c.push(Gate::Cx { control: i, target: j })?;
                    c.push(Gate::T { qubit: j, power: l })?;
                    let origin = Origin::Cx { parent: 0, control: i as u8, target: j as u8, power: l };
                    gadgets.push((c.evaluate(), origin));
                }
            }
        }
        self.extend_with(&gadgets)
    }

    pub fn extend_cs(&mut self) -> Result<bool, LayerError> {
        if self.mode != CostMode::Cs {
            return Err(LayerError::WrongMode { expected: CostMode::Cs, actual: self.mode });
        }
        let (n, m) = (self.n, self.m);
        let mut gadgets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for e in [1i64, -1] {
                    let power = m.reduce_cs(e);
                    let u = GroupElement::controlled_s(i, j, power, n, m)?;
                    let origin = Origin::Cs { parent: 0, a: i as u8, b: j as u8, power };
                    gadgets.push((u, origin));
                }
            }
        }
        self.extend_with(&gadgets)
    }

    fn extend_with(&mut self, gadgets: &[(GroupElement, Origin)]) -> Result<bool, LayerError> {
        if self.closed {
            return Ok(false);
        }
        let parents = self.layers.last().expect("seed layer exists").clone();
        let mut layer = Vec::new();
        let mut candidates = 0u64;
        for &parent in &parents {
            for (gadget, origin) in gadgets {
                candidates += 1;
                let v = gadget * &self.elements[parent as usize];
                if !self.index.contains_key(&v) {
                    if self.elements.len() >= self.budget {
                        return Err(LayerError::BudgetExceeded { budget: self.budget, layer: self.layers.len() });
                    }
                    layer.extend(self.insert(v, origin.with_parent(parent)));
                }
            }
        }
        self.candidates.push(candidates);
        if layer.is_empty() {
            self.closed = true;
            return Ok(false);
        }
        self.seal(layer);
        Ok(true)
    }

    fn witness_of(&self, mut id: u32) -> Circuit {
        let mut steps = Vec::new();
        let seed = loop {
            match self.origins[id as usize] {
                Origin::Seed(index) => break index,
                Origin::Cx { parent, control, target, power } => {
                    steps.push(Gate::T { qubit: target as usize, power });
                    steps.push(Gate::Cx { control: control as usize, target: target as usize });
                    id = parent;
                }
                Origin::Cs { parent, a, b, power } => {
                    steps.push(Gate::Cs { a: a as usize, b: b as usize, power });
                    id = parent;
                }
            }
        };
        let mut c = seed_circuit(seed, self.n, self.m);
        for g in steps.into_iter().rev() {
            match g {
                Gate::T { qubit, power } => c.push_t(qubit, power as i64),
                Gate::Cs { a, b, power } => c.push_cs(a, b, power as i64),
                g => c.push_unchecked(g),
            }
        }
        c
    }

    /// Minimal cost of `u` and a circuit achieving it.
    pub fn min_cost(&self, u: &GroupElement) -> Result<(u32, Circuit), LayerError> {
        if u.n() != self.n || u.modulus() != self.m {
            return Err(GroupError::Mismatch(format!(
                "element on (n={}, m={}), layers on (n={}, m={})",
                u.n(),
                u.modulus(),
                self.n,
                self.m
            ))
            .into());
        }
        match self.index.get(u) {
            Some(&id) => Ok((self.depth_of[id as usize], self.witness_of(id))),
            None if !self.closed => Err(LayerError::NotCovered { layers: self.layers.len() }),
            None if self.mode == CostMode::Cs => Err(LayerError::OutsideCsSubgroup),
            None => Err(LayerError::NotInGroup),
        }
    }

    pub fn bound_report(&self) -> BoundReport {
        bounds::report(self)
    }
}

impl fmt::Debug for LayerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LayerSet")
            .field("mode", &self.mode)
            .field("n", &self.n)
            .field("m", &self.m.get())
            .field("layers", &self.layer_sizes())
            .field("closed", &self.closed)
            .finish()
    }
}

/// Breadth-first closure of `generators` from the identity.
pub fn closure(generators: &[GroupElement], budget: usize) -> Result<HashSet<GroupElement>, LayerError> {
    let first = generators.first().ok_or(GroupError::Mismatch("no generators".into()))?;
    let identity = GroupElement::identity(first.n(), first.modulus())?;
    let mut seen = HashSet::from([identity.clone()]);
    let mut queue = vec![identity];
    while let Some(u) = queue.pop() {
        for g in generators {
            let v = g.compose(&u)?;
            if !seen.contains(&v) {
                if seen.len() >= budget {
                    return Err(LayerError::BudgetExceeded { budget, layer: 0 });
                }
                seen.insert(v.clone());
                queue.push(v);
            }
        }
    }
    Ok(seen)
}
