use super::{CostMode, LayerSet};
use serde::Serialize;

/// Observed layer sizes against the counting bounds.
#[derive(Clone, Debug, Serialize)]
pub struct BoundRow {
    pub layer: usize,
    pub size: usize,
    /// Candidates generated for this layer, duplicates included.
    pub candidates: u64,
    /// Per-step factor times the previous layer size; absent for layer 0.
    pub step_bound: Option<u128>,
    /// `(2m)^n ((m/d)(n^2 - n))^r`, or `(2m)^n (n^2 - n)^r` in CS mode.
    pub closed_bound: u128,
    pub within: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub mode: CostMode,
    pub n: usize,
    pub m: u32,
    /// Candidates per parent.
    pub factor: u64,
    pub rows: Vec<BoundRow>,
    pub ok: bool,
}

pub(super) fn report(set: &LayerSet) -> BoundReport {
    let n = set.n as u64;
    let m = set.m;
    let pairs = n * n - n;
    let factor = match set.mode {
        CostMode::Cx => m.cs_order() as u64 * pairs,
        CostMode::Cs => pairs,
    };
    let seeds = (2 * m.get() as u128).saturating_pow(set.n as u32);
    let mut rows = Vec::new();
    let mut prev = None::<usize>;
    for (r, size) in set.layer_sizes().into_iter().enumerate() {
        let candidates = set.candidates[r];
        let step_bound = prev.map(|p| p as u128 * factor as u128);
        let closed_bound = seeds.saturating_mul((factor as u128).saturating_pow(r as u32));
        let within = size as u128 <= closed_bound
            && candidates as u128 <= closed_bound
            && step_bound.is_none_or(|b| size as u128 <= b && candidates as u128 == b);
        rows.push(BoundRow { layer: r, size, candidates, step_bound, closed_bound, within });
        prev = Some(size);
    }
    let ok = rows.iter().all(|r| r.within);
    BoundReport { mode: set.mode, n: set.n, m: m.get(), factor, rows, ok }
}
