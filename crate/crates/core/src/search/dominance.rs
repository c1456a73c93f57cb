use std::collections::HashMap;

use fixedbitset::FixedBitSet;

/// Outcome of offering a node to the store.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// An equal or better record exists.
    Prune,
    /// Stored; the listed node ids were dominated by the newcomer and dropped.
    Keep(Vec<usize>),
}

#[derive(Debug, Clone)]
struct Record {
    residual: FixedBitSet,
    costs: Vec<u32>,
    node: usize,
}

/// Node dominance over identical location tuples: `n` dominates `n'` when
/// `R(n) ⊆ R(n')` and every cost of `n` is at most the matching cost of `n'`.
#[derive(Debug, Default)]
pub struct DominanceStore {
    records: HashMap<Vec<Option<usize>>, Vec<Record>>,
}

fn covers(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl DominanceStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn check(&mut self, locations: Vec<Option<usize>>, residual: &FixedBitSet, costs: &[u32], node: usize) -> Verdict {
        let bucket = self.records.entry(locations).or_default();
        if bucket.iter().any(|r| r.residual.is_subset(residual) && covers(&r.costs, costs)) {
            return Verdict::Prune;
        }
        let mut dropped = Vec::new();
        bucket.retain(|r| {
            let beaten = residual.is_subset(&r.residual) && covers(costs, &r.costs);
            if beaten {
                dropped.push(r.node);
            }
            !beaten
        });
        bucket.push(Record { residual: residual.clone(), costs: costs.to_vec(), node });
        Verdict::Keep(dropped)
    }

    pub fn len(&self) -> usize {
        self.records.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
