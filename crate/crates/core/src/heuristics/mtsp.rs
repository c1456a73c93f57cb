//! Exact min-max multiple-TSP over a small abstract graph.
//!
//! Agents start at their own vertex, each pivot must be visited by exactly
//! one agent, and paths are open (no return). The objective is
//! `max_k (g_k + w * h_k)` where `h_k` is agent `k`'s path length.
//!
//! A Held-Karp style table over pivot subsets, shared by all agents, gives
//! every agent's open-path cost for every subset in `O(2^P * P^2 + K * 2^P * P)`.
//! A suffix DP over subset splits then distributes the pivots in
//! `O((K - 2) * 3^P)` plus two linear passes.

use thiserror::Error;

use super::GdlsGraph;
use crate::weight::Weight;

/// Hard ceiling on pivots; `3^16` splits is already tens of millions.
pub const MAX_MTSP_PIVOTS: usize = 16;

const INF: u64 = u64::MAX / 4;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MtspError {
    #[error("{0} pivots exceed the solver limit of {MAX_MTSP_PIVOTS}")]
    TooManyPivots(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MtspResult {
    /// `max_k (g_k + w*h_k)` in units of `1/w.den()`; plain moves when `w = 1`.
    pub f_value: u64,
    /// Path length of each graph agent under the returned assignment.
    pub per_agent_h: Vec<u32>,
    /// Pivot indices (into the graph's pivot list) in visiting order.
    pub assignment: Vec<Vec<usize>>,
}

fn add(a: u64, b: u64) -> u64 {
    a.saturating_add(b).min(INF)
}

/// Agent-independent open-path table: `q[S*P + s]` is the cheapest path
/// that starts at pivot `s` and visits every pivot of `S` (`s` in `S`).
/// An agent's cost for `S` is then `min_s first_leg[s] + q[S][s]`.
struct SpanTable {
    p: usize,
    edges: Vec<u64>,
    q: Vec<u64>,
}

impl SpanTable {
    fn build(pivot_edges: &[Vec<u32>]) -> Self {
        let p = pivot_edges.len();
        let edges: Vec<u64> = pivot_edges.iter().flat_map(|row| row.iter().map(|&e| e as u64)).collect();
        let subsets = 1usize << p;
        let mut q = vec![INF; subsets * p.max(1)];
        for set in 1..subsets {
            let mut starts = set;
            while starts != 0 {
                let s = starts.trailing_zeros() as usize;
                starts &= starts - 1;
                let rest = set & !(1 << s);
                let mut best = if rest == 0 { 0 } else { INF };
                let mut next = rest;
                while next != 0 {
                    let t = next.trailing_zeros() as usize;
                    next &= next - 1;
                    best = best.min(add(edges[s * p + t], q[rest * p + t]));
                }
                q[set * p + s] = best;
            }
        }
        SpanTable { p, edges, q }
    }

    /// `best[S]` for an agent whose legs to the pivots are `first_leg`.
    fn agent_costs(&self, first_leg: &[u32]) -> Vec<u64> {
        let p = self.p;
        let mut best = vec![INF; 1 << p];
        best[0] = 0;
        for (set, slot) in best.iter_mut().enumerate().skip(1) {
            let mut starts = set;
            while starts != 0 {
                let s = starts.trailing_zeros() as usize;
                starts &= starts - 1;
                *slot = (*slot).min(add(first_leg[s] as u64, self.q[set * p + s]));
            }
        }
        best
    }

    /// A visiting order of `set` realising the agent's cost.
    fn order(&self, set: usize, first_leg: &[u32]) -> Vec<usize> {
        let p = self.p;
        let mut order = Vec::new();
        if set == 0 {
            return order;
        }
        let mut at = (0..p)
            .filter(|&s| set & (1 << s) != 0)
            .min_by_key(|&s| add(first_leg[s] as u64, self.q[set * p + s]))
            .expect("non-empty set");
        let mut cur = set;
        loop {
            order.push(at);
            let rest = cur & !(1 << at);
            if rest == 0 {
                return order;
            }
            let target = self.q[cur * p + at];
            at = (0..p)
                .filter(|&t| rest & (1 << t) != 0)
                .find(|&t| add(self.edges[at * p + t], self.q[rest * p + t]) == target)
                .expect("consistent span table");
            cur = rest;
        }
    }
}

/// Solves the min-max mTSP on `graph` under weight `w`.
///
/// With no agents the value is 0 when there are no pivots and unbounded
/// otherwise. Ties between optimal assignments favour the smallest `h_1`,
/// then the smallest pivot mask, agent by agent.
pub fn mtsp_solve(graph: &GdlsGraph, w: Weight) -> Result<MtspResult, MtspError> {
    let p = graph.pivots.len();
    if p > MAX_MTSP_PIVOTS {
        return Err(MtspError::TooManyPivots(p));
    }
    let k = graph.agent_costs.len();
    let full = (1usize << p) - 1;
    if k == 0 {
        let f_value = if p == 0 { 0 } else { INF };
        return Ok(MtspResult { f_value, per_agent_h: vec![], assignment: vec![] });
    }

    let span = SpanTable::build(&graph.pivot_edges);
    let h_tables: Vec<Vec<u64>> = graph.agent_edges.iter().map(|legs| span.agent_costs(legs)).collect();
    let value = |a: usize, set: usize| -> u64 {
        let h = h_tables[a][set];
        if h >= INF {
            INF
        } else {
            add(w.scale(graph.agent_costs[a]), w.num() * h)
        }
    };
    let split = |a: usize, set: usize, next: &[u64]| -> u64 {
        let mut best = INF;
        let mut sub = set;
        loop {
            let rest = next[set & !sub];
            if rest < best {
                best = best.min(value(a, sub).max(rest));
            }
            if sub == 0 {
                return best;
            }
            sub = (sub - 1) & set;
        }
    };

    // suffix[a][S]: best makespan when agents a.. share exactly S. The last
    // agent takes all of S; agent 0 is only ever asked about the full set.
    let mut suffix = vec![Vec::new(); k + 1];
    suffix[k - 1] = (0..=full).map(|set| value(k - 1, set)).collect();
    for a in (1..k.saturating_sub(1)).rev() {
        suffix[a] = (0..=full).map(|set| split(a, set, &suffix[a + 1])).collect();
    }
    let f_value = if k == 1 { suffix[0][full] } else { split(0, full, &suffix[1]) };
    suffix[k] = vec![INF; full + 1];
    suffix[k][0] = 0;

    let mut per_agent_h = Vec::with_capacity(k);
    let mut assignment = Vec::with_capacity(k);
    let mut remaining = full;
    for a in 0..k {
        let mut pick: Option<(u64, usize)> = None;
        let mut sub = remaining;
        loop {
            if value(a, sub).max(suffix[a + 1][remaining & !sub]) <= f_value {
                let key = (h_tables[a][sub], sub);
                if pick.is_none_or(|best| key < best) {
                    pick = Some(key);
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & remaining;
        }
        let (h, set) = pick.unwrap_or((INF, remaining));
        per_agent_h.push(h.min(u32::MAX as u64) as u32);
        assignment.push(span.order(set, &graph.agent_edges[a]));
        remaining &= !set;
    }
    Ok(MtspResult { f_value, per_agent_h, assignment })
}
