//! Admissible lower bounds on the remaining makespan of a search node.
//!
//! Everything here works on the reduced target set: target `t` is an index
//! into [`HeuristicContext::targets`], and residual sets are bitsets over
//! those indices.

pub mod mtsp;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::grid::GridMap;
use crate::search::AgentState;
use crate::visibility::{bfs_dist_field, DistField, VisibilityIndex, UNREACHED};
use crate::weight::Weight;

pub use mtsp::{mtsp_solve, MtspError, MtspResult, MAX_MTSP_PIVOTS};

/// Priority of a node that can never reach a goal.
pub const DEAD: u64 = u64::MAX;

/// Precomputed per-target data shared read-only by every evaluation.
#[derive(Debug, Clone)]
pub struct HeuristicContext {
    targets: Vec<usize>,
    /// Free-cell id -> targets visible from it.
    los_targets: Vec<FixedBitSet>,
    watchers: Vec<FixedBitSet>,
    watcher_counts: Vec<usize>,
    /// Distance from every free cell to the nearest watcher of each target.
    fields: Vec<DistField>,
    /// `pivot_dist[i * n + j]`: closest approach between watchers of `i` and `j`.
    pivot_dist: Vec<u32>,
}

impl HeuristicContext {
    /// Builds the context for the target cells in `targets` (free-cell ids).
    pub fn new(map: &GridMap, index: &VisibilityIndex, targets: &FixedBitSet) -> Self {
        let targets: Vec<usize> = targets.ones().collect();
        let n = targets.len();
        let los_targets = (0..map.num_free())
            .into_par_iter()
            .map(|c| {
                let los = index.los(c);
                let mut seen = FixedBitSet::with_capacity(n);
                for (t, &cell) in targets.iter().enumerate() {
                    if los.contains(cell) {
                        seen.insert(t);
                    }
                }
                seen
            })
            .collect();
        let watchers: Vec<FixedBitSet> = targets.iter().map(|&t| index.watchers(t).clone()).collect();
        let watcher_counts = watchers.iter().map(|w| w.count_ones(..)).collect();
        let fields: Vec<DistField> = watchers.par_iter().map(|w| bfs_dist_field(map, w.ones())).collect();
        let pivot_dist = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let field = &fields[i];
                watchers.iter().map(move |w| field.min_over(w)).collect::<Vec<_>>()
            })
            .collect();
        HeuristicContext { targets, los_targets, watchers, watcher_counts, fields, pivot_dist }
    }

    pub fn num_targets(&self) -> usize {
        self.targets.len()
    }

    /// Free-cell id of target `t`.
    pub fn target_cell(&self, t: usize) -> usize {
        self.targets[t]
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    /// Targets visible from free cell `cell`.
    pub fn los_targets(&self, cell: usize) -> &FixedBitSet {
        &self.los_targets[cell]
    }

    pub fn watchers(&self, t: usize) -> &FixedBitSet {
        &self.watchers[t]
    }

    pub fn field(&self, t: usize) -> &DistField {
        &self.fields[t]
    }

    /// Lower bound on the travel between seeing `i` and seeing `j`.
    pub fn pivot_edge(&self, i: usize, j: usize) -> u32 {
        self.pivot_dist[i * self.targets.len() + j]
    }

    /// The full target set.
    pub fn all_targets(&self) -> FixedBitSet {
        let mut all = FixedBitSet::with_capacity(self.targets.len());
        all.insert_range(..);
        all
    }

    /// Removes from `residual` every target seen from `cell`.
    pub fn observe(&self, residual: &mut FixedBitSet, cell: usize) {
        residual.difference_with(&self.los_targets[cell]);
    }

    /// True iff `cell` sees something in `residual`.
    pub fn sees_any(&self, cell: usize, residual: &FixedBitSet) -> bool {
        !self.los_targets[cell].is_disjoint(residual)
    }
}

/// `max_k c_k` over all agents, terminated ones included.
pub fn makespan_so_far(agents: &[AgentState]) -> u32 {
    agents.iter().map(|a| a.cost).max().unwrap_or(0)
}

/// Singleton bound: every residual cell must still be seen by someone, so
/// the node cannot finish before the cheapest agent reaches a watcher of
/// the worst such cell. Returned in units of `1/w.den()`, never below the
/// scaled makespan so far, and [`DEAD`] when no live agent is left.
pub fn singleton_f(ctx: &HeuristicContext, agents: &[AgentState], residual: &FixedBitSet, w: Weight) -> u64 {
    let mut worst = w.scale(makespan_so_far(agents));
    for t in residual.ones() {
        let field = ctx.field(t);
        let best = agents
            .iter()
            .filter_map(|a| a.loc.map(|loc| (a.cost, field.get(loc))))
            .filter(|&(_, d)| d != UNREACHED)
            .map(|(c, d)| w.apply(c, d))
            .min();
        match best {
            Some(v) => worst = worst.max(v),
            None => return DEAD,
        }
    }
    worst
}

/// Greedy pivot choice: residual targets in ascending watcher count (ties
/// by cell order), each kept only if its watchers are disjoint from every
/// pivot kept so far. At most `cap` pivots.
pub fn select_pivots(ctx: &HeuristicContext, residual: &FixedBitSet, cap: usize) -> Vec<usize> {
    let mut candidates: Vec<usize> = residual.ones().collect();
    candidates.sort_by_key(|&t| (ctx.watcher_counts[t], t));
    let mut taken = FixedBitSet::with_capacity(ctx.watchers.first().map_or(0, |w| w.len()));
    let mut pivots = Vec::new();
    for t in candidates {
        if pivots.len() >= cap {
            break;
        }
        if ctx.watchers[t].is_disjoint(&taken) {
            taken.union_with(&ctx.watchers[t]);
            pivots.push(t);
        }
    }
    pivots
}

/// Agent and pivot vertices with underestimated travel costs between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GdlsGraph {
    /// Index of each agent vertex in the node's agent list.
    pub agents: Vec<usize>,
    pub agent_costs: Vec<u32>,
    /// Target index of each pivot vertex.
    pub pivots: Vec<usize>,
    /// `agent_edges[k][p]`
    pub agent_edges: Vec<Vec<u32>>,
    /// `pivot_edges[p][q]`, symmetric with a zero diagonal.
    pub pivot_edges: Vec<Vec<u32>>,
}

impl GdlsGraph {
    /// A graph given directly by its edge weights; agents and pivots are
    /// numbered in order.
    pub fn from_edges(agent_costs: Vec<u32>, agent_edges: Vec<Vec<u32>>, pivot_edges: Vec<Vec<u32>>) -> Self {
        GdlsGraph {
            agents: (0..agent_costs.len()).collect(),
            pivots: (0..pivot_edges.len()).collect(),
            agent_costs,
            agent_edges,
            pivot_edges,
        }
    }

    fn remove_pivot(&mut self, i: usize) {
        self.pivots.remove(i);
        for row in &mut self.agent_edges {
            row.remove(i);
        }
        self.pivot_edges.remove(i);
        for row in &mut self.pivot_edges {
            row.remove(i);
        }
    }
}

/// Builds G_DLS for the live agents of a node. Terminated agents get no
/// vertex.
pub fn build_gdls(ctx: &HeuristicContext, agents: &[AgentState], pivots: &[usize]) -> GdlsGraph {
    let mut g = GdlsGraph {
        agents: Vec::new(),
        agent_costs: Vec::new(),
        pivots: pivots.to_vec(),
        agent_edges: Vec::new(),
        pivot_edges: pivots.iter().map(|&p| pivots.iter().map(|&q| ctx.pivot_edge(p, q)).collect()).collect(),
    };
    for (k, a) in agents.iter().enumerate() {
        if let Some(loc) = a.loc {
            g.agents.push(k);
            g.agent_costs.push(a.cost);
            g.agent_edges.push(pivots.iter().map(|&p| ctx.field(p).get(loc)).collect());
        }
    }
    g
}

/// Repeatedly drops the pivot `p_i` with the largest positive shortcut
/// `e(a_k, p_j) - (e(a_k, p_i) + e(p_i, p_j))`; ties go to the lowest index.
pub fn pivot_prune(mut g: GdlsGraph) -> GdlsGraph {
    loop {
        let p = g.pivots.len();
        let mut best: Option<(i64, usize)> = None;
        for i in 0..p {
            for j in (0..p).filter(|&j| j != i) {
                for row in &g.agent_edges {
                    let s = row[j] as i64 - (row[i] as i64 + g.pivot_edges[i][j] as i64);
                    if s > 0 && best.is_none_or(|(b, _)| s > b) {
                        best = Some((s, i));
                    }
                }
            }
        }
        match best {
            Some((_, i)) => g.remove_pivot(i),
            None => return g,
        }
    }
}

/// Pathmax: a child's priority never drops below its parent's.
pub fn pathmax(child_f: u64, parent_f: u64) -> u64 {
    child_f.max(parent_f)
}

/// `max_k (g_k + w*h_k)` in units of `1/w.den()`.
pub fn minimax_priority(g: &[u32], h: &[u32], w: Weight) -> u64 {
    g.iter().zip(h).map(|(&g, &h)| w.apply(g, h)).max().unwrap_or(0)
}

/// Knobs for the mTSP bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MtspOptions {
    pub pivot_cap: usize,
    pub pivot_prune: bool,
    pub weight: Weight,
}

impl Default for MtspOptions {
    fn default() -> Self {
        MtspOptions { pivot_cap: 12, pivot_prune: true, weight: Weight::ONE }
    }
}

/// mTSP bound of a node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MtspEval {
    /// Scaled by `1/w.den()`; at least the scaled makespan so far.
    pub f: u64,
    /// Per node agent; zero for terminated agents.
    pub h: Vec<u32>,
    pub pivots: usize,
}

pub fn mtsp_f(ctx: &HeuristicContext, agents: &[AgentState], residual: &FixedBitSet, opts: MtspOptions) -> MtspEval {
    let w = opts.weight;
    let g = w.scale(makespan_so_far(agents));
    let mut h = vec![0; agents.len()];
    if residual.is_clear() {
        return MtspEval { f: g, h, pivots: 0 };
    }
    let cap = opts.pivot_cap.min(MAX_MTSP_PIVOTS);
    let pivots = select_pivots(ctx, residual, cap);
    let mut graph = build_gdls(ctx, agents, &pivots);
    if graph.agents.is_empty() {
        return MtspEval { f: DEAD, h, pivots: pivots.len() };
    }
    if opts.pivot_prune {
        graph = pivot_prune(graph);
    }
    let result = mtsp_solve(&graph, w).expect("pivot count is capped");
    for (slot, &k) in graph.agents.iter().enumerate() {
        h[k] = result.per_agent_h[slot];
    }
    let f = if result.f_value >= u64::MAX / 4 { DEAD } else { result.f_value.max(g) };
    MtspEval { f, h, pivots: graph.pivots.len() }
}
