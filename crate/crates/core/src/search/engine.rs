use std::cmp::Reverse;
use std::collections::{BTreeSet, VecDeque};
use std::time::Instant;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use super::dominance::{DominanceStore, Verdict};
use super::node::{AgentState, SearchNode, Stage};
use super::{Algorithm, SearchStats, SolveError, SolverConfig, TracePoint};
use crate::grid::GridMap;
use crate::heuristics::{mtsp_f, pathmax, singleton_f, HeuristicContext, MtspEval, MtspOptions, DEAD};
use crate::visibility::{bfs_dist_field, UNREACHED};
use crate::weight::Weight;

/// OPEN order: lower f, then higher g, then most recent.
type OpenKey = (u64, Reverse<u32>, Reverse<u64>, usize);

/// Incumbent pruning: drop `n` when `max(f(n)/w, g(n)) >= bound`, with
/// `f` given in units of `1/w.den()`.
pub fn prune_anytime(f: u64, g: u32, w: Weight, bound: Option<u32>) -> bool {
    match bound {
        None => false,
        Some(b) => g >= b || f >= w.num().saturating_mul(b as u64),
    }
}

pub(super) struct Outcome {
    pub jumps: Vec<Vec<usize>>,
    pub costs: Vec<u32>,
    pub proved_optimal: bool,
    pub timed_out: bool,
    pub trace: Vec<TracePoint>,
    pub stats: SearchStats,
}

enum Step {
    Continue,
    Done { proved: bool },
}

pub(super) struct Engine<'a> {
    map: &'a GridMap,
    ctx: &'a HeuristicContext,
    cfg: &'a SolverConfig,
    /// Weight inside priorities: `w` for MxW*, one otherwise.
    eval_w: Weight,
    mtsp: MtspOptions,
    nodes: Vec<SearchNode>,
    open: BTreeSet<OpenKey>,
    /// Focal only: OPEN entries still at the singleton stage.
    singles: BTreeSet<OpenKey>,
    focal: BTreeSet<(u64, OpenKey)>,
    /// Focal only: every evaluated OPEN node with `f` up to this is in FOCAL.
    focal_bound: u64,
    dominance: DominanceStore,
    seq: u64,
    stats: SearchStats,
    incumbent: Option<(usize, u32)>,
    trace: Vec<TracePoint>,
    clock: Instant,
}

impl<'a> Engine<'a> {
    pub fn new(map: &'a GridMap, ctx: &'a HeuristicContext, cfg: &'a SolverConfig, clock: Instant) -> Self {
        let eval_w = if cfg.algorithm.is_weighted() { cfg.weight } else { Weight::ONE };
        Engine {
            map,
            ctx,
            cfg,
            eval_w,
            mtsp: MtspOptions { pivot_cap: cfg.pivot_cap, pivot_prune: cfg.enable_pivot_prune, weight: eval_w },
            nodes: Vec::new(),
            open: BTreeSet::new(),
            singles: BTreeSet::new(),
            focal: BTreeSet::new(),
            focal_bound: 0,
            dominance: DominanceStore::new(),
            seq: 0,
            stats: SearchStats::default(),
            incumbent: None,
            trace: Vec::new(),
            clock,
        }
    }

    fn plain(&self) -> bool {
        !self.cfg.algorithm.is_weighted()
    }

    fn bound(&self) -> Option<u32> {
        self.incumbent.map(|(_, c)| c)
    }

    fn key(&self, id: usize) -> OpenKey {
        let n = &self.nodes[id];
        (n.f, Reverse(n.g()), Reverse(n.seq), id)
    }

    fn focal_h(&self, id: usize) -> u64 {
        let h = self.nodes[id].mtsp_h.as_deref().unwrap_or(&[]);
        match self.cfg.algorithm {
            Algorithm::FocalMorc => h.iter().copied().max().unwrap_or(0) as u64,
            _ => h.iter().map(|&x| x as u64).sum(),
        }
    }

    fn insert_open(&mut self, id: usize) {
        let key = self.key(id);
        self.open.insert(key);
        if self.cfg.algorithm.is_focal() {
            match self.nodes[id].stage {
                Stage::Singleton => {
                    self.singles.insert(key);
                }
                _ if key.0 <= self.focal_bound => {
                    self.focal.insert((self.focal_h(id), key));
                }
                _ => {}
            }
        }
    }

    fn remove_open(&mut self, id: usize) {
        let key = self.key(id);
        if self.open.remove(&key) && self.cfg.algorithm.is_focal() {
            self.singles.remove(&key);
            self.focal.remove(&(self.focal_h(id), key));
        }
    }

    fn timed_out(&self) -> bool {
        self.cfg.time_limit.is_some_and(|limit| self.clock.elapsed() >= limit)
    }

    pub fn run(mut self, starts: &[usize]) -> Result<Outcome, SolveError> {
        let agents: Vec<AgentState> = starts.iter().map(|&s| AgentState::at(s, 0)).collect();
        let mut residual = self.ctx.all_targets();
        for &s in starts {
            self.ctx.observe(&mut residual, s);
        }
        let mut root = SearchNode {
            agents,
            residual,
            f: 0,
            stage: Stage::Singleton,
            parent: None,
            mtsp_h: None,
            seq: 0,
            dominated: false,
        };
        if root.is_goal() {
            root.stage = Stage::Mtsp;
            root.mtsp_h = Some(vec![0; root.agents.len()]);
        } else {
            root.f = singleton_f(self.ctx, &root.agents, &root.residual, self.eval_w);
            if root.f == DEAD {
                return Err(SolveError::Unsolvable);
            }
        }
        if self.cfg.enable_dominance {
            self.dominance.check(root.locations(), &root.residual, &root.costs(), 0);
        }
        self.nodes.push(root);
        self.insert_open(0);

        let mut timed_out = false;
        let proved = loop {
            if self.timed_out() {
                timed_out = true;
                break false;
            }
            let step = if self.cfg.algorithm.is_focal() { self.focal_step() } else { self.best_first_step() };
            if let Step::Done { proved } = step {
                break proved;
            }
        };

        let Some((goal, _)) = self.incumbent else {
            return Err(if timed_out { SolveError::Timeout } else { SolveError::Unsolvable });
        };
        let proved_optimal = !timed_out
            && (proved || matches!(self.cfg.algorithm, Algorithm::Baseline | Algorithm::Cp3) || self.cfg.weight.is_one());
        let (jumps, costs) = self.jump_points(goal);
        Ok(Outcome { jumps, costs, proved_optimal, timed_out, trace: self.trace, stats: self.stats })
    }

    /// Records a popped goal. Returns true when the search should stop.
    fn accept_goal(&mut self, id: usize) -> bool {
        let cost = self.nodes[id].g();
        if self.bound().is_some_and(|b| cost >= b) {
            return false;
        }
        self.incumbent = Some((id, cost));
        self.trace.push(TracePoint { t_ms: self.clock.elapsed().as_secs_f64() * 1e3, cost });
        if !self.cfg.anytime {
            return true;
        }
        // drop everything the new bound rules out
        let doomed: Vec<usize> = self
            .open
            .iter()
            .map(|k| k.3)
            .filter(|&n| prune_anytime(self.nodes[n].f, self.nodes[n].g(), self.eval_w, Some(cost)))
            .collect();
        for n in doomed {
            self.remove_open(n);
        }
        false
    }

    fn best_first_step(&mut self) -> Step {
        let Some(key) = self.open.pop_first() else {
            return Step::Done { proved: true };
        };
        let id = key.3;
        let node = &self.nodes[id];
        if prune_anytime(node.f, node.g(), self.eval_w, self.bound()) {
            return Step::Continue;
        }
        match node.stage {
            Stage::Singleton => {
                let mut batch = vec![id];
                batch.extend(
                    self.open
                        .iter()
                        .take(self.cfg.batch_size.saturating_sub(1))
                        .map(|k| k.3)
                        .filter(|&n| self.nodes[n].stage == Stage::Singleton),
                );
                for &n in &batch[1..] {
                    self.remove_open(n);
                }
                self.evaluate(&batch);
                Step::Continue
            }
            _ if node.is_goal() => {
                if self.accept_goal(id) {
                    Step::Done { proved: false }
                } else {
                    Step::Continue
                }
            }
            _ => {
                self.expand(id);
                Step::Continue
            }
        }
    }

    fn focal_step(&mut self) -> Step {
        let w = self.cfg.weight;
        loop {
            let Some(&(f_min, ..)) = self.open.first() else {
                return Step::Done { proved: true };
            };
            if self.bound().is_some_and(|b| f_min >= b as u64) {
                return Step::Done { proved: true };
            }
            let limit = w.bound(f_min);
            let pending: Vec<usize> = self.singles.iter().take_while(|k| k.0 <= limit).map(|k| k.3).collect();
            if pending.is_empty() {
                // admit newly eligible evaluated nodes
                if limit > self.focal_bound {
                    let fresh: Vec<usize> = self
                        .open
                        .range((self.focal_bound + 1, Reverse(u32::MAX), Reverse(u64::MAX), 0)..)
                        .take_while(|k| k.0 <= limit)
                        .map(|k| k.3)
                        .filter(|&n| self.nodes[n].stage != Stage::Singleton)
                        .collect();
                    for n in fresh {
                        let key = self.key(n);
                        self.focal.insert((self.focal_h(n), key));
                    }
                    self.focal_bound = limit;
                }
                break;
            }
            for chunk in pending.chunks(self.cfg.batch_size.max(1)) {
                for &n in chunk {
                    self.remove_open(n);
                }
                self.evaluate(chunk);
                if self.timed_out() {
                    return Step::Continue;
                }
            }
        }

        let Some((_, key)) = self.focal.pop_first() else {
            unreachable!("the best OPEN node is always in FOCAL");
        };
        let id = key.3;
        self.open.remove(&key);
        if self.nodes[id].is_goal() {
            return if self.accept_goal(id) { Step::Done { proved: false } } else { Step::Continue };
        }
        self.expand(id);
        Step::Continue
    }

    /// mTSP evaluation of singleton-stage nodes (already out of OPEN), then
    /// reinsertion.
    fn evaluate(&mut self, batch: &[usize]) {
        let ctx = self.ctx;
        let opts = self.mtsp;
        let nodes = &self.nodes;
        let results: Vec<MtspEval> =
            batch.par_iter().map(|&n| mtsp_f(ctx, &nodes[n].agents, &nodes[n].residual, opts)).collect();
        self.stats.mtsp_calls += batch.len() as u64;
        self.stats.batches += 1;
        for (&n, eval) in batch.iter().zip(results) {
            let node = &mut self.nodes[n];
            node.stage = Stage::Mtsp;
            // the singleton value (pathmax included) is also a valid bound
            node.f = if eval.f == DEAD { DEAD } else { eval.f.max(node.f) };
            node.mtsp_h = Some(eval.h);
            if node.f != DEAD && !prune_anytime(node.f, node.g(), self.eval_w, self.bound()) {
                self.insert_open(n);
            }
        }
    }

    /// Border cells around `loc`: the first cells that see part of
    /// `residual`, found without walking through any other such cell.
    /// Costs are plain shortest distances.
    fn borders(&self, loc: usize, residual: &FixedBitSet) -> Vec<(usize, u32)> {
        let mut reached = FixedBitSet::with_capacity(self.map.num_free());
        reached.insert(loc);
        let mut queue = VecDeque::from([loc]);
        let mut found = Vec::new();
        while let Some(c) = queue.pop_front() {
            for &n in self.map.neighbor_ids(c) {
                let n = n as usize;
                if reached.put(n) {
                    continue;
                }
                if self.ctx.sees_any(n, residual) {
                    found.push(n);
                } else {
                    queue.push_back(n);
                }
            }
        }
        if found.is_empty() {
            return Vec::new();
        }
        let dist = bfs_dist_field(self.map, [loc]);
        found.into_iter().map(|c| (c, dist.get(c))).filter(|&(_, d)| d != UNREACHED).collect()
    }

    fn expand(&mut self, id: usize) {
        self.stats.expansions += 1;
        self.nodes[id].stage = Stage::Expanded;
        let parent_f = self.nodes[id].f;
        let agents = self.nodes[id].agents.clone();
        let residual = self.nodes[id].residual.clone();

        let options: Vec<Vec<AgentState>> = agents
            .iter()
            .map(|a| match a.loc {
                None => vec![*a],
                Some(loc) => {
                    let mut opts: Vec<AgentState> =
                        self.borders(loc, &residual).into_iter().map(|(c, d)| AgentState::at(c, a.cost + d)).collect();
                    opts.push(AgentState { loc: None, cost: a.cost });
                    opts
                }
            })
            .collect();

        let mut pick = vec![0usize; agents.len()];
        'product: loop {
            let child_agents: Vec<AgentState> = pick.iter().zip(&options).map(|(&i, o)| o[i]).collect();
            if child_agents.iter().any(AgentState::is_live) {
                self.generate(id, parent_f, child_agents, &agents, &residual);
            }
            // odometer
            for k in 0..pick.len() {
                pick[k] += 1;
                if pick[k] < options[k].len() {
                    continue 'product;
                }
                pick[k] = 0;
            }
            break;
        }
    }

    fn generate(
        &mut self,
        parent: usize,
        parent_f: u64,
        agents: Vec<AgentState>,
        before: &[AgentState],
        residual: &FixedBitSet,
    ) {
        self.stats.generated += 1;
        let mut residual = residual.clone();
        for (a, old) in agents.iter().zip(before) {
            if let Some(loc) = a.loc {
                if old.loc != Some(loc) {
                    self.ctx.observe(&mut residual, loc);
                }
            }
        }
        let goal = residual.is_clear();
        let g = agents.iter().map(|a| a.cost).max().unwrap_or(0);
        let mut f = if goal { self.eval_w.scale(g) } else { singleton_f(self.ctx, &agents, &residual, self.eval_w) };
        if f == DEAD {
            return;
        }
        if self.plain() {
            f = pathmax(f, parent_f);
        }
        if prune_anytime(f, g, self.eval_w, self.bound()) {
            return;
        }
        let id = self.nodes.len();
        if self.cfg.enable_dominance {
            let locations = agents.iter().map(|a| a.loc).collect();
            let costs: Vec<u32> = agents.iter().map(|a| a.cost).collect();
            match self.dominance.check(locations, &residual, &costs, id) {
                Verdict::Prune => {
                    self.stats.dominance_prunes += 1;
                    return;
                }
                Verdict::Keep(beaten) => {
                    for n in beaten {
                        self.nodes[n].dominated = true;
                        self.remove_open(n);
                    }
                }
            }
        }
        self.seq += 1;
        let count = agents.len();
        self.nodes.push(SearchNode {
            agents,
            residual,
            f,
            stage: if goal { Stage::Mtsp } else { Stage::Singleton },
            parent: Some(parent),
            mtsp_h: goal.then(|| vec![0; count]),
            seq: self.seq,
            dominated: false,
        });
        self.insert_open(id);
    }

    /// Per-agent jump locations from the root to `goal`, and final costs.
    fn jump_points(&self, goal: usize) -> (Vec<Vec<usize>>, Vec<u32>) {
        let mut chain = vec![goal];
        while let Some(p) = self.nodes[*chain.last().unwrap()].parent {
            chain.push(p);
        }
        chain.reverse();
        let m = self.nodes[goal].agents.len();
        let mut jumps: Vec<Vec<usize>> = vec![Vec::new(); m];
        for &n in &chain {
            for (k, a) in self.nodes[n].agents.iter().enumerate() {
                if let Some(loc) = a.loc {
                    if jumps[k].last() != Some(&loc) {
                        jumps[k].push(loc);
                    }
                }
            }
        }
        (jumps, self.nodes[goal].costs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anytime_pruning_rule() {
        let w2 = Weight::integer(2).unwrap();
        assert!(!prune_anytime(1_000, 50, w2, None));
        assert!(prune_anytime(0, 29, Weight::ONE, Some(29)));
        // f_MxW = 60 with w = 2 gives 30 >= 29
        assert!(prune_anytime(60, 10, w2, Some(29)));
        assert!(!prune_anytime(56, 10, w2, Some(29)));
        // in scaled units: w = 3/2, f_MxW = 45 is stored as 90 and 45/1.5 = 30
        let w = Weight::new(3, 2).unwrap();
        assert!(prune_anytime(90, 0, w, Some(30)));
        assert!(!prune_anytime(89, 0, w, Some(30)));
    }
}
