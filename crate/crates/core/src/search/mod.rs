//! Joint-space best-first search over agent jump points.
//!
//! One engine covers the optimal solvers (`baseline`, `cp3`), the
//! bounded-suboptimal ones (`mxw`, `focal-sorc`, `focal-morc`) and their
//! anytime variants; [`SolverConfig`] picks the behaviour.

mod dominance;
mod engine;
mod node;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{Cell, ProblemInstance};
use crate::heuristics::HeuristicContext;
use crate::reduction::{reduce, ReductionOptions, ReductionStats};
use crate::visibility::{shortest_path, VisibilityIndex};
use crate::weight::Weight;

pub use dominance::{DominanceStore, Verdict};
pub use engine::prune_anytime;
pub use node::{AgentState, SearchNode, Stage};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    /// Plain lazy A* with singleton and mTSP bounds, no reduction.
    Baseline,
    /// Baseline plus state-space reduction, pivot pruning and batching.
    Cp3,
    /// Minimax weighted A*.
    Mxw,
    /// Focal search ordered by the sum of remaining costs.
    FocalSorc,
    /// Focal search ordered by the largest remaining cost.
    FocalMorc,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] =
        [Algorithm::Baseline, Algorithm::Cp3, Algorithm::Mxw, Algorithm::FocalSorc, Algorithm::FocalMorc];

    pub fn is_focal(self) -> bool {
        matches!(self, Algorithm::FocalSorc | Algorithm::FocalMorc)
    }

    /// Whether the weight enters the priority itself.
    pub fn is_weighted(self) -> bool {
        self == Algorithm::Mxw
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Baseline => "baseline",
            Algorithm::Cp3 => "cp3",
            Algorithm::Mxw => "mxw",
            Algorithm::FocalSorc => "focal-sorc",
            Algorithm::FocalMorc => "focal-morc",
        })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown algorithm `{0}` (expected baseline, cp3, mxw, focal-sorc or focal-morc)")]
pub struct UnknownAlgorithm(pub String);

impl FromStr for Algorithm {
    type Err = UnknownAlgorithm;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.to_string() == s.trim().to_ascii_lowercase().replace('_', "-"))
            .ok_or_else(|| UnknownAlgorithm(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub algorithm: Algorithm,
    pub weight: Weight,
    pub anytime: bool,
    pub batch_size: usize,
    pub pivot_cap: usize,
    pub enable_cd: bool,
    pub enable_pd: bool,
    pub enable_pivot_prune: bool,
    pub enable_dominance: bool,
    #[serde(skip)]
    pub time_limit: Option<Duration>,
    pub seed: u64,
}

impl SolverConfig {
    /// Defaults for `algorithm`. The baseline runs without reduction, pivot
    /// pruning or batching; everything else has them on.
    pub fn new(algorithm: Algorithm) -> Self {
        let enhanced = algorithm != Algorithm::Baseline;
        SolverConfig {
            algorithm,
            weight: Weight::ONE,
            anytime: false,
            batch_size: if enhanced { 100 } else { 1 },
            pivot_cap: 12,
            enable_cd: enhanced,
            enable_pd: enhanced,
            enable_pivot_prune: enhanced,
            enable_dominance: true,
            time_limit: None,
            seed: 0,
        }
    }

    pub fn baseline() -> Self {
        Self::new(Algorithm::Baseline)
    }

    pub fn cp3() -> Self {
        Self::new(Algorithm::Cp3)
    }

    pub fn mxw(w: Weight) -> Self {
        Self::new(Algorithm::Mxw).with_weight(w)
    }

    pub fn focal(algorithm: Algorithm, w: Weight) -> Self {
        debug_assert!(algorithm.is_focal());
        Self::new(algorithm).with_weight(w)
    }

    pub fn with_weight(mut self, w: Weight) -> Self {
        self.weight = w;
        self
    }

    pub fn with_anytime(mut self, anytime: bool) -> Self {
        self.anytime = anytime;
        self
    }

    pub fn with_batch_size(mut self, n: usize) -> Self {
        self.batch_size = n.max(1);
        self
    }

    pub fn with_time_limit(mut self, limit: Option<Duration>) -> Self {
        self.time_limit = limit;
        self
    }

    /// Weight that only loosens the result bound; the optimal solvers ignore it.
    pub fn effective_weight(&self) -> Weight {
        match self.algorithm {
            Algorithm::Baseline | Algorithm::Cp3 => Weight::ONE,
            _ => self.weight,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchStats {
    pub expansions: u64,
    pub generated: u64,
    pub mtsp_calls: u64,
    pub dominance_prunes: u64,
    pub batches: u64,
    pub reduction: ReductionStats,
    #[serde(skip)]
    pub runtime: Duration,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub t_ms: f64,
    pub cost: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveStatus {
    /// The search finished within its budget.
    Complete,
    /// The time limit hit; the best incumbent is returned.
    TimedOut,
}

#[derive(Debug, Clone)]
pub struct Solution {
    /// Cell-by-cell path per agent, starting at its start cell.
    pub paths: Vec<Vec<Cell>>,
    pub costs: Vec<u32>,
    pub makespan: u32,
    pub status: SolveStatus,
    /// Whether the makespan is known to be optimal.
    pub proved_optimal: bool,
    pub stats: SearchStats,
    pub anytime_trace: Vec<TracePoint>,
    pub config: SolverConfig,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("time limit reached before any solution was found")]
    Timeout,
    #[error("no solution exists: some target cannot be seen from any reachable cell")]
    Unsolvable,
}

/// Solves `problem` from scratch, building the visibility index.
pub fn solve(problem: &ProblemInstance, config: &SolverConfig) -> Result<Solution, SolveError> {
    let index = VisibilityIndex::build(problem.map());
    solve_with_index(problem, &index, config)
}

/// Targets left after removing what the starts already see and running
/// the configured reductions.
pub fn reduced_targets(
    problem: &ProblemInstance,
    index: &VisibilityIndex,
    config: &SolverConfig,
) -> (FixedBitSet, ReductionStats) {
    let starts = problem.start_ids();
    let mut initial = problem.unseen().clone();
    initial.difference_with(&index.seen_from(starts.iter().copied()));
    let options = ReductionOptions { cell_dominance: config.enable_cd, path_dominance: config.enable_pd };
    reduce(&initial, &starts, problem.map(), index, options)
}

pub fn solve_with_index(
    problem: &ProblemInstance,
    index: &VisibilityIndex,
    config: &SolverConfig,
) -> Result<Solution, SolveError> {
    let clock = std::time::Instant::now();
    let map = problem.map();
    let (targets, reduction) = reduced_targets(problem, index, config);
    let ctx = HeuristicContext::new(map, index, &targets);

    let outcome = engine::Engine::new(map, &ctx, config, clock).run(&problem.start_ids())?;
    let mut stats = outcome.stats;
    stats.reduction = reduction;
    stats.runtime = clock.elapsed();

    let paths: Vec<Vec<Cell>> = outcome
        .jumps
        .iter()
        .map(|jumps| {
            let mut path = vec![jumps[0]];
            for pair in jumps.windows(2) {
                let leg = shortest_path(map, pair[0], pair[1]).expect("connected map");
                path.extend_from_slice(&leg[1..]);
            }
            path.into_iter().map(|id| map.cell(id)).collect()
        })
        .collect();
    let costs: Vec<u32> = paths.iter().map(|p| (p.len() - 1) as u32).collect();
    debug_assert_eq!(costs, outcome.costs);
    Ok(Solution {
        makespan: costs.iter().copied().max().unwrap_or(0),
        costs,
        paths,
        status: if outcome.timed_out { SolveStatus::TimedOut } else { SolveStatus::Complete },
        proved_optimal: outcome.proved_optimal,
        stats,
        anytime_trace: outcome.trace,
        config: *config,
    })
}
