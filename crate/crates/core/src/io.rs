//! Solution JSON files.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::grid::Cell;
use crate::search::{Algorithm, Solution, SolveStatus, TracePoint};
use crate::weight::Weight;

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapRef {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionRecord {
    pub initial: usize,
    pub after_cd: usize,
    pub after_pd: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsRecord {
    pub expansions: u64,
    pub generated: u64,
    pub mtsp_calls: u64,
    pub dominance_prunes: u64,
    pub reduction: ReductionRecord,
    pub runtime_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub map: MapRef,
    pub agents: usize,
    pub starts: Vec<Cell>,
    pub algorithm: Algorithm,
    pub w: Weight,
    pub makespan: u32,
    pub status: SolveStatus,
    pub proved_optimal: bool,
    pub paths: Vec<Vec<Cell>>,
    pub stats: StatsRecord,
    pub anytime_trace: Vec<TracePoint>,
}

impl SolutionFile {
    pub fn new(solution: &Solution, starts: &[Cell], map_path: &str, map_text: &[u8]) -> Self {
        let st = &solution.stats;
        SolutionFile {
            map: MapRef { path: map_path.to_string(), sha256: sha256_hex(map_text) },
            agents: starts.len(),
            starts: starts.to_vec(),
            algorithm: solution.config.algorithm,
            w: solution.config.weight,
            makespan: solution.makespan,
            status: solution.status,
            proved_optimal: solution.proved_optimal,
            paths: solution.paths.clone(),
            stats: StatsRecord {
                expansions: st.expansions,
                generated: st.generated,
                mtsp_calls: st.mtsp_calls,
                dominance_prunes: st.dominance_prunes,
                reduction: ReductionRecord {
                    initial: st.reduction.initial_size,
                    after_cd: st.reduction.after_cd,
                    after_pd: st.reduction.after_pd,
                },
                runtime_ms: st.runtime.as_secs_f64() * 1e3,
            },
            anytime_trace: solution.anytime_trace.clone(),
        }
    }

    /// Replaces the paths, e.g. after postprocessing.
    pub fn with_paths(mut self, paths: Vec<Vec<Cell>>) -> Self {
        self.makespan = paths.iter().map(|p| p.len().saturating_sub(1) as u32).max().unwrap_or(0);
        self.paths = paths;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}
