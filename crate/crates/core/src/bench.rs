//! Batch runs over a directory of maps, reported as CSV.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{parse_map, sample_border_starts, GridError, GridMap, ProblemInstance};
use crate::search::{solve_with_index, Algorithm, SolverConfig};
use crate::visibility::VisibilityIndex;
use crate::weight::Weight;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("reading {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Map { path: PathBuf, source: GridError },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone)]
pub struct BenchSpec {
    pub algorithms: Vec<Algorithm>,
    /// Only used by the weighted and focal algorithms; the optimal ones run once at w = 1.
    pub weights: Vec<Weight>,
    pub agents: Vec<usize>,
    pub seeds: Vec<u64>,
    pub anytime: bool,
    pub time_limit: Option<Duration>,
}

/// One CSV row. `makespan` is empty when the run timed out without a solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub map: String,
    #[serde(rename = "M")]
    pub agents: usize,
    pub seed: u64,
    pub algo: Algorithm,
    pub w: Weight,
    pub makespan: Option<u32>,
    pub runtime_ms: f64,
    pub expansions: u64,
    pub reduction_pct: f64,
}

/// Every `*.map` file in `dir`, sorted by file name.
pub fn load_suite(dir: &Path) -> Result<Vec<(String, Arc<GridMap>)>, BenchError> {
    let io_err = |source| BenchError::Io { path: dir.to_path_buf(), source };
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io_err)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "map"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|path| {
            let text = fs::read_to_string(&path).map_err(|source| BenchError::Io { path: path.clone(), source })?;
            let map = parse_map(&text).map_err(|source| BenchError::Map { path: path.clone(), source })?;
            let name = path.file_name().unwrap_or_default().to_string_lossy().into_owned();
            Ok((name, Arc::new(map)))
        })
        .collect()
}

/// Runs every (map, M, seed, algorithm, weight) combination. Instances run
/// in parallel; rows come back in a fixed order.
pub fn run_bench(maps: &[(String, Arc<GridMap>)], spec: &BenchSpec) -> Result<Vec<BenchRow>, BenchError> {
    let mut configs = Vec::new();
    for &algo in &spec.algorithms {
        let weights: &[Weight] = match algo {
            Algorithm::Baseline | Algorithm::Cp3 => &[Weight::ONE],
            _ => &spec.weights,
        };
        for &w in weights {
            configs.push(SolverConfig::new(algo).with_weight(w).with_anytime(spec.anytime).with_time_limit(spec.time_limit));
        }
    }
    let indexes: Vec<VisibilityIndex> = maps.par_iter().map(|(_, m)| VisibilityIndex::build(m)).collect();
    let mut jobs = Vec::new();
    for (i, (_, map)) in maps.iter().enumerate() {
        for &m in &spec.agents {
            for &seed in &spec.seeds {
                let starts = sample_border_starts(map, m, seed)
                    .map_err(|source| BenchError::Map { path: maps[i].0.clone().into(), source })?;
                for cfg in &configs {
                    jobs.push((i, m, seed, starts.clone(), *cfg));
                }
            }
        }
    }
    let rows = jobs
        .into_par_iter()
        .map(|(i, m, seed, starts, mut cfg)| {
            cfg.seed = seed;
            let problem = ProblemInstance::new(Arc::clone(&maps[i].1), starts).expect("sampled starts are free");
            let clock = std::time::Instant::now();
            let result = solve_with_index(&problem, &indexes[i], &cfg);
            let runtime_ms = clock.elapsed().as_secs_f64() * 1e3;
            let (makespan, expansions, reduction_pct) = match &result {
                Ok(s) => (Some(s.makespan), s.stats.expansions, s.stats.reduction.reduction_pct()),
                Err(_) => (None, 0, 0.0),
            };
            BenchRow {
                map: maps[i].0.clone(),
                agents: m,
                seed,
                algo: cfg.algorithm,
                w: cfg.weight,
                makespan,
                runtime_ms,
                expansions,
                reduction_pct,
            }
        })
        .collect();
    Ok(rows)
}

pub fn write_csv<W: io::Write>(rows: &[BenchRow], out: W) -> Result<(), BenchError> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush().map_err(|e| BenchError::Csv(e.into()))?;
    Ok(())
}

pub fn read_csv<R: io::Read>(input: R) -> Result<Vec<BenchRow>, BenchError> {
    let mut reader = csv::Reader::from_reader(input);
    Ok(reader.deserialize().collect::<Result<_, _>>()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_round_trip() {
        let rows = vec![BenchRow {
            map: "a.map".into(),
            agents: 2,
            seed: 7,
            algo: Algorithm::FocalSorc,
            w: Weight::new(3, 2).unwrap(),
            makespan: Some(12),
            runtime_ms: 1.5,
            expansions: 40,
            reduction_pct: 80.0,
        }];
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("map,M,seed,algo,w,makespan,runtime_ms,expansions,reduction_pct\n"));
        assert!(text.contains("a.map,2,7,focal-sorc,3/2,12,"));
        assert_eq!(read_csv(buf.as_slice()).unwrap(), rows);
    }

    #[test]
    fn optimal_algorithms_run_once() {
        let map = Arc::new(GridMap::from_rows(&[".....", "##.##", "##.##"]).unwrap());
        let spec = BenchSpec {
            algorithms: vec![Algorithm::Cp3, Algorithm::Mxw],
            weights: vec![Weight::ONE, Weight::integer(2).unwrap()],
            agents: vec![1],
            seeds: vec![0, 1],
            anytime: false,
            time_limit: None,
        };
        let rows = run_bench(&[("t.map".into(), map)], &spec).unwrap();
        assert_eq!(rows.len(), 2 * 3);
        assert!(rows.iter().all(|r| r.makespan.is_some()));
    }
}
