//! A small suite of maps with optimal makespans found by joint BFS, stored
//! in `tests/data/oracle_suite`. Regenerate with
//! `cargo test -p mwrp-core --test oracle_suite -- --ignored`.

mod common;

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use mwrp_core::bench::{load_suite, run_bench, BenchSpec};
use mwrp_core::grid::{generate_map, sample_border_starts, MapStyle};
use mwrp_core::{Algorithm, Weight};

const AGENTS: [usize; 3] = [1, 2, 3];
const SEEDS: [u64; 2] = [0, 1];

fn suite_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/oracle_suite")
}

fn stored() -> BTreeMap<(String, usize, u64), u32> {
    let mut reader = csv::Reader::from_path(suite_dir().join("oracle.csv")).unwrap();
    reader
        .deserialize::<(String, usize, u64, u32)>()
        .map(|row| {
            let (map, m, seed, makespan) = row.unwrap();
            ((map, m, seed), makespan)
        })
        .collect()
}

#[test]
#[ignore = "rewrites the stored suite"]
fn regenerate() {
    let dir = suite_dir();
    fs::create_dir_all(&dir).unwrap();
    let mut out = csv::Writer::from_path(dir.join("oracle.csv")).unwrap();
    out.write_record(["map", "M", "seed", "makespan"]).unwrap();
    let shapes = [(MapStyle::Random, 6, 5, 0.2), (MapStyle::Random, 7, 4, 0.3), (MapStyle::Room, 7, 7, 0.0), (MapStyle::Maze, 7, 7, 0.0)];
    for (i, &(style, w, h, d)) in shapes.iter().chain(shapes.iter()).enumerate() {
        let map = generate_map(style, w, h, d, 300 + i as u64).unwrap();
        let name = format!("{i:02}-{style}-{w}x{h}.map");
        fs::write(dir.join(&name), map.to_movingai()).unwrap();
        for m in AGENTS {
            for seed in SEEDS {
                let starts = sample_border_starts(&map, m, seed).unwrap();
                let best = common::oracle_makespan(&map, &starts);
                out.write_record([name.clone(), m.to_string(), seed.to_string(), best.to_string()]).unwrap();
            }
        }
    }
    out.flush().unwrap();
}

#[test]
fn cp3_bench_matches_stored_optima() {
    let maps = load_suite(&suite_dir()).unwrap();
    let oracle = stored();
    assert_eq!(oracle.len(), maps.len() * AGENTS.len() * SEEDS.len());
    let spec = BenchSpec {
        algorithms: vec![Algorithm::Cp3],
        weights: vec![Weight::ONE],
        agents: AGENTS.to_vec(),
        seeds: SEEDS.to_vec(),
        anytime: false,
        time_limit: None,
    };
    let rows = run_bench(&maps, &spec).unwrap();
    assert_eq!(rows.len(), oracle.len());
    for row in rows {
        let want = oracle[&(row.map.clone(), row.agents, row.seed)];
        assert_eq!(row.makespan, Some(want), "{} M={} seed={}", row.map, row.agents, row.seed);
    }
}
