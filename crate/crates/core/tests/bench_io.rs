use std::fs;

use mwrp_core::bench::{load_suite, read_csv, run_bench, write_csv, BenchSpec};
use mwrp_core::grid::{generate_map, MapStyle};
use mwrp_core::{Algorithm, Weight};

#[test]
fn suite_directory_to_csv_and_back() {
    let dir = tempfile::tempdir().unwrap();
    for (i, style) in [MapStyle::Room, MapStyle::Maze, MapStyle::Random].into_iter().enumerate() {
        let map = generate_map(style, 9, 9, 0.2, i as u64).unwrap();
        fs::write(dir.path().join(format!("{i}-{style}.map")), map.to_movingai()).unwrap();
    }
    fs::write(dir.path().join("notes.txt"), "not a map").unwrap();

    let maps = load_suite(dir.path()).unwrap();
    let names: Vec<&str> = maps.iter().map(|(n, _)| n.as_str()).collect();
    assert_eq!(names, ["0-room.map", "1-maze.map", "2-random.map"]);

    let spec = BenchSpec {
        algorithms: vec![Algorithm::Cp3, Algorithm::FocalSorc],
        weights: vec![Weight::new(3, 2).unwrap(), Weight::integer(2).unwrap()],
        agents: vec![1, 2],
        seeds: vec![4],
        anytime: false,
        time_limit: None,
    };
    let rows = run_bench(&maps, &spec).unwrap();
    // cp3 once, focal-sorc once per weight
    assert_eq!(rows.len(), 3 * 2 * 3);
    for pair in rows.chunks(3) {
        let optimum = pair[0].makespan.unwrap();
        for row in &pair[1..] {
            let w = row.w;
            assert!(row.makespan.unwrap() as u64 <= w.bound(optimum as u64), "{row:?}");
        }
    }

    let csv_path = dir.path().join("out.csv");
    write_csv(&rows, fs::File::create(&csv_path).unwrap()).unwrap();
    let back = read_csv(fs::File::open(&csv_path).unwrap()).unwrap();
    assert_eq!(back.len(), rows.len());
    for (a, b) in rows.iter().zip(&back) {
        assert_eq!((&a.map, a.agents, a.seed, a.algo, a.w, a.makespan), (&b.map, b.agents, b.seed, b.algo, b.w, b.makespan));
    }
}

#[test]
fn unreadable_map_is_reported_with_its_path() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.map"), "type octile\nheight 2\nwidth 2\nmap\n..\n").unwrap();
    let err = load_suite(dir.path()).unwrap_err().to_string();
    assert!(err.contains("bad.map"), "{err}");
}
