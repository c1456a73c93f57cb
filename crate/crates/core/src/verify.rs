//! Solution checker that shares no code with the solver: its own line
//! walker, its own adjacency test, and U taken as every free cell.

use serde::{Deserialize, Serialize};

use crate::grid::{Cell, GridMap};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub valid: bool,
    pub uncovered: Vec<Cell>,
    /// `(agent, index)` of every path cell that is blocked or not one
    /// four-way step from its predecessor.
    pub path_violations: Vec<(usize, usize)>,
    pub start_mismatches: Vec<usize>,
}

fn open(map: &GridMap, r: i64, c: i64) -> bool {
    r >= 0 && c >= 0 && map.is_free(Cell::new(r as usize, c as usize))
}

/// Sight test along the integer error-accumulation line from `from` to `to`.
fn sight(map: &GridMap, from: Cell, to: Cell) -> bool {
    let (mut r, mut c) = (from.row as i64, from.col as i64);
    let (tr, tc) = (to.row as i64, to.col as i64);
    let run = (tc - c).abs();
    let rise = (tr - r).abs();
    let step_c = (tc - c).signum();
    let step_r = (tr - r).signum();
    let mut acc = run - rise;
    loop {
        if !open(map, r, c) {
            return false;
        }
        if (r, c) == (tr, tc) {
            return true;
        }
        let twice = acc * 2;
        if twice >= -rise {
            acc -= rise;
            c += step_c;
        }
        if twice <= run {
            acc += run;
            r += step_r;
        }
    }
}

fn adjacent(a: Cell, b: Cell) -> bool {
    a.row.abs_diff(b.row) + a.col.abs_diff(b.col) == 1
}

/// Checks that the paths start at `starts`, move one free four-way step at
/// a time, and jointly see every free cell.
pub fn verify(map: &GridMap, starts: &[Cell], paths: &[Vec<Cell>]) -> CoverageReport {
    let mut start_mismatches: Vec<usize> = (0..starts.len().max(paths.len()))
        .filter(|&k| match (starts.get(k), paths.get(k).and_then(|p| p.first())) {
            (Some(s), Some(first)) => s != first,
            _ => true,
        })
        .collect();
    start_mismatches.dedup();

    let mut path_violations = Vec::new();
    for (k, path) in paths.iter().enumerate() {
        for (i, &cell) in path.iter().enumerate() {
            let blocked = !open(map, cell.row as i64, cell.col as i64);
            let jump = i > 0 && !adjacent(path[i - 1], cell);
            if blocked || jump {
                path_violations.push((k, i));
            }
        }
    }

    let mut visited: Vec<Cell> = paths.iter().flatten().copied().filter(|c| open(map, c.row as i64, c.col as i64)).collect();
    visited.sort();
    visited.dedup();
    let mut uncovered = Vec::new();
    for r in 0..map.height() {
        for c in 0..map.width() {
            let target = Cell::new(r, c);
            if map.is_free(target) && !visited.iter().any(|&v| sight(map, v, target)) {
                uncovered.push(target);
            }
        }
    }

    CoverageReport {
        valid: uncovered.is_empty() && path_violations.is_empty() && start_mismatches.is_empty(),
        uncovered,
        path_violations,
        start_mismatches,
    }
}
