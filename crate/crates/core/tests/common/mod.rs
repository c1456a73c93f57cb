//! Shared fixtures for the integration and acceptance tests.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use mwrp_core::grid::{generate_map, sample_border_starts, Cell, GridMap, MapStyle, ProblemInstance};

/// Sight along the error-accumulation line, written separately from the
/// library so the oracle shares nothing with the solver.
pub fn sees(map: &GridMap, a: Cell, b: Cell) -> bool {
    let (mut x, mut y) = (a.col as i64, a.row as i64);
    let (bx, by) = (b.col as i64, b.row as i64);
    let dx = (bx - x).abs();
    let dy = -(by - y).abs();
    let mut err = dx + dy;
    loop {
        if !map.is_free(Cell::new(y as usize, x as usize)) {
            return false;
        }
        if x == bx && y == by {
            return true;
        }
        let e2 = 2 * err;
        if e2 >= dy {
            err += dy;
            x += (bx - x).signum();
        }
        if e2 <= dx {
            err += dx;
            y += (by - y).signum();
        }
    }
}

/// Optimal makespan by breadth-first search over joint states
/// (sorted agent cells, cells seen so far). Every step each agent either
/// waits or moves to a four-way neighbour. Only for maps with at most 64
/// free cells.
pub fn oracle_makespan(map: &GridMap, starts: &[Cell]) -> u32 {
    let cells = map.free_cells().to_vec();
    let n = cells.len();
    assert!(n <= 64, "oracle needs at most 64 free cells");
    let index_of = |c: Cell| cells.iter().position(|&x| x == c).unwrap();
    let sight: Vec<u64> = cells
        .iter()
        .map(|&a| cells.iter().enumerate().filter(|&(_, &b)| sees(map, a, b)).fold(0u64, |m, (j, _)| m | 1 << j))
        .collect();
    let moves: Vec<Vec<usize>> = cells
        .iter()
        .map(|&c| {
            let mut out = vec![index_of(c)];
            let (r, col) = (c.row as i64, c.col as i64);
            for (dr, dc) in [(-1, 0), (1, 0), (0, -1), (0, 1)] {
                let (nr, nc) = (r + dr, col + dc);
                if nr >= 0 && nc >= 0 && map.is_free(Cell::new(nr as usize, nc as usize)) {
                    out.push(index_of(Cell::new(nr as usize, nc as usize)));
                }
            }
            out
        })
        .collect();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };

    let mut locs: Vec<usize> = starts.iter().map(|&s| index_of(s)).collect();
    locs.sort();
    let seen0 = locs.iter().fold(0u64, |m, &l| m | sight[l]);
    let mut visited = HashSet::from([(locs.clone(), seen0)]);
    let mut queue = VecDeque::from([(locs, seen0, 0u32)]);
    while let Some((locs, seen, depth)) = queue.pop_front() {
        if seen == full {
            return depth;
        }
        let mut pick = vec![0usize; locs.len()];
        'odometer: loop {
            let mut next: Vec<usize> = pick.iter().zip(&locs).map(|(&i, &l)| moves[l][i]).collect();
            let seen2 = next.iter().fold(seen, |m, &l| m | sight[l]);
            next.sort();
            if visited.insert((next.clone(), seen2)) {
                queue.push_back((next, seen2, depth + 1));
            }
            for k in 0..pick.len() {
                pick[k] += 1;
                if pick[k] < moves[locs[k]].len() {
                    continue 'odometer;
                }
                pick[k] = 0;
            }
            break;
        }
    }
    unreachable!("connected maps are always coverable")
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub map: Arc<GridMap>,
    pub starts: Vec<Cell>,
    pub seed: u64,
}

impl Instance {
    pub fn problem(&self) -> ProblemInstance {
        ProblemInstance::new(Arc::clone(&self.map), self.starts.clone()).unwrap()
    }
}

/// Small random maps (at most 30 free cells) with 1 to 3 border agents.
/// 36 maps, each paired with M = 1, 2 and 3.
pub fn oracle_instances() -> Vec<Instance> {
    let shapes = [(6, 5), (5, 6), (7, 4)];
    let densities = [0.2, 0.25, 0.3, 0.35];
    let mut out = Vec::new();
    for seed in 0..36u64 {
        let (w, h) = shapes[seed as usize % shapes.len()];
        let d = densities[(seed as usize / 3) % densities.len()];
        let map = Arc::new(generate_map(MapStyle::Random, w, h, d, 1000 + seed).unwrap());
        assert!(map.num_free() <= 30);
        for m in 1..=3 {
            let starts = sample_border_starts(&map, m, seed * 10 + m as u64).unwrap();
            out.push(Instance { name: format!("rand-{w}x{h}-s{seed}-m{m}"), map: Arc::clone(&map), starts, seed });
        }
    }
    out
}

/// Generated maps with border starts; `m` cycles through `agents`.
pub fn suite(style: MapStyle, size: usize, density: f64, count: u64, agents: &[usize], seed0: u64) -> Vec<Instance> {
    (0..count)
        .map(|i| {
            let seed = seed0 + i;
            let map = Arc::new(generate_map(style, size, size, density, seed).unwrap());
            let m = agents[i as usize % agents.len()];
            let starts = sample_border_starts(&map, m, seed).unwrap();
            Instance { name: format!("{style}-{size}-s{seed}-m{m}"), map, starts, seed }
        })
        .collect()
}

/// Cells of U (all free cells) not seen from any start.
pub fn initial_unseen(problem: &ProblemInstance, index: &mwrp_core::VisibilityIndex) -> fixedbitset::FixedBitSet {
    let mut u = problem.unseen().clone();
    u.difference_with(&index.seen_from(problem.start_ids()));
    u
}

/// Exhaustive min-max mTSP: every assignment of pivots to agents and every
/// visiting order. Scaled like the library (units of `1/w.den()`).
pub fn brute_force_mtsp(g: &mwrp_core::heuristics::GdlsGraph, w: mwrp_core::Weight) -> u64 {
    fn best_order(first: &[u32], between: &[Vec<u32>], left: &mut Vec<usize>, at: Option<usize>) -> u64 {
        if left.is_empty() {
            return 0;
        }
        let mut best = u64::MAX;
        for i in 0..left.len() {
            let v = left.swap_remove(i);
            let leg = match at {
                None => first[v],
                Some(u) => between[u][v],
            } as u64;
            best = best.min(leg + best_order(first, between, left, Some(v)));
            left.push(v);
            let last = left.len() - 1;
            left.swap(i, last);
        }
        best
    }
    let (k, p) = (g.agent_costs.len(), g.pivots.len());
    let mut best = u64::MAX;
    for code in 0..k.pow(p as u32) {
        let mut groups = vec![Vec::new(); k];
        let mut c = code;
        for piv in 0..p {
            groups[c % k].push(piv);
            c /= k;
        }
        let worst = groups
            .iter_mut()
            .enumerate()
            .map(|(a, group)| {
                let h = best_order(&g.agent_edges[a], &g.pivot_edges, group, None);
                w.den() * g.agent_costs[a] as u64 + w.num() * h
            })
            .max()
            .unwrap_or(0);
        best = best.min(worst);
    }
    best
}
