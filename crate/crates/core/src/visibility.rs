//! Line of sight (L), watchers (W), movement neighbors (N) and BFS distances.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::grid::{Cell, GridMap};

/// Free four-way neighbors of `cell` (up, down, left, right).
pub fn neighbors(map: &GridMap, cell: Cell) -> Vec<Cell> {
    match map.id(cell) {
        Some(id) => map.neighbor_ids(id).iter().map(|&n| map.cell(n as usize)).collect(),
        None => Vec::new(),
    }
}

/// Cells rasterized by the integer Bresenham walk from `a` to `b`,
/// endpoints included. Steps may be diagonal.
pub fn bresenham_cells(a: Cell, b: Cell) -> impl Iterator<Item = Cell> {
    let (x1, y1) = (b.col as i64, b.row as i64);
    let (mut x, mut y) = (a.col as i64, a.row as i64);
    let dx = (x1 - x).abs();
    let dy = -(y1 - y).abs();
    let sx = if x < x1 { 1 } else { -1 };
    let sy = if y < y1 { 1 } else { -1 };
    let mut err = dx + dy;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let here = Cell::new(y as usize, x as usize);
        if x == x1 && y == y1 {
            done = true;
            return Some(here);
        }
        let e2 = 2 * err;
        if e2 >= dy {
            err += dy;
            x += sx;
        }
        if e2 <= dx {
            err += dx;
            y += sy;
        }
        Some(here)
    })
}

/// True iff every cell of the Bresenham line from `a` to `b` is free.
/// Not symmetric in general.
pub fn bresenham_visible(map: &GridMap, a: Cell, b: Cell) -> bool {
    bresenham_cells(a, b).all(|c| map.is_free(c))
}

/// Precomputed LOS and watcher sets as bitsets over free-cell ids.
#[derive(Debug, Clone)]
pub struct VisibilityIndex {
    los: Vec<FixedBitSet>,
    watchers: Vec<FixedBitSet>,
}

impl VisibilityIndex {
    pub fn build(map: &GridMap) -> Self {
        Self::build_with_range(map, None)
    }

    /// `max_range` caps visibility at a Euclidean distance (in cells).
    pub fn build_with_range(map: &GridMap, max_range: Option<f64>) -> Self {
        let n = map.num_free();
        let cells = map.free_cells();
        let los: Vec<FixedBitSet> = (0..n)
            .into_par_iter()
            .map(|s| {
                let from = cells[s];
                let mut set = FixedBitSet::with_capacity(n);
                for (t, &to) in cells.iter().enumerate() {
                    if let Some(r) = max_range {
                        let (dr, dc) = (from.row.abs_diff(to.row) as f64, from.col.abs_diff(to.col) as f64);
                        if dr * dr + dc * dc > r * r {
                            continue;
                        }
                    }
                    if bresenham_visible(map, from, to) {
                        set.insert(t);
                    }
                }
                set
            })
            .collect();

        let mut watchers = vec![FixedBitSet::with_capacity(n); n];
        for (s, set) in los.iter().enumerate() {
            for t in set.ones() {
                watchers[t].insert(s);
            }
        }
        VisibilityIndex { los, watchers }
    }

    pub fn len(&self) -> usize {
        self.los.len()
    }

    pub fn is_empty(&self) -> bool {
        self.los.is_empty()
    }

    /// L(s): ids visible from `s`.
    pub fn los(&self, s: usize) -> &FixedBitSet {
        &self.los[s]
    }

    /// W(s): ids from which `s` is visible.
    pub fn watchers(&self, s: usize) -> &FixedBitSet {
        &self.watchers[s]
    }

    pub fn sees(&self, from: usize, to: usize) -> bool {
        self.los[from].contains(to)
    }

    /// Union of L over `cells`.
    pub fn seen_from(&self, cells: impl IntoIterator<Item = usize>) -> FixedBitSet {
        let mut seen = FixedBitSet::with_capacity(self.len());
        for c in cells {
            seen.union_with(&self.los[c]);
        }
        seen
    }
}

pub const UNREACHED: u32 = u32::MAX;

/// Shortest four-way distance from the nearest source, per free-cell id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistField {
    dist: Vec<u32>,
}

impl DistField {
    pub fn get(&self, id: usize) -> u32 {
        self.dist[id]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.dist
    }

    /// Smallest distance over a set of ids.
    pub fn min_over(&self, ids: &FixedBitSet) -> u32 {
        ids.ones().map(|i| self.dist[i]).min().unwrap_or(UNREACHED)
    }
}

/// Multi-source BFS from `sources`; unreached cells hold [`UNREACHED`].
pub fn bfs_dist_field(map: &GridMap, sources: impl IntoIterator<Item = usize>) -> DistField {
    let mut dist = vec![UNREACHED; map.num_free()];
    let mut queue = VecDeque::new();
    for s in sources {
        if dist[s] != 0 {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(s) = queue.pop_front() {
        let next = dist[s] + 1;
        for &n in map.neighbor_ids(s) {
            let n = n as usize;
            if dist[n] == UNREACHED {
                dist[n] = next;
                queue.push_back(n);
            }
        }
    }
    DistField { dist }
}

/// Cells of `allowed` reachable from `starts` while staying inside `allowed`.
/// Starts outside `allowed` contribute nothing.
pub fn subgraph_bfs(map: &GridMap, starts: &[usize], allowed: &FixedBitSet) -> FixedBitSet {
    let mut reached = FixedBitSet::with_capacity(map.num_free());
    let mut queue: VecDeque<usize> = starts.iter().copied().collect();
    while let Some(s) = queue.pop_front() {
        if reached.contains(s) || !allowed.contains(s) {
            continue;
        }
        reached.insert(s);
        queue.extend(
            map.neighbor_ids(s)
                .iter()
                .map(|&n| n as usize)
                .filter(|&n| !reached.contains(n) && allowed.contains(n)),
        );
    }
    reached
}

/// One shortest path from `from` to `to` (ids, both ends included), or
/// `None` when `to` is unreachable. Ties follow neighbor order.
pub fn shortest_path(map: &GridMap, from: usize, to: usize) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; map.num_free()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(s) = queue.pop_front() {
        if s == to {
            break;
        }
        for &n in map.neighbor_ids(s) {
            let n = n as usize;
            if parent[n] == usize::MAX {
                parent[n] = s;
                queue.push_back(n);
            }
        }
    }
    if parent[to] == usize::MAX {
        return None;
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = parent[cur];
        path.push(cur);
    }
    path.reverse();
    Some(path)
}
