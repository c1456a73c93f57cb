//! Shrinking the set of cells that must be seen, without changing the
//! optimal makespan.
//!
//! * Cell dominance drops `s_j` when some other live `s_i` has
//!   `W(s_i) ⊆ W(s_j)`: whoever sees `s_i` also sees `s_j`.
//! * Path dominance drops `s_j` when some other live `s_i` has no watcher
//!   reachable from the starts without first seeing `s_j`.
//!
//! Both passes are one-shot preprocessing over bitsets keyed by free-cell id.

use std::cmp::Reverse;
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::grid::GridMap;
use crate::visibility::{subgraph_bfs, VisibilityIndex};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStats {
    pub initial_size: usize,
    pub after_cd: usize,
    pub after_pd: usize,
    #[serde(skip)]
    pub cd_time: Duration,
    #[serde(skip)]
    pub pd_time: Duration,
}

impl ReductionStats {
    /// Fraction of the initial set removed, in percent.
    pub fn reduction_pct(&self) -> f64 {
        if self.initial_size == 0 {
            0.0
        } else {
            100.0 * (self.initial_size - self.after_pd) as f64 / self.initial_size as f64
        }
    }
}

/// Cell dominance. The outer scan is row-major over the live set and every
/// removal is visible to later iterations.
pub fn cell_dominance(unseen: &FixedBitSet, index: &VisibilityIndex) -> FixedBitSet {
    let mut live = unseen.clone();
    let order: Vec<usize> = unseen.ones().collect();
    let mut doomed = Vec::new();
    for &i in &order {
        if !live.contains(i) {
            continue;
        }
        let wi = index.watchers(i);
        doomed.extend(live.ones().filter(|&j| j != i && wi.is_subset(index.watchers(j))));
        for j in doomed.drain(..) {
            live.set(j, false);
        }
    }
    live
}

/// Order in which path dominance visits candidates: most watchers first,
/// ties in reverse row-major order.
///
/// Visiting cells with larger watcher sets first means a cell-dominance
/// witness (`W(s_i) ⊆ W(s_j)`) is always still live when `s_j` is examined,
/// so every cell removed by [`cell_dominance`] is also removed here.
pub fn path_dominance_order(unseen: &FixedBitSet, index: &VisibilityIndex) -> Vec<usize> {
    let mut order: Vec<usize> = unseen.ones().collect();
    order.sort_by_key(|&s| (Reverse(index.watchers(s).count_ones(..)), Reverse(s)));
    order
}

/// Path dominance with respect to the agent starts (free-cell ids).
pub fn path_dominance(unseen: &FixedBitSet, starts: &[usize], map: &GridMap, index: &VisibilityIndex) -> FixedBitSet {
    let mut live = unseen.clone();
    let free = map.all_free();
    for sj in path_dominance_order(unseen, index) {
        let mut allowed = free.clone();
        allowed.difference_with(index.watchers(sj));
        let reachable = subgraph_bfs(map, starts, &allowed);
        let dominated = live
            .ones()
            .any(|si| si != sj && index.watchers(si).is_disjoint(&reachable));
        if dominated {
            live.set(sj, false);
        }
    }
    live
}

/// Which passes to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionOptions {
    pub cell_dominance: bool,
    pub path_dominance: bool,
}

impl Default for ReductionOptions {
    fn default() -> Self {
        ReductionOptions { cell_dominance: true, path_dominance: true }
    }
}

/// Cell dominance followed by path dominance on its output.
pub fn cpd(unseen: &FixedBitSet, starts: &[usize], map: &GridMap, index: &VisibilityIndex) -> (FixedBitSet, ReductionStats) {
    reduce(unseen, starts, map, index, ReductionOptions::default())
}

pub fn reduce(
    unseen: &FixedBitSet,
    starts: &[usize],
    map: &GridMap,
    index: &VisibilityIndex,
    options: ReductionOptions,
) -> (FixedBitSet, ReductionStats) {
    let mut stats = ReductionStats { initial_size: unseen.count_ones(..), ..Default::default() };

    let clock = Instant::now();
    let after_cd = if options.cell_dominance { cell_dominance(unseen, index) } else { unseen.clone() };
    stats.cd_time = clock.elapsed();
    stats.after_cd = after_cd.count_ones(..);

    let clock = Instant::now();
    let after_pd = if options.path_dominance {
        path_dominance(&after_cd, starts, map, index)
    } else {
        after_cd
    };
    stats.pd_time = clock.elapsed();
    stats.after_pd = after_pd.count_ones(..);
    (after_pd, stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Cell;

    fn id(map: &GridMap, r: usize, c: usize) -> usize {
        map.id(Cell::new(r, c)).unwrap()
    }

    #[test]
    fn open_map_keeps_one_cell() {
        let map = GridMap::from_rows(&["....", "....", "...."]).unwrap();
        let index = VisibilityIndex::build(&map);
        let kept = cell_dominance(&map.all_free(), &index);
        assert_eq!(kept.ones().collect::<Vec<_>>(), vec![0]);

        let corridor = GridMap::from_rows(&["....."]).unwrap();
        let index = VisibilityIndex::build(&corridor);
        assert_eq!(cell_dominance(&corridor.all_free(), &index).count_ones(..), 1);
    }

    #[test]
    fn deep_pocket_dominates_its_mouth() {
        // s1 at the bottom of a 3-deep pocket, s2 at its mouth
        let map = GridMap::from_rows(&[".......", "###.###", "###.###", "###.###"]).unwrap();
        let index = VisibilityIndex::build(&map);
        let (s1, s2) = (id(&map, 3, 3), id(&map, 1, 3));
        // brute-force watcher enumeration
        let watchers_of = |t: usize| -> Vec<usize> { (0..map.num_free()).filter(|&w| index.sees(w, t)).collect() };
        let (w1, w2) = (watchers_of(s1), watchers_of(s2));
        assert!(w1.iter().all(|w| w2.contains(w)) && w1.len() < w2.len());

        let mut u = FixedBitSet::with_capacity(map.num_free());
        u.insert(s1);
        u.insert(s2);
        assert_eq!(cell_dominance(&u, &index).ones().collect::<Vec<_>>(), vec![s1]);
    }

    #[test]
    fn path_dominance_on_open_map_keeps_the_last_scanned_cell() {
        // Every cell watches every other, so C' is empty and any live
        // survivor dominates the scanned cell. Check the order on 2x2 by
        // hand: all watcher sets have size 4, so the scan is ids 3, 2, 1, 0
        // and the last one, id 0, survives.
        let map = GridMap::from_rows(&["..", ".."]).unwrap();
        let index = VisibilityIndex::build(&map);
        assert_eq!(path_dominance_order(&map.all_free(), &index), vec![3, 2, 1, 0]);
        let kept = path_dominance(&map.all_free(), &[0], &map, &index);
        assert_eq!(kept.ones().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn empty_input() {
        let map = GridMap::from_rows(&["....."]).unwrap();
        let index = VisibilityIndex::build(&map);
        let mut u = map.all_free();
        u.difference_with(index.los(0));
        assert_eq!(u.count_ones(..), 0);
        assert_eq!(path_dominance(&u, &[0], &map, &index).count_ones(..), 0);
    }

    #[test]
    fn cell_seen_en_route_is_path_dominated() {
        let map = GridMap::from_rows(&[
            ".....#####",
            "####.#####",
            "####......",
            "#########.",
            "#########.",
        ])
        .unwrap();
        let index = VisibilityIndex::build(&map);
        let start = [id(&map, 0, 0)];
        let (s3, s4) = (id(&map, 2, 4), id(&map, 4, 9));
        // every watcher of s4 lies beyond s3's watchers
        let mut allowed = map.all_free();
        allowed.difference_with(index.watchers(s3));
        let reach = subgraph_bfs(&map, &start, &allowed);
        assert!(index.watchers(s4).is_disjoint(&reach));
        // but s3 can be seen without seeing s4
        assert!(!index.watchers(s3).is_subset(index.watchers(s4)));

        let mut u = FixedBitSet::with_capacity(map.num_free());
        u.insert(s3);
        u.insert(s4);
        assert_eq!(path_dominance(&u, &start, &map, &index).ones().collect::<Vec<_>>(), vec![s4]);
        assert_eq!(cell_dominance(&u, &index).count_ones(..), 2);
    }

    #[test]
    fn cpd_is_the_composition() {
        let map = crate::grid::generate_map(crate::grid::MapStyle::Maze, 15, 15, 0.0, 4).unwrap();
        let index = VisibilityIndex::build(&map);
        let start = [0];
        let mut u = map.all_free();
        u.difference_with(index.los(0));
        let (out, stats) = cpd(&u, &start, &map, &index);
        assert_eq!(out, path_dominance(&cell_dominance(&u, &index), &start, &map, &index));
        assert!(stats.after_pd <= stats.after_cd && stats.after_cd <= stats.initial_size);
        assert_eq!(stats.after_pd, out.count_ones(..));
    }
}
