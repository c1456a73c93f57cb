//! Makespan refinement for an existing solution: the most expensive agent
//! re-plans alone over the cells nobody else covers.

use fixedbitset::FixedBitSet;

use crate::grid::{Cell, ProblemInstance};
use crate::search::{solve_with_index, SolveError, SolverConfig};
use crate::visibility::VisibilityIndex;

/// Cells of U not visible from any path cell of the agents other than `agent`.
pub fn extract_responsibility(
    paths: &[Vec<Cell>],
    agent: usize,
    problem: &ProblemInstance,
    index: &VisibilityIndex,
) -> FixedBitSet {
    let map = problem.map();
    let mut r = problem.unseen().clone();
    let others = paths
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != agent)
        .flat_map(|(_, p)| p.iter().filter_map(|&c| map.id(c)));
    r.difference_with(&index.seen_from(others));
    r
}

/// Result of [`improve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Improvement {
    pub paths: Vec<Vec<Cell>>,
    pub costs: Vec<u32>,
    pub makespan: u32,
    /// Single-agent subproblems solved.
    pub rounds: usize,
}

/// Repeatedly re-solves the max-cost agent's subproblem with `inner`
/// (normally cp3) until that agent has already been re-planned once.
///
/// Replacement happens when the new path is no longer than the old one, so
/// the makespan never grows. A subproblem that runs out of time ends the
/// loop with the best paths so far.
pub fn improve(
    paths: &[Vec<Cell>],
    problem: &ProblemInstance,
    index: &VisibilityIndex,
    inner: &SolverConfig,
) -> Improvement {
    let mut paths = paths.to_vec();
    let mut costs: Vec<u32> = paths.iter().map(|p| p.len().saturating_sub(1) as u32).collect();
    let mut optimized = vec![false; paths.len()];
    let mut rounds = 0;
    while let Some(worst) = (0..costs.len()).max_by_key(|&k| (costs[k], std::cmp::Reverse(k))) {
        if optimized[worst] {
            break;
        }
        let r = extract_responsibility(&paths, worst, problem, index);
        let sub = ProblemInstance::with_unseen_ids(problem.shared_map(), vec![problem.starts()[worst]], r)
            .expect("starts were validated by the outer problem");
        rounds += 1;
        match solve_with_index(&sub, index, inner) {
            Ok(s) if s.makespan <= costs[worst] => {
                costs[worst] = s.makespan;
                paths[worst] = s.paths.into_iter().next().expect("one agent");
            }
            Ok(_) => {}
            Err(SolveError::Timeout) | Err(SolveError::Unsolvable) => break,
        }
        optimized[worst] = true;
    }
    let makespan = costs.iter().copied().max().unwrap_or(0);
    Improvement { paths, costs, makespan, rounds }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridMap;
    use std::sync::Arc;

    fn problem(rows: &[&str], starts: &[(usize, usize)]) -> (ProblemInstance, VisibilityIndex) {
        let map = Arc::new(GridMap::from_rows(rows).unwrap());
        let index = VisibilityIndex::build(&map);
        let p = ProblemInstance::new(map, starts.iter().map(|&(r, c)| Cell::new(r, c)).collect()).unwrap();
        (p, index)
    }

    fn cells(list: &[(usize, usize)]) -> Vec<Cell> {
        list.iter().map(|&(r, c)| Cell::new(r, c)).collect()
    }

    #[test]
    fn single_agent_responsibility_is_everything() {
        let (p, index) = problem(&["...", "..."], &[(0, 0)]);
        let r = extract_responsibility(&[cells(&[(0, 0)])], 0, &p, &index);
        assert_eq!(&r, p.unseen());
    }

    #[test]
    fn others_cover_everything() {
        let (p, index) = problem(&["....", "...."], &[(0, 0), (1, 3)]);
        let paths = vec![cells(&[(0, 0), (0, 1)]), cells(&[(1, 3)])];
        assert_eq!(extract_responsibility(&paths, 0, &p, &index).count_ones(..), 0);
        let out = improve(&paths, &p, &index, &SolverConfig::cp3());
        assert_eq!(out.paths[0], cells(&[(0, 0)]));
        assert_eq!(out.makespan, 0);
    }

    #[test]
    fn detour_is_straightened() {
        // pocket at column 2; the given path wanders right before entering it
        let (p, index) = problem(&[".....", "##.##", "##.##", "##.##"], &[(0, 0)]);
        let wander = cells(&[(0, 0), (0, 1), (0, 2), (0, 3), (0, 4), (0, 3), (0, 2)]);
        let out = improve(&[wander], &p, &index, &SolverConfig::cp3());
        assert_eq!(out.makespan, 2);
        assert_eq!(out.rounds, 1);
    }

    #[test]
    fn never_worse() {
        let (p, index) = problem(&[".........", "#.#####.#", "#.#####.#", "#.#####.#"], &[(0, 0), (0, 8)]);
        let paths = vec![cells(&[(0, 0), (0, 1)]), cells(&[(0, 8), (0, 7)])];
        let out = improve(&paths, &p, &index, &SolverConfig::cp3());
        assert_eq!(out.makespan, 1);
        assert!(out.rounds <= 2);
    }
}
