//! Grid maps, MovingAI ingestion, map generators and start sampling.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GridError {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("row {row} has {found} cells, expected {expected}")]
    RowLength {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("expected {expected} map rows, found {found}")]
    MissingRows { expected: usize, found: usize },
    #[error("unknown map character {ch:?} at row {row}, col {col}")]
    UnknownChar { row: usize, col: usize, ch: char },
    #[error("map has no free cells")]
    NoFreeCells,
    #[error("{width}x{height} is too small for a {style} map")]
    TooSmall {
        style: MapStyle,
        width: usize,
        height: usize,
    },
    #[error("obstacle density {0} outside [0, 1)")]
    BadDensity(f64),
    #[error("map has no free border cell")]
    NoBorderCell,
    #[error("cell ({}, {}) is not a free cell of the map", .0.row, .0.col)]
    NotFree(Cell),
    #[error("a problem needs at least one agent")]
    NoAgents,
}

/// A grid coordinate, row 0 at the top.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    #[serde(rename = "r")]
    pub row: usize,
    #[serde(rename = "c")]
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

const NO_ID: u32 = u32::MAX;

/// Four-connected occupancy grid. Free cells carry dense ids in row-major
/// order; every free cell belongs to a single connected component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridMap {
    width: usize,
    height: usize,
    occupancy: Vec<bool>,
    free_cells: Vec<Cell>,
    ids: Vec<u32>,
    adjacency: Vec<Vec<u32>>,
    demoted: usize,
}

impl GridMap {
    /// Builds a map from a row-major occupancy lattice (`true` = free).
    /// Free cells outside the largest component are turned into obstacles.
    pub fn from_occupancy(width: usize, height: usize, occupancy: Vec<bool>) -> Result<Self, GridError> {
        assert_eq!(occupancy.len(), width * height, "occupancy size mismatch");
        let (occupancy, demoted) = keep_largest_component(width, height, occupancy);

        let mut free_cells = Vec::new();
        let mut ids = vec![NO_ID; width * height];
        for row in 0..height {
            for col in 0..width {
                let idx = row * width + col;
                if occupancy[idx] {
                    ids[idx] = free_cells.len() as u32;
                    free_cells.push(Cell::new(row, col));
                }
            }
        }
        if free_cells.is_empty() {
            return Err(GridError::NoFreeCells);
        }

        let mut map = GridMap {
            width,
            height,
            occupancy,
            free_cells,
            ids,
            adjacency: Vec::new(),
            demoted,
        };
        map.adjacency = map
            .free_cells
            .iter()
            .map(|&c| map.neighbor_cells(c).map(|n| map.ids[n.row * width + n.col]).collect())
            .collect();
        Ok(map)
    }

    /// Parses a map from ASCII rows, `'.'` free and anything else blocked.
    /// Convenient for fixtures.
    pub fn from_rows(rows: &[&str]) -> Result<Self, GridError> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.chars().count());
        let mut occupancy = Vec::with_capacity(width * height);
        for (row, line) in rows.iter().enumerate() {
            let found = line.chars().count();
            if found != width {
                return Err(GridError::RowLength { row, expected: width, found });
            }
            occupancy.extend(line.chars().map(|ch| ch == '.'));
        }
        Self::from_occupancy(width, height, occupancy)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Number of free cells that were demoted to obstacles because they were
    /// outside the largest four-connected component.
    pub fn demoted(&self) -> usize {
        self.demoted
    }

    pub fn in_bounds(&self, cell: Cell) -> bool {
        cell.row < self.height && cell.col < self.width
    }

    pub fn is_free(&self, cell: Cell) -> bool {
        self.in_bounds(cell) && self.occupancy[cell.row * self.width + cell.col]
    }

    /// Free cells in row-major order; a cell's position is its id.
    pub fn free_cells(&self) -> &[Cell] {
        &self.free_cells
    }

    pub fn num_free(&self) -> usize {
        self.free_cells.len()
    }

    pub fn id(&self, cell: Cell) -> Option<usize> {
        if !self.in_bounds(cell) {
            return None;
        }
        match self.ids[cell.row * self.width + cell.col] {
            NO_ID => None,
            id => Some(id as usize),
        }
    }

    pub fn cell(&self, id: usize) -> Cell {
        self.free_cells[id]
    }

    /// Free four-way neighbors of a free cell, by id.
    pub fn neighbor_ids(&self, id: usize) -> &[u32] {
        &self.adjacency[id]
    }

    fn neighbor_cells(&self, c: Cell) -> impl Iterator<Item = Cell> + '_ {
        let up = c.row.checked_sub(1).map(|r| Cell::new(r, c.col));
        let down = Some(Cell::new(c.row + 1, c.col));
        let left = c.col.checked_sub(1).map(|col| Cell::new(c.row, col));
        let right = Some(Cell::new(c.row, c.col + 1));
        [up, down, left, right].into_iter().flatten().filter(|&n| self.is_free(n))
    }

    pub fn is_border(&self, cell: Cell) -> bool {
        cell.row == 0 || cell.col == 0 || cell.row + 1 == self.height || cell.col + 1 == self.width
    }

    /// Bitset over free-cell ids with every bit set.
    pub fn all_free(&self) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.num_free());
        set.insert_range(..);
        set
    }

    /// MovingAI text, `.` for free and `@` for obstacles.
    pub fn to_movingai(&self) -> String {
        let mut out = format!("type octile\nheight {}\nwidth {}\nmap\n", self.height, self.width);
        for row in 0..self.height {
            for col in 0..self.width {
                out.push(if self.occupancy[row * self.width + col] { '.' } else { '@' });
            }
            out.push('\n');
        }
        out
    }
}

/// Parses a MovingAI `.map` file.
pub fn parse_map(text: &str) -> Result<GridMap, GridError> {
    let mut lines = text.lines().map(|l| l.trim_end_matches('\r'));

    let mut header = |key: &str| -> Result<String, GridError> {
        let line = lines
            .next()
            .ok_or_else(|| GridError::MalformedHeader(format!("missing `{key}` line")))?;
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some(k) if k == key => Ok(parts.collect::<Vec<_>>().join(" ")),
            _ => Err(GridError::MalformedHeader(format!("expected `{key}`, found {line:?}"))),
        }
    };

    header("type")?;
    let height = parse_dim(&header("height")?, "height")?;
    let width = parse_dim(&header("width")?, "width")?;
    let rest = header("map")?;
    if !rest.is_empty() {
        return Err(GridError::MalformedHeader(format!("unexpected text after `map`: {rest:?}")));
    }

    let mut occupancy = Vec::with_capacity(width * height);
    for row in 0..height {
        let line = lines.next().ok_or(GridError::MissingRows { expected: height, found: row })?;
        let found = line.chars().count();
        if found != width {
            return Err(GridError::RowLength { row, expected: width, found });
        }
        for (col, ch) in line.chars().enumerate() {
            occupancy.push(match ch {
                '.' | 'G' => true,
                '@' | 'T' | 'O' => false,
                _ => return Err(GridError::UnknownChar { row, col, ch }),
            });
        }
    }
    if let Some(extra) = lines.find(|l| !l.trim().is_empty()) {
        return Err(GridError::RowLength { row: height, expected: 0, found: extra.chars().count() });
    }
    GridMap::from_occupancy(width, height, occupancy)
}

fn parse_dim(value: &str, key: &str) -> Result<usize, GridError> {
    match value.parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(GridError::MalformedHeader(format!("bad {key} {value:?}"))),
    }
}

/// Demotes every free cell outside the largest four-connected component.
/// Equal-size components are resolved in favour of the one holding the
/// row-major first free cell.
fn keep_largest_component(width: usize, height: usize, mut occupancy: Vec<bool>) -> (Vec<bool>, usize) {
    let mut label = vec![usize::MAX; width * height];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..width * height {
        if !occupancy[start] || label[start] != usize::MAX {
            continue;
        }
        let comp = sizes.len();
        let mut size = 0;
        label[start] = comp;
        queue.push_back(start);
        while let Some(idx) = queue.pop_front() {
            size += 1;
            let (r, c) = (idx / width, idx % width);
            let mut visit = |n: usize| {
                if occupancy[n] && label[n] == usize::MAX {
                    label[n] = comp;
                    queue.push_back(n);
                }
            };
            if r > 0 {
                visit(idx - width);
            }
            if r + 1 < height {
                visit(idx + width);
            }
            if c > 0 {
                visit(idx - 1);
            }
            if c + 1 < width {
                visit(idx + 1);
            }
        }
        sizes.push(size);
    }

    let Some(keep) = (0..sizes.len()).fold(None, |best: Option<usize>, comp| match best {
        Some(b) if sizes[b] >= sizes[comp] => Some(b),
        _ => Some(comp),
    }) else {
        return (occupancy, 0);
    };
    let mut demoted = 0;
    for (idx, free) in occupancy.iter_mut().enumerate() {
        if *free && label[idx] != keep {
            *free = false;
            demoted += 1;
        }
    }
    (occupancy, demoted)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapStyle {
    Random,
    Room,
    Maze,
}

impl fmt::Display for MapStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapStyle::Random => "random",
            MapStyle::Room => "room",
            MapStyle::Maze => "maze",
        })
    }
}

impl FromStr for MapStyle {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "random" => Ok(MapStyle::Random),
            "room" => Ok(MapStyle::Room),
            "maze" => Ok(MapStyle::Maze),
            other => Err(format!("unknown map style {other:?} (random, room, maze)")),
        }
    }
}

/// Deterministically generates a connected map.
///
/// * `Random` drops `floor(density * width * height)` obstacles uniformly and
///   keeps the largest component.
/// * `Room` tiles 3x3 rooms separated by one-cell walls with one door per
///   shared wall. Rooms start at the top-left corner so the outer rim is open.
/// * `Maze` carves a recursive-backtracker maze on the even-coordinate
///   lattice, so corridors touch the top and left edges and border starts exist.
///
/// `density` is only consulted for `Random`.
pub fn generate_map(style: MapStyle, width: usize, height: usize, density: f64, seed: u64) -> Result<GridMap, GridError> {
    if width < 3 || height < 3 {
        return Err(GridError::TooSmall { style, width, height });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let occupancy = match style {
        MapStyle::Random => {
            if !(0.0..1.0).contains(&density) {
                return Err(GridError::BadDensity(density));
            }
            let total = width * height;
            let obstacles = (density * total as f64).floor() as usize;
            let mut order: Vec<usize> = (0..total).collect();
            order.shuffle(&mut rng);
            let mut occ = vec![true; total];
            for &idx in &order[..obstacles] {
                occ[idx] = false;
            }
            occ
        }
        MapStyle::Room => room_lattice(width, height, &mut rng),
        MapStyle::Maze => maze_lattice(width, height, &mut rng),
    };
    GridMap::from_occupancy(width, height, occupancy)
}

const ROOM: usize = 3;
const ROOM_PITCH: usize = ROOM + 1;

fn room_lattice(width: usize, height: usize, rng: &mut ChaCha8Rng) -> Vec<bool> {
    let is_wall = |i: usize| i % ROOM_PITCH == ROOM;
    let mut occ = vec![false; width * height];
    for r in 0..height {
        for c in 0..width {
            occ[r * width + c] = !is_wall(r) && !is_wall(c);
        }
    }
    let room_rows = height.div_ceil(ROOM_PITCH);
    let room_cols = width.div_ceil(ROOM_PITCH);
    for i in 0..room_rows {
        for j in 0..room_cols {
            let (top, left) = (i * ROOM_PITCH, j * ROOM_PITCH);
            // door to the room on the right
            let wall_col = left + ROOM;
            if wall_col + 1 < width {
                let span = ROOM.min(height - top);
                let r = top + rng.gen_range(0..span);
                occ[r * width + wall_col] = true;
            }
            // door to the room below
            let wall_row = top + ROOM;
            if wall_row + 1 < height {
                let span = ROOM.min(width - left);
                let c = left + rng.gen_range(0..span);
                occ[wall_row * width + c] = true;
            }
        }
    }
    occ
}

fn maze_lattice(width: usize, height: usize, rng: &mut ChaCha8Rng) -> Vec<bool> {
    let mut occ = vec![false; width * height];
    let nodes_r = height.div_ceil(2);
    let nodes_c = width.div_ceil(2);
    let at = |i: usize, j: usize| 2 * i * width + 2 * j;
    let mut visited = vec![false; nodes_r * nodes_c];
    let mut stack = vec![(0usize, 0usize)];
    visited[0] = true;
    occ[at(0, 0)] = true;
    while let Some(&(i, j)) = stack.last() {
        let mut options = Vec::with_capacity(4);
        if i > 0 && !visited[(i - 1) * nodes_c + j] {
            options.push((i - 1, j));
        }
        if i + 1 < nodes_r && !visited[(i + 1) * nodes_c + j] {
            options.push((i + 1, j));
        }
        if j > 0 && !visited[i * nodes_c + j - 1] {
            options.push((i, j - 1));
        }
        if j + 1 < nodes_c && !visited[i * nodes_c + j + 1] {
            options.push((i, j + 1));
        }
        let Some(&(ni, nj)) = options.choose(rng) else {
            stack.pop();
            continue;
        };
        visited[ni * nodes_c + nj] = true;
        occ[at(ni, nj)] = true;
        // knock out the wall between the two lattice nodes
        occ[(i + ni) * width + (j + nj)] = true;
        stack.push((ni, nj));
    }
    occ
}

/// Samples `m` start cells uniformly with replacement from the free border
/// cells of `map`.
pub fn sample_border_starts(map: &GridMap, m: usize, seed: u64) -> Result<Vec<Cell>, GridError> {
    let border: Vec<Cell> = map.free_cells().iter().copied().filter(|&c| map.is_border(c)).collect();
    if border.is_empty() {
        return Err(GridError::NoBorderCell);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..m).map(|_| border[rng.gen_range(0..border.len())]).collect())
}

/// The tuple (M, C, U, S, N, L, O): map (C, N), starts S, and the set U of
/// cells that must be seen. Objective is always makespan; L is supplied by
/// [`crate::visibility::VisibilityIndex`].
#[derive(Debug, Clone)]
pub struct ProblemInstance {
    map: Arc<GridMap>,
    starts: Vec<Cell>,
    unseen: FixedBitSet,
}

impl ProblemInstance {
    /// Problem with U = C.
    pub fn new(map: Arc<GridMap>, starts: Vec<Cell>) -> Result<Self, GridError> {
        let unseen = map.all_free();
        Self::with_unseen_ids(map, starts, unseen)
    }

    pub fn with_unseen(map: Arc<GridMap>, starts: Vec<Cell>, unseen: &[Cell]) -> Result<Self, GridError> {
        let mut set = FixedBitSet::with_capacity(map.num_free());
        for &c in unseen {
            set.insert(map.id(c).ok_or(GridError::NotFree(c))?);
        }
        Self::with_unseen_ids(map, starts, set)
    }

    /// `unseen` is a bitset over free-cell ids.
    pub fn with_unseen_ids(map: Arc<GridMap>, starts: Vec<Cell>, unseen: FixedBitSet) -> Result<Self, GridError> {
        if starts.is_empty() {
            return Err(GridError::NoAgents);
        }
        if let Some(&bad) = starts.iter().find(|&&s| !map.is_free(s)) {
            return Err(GridError::NotFree(bad));
        }
        assert_eq!(unseen.len(), map.num_free(), "unseen bitset must span the free cells");
        Ok(ProblemInstance { map, starts, unseen })
    }

    pub fn map(&self) -> &GridMap {
        &self.map
    }

    pub fn shared_map(&self) -> Arc<GridMap> {
        Arc::clone(&self.map)
    }

    pub fn num_agents(&self) -> usize {
        self.starts.len()
    }

    pub fn starts(&self) -> &[Cell] {
        &self.starts
    }

    pub fn start_ids(&self) -> Vec<usize> {
        self.starts.iter().map(|&s| self.map.id(s).expect("validated start")).collect()
    }

    pub fn unseen(&self) -> &FixedBitSet {
        &self.unseen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flood_count(map: &GridMap) -> usize {
        let mut seen = vec![false; map.num_free()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 0;
        while let Some(id) = queue.pop_front() {
            count += 1;
            for &n in map.neighbor_ids(id) {
                if !seen[n as usize] {
                    seen[n as usize] = true;
                    queue.push_back(n as usize);
                }
            }
        }
        count
    }

    #[test]
    fn parses_minimal_file() {
        let map = parse_map("type octile\nheight 1\nwidth 3\nmap\n...").unwrap();
        assert_eq!((map.height(), map.width(), map.num_free()), (1, 3, 3));
        assert_eq!(map.demoted(), 0);
    }

    #[test]
    fn disconnected_pieces_are_demoted() {
        let map = parse_map("type octile\nheight 1\nwidth 3\nmap\n.@.\n").unwrap();
        assert_eq!(map.num_free(), 1);
        assert_eq!(map.demoted(), 1);
        // equal sizes keep the row-major first component
        assert!(map.is_free(Cell::new(0, 0)));
    }

    #[test]
    fn larger_component_wins() {
        let map = parse_map("type octile\nheight 2\nwidth 4\nmap\n.@..\n@@..\n").unwrap();
        assert_eq!(map.num_free(), 4);
        assert!(!map.is_free(Cell::new(0, 0)));
    }

    #[test]
    fn accepts_all_movingai_symbols() {
        let map = parse_map("type octile\r\nheight 2\r\nwidth 3\r\nmap\r\n.G.\r\n@TO\r\n").unwrap();
        assert_eq!(map.num_free(), 3);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_map("height 1\nwidth 3\nmap\n..."), Err(GridError::MalformedHeader(_))));
        assert!(matches!(
            parse_map("type octile\nheight 2\nwidth 3\nmap\n...\n.."),
            Err(GridError::RowLength { row: 1, expected: 3, found: 2 })
        ));
        assert!(matches!(
            parse_map("type octile\nheight 2\nwidth 3\nmap\n..."),
            Err(GridError::MissingRows { expected: 2, found: 1 })
        ));
        assert_eq!(
            parse_map("type octile\nheight 1\nwidth 3\nmap\n.x."),
            Err(GridError::UnknownChar { row: 0, col: 1, ch: 'x' })
        );
        assert_eq!(parse_map("type octile\nheight 1\nwidth 2\nmap\n@@"), Err(GridError::NoFreeCells));
        assert!(matches!(parse_map("type octile\nheight 0\nwidth 2\nmap\n"), Err(GridError::MalformedHeader(_))));
    }

    #[test]
    fn serializer_round_trips() {
        let map = generate_map(MapStyle::Room, 11, 9, 0.0, 3).unwrap();
        let again = parse_map(&map.to_movingai()).unwrap();
        assert_eq!(map, again);
    }

    #[test]
    fn zero_density_random_map_is_open() {
        let map = generate_map(MapStyle::Random, 10, 10, 0.0, 99).unwrap();
        assert_eq!(map.num_free(), 100);
    }

    #[test]
    fn generation_is_deterministic() {
        for style in [MapStyle::Random, MapStyle::Room, MapStyle::Maze] {
            let a = generate_map(style, 32, 32, 0.2, 17).unwrap();
            let b = generate_map(style, 32, 32, 0.2, 17).unwrap();
            assert_eq!(a, b, "{style}");
        }
        let a = generate_map(MapStyle::Random, 32, 32, 0.2, 1).unwrap();
        let b = generate_map(MapStyle::Random, 32, 32, 0.2, 2).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn generated_maps_are_connected() {
        for seed in 0..10 {
            for style in [MapStyle::Random, MapStyle::Room, MapStyle::Maze] {
                let map = generate_map(style, 17, 13, 0.35, seed).unwrap();
                assert_eq!(flood_count(&map), map.num_free(), "{style} seed {seed}");
            }
        }
    }

    #[test]
    fn maze_obstacle_fraction() {
        for seed in 0..20 {
            let map = generate_map(MapStyle::Maze, 33, 33, 0.0, seed).unwrap();
            let frac = 1.0 - map.num_free() as f64 / (33.0 * 33.0);
            assert!((0.4..=0.6).contains(&frac), "seed {seed}: {frac}");
            // a perfect maze on the lattice is a spanning tree of 17x17 nodes
            assert_eq!(map.num_free(), 17 * 17 + (17 * 17 - 1));
            assert!(map.is_free(Cell::new(0, 0)) && map.is_free(Cell::new(32, 32)));
        }
    }

    #[test]
    fn room_layout() {
        let map = generate_map(MapStyle::Room, 7, 7, 0.0, 0).unwrap();
        // 4 rooms of 9 cells plus 4 doors
        assert_eq!(map.num_free(), 4 * 9 + 4);
        assert!(!map.is_free(Cell::new(3, 3)));
    }

    #[test]
    fn too_small_dims() {
        assert!(matches!(generate_map(MapStyle::Maze, 2, 10, 0.0, 0), Err(GridError::TooSmall { .. })));
        assert!(matches!(generate_map(MapStyle::Random, 5, 5, 1.0, 0), Err(GridError::BadDensity(_))));
    }

    #[test]
    fn border_starts() {
        let open = GridMap::from_rows(&["...", "...", "..."]).unwrap();
        let starts = sample_border_starts(&open, 1, 5).unwrap();
        assert_ne!(starts[0], Cell::new(1, 1));

        let forced = GridMap::from_rows(&[".##", "###", "###"]).unwrap();
        let border: Vec<_> = forced.free_cells().iter().filter(|&&c| forced.is_border(c)).collect();
        assert_eq!(border, vec![&Cell::new(0, 0)]);
        assert_eq!(sample_border_starts(&forced, 3, 1).unwrap(), vec![Cell::new(0, 0); 3]);

        let ten = generate_map(MapStyle::Random, 10, 10, 0.0, 0).unwrap();
        assert_eq!(sample_border_starts(&ten, 2, 8).unwrap(), sample_border_starts(&ten, 2, 8).unwrap());

        let sealed = GridMap::from_rows(&["###", "#.#", "###"]).unwrap();
        assert_eq!(sample_border_starts(&sealed, 1, 0), Err(GridError::NoBorderCell));
    }

    #[test]
    fn problem_validation() {
        let map = Arc::new(GridMap::from_rows(&["..#", "..."]).unwrap());
        assert!(matches!(ProblemInstance::new(map.clone(), vec![]), Err(GridError::NoAgents)));
        assert_eq!(
            ProblemInstance::new(map.clone(), vec![Cell::new(0, 2)]).unwrap_err(),
            GridError::NotFree(Cell::new(0, 2))
        );
        let p = ProblemInstance::new(map, vec![Cell::new(1, 2)]).unwrap();
        assert_eq!(p.unseen().count_ones(..), 5);
    }
}
