//! Cells, collections of cells, the dihedral symmetry group and pattern embedding.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

/// A lattice point of the integer grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub x: i64,
    pub y: i64,
}

impl Vertex {
    pub const fn new(x: i64, y: i64) -> Self {
        Vertex { x, y }
    }

    /// Row-major key: rows bottom to top, left to right within a row.
    pub fn row_major_key(&self) -> (i64, i64) {
        (self.y, self.x)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Unit square `[x, x+1] x [y, y+1]`, identified by its lower-left corner.
///
/// Cells order by `(y, x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub x: i64,
    pub y: i64,
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Cell {
    pub const fn new(x: i64, y: i64) -> Self {
        Cell { x, y }
    }

    /// Lower-left corner.
    pub fn a(&self) -> Vertex {
        Vertex::new(self.x, self.y)
    }
    /// Upper-right corner.
    pub fn b(&self) -> Vertex {
        Vertex::new(self.x + 1, self.y + 1)
    }
    /// Upper-left corner.
    pub fn c(&self) -> Vertex {
        Vertex::new(self.x, self.y + 1)
    }
    /// Lower-right corner.
    pub fn d(&self) -> Vertex {
        Vertex::new(self.x + 1, self.y)
    }

    /// Corners in the order `a, b, c, d`.
    pub fn corners(&self) -> [Vertex; 4] {
        [self.a(), self.b(), self.c(), self.d()]
    }

    /// The four sides `{a,c}, {c,b}, {b,d}, {a,d}`.
    pub fn edges(&self) -> [Edge; 4] {
        [
            Edge::new(self.a(), self.c()),
            Edge::new(self.c(), self.b()),
            Edge::new(self.b(), self.d()),
            Edge::new(self.a(), self.d()),
        ]
    }

    pub fn translate(&self, dx: i64, dy: i64) -> Cell {
        Cell::new(self.x + dx, self.y + dy)
    }

    /// Cells sharing at least a corner (the king-move neighbourhood).
    pub fn king_neighbours(&self) -> impl Iterator<Item = Cell> + '_ {
        (-1..=1).flat_map(move |dy| {
            (-1..=1)
                .filter(move |&dx| dx != 0 || dy != 0)
                .map(move |dx| self.translate(dx, dy))
        })
    }

    /// Cells sharing a side.
    pub fn edge_neighbours(&self) -> [Cell; 4] {
        [
            self.translate(1, 0),
            self.translate(-1, 0),
            self.translate(0, 1),
            self.translate(0, -1),
        ]
    }

    pub fn shares_vertex(&self, other: &Cell) -> bool {
        (self.x - other.x).abs() <= 1 && (self.y - other.y).abs() <= 1
    }

    pub fn shares_edge(&self, other: &Cell) -> bool {
        (self.x - other.x).abs() + (self.y - other.y).abs() == 1
    }
}

/// An undirected side of a cell, stored with its endpoints sorted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(pub Vertex, pub Vertex);

impl Edge {
    pub fn new(u: Vertex, v: Vertex) -> Self {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }
}

/// A finite set of cells together with its vertex set.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CellCollection {
    cells: BTreeSet<Cell>,
    vertices: BTreeSet<Vertex>,
}

impl fmt::Debug for CellCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CellCollection{}",
            crate::encoding::format_collection(self)
        )
    }
}

impl fmt::Display for CellCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::encoding::format_collection(self))
    }
}

impl PartialOrd for CellCollection {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CellCollection {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cells.iter().cmp(other.cells.iter())
    }
}

impl FromIterator<Cell> for CellCollection {
    fn from_iter<T: IntoIterator<Item = Cell>>(iter: T) -> Self {
        Self::build(iter).0
    }
}

impl CellCollection {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a collection, merging duplicates. Returns the number of merged duplicates.
    pub fn build(cells: impl IntoIterator<Item = Cell>) -> (Self, usize) {
        let mut set = BTreeSet::new();
        let mut merged = 0;
        for c in cells {
            if !set.insert(c) {
                merged += 1;
            }
        }
        (Self::from_set(set), merged)
    }

    /// Convenience constructor from lower-left corners.
    pub fn from_coords(coords: &[(i64, i64)]) -> Self {
        coords.iter().map(|&(x, y)| Cell::new(x, y)).collect()
    }

    fn from_set(cells: BTreeSet<Cell>) -> Self {
        let vertices = cells.iter().flat_map(|c| c.corners()).collect();
        CellCollection { cells, vertices }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    /// Number of cells; equals the rank of the associated lattice.
    pub fn rank(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: &Cell) -> bool {
        self.cells.contains(cell)
    }

    /// Cells in `(y, x)` order.
    pub fn cells(&self) -> impl ExactSizeIterator<Item = &Cell> + DoubleEndedIterator + Clone {
        self.cells.iter()
    }

    pub fn cell_set(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn has_vertex(&self, v: &Vertex) -> bool {
        self.vertices.contains(v)
    }

    /// Vertices in `(x, y)` order.
    pub fn vertices(&self) -> impl ExactSizeIterator<Item = &Vertex> + Clone {
        self.vertices.iter()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Vertices in row-major order.
    pub fn vertices_row_major(&self) -> Vec<Vertex> {
        let mut v: Vec<Vertex> = self.vertices.iter().copied().collect();
        v.sort_by_key(|p| p.row_major_key());
        v
    }

    pub fn edges(&self) -> BTreeSet<Edge> {
        self.cells.iter().flat_map(|c| c.edges()).collect()
    }

    pub fn insert(&mut self, cell: Cell) -> bool {
        let fresh = self.cells.insert(cell);
        if fresh {
            self.vertices.extend(cell.corners());
        }
        fresh
    }

    pub fn without(&self, cell: &Cell) -> CellCollection {
        let mut set = self.cells.clone();
        set.remove(cell);
        Self::from_set(set)
    }

    pub fn with(&self, cell: Cell) -> CellCollection {
        let mut c = self.clone();
        c.insert(cell);
        c
    }

    pub fn union(&self, other: &CellCollection) -> CellCollection {
        Self::from_set(self.cells.union(&other.cells).copied().collect())
    }

    pub fn filter(&self, mut keep: impl FnMut(&Cell) -> bool) -> CellCollection {
        Self::from_set(self.cells.iter().copied().filter(|c| keep(c)).collect())
    }

    pub fn is_subset(&self, other: &CellCollection) -> bool {
        self.cells.is_subset(&other.cells)
    }

    pub fn translate(&self, dx: i64, dy: i64) -> CellCollection {
        Self::from_set(self.cells.iter().map(|c| c.translate(dx, dy)).collect())
    }

    /// Lower-left corner of the cell bounding box, if non-empty.
    pub fn min_corner(&self) -> Option<(i64, i64)> {
        let min_x = self.cells.iter().map(|c| c.x).min()?;
        let min_y = self.cells.iter().map(|c| c.y).min()?;
        Some((min_x, min_y))
    }

    /// Translates so that the bounding box starts at the origin.
    pub fn normalized(&self) -> CellCollection {
        match self.min_corner() {
            Some((x, y)) => self.translate(-x, -y),
            None => self.clone(),
        }
    }

    pub fn transform(&self, sym: Symmetry) -> CellCollection {
        Self::from_set(self.cells.iter().map(|c| sym.apply(c)).collect())
    }

    /// Connected through shared vertices. The empty collection counts as connected.
    pub fn is_weakly_connected(&self) -> bool {
        self.weak_components().len() <= 1
    }

    /// Components of the shared-vertex graph; these are exactly the vertex-disjoint parts.
    pub fn weak_components(&self) -> Vec<CellCollection> {
        self.components_by(|c| c.king_neighbours().collect())
    }

    /// Components of the shared-side graph.
    pub fn connected_components(&self) -> Vec<CellCollection> {
        self.components_by(|c| c.edge_neighbours().to_vec())
    }

    fn components_by(&self, nbrs: impl Fn(&Cell) -> Vec<Cell>) -> Vec<CellCollection> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for &start in &self.cells {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start]);
            while let Some(c) = queue.pop_front() {
                comp.insert(c);
                for n in nbrs(&c) {
                    if self.cells.contains(&n) && seen.insert(n) {
                        queue.push_back(n);
                    }
                }
            }
            out.push(Self::from_set(comp));
        }
        out
    }

    /// Row- and column-convex.
    pub fn is_convex(&self) -> bool {
        fn contiguous(mut xs: Vec<i64>) -> bool {
            xs.sort_unstable();
            xs.windows(2).all(|w| w[1] == w[0] + 1)
        }
        let mut rows: std::collections::BTreeMap<i64, Vec<i64>> = Default::default();
        let mut cols: std::collections::BTreeMap<i64, Vec<i64>> = Default::default();
        for c in &self.cells {
            rows.entry(c.y).or_default().push(c.x);
            cols.entry(c.x).or_default().push(c.y);
        }
        rows.into_values().all(contiguous) && cols.into_values().all(contiguous)
    }

    /// Deletions that keep the collection weakly connected.
    pub fn connected_deletions(&self) -> Vec<(Cell, CellCollection)> {
        self.cells
            .iter()
            .map(|c| (*c, self.without(c)))
            .filter(|(_, rest)| rest.is_weakly_connected())
            .collect()
    }
}

/// The vertex-disjoint parts of a collection.
pub fn vertex_disjoint_split(c: &CellCollection) -> Vec<CellCollection> {
    c.weak_components()
}

/// An element of the dihedral group of the square acting on the grid.
///
/// Encoded as an integer matrix acting on doubled cell centres.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Symmetry {
    m: [[i64; 2]; 2],
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry {
        m: [[1, 0], [0, 1]],
    };

    /// All eight elements; the identity comes first.
    pub fn all() -> [Symmetry; 8] {
        let mats = [
            [[1, 0], [0, 1]],
            [[0, -1], [1, 0]],
            [[-1, 0], [0, -1]],
            [[0, 1], [-1, 0]],
            [[-1, 0], [0, 1]],
            [[1, 0], [0, -1]],
            [[0, 1], [1, 0]],
            [[0, -1], [-1, 0]],
        ];
        mats.map(|m| Symmetry { m })
    }

    pub fn apply(&self, c: &Cell) -> Cell {
        let (cx, cy) = (2 * c.x + 1, 2 * c.y + 1);
        let nx = self.m[0][0] * cx + self.m[0][1] * cy;
        let ny = self.m[1][0] * cx + self.m[1][1] * cy;
        Cell::new((nx - 1).div_euclid(2), (ny - 1).div_euclid(2))
    }

    /// Image of a grid point.
    pub fn apply_vertex(&self, v: &Vertex) -> Vertex {
        Vertex::new(
            self.m[0][0] * v.x + self.m[0][1] * v.y,
            self.m[1][0] * v.x + self.m[1][1] * v.y,
        )
    }
}

/// Which symmetries a pattern search allows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum SymmetryMode {
    TranslationOnly,
    #[default]
    Dihedral,
}

/// A small collection used as a sub-configuration to search for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub cells: CellCollection,
    pub mode: SymmetryMode,
}

impl Pattern {
    pub fn new(cells: CellCollection, mode: SymmetryMode) -> Self {
        Pattern {
            cells: cells.normalized(),
            mode,
        }
    }

    /// The 2x2 block.
    pub fn square_tetromino() -> Self {
        Self::new(
            CellCollection::from_coords(&[(0, 0), (1, 0), (0, 1), (1, 1)]),
            SymmetryMode::Dihedral,
        )
    }

    /// The plus-shaped pentomino.
    pub fn x_pentomino() -> Self {
        Self::new(
            CellCollection::from_coords(&[(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)]),
            SymmetryMode::Dihedral,
        )
    }

    /// Distinct images of the pattern under the allowed symmetries, normalized.
    pub fn images(&self) -> Vec<CellCollection> {
        let syms: Vec<Symmetry> = match self.mode {
            SymmetryMode::TranslationOnly => vec![Symmetry::IDENTITY],
            SymmetryMode::Dihedral => Symmetry::all().to_vec(),
        };
        let mut out: Vec<CellCollection> = Vec::new();
        for s in syms {
            let img = self.cells.transform(s).normalized();
            if !out.contains(&img) {
                out.push(img);
            }
        }
        out
    }
}

/// Every distinct placement of `pattern` inside `c`.
pub fn pattern_embeddings(c: &CellCollection, pattern: &Pattern) -> Vec<CellCollection> {
    let mut found: BTreeSet<CellCollection> = BTreeSet::new();
    for img in pattern.images() {
        let Some(anchor) = img.cells().next().copied() else {
            continue;
        };
        for target in c.cells() {
            let (dx, dy) = (target.x - anchor.x, target.y - anchor.y);
            if img.cells().all(|p| c.contains(&p.translate(dx, dy))) {
                found.insert(img.translate(dx, dy));
            }
        }
    }
    found.into_iter().collect()
}

pub fn contains_pattern(c: &CellCollection, pattern: &Pattern) -> bool {
    !pattern_embeddings(c, pattern).is_empty()
}

/// Lexicographically least normalized image under the dihedral group.
pub fn canonical_form(c: &CellCollection) -> CellCollection {
    Symmetry::all()
        .iter()
        .map(|s| c.transform(*s).normalized())
        .min()
        .unwrap_or_default()
}
