//! Admissible sets, the primes `P_W`, minimal primes and the unmixed classification.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{contains_pattern, Cell, CellCollection, Pattern, Vertex};
use crate::ideals::{lattice_ideal_basis, CollectionRing};
use crate::polyalg::{groebner_basis, Budget, GroebnerBasis, Ideal, Monomial, Polynomial};

/// A vertex set `W` of a collection such that every cell either misses `W`
/// or meets it in a set containing a side of the cell.
///
/// Ordered by size, then lexicographically on the sorted vertex list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AdmissibleSet {
    vertices: Vec<Vertex>,
}

impl Ord for AdmissibleSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vertices
            .len()
            .cmp(&other.vertices.len())
            .then_with(|| self.vertices.cmp(&other.vertices))
    }
}

impl PartialOrd for AdmissibleSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl AdmissibleSet {
    /// Does not check admissibility; see [`is_admissible`].
    pub fn new(mut vertices: Vec<Vertex>) -> Self {
        vertices.sort();
        vertices.dedup();
        AdmissibleSet { vertices }
    }

    pub fn empty() -> Self {
        AdmissibleSet {
            vertices: Vec::new(),
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.vertices.binary_search(v).is_ok()
    }

    pub fn is_subset(&self, other: &AdmissibleSet) -> bool {
        self.vertices.iter().all(|v| other.contains(v))
    }
}

fn cell_ok(cell: &Cell, in_w: impl Fn(&Vertex) -> bool) -> bool {
    // Corners in cyclic order a, d, b, c; consecutive corners share a side.
    let ring = [cell.a(), cell.d(), cell.b(), cell.c()];
    (0..4).all(|k| !in_w(&ring[k]) || in_w(&ring[(k + 1) % 4]) || in_w(&ring[(k + 3) % 4]))
}

/// Whether `w` is admissible for `c`. Vertices outside `V(c)` are an error.
pub fn is_admissible(c: &CellCollection, w: &[Vertex]) -> Result<bool> {
    if let Some(v) = w.iter().find(|v| !c.has_vertex(v)) {
        return Err(Error::InvalidAdmissibleSet(format!(
            "vertex {v} is not a vertex of the collection"
        )));
    }
    Ok(c.cells().all(|cell| cell_ok(cell, |v| w.contains(v))))
}

/// The cells of `c` disjoint from `w`.
pub fn surviving_cells(c: &CellCollection, w: &AdmissibleSet) -> CellCollection {
    c.filter(|cell| cell.corners().iter().all(|v| !w.contains(v)))
}

/// Height of `P_W`: `|W| + |C_W|`.
pub fn admissible_height(c: &CellCollection, w: &AdmissibleSet) -> usize {
    w.len() + surviving_cells(c, w).len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum State {
    Free,
    In,
    Out,
}

struct Search<'a> {
    vertices: Vec<Vertex>,
    cells_of: Vec<Vec<usize>>,
    cells: Vec<[usize; 4]>,
    state: Vec<State>,
    undecided_in_cell: Vec<u8>,
    in_count: usize,
    closed_out_cells: usize,
    bound: usize,
    visit: &'a mut dyn FnMut(&[Vertex], usize) -> Option<usize>,
}

impl Search<'_> {
    fn new<'a>(
        c: &CellCollection,
        bound: usize,
        visit: &'a mut dyn FnMut(&[Vertex], usize) -> Option<usize>,
    ) -> Search<'a> {
        let vertices = c.vertices_row_major();
        let index: HashMap<Vertex, usize> =
            vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut cells_of = vec![Vec::new(); vertices.len()];
        let mut cells = Vec::new();
        for (k, cell) in c.cells().enumerate() {
            // Cyclic corner order a, d, b, c.
            let ring = [cell.a(), cell.d(), cell.b(), cell.c()].map(|v| index[&v]);
            for &v in &ring {
                cells_of[v].push(k);
            }
            cells.push(ring);
        }
        let n = vertices.len();
        Search {
            vertices,
            cells_of,
            undecided_in_cell: vec![4; cells.len()],
            cells,
            state: vec![State::Free; n],
            in_count: 0,
            closed_out_cells: 0,
            bound,
            visit,
        }
    }

    fn violates(&self, cell: usize) -> bool {
        let ring = &self.cells[cell];
        (0..4).any(|k| {
            self.state[ring[k]] == State::In
                && self.state[ring[(k + 1) % 4]] == State::Out
                && self.state[ring[(k + 3) % 4]] == State::Out
        })
    }

    fn assign(&mut self, v: usize, s: State) -> bool {
        self.state[v] = s;
        if s == State::In {
            self.in_count += 1;
        }
        let mut ok = true;
        for &k in &self.cells_of[v] {
            self.undecided_in_cell[k] -= 1;
            if self.undecided_in_cell[k] == 0
                && self.cells[k].iter().all(|&u| self.state[u] == State::Out)
            {
                self.closed_out_cells += 1;
            }
            ok &= !self.violates(k);
        }
        ok
    }

    fn unassign(&mut self, v: usize) {
        for &k in &self.cells_of[v] {
            if self.undecided_in_cell[k] == 0
                && self.cells[k].iter().all(|&u| self.state[u] == State::Out)
            {
                self.closed_out_cells -= 1;
            }
            self.undecided_in_cell[k] += 1;
        }
        if self.state[v] == State::In {
            self.in_count -= 1;
        }
        self.state[v] = State::Free;
    }

    fn run(&mut self, v: usize) {
        if self.in_count + self.closed_out_cells > self.bound {
            return;
        }
        if v == self.vertices.len() {
            let w: Vec<Vertex> = (0..v)
                .filter(|&i| self.state[i] == State::In)
                .map(|i| self.vertices[i])
                .collect();
            let height = self.in_count + self.closed_out_cells;
            if let Some(b) = (self.visit)(&w, height) {
                self.bound = b;
            }
            return;
        }
        for s in [State::Out, State::In] {
            if self.assign(v, s) {
                self.run(v + 1);
            }
            self.unassign(v);
        }
    }
}

/// Calls `visit(W, height)` on every admissible set of height at most `max_height`.
/// The visitor may return a new, smaller bound.
pub fn for_each_admissible(
    c: &CellCollection,
    max_height: usize,
    mut visit: impl FnMut(&[Vertex], usize) -> Option<usize>,
) {
    let mut s = Search::new(c, max_height, &mut visit);
    s.run(0);
}

/// All admissible sets of height at most `max_height` (use `usize::MAX` for all), sorted.
pub fn admissible_sets(c: &CellCollection, max_height: usize) -> Vec<AdmissibleSet> {
    let mut out = Vec::new();
    for_each_admissible(c, max_height, |w, _| {
        out.push(AdmissibleSet::new(w.to_vec()));
        None
    });
    out.sort();
    out
}

/// Minimum of `|W| + |C_W|` over admissible sets, with the least set attaining it.
pub fn min_admissible_height(c: &CellCollection) -> (usize, AdmissibleSet) {
    let mut best = c.rank();
    if best > 0 {
        for_each_admissible(c, best - 1, |_, h| {
            best = best.min(h);
            Some(h.saturating_sub(1))
        });
    }
    // The least set at the optimum needs every set of that height.
    let w = admissible_sets(c, best)
        .into_iter()
        .find(|w| admissible_height(c, w) == best);
    (best, w.unwrap_or_else(AdmissibleSet::empty))
}

/// Rational row space of lattice vectors, for membership tests.
#[derive(Clone, Debug)]
struct Span {
    rows: Vec<(usize, Vec<i128>)>,
}

impl Span {
    fn new(vectors: Vec<Vec<i64>>) -> Self {
        let mut s = Span { rows: Vec::new() };
        for v in vectors {
            let r = s.reduce(v.iter().map(|&x| x as i128).collect());
            if let Some(p) = r.iter().position(|&x| x != 0) {
                s.rows.push((p, r));
            }
        }
        s
    }

    fn reduce(&self, mut v: Vec<i128>) -> Vec<i128> {
        for (p, row) in &self.rows {
            if v[*p] != 0 {
                let (a, b) = (row[*p], v[*p]);
                for k in 0..v.len() {
                    v[k] = v[k] * a - row[k] * b;
                }
                let g = v.iter().fold(0i128, |g, &x| num_integer::gcd(g, x));
                if g > 1 {
                    v.iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        v
    }

    fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v.iter().map(|&x| x as i128).collect())
            .iter()
            .all(|&x| x == 0)
    }
}

/// Shared state for algebraic computations on one collection.
pub struct CollectionAlgebra {
    collection: CellCollection,
    ring: CollectionRing,
    budget: Budget,
    lattice: RefCell<HashMap<CellCollection, Arc<GroebnerBasis>>>,
    spans: RefCell<HashMap<CellCollection, Arc<Span>>>,
    adjacent: RefCell<Option<Arc<GroebnerBasis>>>,
}

impl CollectionAlgebra {
    pub fn new(c: &CellCollection, budget: Budget) -> Self {
        CollectionAlgebra {
            collection: c.clone(),
            ring: CollectionRing::new(c),
            budget,
            lattice: RefCell::default(),
            spans: RefCell::default(),
            adjacent: RefCell::default(),
        }
    }

    pub fn collection(&self) -> &CellCollection {
        &self.collection
    }

    pub fn ring(&self) -> &CollectionRing {
        &self.ring
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn adjacent_ideal(&self) -> Ideal {
        self.ring.ideal(
            self.collection
                .cells()
                .map(|cell| self.ring.cell_minor(cell))
                .collect(),
        )
    }

    /// Degrevlex basis of `I_adj(C)`.
    pub fn adjacent_basis(&self) -> Result<Arc<GroebnerBasis>> {
        if let Some(b) = self.adjacent.borrow().as_ref() {
            return Ok(b.clone());
        }
        let gens: Vec<Polynomial> = self
            .collection
            .cells()
            .map(|cell| self.ring.cell_minor(cell))
            .collect();
        let b = Arc::new(groebner_basis(
            &gens,
            &self.ring.standard_order(),
            &self.budget,
        )?);
        *self.adjacent.borrow_mut() = Some(b.clone());
        Ok(b)
    }

    /// Degrevlex basis of the lattice ideal of a subcollection, in the ambient ring.
    pub fn lattice_basis(&self, cells: &CellCollection) -> Result<Arc<GroebnerBasis>> {
        if let Some(b) = self.lattice.borrow().get(cells) {
            return Ok(b.clone());
        }
        let b = Arc::new(lattice_ideal_basis(&self.ring, cells, &self.budget)?);
        self.lattice.borrow_mut().insert(cells.clone(), b.clone());
        Ok(b)
    }

    fn span(&self, cells: &CellCollection) -> Arc<Span> {
        if let Some(s) = self.spans.borrow().get(cells) {
            return s.clone();
        }
        let s = Arc::new(Span::new(
            cells
                .cells()
                .map(|cell| self.ring.cell_vector(cell))
                .collect(),
        ));
        self.spans.borrow_mut().insert(cells.clone(), s.clone());
        s
    }

    fn var_set(&self, w: &AdmissibleSet) -> Vec<bool> {
        let mut mask = vec![false; self.ring.len()];
        for v in w.vertices() {
            mask[self.ring.var(v).expect("vertex of the collection")] = true;
        }
        mask
    }

    /// Generators of `P_W`: the variables of `W` and a basis of `L_{C_W}`.
    pub fn prime_generators(&self, w: &AdmissibleSet) -> Result<Vec<Polynomial>> {
        let mut gens: Vec<Polynomial> = w
            .vertices()
            .iter()
            .map(|v| Polynomial::var(self.ring.var(v).expect("vertex")))
            .collect();
        gens.extend(
            self.lattice_basis(&surviving_cells(&self.collection, w))?
                .polynomials(),
        );
        Ok(gens)
    }

    /// Whether the binomial `x^u - x^v` lies in `P_W`.
    pub fn binomial_in_prime(&self, u: &Monomial, v: &Monomial, w: &AdmissibleSet) -> bool {
        let mask = self.var_set(w);
        let (tu, tv) = (u.touches(|i| mask[i]), v.touches(|i| mask[i]));
        if tu || tv {
            return tu && tv;
        }
        let n = self.ring.len();
        let e: Vec<i64> = (0..n)
            .map(|i| u.exponent(i) as i64 - v.exponent(i) as i64)
            .collect();
        self.span(&surviving_cells(&self.collection, w))
            .contains(&e)
    }
}

/// A prime `P_W` of the ring of a collection.
#[derive(Clone, Debug)]
pub struct PrimeCandidate {
    pub admissible: AdmissibleSet,
    pub cells: CellCollection,
    pub height: usize,
    pub generators: Vec<Polynomial>,
}

pub fn build_prime_candidate(alg: &CollectionAlgebra, w: &AdmissibleSet) -> Result<PrimeCandidate> {
    if !is_admissible(alg.collection(), w.vertices())? {
        return Err(Error::InvalidAdmissibleSet(format!(
            "{:?} is not admissible",
            w.vertices()
        )));
    }
    let cells = surviving_cells(alg.collection(), w);
    Ok(PrimeCandidate {
        admissible: w.clone(),
        height: w.len() + cells.len(),
        generators: alg.prime_generators(w)?,
        cells,
    })
}

/// Minimal primes of `I_adj(C)`, sorted by admissible set.
pub fn minimal_primes(c: &CellCollection) -> Result<Vec<PrimeCandidate>> {
    minimal_primes_with(&CollectionAlgebra::new(c, Budget::default()))
}

pub fn minimal_primes_with(alg: &CollectionAlgebra) -> Result<Vec<PrimeCandidate>> {
    let c = alg.collection();
    let candidates = admissible_sets(c, c.rank());
    let mut accepted: Vec<(AdmissibleSet, Vec<(Monomial, Option<Monomial>)>)> = Vec::new();
    let mut out = Vec::new();
    for w in candidates {
        alg.budget().check_time()?;
        let below = accepted.iter().any(|(w2, gens)| {
            w2.len() < w.len()
                && w2.is_subset(&w)
                && gens.iter().all(|(u, v)| match v {
                    Some(v) => alg.binomial_in_prime(u, v, &w),
                    None => u.touches(|i| w.contains(&alg.ring().vertex(i))),
                })
        });
        if below {
            continue;
        }
        let cand = build_prime_candidate(alg, &w)?;
        let lat = alg.lattice_basis(&cand.cells)?;
        accepted.push((w, lat.binomials().expect("lattice bases are binomial")));
        out.push(cand);
    }
    Ok(out)
}

/// Summary of one minimal prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeSummary {
    pub w: Vec<Vertex>,
    pub height: usize,
    pub lattice_cells: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub rank: usize,
    pub min_height: usize,
    /// Unmixed, equivalently a complete intersection, Cohen-Macaulay, Gorenstein or level.
    pub unmixed: bool,
    pub deficient_w: Option<Vec<Vertex>>,
    pub convex: bool,
    pub square_tetromino: bool,
    pub x_pentomino: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimal_primes: Option<Vec<PrimeSummary>>,
}

pub fn classify(c: &CellCollection, with_primes: bool) -> Result<ClassificationReport> {
    let (h, w) = min_admissible_height(c);
    let minimal_primes = if with_primes {
        Some(
            minimal_primes(c)?
                .into_iter()
                .map(|p| PrimeSummary {
                    w: p.admissible.vertices().to_vec(),
                    height: p.height,
                    lattice_cells: p.cells.len(),
                })
                .collect(),
        )
    } else {
        None
    };
    Ok(ClassificationReport {
        rank: c.rank(),
        min_height: h,
        unmixed: h == c.rank(),
        deficient_w: (h < c.rank()).then(|| w.vertices().to_vec()),
        convex: c.is_convex(),
        square_tetromino: contains_pattern(c, &Pattern::square_tetromino()),
        x_pentomino: contains_pattern(c, &Pattern::x_pentomino()),
        minimal_primes,
    })
}

/// For convex collections: unmixed exactly when neither obstruction pattern occurs.
pub fn convex_unmixed_predicate(c: &CellCollection) -> Result<bool> {
    if !c.is_convex() {
        return Err(Error::NotConvex);
    }
    Ok(!contains_pattern(c, &Pattern::square_tetromino())
        && !contains_pattern(c, &Pattern::x_pentomino()))
}
