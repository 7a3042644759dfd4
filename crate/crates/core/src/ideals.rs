//! Adjacent and inner 2-minor ideals, the lattice of a collection and its lattice ideal.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Result;
use crate::grid::{Cell, CellCollection, Vertex};
use crate::polyalg::{
    groebner_basis, saturate_homogeneous, Budget, GroebnerBasis, Ideal, Monomial, MonomialOrder,
    Polynomial, VariableContext,
};

/// The polynomial ring `K[x_v : v in V(C)]`, with variables in row-major order.
#[derive(Clone, Debug)]
pub struct CollectionRing {
    ctx: Arc<VariableContext>,
    vertices: Vec<Vertex>,
    index: HashMap<Vertex, usize>,
}

impl CollectionRing {
    pub fn new(c: &CellCollection) -> Self {
        let vertices = c.vertices_row_major();
        let names = vertices
            .iter()
            .map(|v| format!("x_{{{},{}}}", v.x, v.y))
            .collect();
        let index = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        CollectionRing {
            ctx: Arc::new(VariableContext::new(names)),
            vertices,
            index,
        }
    }

    pub fn ctx(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn var(&self, v: &Vertex) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn vertex(&self, var: usize) -> Vertex {
        self.vertices[var]
    }

    fn must(&self, v: &Vertex) -> usize {
        self.var(v)
            .unwrap_or_else(|| panic!("vertex {v} outside the ring"))
    }

    /// `x_a x_b - x_c x_d` for a cell of the collection.
    pub fn cell_minor(&self, cell: &Cell) -> Polynomial {
        self.minor(cell.a(), cell.b())
    }

    /// Inner 2-minor of the interval with diagonal corners `lo`, `hi`.
    pub fn minor(&self, lo: Vertex, hi: Vertex) -> Polynomial {
        let c = Vertex::new(lo.x, hi.y);
        let d = Vertex::new(hi.x, lo.y);
        Polynomial::binomial(
            Monomial::from_vars([self.must(&lo), self.must(&hi)]),
            Monomial::from_vars([self.must(&c), self.must(&d)]),
        )
    }

    /// Lattice vector `v_a + v_b - v_c - v_d` of a cell.
    pub fn cell_vector(&self, cell: &Cell) -> Vec<i64> {
        let mut v = vec![0; self.len()];
        v[self.must(&cell.a())] += 1;
        v[self.must(&cell.b())] += 1;
        v[self.must(&cell.c())] -= 1;
        v[self.must(&cell.d())] -= 1;
        v
    }

    /// `x^{e+} - x^{e-}`.
    pub fn lattice_binomial(&self, e: &[i64]) -> Polynomial {
        let pos = Monomial::from_pairs(
            e.iter()
                .enumerate()
                .filter(|p| *p.1 > 0)
                .map(|(i, &k)| (i, k as u32)),
        );
        let neg = Monomial::from_pairs(
            e.iter()
                .enumerate()
                .filter(|p| *p.1 < 0)
                .map(|(i, &k)| (i, (-k) as u32)),
        );
        Polynomial::binomial(pos, neg)
    }

    /// Variable indices of the vertices of `cells`.
    pub fn vars_of(&self, cells: &CellCollection) -> Vec<usize> {
        let mut v: Vec<usize> = cells.vertices().map(|p| self.must(p)).collect();
        v.sort_unstable();
        v
    }

    pub fn ideal(&self, gens: Vec<Polynomial>) -> Ideal {
        Ideal::new(self.ctx.clone(), gens)
    }

    pub fn standard_order(&self) -> MonomialOrder {
        MonomialOrder::natural_degrevlex(self.len())
    }
}

/// Adjacent 2-minor ideal: one generator per cell.
pub fn adjacent_minor_ideal(c: &CellCollection) -> Ideal {
    let ring = CollectionRing::new(c);
    let gens = c.cells().map(|cell| ring.cell_minor(cell)).collect();
    ring.ideal(gens)
}

/// All inner intervals as `(lower-left, upper-right)` corner pairs.
pub fn inner_intervals(c: &CellCollection) -> Vec<(Vertex, Vertex)> {
    let mut out = Vec::new();
    for lo in c.cells() {
        let mut w = 1;
        while c.contains(&lo.translate(w - 1, 0)) {
            let mut h = 1;
            while (0..w).all(|dx| c.contains(&lo.translate(dx, h - 1))) {
                out.push((lo.a(), Vertex::new(lo.x + w, lo.y + h)));
                h += 1;
            }
            w += 1;
        }
    }
    out
}

/// Ideal of all inner 2-minors.
pub fn inner_minor_ideal(c: &CellCollection) -> Ideal {
    let ring = CollectionRing::new(c);
    let gens = inner_intervals(c)
        .into_iter()
        .map(|(lo, hi)| ring.minor(lo, hi))
        .collect();
    ring.ideal(gens)
}

/// Generators of the lattice of a collection in the coordinates of its ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    pub vertices: Vec<Vertex>,
    pub rows: Vec<Vec<i64>>,
}

impl LatticeBasis {
    /// Rank over the rationals, by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<i128>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let ncols = self.vertices.len();
        let mut rank = 0;
        for col in 0..ncols {
            let Some(p) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(rank, p);
            for r in 0..m.len() {
                if r != rank && m[r][col] != 0 {
                    let (a, b) = (m[rank][col], m[r][col]);
                    for k in 0..ncols {
                        m[r][k] = m[r][k] * a - m[rank][k] * b;
                    }
                    let g = m[r].iter().fold(0i128, |g, &x| num_integer::gcd(g, x));
                    if g > 1 {
                        m[r].iter_mut().for_each(|x| *x /= g);
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

pub fn lattice_vectors(c: &CellCollection) -> LatticeBasis {
    let ring = CollectionRing::new(c);
    LatticeBasis {
        vertices: ring.vertices().to_vec(),
        rows: c.cells().map(|cell| ring.cell_vector(cell)).collect(),
    }
}

/// Degrevlex basis of the lattice ideal of `cells`, inside the ring `ring`.
pub fn lattice_ideal_basis(
    ring: &CollectionRing,
    cells: &CellCollection,
    budget: &Budget,
) -> Result<GroebnerBasis> {
    let gens: Vec<Polynomial> = cells.cells().map(|cell| ring.cell_minor(cell)).collect();
    let sat = saturate_homogeneous(&ring.ideal(gens), &ring.vars_of(cells), budget)?;
    groebner_basis(sat.generators(), &ring.standard_order(), budget)
}

/// `I_adj(C) : (prod x_v)^inf`.
pub fn lattice_ideal(c: &CellCollection, budget: &Budget) -> Result<Ideal> {
    let ring = CollectionRing::new(c);
    let basis = lattice_ideal_basis(&ring, c, budget)?;
    Ok(Ideal::from_basis(ring.ctx().clone(), basis))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coll(coords: &[(i64, i64)]) -> CellCollection {
        CellCollection::from_coords(coords)
    }

    #[test]
    fn l_tromino_generators() {
        let c = coll(&[(1, 1), (2, 1), (1, 2)]);
        let i = adjacent_minor_ideal(&c);
        let ctx = i.ctx().clone();
        let shown: Vec<String> = i
            .generators()
            .iter()
            .map(|g| g.display(&ctx).to_string())
            .collect();
        assert_eq!(shown.len(), 3);
        for g in [
            "-x_{2,1}*x_{1,2} + x_{1,1}*x_{2,2}",
            "-x_{3,1}*x_{2,2} + x_{2,1}*x_{3,2}",
            "-x_{2,2}*x_{1,3} + x_{1,2}*x_{2,3}",
        ] {
            assert!(shown.contains(&g.to_string()), "{shown:?}");
        }
    }

    #[test]
    fn inner_ideal_of_two_by_two() {
        let c = coll(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        assert_eq!(inner_intervals(&c).len(), 9);
        let dom = coll(&[(0, 0), (1, 0)]);
        assert_eq!(inner_minor_ideal(&dom).generators().len(), 3);
    }

    #[test]
    fn lattice_rank_equals_cells() {
        for c in [
            coll(&[(0, 0)]),
            coll(&[(0, 0), (1, 1), (2, 0)]),
            coll(&[(0, 0), (1, 0), (0, 1), (1, 1)]),
        ] {
            assert_eq!(lattice_vectors(&c).rank(), c.rank());
        }
    }

    #[test]
    fn domino_lattice_ideal_contains_outer_minor() {
        let c = coll(&[(0, 0), (1, 0)]);
        let l = lattice_ideal(&c, &Budget::default()).unwrap();
        let ring = CollectionRing::new(&c);
        let outer = ring.minor(Vertex::new(0, 0), Vertex::new(2, 1));
        assert!(l.contains(&outer, &Budget::default()).unwrap());
        assert!(!adjacent_minor_ideal(&c)
            .contains(&outer, &Budget::default())
            .unwrap());
    }
}
