//! The family `D_t` of minimally non-radical collections.
//!
//! Cells `D_0..D_{t-1}` form a horizontal strip on row 0, `E` sits on `D_0`,
//! and `C`, `A`, `B` cluster at the right end of row 1.

use crate::error::{Error, Result};
use crate::grid::{Cell, CellCollection, Vertex};
use crate::ideals::CollectionRing;
use crate::polyalg::{Monomial, MonomialOrder, Polynomial};

/// Vertex labels of `D_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DtLabels {
    pub t: usize,
    pub a: [Vertex; 2],
    pub b: [Vertex; 3],
    /// `c_0..c_{t+2}`.
    pub c: Vec<Vertex>,
    /// `d_0..d_t`.
    pub d: Vec<Vertex>,
    pub e: [Vertex; 2],
}

impl DtLabels {
    /// Looks up `a0`, `a_0`, `c_{t+1}` style names; `t` may appear in indices as `t`, `t+1`, `t+2`.
    pub fn resolve(&self, name: &str) -> Option<Vertex> {
        let name = name.trim();
        let mut chars = name.chars();
        let letter = chars.next()?;
        let index = chars
            .as_str()
            .trim_start_matches('_')
            .trim_start_matches('{')
            .trim_end_matches('}');
        let k = match index {
            "t" => self.t,
            _ => match index.strip_prefix("t+") {
                Some(off) => self.t + off.parse::<usize>().ok()?,
                None => index.parse().ok()?,
            },
        };
        match letter {
            'a' => self.a.get(k).copied(),
            'b' => self.b.get(k).copied(),
            'c' => self.c.get(k).copied(),
            'd' => self.d.get(k).copied(),
            'e' => self.e.get(k).copied(),
            _ => None,
        }
    }

    /// Every label with its vertex.
    pub fn all(&self) -> Vec<(String, Vertex)> {
        let mut out = Vec::new();
        for (letter, vs) in [
            ("a", &self.a[..]),
            ("b", &self.b[..]),
            ("c", &self.c[..]),
            ("d", &self.d[..]),
            ("e", &self.e[..]),
        ] {
            out.extend(
                vs.iter()
                    .enumerate()
                    .map(|(i, v)| (format!("{letter}{i}"), *v)),
            );
        }
        out
    }
}

/// Named cells of `D_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DtCells {
    pub a: Cell,
    pub b: Cell,
    pub c: Cell,
    pub e: Cell,
    pub d: Vec<Cell>,
}

fn check_t(t: usize) -> Result<()> {
    if t < 2 {
        return Err(Error::Validation(format!("D_t needs t >= 2, got {t}")));
    }
    Ok(())
}

pub fn dt_labels(t: usize) -> Result<DtLabels> {
    check_t(t)?;
    let ti = t as i64;
    let v = Vertex::new;
    let mut c: Vec<Vertex> = (0..=ti).map(|i| v(i, 1)).collect();
    c.push(v(ti, 2));
    c.push(v(ti, 3));
    Ok(DtLabels {
        t,
        a: [v(ti + 2, 1), v(ti + 2, 2)],
        b: [v(ti + 1, 1), v(ti + 1, 2), v(ti + 1, 3)],
        c,
        d: (0..=ti).map(|i| v(i, 0)).collect(),
        e: [v(0, 2), v(1, 2)],
    })
}

pub fn dt_cells(t: usize) -> Result<DtCells> {
    check_t(t)?;
    let ti = t as i64;
    Ok(DtCells {
        a: Cell::new(ti + 1, 1),
        b: Cell::new(ti, 2),
        c: Cell::new(ti, 1),
        e: Cell::new(0, 1),
        d: (0..ti).map(|i| Cell::new(i, 0)).collect(),
    })
}

/// `D_t`, of rank `t + 4`.
pub fn dt_family(t: usize) -> Result<CellCollection> {
    let cells = dt_cells(t)?;
    let mut all = vec![cells.a, cells.b, cells.c, cells.e];
    all.extend(cells.d);
    Ok(all.into_iter().collect())
}

fn lex_from_largest(ring: &CollectionRing, largest_first: &[Vertex]) -> Result<MonomialOrder> {
    let sig = largest_first
        .iter()
        .map(|p| {
            ring.var(p)
                .ok_or_else(|| Error::Validation(format!("vertex {p} outside D_t")))
        })
        .collect::<Result<Vec<_>>>()?;
    MonomialOrder::lex(sig)
}

/// The lex order `e_1 < e_0 < c_t < ... < c_0 < d_t < ... < d_0 < c_{t+2} < c_{t+1} < b_2 < b_1 < b_0 < a_1 < a_0`.
pub fn dt_order(t: usize, ring: &CollectionRing) -> Result<MonomialOrder> {
    let l = dt_labels(t)?;
    let mut seq = vec![
        l.a[0],
        l.a[1],
        l.b[0],
        l.b[1],
        l.b[2],
        l.c[t + 1],
        l.c[t + 2],
    ];
    seq.extend(l.d.iter().copied());
    seq.extend(l.c[..=t].iter().copied());
    seq.extend([l.e[0], l.e[1]]);
    lex_from_largest(ring, &seq)
}

/// The lex order `d_t < ... < d_0 < c_t < ... < c_0 < e_0 < e_1 < c_{t+1} < c_{t+2} < b_0 < b_1 < b_2 < a_0 < a_1`,
/// used for the deletions of `E` or `D_0`.
pub fn dt_deletion_order(t: usize, ring: &CollectionRing) -> Result<MonomialOrder> {
    let l = dt_labels(t)?;
    let mut seq = vec![
        l.a[1],
        l.a[0],
        l.b[2],
        l.b[1],
        l.b[0],
        l.c[t + 2],
        l.c[t + 1],
        l.e[1],
        l.e[0],
    ];
    seq.extend(l.c[..=t].iter().copied());
    seq.extend(l.d.iter().copied());
    lex_from_largest(
        ring,
        &seq.into_iter()
            .filter(|v| ring.var(v).is_some())
            .collect::<Vec<_>>(),
    )
}

/// The two binomials `g`, `h` completing the cell minors to the reduced basis.
pub fn dt_extra_binomials(t: usize, ring: &CollectionRing) -> Result<[Polynomial; 2]> {
    let l = dt_labels(t)?;
    let x = |p: &Vertex| ring.var(p).expect("vertex of D_t");
    let (a0, a1) = (x(&l.a[0]), x(&l.a[1]));
    let (b0, b2) = (x(&l.b[0]), x(&l.b[2]));
    let (ct, ct1, ct2) = (x(&l.c[t]), x(&l.c[t + 1]), x(&l.c[t + 2]));
    let g = Polynomial::binomial(
        Monomial::from_vars([a0, b2, ct1]),
        Monomial::from_vars([b0, a1, ct2]),
    );
    let h = Polynomial::binomial(
        Monomial::from_pairs([(a1, 1), (b0, 2), (ct2, 1)]),
        Monomial::from_pairs([(a1, 1), (b0, 1), (b2, 1), (ct, 1)]),
    );
    Ok([g, h])
}

/// `f_t = x_{a0} x_{b2} x_{c_{t+1}} x_{d_1} ... x_{d_{t-1}} (x_{d_1} x_{e_0} - x_{d_0} x_{e_1})`.
pub fn dt_witness(t: usize, ring: &CollectionRing) -> Result<Polynomial> {
    let l = dt_labels(t)?;
    let x = |p: &Vertex| ring.var(p).expect("vertex of D_t");
    let mut common = vec![x(&l.a[0]), x(&l.b[2]), x(&l.c[t + 1])];
    common.extend(l.d[1..t].iter().map(x));
    let m = Monomial::from_vars(common);
    let (d0, d1, e0, e1) = (x(&l.d[0]), x(&l.d[1]), x(&l.e[0]), x(&l.e[1]));
    Ok(Polynomial::binomial(
        m.mul(&Monomial::from_vars([d1, e0])),
        m.mul(&Monomial::from_vars([d0, e1])),
    ))
}
