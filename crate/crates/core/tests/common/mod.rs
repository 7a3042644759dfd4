//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::HashSet;

use adjminor::CellCollection;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn coll(coords: &[(i64, i64)]) -> CellCollection {
    CellCollection::from_coords(coords)
}

pub fn l_tromino() -> CellCollection {
    coll(&[(1, 1), (2, 1), (1, 2)])
}

pub fn square_tetromino() -> CellCollection {
    coll(&[(1, 1), (2, 1), (1, 2), (2, 2)])
}

/// Five cells: a 3x1 bottom row with both ends raised.
pub fn non_convex_pentomino() -> CellCollection {
    coll(&[(1, 1), (2, 1), (3, 1), (1, 2), (3, 2)])
}

/// Whether `e` is an integer combination of `rows`, by exact elimination over Q.
/// Uses that the rows are linearly independent, so the rational solution is unique.
pub fn in_integer_span(rows: &[Vec<i64>], e: &[i64]) -> bool {
    let k = rows.len();
    let n = e.len();
    // Augmented system R^T x = e: n equations, k unknowns.
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = rows
                .iter()
                .map(|r| BigRational::from_integer(BigInt::from(r[i])))
                .collect();
            row.push(BigRational::from_integer(BigInt::from(e[i])));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..k {
        let Some(p) = (r..n).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = BigRational::one() / m[r][col].clone();
        for j in col..=k {
            m[r][j] = m[r][j].clone() * inv.clone();
        }
        for i in 0..n {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..=k {
                    let d = f.clone() * m[r][j].clone();
                    m[i][j] = m[i][j].clone() - d;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    assert_eq!(pivots.len(), k, "cell vectors are independent");
    if m[r..].iter().any(|row| !row[k].is_zero()) {
        return false;
    }
    m[..r].iter().all(|row| row[k].is_integer())
}

fn normalize(cells: &mut [(i64, i64)]) {
    let mx = cells.iter().map(|c| c.0).min().unwrap_or(0);
    let my = cells.iter().map(|c| c.1).min().unwrap_or(0);
    for c in cells.iter_mut() {
        c.0 -= mx;
        c.1 -= my;
    }
    cells.sort_unstable();
}

fn free_key(cells: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let maps: [fn((i64, i64)) -> (i64, i64); 8] = [
        |(x, y)| (x, y),
        |(x, y)| (-x, y),
        |(x, y)| (x, -y),
        |(x, y)| (-x, -y),
        |(x, y)| (y, x),
        |(x, y)| (-y, x),
        |(x, y)| (y, -x),
        |(x, y)| (-y, -x),
    ];
    maps.iter()
        .map(|f| {
            let mut v: Vec<(i64, i64)> = cells.iter().map(|&c| f(c)).collect();
            normalize(&mut v);
            v
        })
        .min()
        .expect("eight images")
}

/// Weakly connected collections of a rank by naive growth with de-duplication.
pub fn brute_force_count(rank: usize, up_to_symmetry: bool) -> usize {
    let mut level: HashSet<Vec<(i64, i64)>> = HashSet::from([vec![(0, 0)]]);
    for _ in 1..rank {
        let mut next = HashSet::new();
        for shape in &level {
            for &(x, y) in shape {
                for dx in -1..=1 {
                    for dy in -1..=1 {
                        let c = (x + dx, y + dy);
                        if shape.contains(&c) {
                            continue;
                        }
                        let mut grown = shape.clone();
                        grown.push(c);
                        normalize(&mut grown);
                        next.insert(grown);
                    }
                }
            }
        }
        level = next;
    }
    if rank == 0 {
        return 1;
    }
    if up_to_symmetry {
        level
            .iter()
            .map(|s| free_key(s))
            .collect::<HashSet<_>>()
            .len()
    } else {
        level.len()
    }
}
