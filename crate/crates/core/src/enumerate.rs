//! Enumeration of weakly connected collections of a given rank.
//!
//! Fixed collections are grown cell by cell on the king graph without
//! repetition; free ones are the fixed ones equal to their own canonical form.

use crate::error::{Error, Result};
use crate::grid::{canonical_form, contains_pattern, Cell, CellCollection, Pattern};

/// Largest rank accepted unless the caller raises the limit.
pub const DEFAULT_MAX_RANK: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filter {
    Convex,
    /// Neither a square tetromino nor an X-pentomino.
    PatternFree,
    /// Not radical, as decided by the automatic method.
    NonRadical,
}

impl std::str::FromStr for Filter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "convex" => Ok(Filter::Convex),
            "pattern-free" => Ok(Filter::PatternFree),
            "non-radical" => Ok(Filter::NonRadical),
            other => Err(Error::Unsupported(format!("unknown filter '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub rank: usize,
    pub up_to_symmetry: bool,
    pub filters: Vec<Filter>,
    pub max_rank: usize,
}

impl EnumerationConfig {
    pub fn new(rank: usize, up_to_symmetry: bool) -> Self {
        EnumerationConfig {
            rank,
            up_to_symmetry,
            filters: Vec::new(),
            max_rank: DEFAULT_MAX_RANK,
        }
    }

    pub fn with_filter(mut self, f: Filter) -> Self {
        self.filters.push(f);
        self
    }
}

struct Grower<'a, F: FnMut(&[Cell])> {
    n: usize,
    width: i64,
    offset: i64,
    marked: Vec<bool>,
    poly: Vec<Cell>,
    emit: &'a mut F,
}

impl<F: FnMut(&[Cell])> Grower<'_, F> {
    fn index(&self, c: &Cell) -> Option<usize> {
        let allowed = c.y > 0 || (c.y == 0 && c.x >= 0);
        if !allowed
            || c.y > self.n as i64
            || (c.x + self.offset) < 0
            || c.x + self.offset >= self.width
        {
            return None;
        }
        Some((c.y * self.width + c.x + self.offset) as usize)
    }

    fn grow(&mut self, mut untried: Vec<Cell>) {
        while let Some(c) = untried.pop() {
            self.poly.push(c);
            if self.poly.len() == self.n {
                (self.emit)(&self.poly);
            } else {
                let mut fresh = Vec::new();
                for nb in c.king_neighbours() {
                    if let Some(i) = self.index(&nb) {
                        if !self.marked[i] {
                            self.marked[i] = true;
                            fresh.push((nb, i));
                        }
                    }
                }
                let mut next = untried.clone();
                next.extend(fresh.iter().map(|p| p.0));
                self.grow(next);
                for (_, i) in fresh {
                    self.marked[i] = false;
                }
            }
            self.poly.pop();
        }
    }
}

/// Calls `visit` on every fixed weakly connected collection with `n` cells, unnormalized.
fn for_each_fixed(n: usize, visit: &mut impl FnMut(&[Cell])) {
    if n == 0 {
        visit(&[]);
        return;
    }
    let offset = n as i64 + 1;
    let width = 2 * offset + 1;
    let mut g = Grower {
        n,
        width,
        offset,
        marked: vec![false; (width * (n as i64 + 2)) as usize],
        poly: Vec::with_capacity(n),
        emit: visit,
    };
    let origin = Cell::new(0, 0);
    let i = g.index(&origin).expect("origin");
    g.marked[i] = true;
    g.grow(vec![origin]);
}

fn passes(c: &CellCollection, filters: &[Filter]) -> Result<bool> {
    for f in filters {
        let ok = match f {
            Filter::Convex => c.is_convex(),
            Filter::PatternFree => {
                !contains_pattern(c, &Pattern::square_tetromino())
                    && !contains_pattern(c, &Pattern::x_pentomino())
            }
            Filter::NonRadical => {
                let v = crate::radicality::is_radical(
                    c,
                    &crate::radicality::RadicalOptions::default(),
                )?;
                v.verdict == crate::radicality::Radicality::NonRadical
            }
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Streams every weakly connected collection of the configured rank, translated
/// so its bounding box starts at the origin. With `up_to_symmetry` only
/// canonical representatives are produced. Returns the number visited.
pub fn enumerate_collections(
    cfg: &EnumerationConfig,
    mut visit: impl FnMut(CellCollection),
) -> Result<usize> {
    if cfg.rank > cfg.max_rank {
        return Err(Error::Budget(format!(
            "rank {} exceeds the enumeration limit {}",
            cfg.rank, cfg.max_rank
        )));
    }
    let mut count = 0;
    let mut failure: Option<Error> = None;
    for_each_fixed(cfg.rank, &mut |cells: &[Cell]| {
        if failure.is_some() {
            return;
        }
        let c: CellCollection = cells
            .iter()
            .copied()
            .collect::<CellCollection>()
            .normalized();
        if cfg.up_to_symmetry && canonical_form(&c) != c {
            return;
        }
        match passes(&c, &cfg.filters) {
            Ok(true) => {
                count += 1;
                visit(c);
            }
            Ok(false) => {}
            Err(e) => failure = Some(e),
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(count),
    }
}

/// All collections of `rank`, sorted.
pub fn collections(rank: usize, up_to_symmetry: bool) -> Result<Vec<CellCollection>> {
    let mut out = Vec::new();
    enumerate_collections(&EnumerationConfig::new(rank, up_to_symmetry), |c| {
        out.push(c)
    })?;
    out.sort();
    Ok(out)
}

pub fn count_collections(rank: usize, up_to_symmetry: bool) -> Result<usize> {
    enumerate_collections(&EnumerationConfig::new(rank, up_to_symmetry), |_| {})
}
