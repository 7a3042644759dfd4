//! Known minimally non-radical configurations, one data file per rank.

use crate::encoding::parse_collection;
use crate::error::{Error, Result};
use crate::grid::{canonical_form, CellCollection};

use super::{dt_family, is_minimally_non_radical, RadicalOptions};

const BUILTIN: [(usize, &str); 4] = [
    (4, include_str!("../../configs/rank4.txt")),
    (6, include_str!("../../configs/rank6.txt")),
    (7, include_str!("../../configs/rank7.txt")),
    (8, include_str!("../../configs/rank8.txt")),
];

/// Largest `t` whose `D_t` is added to the builtin library.
pub const BUILTIN_DT_MAX: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LibraryEntry {
    pub name: String,
    pub rank: usize,
    pub collection: CellCollection,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConfigLibrary {
    entries: Vec<LibraryEntry>,
}

impl ConfigLibrary {
    pub fn new(entries: Vec<LibraryEntry>) -> Self {
        ConfigLibrary { entries }
    }

    /// Parses a data file: one encoded collection per line, `#` starts a comment.
    /// The expected rank is checked for every line.
    pub fn parse_file(rank: usize, text: &str) -> Result<Vec<LibraryEntry>> {
        let mut out = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let c = parse_collection(line)
                .map_err(|e| Error::Validation(format!("rank {rank} line {}: {e}", lineno + 1)))?;
            if c.rank() != rank {
                return Err(Error::Validation(format!(
                    "rank {rank} line {}: collection has rank {}",
                    lineno + 1,
                    c.rank()
                )));
            }
            out.push(LibraryEntry {
                name: format!("rank{rank}-{}", out.len() + 1),
                rank,
                collection: canonical_form(&c),
            });
        }
        Ok(out)
    }

    /// The transcribed data files, plus `D_t` for `2 <= t <= BUILTIN_DT_MAX`
    /// when not already present.
    pub fn builtin() -> Self {
        let mut entries = Vec::new();
        for (rank, text) in BUILTIN {
            entries
                .extend(Self::parse_file(rank, text).expect("builtin configuration files parse"));
        }
        for t in 2..=BUILTIN_DT_MAX {
            let Ok(d) = dt_family(t) else { continue };
            let d = canonical_form(&d);
            if !entries.iter().any(|e| e.collection == d) {
                entries.push(LibraryEntry {
                    name: format!("D{t}"),
                    rank: d.rank(),
                    collection: d,
                });
            }
        }
        entries.sort_by_key(|e| e.rank);
        ConfigLibrary { entries }
    }

    pub fn entries(&self) -> &[LibraryEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn of_rank(&self, rank: usize) -> impl Iterator<Item = &LibraryEntry> {
        self.entries.iter().filter(move |e| e.rank == rank)
    }

    /// Checks every entry is minimally non-radical. Returns the names that fail,
    /// or a budget error if some verdict stays undecided.
    pub fn validate(&self, opts: &RadicalOptions) -> Result<Vec<String>> {
        let opts = RadicalOptions {
            library: None,
            ..opts.clone()
        };
        let mut bad = Vec::new();
        for e in &self.entries {
            if !is_minimally_non_radical(&e.collection, &opts)? {
                bad.push(e.name.clone());
            }
        }
        Ok(bad)
    }
}
