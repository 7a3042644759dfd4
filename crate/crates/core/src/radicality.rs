//! Radicality of adjacent 2-minor ideals.
//!
//! Four routes are available: the exact comparison of `I` with the
//! intersection of its minimal primes, a squarefree initial ideal, explicit
//! witnesses `f` with `f` outside `I` and `f^2` inside, and screening against a
//! library of known minimally non-radical configurations.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::encoding::format_collection;
use crate::error::{Error, Result};
use crate::grid::{CellCollection, Symmetry};
use crate::ideals::CollectionRing;
use crate::polyalg::{
    groebner_basis, intersect, Budget, Ideal, Monomial, MonomialOrder, Polynomial,
};
use crate::primes::{minimal_primes_with, AdmissibleSet, CollectionAlgebra};

pub mod dt;
pub mod library;

pub use dt::{
    dt_cells, dt_deletion_order, dt_extra_binomials, dt_family, dt_labels, dt_order, dt_witness,
    DtCells, DtLabels,
};

pub use library::{ConfigLibrary, LibraryEntry};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Radicality {
    Radical,
    NonRadical,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Split into vertex-disjoint parts, then screen, squarefree initial ideal, witness, exact.
    #[default]
    Auto,
    Exact,
    Witness,
    Screen,
    /// Proof of radicality by a squarefree initial ideal.
    SquarefreeInitial,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Method::Auto),
            "exact" => Ok(Method::Exact),
            "witness" => Ok(Method::Witness),
            "screen" => Ok(Method::Screen),
            "initial" | "squarefree-initial" => Ok(Method::SquarefreeInitial),
            other => Err(Error::Unsupported(format!("unknown method '{other}'"))),
        }
    }
}

/// Evidence attached to a decided verdict. Polynomials live in the ring of
/// the collection (or of `part` for split certificates).
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    /// `f` is not in `I` but `f^power` is.
    Witness { f: Polynomial, power: u32 },
    /// `f` lies in every minimal prime but not in `I`.
    RadicalElement { f: Polynomial },
    /// A non-radical library configuration embeds with the edge-support condition.
    Embedded {
        image: CellCollection,
        entry: String,
    },
    /// The initial ideal for `order` is squarefree.
    SquarefreeInitial { order: MonomialOrder },
    /// `I` equals the intersection of its minimal primes.
    PrimeIntersection { primes: usize },
    /// The verdict of one vertex-disjoint part decides the whole.
    Part {
        part: CellCollection,
        inner: Box<Certificate>,
    },
    /// Every vertex-disjoint part is radical.
    AllParts { parts: usize },
}

/// A certificate rendered with variable names, for reports.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateSummary {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub collection: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entry: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inner: Option<Box<CertificateSummary>>,
}

impl Certificate {
    /// Renders the certificate; `c` is the collection it was issued for.
    pub fn summary(&self, c: &CellCollection) -> CertificateSummary {
        let ring = CollectionRing::new(c);
        let ctx = ring.ctx();
        let base = |kind: &str| CertificateSummary {
            kind: kind.to_string(),
            ..Default::default()
        };
        match self {
            Certificate::Witness { f, power } => CertificateSummary {
                polynomial: Some(f.display(ctx).to_string()),
                power: Some(*power),
                ..base("witness")
            },
            Certificate::RadicalElement { f } => CertificateSummary {
                polynomial: Some(f.display(ctx).to_string()),
                ..base("radical-element")
            },
            Certificate::Embedded { image, entry } => CertificateSummary {
                collection: Some(format_collection(image)),
                entry: Some(entry.clone()),
                ..base("embedded")
            },
            Certificate::SquarefreeInitial { order } => CertificateSummary {
                order: Some(order.describe(ctx.names())),
                ..base("squarefree-initial")
            },
            Certificate::PrimeIntersection { primes } => CertificateSummary {
                count: Some(*primes),
                ..base("prime-intersection")
            },
            Certificate::Part { part, inner } => CertificateSummary {
                collection: Some(format_collection(part)),
                inner: Some(Box::new(inner.summary(part))),
                ..base("part")
            },
            Certificate::AllParts { parts } => CertificateSummary {
                count: Some(*parts),
                ..base("all-parts")
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RadicalVerdict {
    pub verdict: Radicality,
    pub method: Method,
    pub certificate: Option<Certificate>,
}

impl RadicalVerdict {
    fn unknown(method: Method) -> Self {
        RadicalVerdict {
            verdict: Radicality::Unknown,
            method,
            certificate: None,
        }
    }

    fn decided(verdict: Radicality, method: Method, cert: Certificate) -> Self {
        RadicalVerdict {
            verdict,
            method,
            certificate: Some(cert),
        }
    }

    pub fn is_radical(&self) -> Option<bool> {
        match self.verdict {
            Radicality::Radical => Some(true),
            Radicality::NonRadical => Some(false),
            Radicality::Unknown => None,
        }
    }
}

/// Bounds for the witness search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessOptions {
    /// Largest total degree of a witness.
    pub degree_bound: u32,
    /// Largest degree of the monomial multiplier.
    pub multiplier_bound: u32,
    /// Largest absolute coefficient in the lattice combination.
    pub coefficient_bound: i64,
    /// Largest number of cells in the support of the lattice combination.
    pub support_bound: usize,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        WitnessOptions {
            degree_bound: 8,
            multiplier_bound: 4,
            coefficient_bound: 2,
            support_bound: 4,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RadicalOptions {
    pub method: Method,
    pub time_limit: Option<Duration>,
    pub witness: WitnessOptions,
    pub library: Option<Arc<ConfigLibrary>>,
}

impl Default for RadicalOptions {
    fn default() -> Self {
        RadicalOptions {
            method: Method::Auto,
            time_limit: None,
            witness: WitnessOptions::default(),
            library: Some(Arc::new(ConfigLibrary::builtin())),
        }
    }
}

impl RadicalOptions {
    pub fn with_method(method: Method) -> Self {
        RadicalOptions {
            method,
            ..Self::default()
        }
    }

    fn budget(&self) -> Budget {
        match self.time_limit {
            Some(t) => Budget::with_time_limit(t),
            None => Budget::default(),
        }
    }
}

/// `sqrt(I_adj(C))` as the intersection of the minimal primes.
pub fn sqrt_ideal(c: &CellCollection, budget: &Budget) -> Result<Ideal> {
    sqrt_ideal_with(&CollectionAlgebra::new(c, budget.clone()))
}

pub fn sqrt_ideal_with(alg: &CollectionAlgebra) -> Result<Ideal> {
    let ring = alg.ring();
    let mut primes = minimal_primes_with(alg)?;
    // Variable-heavy primes first keeps the running intersection small.
    primes.sort_by_key(|p| (p.cells.len(), p.admissible.clone()));
    let mut iter = primes.into_iter();
    let Some(first) = iter.next() else {
        return Ok(ring.ideal(Vec::new()));
    };
    let adjacent: Vec<Polynomial> = alg.adjacent_ideal().generators().to_vec();
    let mut acc = ring.ideal(first.generators);
    for p in iter {
        let mut gens = acc.generators().to_vec();
        gens.extend(adjacent.iter().cloned());
        let lhs = ring.ideal(gens);
        acc = intersect(&lhs, &ring.ideal(p.generators), alg.budget())?;
        acc = Ideal::new(
            ring.ctx().clone(),
            groebner_basis(acc.generators(), &ring.standard_order(), alg.budget())?.polynomials(),
        );
    }
    Ok(acc)
}

fn smallest_power_in(f: &Polynomial, gb: &crate::polyalg::GroebnerBasis, max: u32) -> Option<u32> {
    let mut p = f.clone();
    for k in 2..=max {
        p = p.mul(f);
        if gb.contains(&p) {
            return Some(k);
        }
    }
    None
}

fn exact(alg: &CollectionAlgebra) -> Result<RadicalVerdict> {
    let gb = alg.adjacent_basis()?;
    let j = sqrt_ideal_with(alg)?;
    let mut outside: Vec<&Polynomial> = j.generators().iter().filter(|f| !gb.contains(f)).collect();
    outside.sort_by_key(|f| (f.total_degree(), f.len()));
    match outside.first() {
        None => Ok(RadicalVerdict::decided(
            Radicality::Radical,
            Method::Exact,
            Certificate::PrimeIntersection {
                primes: minimal_primes_with(alg)?.len(),
            },
        )),
        Some(f) => {
            let cert = match smallest_power_in(f, &gb, 2) {
                Some(k) => Certificate::Witness {
                    f: (*f).clone(),
                    power: k,
                },
                None => Certificate::RadicalElement { f: (*f).clone() },
            };
            Ok(RadicalVerdict::decided(
                Radicality::NonRadical,
                Method::Exact,
                cert,
            ))
        }
    }
}

/// Orders tried when looking for a squarefree initial ideal.
fn candidate_orders(ring: &CollectionRing) -> Vec<MonomialOrder> {
    let n = ring.len();
    let natural: Vec<usize> = (0..n).collect();
    let reversed: Vec<usize> = (0..n).rev().collect();
    // Column-major variants.
    let mut by_column: Vec<usize> = natural.clone();
    by_column.sort_by_key(|&v| {
        let p = ring.vertex(v);
        (p.x, p.y)
    });
    let mut by_column_rev = by_column.clone();
    by_column_rev.reverse();
    let mut out = Vec::new();
    for sig in [natural, reversed, by_column, by_column_rev] {
        out.push(MonomialOrder::degrevlex(sig.clone()).expect("permutation"));
        out.push(MonomialOrder::lex(sig).expect("permutation"));
    }
    out
}

/// Looks for a term order under which `in(I_adj)` is squarefree.
pub fn squarefree_initial(alg: &CollectionAlgebra) -> Result<Option<MonomialOrder>> {
    let gens: Vec<Polynomial> = alg.adjacent_ideal().generators().to_vec();
    for order in candidate_orders(alg.ring()) {
        alg.budget().check_time()?;
        let gb = groebner_basis(&gens, &order, alg.budget())?;
        if gb.leading_monomials().iter().all(|m| m.is_squarefree()) {
            return Ok(Some(order));
        }
    }
    Ok(None)
}

/// Lattice combinations `sum c_i v_i` with small coefficients, by increasing support.
fn lattice_combinations(
    ring: &CollectionRing,
    c: &CellCollection,
    opts: &WitnessOptions,
) -> Vec<Vec<i64>> {
    let vecs: Vec<Vec<i64>> = c.cells().map(|cell| ring.cell_vector(cell)).collect();
    let k = vecs.len();
    let coeffs: Vec<i64> = (1..=opts.coefficient_bound).flat_map(|a| [a, -a]).collect();
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for size in 2..=opts.support_bound.min(k) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            // Sign of the first coefficient fixed to positive; `e` and `-e` give the same binomial.
            let total = coeffs.len().pow(size as u32 - 1);
            for code in 0..total {
                let mut e = vec![0i64; ring.len()];
                let mut rest = code;
                for (pos, &cell) in idx.iter().enumerate() {
                    let a = if pos == 0 {
                        1
                    } else {
                        let a = coeffs[rest % coeffs.len()];
                        rest /= coeffs.len();
                        a
                    };
                    for (x, y) in e.iter_mut().zip(&vecs[cell]) {
                        *x += a * y;
                    }
                }
                if e.iter().any(|&x| x != 0) && seen.insert(e.clone()) {
                    out.push(e);
                }
            }
            let mut p = size;
            loop {
                if p == 0 {
                    break;
                }
                p -= 1;
                if idx[p] < k - size + p {
                    idx[p] += 1;
                    for q in p + 1..size {
                        idx[q] = idx[q - 1] + 1;
                    }
                    break;
                }
                if p == 0 {
                    idx.clear();
                }
            }
            if idx.is_empty() || idx[0] > k - size {
                break;
            }
        }
    }
    out.sort_by_key(|e| e.iter().map(|x| x.unsigned_abs()).sum::<u64>());
    out
}

/// Squarefree monomials of degree at most `bound` meeting each of `sets` (variable masks).
fn hitting_monomials(sets: &[Vec<usize>], nvars: usize, bound: u32) -> Vec<Vec<usize>> {
    fn rec(sets: &[Vec<usize>], chosen: &mut Vec<usize>, bound: u32, out: &mut Vec<Vec<usize>>) {
        let Some(open) = sets.iter().find(|s| !s.iter().any(|v| chosen.contains(v))) else {
            let mut m = chosen.clone();
            m.sort_unstable();
            if !out.contains(&m) {
                out.push(m);
            }
            return;
        };
        if chosen.len() as u32 >= bound {
            return;
        }
        for &v in open {
            chosen.push(v);
            rec(sets, chosen, bound, out);
            chosen.pop();
        }
    }
    let _ = nvars;
    let mut out = Vec::new();
    rec(sets, &mut Vec::new(), bound, &mut out);
    // Keep only inclusion-minimal sets.
    let minimal: Vec<Vec<usize>> = out
        .iter()
        .filter(|m| {
            !out.iter()
                .any(|o| o.len() < m.len() && o.iter().all(|v| m.contains(v)))
        })
        .cloned()
        .collect();
    let mut minimal = minimal;
    minimal.sort_by_key(|m| (m.len(), m.clone()));
    minimal
}

/// Searches for `f = m (x^{e+} - x^{e-})` with `f` outside `I` and `f^2` inside.
pub fn witness_search(
    alg: &CollectionAlgebra,
    opts: &WitnessOptions,
) -> Result<Option<Polynomial>> {
    let c = alg.collection();
    let ring = alg.ring();
    let gb = alg.adjacent_basis()?;
    let primes = minimal_primes_with(alg)?;
    let n = ring.len();
    let prime_sets: Vec<(AdmissibleSet, Vec<usize>)> = primes
        .iter()
        .filter(|p| !p.admissible.is_empty())
        .map(|p| {
            let vars = p
                .admissible
                .vertices()
                .iter()
                .map(|v| ring.var(v).expect("vertex"))
                .collect();
            (p.admissible.clone(), vars)
        })
        .collect();
    for e in lattice_combinations(ring, c, opts) {
        alg.budget().check_time()?;
        let b = ring.lattice_binomial(&e);
        let bdeg = b.total_degree();
        if bdeg >= opts.degree_bound || gb.contains(&b) {
            continue;
        }
        let (u, v) = b.as_pure_binomial().expect("binomial");
        let v = v.expect("two terms");
        let failing: Vec<Vec<usize>> = prime_sets
            .iter()
            .filter(|(w, _)| !alg.binomial_in_prime(&u, &v, w))
            .map(|(_, vars)| vars.clone())
            .collect();
        let bound = opts.multiplier_bound.min(opts.degree_bound - bdeg);
        let mut dead: Vec<Monomial> = Vec::new();
        let mut queue: Vec<Monomial> = hitting_monomials(&failing, n, bound)
            .into_iter()
            .map(Monomial::from_vars)
            .collect();
        // Grow each hitting monomial by further variables up to the bound.
        let mut k = 0;
        while k < queue.len() {
            alg.budget().check_time()?;
            let m = queue[k].clone();
            k += 1;
            if dead.iter().any(|d| d.divides(&m)) {
                continue;
            }
            let f = b.mul_monomial(&crate::polyalg::Rational::one(), &m);
            if gb.contains(&f) {
                dead.push(m);
                continue;
            }
            if gb.contains(&f.mul(&f)) {
                return Ok(Some(f));
            }
            if m.degree() < bound {
                for x in 0..n {
                    let grown = m.mul(&Monomial::var(x));
                    if !queue.contains(&grown) {
                        queue.push(grown);
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Non-radicality by embedding a known non-radical configuration `C'` such that
/// every extra cell has a side avoiding `V(C')`.
pub fn screen_nonradical(c: &CellCollection, lib: &ConfigLibrary) -> Option<Certificate> {
    for entry in lib.entries() {
        for sym in Symmetry::all() {
            let img = entry.collection.transform(sym).normalized();
            let Some(anchor) = img.cells().next().copied() else {
                continue;
            };
            for target in c.cells() {
                let placed = img.translate(target.x - anchor.x, target.y - anchor.y);
                if !placed.is_subset(c) {
                    continue;
                }
                let supported = c.cells().filter(|cell| !placed.contains(cell)).all(|cell| {
                    cell.edges()
                        .iter()
                        .any(|e| !placed.has_vertex(&e.0) && !placed.has_vertex(&e.1))
                });
                if supported {
                    return Some(Certificate::Embedded {
                        image: placed,
                        entry: entry.name.clone(),
                    });
                }
            }
        }
    }
    None
}

fn decide(alg: &CollectionAlgebra, opts: &RadicalOptions) -> Result<RadicalVerdict> {
    let c = alg.collection();
    match opts.method {
        Method::Exact => exact(alg),
        Method::Witness => Ok(match witness_search(alg, &opts.witness)? {
            Some(f) => RadicalVerdict::decided(
                Radicality::NonRadical,
                Method::Witness,
                Certificate::Witness { f, power: 2 },
            ),
            None => RadicalVerdict::unknown(Method::Witness),
        }),
        Method::Screen => Ok(
            match opts
                .library
                .as_deref()
                .and_then(|lib| screen_nonradical(c, lib))
            {
                Some(cert) => RadicalVerdict::decided(Radicality::NonRadical, Method::Screen, cert),
                None => RadicalVerdict::unknown(Method::Screen),
            },
        ),
        Method::SquarefreeInitial => Ok(match squarefree_initial(alg)? {
            Some(order) => RadicalVerdict::decided(
                Radicality::Radical,
                Method::SquarefreeInitial,
                Certificate::SquarefreeInitial { order },
            ),
            None => RadicalVerdict::unknown(Method::SquarefreeInitial),
        }),
        Method::Auto => {
            let parts = c.weak_components();
            if parts.len() > 1 {
                let mut all = true;
                for part in parts {
                    let sub = CollectionAlgebra::new(&part, alg.budget().clone());
                    let v = decide(&sub, opts)?;
                    match v.verdict {
                        Radicality::NonRadical => {
                            return Ok(RadicalVerdict::decided(
                                Radicality::NonRadical,
                                v.method,
                                Certificate::Part {
                                    part,
                                    inner: Box::new(v.certificate.expect("decided")),
                                },
                            ))
                        }
                        Radicality::Unknown => all = false,
                        Radicality::Radical => {}
                    }
                }
                return Ok(if all {
                    RadicalVerdict::decided(
                        Radicality::Radical,
                        Method::Auto,
                        Certificate::AllParts {
                            parts: c.weak_components().len(),
                        },
                    )
                } else {
                    RadicalVerdict::unknown(Method::Auto)
                });
            }
            for m in [
                Method::Screen,
                Method::SquarefreeInitial,
                Method::Witness,
                Method::Exact,
            ] {
                let v = decide(
                    alg,
                    &RadicalOptions {
                        method: m,
                        ..opts.clone()
                    },
                )?;
                if v.verdict != Radicality::Unknown {
                    return Ok(v);
                }
            }
            Ok(RadicalVerdict::unknown(Method::Auto))
        }
    }
}

/// Decides radicality with the configured method. Outside the exact method,
/// budget exhaustion yields an `Unknown` verdict rather than an error.
pub fn is_radical(c: &CellCollection, opts: &RadicalOptions) -> Result<RadicalVerdict> {
    let alg = CollectionAlgebra::new(c, opts.budget());
    match decide(&alg, opts) {
        Err(Error::Budget(_)) if opts.method != Method::Exact => {
            Ok(RadicalVerdict::unknown(opts.method))
        }
        other => other,
    }
}

/// Not radical, while every weakly connected collection obtained by deleting one cell is radical.
pub fn is_minimally_non_radical(c: &CellCollection, opts: &RadicalOptions) -> Result<bool> {
    let need = |d: &CellCollection| -> Result<bool> {
        is_radical(d, opts)?
            .is_radical()
            .ok_or_else(|| Error::Budget(format!("radicality of {d} undecided")))
    };
    if need(c)? {
        return Ok(false);
    }
    for (_, rest) in c.connected_deletions() {
        if !need(&rest)? {
            return Ok(false);
        }
    }
    Ok(true)
}
