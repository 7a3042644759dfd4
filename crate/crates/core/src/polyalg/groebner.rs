//! Buchberger's algorithm with the Gebauer-Moeller criteria.
//!
//! Two element representations share the pair machinery: pure difference
//! binomials `x^u - x^v` (and monomials), which never need coefficient
//! arithmetic, and general polynomials over the rationals.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::polyalg::monomial::Monomial;
use crate::polyalg::order::{cmp_ranked, MonomialOrder, OrderKind};
use crate::polyalg::polynomial::Polynomial;
use crate::polyalg::rational::Rational;

/// Resource limits for a computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_basis: usize,
    pub max_degree: u32,
    pub deadline: Option<Instant>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_basis: 200_000,
            max_degree: 256,
            deadline: None,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_basis: usize::MAX,
            max_degree: u32::MAX,
            deadline: None,
        }
    }

    /// Default limits with a wall-clock allowance starting now.
    pub fn with_time_limit(limit: Duration) -> Self {
        Budget {
            deadline: Some(Instant::now() + limit),
            ..Self::default()
        }
    }

    pub fn check_time(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(Error::Budget("time limit reached".into())),
            _ => Ok(()),
        }
    }
}

trait Element: Clone {
    fn lead(&self) -> &Monomial;
    fn lead_mask(&self) -> u64;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BinElem {
    lead: Monomial,
    tail: Option<Monomial>,
    mask: u64,
}

impl BinElem {
    fn new(lead: Monomial, tail: Option<Monomial>) -> Self {
        let mask = lead.mask();
        BinElem { lead, tail, mask }
    }

    /// `a - b` with either side possibly zero.
    fn from_difference(kind: OrderKind, a: Option<Monomial>, b: Option<Monomial>) -> Option<Self> {
        match (a, b) {
            (None, None) => None,
            (Some(x), None) | (None, Some(x)) => Some(Self::new(x, None)),
            (Some(x), Some(y)) => match cmp_ranked(kind, &x, &y) {
                Ordering::Equal => None,
                Ordering::Greater => Some(Self::new(x, Some(y))),
                Ordering::Less => Some(Self::new(y, Some(x))),
            },
        }
    }
}

impl Element for BinElem {
    fn lead(&self) -> &Monomial {
        &self.lead
    }
    fn lead_mask(&self) -> u64 {
        self.mask
    }
}

type Terms = Vec<(Rational, Monomial)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct RPoly {
    terms: Terms,
    mask: u64,
}

impl RPoly {
    /// Terms must be sorted decreasingly and the leading coefficient must be one.
    fn new(terms: Terms) -> Self {
        let mask = terms.first().map(|t| t.1.mask()).unwrap_or(0);
        RPoly { terms, mask }
    }
}

impl Element for RPoly {
    fn lead(&self) -> &Monomial {
        &self.terms[0].1
    }
    fn lead_mask(&self) -> u64 {
        self.mask
    }
}

fn find_reducer<'a, E: Element>(m: &Monomial, store: &'a [E], active: &[usize]) -> Option<&'a E> {
    let mask = m.mask();
    active
        .iter()
        .map(|&i| &store[i])
        .find(|g| g.lead_mask() & !mask == 0 && g.lead().divides(m))
}

fn reduce_monomial(mut m: Monomial, store: &[BinElem], active: &[usize]) -> Option<Monomial> {
    while let Some(g) = find_reducer(&m, store, active) {
        let q = m.div(&g.lead).expect("divisor");
        m = q.mul(g.tail.as_ref()?);
    }
    Some(m)
}

fn sub_scaled(
    kind: OrderKind,
    p: &[(Rational, Monomial)],
    c: &Rational,
    m: &Monomial,
    g: &[(Rational, Monomial)],
) -> Terms {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let scaled = |j: usize| (-(&g[j].0 * c), g[j].1.mul(m));
    let mut pending: Option<(Rational, Monomial)> = None;
    while i < p.len() || j < g.len() || pending.is_some() {
        if pending.is_none() && j < g.len() {
            pending = Some(scaled(j));
            j += 1;
        }
        match (&pending, p.get(i)) {
            (Some(q), Some(t)) => match cmp_ranked(kind, &t.1, &q.1) {
                Ordering::Greater => {
                    out.push(t.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(pending.take().unwrap());
                }
                Ordering::Equal => {
                    let s = &t.0 + &q.0;
                    if !s.is_zero() {
                        out.push((s, t.1.clone()));
                    }
                    pending = None;
                    i += 1;
                }
            },
            (Some(_), None) => out.push(pending.take().unwrap()),
            (None, Some(t)) => {
                out.push(t.clone());
                i += 1;
            }
            (None, None) => break,
        }
    }
    out
}

fn reduce_terms(
    kind: OrderKind,
    mut p: Terms,
    store: &[RPoly],
    active: &[usize],
    budget: &Budget,
) -> Result<Terms> {
    let mut rem: Terms = Vec::new();
    let mut start = 0;
    let mut steps = 0u32;
    while start < p.len() {
        steps = steps.wrapping_add(1);
        if steps % 4096 == 0 {
            budget.check_time()?;
        }
        let (c, m) = &p[start];
        match find_reducer(m, store, active) {
            Some(g) => {
                let q = m.div(g.lead()).expect("divisor");
                let c = c.clone();
                p = sub_scaled(kind, &p[start..], &c, &q, &g.terms);
                start = 0;
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    Ok(rem)
}

fn make_monic(mut t: Terms) -> Option<RPoly> {
    if t.is_empty() {
        return None;
    }
    if !t[0].0.is_one() {
        let inv = t[0].0.recip();
        for term in t.iter_mut() {
            term.0 = &term.0 * &inv;
        }
    }
    Some(RPoly::new(t))
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Engine<'a, E: Element> {
    kind: OrderKind,
    budget: &'a Budget,
    store: Vec<E>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl<'a, E: Element> Engine<'a, E> {
    fn new(kind: OrderKind, budget: &'a Budget) -> Self {
        Engine {
            kind,
            budget,
            store: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
        }
    }

    fn pair_cmp(&self, a: &Pair, b: &Pair) -> Ordering {
        a.lcm
            .degree()
            .cmp(&b.lcm.degree())
            .then_with(|| cmp_ranked(self.kind, &a.lcm, &b.lcm))
            .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        let mut best: Option<usize> = None;
        for k in 0..self.pairs.len() {
            best = match best {
                Some(b) if self.pair_cmp(&self.pairs[b], &self.pairs[k]) != Ordering::Greater => {
                    Some(b)
                }
                _ => Some(k),
            };
        }
        best.map(|k| self.pairs.swap_remove(k))
    }

    fn insert(&mut self, h: E) -> Result<()> {
        if h.lead().degree() > self.budget.max_degree {
            return Err(Error::Budget(format!(
                "degree {} exceeds limit {}",
                h.lead().degree(),
                self.budget.max_degree
            )));
        }
        if self.active.len() >= self.budget.max_basis {
            return Err(Error::Budget(format!(
                "basis exceeds {} elements",
                self.budget.max_basis
            )));
        }
        let hi = self.store.len();
        let hl = h.lead().clone();
        self.store.push(h);

        let mut candidates: Vec<Pair> = self
            .active
            .iter()
            .map(|&g| Pair {
                i: g,
                j: hi,
                lcm: self.store[g].lead().lcm(&hl),
            })
            .collect();
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = candidates.pop() {
            let coprime = self.store[p.i].lead().coprime(&hl);
            let dominated = candidates
                .iter()
                .chain(kept.iter())
                .any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(p);
            }
        }
        kept.retain(|p| !self.store[p.i].lead().coprime(&hl));

        let store = &self.store;
        self.pairs.retain(|p| {
            !hl.divides(&p.lcm)
                || store[p.i].lead().lcm(&hl) == p.lcm
                || store[p.j].lead().lcm(&hl) == p.lcm
        });
        self.pairs.extend(kept);
        self.active.retain(|&g| !hl.divides(store[g].lead()));
        self.active.push(hi);
        Ok(())
    }
}

fn run_binomial(
    inputs: Vec<(Monomial, Option<Monomial>)>,
    kind: OrderKind,
    budget: &Budget,
) -> Result<Vec<BinElem>> {
    let mut eng: Engine<BinElem> = Engine::new(kind, budget);
    let reduce = |e: (Option<Monomial>, Option<Monomial>), eng: &Engine<BinElem>| {
        let a =
            e.0.and_then(|m| reduce_monomial(m, &eng.store, &eng.active));
        let b =
            e.1.and_then(|m| reduce_monomial(m, &eng.store, &eng.active));
        BinElem::from_difference(kind, a, b)
    };
    for (u, v) in inputs {
        if let Some(h) = reduce((Some(u), v), &eng) {
            eng.insert(h)?;
        }
    }
    let mut iter = 0u32;
    while let Some(p) = eng.pop_pair() {
        iter = iter.wrapping_add(1);
        if iter % 256 == 0 {
            budget.check_time()?;
        }
        let (f, g) = (&eng.store[p.i], &eng.store[p.j]);
        let left = f
            .tail
            .as_ref()
            .map(|t| p.lcm.div(&f.lead).expect("lcm").mul(t));
        let right = g
            .tail
            .as_ref()
            .map(|t| p.lcm.div(&g.lead).expect("lcm").mul(t));
        if let Some(h) = reduce((left, right), &eng) {
            eng.insert(h)?;
        }
    }
    let mut basis: Vec<BinElem> = eng.active.iter().map(|&i| eng.store[i].clone()).collect();
    basis.sort_by(|a, b| cmp_ranked(kind, &a.lead, &b.lead));
    let all: Vec<usize> = (0..basis.len()).collect();
    let mut out = Vec::with_capacity(basis.len());
    for (k, e) in basis.iter().enumerate() {
        let others: Vec<usize> = all.iter().copied().filter(|&j| j != k).collect();
        let tail = e
            .tail
            .clone()
            .and_then(|t| reduce_monomial(t, &basis, &others));
        out.push(BinElem::new(e.lead.clone(), tail));
    }
    out.sort_by(|a, b| cmp_ranked(kind, &b.lead, &a.lead));
    Ok(out)
}

fn run_general(inputs: Vec<Terms>, kind: OrderKind, budget: &Budget) -> Result<Vec<RPoly>> {
    let mut eng: Engine<RPoly> = Engine::new(kind, budget);
    for t in inputs {
        let r = reduce_terms(kind, t, &eng.store, &eng.active, budget)?;
        if let Some(h) = make_monic(r) {
            eng.insert(h)?;
        }
    }
    while let Some(p) = eng.pop_pair() {
        budget.check_time()?;
        let (f, g) = (&eng.store[p.i], &eng.store[p.j]);
        let mf = p.lcm.div(f.lead()).expect("lcm");
        let mg = p.lcm.div(g.lead()).expect("lcm");
        let left: Terms = f.terms[1..]
            .iter()
            .map(|(c, m)| (c.clone(), m.mul(&mf)))
            .collect();
        let s = sub_scaled(kind, &left, &Rational::one(), &mg, &g.terms[1..]);
        let r = reduce_terms(kind, s, &eng.store, &eng.active, budget)?;
        if let Some(h) = make_monic(r) {
            eng.insert(h)?;
        }
    }
    let mut basis: Vec<RPoly> = eng.active.iter().map(|&i| eng.store[i].clone()).collect();
    basis.sort_by(|a, b| cmp_ranked(kind, a.lead(), b.lead()));
    let mut out = Vec::with_capacity(basis.len());
    for k in 0..basis.len() {
        let others: Vec<usize> = (0..basis.len()).filter(|&j| j != k).collect();
        let tail = reduce_terms(kind, basis[k].terms[1..].to_vec(), &basis, &others, budget)?;
        let mut terms = vec![basis[k].terms[0].clone()];
        terms.extend(tail);
        out.push(RPoly::new(terms));
    }
    out.sort_by(|a, b| cmp_ranked(kind, b.lead(), a.lead()));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Binomial(Vec<BinElem>),
    General(Vec<RPoly>),
}

/// A reduced Gröbner basis together with its order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    rank: Vec<usize>,
    repr: Repr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Strategy {
    Auto,
    General,
}

fn to_ranked_terms(p: &Polynomial, rank: &[usize], kind: OrderKind) -> Terms {
    let mut t: Terms = p
        .terms()
        .iter()
        .map(|(c, m)| (c.clone(), m.rename(rank)))
        .collect();
    t.sort_by(|a, b| cmp_ranked(kind, &b.1, &a.1));
    t
}

fn check_vars(gens: &[Polynomial], nvars: usize) -> Result<()> {
    match gens.iter().filter_map(|g| g.max_var()).max() {
        Some(v) if v >= nvars => Err(Error::Order(format!(
            "variable {v} outside a ring of {nvars} variables"
        ))),
        _ => Ok(()),
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Uses the binomial engine when every generator is a monomial or a pure
/// difference binomial.
pub fn groebner_basis(
    gens: &[Polynomial],
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<GroebnerBasis> {
    compute(gens, order, budget, Strategy::Auto)
}

/// As [`groebner_basis`] but always with rational coefficient arithmetic.
pub fn groebner_basis_general(
    gens: &[Polynomial],
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<GroebnerBasis> {
    compute(gens, order, budget, Strategy::General)
}

fn compute(
    gens: &[Polynomial],
    order: &MonomialOrder,
    budget: &Budget,
    strategy: Strategy,
) -> Result<GroebnerBasis> {
    check_vars(gens, order.nvars())?;
    let rank = order.rank_map();
    let kind = order.kind();
    let binomials: Option<Vec<(Monomial, Option<Monomial>)>> = match strategy {
        Strategy::Auto => gens
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.as_pure_binomial())
            .collect(),
        Strategy::General => None,
    };
    let repr = match binomials {
        Some(bs) => {
            let ranked = bs
                .into_iter()
                .map(|(u, v)| (u.rename(&rank), v.map(|v| v.rename(&rank))))
                .collect();
            Repr::Binomial(run_binomial(ranked, kind, budget)?)
        }
        None => {
            let inputs = gens
                .iter()
                .filter(|g| !g.is_zero())
                .map(|g| to_ranked_terms(g, &rank, kind))
                .collect();
            Repr::General(run_general(inputs, kind, budget)?)
        }
    };
    Ok(GroebnerBasis {
        order: order.clone(),
        rank,
        repr,
    })
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        match &self.repr {
            Repr::Binomial(b) => b.len(),
            Repr::General(g) => g.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_binomial(&self) -> bool {
        matches!(self.repr, Repr::Binomial(_))
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.leading_monomials_ranked().iter().any(|m| m.is_one())
    }

    fn unrank(&self) -> &[usize] {
        self.order.significance()
    }

    fn leading_monomials_ranked(&self) -> Vec<Monomial> {
        match &self.repr {
            Repr::Binomial(b) => b.iter().map(|e| e.lead.clone()).collect(),
            Repr::General(g) => g.iter().map(|e| e.lead().clone()).collect(),
        }
    }

    /// Leading monomials in natural variables, in basis order.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.leading_monomials_ranked()
            .iter()
            .map(|m| m.rename(self.unrank()))
            .collect()
    }

    /// Basis elements, monic, sorted by decreasing leading monomial.
    pub fn polynomials(&self) -> Vec<Polynomial> {
        let un = self.unrank();
        match &self.repr {
            Repr::Binomial(b) => b
                .iter()
                .map(|e| match &e.tail {
                    Some(t) => Polynomial::binomial(e.lead.rename(un), t.rename(un)),
                    None => Polynomial::monomial(e.lead.rename(un)),
                })
                .collect(),
            Repr::General(g) => g
                .iter()
                .map(|e| {
                    Polynomial::from_terms(e.terms.iter().map(|(c, m)| (c.clone(), m.rename(un))))
                })
                .collect(),
        }
    }

    /// Binomial elements as `(lead, tail)` in natural variables, when the basis is binomial.
    pub fn binomials(&self) -> Option<Vec<(Monomial, Option<Monomial>)>> {
        let un = self.unrank();
        match &self.repr {
            Repr::Binomial(b) => Some(
                b.iter()
                    .map(|e| (e.lead.rename(un), e.tail.as_ref().map(|t| t.rename(un))))
                    .collect(),
            ),
            Repr::General(_) => None,
        }
    }

    /// Normal form of a monomial for a binomial basis; `None` means zero.
    pub fn reduce_monomial(&self, m: &Monomial) -> Option<Option<Monomial>> {
        match &self.repr {
            Repr::Binomial(b) => {
                let all: Vec<usize> = (0..b.len()).collect();
                Some(
                    reduce_monomial(m.rename(&self.rank), b, &all).map(|r| r.rename(self.unrank())),
                )
            }
            Repr::General(_) => None,
        }
    }

    /// Remainder of `p` on division by the basis.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        self.try_normal_form(p, &Budget::unlimited())
            .expect("unlimited budget")
    }

    pub fn try_normal_form(&self, p: &Polynomial, budget: &Budget) -> Result<Polynomial> {
        check_vars(std::slice::from_ref(p), self.order.nvars())?;
        let un = self.unrank();
        match &self.repr {
            Repr::Binomial(b) => {
                let all: Vec<usize> = (0..b.len()).collect();
                Ok(Polynomial::from_terms(p.terms().iter().filter_map(
                    |(c, m)| {
                        reduce_monomial(m.rename(&self.rank), b, &all)
                            .map(|r| (c.clone(), r.rename(un)))
                    },
                )))
            }
            Repr::General(g) => {
                let all: Vec<usize> = (0..g.len()).collect();
                let kind = self.order.kind();
                let r = reduce_terms(kind, to_ranked_terms(p, &self.rank, kind), g, &all, budget)?;
                Ok(Polynomial::from_terms(
                    r.into_iter().map(|(c, m)| (c, m.rename(un))),
                ))
            }
        }
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Elements involving none of the variables in `vars`.
    pub fn polynomials_avoiding(&self, vars: &[usize]) -> Vec<Polynomial> {
        self.polynomials()
            .into_iter()
            .filter(|p| p.variables().iter().all(|v| !vars.contains(v)))
            .collect()
    }
}
