//! Sparse polynomials with rational coefficients.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::{self, Write as _};

use crate::polyalg::monomial::Monomial;
use crate::polyalg::order::{cmp_ranked, MonomialOrder, OrderKind};
use crate::polyalg::rational::Rational;

/// Variable names of a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VariableContext {
    names: Vec<String>,
    lookup: HashMap<String, usize>,
}

impl VariableContext {
    pub fn new(names: Vec<String>) -> Self {
        let lookup = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        VariableContext { names, lookup }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.lookup.get(name).copied()
    }

    /// Same names plus fresh ones appended at the end.
    pub fn extended(&self, extra: &[&str]) -> Self {
        let mut names = self.names.clone();
        names.extend(extra.iter().map(|s| s.to_string()));
        Self::new(names)
    }
}

/// Comparison used for the canonical term order: degrevlex with `x_0 > x_1 > ...`.
pub(crate) fn canonical_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    cmp_ranked(OrderKind::DegRevLex, a, b)
}

/// A polynomial as a list of nonzero terms sorted decreasingly in the canonical order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Polynomial {
    terms: Vec<(Rational, Monomial)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial {
                terms: vec![(c, m)],
            }
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(Rational::one(), m)
    }

    pub fn var(v: usize) -> Self {
        Self::monomial(Monomial::var(v))
    }

    /// `x^u - x^v`.
    pub fn binomial(u: Monomial, v: Monomial) -> Self {
        Self::from_terms([(Rational::one(), u), (Rational::from_int(-1), v)])
    }

    /// Sums arbitrary terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, Monomial)>) -> Self {
        let mut v: Vec<(Rational, Monomial)> =
            terms.into_iter().filter(|t| !t.0.is_zero()).collect();
        v.sort_by(|a, b| canonical_cmp(&b.1, &a.1));
        let mut out: Vec<(Rational, Monomial)> = Vec::with_capacity(v.len());
        for (c, m) in v {
            match out.last_mut() {
                Some(last) if last.1 == m => {
                    last.0 = &last.0 + &c;
                    if last.0.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push((c, m)),
            }
        }
        Polynomial { terms: out }
    }

    pub fn terms(&self) -> &[(Rational, Monomial)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Rational, Monomial)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.1.is_one())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.1.degree()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms
            .windows(2)
            .all(|w| w[0].1.degree() == w[1].1.degree())
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().map(|t| &t.1)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .iter()
            .find(|t| &t.1 == m)
            .map(|t| t.0.clone())
            .unwrap_or_default()
    }

    /// Sorted list of variables that occur.
    pub fn variables(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.iter().flat_map(|t| t.1.support()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn max_var(&self) -> Option<usize> {
        self.terms.iter().filter_map(|t| t.1.max_var()).max()
    }

    /// Leading term under `order`.
    pub fn leading(&self, order: &MonomialOrder) -> Option<&(Rational, Monomial)> {
        if order.kind() == OrderKind::DegRevLex
            && order
                .significance()
                .iter()
                .enumerate()
                .all(|(i, &v)| i == v)
        {
            return self.terms.first();
        }
        let rank = order.rank_map();
        self.terms
            .iter()
            .map(|t| (t, t.1.rename(&rank)))
            .max_by(|a, b| cmp_ranked(order.kind(), &a.1, &b.1))
            .map(|(t, _)| t)
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Option<Monomial> {
        self.leading(order).map(|t| t.1.clone())
    }

    /// Scaled so the leading coefficient under `order` is one.
    pub fn monic(&self, order: &MonomialOrder) -> Polynomial {
        match self.leading(order) {
            Some((c, _)) => self.scale(&c.recip()),
            None => Self::zero(),
        }
    }

    /// If the polynomial is a nonzero multiple of `x^u - x^v` with `u != v`,
    /// or of a single monomial, returns `(u, Some(v))` or `(u, None)`.
    pub fn as_pure_binomial(&self) -> Option<(Monomial, Option<Monomial>)> {
        match self.terms.as_slice() {
            [(_, m)] => Some((m.clone(), None)),
            [(a, u), (b, v)] if (a + b).is_zero() => Some((u.clone(), Some(v.clone()))),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(a, m)| (a * c, m.clone())).collect(),
        }
    }

    pub fn mul_monomial(&self, c: &Rational, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(a, t)| (a * c, t.mul(m))).collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match canonical_cmp(&a[i].1, &b[j].1) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].0 + &b[j].0;
                    if !c.is_zero() {
                        out.push((c, a[i].1.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Polynomial { terms: out }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(c, m)| (-c.clone(), m.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (c, m) in &other.terms {
            acc = acc.add(&self.mul_monomial(c, m));
        }
        acc
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Renames variables; `map` must be injective on the variables present.
    pub fn rename(&self, map: &[usize]) -> Polynomial {
        Self::from_terms(self.terms.iter().map(|(c, m)| (c.clone(), m.rename(map))))
    }

    /// Renders with the names of `ctx`; variables outside it print as `v<i>`.
    pub fn display<'a>(&'a self, ctx: &'a VariableContext) -> impl fmt::Display + 'a {
        DisplayPoly {
            p: self,
            ctx,
            order: None,
        }
    }

    /// Like [`Polynomial::display`], with terms and factors listed largest first under `order`.
    pub fn display_in<'a>(
        &'a self,
        ctx: &'a VariableContext,
        order: &'a MonomialOrder,
    ) -> impl fmt::Display + 'a {
        DisplayPoly {
            p: self,
            ctx,
            order: Some(order),
        }
    }
}

struct DisplayPoly<'a> {
    p: &'a Polynomial,
    ctx: &'a VariableContext,
    order: Option<&'a MonomialOrder>,
}

impl fmt::Display for DisplayPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return f.write_str("0");
        }
        let mut terms: Vec<&(Rational, Monomial)> = self.p.terms.iter().collect();
        let rank = self.order.map(|o| o.rank_map());
        if let Some(o) = self.order {
            terms.sort_by(|a, b| o.cmp(&b.1, &a.1));
        }
        let mut s = String::new();
        for (k, (c, m)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            let mut vars: Vec<(usize, u32)> = m.iter().collect();
            if let Some(r) = &rank {
                vars.sort_by_key(|&(v, _)| r.get(v).copied().unwrap_or(v));
            }
            for (v, e) in vars {
                let name = if v < self.ctx.len() {
                    self.ctx.name(v).to_string()
                } else {
                    format!("v{v}")
                };
                if e == 1 {
                    factors.push(name);
                } else {
                    factors.push(format!("{name}^{e}"));
                }
            }
            let _ = write!(s, "{}", factors.join("*"));
        }
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(v: usize) -> Polynomial {
        Polynomial::var(v)
    }

    #[test]
    fn ring_identities() {
        let p = x(0).add(&x(1));
        let q = x(0).sub(&x(1));
        let lhs = p.mul(&q);
        let rhs = x(0).pow(2).sub(&x(1).pow(2));
        assert_eq!(lhs, rhs);
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.pow(3).len(), 4);
    }

    #[test]
    fn pure_binomial_detection() {
        let b = Polynomial::binomial(Monomial::from_vars([0, 1]), Monomial::from_vars([2, 3]));
        assert!(b.as_pure_binomial().is_some());
        assert!(b.scale(&Rational::new(-3, 2)).as_pure_binomial().is_some());
        assert!(x(0).add(&x(1)).as_pure_binomial().is_none());
    }

    #[test]
    fn leading_terms() {
        let p = x(0).add(&x(1).pow(2));
        let lex = MonomialOrder::natural_lex(2);
        let drl = MonomialOrder::natural_degrevlex(2);
        assert_eq!(p.leading_monomial(&lex), Some(Monomial::var(0)));
        assert_eq!(p.leading_monomial(&drl), Some(Monomial::var_pow(1, 2)));
    }

    #[test]
    fn display() {
        let ctx = VariableContext::new(vec!["a".into(), "b".into()]);
        let p = Polynomial::binomial(Monomial::from_vars([0, 0]), Monomial::from_vars([0, 1]))
            .add(&Polynomial::constant(Rational::new(3, 2)));
        assert_eq!(p.display(&ctx).to_string(), "a^2 - a*b + 3/2");
    }
}
