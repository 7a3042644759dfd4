//! Monomial orders.
//!
//! An order is a comparison rule together with a ranking of the variables,
//! most significant first. Internally monomials are rewritten in rank space,
//! where variable 0 is the most significant.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::polyalg::monomial::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    DegRevLex,
    /// The first `eliminated` ranked variables form a block compared first by
    /// degree reverse lexicographic order; ties are broken by degrevlex on the rest.
    Block {
        eliminated: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    significance: Vec<usize>,
}

impl MonomialOrder {
    /// `significance[0]` is the largest variable.
    pub fn new(kind: OrderKind, significance: Vec<usize>) -> Result<Self> {
        let n = significance.len();
        let mut seen = vec![false; n];
        for &v in &significance {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::Order("significance must be a permutation".into()));
            }
        }
        if let OrderKind::Block { eliminated } = kind {
            if eliminated > n {
                return Err(Error::Order("block larger than the ring".into()));
            }
        }
        Ok(MonomialOrder { kind, significance })
    }

    pub fn lex(significance: Vec<usize>) -> Result<Self> {
        Self::new(OrderKind::Lex, significance)
    }

    pub fn degrevlex(significance: Vec<usize>) -> Result<Self> {
        Self::new(OrderKind::DegRevLex, significance)
    }

    /// Lex with `x_0 > x_1 > ...`.
    pub fn natural_lex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            significance: (0..nvars).collect(),
        }
    }

    /// Degrevlex with `x_0 > x_1 > ...`.
    pub fn natural_degrevlex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::DegRevLex,
            significance: (0..nvars).collect(),
        }
    }

    /// Elimination order for `eliminate`; remaining variables keep their natural ranking.
    pub fn elimination(eliminate: &[usize], nvars: usize) -> Result<Self> {
        let mut sig: Vec<usize> = eliminate.to_vec();
        sig.extend((0..nvars).filter(|v| !eliminate.contains(v)));
        Self::new(
            OrderKind::Block {
                eliminated: eliminate.len(),
            },
            sig,
        )
    }

    /// Degrevlex with `v` the smallest variable.
    pub fn degrevlex_with_last(v: usize, nvars: usize) -> Self {
        let mut sig: Vec<usize> = (0..nvars).filter(|&u| u != v).collect();
        sig.push(v);
        MonomialOrder {
            kind: OrderKind::DegRevLex,
            significance: sig,
        }
    }

    /// Parses `lex:v1>v2>...` or `degrevlex:v1>v2>...`. Variables not listed
    /// follow the listed ones in natural order.
    pub fn parse(
        spec: &str,
        nvars: usize,
        resolve: impl Fn(&str) -> Option<usize>,
    ) -> Result<Self> {
        let (kind, rest) = spec
            .split_once(':')
            .ok_or_else(|| Error::Order(format!("missing ':' in '{spec}'")))?;
        let kind = match kind.trim() {
            "lex" => OrderKind::Lex,
            "degrevlex" | "grevlex" => OrderKind::DegRevLex,
            other => return Err(Error::Order(format!("unknown order kind '{other}'"))),
        };
        let mut sig = Vec::new();
        for label in rest.split('>').map(str::trim).filter(|s| !s.is_empty()) {
            let v = resolve(label)
                .ok_or_else(|| Error::Order(format!("unknown variable '{label}'")))?;
            if sig.contains(&v) {
                return Err(Error::Order(format!("variable '{label}' listed twice")));
            }
            sig.push(v);
        }
        let listed = sig.clone();
        sig.extend((0..nvars).filter(|v| !listed.contains(v)));
        Self::new(kind, sig)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.significance.len()
    }

    /// `kind:v1>v2>...`; lex and degrevlex descriptions re-parse with [`MonomialOrder::parse`].
    pub fn describe(&self, names: &[String]) -> String {
        let kind = match self.kind {
            OrderKind::Lex => "lex",
            OrderKind::DegRevLex => "degrevlex",
            OrderKind::Block { .. } => "block",
        };
        let vars: Vec<&str> = self
            .significance
            .iter()
            .map(|&v| names[v].as_str())
            .collect();
        format!("{kind}:{}", vars.join(">"))
    }

    pub fn significance(&self) -> &[usize] {
        &self.significance
    }

    /// `rank[v]` is the position of variable `v` in the significance list.
    pub fn rank_map(&self) -> Vec<usize> {
        let mut rank = vec![0; self.significance.len()];
        for (r, &v) in self.significance.iter().enumerate() {
            rank[v] = r;
        }
        rank
    }

    /// Compares monomials given in natural variable indices.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let rank = self.rank_map();
        cmp_ranked(self.kind, &a.rename(&rank), &b.rename(&rank))
    }
}

fn revlex_equal_degree(a: &[(u32, u32)], b: &[(u32, u32)]) -> Ordering {
    let (mut i, mut j) = (a.len(), b.len());
    while i > 0 && j > 0 {
        let (va, ea) = a[i - 1];
        let (vb, eb) = b[j - 1];
        match va.cmp(&vb) {
            Ordering::Equal => {
                if ea != eb {
                    return eb.cmp(&ea);
                }
                i -= 1;
                j -= 1;
            }
            Ordering::Greater => return Ordering::Less,
            Ordering::Less => return Ordering::Greater,
        }
    }
    match (i, j) {
        (0, 0) => Ordering::Equal,
        (0, _) => Ordering::Greater,
        _ => Ordering::Less,
    }
}

fn lex(a: &[(u32, u32)], b: &[(u32, u32)]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.0.cmp(&y.0) {
            Ordering::Equal => match x.1.cmp(&y.1) {
                Ordering::Equal => continue,
                o => return o,
            },
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    a.len().cmp(&b.len())
}

fn degree_of(a: &[(u32, u32)]) -> u32 {
    a.iter().map(|p| p.1).sum()
}

/// Comparison of monomials already expressed in rank space.
pub(crate) fn cmp_ranked(kind: OrderKind, a: &Monomial, b: &Monomial) -> Ordering {
    match kind {
        OrderKind::Lex => lex(a.raw(), b.raw()),
        OrderKind::DegRevLex => a
            .degree()
            .cmp(&b.degree())
            .then_with(|| revlex_equal_degree(a.raw(), b.raw())),
        OrderKind::Block { eliminated } => {
            let k = eliminated as u32;
            let (ra, rb) = (a.raw(), b.raw());
            let sa = ra.partition_point(|p| p.0 < k);
            let sb = rb.partition_point(|p| p.0 < k);
            let (ha, ta) = ra.split_at(sa);
            let (hb, tb) = rb.split_at(sb);
            degree_of(ha)
                .cmp(&degree_of(hb))
                .then_with(|| revlex_equal_degree(ha, hb))
                .then_with(|| degree_of(ta).cmp(&degree_of(tb)))
                .then_with(|| revlex_equal_degree(ta, tb))
        }
    }
}
