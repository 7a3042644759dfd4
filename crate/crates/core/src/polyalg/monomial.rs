//! Sparse monomials.

use std::cmp::Ordering;

use smallvec::SmallVec;

type Exps = SmallVec<[(u32, u32); 8]>;

/// A power product stored as `(variable, exponent)` pairs sorted by variable,
/// with every exponent positive.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Monomial {
    exps: Exps,
    degree: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: usize) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: usize, e: u32) -> Self {
        if e == 0 {
            return Self::one();
        }
        let mut exps = Exps::new();
        exps.push((v as u32, e));
        Monomial { exps, degree: e }
    }

    /// Builds from arbitrary pairs; repeated variables are added, zero exponents dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut v: Vec<(u32, u32)> = pairs
            .into_iter()
            .filter(|&(_, e)| e > 0)
            .map(|(i, e)| (i as u32, e))
            .collect();
        v.sort_unstable();
        let mut exps = Exps::new();
        for (i, e) in v {
            match exps.last_mut() {
                Some(last) if last.0 == i => last.1 += e,
                _ => exps.push((i, e)),
            }
        }
        let degree = exps.iter().map(|p| p.1).sum();
        Monomial { exps, degree }
    }

    /// Product of the listed variables, with repetition.
    pub fn from_vars(vars: impl IntoIterator<Item = usize>) -> Self {
        Self::from_pairs(vars.into_iter().map(|v| (v, 1)))
    }

    pub fn from_dense(exps: &[u32]) -> Self {
        Self::from_pairs(exps.iter().enumerate().map(|(i, &e)| (i, e)))
    }

    pub fn to_dense(&self, nvars: usize) -> Vec<u32> {
        let mut out = vec![0; nvars];
        for &(v, e) in &self.exps {
            out[v as usize] = e;
        }
        out
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, v: usize) -> u32 {
        self.exps
            .binary_search_by_key(&(v as u32), |p| p.0)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    /// `(variable, exponent)` pairs in increasing variable order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (usize, u32)> + ExactSizeIterator + '_ {
        self.exps.iter().map(|&(v, e)| (v as usize, e))
    }

    pub(crate) fn raw(&self) -> &[(u32, u32)] {
        &self.exps
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().map(|p| p.0 as usize)
    }

    pub fn max_var(&self) -> Option<usize> {
        self.exps.last().map(|p| p.0 as usize)
    }

    /// Bit `v % 64` set for every variable `v` in the support.
    pub fn mask(&self) -> u64 {
        self.exps.iter().fold(0, |m, p| m | 1u64 << (p.0 % 64))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.exps, &other.exps);
        let mut exps = Exps::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    exps.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    exps.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    exps.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&a[i..]);
        exps.extend_from_slice(&b[j..]);
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|&(v, e)| (v, e * k)).collect(),
            degree: self.degree * k,
        }
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.degree > other.degree || self.exps.len() > other.exps.len() {
            return false;
        }
        let b = &other.exps;
        let mut j = 0;
        for &(v, e) in &self.exps {
            while j < b.len() && b[j].0 < v {
                j += 1;
            }
            if j == b.len() || b[j].0 != v || b[j].1 < e {
                return false;
            }
            j += 1;
        }
        true
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let a = &self.exps;
        let mut exps = Exps::with_capacity(a.len());
        let mut i = 0;
        for &(v, e) in &other.exps {
            while i < a.len() && a[i].0 < v {
                exps.push(a[i]);
                i += 1;
            }
            if i == a.len() || a[i].0 != v || a[i].1 < e {
                return None;
            }
            if a[i].1 > e {
                exps.push((v, a[i].1 - e));
            }
            i += 1;
        }
        exps.extend_from_slice(&a[i..]);
        Some(Monomial {
            exps,
            degree: self.degree - other.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.merge_with(other, u32::max)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.exps, &other.exps);
        let mut exps = Exps::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    exps.push((a[i].0, a[i].1.min(b[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        let degree = exps.iter().map(|p| p.1).sum();
        Monomial { exps, degree }
    }

    fn merge_with(&self, other: &Monomial, f: fn(u32, u32) -> u32) -> Monomial {
        let (a, b) = (&self.exps, &other.exps);
        let mut exps = Exps::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    exps.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    exps.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    exps.push((a[i].0, f(a[i].1, b[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&a[i..]);
        exps.extend_from_slice(&b[j..]);
        let degree = exps.iter().map(|p| p.1).sum();
        Monomial { exps, degree }
    }

    /// No variable in common.
    pub fn coprime(&self, other: &Monomial) -> bool {
        if self.mask() & other.mask() == 0 {
            return true;
        }
        let (a, b) = (&self.exps, &other.exps);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|p| p.1 == 1)
    }

    /// Whether any variable of the monomial satisfies `pred`.
    pub fn touches(&self, mut pred: impl FnMut(usize) -> bool) -> bool {
        self.exps.iter().any(|p| pred(p.0 as usize))
    }

    /// Divides out the largest power of `v`.
    pub fn strip_var(&self, v: usize) -> (Monomial, u32) {
        let e = self.exponent(v);
        if e == 0 {
            return (self.clone(), 0);
        }
        let exps: Exps = self
            .exps
            .iter()
            .copied()
            .filter(|p| p.0 as usize != v)
            .collect();
        (
            Monomial {
                exps,
                degree: self.degree - e,
            },
            e,
        )
    }

    /// Renames variables through `map`, which must be injective on the support.
    pub fn rename(&self, map: &[usize]) -> Monomial {
        Self::from_pairs(self.iter().map(|(v, e)| (map[v], e)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..4, 6).prop_map(|v| Monomial::from_dense(&v))
    }

    proptest! {
        #[test]
        fn arithmetic_matches_dense(a in mono(), b in mono()) {
            let (da, db) = (a.to_dense(6), b.to_dense(6));
            let prod: Vec<u32> = da.iter().zip(&db).map(|(x, y)| x + y).collect();
            prop_assert_eq!(a.mul(&b).to_dense(6), prod);
            let l: Vec<u32> = da.iter().zip(&db).map(|(x, y)| *x.max(y)).collect();
            prop_assert_eq!(a.lcm(&b).to_dense(6), l);
            let g: Vec<u32> = da.iter().zip(&db).map(|(x, y)| *x.min(y)).collect();
            prop_assert_eq!(a.gcd(&b).to_dense(6), g);
            let divides = da.iter().zip(&db).all(|(x, y)| x <= y);
            prop_assert_eq!(a.divides(&b), divides);
            prop_assert_eq!(b.div(&a).is_some(), divides);
            if divides {
                prop_assert_eq!(b.div(&a).unwrap().mul(&a), b.clone());
            }
            let coprime = da.iter().zip(&db).all(|(x, y)| *x == 0 || *y == 0);
            prop_assert_eq!(a.coprime(&b), coprime);
            prop_assert_eq!(a.degree(), da.iter().sum::<u32>());
        }
    }
}
