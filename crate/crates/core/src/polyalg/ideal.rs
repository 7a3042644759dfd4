//! Ideals and the standard constructions on them.

use std::sync::Arc;

use crate::error::Result;
use crate::polyalg::groebner::{groebner_basis, Budget, GroebnerBasis};
use crate::polyalg::monomial::Monomial;
use crate::polyalg::order::MonomialOrder;
use crate::polyalg::polynomial::{Polynomial, VariableContext};
use crate::polyalg::rational::Rational;

/// A finitely generated ideal of the ring named by `ctx`.
#[derive(Clone, Debug)]
pub struct Ideal {
    ctx: Arc<VariableContext>,
    gens: Vec<Polynomial>,
    basis: Option<Arc<GroebnerBasis>>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.gens == other.gens
    }
}

impl Ideal {
    pub fn new(ctx: Arc<VariableContext>, gens: Vec<Polynomial>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal {
            ctx,
            gens,
            basis: None,
        }
    }

    /// Ideal generated by a known Gröbner basis.
    pub fn from_basis(ctx: Arc<VariableContext>, basis: GroebnerBasis) -> Self {
        Ideal {
            ctx,
            gens: basis.polynomials(),
            basis: Some(Arc::new(basis)),
        }
    }

    pub fn ctx(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.ctx.len()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn cached_basis(&self) -> Option<&GroebnerBasis> {
        self.basis.as_deref()
    }

    /// Reduced Gröbner basis, reusing the cached one when the order matches.
    pub fn groebner(&self, order: &MonomialOrder, budget: &Budget) -> Result<GroebnerBasis> {
        if let Some(b) = &self.basis {
            if b.order() == order {
                return Ok((**b).clone());
            }
        }
        groebner_basis(&self.gens, order, budget)
    }

    /// Basis for degrevlex with `x_0 > x_1 > ...`.
    pub fn standard_basis(&self, budget: &Budget) -> Result<GroebnerBasis> {
        self.groebner(&MonomialOrder::natural_degrevlex(self.nvars()), budget)
    }

    /// Copy carrying its degrevlex basis.
    pub fn with_standard_basis(mut self, budget: &Budget) -> Result<Self> {
        let b = self.standard_basis(budget)?;
        self.basis = Some(Arc::new(b));
        Ok(self)
    }

    pub fn contains(&self, f: &Polynomial, budget: &Budget) -> Result<bool> {
        Ok(self.standard_basis(budget)?.contains(f))
    }

    pub fn contains_ideal(&self, other: &Ideal, budget: &Budget) -> Result<bool> {
        let gb = self.standard_basis(budget)?;
        Ok(other.gens.iter().all(|g| gb.contains(g)))
    }

    pub fn is_unit(&self, budget: &Budget) -> Result<bool> {
        Ok(self.standard_basis(budget)?.is_unit())
    }

    fn extended_ctx(&self, name: &str) -> Arc<VariableContext> {
        Arc::new(self.ctx.extended(&[name]))
    }
}

/// `I : (prod of vars)^inf`, via one auxiliary variable per saturating variable.
pub fn saturate(ideal: &Ideal, vars: &[usize], budget: &Budget) -> Result<Ideal> {
    let n = ideal.nvars();
    let y = n;
    let order = MonomialOrder::elimination(&[y], n + 1)?;
    let mut gens = ideal.gens.clone();
    for &v in vars {
        let mut ext = gens.clone();
        ext.push(Polynomial::binomial(
            Monomial::from_vars([v, y]),
            Monomial::one(),
        ));
        let gb = groebner_basis(&ext, &order, budget)?;
        gens = gb.polynomials_avoiding(&[y]);
    }
    Ok(Ideal::new(ideal.ctx.clone(), gens))
}

/// Saturation of a homogeneous ideal: reverse lexicographic bases with the
/// saturating variable last, divided by the largest power of that variable.
pub fn saturate_homogeneous(ideal: &Ideal, vars: &[usize], budget: &Budget) -> Result<Ideal> {
    debug_assert!(ideal.gens.iter().all(|g| g.is_homogeneous()));
    let n = ideal.nvars();
    let mut gens = ideal.gens.clone();
    for &v in vars {
        let gb = groebner_basis(&gens, &MonomialOrder::degrevlex_with_last(v, n), budget)?;
        gens = gb
            .polynomials()
            .into_iter()
            .map(|p| divide_out_var(&p, v))
            .collect();
    }
    Ok(Ideal::new(ideal.ctx.clone(), gens))
}

fn divide_out_var(p: &Polynomial, v: usize) -> Polynomial {
    let e = p.monomials().map(|m| m.exponent(v)).min().unwrap_or(0);
    if e == 0 {
        return p.clone();
    }
    let d = Monomial::var_pow(v, e);
    Polynomial::from_terms(
        p.terms()
            .iter()
            .map(|(c, m)| (c.clone(), m.div(&d).expect("common factor"))),
    )
}

/// `I ∩ J` by eliminating `t` from `t I + (1 - t) J`.
pub fn intersect(a: &Ideal, b: &Ideal, budget: &Budget) -> Result<Ideal> {
    let n = a.nvars();
    let t = n;
    let tp = Polynomial::var(t);
    let one_minus_t = Polynomial::one().sub(&tp);
    let mut gens: Vec<Polynomial> = a.gens.iter().map(|f| f.mul(&tp)).collect();
    gens.extend(b.gens.iter().map(|g| g.mul(&one_minus_t)));
    let order = MonomialOrder::elimination(&[t], n + 1)?;
    let gb = crate::polyalg::groebner::groebner_basis_general(&gens, &order, budget)?;
    Ok(Ideal::new(a.ctx.clone(), gb.polynomials_avoiding(&[t])))
}

/// `I ∩ k[remaining variables]`, returned in the same ring.
pub fn eliminate(ideal: &Ideal, vars: &[usize], budget: &Budget) -> Result<Ideal> {
    let order = MonomialOrder::elimination(vars, ideal.nvars())?;
    let gb = groebner_basis(&ideal.gens, &order, budget)?;
    Ok(Ideal::new(ideal.ctx.clone(), gb.polynomials_avoiding(vars)))
}

/// Whether `f` lies in the radical of `I`, via `I + (1 - y f)`.
pub fn radical_membership(f: &Polynomial, ideal: &Ideal, budget: &Budget) -> Result<bool> {
    let n = ideal.nvars();
    let y = Polynomial::var(n);
    let mut gens = ideal.gens.clone();
    gens.push(Polynomial::one().sub(&y.mul(f)));
    let ext = Ideal::new(ideal.extended_ctx("_y"), gens);
    ext.is_unit(budget)
}

/// Equality through reduced degrevlex bases.
pub fn ideal_equal(a: &Ideal, b: &Ideal, budget: &Budget) -> Result<bool> {
    if a.nvars() != b.nvars() {
        return Ok(false);
    }
    Ok(a.standard_basis(budget)?.polynomials() == b.standard_basis(budget)?.polynomials())
}

/// Product of all variables of the ring.
pub fn variable_product(nvars: usize) -> Polynomial {
    Polynomial::term(Rational::one(), Monomial::from_vars(0..nvars))
}
