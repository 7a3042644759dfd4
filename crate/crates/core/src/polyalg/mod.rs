//! Polynomial arithmetic and Gröbner bases over the rationals.

pub mod groebner;
pub mod ideal;
pub mod monomial;
pub mod order;
pub mod polynomial;
pub mod rational;

pub use groebner::{groebner_basis, groebner_basis_general, Budget, GroebnerBasis};
pub use ideal::{
    eliminate, ideal_equal, intersect, radical_membership, saturate, saturate_homogeneous, Ideal,
};
pub use monomial::Monomial;
pub use order::{MonomialOrder, OrderKind};
pub use polynomial::{Polynomial, VariableContext};
pub use rational::Rational;
