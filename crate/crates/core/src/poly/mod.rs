//! Exact polynomial arithmetic over the `d × n` variable grid, Gröbner
//! bases, Krull dimension and Hilbert functions.

pub mod groebner;
pub mod ideal;
pub mod monomial;
pub mod parse;
pub mod polynomial;

pub use groebner::{buchberger, is_groebner_basis, GroebnerBasis, GroebnerError, ResourceLimits};
pub use ideal::{hilbert_function, krull_dimension, standard_monomials, Ideal, IdealError};
pub use monomial::{monomials_of_degree, Monomial, MonomialOrder, VariableGrid};
pub use parse::{ParseError, Template};
pub use polynomial::{Coeff, Polynomial};
