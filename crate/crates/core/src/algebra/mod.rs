//! Generating functions, the Poisson bracket and the algebra families built on it.

mod family;
mod monomial;
mod polynomial;
mod table;

pub use family::{monomials_of_degree, AlgebraSpec, Element, Family};
pub use monomial::{Monomial, MonomialDisplay, Var, VariableSpec};
pub use polynomial::{bracket_monomials, poisson_bracket, SuperPolynomial};
pub use table::{build_structure_table, Basis, StructureTable};
