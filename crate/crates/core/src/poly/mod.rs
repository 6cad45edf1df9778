//! Polynomial substrate: F_p arithmetic, packed monomials, twisted free
//! modules, graded matrices and the Gröbner engine.

mod dense;
pub mod field;
pub mod groebner;
pub mod matrix;
pub mod monomial;
pub mod parse;
pub mod vector;

pub use field::{PolyRing, DEFAULT_PRIME};
pub use groebner::{
    ideal_quotient, irrelevant_ideal, minimal_columns, minimal_generators, saturate,
    syzygies_of, syzygy_module, GroebnerBasis, Lifter,
};
pub use matrix::{Matrix, MatrixJson};
pub use monomial::{dim_ring_degree, Monomial, MonomialOrder, VARIABLES};
pub use parse::{parse_matrix, parse_poly, parse_polys};
pub use vector::{FreeModule, FreeVector, Polynomial, Term};
