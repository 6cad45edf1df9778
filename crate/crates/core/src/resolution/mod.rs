//! Presented graded modules, Hilbert data, and free resolutions.

pub mod hilbert;
pub(crate) mod presented;
pub mod resolve;

pub use hilbert::{monomial_numerator, HilbertPolynomial, HilbertSeries};
pub use presented::{
    minimal_generator_indices, module_kernel, subquotient, GradedMap, PresentedModule, MAX_WINDOW,
};
pub use resolve::{
    lift_chain_map, projective_dimension, regularity, second_syzygy, FreeResolution, SecondSyzygy,
};
