//! Ext modules, sheaf cohomology via local duality, and finite-length modules.

pub mod ext;
pub mod finite;
pub mod table;

pub use ext::{dense_piece, ext_from_resolution, ext_module, ext_piece, induced_ext_map, FreePiece};
pub use finite::{FiniteLengthModule, IsoVerdict, DEFAULT_TRIALS};
pub use table::{
    first_chern_class, h1_star_module, sheaf_cohomology_table, CohomologyTable, LocalDuality,
};
