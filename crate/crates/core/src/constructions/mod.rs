//! Certified transformations of drawings: shallow minors, subdivision
//! contraction, random sparsification and planarization.

mod minor;
mod model;
mod planarize;
mod sparsify;
mod subdivision;

pub use minor::{check_minor_witnesses, minor_drawing, MinorDrawing};
pub use model::{validate_model, ModelViolation, ShallowModel};
pub use planarize::{lift_tree_decomposition, planarize, Planarization};
pub use sparsify::{sparsify, SparsifyTrace, SPARSIFY_RNG};
pub use subdivision::{contract_subdivision, validate_subdivision, SubdivisionWitness};
