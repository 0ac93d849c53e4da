//! Wedge calculus on `V` and `V∨` in lexicographic Plücker coordinates.

mod basis;
mod forms;
mod json;
mod pair;
mod resonance;

pub use basis::{binomial, WedgeBasis};
pub use forms::{
    decompose, is_decomposable, orthogonal_complement, wedge_two_forms, wedge_vectors, FourForm, Side,
    TwoForm,
};
pub use json::{vec_from_json, vec_to_json, AnyPair, FieldTag, JsonScalar, PairFile};
pub use pair::PairVK;
pub use resonance::{
    is_resonant, raag_classification, raag_hyperplane_membership, raag_path_pair, resonance_matrix, Membership,
    RaagReport,
};
