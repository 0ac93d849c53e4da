//! The linear section `Gr₂(V∨) ∩ ℙK⊥`: its quadric equations, finite
//! solutions, transversality certificates, and the duality experiments
//! comparing it with `Gr₂(V) ∩ ℙK`.

mod duality;
mod finite;
mod quadrics;

pub use duality::{
    degenerate_pair, dual_pair, duality_experiment, random_rational_pair, slice_to_finite, DegeneratePair,
    DualityReport, DualityTrial,
};
pub use finite::{
    lines_and_disjointness, membership_cross_check, solve_finite_section, transversality_at, CrossCheck,
    SectionConfig, SectionPoint, SectionReport, Transversality,
};
pub use quadrics::{build_quadric_system, catalan_degree, expected_section_dim};

#[cfg(test)]
mod tests;
