//! Split bundles `O(a) ⊕ O(b)` on `ℙ¹`. A section is a pair of binary forms,
//! and it is resonant exactly when the two forms share a root; the stratum is
//! the degree of the saturated line subbundle it generates.

mod bundle;
mod forms;

pub use bundle::{
    build_pair, cone_dimension_table, cross_check, determinant_matrix, is_resonant_gcd, lambda_stratum,
    sample_stratum, section_from_ints, section_from_vector, stratum, strata_report, stratum_cone_dimension,
    theta_d, ConeDimensionRow, CrossCheckReport, Disagreement, SplitBundle, StrataReport,
    ZERO_COMPONENT_CONVENTION,
};
pub use forms::{coprime, gcd_degree, sylvester_matrix, BinaryForm, BinaryFormPair, SectionJson};

#[cfg(test)]
mod tests;
