//! Resonance loci of pairs `(V, K)` with `K ⊆ Λ²V`.
//!
//! The resonance of `(V, K)` is the set of `[a] ∈ ℙV∨` admitting `b`
//! independent of `a` with `a ∧ b ∈ K⊥`. It is swept out by the lines
//! `ℙ⟨a, b⟩` indexed by the decomposable points of `ℙK⊥`, i.e. by the linear
//! section `Gr₂(V∨) ∩ ℙK⊥` of the Plücker-embedded Grassmannian.
//!
//! The crate computes both sides of that identification and checks them
//! against each other:
//!
//! * [`exterior`]: wedge calculus in lexicographic Plücker coordinates and the
//!   pointwise rank test for membership in the resonance.
//! * [`continuation`]: a small total-degree homotopy solver.
//! * [`section`]: the quadric system cutting `Gr₂(V∨) ∩ ℙK⊥`, its finite
//!   solutions, transversality certificates and duality experiments.
//! * [`p1`]: split bundles `O(a) ⊕ O(b)` on the projective line, where
//!   resonance reduces to common factors of binary forms.

pub mod continuation;
pub mod error;
pub mod exterior;
pub mod numeric;
pub mod p1;
pub mod report;
pub mod rng;
pub mod section;

pub use error::{Error, Result};
