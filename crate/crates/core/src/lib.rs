//! Entanglement classification of the three-parameter family of two-qutrit
//! Bell-state mixtures
//!
//! ```text
//! ρ(α, β, γ) = (1−α−β−γ)/9·𝟙 + α P₀₀ + β/2 (P₁₀ + P₂₀) + γ/3 (P₀₁ + P₁₁ + P₂₁)
//! ```
//!
//! using partial transposition, geometric entanglement witnesses certified
//! through their Weyl-operator coefficients, and a polygon of states known
//! to be separable.

pub mod cli;
pub mod error;
pub mod family;
pub mod format;
pub mod qmat;
pub mod regions;
pub mod verify;
pub mod weyl;
pub mod witness;

pub use error::{Error, Result};
pub use family::FamilyPoint;
pub use qmat::ComplexMatrix;
pub use regions::{classify, Classification, Verdict};
