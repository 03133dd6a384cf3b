//! Exact computer algebra for monodromic D-modules on algebraic tori,
//! seen through the Mellin transform.
//!
//! Everything here happens on the Mellin side: a D-module on the torus `T`
//! supported on a single rational coset `ξ = μ₀ + ℤⁿ` of the dual space is
//! stored as one finite-dimensional fiber together with commuting operators
//! `N_i` (the invariant vector fields) whose joint generalized eigenvalue is
//! `μ₀`. Convolution of D-modules becomes tensor product over `ℚ[v]`, the
//! gamma kernel `Ψ_{λ̲,c}` acts through explicit one-variable reduction
//! recurrences, and Weyl-equivariant structures are square matrices subject
//! to exactly checkable intertwining and cocycle contracts.
//!
//! The crate verifies, by exact rational linear algebra:
//!
//! * the gamma-convolution fixed points `Ψ_{λ̲,c} * E_ξ ≅ E_ξ` and
//!   `Ψ_{λ̲,c} * L_ξⁿ ≅ L_ξⁿ`, with full equivariance bookkeeping and
//!   independence of the chosen lift through the extension
//!   `0 → S_λ̲ → W′ → W → 0`;
//! * the blockwise identity `Ψ_{λ̲,c} * E_θ ≅ E_θ` over a full Weyl orbit
//!   of cosets;
//! * one-dimensionality of the gamma multiplier
//!   `V_{λ̲,ξ} = H⁰_dR(Ψ_{λ̲,c} ⊗ L_ξ⁻¹)` via windowed de Rham cohomology.
//!
//! All arithmetic is exact (`BigRational`); there is no floating point
//! anywhere in the pipeline.
//!
//! ## Quick start
//!
//! ```
//! use mgk::checks::{gamma_for, point, std_family, workspace};
//! use mgk::gamma::{check_key_prop, Convention};
//! use mgk::rootdata::RootDatumSpec;
//!
//! // GL(2) with the standard cocharacter family, c = 1
//! let ws = workspace(&RootDatumSpec::gl(2));
//! let gamma = gamma_for(&ws, std_family(2), "1");
//!
//! // Ψ * E_ξ ≅ E_ξ at ξ = (1/2, 1/2), with the stabilizer action transported
//! let report = check_key_prop(&gamma, &point(&["1/2", "1/2"]), Convention::Unsigned).unwrap();
//! assert!(report.passed());
//! assert_eq!(report.fiber_dim, 2);
//! ```
//!
//! Module map:
//!
//! * [`rat`], [`matrix`], [`poly`], [`groebner`] — the exact-arithmetic
//!   substrate (rationals, fraction-free linear algebra, multivariate
//!   polynomials, Buchberger).
//! * [`rootdata`] — root data, Weyl groups as finite integer matrix groups,
//!   stabilizers, σ-positivity, and the `W′` extension combinatorics.
//! * [`coinvariants`] — the finite-dimensional algebras `S_n = S/S₊ⁿ` and
//!   `S_ξ = S/S·S₊^{W_ξ}` with their group actions.
//! * [`mellin`] — monodromic modules on a single coset, equivariant
//!   structures, tensor/Tor, morphism verification.
//! * [`gamma`] — the gamma kernel `Ψ_{λ̲,c}` and the convolution checks.
//! * [`derham`] — windowed de Rham cohomology of exponentially twisted
//!   Kummer connections and the multiplier dimension.
//! * [`config`], [`report`], [`checks`] — run configuration, JSON reports,
//!   and the named check suite behind the `mgk` binary.

pub mod checks;
pub mod coinvariants;
pub mod config;
pub mod derham;
pub mod gamma;
pub mod groebner;
pub mod matrix;
pub mod mellin;
pub mod poly;
pub mod rat;
pub mod report;
pub mod rootdata;

pub use rat::Rat;

/// Report schema identifier embedded in every JSON report.
pub const SCHEMA: &str = "mgk/1";
