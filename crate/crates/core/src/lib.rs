//! Exact construction and spectral analysis of token graphs.
//!
//! The k-token graph `F_k(G)` of a graph `G` on `n` vertices has the k-subsets
//! of `[n]` as vertices, two subsets being adjacent when their symmetric
//! difference is an edge of `G`. `F_k(K_n)` is the Johnson graph `J(n,k)`.
//!
//! The crate builds these graphs and their Laplacians over arbitrary-precision
//! rationals and checks the algebraic structure around them:
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`graphs`] | [`Graph`], edge-list and graph6 input, complements, distance matrices |
//! | [`linalg`] | [`ExactMatrix`], [`RatPoly`], ranks, characteristic polynomials |
//! | [`tokens`] | k-subsets, token graphs, the binomial matrix `B` and its intertwining identities |
//! | [`spectra`] | exact and numeric spectra, multiset differences, joint spectra of commuting pairs |
//! | [`orthopoly`] | predistance polynomials, Hoffman-type checks, distance-regularity |
//! | [`johnson`] | Johnson graph closed forms, quotient matrices, `M = BBᵀ`, Bose-Mesner checks |
//! | [`algebras`] | the local algebra `ℝ[L_k, L̄_k]`, the global algebra `A(n,k)`, token-graph recognition |
//! | [`json`] | JSON forms of matrices, polynomials and spectra |
//!
//! Vertices are 1-based at every public boundary.

pub mod algebras;
pub mod error;
pub mod graphs;
pub mod johnson;
pub mod json;
pub mod linalg;
pub mod orthopoly;
pub mod report;
pub mod spectra;
pub mod tokens;

pub use error::{Error, Result};
pub use graphs::{DistanceMatrices, Graph};
pub use linalg::{ExactMatrix, RatPoly, Rational};
pub use report::Check;
pub use spectra::{Eigenvalue, JointSpectrum, Spectrum};
pub use tokens::{KSubset, TokenGraph};
