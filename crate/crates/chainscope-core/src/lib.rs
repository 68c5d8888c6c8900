//! Computable ε-chain geometry on two backends.
//!
//! The **finite backend** works on validated finite metric spaces: chain
//! balls and chainable components, bottleneck (minimax) distances, the
//! single-linkage merge tree, Hausdorff distance, box products, and the
//! covering functionals `α_k`, `γ_m`, `γ*`, `η*_k`, `η_{k,m}` with exact
//! small-instance solvers. Core math is generic over the scalar type
//! via [`Scalar`]: use `f64` for measured data or `BigRational` for exact
//! arithmetic; concrete aliases live at the crate root.
//!
//! The **symbolic backend** ([`model`]) evaluates the topological
//! functionals `f_c`, `ν`, `I` and the completeness-like classifiers (UC,
//! cofinally complete, uniformly star superparacompact, ...) exactly on
//! finitely-presented closed subsets of the real line with rational
//! parameters.

pub mod chain;
pub mod functionals;
pub mod io;
pub mod model;
pub mod scalar;
pub mod space;

pub use chain::{chain_ball, witness_chain, BottleneckMatrix, Chain, MergeEvent, MergeTree};
pub use functionals::{
    alpha_k, eta_km, eta_star_k, evaluate_budget, gamma_m, gamma_star, isolation, Budget,
    CoverError, CoveringBudget, Exactness, FunctionalResult, Mode, SolverLimits,
};
pub use scalar::{Ext, Scalar};
pub use space::{MetricSpace, MetricError, Scale, Subset};

/// Exact rational scalar used by the symbolic backend and the exact
/// finite-backend alias.
pub type Rational = num_rational::BigRational;

/// Finite metric space over `f64` distances (the default working type).
pub type SpaceF64 = MetricSpace<f64>;
/// Finite metric space over `f32` distances.
pub type SpaceF32 = MetricSpace<f32>;
/// Finite metric space over exact rational distances.
pub type SpaceQ = MetricSpace<Rational>;

/// Extended value in `[0, ∞]` over `f64`.
pub type ExtF64 = Ext<f64>;
/// Extended value in `[0, ∞]` over exact rationals.
pub type ExtQ = Ext<Rational>;
