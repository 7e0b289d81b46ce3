//! Comparison-geometry and exact lattice tools for curvature bounds on
//! completions and branched covers.
//!
//! The crate has two halves. The metric half ([`model`], [`metric`],
//! [`spaces`]) tests the CAT(χ) inequality on sampled triangles in spaces
//! whose distance functions are known in closed form or by mesh shortest
//! paths. The algebraic half ([`lattice`], [`coxeter`], [`singularity`])
//! works over exact rationals: Gram matrices and signatures, root systems
//! and mirror arrangements, and the root-system arithmetic behind the
//! hyperplane arrangements attached to triangle and cusp singularities.

pub mod coxeter;
pub mod error;
pub mod lattice;
pub mod metric;
pub mod model;
pub mod singularity;
pub mod spaces;

pub use error::{Error, Result};

/// Library version echoed into reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
