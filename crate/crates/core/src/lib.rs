//! Exact symbolic computation in quantum cluster algebras.
//!
//! The crate provides, over the coefficient ring Z[q^(1/2), q^(-1/2)]:
//!
//! - [`qring`]: exact scalar arithmetic in half-integer powers of q;
//! - [`qtorus`]: the quantum torus with its twisted product, commutators,
//!   exact division and center tests;
//! - [`seeds`]: quantum seeds, compatible-pair validation, mutation, Laurent
//!   expansion of cluster variables, exchange-graph enumeration;
//! - [`poisson`]: Poisson brackets given by finite data, bracket evaluation
//!   by Leibniz extension, axiom checks, log-canonicity, compatibility and
//!   locally-standard classification;
//! - [`inner`]: linear transformations defining inner brackets, membership
//!   checks, the pattern constraint solver, generic vectors, and the
//!   inner-to-standard classifier;
//! - [`decomp`]: cluster decomposition into indecomposable blocks and the
//!   twisted tensor product gluing them back together.
//!
//! All computation is exact; there is no floating point anywhere.

pub mod decomp;
pub mod error;
pub mod inner;
pub mod linalg;
pub mod poisson;
pub mod qring;
pub mod qtorus;
pub mod seeds;

pub use error::{Error, Result};
pub use qring::QScalar;
pub use qtorus::{ExponentVector, LambdaMatrix, TorusElement};
pub use seeds::{Seed, SeedFile};
