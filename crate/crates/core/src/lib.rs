//! Exact computer algebra for the Hopf algebra of noncommutative symmetric functions
//! (NSymm), its Newton primitives, the exp/log isomorphism with LieHopf, the graded dual
//! QSymm, and Hasse-Schmidt derivations on concrete finite-dimensional algebras.
//!
//! All arithmetic is over exact rationals. An [`Engine`] fixes the maximum degree that
//! operations may reach and memoizes the recursively defined generator images.

pub mod engine;
pub mod error;
pub mod explog;
pub mod freealg;
pub mod hopf;
pub mod hsops;
pub mod newton;
pub mod qsymm;
pub mod report;

pub use engine::{Engine, DEFAULT_MAX_DEGREE};
pub use error::{Error, Result};
pub use freealg::{compositions_of, Basis, Composition, NCPoly, Rational, Tensor2};
pub use hopf::HopfFamily;
pub use newton::PBasisPoly;
pub use qsymm::QSPoly;
pub use report::Report;
