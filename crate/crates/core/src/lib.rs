//! Quantum k-SAT property testing toolkit.
//!
//! A quantum k-SAT instance places a projector on every k-subset of n qubits
//! and asks whether some global state is annihilated by all of them. Under the
//! promise that an instance is either satisfiable or far from satisfiable by a
//! product state, satisfiability can be decided by sampling constant-size
//! qubit subsets, checking product-state satisfiability of each restriction,
//! and taking a majority vote.
//!
//! The crate implements that tester end to end, together with executable
//! versions of the supporting machinery: dense complex linear algebra
//! ([`linalg`]), the instance model and certified generators ([`model`]),
//! product-state structure of subspaces ([`subspace`]), exact and numeric
//! product-satisfiability solvers ([`solver`]), hypergraph shadow
//! combinatorics ([`hypergraph`]), closed-form constants and sample-size
//! bounds ([`bounds`]), the assignment-extension calculus ([`assignment`]),
//! the sampling tester itself ([`tester`]), and a small-scale replay of the
//! bipartition-graph construction ([`walkthrough`]).

pub mod assignment;
pub mod bounds;
pub mod error;
pub mod hypergraph;
pub mod linalg;
pub mod model;
pub mod solver;
pub mod subspace;
pub mod tester;
pub mod walkthrough;

pub use error::{Error, Result};
