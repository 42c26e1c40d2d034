//! Exact engine for the qutrit stabilizer fragment of the ZX-calculus.
//!
//! Diagrams over the qutrit spider generators are interpreted as matrices with
//! entries in the ring of Eisenstein integers ℤ[ω], ω = e^(2πi/3), with no
//! floating point anywhere. On top of the exact interpreter sit a stabilizer
//! tableau simulator over ℤ₃, the single-qutrit Clifford group (all 216
//! classes, enumerated and given unique normal forms), weighted graph states
//! with local complementation, and a normalizer that brings every stabilizer
//! diagram to reduced GS-LC form. Equality of diagrams up to a nonzero scalar
//! is decided both by brute-force matrix comparison and by the normal-form
//! pipeline, and the two are cross-checked.
//!
//! Module map:
//!
//! - [`arith`] — ℤ₃, phase pairs, Eisenstein integers, exact matrices.
//! - [`diagram`] — open multigraph diagrams, composition, duality, text/JSON.
//! - [`semantics`] — the interpreter ⟦·⟧ and the semantic equality oracle.
//! - [`rules`] — the rewrite rules and their soundness harness.
//! - [`clifford1`] — the 216-element local Clifford group and normal forms.
//! - [`tableau`] — stabilizer tableaus over ℤ₃ and diagram simulation.
//! - [`gslc`] — weighted graphs, local complementation, reduced GS-LC forms.
//! - [`pipeline`] — normalization, equality decision, random diagrams.

pub mod arith;
pub mod clifford1;
pub mod diagram;
pub mod gslc;
pub mod pipeline;
pub mod rules;
pub mod semantics;
pub mod tableau;

pub use arith::{Eisenstein, ExactMatrix, PhaseClass, PhasePair, ScalarVerdict, Z3};
pub use diagram::{Diagram, NodeKind};
pub use pipeline::{EqVerdict, NormalForm};

