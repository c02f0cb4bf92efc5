//! Nonlinear complexity workbench for sequences over finite fields.
//!
//! The crate generates explicit inversive sequences, periodic inversive
//! sequences and Hermitian-curve sequences, computes their `k`-th order
//! nonlinear complexities exactly, and compares the results with closed-form
//! lower bounds. The [`stats`] module counts sequences of bounded complexity
//! exhaustively and profiles random sequences.

pub mod bounds;
pub mod complexity;
pub mod field;
pub mod generators;
pub mod hermitian;
pub mod sequence;
pub mod stats;

pub use field::{ArithOp, Field, FieldElement, FieldError};
pub use sequence::{Provenance, Sequence};
