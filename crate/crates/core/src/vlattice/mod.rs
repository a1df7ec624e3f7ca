//! Exact vector lattices: finite-dimensional ones, the lexicographic plane,
//! rational sequence spaces and step functions on `[0, 1)`, with sequences
//! given as terms of a small closed-form language.

pub mod decide;
pub mod normal;
pub mod operator;
pub mod rational;
pub mod region;
pub mod structure;
pub mod tagged_line;
pub mod term;
pub mod typewriter;
pub mod vector;

pub use decide::{is_order_bounded, mackey_limit, o_limit, ru_limit, Verdict};
pub use normal::{Combo, ScalarSeq};
pub use operator::RationalMatrix;
pub use region::BoxRegion;
pub use rational::Q;
pub use term::{Layout, SeqTerm, Shape};
pub use vector::{Ambient, Carrier, ENorm, LatticeVector, SparseSeq, StepFn};
