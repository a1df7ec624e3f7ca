//! Exact convergence structures on finite carriers.
//!
//! The crate has two halves. The combinatorial half ([`order_net`],
//! [`filter`], [`convspace`]) models directed sets, nets, principal filters
//! and finite convergence spaces, and provides exhaustive checkers for the
//! net and filter axioms together with the mixing, braiding and reaction
//! constructions. The analytic half ([`vlattice`]) works over exact
//! rationals and decides order convergence, relative uniform convergence
//! and related properties for closed-form sequences in a few concrete
//! vector lattices.

pub mod convspace;
pub mod error;
pub mod filter;
pub mod order_net;
pub mod pointset;
pub mod report;
pub mod vlattice;

pub use convspace::{ConvSpace, PointMap, RawConvergence};
pub use error::{Error, Result};
pub use filter::{FilterBase, PrincipalFilter};
pub use order_net::{DirectedIndex, Net, Selector, TailFamily};
pub use pointset::PointSet;
