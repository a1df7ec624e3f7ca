//! Command-line harness for convkit-core: documents and verification suites.

pub mod corpus;
pub mod doc;
pub mod suites;
