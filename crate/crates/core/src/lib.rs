//! Computational evidence for k-free-like groups.
//!
//! The crate builds small-cancellation presentations, decides their word
//! problem with Dehn's algorithm, certifies girth lower bounds for explicit
//! generating sets, bounds Cheeger constants on Cayley balls, runs bond
//! percolation on the resulting graphs and checks almost identities of finite
//! groups.

pub mod cayley;
pub mod error;
pub mod finitegrp;
pub mod freewords;
pub mod groupcert;
pub mod oracle;
pub mod percolation;
pub mod smallcancel;

pub use error::{Error, Result};
pub use cayley::{CayleyBall, VertexSet};
pub use finitegrp::FiniteGroup;
pub use freewords::{EnumerationMode, Letter, Word};
pub use groupcert::{GeneratingSet, GirthCertificate};
pub use oracle::GroupOracle;
pub use percolation::PercGraph;
pub use smallcancel::{Lambda, Presentation};
