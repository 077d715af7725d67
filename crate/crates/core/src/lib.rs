//! Exact computations for the rigid irregular connection `d + N dt/t + E dt`
//! attached to a simple group: root data, Chevalley bases, weight systems,
//! explicit matrix connections, formal solution spaces and cohomology
//! dimensions of intermediate extensions.

pub mod arith;
pub mod chevalley;
pub mod connection;
pub mod error;
pub mod formal;
pub mod galois;
pub mod rootsys;
pub mod weights;

pub use arith::{Laurent, Matrix, Poly, Q};
pub use connection::{ConnCase, MatrixConnection, ScalarOperator};
pub use error::{Error, Result};
pub use formal::{Space, SpaceDims};
pub use galois::CohomologyReport;
pub use rootsys::{CartanType, RootSystem};
pub use weights::WeightSystem;
