//! Enumeration and tabulation of integer polynomials whose values at 0, 1, ∞
//! and whose discriminant are units outside a finite set of primes.

pub mod abc;
pub mod budget;
pub mod clique;
pub mod data;
pub mod error;
pub mod exact;
pub mod generators;
pub mod io;
pub mod jinv;
pub mod packets;
pub mod pipeline;
pub mod poly;
pub mod vertex;

pub use budget::Budget;
pub use error::{Error, Result};
pub use exact::PrimeSet;
pub use poly::{IntPoly, NormalizedPoly};
