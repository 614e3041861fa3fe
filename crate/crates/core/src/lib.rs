//! Exact-arithmetic machinery for embedding Hilbert-Blumenthal modular data
//! into Siegel modular data.
//!
//! Everything is computed over the rationals (or over `Q(i)` and a totally
//! real number field `F`), with interval arithmetic used only as a certified
//! cross-check layer. The main pieces:
//!
//! * [`numfield`] — a totally real field `F` presented by a minimal
//!   polynomial and an order basis, with trace duality and certified real
//!   embeddings;
//! * [`symplectic`] — the symplectic similitude group `GSp(2g)`, its
//!   principal congruence subgroups, and the corresponding groups of 2x2
//!   matrices over `F` acting on the module `D^-1 (+) O`;
//! * [`modembed`] — the modular embedding: the group map into `GSp(2g)` and
//!   the point map into the Siegel upper half-space, with exact equivariance
//!   checks;
//! * [`torsion`] — n-torsion points of the two universal families and their
//!   exact transport in lattice coordinates;
//! * [`symrep`] — symmetric powers of the standard `2g`-dimensional
//!   representation, contraction against the dual, and the cocharacter
//!   weight-parity obstruction.

pub mod error;
pub mod gaussian;
pub mod interval;
pub mod matrix;
pub mod modembed;
pub mod numfield;
pub mod poly;
pub mod rational;
pub mod sample;
pub mod schema;
pub mod symplectic;
pub mod symrep;
pub mod torsion;
pub mod zlattice;

pub use error::{Error, Result};

// Re-export the arithmetic base types so downstream crates only need one dep.
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
