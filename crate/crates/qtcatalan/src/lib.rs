//! Exact combinatorics of rational Dyck paths, parking functions, affine
//! compositions, and higher-rank (q,t)-Catalan polynomials.
//!
//! The crate is organized bottom-up:
//! - [`lattice`]: grid geometry — Dyck paths, box labels, area/coarea.
//! - [`parking`]: (semistandard) parking functions, weights, enumeration,
//!   and the cyclic-orbit machinery on frequency tuples.
//! - [`affine`]: affine compositions/permutations, the path-to-window
//!   bijection, standardization, and descent sets.
//! - [`statistics`]: dinv/codinv by two independent algorithms, cell
//!   dimensions, and Poincaré polynomials.
//! - [`polyring`]: exact sparse polynomials in q, t, x_1..x_r; q-binomials,
//!   truncated Gessel sums, Catalan/Hikita polynomials, Schur expansion.
//! - [`series`]: truncated exact-rational power series and the Bizley-type
//!   product formula for non-coprime counts.
//! - [`verify`]: the named-invariant verification suite used by the CLI.
//!
//! All values are immutable after construction and all operations are pure
//! functions, so everything here is safe to share across threads.

pub mod affine;
pub mod error;
pub mod lattice;
pub mod parking;
pub mod polyring;
pub mod series;
pub mod statistics;
pub mod verify;

pub use error::{Error, Result};
