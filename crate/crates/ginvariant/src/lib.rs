//! Sums of norms in imaginary quadratic fields: which unary Hermitian
//! lattices over the ring of integers of Q(√−d) are sums of m norms, and
//! the g-invariant g_d(1) — the smallest m that suffices uniformly.
//!
//! For a square-free positive integer d the field Q(√−d) has ring of
//! integers 𝒪 = ℤ + ℤω. A positive definite integral unary Hermitian
//! lattice over 𝒪 is indexed, up to isometry, by an ideal class of 𝒪 and a
//! positive integer r. For the principal class every r is a sum of four
//! norms; for a non-principal class, represented by a prime ideal above a
//! prime p, a threshold C(p, d) guarantees every r ≥ C is a sum of four
//! norms, and the finitely many r < C are decided by computing the values
//! of a two-variable block form and closing under addition. The exceptions
//! under five norms form the set E(p), those under four norms F(p), and
//! g(p) is 4 or 5 according to whether they coincide.
//!
//! The crate is organized around that pipeline:
//!
//! - [`field`]: parameters of Q(√−d) and the integer norm form.
//! - [`classgroup`]: reduced binary quadratic forms, the class number and a
//!   prime representative per non-principal class.
//! - [`repset`]: bitset supports of positive definite binary forms and
//!   truncated sumset convolution for orthogonal sums.
//! - [`ginv`]: case dispatch, the bound C, block forms, exception sets and
//!   the aggregate g-invariant per field.
//! - [`oracle`]: an independent brute-force path that recomputes the block
//!   values straight from the ideal's divisibility conditions.
//! - [`verify`]: cross-checks wiring the oracle against the fast path.
//! - [`cli`]: JSON/CSV report documents and the command implementations
//!   behind the `ginvariant` binary.
//!
//! See the `examples/` directory for a runnable tour: start with
//! `cargo run --example analyze_field -- 87`.

pub mod classgroup;
pub mod cli;
mod error;
pub mod field;
pub mod ginv;
pub mod oracle;
pub mod repset;
pub mod verify;

pub use error::{Error, Result};
