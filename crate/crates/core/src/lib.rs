//! Generalized weight enumerators of quadratic Veronese codes.
//!
//! The code `C_n` over a prime field `F_q` has the `N = 1 + q + ... + q^n`
//! points of `PG(n, q)` as coordinates and the `K = (n+1)(n+2)/2` quadratic
//! monomials as generators. Everything here is built on exact integer
//! arithmetic and on enumeration of maximal configurations: sets of points
//! `T` that are the full zero locus of the quadrics through them.

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod geometry;
pub mod reference;
pub mod spectra;
