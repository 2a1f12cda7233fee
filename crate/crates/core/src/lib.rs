//! Computational toolkit for primes of the form `p = x^q + r*y^q`.
//!
//! The crate decides the arithmetic conditions such primes must satisfy:
//! how `p` splits in the cyclotomic ring `Z[z]` (`z` a primitive `q`-th root
//! of unity), the `q`-th power residue character of `r` at the primes above
//! `p`, the Frobenius (Artin) element of the Kummer extension `Q(z, r^(1/q))`,
//! the explicit ideal factors of `p` there, the Dedekind index criterion, and
//! the class-number-one case of the `x^2 + n*y^2` criterion.
//!
//! All integers are exact. `Natural` is `u128`; every operation that could
//! leave that range reports [`Error::Overflow`] or [`Error::Bound`] instead of
//! wrapping.

pub mod arith;
pub mod cli;
pub mod cyclo;
mod error;
pub mod kummer;
pub mod polyfp;
pub mod qforms;
pub mod search;

pub use error::{Error, Result};

/// Nonnegative rational integer.
pub type Natural = u128;

/// Signed rational integer.
pub type Integer = i128;
