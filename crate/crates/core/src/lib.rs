//! Solvability of the cubic Fermat equation `x³ + y³ = z³` over real and
//! imaginary quadratic fields `Q(√d)`.
//!
//! The decision reduces to comparing representation numbers of two pairs of
//! positive-definite ternary quadratic forms. Around that criterion the crate
//! carries everything needed to check it independently:
//!
//! - [`arith`]: factorization, squarefree parts, Kronecker symbols and
//!   quadratic characters.
//! - [`qseries`]: exact truncated q-expansions, including the weight-2 eta
//!   product `F = q ∏ (1 − q³ⁿ)²(1 − q⁹ⁿ)²` attached to `Y² = X³ − 432`.
//! - [`theta`]: the four ternary forms, single-`n` counting and a sharded
//!   histogram sieve for whole theta series.
//! - [`modform`]: Hecke operators in weights 2 and 3/2, the Shimura lift and
//!   Sturm bounds.
//! - [`curve`]: exact arithmetic on `E` and its quadratic twists, torsion, and
//!   an explicit solution search.
//! - [`lfunction`]: root numbers, conductors and central values `L(E_d, 1)`.
//! - [`criterion`]: the verdict for a given `d`, batch classification and a
//!   cross-check against the analytic side.
//! - [`identities`]: the modular-form identity suite run by `verify-identities`.

pub mod arith;
pub mod cli;
pub mod criterion;
pub mod curve;
pub mod error;
pub mod identities;
pub mod lfunction;
pub mod modform;
pub mod qseries;
pub mod theta;

pub use error::{Error, Result};
