//! Quadratic fields whose class group has 5-rank at least 3.
//!
//! Three Kubert curves with a rational point of order 10 are specialized so that
//! their 5-isogenous quotients share a common abscissa x(z) over a genus-0 curve.
//! For admissible z, each quotient point lifts to an unramified quintic extension
//! of K = Q(sqrt(f(x(z)))), and splitting patterns at three auxiliary primes
//! certify that the three extensions are independent.

pub mod classgroup;
pub mod curves;
pub mod error;
pub mod exact;
pub mod family;
pub mod isogeny;
pub mod json;
pub mod sieve;
pub mod splitting;

pub use error::{Error, Result};
