//! Exact scalar arithmetic: arbitrary-precision rationals and the
//! cyclotomic fields Q(zeta_n).
//!
//! Everything downstream (characters, local coefficients, fixed-point
//! sums) is computed in these types. There is no floating point anywhere
//! in the crate; all equalities asserted by the engine are exact.

mod cyclotomic;
mod poly;

pub use cyclotomic::{geometric_weight_sum, root_of_unity, Cyclotomic};
pub use poly::{cyclotomic_polynomial, divisors, euler_phi, IntPoly};

use num::BigInt;
use thiserror::Error;

/// Exact rational scalar. Canonical form (reduced, positive denominator)
/// is maintained by `num` on every operation.
pub type Rational = num::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("cyclotomic order must be a positive integer")]
    ZeroOrder,
    #[error("division by zero in Q(zeta_{order})")]
    DivisionByZero { order: u32 },
    #[error("geometric weight sum needs N >= 2, got {0}")]
    WeightOrderTooSmall(u32),
    #[error("cannot parse {input:?} as a rational number")]
    BadRational { input: String },
}

/// Parse `"p/q"` or `"p"` into a canonical rational. Never panics on
/// malformed input (including a zero denominator).
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let bad = || ExactError::BadRational {
        input: s.to_string(),
    };
    let t = s.trim();
    let (ns, ds) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let numer: BigInt = ns.parse().map_err(|_| bad())?;
    let denom: BigInt = ds.parse().map_err(|_| bad())?;
    if denom == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}

/// Format a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}
