//! Dense integer polynomials and cyclotomic polynomials Phi_n.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num::{BigInt, One, Zero};
use once_cell::sync::Lazy;

use super::ExactError;

/// Dense univariate polynomial over Z, coefficients in ascending degree.
/// Canonical: empty vector is the zero polynomial, otherwise the last
/// coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// x^n - 1.
    pub fn x_pow_minus_one(n: u32) -> Self {
        let mut v = vec![BigInt::zero(); n as usize + 1];
        v[0] = BigInt::from(-1);
        v[n as usize] = BigInt::one();
        IntPoly { coeffs: v }
    }

    /// x - c.
    pub fn linear(c: &BigInt) -> Self {
        IntPoly {
            coeffs: vec![-c.clone(), BigInt::one()],
        }
    }

    pub fn one() -> Self {
        IntPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial.
    pub fn degree(&self) -> usize {
        assert!(!self.is_zero(), "degree of the zero polynomial");
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }

    pub fn pow(&self, mut e: u32) -> IntPoly {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division by a monic divisor. Returns `None` if the division
    /// leaves a remainder.
    pub fn div_exact_monic(&self, divisor: &IntPoly) -> Option<IntPoly> {
        assert!(!divisor.is_zero() && divisor.coeffs.last().unwrap().is_one());
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.degree() < divisor.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = std::mem::take(&mut rem[i]);
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c.clone();
            for (j, b) in divisor.coeffs.iter().take(dd).enumerate() {
                let t = &c * b;
                rem[i - dd + j] -= t;
            }
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(IntPoly::from_coeffs(quot))
        } else {
            None
        }
    }
}

impl std::fmt::Display for IntPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = if c.sign() == num::bigint::Sign::Minus {
                -c.clone()
            } else {
                c.clone()
            };
            if first {
                if c.sign() == num::bigint::Sign::Minus {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.sign() == num::bigint::Sign::Minus {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Euler totient.
pub fn euler_phi(n: u32) -> u32 {
    assert!(n >= 1);
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Divisors of n in ascending order.
pub fn divisors(n: u32) -> Vec<u32> {
    assert!(n >= 1);
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

static CYCLO_CACHE: Lazy<Mutex<HashMap<u32, Arc<IntPoly>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// The n-th cyclotomic polynomial, computed by exact division of x^n - 1
/// by the product of Phi_d over proper divisors d of n.
pub fn cyclotomic_polynomial(n: u32) -> Result<IntPoly, ExactError> {
    if n == 0 {
        return Err(ExactError::ZeroOrder);
    }
    Ok((*cyclo(n)).clone())
}

/// Cached internal accessor; n must be positive.
pub(crate) fn cyclo(n: u32) -> Arc<IntPoly> {
    assert!(n >= 1);
    if let Some(p) = CYCLO_CACHE.lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    let mut proper = IntPoly::one();
    for d in divisors(n) {
        if d < n {
            proper = proper.mul(&cyclo(d));
        }
    }
    let phi = IntPoly::x_pow_minus_one(n)
        .div_exact_monic(&proper)
        .expect("x^n - 1 is divisible by the product of proper Phi_d");
    debug_assert_eq!(phi.degree(), euler_phi(n) as usize);
    let arc = Arc::new(phi);
    CYCLO_CACHE.lock().unwrap().insert(n, Arc::clone(&arc));
    arc
}
