//! Exact arithmetic in the cyclotomic fields Q(zeta_n).
//!
//! An element is stored at a fixed order n as a vector of rationals of
//! length phi(n): the coordinates in the power basis {zeta_n^i} reduced
//! modulo the n-th cyclotomic polynomial. Reduction mod Phi_n (rather
//! than mod x^n - 1) keeps the representation a field: equality testing
//! is coefficient comparison and every nonzero element is invertible.
//!
//! Elements of different orders combine by embedding into the lcm order;
//! results stay at that order, and descending to a smaller order happens
//! only on demand (`reduce_to_order`, `minimal_order`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::integer::lcm;
use num::{BigInt, One, Signed, Zero};
use serde::de::Error as DeError;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{cyclo, divisors, euler_phi};
use super::{format_rational, parse_rational, ExactError, Rational};

/// An exact element of Q(zeta_n).
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

fn rat_zero() -> Rational {
    Rational::from_integer(BigInt::zero())
}

/// Reduce a coefficient vector (exponents may exceed phi(n) or n) to the
/// canonical power-basis representative mod Phi_n.
fn reduce_mod_phi(mut v: Vec<Rational>, n: u32) -> Vec<Rational> {
    let n = n as usize;
    // zeta^n = 1, so fold exponents mod n first.
    if v.len() > n {
        for i in n..v.len() {
            let c = std::mem::replace(&mut v[i], rat_zero());
            if !c.is_zero() {
                v[i % n] += c;
            }
        }
        v.truncate(n);
    }
    let phi = euler_phi(n as u32) as usize;
    if v.len() > phi {
        let cyc = cyclo(n as u32);
        let pc = cyc.coeffs();
        for i in (phi..v.len()).rev() {
            let c = std::mem::replace(&mut v[i], rat_zero());
            if c.is_zero() {
                continue;
            }
            // subtract c * x^(i-phi) * Phi_n; the leading term cancels v[i]
            for (j, b) in pc.iter().take(phi).enumerate() {
                if !b.is_zero() {
                    v[i - phi + j] -= &c * b;
                }
            }
        }
        v.truncate(phi);
    }
    while v.len() < phi {
        v.push(rat_zero());
    }
    v
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic {
            order: 1,
            coeffs: vec![rat_zero()],
        }
    }

    pub fn one() -> Self {
        Cyclotomic::from_integer(1)
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic {
            order: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_integer(k: i64) -> Self {
        Cyclotomic::from_rational(Rational::from_integer(BigInt::from(k)))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coordinates in the power basis {zeta^i : 0 <= i < phi(order)}.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn from_reduced(order: u32, v: Vec<Rational>) -> Self {
        Cyclotomic {
            order,
            coeffs: reduce_mod_phi(v, order),
        }
    }

    /// Lift into Q(zeta_m); requires order | m.
    pub fn embed(&self, m: u32) -> Cyclotomic {
        assert!(m >= 1 && m % self.order == 0, "embedding needs order | m");
        if m == self.order {
            return self.clone();
        }
        let step = (m / self.order) as usize;
        let mut v = vec![rat_zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[i * step] = c.clone();
            }
        }
        Cyclotomic::from_reduced(m, v)
    }

    /// Write the element in Q(zeta_d) if it lies in that subfield
    /// (requires d | order). Solves the exact linear system expressing the
    /// element over the embedded power basis of zeta_d.
    pub fn reduce_to_order(&self, d: u32) -> Option<Cyclotomic> {
        assert!(d >= 1 && self.order % d == 0, "reduction needs d | order");
        if d == self.order {
            return Some(self.clone());
        }
        let phi_n = self.coeffs.len();
        let phi_d = euler_phi(d) as usize;
        let step = (self.order / d) as usize;
        // columns: canonical coordinates of zeta_n^(j*step) for j < phi_d
        let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(phi_d);
        for j in 0..phi_d {
            let mut v = vec![rat_zero(); j * step + 1];
            v[j * step] = Rational::one();
            cols.push(reduce_mod_phi(v, self.order));
        }
        // solve cols * x = coeffs by Gaussian elimination
        let mut a: Vec<Vec<Rational>> = (0..phi_n)
            .map(|r| {
                let mut row: Vec<Rational> = cols.iter().map(|c| c[r].clone()).collect();
                row.push(self.coeffs[r].clone());
                row
            })
            .collect();
        let mut pivot_rows = Vec::with_capacity(phi_d);
        let mut r0 = 0usize;
        for c in 0..phi_d {
            let Some(p) = (r0..phi_n).find(|&r| !a[r][c].is_zero()) else {
                return None; // columns are independent, so this cannot occur
            };
            a.swap(r0, p);
            let inv = a[r0][c].clone();
            for j in c..=phi_d {
                let t = a[r0][j].clone() / &inv;
                a[r0][j] = t;
            }
            for r in 0..phi_n {
                if r != r0 && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for j in c..=phi_d {
                        let t = &a[r0][j] * &f;
                        a[r][j] -= t;
                    }
                }
            }
            pivot_rows.push(r0);
            r0 += 1;
        }
        // consistency: all non-pivot rows must have zero rhs
        for r in r0..phi_n {
            if !a[r][phi_d].is_zero() {
                return None;
            }
        }
        let sol: Vec<Rational> = (0..phi_d)
            .map(|c| a[pivot_rows[c]][phi_d].clone())
            .collect();
        Some(Cyclotomic {
            order: d,
            coeffs: reduce_mod_phi(sol, d),
        })
    }

    /// Smallest order d | order with the element in Q(zeta_d), together
    /// with its representation there.
    pub fn minimal_order(&self) -> Cyclotomic {
        for d in divisors(self.order) {
            if let Some(z) = self.reduce_to_order(d) {
                return z;
            }
        }
        self.clone()
    }

    /// Bring to a common order with `other` (the lcm of the two orders).
    fn aligned(&self, other: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
        let m = lcm(self.order, other.order);
        (self.embed(m), other.embed(m))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// An element is rational iff every basis coordinate above zeta^0
    /// vanishes; canonical reduction makes this a direct test.
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        let r = self.to_rational()?;
        if r.denom().is_one() {
            Some(r.numer().clone())
        } else {
            None
        }
    }

    /// Complex conjugation, the ring automorphism zeta -> zeta^(n-1).
    pub fn conj(&self) -> Cyclotomic {
        let n = self.order as usize;
        if n <= 2 {
            return self.clone();
        }
        let mut v = vec![rat_zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[(i * (n - 1)) % n] += c;
            }
        }
        Cyclotomic::from_reduced(self.order, v)
    }

    pub fn scale(&self, r: &Rational) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// Phi_n over the rational polynomial ring.
    pub fn try_inv(&self) -> Result<Cyclotomic, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero { order: self.order });
        }
        if let Some(r) = self.to_rational() {
            return Ok(Cyclotomic {
                order: self.order,
                coeffs: reduce_mod_phi(vec![r.recip()], self.order),
            });
        }
        let modulus: Vec<Rational> = cyclo(self.order)
            .coeffs()
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let (g, u) = poly_egcd(&self.coeffs, &modulus);
        // Phi_n is irreducible over Q, so the gcd is a nonzero constant.
        debug_assert_eq!(poly_degree(&g), Some(0));
        let ginv = g[0].recip();
        let inv: Vec<Rational> = u.iter().map(|c| c * &ginv).collect();
        Ok(Cyclotomic::from_reduced(self.order, inv))
    }

    pub fn try_div(&self, other: &Cyclotomic) -> Result<Cyclotomic, ExactError> {
        let (a, b) = self.aligned(other);
        if b.is_zero() {
            return Err(ExactError::DivisionByZero { order: b.order });
        }
        Ok(&a * &b.try_inv()?)
    }

    /// Integer power; negative exponents invert (error on zero base).
    pub fn try_pow(&self, e: i64) -> Result<Cyclotomic, ExactError> {
        if e < 0 {
            return self.try_inv()?.try_pow(-e);
        }
        let mut acc = Cyclotomic::one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }
}

fn poly_degree(v: &[Rational]) -> Option<usize> {
    v.iter().rposition(|c| !c.is_zero())
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = poly_degree(b).expect("division by zero polynomial");
    let mut rem: Vec<Rational> = a.to_vec();
    let lead = b[db].clone();
    let mut quot = vec![rat_zero(); a.len().max(db + 1)];
    while let Some(dr) = poly_degree(&rem) {
        if dr < db {
            break;
        }
        let f = &rem[dr] / &lead;
        quot[dr - db] = f.clone();
        for j in 0..=db {
            if !b[j].is_zero() {
                let t = &b[j] * &f;
                rem[dr - db + j] -= t;
            }
        }
        rem[dr] = rat_zero(); // kill rounding-free leftover exactly
    }
    (quot, rem)
}

/// Extended gcd over Q[x]: returns (g, u) with u*a = g (mod b).
fn poly_egcd(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r0: Vec<Rational> = a.to_vec();
    let mut r1: Vec<Rational> = b.to_vec();
    let mut s0 = vec![Rational::one()];
    let mut s1 = vec![rat_zero()];
    while poly_degree(&r1).is_some() {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    (r0, s0)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let (da, db) = match (poly_degree(a), poly_degree(b)) {
        (Some(da), Some(db)) => (da, db),
        _ => return vec![rat_zero()],
    };
    let mut out = vec![rat_zero(); da + db + 1];
    for i in 0..=da {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..=db {
            if !b[j].is_zero() {
                out[i + j] += &a[i] * &b[j];
            }
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![rat_zero(); n];
    for (i, slot) in out.iter_mut().enumerate() {
        if i < a.len() {
            *slot += &a[i];
        }
        if i < b.len() {
            *slot -= &b[i];
        }
    }
    out
}

/// zeta_n^k in canonical form (k taken mod n; n >= 1).
pub fn root_of_unity(n: u32, k: i64) -> Cyclotomic {
    assert!(n >= 1, "root_of_unity needs a positive order");
    let k = k.rem_euclid(n as i64) as usize;
    let mut v = vec![rat_zero(); k + 1];
    v[k] = Rational::one();
    Cyclotomic::from_reduced(n, v)
}

/// Sum_{i=0}^{N-1} i * zeta_N^i, asserted exactly equal to N/(zeta_N - 1).
pub fn geometric_weight_sum(n: u32) -> Result<Cyclotomic, ExactError> {
    if n <= 1 {
        return Err(ExactError::WeightOrderTooSmall(n));
    }
    let mut sum = Cyclotomic::zero();
    for i in 1..n {
        let term = root_of_unity(n, i as i64).scale(&Rational::from_integer(BigInt::from(i)));
        sum = &sum + &term;
    }
    let zeta = root_of_unity(n, 1);
    let denom = &zeta - &Cyclotomic::one();
    let closed = Cyclotomic::from_integer(n as i64).try_div(&denom)?;
    assert_eq!(sum, closed, "geometric weight identity failed at N = {n}");
    Ok(sum)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = self.aligned(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        a
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = self.aligned(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x -= y;
        }
        a
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = self.aligned(rhs);
        let nza = a.coeffs.iter().filter(|c| !c.is_zero()).count();
        let nzb = b.coeffs.iter().filter(|c| !c.is_zero()).count();
        if nza == 0 || nzb == 0 {
            return Cyclotomic {
                order: a.order,
                coeffs: vec![rat_zero(); a.coeffs.len()],
            };
        }
        // monomial fast path: a single shift-and-scale
        if nza == 1 || nzb == 1 {
            let (mono, full) = if nza == 1 { (&a, &b) } else { (&b, &a) };
            let (e, c) = mono
                .coeffs
                .iter()
                .enumerate()
                .find(|(_, c)| !c.is_zero())
                .expect("nonzero monomial");
            let mut v = vec![rat_zero(); full.coeffs.len() + e];
            for (i, f) in full.coeffs.iter().enumerate() {
                if !f.is_zero() {
                    v[i + e] = f * c;
                }
            }
            return Cyclotomic::from_reduced(a.order, v);
        }
        let mut v = vec![rat_zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    v[i + j] += x * y;
                }
            }
        }
        Cyclotomic::from_reduced(a.order, v)
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{}", format_rational(&r));
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = c.is_negative();
            if first {
                if sign {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 {
                write!(f, "{}", format_rational(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", format_rational(&mag))?;
                }
                if i == 1 {
                    write!(f, "z{}", self.order)?;
                } else {
                    write!(f, "z{}^{}", self.order, i)?;
                }
            }
        }
        Ok(())
    }
}

// JSON literal form shared by scenario files and reports:
// {"order": n, "coeffs": {"<exponent>": "<rational>"}} with sparse
// exponent keys in [0, n).
impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(Some(2))?;
        m.serialize_entry("order", &self.order)?;
        let sparse: std::collections::BTreeMap<String, String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i.to_string(), format_rational(c)))
            .collect();
        m.serialize_entry("coeffs", &sparse)?;
        m.end()
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            order: u32,
            coeffs: std::collections::BTreeMap<String, String>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.order == 0 {
            return Err(D::Error::custom("cyclotomic order must be positive"));
        }
        let mut v = vec![rat_zero(); raw.order as usize];
        for (k, s) in raw.coeffs {
            let e: u32 = k
                .parse()
                .map_err(|_| D::Error::custom(format!("bad exponent key {k:?}")))?;
            if e >= raw.order {
                return Err(D::Error::custom(format!(
                    "exponent {e} out of range for order {}",
                    raw.order
                )));
            }
            let r = parse_rational(&s).map_err(|e| D::Error::custom(e.to_string()))?;
            v[e as usize] += r;
        }
        Ok(Cyclotomic::from_reduced(raw.order, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn root_examples() {
        // zeta_4 = i: coordinates (0, 1) at order 4
        let i = root_of_unity(4, 1);
        assert_eq!(i.coeffs(), &[rat(0, 1), rat(1, 1)]);
        // zeta_6^2 = zeta_6 - 1 after reduction by x^2 - x + 1
        let z = root_of_unity(6, 2);
        assert_eq!(z.coeffs(), &[rat(-1, 1), rat(1, 1)]);
        // zeta_n^0 = 1 for any n
        for n in 1..=12 {
            assert_eq!(root_of_unity(n, 0), Cyclotomic::one());
        }
        // zeta_n^n = 1
        for n in 2..=12u32 {
            assert_eq!(
                root_of_unity(n, 1).try_pow(n as i64).unwrap(),
                Cyclotomic::one()
            );
        }
    }

    #[test]
    fn arithmetic_examples() {
        let z3 = root_of_unity(3, 1);
        let z3sq = root_of_unity(3, 2);
        assert_eq!(&z3 + &z3sq, Cyclotomic::from_integer(-1));
        let i = root_of_unity(4, 1);
        assert_eq!(&i * &i, Cyclotomic::from_integer(-1));
        // 1 / (1 - zeta_2) = 1/2
        let d = Cyclotomic::one() - root_of_unity(2, 1);
        let inv = Cyclotomic::one().try_div(&d).unwrap();
        assert_eq!(inv, Cyclotomic::from_rational(rat(1, 2)));
    }

    #[test]
    fn division_by_zero_is_reported() {
        let z = root_of_unity(5, 2);
        let err = z.try_div(&Cyclotomic::zero()).unwrap_err();
        assert!(matches!(err, ExactError::DivisionByZero { .. }));
    }

    #[test]
    fn mixed_order_equality() {
        // -1 seen at orders 1, 2, 4, 6 is the same element
        let a = Cyclotomic::from_integer(-1);
        let b = root_of_unity(2, 1);
        let c = root_of_unity(4, 2);
        let d = root_of_unity(6, 3);
        assert_eq!(a, b);
        assert_eq!(b, c);
        assert_eq!(c, d);
        // zeta_3 at order 3 and order 12
        assert_eq!(root_of_unity(3, 1), root_of_unity(12, 4));
    }

    #[test]
    fn conj_is_involution_and_inverts_roots() {
        for n in 1..=12u32 {
            for k in 0..n {
                let z = root_of_unity(n, k as i64);
                assert_eq!(z.conj().conj(), z);
                assert_eq!(z.conj(), root_of_unity(n, n as i64 - k as i64));
            }
        }
    }

    #[test]
    fn embed_round_trip() {
        for n in 1..=8u32 {
            for m in 1..=4u32 {
                let z = &root_of_unity(n, 1) + &Cyclotomic::from_rational(rat(2, 3));
                let lifted = z.embed(n * m);
                assert_eq!(lifted.reduce_to_order(n).unwrap(), z);
                assert_eq!(lifted, z);
            }
        }
    }

    #[test]
    fn reduce_to_order_detects_membership() {
        // zeta_8 is not in Q(zeta_4)
        assert!(root_of_unity(8, 1).reduce_to_order(4).is_none());
        // zeta_8^2 = i is
        let sq = root_of_unity(8, 2);
        assert_eq!(sq.reduce_to_order(4).unwrap(), root_of_unity(4, 1));
        assert_eq!(sq.minimal_order().order(), 4);
    }

    #[test]
    fn rationality_detection() {
        let z5 = root_of_unity(5, 1);
        let s = (0..5).fold(Cyclotomic::zero(), |acc, k| acc + root_of_unity(5, k));
        assert!(s.is_zero()); // 1 + zeta + ... + zeta^4 = 0
        assert!(!z5.is_rational());
        let norm = &z5 * &z5.conj(); // |zeta|^2 = 1
        assert_eq!(norm.to_integer().unwrap(), BigInt::one());
    }

    #[test]
    fn geometric_weight_small_cases() {
        // N = 2: sum = zeta_2 = -1 = 2/(-1-1)
        assert_eq!(
            geometric_weight_sum(2).unwrap(),
            Cyclotomic::from_integer(-1)
        );
        // N = 3 and N = 4 are asserted internally against N/(zeta-1)
        let s3 = geometric_weight_sum(3).unwrap();
        let expect3 = root_of_unity(3, 1) + root_of_unity(3, 2).scale(&rat(2, 1));
        assert_eq!(s3, expect3);
        let s4 = geometric_weight_sum(4).unwrap();
        // i - 2 - 3i = -2 - 2i
        let i = root_of_unity(4, 1);
        let expect4 = Cyclotomic::from_integer(-2) - i.scale(&rat(2, 1));
        assert_eq!(s4, expect4);
        assert!(geometric_weight_sum(1).is_err());
        assert!(geometric_weight_sum(0).is_err());
    }

    #[test]
    fn json_literal_round_trip() {
        let z = root_of_unity(12, 7).scale(&rat(-3, 2)) + Cyclotomic::from_rational(rat(1, 5));
        let s = serde_json::to_string(&z).unwrap();
        let back: Cyclotomic = serde_json::from_str(&s).unwrap();
        assert_eq!(back, z);
        // sparse high exponents reduce on parse
        let parsed: Cyclotomic = serde_json::from_str(r#"{"order":6,"coeffs":{"2":"1"}}"#).unwrap();
        assert_eq!(parsed, root_of_unity(6, 2));
        assert!(serde_json::from_str::<Cyclotomic>(r#"{"order":6,"coeffs":{"6":"1"}}"#).is_err());
        assert!(serde_json::from_str::<Cyclotomic>(r#"{"order":0,"coeffs":{}}"#).is_err());
    }
}
