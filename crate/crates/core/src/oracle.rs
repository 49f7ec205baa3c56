//! Independent brute-force verifier on cyclic superelliptic covers
//! y^n = prod (x - a_j)^(d_j).
//!
//! The curve data determines branch orbits (stabilizer orders and
//! rotation exponents) by local coordinate analysis, and the spaces
//! H^0(K^t) have explicit monomial generators per y-layer whose divisors
//! are computed exactly. Isotypic dimension counts from this enumeration
//! are compared against the Chevalley-Weil multiplicities.

use num::BigInt;
use thiserror::Error;

use crate::character::CharacterTable;
use crate::cover::{BundleData, CoverData, CoverError};
use crate::cw::{chevalley_weil, CwError, Mode};
use crate::exact::IntPoly;
use crate::group::FiniteGroup;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("superelliptic exponent needs n >= 2, got {0}")]
    OrderTooSmall(u32),
    #[error("curve needs at least one branch point")]
    NoBranchPoints,
    #[error("duplicate branch x-value {x}")]
    DuplicateBranchPoint { x: i64 },
    #[error("branch exponent {d} at x = {x} is out of range 1..{n}")]
    ExponentOutOfRange { x: i64, d: u32, n: u32 },
    #[error("disconnected curve: gcd(n, d_1, ..., d_r) = {gcd} > 1")]
    Disconnected { gcd: u32 },
    #[error("pluricanonical comparison (t >= 2) needs genus >= 2, got {genus}")]
    NeedsGenusTwo { genus: u64 },
    #[error("t must be at least 1")]
    BadPower,
    #[error("oracle self-check failed: total dimension {got}, expected {expected}")]
    TotalDimension { expected: u64, got: u64 },
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Cw(#[from] CwError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BranchPoint {
    pub x: i64,
    pub d: u32,
}

/// y^n = prod (x - a_j)^(d_j) with distinct integer branch x-values and
/// 1 <= d_j < n. Connectivity gcd(n, d_1, ..., d_r) = 1 is enforced.
#[derive(Debug, Clone)]
pub struct SuperellipticCurve {
    n: u32,
    branch: Vec<BranchPoint>,
    d_infinity: u32,
    genus: u64,
}

impl SuperellipticCurve {
    pub fn new(n: u32, mut branch: Vec<BranchPoint>) -> Result<Self, OracleError> {
        if n < 2 {
            return Err(OracleError::OrderTooSmall(n));
        }
        if branch.is_empty() {
            return Err(OracleError::NoBranchPoints);
        }
        branch.sort_by_key(|b| b.x);
        for w in branch.windows(2) {
            if w[0].x == w[1].x {
                return Err(OracleError::DuplicateBranchPoint { x: w[0].x });
            }
        }
        for b in &branch {
            if b.d == 0 || b.d >= n {
                return Err(OracleError::ExponentOutOfRange { x: b.x, d: b.d, n });
            }
        }
        let mut g = n;
        for b in &branch {
            g = num::integer::gcd(g, b.d);
        }
        if g != 1 {
            return Err(OracleError::Disconnected { gcd: g });
        }
        let total: u32 = branch.iter().map(|b| b.d).sum::<u32>() % n;
        let d_infinity = (n - total) % n;
        // Riemann-Hurwitz over the line: 2g - 2 = -2n + sum over points of (e - 1)
        let mut ram: i64 = 0;
        for b in &branch {
            let pts = num::integer::gcd(n, b.d) as i64;
            let e = n as i64 / pts;
            ram += pts * (e - 1);
        }
        if d_infinity != 0 {
            let pts = num::integer::gcd(n, d_infinity) as i64;
            let e = n as i64 / pts;
            ram += pts * (e - 1);
        }
        let two_g_minus_2 = -2 * n as i64 + ram;
        debug_assert!(two_g_minus_2 % 2 == 0 && two_g_minus_2 >= -2);
        let genus = ((two_g_minus_2 + 2) / 2) as u64;
        Ok(SuperellipticCurve {
            n,
            branch,
            d_infinity,
            genus,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn branch(&self) -> &[BranchPoint] {
        &self.branch
    }

    /// The exponent of the local equation over infinity, (-sum d_j) mod n;
    /// zero means infinity is unramified.
    pub fn d_infinity(&self) -> u32 {
        self.d_infinity
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    fn degree_sum(&self) -> i64 {
        self.branch.iter().map(|b| b.d as i64).sum()
    }

    /// prod (x - a_j)^(d_j) as an exact integer polynomial.
    pub fn defining_polynomial(&self) -> IntPoly {
        let mut f = IntPoly::one();
        for b in &self.branch {
            f = f.mul(&IntPoly::linear(&BigInt::from(b.x)).pow(b.d));
        }
        f
    }
}

/// Branch data of the cyclic action sigma: y -> zeta_n y on the quotient
/// line. Each ramified x-value (and infinity, when ramified) contributes
/// one orbit: stabilizer generator sigma^gcd(n, d), order n/gcd, rotation
/// exponent (d/gcd)^(-1) mod order.
pub fn build_cover(curve: &SuperellipticCurve) -> Result<CoverData, OracleError> {
    let n = curve.n();
    let group = FiniteGroup::cyclic(n).expect("n >= 2");
    let mut orbits = Vec::new();
    let mut local = |id: String, d: u32| {
        let g = num::integer::gcd(n, d);
        let e = (n / g) as i64;
        let u = crate::cover::mod_inverse((d / g) as i64, e).expect("d/g is a unit mod e");
        orbits.push((id, g as usize, e as usize, u));
    };
    for (j, b) in curve.branch().iter().enumerate() {
        local(format!("q{}", j + 1), b.d);
    }
    if curve.d_infinity() != 0 {
        local("inf".to_string(), curve.d_infinity());
    }
    let cover = CoverData::new(group, 0, orbits)?;
    debug_assert_eq!(cover.total_genus(), curve.genus());
    Ok(cover)
}

fn floor_div(p: i64, q: i64) -> i64 {
    debug_assert!(q > 0);
    p.div_euclid(q)
}

fn ceil_div(p: i64, q: i64) -> i64 {
    debug_assert!(q > 0);
    -((-p).div_euclid(q))
}

/// Per-character dimensions of H^0(K^t), by enumerating monomial
/// pluridifferentials with nonnegative valuation everywhere. sigma acts
/// on y^(-b) with eigenvalue zeta^(-b) under the pullback action on
/// forms, so the y-layer b counts toward the character xi^((-b) mod n).
///
/// The eigencomponent of xi^(-b) in the function field is exactly
/// Q(x) * y^(-b) with Q rational (Kummer decomposition), so for each
/// layer b in [0, n) the holomorphic sections are spanned by the
/// monomials
///
///   prod_j (x - a_j)^(L_j) * x^a * y^(-b) (dx)^t,   0 <= a <= B
///
/// where L_j is the least order at a_j allowed by the local valuations
/// (negative L_j are honest poles, compensated by y^(-b) vanishing) and
/// B is cut by the valuations over infinity. Distinct a give distinct
/// degrees, so the count is the dimension.
pub fn holomorphic_sections(curve: &SuperellipticCurve, t: u32) -> Result<Vec<u64>, OracleError> {
    if t == 0 {
        return Err(OracleError::BadPower);
    }
    let n = curve.n() as i64;
    let t = t as i64;
    let big_d = curve.degree_sum();
    let d_inf = curve.d_infinity() as i64;
    // (e, v(y)) per finite branch point
    let locals: Vec<(i64, i64)> = curve
        .branch()
        .iter()
        .map(|b| {
            let g = num::integer::gcd(curve.n(), b.d) as i64;
            (n / g, b.d as i64 / g)
        })
        .collect();
    let (e_inf, vy_inf) = if d_inf != 0 {
        let g = num::integer::gcd(curve.n(), curve.d_infinity()) as i64;
        let e = n / g;
        (e, e * big_d / n)
    } else {
        (1, big_d / n)
    };
    let mut dims = vec![0u64; n as usize];
    for b in 0..n {
        // least admissible order at each branch point:
        // e_j * L_j - b * v_j(y) + t * (e_j - 1) >= 0
        let mut degree_shift = 0i64;
        for &(e, vy) in &locals {
            degree_shift += ceil_div(b * vy - t * (e - 1), e);
        }
        // over infinity: -e * deg(R) + b * v(y) - t * (e + 1) >= 0
        let max_degree = floor_div(b * vy_inf - t * (e_inf + 1), e_inf);
        let count = max_degree - degree_shift + 1;
        if count > 0 {
            let class = ((n - b) % n) as usize;
            dims[class] = count as u64;
        }
    }
    let total: u64 = dims.iter().sum();
    let expected = if t == 1 {
        Some(curve.genus())
    } else if curve.genus() >= 2 {
        Some((2 * t as u64 - 1) * (curve.genus() - 1))
    } else {
        None
    };
    if let Some(expected) = expected {
        if total != expected {
            return Err(OracleError::TotalDimension {
                expected,
                got: total,
            });
        }
    }
    Ok(dims)
}

/// Outcome of one oracle comparison.
#[derive(Debug, Clone)]
pub struct OracleReport {
    pub n: u32,
    pub t: u32,
    pub genus: u64,
    /// dim H^0(K^t)_xi per character of cyclic(n).
    pub dims: Vec<u64>,
    /// Chevalley-Weil multiplicities of K^t.
    pub cw_multiplicities: Vec<i64>,
    /// dims minus the H^1 correction (trivial character, t = 1 only).
    pub expected_multiplicities: Vec<i64>,
    pub matches: bool,
}

/// Compare Chevalley-Weil multiplicities of K^t against the brute-force
/// isotypic dimensions. For t = 1 the trivial character is corrected by
/// the one-dimensional H^1(K); for t >= 2 (genus >= 2) H^1 vanishes.
pub fn compare_with_cw(curve: &SuperellipticCurve, t: u32) -> Result<OracleReport, OracleError> {
    if t == 0 {
        return Err(OracleError::BadPower);
    }
    if t >= 2 && curve.genus() < 2 {
        return Err(OracleError::NeedsGenusTwo {
            genus: curve.genus(),
        });
    }
    let cover = build_cover(curve)?;
    let table = CharacterTable::for_group(cover.group()).map_err(CwError::Character)?;
    let bundle = BundleData::canonical(&cover, t as i64);
    let cw = chevalley_weil(&cover, &bundle, &table, Mode::Proof)?;
    let dims = holomorphic_sections(curve, t)?;
    let expected: Vec<i64> = dims
        .iter()
        .enumerate()
        .map(|(i, &d)| d as i64 - i64::from(t == 1 && i == 0))
        .collect();
    let matches = cw.multiplicities() == expected.as_slice();
    Ok(OracleReport {
        n: curve.n(),
        t,
        genus: curve.genus(),
        dims,
        cw_multiplicities: cw.multiplicities().to_vec(),
        expected_multiplicities: expected,
        matches,
    })
}
