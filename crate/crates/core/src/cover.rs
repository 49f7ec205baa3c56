//! Quotient-side description of a group action on a compact Riemann
//! surface: branch orbits with cyclic stabilizers and rotation exponents,
//! quotient genus, Riemann-Hurwitz bookkeeping, and equivariant bundle
//! data (degree plus per-orbit fiber exponents).

use std::collections::BTreeMap;

use num::Integer;
use thiserror::Error;

use crate::group::{CyclicSubgroup, GroupRef};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("orbit {orbit:?}: stabilizer must have order >= 2 (generator is the identity)")]
    TrivialStabilizer { orbit: String },
    #[error("orbit {orbit:?}: declared stabilizer order {declared} but the generator has order {actual}")]
    OrderMismatch {
        orbit: String,
        declared: usize,
        actual: usize,
    },
    #[error("orbit {orbit:?}: rotation exponent {exponent} is not a unit mod {order} (gcd != 1)")]
    RotationNotUnit {
        orbit: String,
        exponent: i64,
        order: usize,
    },
    #[error(
        "orbit {orbit:?}: generator {generator} is not an element of the group (order {order})"
    )]
    GeneratorOutOfRange {
        orbit: String,
        generator: usize,
        order: usize,
    },
    #[error("duplicate orbit id {orbit:?}")]
    DuplicateOrbit { orbit: String },
    #[error("unrealizable branch data: 2g - 2 = {value} is {problem}")]
    GenusInvalid { value: i64, problem: String },
    #[error("bundle is missing a fiber exponent for orbit {orbit:?}")]
    MissingFiberExponent { orbit: String },
    #[error("bundle names unknown orbit {orbit:?}")]
    UnknownOrbit { orbit: String },
}

/// One branch orbit: a chosen stabilizer generator c of order N_p >= 2
/// and the rotation exponent a (a unit mod N_p), meaning the stabilizer
/// acts on the cotangent line at a point of the orbit by
/// tau(c^k) = zeta_{N_p}^{a k}.
#[derive(Debug, Clone)]
pub struct BranchOrbit {
    id: String,
    stabilizer: CyclicSubgroup,
    rotation_exponent: u32,
}

impl BranchOrbit {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn stabilizer(&self) -> &CyclicSubgroup {
        &self.stabilizer
    }

    /// N_p, the stabilizer order.
    pub fn order(&self) -> usize {
        self.stabilizer.order()
    }

    pub fn rotation_exponent(&self) -> u32 {
        self.rotation_exponent
    }
}

/// Branch data for a group action: quotient genus plus one entry per
/// branch orbit. Unramified orbits are simply absent; stabilizers of
/// order 1 are rejected rather than ignored.
#[derive(Debug, Clone)]
pub struct CoverData {
    group: GroupRef,
    quotient_genus: u32,
    orbits: Vec<BranchOrbit>,
    total_genus: u64,
}

impl CoverData {
    pub fn new(
        group: GroupRef,
        quotient_genus: u32,
        orbit_spec: Vec<(String, usize, usize, i64)>,
    ) -> Result<CoverData, CoverError> {
        let mut orbits = Vec::with_capacity(orbit_spec.len());
        let mut seen = std::collections::BTreeSet::new();
        for (id, generator, declared_order, rotation) in orbit_spec {
            if !seen.insert(id.clone()) {
                return Err(CoverError::DuplicateOrbit { orbit: id });
            }
            if generator >= group.order() {
                return Err(CoverError::GeneratorOutOfRange {
                    orbit: id,
                    generator,
                    order: group.order(),
                });
            }
            let stabilizer = group.cyclic_subgroup(generator);
            let actual = stabilizer.order();
            if actual == 1 {
                return Err(CoverError::TrivialStabilizer { orbit: id });
            }
            if actual != declared_order {
                return Err(CoverError::OrderMismatch {
                    orbit: id,
                    declared: declared_order,
                    actual,
                });
            }
            let reduced = rotation.rem_euclid(actual as i64) as u32;
            if (reduced as usize).gcd(&actual) != 1 {
                return Err(CoverError::RotationNotUnit {
                    orbit: id,
                    exponent: rotation,
                    order: actual,
                });
            }
            orbits.push(BranchOrbit {
                id,
                stabilizer,
                rotation_exponent: reduced,
            });
        }
        let n = group.order() as i64;
        let ram: i64 = orbits
            .iter()
            .map(|o| (n / o.order() as i64) * (o.order() as i64 - 1))
            .sum();
        let two_g_minus_2 = n * (2 * quotient_genus as i64 - 2) + ram;
        if two_g_minus_2 % 2 != 0 {
            return Err(CoverError::GenusInvalid {
                value: two_g_minus_2,
                problem: "odd (genus is not an integer)".into(),
            });
        }
        if two_g_minus_2 < -2 {
            return Err(CoverError::GenusInvalid {
                value: two_g_minus_2,
                problem: "below -2 (genus is negative)".into(),
            });
        }
        let total_genus = ((two_g_minus_2 + 2) / 2) as u64;
        Ok(CoverData {
            group,
            quotient_genus,
            orbits,
            total_genus,
        })
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn quotient_genus(&self) -> u32 {
        self.quotient_genus
    }

    pub fn orbits(&self) -> &[BranchOrbit] {
        &self.orbits
    }

    pub fn orbit(&self, id: &str) -> Option<&BranchOrbit> {
        self.orbits.iter().find(|o| o.id() == id)
    }

    /// Orbit size N / N_p.
    pub fn orbit_size(&self, orbit: &BranchOrbit) -> u64 {
        (self.group.order() / orbit.order()) as u64
    }

    /// deg R = sum over orbits of (N/N_p)(N_p - 1).
    pub fn ramification_degree(&self) -> u64 {
        self.orbits
            .iter()
            .map(|o| self.orbit_size(o) * (o.order() as u64 - 1))
            .sum()
    }

    /// Genus of the covering surface from 2g - 2 = N(2h - 2) + deg R.
    pub fn total_genus(&self) -> u64 {
        self.total_genus
    }

    /// Warning-level diagnostics. For an abelian group the images of the
    /// branch-point monodromies (the stabilizer element rotating the
    /// local coordinate by zeta, one per orbit) must multiply to the
    /// identity; violations are reported but never block computation.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.group.is_abelian() && !self.orbits.is_empty() {
            let mut prod = self.group.identity();
            for orbit in &self.orbits {
                let n_p = orbit.order() as i64;
                let a = orbit.rotation_exponent() as i64;
                let a_inv = mod_inverse(a, n_p).expect("rotation exponent is a unit");
                let monodromy = self.group.power(orbit.stabilizer().generator(), a_inv);
                prod = self.group.mul(prod, monodromy);
            }
            if prod != self.group.identity() {
                out.push(format!(
                    "abelian monodromy condition fails: the orbit monodromies multiply to {} instead of the identity",
                    self.group.element_label(prod)
                ));
            }
        }
        out
    }
}

/// Multiplicative inverse of a mod n for gcd(a, n) = 1.
pub(crate) fn mod_inverse(a: i64, n: i64) -> Option<i64> {
    let (mut r0, mut r1) = (n, a.rem_euclid(n));
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 == 1 {
        Some(t0.rem_euclid(n))
    } else {
        None
    }
}

/// An equivariant line bundle's computable shadow: its degree and, per
/// branch orbit, the exponent m with nu_p = tau_p^m on the fibre.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleData {
    degree: i64,
    fiber_exponents: BTreeMap<String, u32>,
}

impl BundleData {
    /// Exponents are reduced mod the orbit's stabilizer order; every
    /// orbit must receive one.
    pub fn new(
        cover: &CoverData,
        degree: i64,
        exponents: &BTreeMap<String, i64>,
    ) -> Result<BundleData, CoverError> {
        for id in exponents.keys() {
            if cover.orbit(id).is_none() {
                return Err(CoverError::UnknownOrbit { orbit: id.clone() });
            }
        }
        let mut fiber_exponents = BTreeMap::new();
        for orbit in cover.orbits() {
            let raw =
                exponents
                    .get(orbit.id())
                    .ok_or_else(|| CoverError::MissingFiberExponent {
                        orbit: orbit.id().to_string(),
                    })?;
            fiber_exponents.insert(
                orbit.id().to_string(),
                raw.rem_euclid(orbit.order() as i64) as u32,
            );
        }
        Ok(BundleData {
            degree,
            fiber_exponents,
        })
    }

    /// The t-th power of the canonical bundle: degree t(2g - 2) and fiber
    /// character tau^t at every orbit.
    pub fn canonical(cover: &CoverData, t: i64) -> BundleData {
        let degree = t * (2 * cover.total_genus() as i64 - 2);
        let fiber_exponents = cover
            .orbits()
            .iter()
            .map(|o| (o.id().to_string(), t.rem_euclid(o.order() as i64) as u32))
            .collect();
        BundleData {
            degree,
            fiber_exponents,
        }
    }

    /// The trivially linearized trivial bundle: degree 0, all exponents 0.
    pub fn trivial(cover: &CoverData) -> BundleData {
        let fiber_exponents = cover
            .orbits()
            .iter()
            .map(|o| (o.id().to_string(), 0u32))
            .collect();
        BundleData {
            degree: 0,
            fiber_exponents,
        }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn fiber_exponent(&self, orbit: &BranchOrbit) -> u32 {
        self.fiber_exponents[orbit.id()]
    }

    pub fn fiber_exponents(&self) -> &BTreeMap<String, u32> {
        &self.fiber_exponents
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    /// Genus-2 hyperelliptic data: C2, six branch orbits of order 2.
    pub(crate) fn hyperelliptic() -> CoverData {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let orbits = (1..=6)
            .map(|i| (format!("q{i}"), 1usize, 2usize, 1i64))
            .collect();
        CoverData::new(c2, 0, orbits).unwrap()
    }

    /// D3 acting on the sphere: one orbit with stabilizer R, two orbits
    /// with reflection stabilizers.
    pub(crate) fn d3_on_sphere() -> CoverData {
        let d3 = FiniteGroup::dihedral(3).unwrap();
        CoverData::new(
            d3,
            0,
            vec![
                ("poles".into(), 1, 3, 1),
                ("edge".into(), 3, 2, 1),
                ("vertex".into(), 3, 2, 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn ramification_degrees() {
        let free = CoverData::new(FiniteGroup::cyclic(5).unwrap(), 3, vec![]).unwrap();
        assert_eq!(free.ramification_degree(), 0);
        assert_eq!(hyperelliptic().ramification_degree(), 6);
        assert_eq!(d3_on_sphere().ramification_degree(), 10);
    }

    #[test]
    fn genus_computations() {
        assert_eq!(hyperelliptic().total_genus(), 2);
        assert_eq!(d3_on_sphere().total_genus(), 0);
        let free = CoverData::new(FiniteGroup::cyclic(5).unwrap(), 3, vec![]).unwrap();
        assert_eq!(free.total_genus(), 11); // 2g - 2 = 5 * 4
    }

    #[test]
    fn validation_rejects_bad_data() {
        let c4 = FiniteGroup::cyclic(4).unwrap();
        // rotation exponent 2 with N_p = 4: not faithful
        let err = CoverData::new(c4.clone(), 0, vec![("q".into(), 1, 4, 2)]).unwrap_err();
        assert!(matches!(err, CoverError::RotationNotUnit { .. }));
        // single order-3 orbit over genus 0: 2g - 2 = -6 + 2, odd genus
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let err = CoverData::new(c3.clone(), 0, vec![("q".into(), 1, 3, 1)]).unwrap_err();
        assert!(matches!(err, CoverError::GenusInvalid { .. }));
        // declared order mismatch
        let err = CoverData::new(c4.clone(), 0, vec![("q".into(), 2, 4, 1)]).unwrap_err();
        assert!(matches!(err, CoverError::OrderMismatch { .. }));
        // identity generator
        let err = CoverData::new(c4, 0, vec![("q".into(), 0, 1, 1)]).unwrap_err();
        assert!(matches!(err, CoverError::TrivialStabilizer { .. }));
    }

    #[test]
    fn abelian_monodromy_warning() {
        // superelliptic-style data satisfying the product condition: no warning
        assert!(hyperelliptic().warnings().is_empty());
        // two order-3 orbits with monodromies sigma, sigma: product is sigma^2
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let cover =
            CoverData::new(c3, 1, vec![("a".into(), 1, 3, 1), ("b".into(), 1, 3, 1)]).unwrap();
        assert_eq!(cover.warnings().len(), 1);
        // same shape with exponents 1 and 2: monodromies sigma, sigma^2
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let cover =
            CoverData::new(c3, 1, vec![("a".into(), 1, 3, 1), ("b".into(), 1, 3, 2)]).unwrap();
        assert!(cover.warnings().is_empty());
    }

    #[test]
    fn canonical_and_trivial_bundles() {
        let hyp = hyperelliptic();
        let k = BundleData::canonical(&hyp, 1);
        assert_eq!(k.degree(), 2);
        for o in hyp.orbits() {
            assert_eq!(k.fiber_exponent(o), 1);
        }
        let k2 = BundleData::canonical(&hyp, 2);
        assert_eq!(k2.degree(), 4);
        for o in hyp.orbits() {
            assert_eq!(k2.fiber_exponent(o), 0); // 2 mod 2
        }
        let d3 = d3_on_sphere();
        let k = BundleData::canonical(&d3, 1);
        assert_eq!(k.degree(), -2);
        let triv = BundleData::trivial(&d3);
        assert_eq!(triv.degree(), 0);
        for o in d3.orbits() {
            assert_eq!(triv.fiber_exponent(o), 0);
        }
    }

    #[test]
    fn bundle_validation() {
        let hyp = hyperelliptic();
        let mut exps: BTreeMap<String, i64> = (1..=5).map(|i| (format!("q{i}"), 1)).collect();
        let err = BundleData::new(&hyp, 2, &exps).unwrap_err();
        assert_eq!(err, CoverError::MissingFiberExponent { orbit: "q6".into() });
        exps.insert("q6".into(), -3);
        let b = BundleData::new(&hyp, 2, &exps).unwrap();
        assert_eq!(b.fiber_exponent(&hyp.orbits()[5]), 1); // -3 mod 2
        exps.insert("zz".into(), 0);
        let err = BundleData::new(&hyp, 2, &exps).unwrap_err();
        assert_eq!(err, CoverError::UnknownOrbit { orbit: "zz".into() });
    }

    #[test]
    fn genus_monotone_in_orbits() {
        let c6 = FiniteGroup::cyclic(6).unwrap();
        let mut last = None;
        for k in [2usize, 4, 6] {
            let orbits = (0..k)
                .map(|i| (format!("q{i}"), 3usize, 2usize, 1i64))
                .collect();
            let cover = CoverData::new(c6.clone(), 1, orbits).unwrap();
            if let Some(prev) = last {
                assert!(cover.total_genus() >= prev);
            }
            last = Some(cover.total_genus());
        }
    }
}
