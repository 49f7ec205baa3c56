#![allow(dead_code)] // each test binary uses a different slice of this

//! Deterministic random scenario generation for the test suites.
//!
//! Covers are built from monodromy data so that they correspond to
//! genuine actions: branch-point monodromies multiply into the
//! commutator subgroup (exactly to the identity over a genus-zero
//! quotient, where they must also generate), stabilizer generators are
//! re-picked as random powers with the matching rotation exponent, and
//! bundles are powers of the canonical bundle twisted by invariant
//! divisors. The engine's integrality check is the final filter.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use equichar_core::{
    chevalley_weil, BundleData, CharacterTable, CoverData, FiniteGroup, GroupRef, Mode,
};
use once_cell::sync::Lazy;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct GeneratedScenario {
    pub cover: CoverData,
    pub table: CharacterTable,
    pub bundle: BundleData,
}

pub const CORPUS_SIZE: usize = 200;

/// The shared scenario corpus: 200 engine-accepted random scenarios over
/// cyclic and dihedral groups.
pub static CORPUS: Lazy<Vec<GeneratedScenario>> = Lazy::new(|| {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0455_1543);
    (0..CORPUS_SIZE)
        .map(|_| random_scenario(&mut rng))
        .collect()
});

pub fn random_group<R: Rng>(rng: &mut R) -> GroupRef {
    if rng.gen_bool(0.5) {
        FiniteGroup::cyclic(rng.gen_range(2..=12)).unwrap()
    } else {
        FiniteGroup::dihedral(rng.gen_range(2..=8)).unwrap()
    }
}

fn commutator_subgroup(group: &GroupRef) -> Vec<usize> {
    let n = group.order();
    let mut seed = BTreeSet::new();
    for a in 0..n {
        for b in 0..n {
            let c = group.mul(group.mul(group.mul(a, b), group.inv(a)), group.inv(b));
            seed.insert(c);
        }
    }
    closure(group, &seed.into_iter().collect::<Vec<_>>())
}

fn closure(group: &GroupRef, elements: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; group.order()];
    seen[group.identity()] = true;
    let mut frontier: Vec<usize> = vec![group.identity()];
    while let Some(x) = frontier.pop() {
        for &e in elements {
            let y = group.mul(x, e);
            if !seen[y] {
                seen[y] = true;
                frontier.push(y);
            }
        }
    }
    (0..group.order()).filter(|&g| seen[g]).collect()
}

fn generates(group: &GroupRef, elements: &[usize]) -> bool {
    closure(group, elements).len() == group.order()
}

fn units_mod(n: usize) -> Vec<i64> {
    (1..n as i64)
        .filter(|&v| num::integer::gcd(v, n as i64) == 1)
        .collect()
}

pub fn random_scenario<R: Rng>(rng: &mut R) -> GeneratedScenario {
    loop {
        if let Some(s) = try_random_scenario(rng) {
            return s;
        }
    }
}

fn try_random_scenario<R: Rng>(rng: &mut R) -> Option<GeneratedScenario> {
    let group = random_group(rng);
    let n = group.order();
    let h: u32 = rng.gen_range(0..=2);
    let orbit_count: usize = if h == 0 {
        rng.gen_range(2..=4)
    } else {
        rng.gen_range(0..=3)
    };
    let mut monodromies = Vec::with_capacity(orbit_count);
    if orbit_count > 0 {
        for _ in 0..orbit_count - 1 {
            monodromies.push(rng.gen_range(1..n));
        }
        let mut prefix = group.identity();
        for &m in &monodromies {
            prefix = group.mul(prefix, m);
        }
        let last = if h == 0 {
            group.inv(prefix)
        } else {
            let commutators = commutator_subgroup(&group);
            let z = commutators[rng.gen_range(0..commutators.len())];
            group.mul(group.inv(prefix), z)
        };
        if last == group.identity() {
            return None;
        }
        monodromies.push(last);
        if h == 0 && !generates(&group, &monodromies) {
            return None;
        }
    }
    let mut orbit_spec = Vec::with_capacity(orbit_count);
    for (i, &mono) in monodromies.iter().enumerate() {
        let ord = group.element_order(mono);
        let units = units_mod(ord);
        let v = units[rng.gen_range(0..units.len())];
        let generator = group.power(mono, v);
        orbit_spec.push((format!("q{}", i + 1), generator, ord, v));
    }
    let cover = CoverData::new(group.clone(), h, orbit_spec).ok()?;
    let table = CharacterTable::for_group(&group).unwrap();
    // bundle: K^t twisted by an invariant divisor
    let t: i64 = rng.gen_range(0..=2);
    let plain_fibers: i64 = rng.gen_range(-1..=1);
    let mut degree = t * (2 * cover.total_genus() as i64 - 2) + plain_fibers * n as i64;
    let mut exponents = BTreeMap::new();
    for orbit in cover.orbits() {
        let coeff: i64 = rng.gen_range(-2..=2);
        degree += coeff * (n as i64 / orbit.order() as i64);
        exponents.insert(orbit.id().to_string(), t - coeff);
    }
    let bundle = BundleData::new(&cover, degree, &exponents).ok()?;
    chevalley_weil(&cover, &bundle, &table, Mode::Proof).ok()?;
    Some(GeneratedScenario {
        cover,
        table,
        bundle,
    })
}

/// A free action (no branch orbits) with group-divisible bundle degree.
pub fn random_free_scenario<R: Rng>(rng: &mut R) -> GeneratedScenario {
    let group = random_group(rng);
    let h: u32 = rng.gen_range(1..=3);
    let degree = group.order() as i64 * rng.gen_range(-3..=3);
    let cover = CoverData::new(group.clone(), h, vec![]).unwrap();
    let table = CharacterTable::for_group(&group).unwrap();
    let bundle = BundleData::new(&cover, degree, &BTreeMap::new()).unwrap();
    GeneratedScenario {
        cover,
        table,
        bundle,
    }
}

/// Render a generated scenario in the JSON file format.
pub fn to_scenario_value(s: &GeneratedScenario) -> serde_json::Value {
    let group = match s.cover.group().kind() {
        equichar_core::GroupKind::Cyclic(n) => serde_json::json!({"kind": "cyclic", "n": n}),
        equichar_core::GroupKind::Dihedral(n) => serde_json::json!({"kind": "dihedral", "n": n}),
        equichar_core::GroupKind::Explicit => unreachable!("generator emits built-in kinds"),
    };
    let literal = |g: usize| -> serde_json::Value {
        match s.cover.group().kind() {
            equichar_core::GroupKind::Cyclic(_) => serde_json::json!(g),
            equichar_core::GroupKind::Dihedral(n) => {
                let n = n as usize;
                if g < n {
                    serde_json::json!({ "r": g })
                } else {
                    serde_json::json!({ "sr": g - n })
                }
            }
            equichar_core::GroupKind::Explicit => serde_json::json!(g),
        }
    };
    let orbits: Vec<serde_json::Value> = s
        .cover
        .orbits()
        .iter()
        .map(|o| {
            serde_json::json!({
                "id": o.id(),
                "generator": literal(o.stabilizer().generator()),
                "order": o.order(),
                "rotation_exponent": o.rotation_exponent(),
            })
        })
        .collect();
    serde_json::json!({
        "group": group,
        "quotient_genus": s.cover.quotient_genus(),
        "branch_orbits": orbits,
        "bundle": {
            "degree": s.bundle.degree(),
            "fiber_exponents": s.bundle.fiber_exponents(),
        },
    })
}
