//! Fixture builders shared by the benchmarks.

use equichar_core::{
    BranchPoint, BundleData, CharacterTable, CoverData, FiniteGroup, SuperellipticCurve,
};

/// Genus-2 hyperelliptic action with L = K.
pub fn hyperelliptic_k() -> (CoverData, CharacterTable, BundleData) {
    let c2 = FiniteGroup::cyclic(2).unwrap();
    let orbits = (1..=6)
        .map(|i| (format!("q{i}"), 1usize, 2usize, 1i64))
        .collect();
    let cover = CoverData::new(c2, 0, orbits).unwrap();
    let table = CharacterTable::for_group(cover.group()).unwrap();
    let bundle = BundleData::canonical(&cover, 1);
    (cover, table, bundle)
}

/// A genus-4 dihedral(6) action (monodromies r, r^2, s, sr^3) with L = K.
pub fn dihedral6_canonical() -> (CoverData, CharacterTable, BundleData) {
    let d6 = FiniteGroup::dihedral(6).unwrap();
    let cover = CoverData::new(
        d6,
        0,
        vec![
            ("a".into(), 1, 6, 1), // <r>
            ("b".into(), 2, 3, 1), // <r^2>
            ("c".into(), 6, 2, 1), // <s>
            ("d".into(), 9, 2, 1), // <s r^3>
        ],
    )
    .unwrap();
    let table = CharacterTable::for_group(cover.group()).unwrap();
    let bundle = BundleData::canonical(&cover, 1);
    (cover, table, bundle)
}

/// The y^3 = quartic cyclic cover.
pub fn quartic_curve() -> SuperellipticCurve {
    SuperellipticCurve::new(3, (1..=4).map(|x| BranchPoint { x, d: 1 }).collect()).unwrap()
}
