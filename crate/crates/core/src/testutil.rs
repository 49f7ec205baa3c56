//! Shared cover fixtures for unit tests.

use crate::character::CharacterTable;
use crate::cover::CoverData;
use crate::group::FiniteGroup;

fn with_table(cover: CoverData) -> (CoverData, CharacterTable) {
    let table = CharacterTable::for_group(cover.group()).unwrap();
    (cover, table)
}

/// Genus-2 hyperelliptic action: C2, six branch orbits of order 2.
pub(crate) fn hyperelliptic() -> (CoverData, CharacterTable) {
    let c2 = FiniteGroup::cyclic(2).unwrap();
    let orbits = (1..=6)
        .map(|i| (format!("q{i}"), 1usize, 2usize, 1i64))
        .collect();
    with_table(CoverData::new(c2, 0, orbits).unwrap())
}

/// D3 on the sphere: the pole orbit with stabilizer R and two orbits of
/// axis points with reflection stabilizers.
pub(crate) fn d3_sphere() -> (CoverData, CharacterTable) {
    let d3 = FiniteGroup::dihedral(3).unwrap();
    with_table(
        CoverData::new(
            d3,
            0,
            vec![
                ("poles".into(), 1, 3, 1),
                ("edge".into(), 3, 2, 1),
                ("vertex".into(), 3, 2, 1),
            ],
        )
        .unwrap(),
    )
}

/// Genus-3 cyclic triple cover of the line branched at five points
/// (y^3 = quartic): four aligned orbits plus the orbit over infinity
/// with rotation exponent 2.
pub(crate) fn quartic_cyclic3() -> (CoverData, CharacterTable) {
    let c3 = FiniteGroup::cyclic(3).unwrap();
    let mut orbits: Vec<(String, usize, usize, i64)> = (1..=4)
        .map(|i| (format!("q{i}"), 1usize, 3usize, 1i64))
        .collect();
    orbits.push(("inf".into(), 1, 3, 2));
    with_table(CoverData::new(c3, 0, orbits).unwrap())
}

/// A free action: cyclic(5) over a genus-3 quotient, total genus 11.
pub(crate) fn free_cover() -> (CoverData, CharacterTable) {
    let c5 = FiniteGroup::cyclic(5).unwrap();
    with_table(CoverData::new(c5, 3, vec![]).unwrap())
}
