//! Exact computation of character-valued Euler characteristics of
//! equivariant line bundles on compact Riemann surfaces.
//!
//! Given a finite group action described by quotient-side branch data
//! (cyclic stabilizers with rotation exponents) and a bundle described by
//! its degree and local fiber characters, the engine evaluates the
//! Chevalley-Weil formula over exact cyclotomic arithmetic, computes the
//! isotypic direct-image degrees twice (directly and through residue
//! traces of the Gauss-Manin connection), and cross-validates the result
//! against holomorphic Lefschetz fixed-point sums and, for cyclic covers,
//! against brute-force bases of differentials on superelliptic curves.
//!
//! There is no floating point anywhere: all scalars are arbitrary
//! precision rationals or elements of Q(zeta_n), and every identity the
//! crate asserts is exact.

pub mod character;
pub mod cover;
pub mod cw;
pub mod exact;
pub mod group;
pub mod oracle;
pub mod scenario;

#[cfg(test)]
pub(crate) mod testutil;


pub use character::{
    induce, inner_product, integral_coefficients, regular_character, CharacterError,
    CharacterTable, ClassFunction, VirtualCharacter,
};
pub use cover::{BranchOrbit, BundleData, CoverData, CoverError};
pub use cw::{
    chevalley_weil, crosscheck_lefschetz, cyclic_closed_form, dihedral_closed_form,
    gm_isotypic_degree, gm_residue_trace_total, lefschetz_value, local_coefficient,
    local_coefficients, m_total, natural_alignment, rho, CrosscheckReport, CwError, CwResult, Mode,
    ResidueAssignment, ResidueLedger,
};
pub use exact::{
    cyclotomic_polynomial, geometric_weight_sum, parse_rational, root_of_unity, Cyclotomic,
    ExactError, Rational,
};
pub use group::{ConjugacyClasses, CyclicSubgroup, FiniteGroup, GroupError, GroupKind, GroupRef};
pub use oracle::{
    build_cover, compare_with_cw, holomorphic_sections, BranchPoint, OracleError, OracleReport,
    SuperellipticCurve,
};
pub use scenario::{
    parse_element_literal, parse_scenario_str, parse_scenario_value, Scenario, ScenarioError,
};
