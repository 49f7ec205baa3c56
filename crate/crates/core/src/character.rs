//! Class functions with cyclotomic values, irreducible character tables
//! for cyclic and dihedral groups, inner products, restriction, induction
//! and decomposition into irreducibles.
//!
//! Dihedral two-dimensional characters are stored as zeta^(hk) +
//! zeta^(-hk), never as floating cosines, so orthonormality holds as an
//! exact equality.

use num::{BigInt, One, ToPrimitive};
use thiserror::Error;

use crate::exact::{root_of_unity, Cyclotomic, Rational};
use crate::group::{CyclicSubgroup, FiniteGroup, GroupKind, GroupRef};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("class functions live on different groups")]
    GroupMismatch,
    #[error("character table rejected: {relation}")]
    TableInvalid { relation: String },
    #[error("no built-in character table for explicit groups; supply one with the group data")]
    NeedExplicitTable,
    #[error("class function on the subgroup has the wrong order ({got}, expected {expected})")]
    SubgroupOrderMismatch { got: usize, expected: usize },
    #[error("induced/inner-product value is not a nonnegative integer: {value}")]
    NonIntegralInnerProduct { value: String },
}

/// A class function: one exact cyclotomic value per conjugacy class.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassFunction {
    group: GroupRef,
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn new(group: GroupRef, values: Vec<Cyclotomic>) -> Self {
        assert_eq!(values.len(), group.classes().count());
        ClassFunction { group, values }
    }

    /// Build from an arbitrary function on elements. Debug builds check
    /// constancy on classes.
    pub fn from_element_fn(group: GroupRef, f: impl Fn(usize) -> Cyclotomic) -> Self {
        let values: Vec<Cyclotomic> = group.classes().representatives().map(&f).collect();
        #[cfg(debug_assertions)]
        for g in 0..group.order() {
            debug_assert_eq!(f(g), values[group.classes().class_of(g)]);
        }
        ClassFunction { group, values }
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn class_values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value_at(&self, g: usize) -> &Cyclotomic {
        &self.values[self.group.classes().class_of(g)]
    }

    pub fn scaled(&self, r: &Rational) -> ClassFunction {
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v.scale(r)).collect(),
        }
    }

    pub fn plus(&self, other: &ClassFunction) -> Result<ClassFunction, CharacterError> {
        if self.group != other.group {
            return Err(CharacterError::GroupMismatch);
        }
        Ok(ClassFunction {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .zip(other.values.iter())
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Restriction to a cyclic subgroup, returned as a class function on
    /// the abstract cyclic group of the same order (element j = c^j).
    pub fn restrict(&self, sub: &CyclicSubgroup) -> ClassFunction {
        let h = FiniteGroup::cyclic(sub.order() as u32).expect("subgroup order >= 1");
        let values = (0..sub.order())
            .map(|j| self.value_at(sub.member(j)).clone())
            .collect();
        ClassFunction { group: h, values }
    }
}

/// Exact inner product (1/N) sum_g chi(g) * conj(eta(g)), evaluated
/// classwise.
pub fn inner_product(
    chi: &ClassFunction,
    eta: &ClassFunction,
) -> Result<Cyclotomic, CharacterError> {
    if chi.group != eta.group {
        return Err(CharacterError::GroupMismatch);
    }
    let classes = chi.group.classes();
    let mut sum = Cyclotomic::zero();
    for k in 0..classes.count() {
        let term = &chi.values[k] * &eta.values[k].conj();
        let size = Rational::from_integer(BigInt::from(classes.size(k)));
        sum = &sum + &term.scale(&size);
    }
    let n = Rational::new(BigInt::one(), BigInt::from(chi.group.order()));
    Ok(sum.scale(&n))
}

/// Induction of a class function on a cyclic subgroup up to G, by direct
/// enumeration: Ind chi(g) = (1/|H|) sum over x in G with x^-1 g x in H of
/// chi(x^-1 g x).
pub fn induce(
    chi: &ClassFunction,
    sub: &CyclicSubgroup,
    group: &GroupRef,
) -> Result<ClassFunction, CharacterError> {
    if chi.group.order() != sub.order() {
        return Err(CharacterError::SubgroupOrderMismatch {
            got: chi.group.order(),
            expected: sub.order(),
        });
    }
    let classes = group.classes();
    let scale = Rational::new(BigInt::one(), BigInt::from(sub.order()));
    let values = classes
        .representatives()
        .map(|g| {
            let mut acc = Cyclotomic::zero();
            for x in 0..group.order() {
                let y = group.conjugate(x, g);
                if let Some(j) = sub.exponent_of(y) {
                    acc = &acc + chi.value_at(j);
                }
            }
            acc.scale(&scale)
        })
        .collect();
    Ok(ClassFunction {
        group: group.clone(),
        values,
    })
}

/// The regular character: N at the identity, 0 elsewhere.
pub fn regular_character(group: &GroupRef) -> ClassFunction {
    let classes = group.classes();
    debug_assert_eq!(classes.representative(0), 0);
    let mut values = vec![Cyclotomic::zero(); classes.count()];
    values[0] = Cyclotomic::from_integer(group.order() as i64);
    ClassFunction {
        group: group.clone(),
        values,
    }
}

/// An ordered table of irreducible characters.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    group: GroupRef,
    names: Vec<String>,
    degrees: Vec<u32>,
    irreducibles: Vec<ClassFunction>,
}

impl CharacterTable {
    /// Built-in table for cyclic and dihedral groups; explicit groups
    /// must supply their table (`from_explicit`).
    ///
    /// Canonical order: cyclic xi^0..xi^(N-1); dihedral psi1, psi2
    /// (psi3, psi4 when n is even), then chi_1..chi_(ceil(n/2)-1).
    pub fn for_group(group: &GroupRef) -> Result<CharacterTable, CharacterError> {
        match group.kind() {
            GroupKind::Cyclic(n) => Ok(Self::cyclic_table(group, n)),
            GroupKind::Dihedral(n) => Ok(Self::dihedral_table(group, n)),
            GroupKind::Explicit => Err(CharacterError::NeedExplicitTable),
        }
    }

    fn cyclic_table(group: &GroupRef, n: u32) -> CharacterTable {
        let mut irreducibles = Vec::with_capacity(n as usize);
        let mut names = Vec::with_capacity(n as usize);
        for k in 0..n {
            let cf = ClassFunction::from_element_fn(group.clone(), |j| {
                root_of_unity(n, (k as i64) * (j as i64))
            });
            irreducibles.push(cf);
            names.push(format!("xi{k}"));
        }
        CharacterTable {
            group: group.clone(),
            names,
            degrees: vec![1; n as usize],
            irreducibles,
        }
    }

    fn dihedral_table(group: &GroupRef, n: u32) -> CharacterTable {
        let nu = n as usize;
        let mut irreducibles = Vec::new();
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        let sign_of = |g: usize| if g < nu { 1i64 } else { -1i64 };
        // psi1: trivial
        irreducibles.push(ClassFunction::from_element_fn(group.clone(), |_| {
            Cyclotomic::one()
        }));
        names.push("psi1".into());
        degrees.push(1);
        // psi2: rotations 1, reflections -1
        irreducibles.push(ClassFunction::from_element_fn(group.clone(), |g| {
            Cyclotomic::from_integer(sign_of(g))
        }));
        names.push("psi2".into());
        degrees.push(1);
        if n % 2 == 0 {
            // psi3(r^k) = psi3(s r^k) = (-1)^k
            irreducibles.push(ClassFunction::from_element_fn(group.clone(), |g| {
                Cyclotomic::from_integer(if (g % nu) % 2 == 0 { 1 } else { -1 })
            }));
            names.push("psi3".into());
            degrees.push(1);
            // psi4(r^k) = (-1)^k, psi4(s r^k) = (-1)^(k+1)
            irreducibles.push(ClassFunction::from_element_fn(group.clone(), |g| {
                let k = (g % nu) % 2;
                let flip = if g < nu { 0 } else { 1 };
                Cyclotomic::from_integer(if (k + flip) % 2 == 0 { 1 } else { -1 })
            }));
            names.push("psi4".into());
            degrees.push(1);
        }
        for h in 1..n.div_ceil(2) {
            irreducibles.push(ClassFunction::from_element_fn(group.clone(), |g| {
                if g < nu {
                    let k = g as i64;
                    let h = h as i64;
                    root_of_unity(n, h * k) + root_of_unity(n, -h * k)
                } else {
                    Cyclotomic::zero()
                }
            }));
            names.push(format!("chi{h}"));
            degrees.push(2);
        }
        CharacterTable {
            group: group.clone(),
            names,
            degrees,
            irreducibles,
        }
    }

    /// Table supplied with an explicit group. `class_sets` fixes the
    /// column order of `values`; it must coincide with the computed
    /// conjugacy partition. Orthonormality, the degree sum and the
    /// class count are all verified exactly.
    pub fn from_explicit(
        group: &GroupRef,
        class_sets: &[Vec<usize>],
        rows: Vec<(String, u32, Vec<Cyclotomic>)>,
    ) -> Result<CharacterTable, CharacterError> {
        let classes = group.classes();
        if class_sets.len() != classes.count() {
            return Err(CharacterError::TableInvalid {
                relation: format!(
                    "{} classes supplied, group has {}",
                    class_sets.len(),
                    classes.count()
                ),
            });
        }
        // map each supplied class to the computed class index
        let mut perm = Vec::with_capacity(class_sets.len());
        let mut seen = vec![false; classes.count()];
        for set in class_sets {
            let mut sorted = set.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.iter().any(|&g| g >= group.order()) {
                return Err(CharacterError::TableInvalid {
                    relation: format!("class {sorted:?} mentions an element out of range"),
                });
            }
            let idx = classes.class_of(sorted[0]);
            if classes.members(idx) != sorted.as_slice() || seen[idx] {
                return Err(CharacterError::TableInvalid {
                    relation: format!(
                        "supplied class {sorted:?} is not a conjugacy class of the group"
                    ),
                });
            }
            seen[idx] = true;
            perm.push(idx);
        }
        if rows.len() != classes.count() {
            return Err(CharacterError::TableInvalid {
                relation: format!(
                    "{} irreducibles supplied, expected {} (one per class)",
                    rows.len(),
                    classes.count()
                ),
            });
        }
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        let mut irreducibles = Vec::new();
        for (name, degree, vals) in rows {
            if vals.len() != classes.count() {
                return Err(CharacterError::TableInvalid {
                    relation: format!(
                        "irreducible {name:?} has {} values, expected {}",
                        vals.len(),
                        classes.count()
                    ),
                });
            }
            let mut ordered = vec![Cyclotomic::zero(); classes.count()];
            for (k, v) in vals.into_iter().enumerate() {
                ordered[perm[k]] = v;
            }
            let id_class = classes.class_of(0);
            if ordered[id_class] != Cyclotomic::from_integer(degree as i64) {
                return Err(CharacterError::TableInvalid {
                    relation: format!(
                        "irreducible {name:?}: value at the identity is {}, declared degree {degree}",
                        ordered[id_class]
                    ),
                });
            }
            names.push(name);
            degrees.push(degree);
            irreducibles.push(ClassFunction::new(group.clone(), ordered));
        }
        let table = CharacterTable {
            group: group.clone(),
            names,
            degrees,
            irreducibles,
        };
        table.verify()?;
        Ok(table)
    }

    /// Exact orthonormality and degree-sum checks.
    pub fn verify(&self) -> Result<(), CharacterError> {
        for i in 0..self.len() {
            for j in 0..self.len() {
                let ip = inner_product(&self.irreducibles[i], &self.irreducibles[j])?;
                let expected = Cyclotomic::from_integer(if i == j { 1 } else { 0 });
                if ip != expected {
                    return Err(CharacterError::TableInvalid {
                        relation: format!(
                            "<{}, {}> = {}, expected {}",
                            self.names[i], self.names[j], ip, expected
                        ),
                    });
                }
            }
        }
        let sum: u64 = self.degrees.iter().map(|&d| (d as u64) * (d as u64)).sum();
        if sum != self.group.order() as u64 {
            return Err(CharacterError::TableInvalid {
                relation: format!(
                    "sum of squared degrees is {sum}, group order is {}",
                    self.group.order()
                ),
            });
        }
        Ok(())
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn irreducible(&self, i: usize) -> &ClassFunction {
        &self.irreducibles[i]
    }

    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irreducibles
    }

    /// Fourier coefficients <eta, xi_i> over the table.
    pub fn decompose(&self, eta: &ClassFunction) -> Result<Vec<Cyclotomic>, CharacterError> {
        self.irreducibles
            .iter()
            .map(|xi| inner_product(eta, xi))
            .collect()
    }

    /// Decompose and demand integer coefficients; `Ok(None)` reports a
    /// class function that is not a virtual character.
    pub fn integral_decomposition(
        &self,
        eta: &ClassFunction,
    ) -> Result<Option<VirtualCharacter>, CharacterError> {
        let coeffs = self.decompose(eta)?;
        Ok(integral_coefficients(&coeffs).map(|c| VirtualCharacter { coeffs: c }))
    }
}

/// Extract exact integer coordinates from decomposition coefficients.
pub fn integral_coefficients(coeffs: &[Cyclotomic]) -> Option<Vec<i64>> {
    coeffs
        .iter()
        .map(|c| c.to_integer().and_then(|b| b.to_i64()))
        .collect()
}

/// An integer combination of the irreducibles of a fixed table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualCharacter {
    coeffs: Vec<i64>,
}

impl VirtualCharacter {
    pub fn new(coeffs: Vec<i64>) -> Self {
        VirtualCharacter { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Value at a group element: sum of coeff_i * xi_i(g).
    pub fn evaluate(&self, table: &CharacterTable, g: usize) -> Cyclotomic {
        let mut acc = Cyclotomic::zero();
        for (c, xi) in self.coeffs.iter().zip(table.irreducibles.iter()) {
            if *c != 0 {
                acc = &acc
                    + &xi
                        .value_at(g)
                        .scale(&Rational::from_integer(BigInt::from(*c)));
            }
        }
        acc
    }

    pub fn as_class_function(&self, table: &CharacterTable) -> ClassFunction {
        let group = table.group.clone();
        let values = group
            .classes()
            .representatives()
            .map(|g| self.evaluate(table, g))
            .collect();
        ClassFunction { group, values }
    }

    /// Render as a signed combination of named irreducibles.
    pub fn display_with(&self, table: &CharacterTable) -> String {
        let mut out = String::new();
        let mut first = true;
        for (c, name) in self.coeffs.iter().zip(table.names.iter()) {
            if *c == 0 {
                continue;
            }
            if first {
                if *c < 0 {
                    out.push('-');
                }
                first = false;
            } else {
                out.push_str(if *c < 0 { " - " } else { " + " });
            }
            let mag = c.unsigned_abs();
            if mag != 1 {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(name);
        }
        if first {
            out.push('0');
        }
        out
    }
}
