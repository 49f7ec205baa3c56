//! Finite groups as explicit multiplication tables, with conjugacy
//! structure, cyclic subgroups and left-coset enumeration.
//!
//! Elements are dense indices 0..N-1 with 0 the identity, so class
//! functions and character tables are flat arrays and scenario files can
//! reference elements stably. The dihedral encoding is fixed: r^k maps to
//! k and s*r^k maps to n+k.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("cyclic group order must be at least 1")]
    CyclicOrderZero,
    #[error("dihedral parameter must be at least 2, got {0}")]
    DihedralTooSmall(u32),
    #[error("multiplication table is empty or not square (row {row} has length {len}, expected {expected})")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("table entry {value} at ({a}, {b}) is out of range 0..{order}")]
    EntryOutOfRange {
        a: usize,
        b: usize,
        value: usize,
        order: usize,
    },
    #[error("element 0 is not a two-sided identity (fails at element {element})")]
    NoIdentity { element: usize },
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("associativity fails at triple ({a}, {b}, {c})")]
    NonAssociative { a: usize, b: usize, c: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    Cyclic(u32),
    Dihedral(u32),
    Explicit,
}

/// Conjugacy classes of a finite group. Classes are ordered by their
/// least member, which is also the class representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClasses {
    class_of: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl ConjugacyClasses {
    pub fn count(&self) -> usize {
        self.members.len()
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn members(&self, class: usize) -> &[usize] {
        &self.members[class]
    }

    pub fn size(&self, class: usize) -> usize {
        self.members[class].len()
    }

    pub fn representative(&self, class: usize) -> usize {
        self.members[class][0]
    }

    pub fn representatives(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().map(|m| m[0])
    }
}

/// A cyclic subgroup given by a generator c, stored as the ordered member
/// list c^0, c^1, ..., c^(k-1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicSubgroup {
    generator: usize,
    members: Vec<usize>,
    exponent_of: HashMap<usize, usize>,
}

impl CyclicSubgroup {
    pub fn generator(&self) -> usize {
        self.generator
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    /// c^j.
    pub fn member(&self, j: usize) -> usize {
        self.members[j % self.members.len()]
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// The discrete log of g with respect to the generator, if g lies in
    /// the subgroup.
    pub fn exponent_of(&self, g: usize) -> Option<usize> {
        self.exponent_of.get(&g).copied()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.exponent_of.contains_key(&g)
    }
}

#[derive(Debug)]
pub struct FiniteGroup {
    kind: GroupKind,
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    classes: ConjugacyClasses,
}

pub type GroupRef = Arc<FiniteGroup>;

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Cyclic group of order n; element j is g^j.
    pub fn cyclic(n: u32) -> Result<GroupRef, GroupError> {
        if n == 0 {
            return Err(GroupError::CyclicOrderZero);
        }
        let n = n as usize;
        let mut mul = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = (a + b) % n;
            }
        }
        Ok(Arc::new(Self::from_validated(
            GroupKind::Cyclic(n as u32),
            n,
            mul,
        )))
    }

    /// Dihedral group of order 2n with r^k -> k and s*r^k -> n+k.
    pub fn dihedral(n: u32) -> Result<GroupRef, GroupError> {
        if n < 2 {
            return Err(GroupError::DihedralTooSmall(n));
        }
        let n = n as usize;
        let order = 2 * n;
        let mut mul = vec![0usize; order * order];
        for a in 0..order {
            for b in 0..order {
                let (fa, ka) = (a / n, a % n);
                let (fb, kb) = (b / n, b % n);
                let idx = match (fa, fb) {
                    (0, 0) => (ka + kb) % n,
                    (0, 1) => n + (ka + kb) % n,
                    (1, 0) => n + (ka + n - kb) % n,
                    _ => (ka + n - kb) % n,
                };
                mul[a * order + b] = idx;
            }
        }
        Ok(Arc::new(Self::from_validated(
            GroupKind::Dihedral(n as u32),
            order,
            mul,
        )))
    }

    /// Group from an explicit multiplication table over indices 0..N-1
    /// with 0 the identity. The table is validated exhaustively;
    /// non-associative or non-invertible tables are rejected with the
    /// offending triple or element.
    pub fn explicit(table: Vec<Vec<usize>>) -> Result<GroupRef, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::NotSquare {
                row: 0,
                len: 0,
                expected: 0,
            });
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::NotSquare {
                    row: i,
                    len: row.len(),
                    expected: order,
                });
            }
        }
        let mut mul = vec![0usize; order * order];
        for a in 0..order {
            for b in 0..order {
                let v = table[a][b];
                if v >= order {
                    return Err(GroupError::EntryOutOfRange {
                        a,
                        b,
                        value: v,
                        order,
                    });
                }
                mul[a * order + b] = v;
            }
        }
        for g in 0..order {
            if mul[g] != g || mul[g * order] != g {
                return Err(GroupError::NoIdentity { element: g });
            }
        }
        for g in 0..order {
            let has = (0..order).any(|h| mul[g * order + h] == 0 && mul[h * order + g] == 0);
            if !has {
                return Err(GroupError::NoInverse { element: g });
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = mul[a * order + b];
                for c in 0..order {
                    let bc = mul[b * order + c];
                    if mul[ab * order + c] != mul[a * order + bc] {
                        return Err(GroupError::NonAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(Arc::new(Self::from_validated(
            GroupKind::Explicit,
            order,
            mul,
        )))
    }

    fn from_validated(kind: GroupKind, order: usize, mul: Vec<usize>) -> FiniteGroup {
        let inv = (0..order)
            .map(|g| {
                (0..order)
                    .find(|&h| mul[g * order + h] == 0)
                    .expect("validated table has inverses")
            })
            .collect();
        let mut group = FiniteGroup {
            kind,
            order,
            mul,
            inv,
            classes: ConjugacyClasses {
                class_of: Vec::new(),
                members: Vec::new(),
            },
        };
        group.classes = group.compute_classes();
        group
    }

    fn compute_classes(&self) -> ConjugacyClasses {
        let n = self.order;
        let mut class_of = vec![usize::MAX; n];
        let mut members = Vec::new();
        for g in 0..n {
            if class_of[g] != usize::MAX {
                continue;
            }
            let idx = members.len();
            let mut orbit: Vec<usize> = (0..n)
                .map(|x| self.mul(self.mul(x, g), self.inv(x)))
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &h in &orbit {
                class_of[h] = idx;
            }
            members.push(orbit);
        }
        ConjugacyClasses { class_of, members }
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(x), g), x)
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        &self.classes
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn power(&self, g: usize, e: i64) -> usize {
        let ord = self.element_order(g) as i64;
        let e = e.rem_euclid(ord) as usize;
        let mut x = 0;
        for _ in 0..e {
            x = self.mul(x, g);
        }
        x
    }

    /// The cyclic subgroup generated by c, as the ordered powers of c.
    pub fn cyclic_subgroup(&self, c: usize) -> CyclicSubgroup {
        assert!(c < self.order, "element out of range");
        let mut members = vec![0usize];
        let mut x = c;
        while x != 0 {
            members.push(x);
            x = self.mul(x, c);
        }
        let exponent_of = members.iter().enumerate().map(|(j, &g)| (g, j)).collect();
        CyclicSubgroup {
            generator: c,
            members,
            exponent_of,
        }
    }

    /// Left coset representatives of the subgroup, deterministic: the
    /// least element not yet covered starts the next coset.
    pub fn left_cosets(&self, sub: &CyclicSubgroup) -> Vec<usize> {
        let mut covered = vec![false; self.order];
        let mut reps = Vec::with_capacity(self.order / sub.order());
        for x in 0..self.order {
            if covered[x] {
                continue;
            }
            reps.push(x);
            for &h in sub.members() {
                covered[self.mul(x, h)] = true;
            }
        }
        reps
    }

    /// Human-readable element label matching the scenario encoding.
    pub fn element_label(&self, g: usize) -> String {
        match self.kind {
            GroupKind::Cyclic(_) => match g {
                0 => "1".into(),
                1 => "g".into(),
                k => format!("g^{k}"),
            },
            GroupKind::Dihedral(n) => {
                let n = n as usize;
                if g < n {
                    match g {
                        0 => "1".into(),
                        1 => "r".into(),
                        k => format!("r^{k}"),
                    }
                } else {
                    match g - n {
                        0 => "s".into(),
                        1 => "sr".into(),
                        k => format!("sr^{k}"),
                    }
                }
            }
            GroupKind::Explicit => format!("#{g}"),
        }
    }
}
