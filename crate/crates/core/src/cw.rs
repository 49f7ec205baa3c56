//! The Chevalley-Weil engine: local coefficients, the rho class
//! functions and residue ledger for the Gauss-Manin route, isotypic
//! direct-image degrees, closed forms for cyclic and dihedral groups,
//! and the holomorphic Lefschetz fixed-point evaluator.
//!
//! Everything here is an exact identity of rationals or cyclotomics;
//! there are no tolerances. Two independent routes to the isotypic
//! degrees are kept deliberately separate: `chevalley_weil` evaluates
//! restriction inner products over the stabilizers, while the
//! `ResidueLedger` goes through honest induction up to G and pairs
//! against the irreducibles there. Their agreement is a theorem, and the
//! check suite treats it as one.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num::{BigInt, ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

use crate::character::{
    induce, inner_product, CharacterError, CharacterTable, ClassFunction, VirtualCharacter,
};
use crate::cover::{mod_inverse, BranchOrbit, BundleData, CoverData, CoverError};
use crate::exact::{root_of_unity, Cyclotomic, Rational};
use crate::group::{FiniteGroup, GroupKind};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CwError {
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error("character table and cover data live on different groups")]
    GroupMismatch,
    #[error(
        "inconsistent equivariant data: multiplicity of {irreducible} is {value}, not an integer"
    )]
    NonIntegralMultiplicity {
        irreducible: String,
        value: Rational,
    },
    #[error("isotypic degree of {irreducible} is {value}, not an integer")]
    NonIntegralDegree {
        irreducible: String,
        value: Rational,
    },
    #[error("residue constraint violated: sum of r_q * (N/N_q) is {got}, need {expected}")]
    ResidueConstraint { expected: Rational, got: Rational },
    #[error(
        "residue assignment names orbit {orbit:?} which the cover does not have (or misses one)"
    )]
    ResidueOrbitMismatch { orbit: String },
    #[error("the fixed-point sum is only defined for non-identity elements; use the Euler characteristic route for g = 1")]
    IdentityElement,
    #[error("closed form requires a cyclic group")]
    NotCyclic,
    #[error("closed form requires a dihedral group")]
    NotDihedral,
    #[error("orbit {orbit:?}: stabilizer is not inside the rotation subgroup; no closed form, use the generic path")]
    StabilizerNotInRotations { orbit: String },
    #[error("alignment {alignment} is not a unit mod {order}")]
    AlignmentNotUnit { alignment: u32, order: usize },
    #[error("no closed form for irreducible {name:?}")]
    UnknownIrreducible { name: String },
    #[error("degree identity violated: sum of deg(1) * deg V is {lhs}, expected {rhs}")]
    DegreeIdentity { lhs: Rational, rhs: Rational },
}

/// Normalization of the local coefficients.
///
/// `Proof` (the default) is the Frobenius-reciprocity value
/// (1/N_p) sum_i i <xi|_{G_p}, nu tau^i>; it satisfies the Riemann-Roch,
/// degree and Lefschetz identities on every group. `Literal` multiplies
/// by the degree xi(1); the two coincide on abelian groups, and on
/// nonabelian groups `Literal` is kept purely as a diagnostic that the
/// check suite is expected to flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Proof,
    Literal,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Proof => "proof",
            Mode::Literal => "literal",
        })
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "proof" => Ok(Mode::Proof),
            "literal" => Ok(Mode::Literal),
            other => Err(format!(
                "unknown mode {other:?} (expected proof or literal)"
            )),
        }
    }
}

fn rat_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn rat_frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Restriction multiplicities of the irreducibles on one stabilizer:
/// mult[xi][t] = <xi|_{G_p}, std^t> where std is the character c^j ->
/// zeta^j of the cyclic stabilizer. These are the only inner products the
/// direct route needs, and they are cached per orbit generator.
struct LocalCharacterData {
    mult: Vec<Vec<u64>>,
}

impl LocalCharacterData {
    fn build(table: &CharacterTable, orbit: &BranchOrbit) -> Result<Self, CwError> {
        let sub = orbit.stabilizer();
        let n = sub.order() as u32;
        let cyclic = FiniteGroup::cyclic(n).expect("stabilizer order >= 1");
        let cyclic_table = CharacterTable::for_group(&cyclic)?;
        let mut mult = Vec::with_capacity(table.len());
        for xi in table.irreducibles() {
            let res = xi.restrict(sub);
            let mut row = Vec::with_capacity(n as usize);
            for t in 0..n as usize {
                let ip = inner_product(&res, cyclic_table.irreducible(t))?;
                let v = ip.to_integer().and_then(|b| b.to_u64()).ok_or_else(|| {
                    CharacterError::NonIntegralInnerProduct {
                        value: ip.to_string(),
                    }
                })?;
                row.push(v);
            }
            mult.push(row);
        }
        Ok(LocalCharacterData { mult })
    }

    /// (1/N_p) sum_i i * <xi|_{G_p}, nu tau^i> with nu = tau^m and
    /// tau = std^a.
    fn proof_coefficient(&self, xi: usize, rotation: u32, m: u32) -> Rational {
        let n = self.mult[xi].len();
        let a = rotation as usize;
        let mut num: u64 = 0;
        for i in 0..n {
            let t = (a * ((m as usize) + i)) % n;
            num += (i as u64) * self.mult[xi][t];
        }
        Rational::new(BigInt::from(num), BigInt::from(n))
    }
}

/// Per-orbit local coefficient of one irreducible.
///
/// `Mode::Proof` returns (1/N_p) sum_i i <xi|_{G_p}, nu tau^i>;
/// `Mode::Literal` additionally multiplies by xi(1).
pub fn local_coefficient(
    cover: &CoverData,
    orbit: &BranchOrbit,
    bundle: &BundleData,
    table: &CharacterTable,
    xi: usize,
    mode: Mode,
) -> Result<Rational, CwError> {
    if table.group() != cover.group() {
        return Err(CwError::GroupMismatch);
    }
    let local = LocalCharacterData::build(table, orbit)?;
    let m = bundle.fiber_exponent(orbit);
    let mut value = local.proof_coefficient(xi, orbit.rotation_exponent(), m);
    if mode == Mode::Literal {
        value *= rat_int(table.degree(xi) as i64);
    }
    Ok(value)
}

/// Per-orbit local coefficients of every irreducible at once; the
/// restriction data is built a single time.
pub fn local_coefficients(
    cover: &CoverData,
    orbit: &BranchOrbit,
    bundle: &BundleData,
    table: &CharacterTable,
    mode: Mode,
) -> Result<Vec<Rational>, CwError> {
    if table.group() != cover.group() {
        return Err(CwError::GroupMismatch);
    }
    let local = LocalCharacterData::build(table, orbit)?;
    let m = bundle.fiber_exponent(orbit);
    Ok((0..table.len())
        .map(|xi| {
            let mut value = local.proof_coefficient(xi, orbit.rotation_exponent(), m);
            if mode == Mode::Literal {
                value *= rat_int(table.degree(xi) as i64);
            }
            value
        })
        .collect())
}

/// Total coefficient m_xi(L): the sum of the per-orbit coefficients.
pub fn m_total(
    cover: &CoverData,
    bundle: &BundleData,
    table: &CharacterTable,
    xi: usize,
    mode: Mode,
) -> Result<Rational, CwError> {
    let mut total = Rational::zero();
    for orbit in cover.orbits() {
        total += local_coefficient(cover, orbit, bundle, table, xi, mode)?;
    }
    Ok(total)
}

/// The character-valued Euler characteristic and the isotypic degrees.
#[derive(Debug, Clone)]
pub struct CwResult {
    names: Vec<String>,
    chi: VirtualCharacter,
    m: Vec<Rational>,
    deg_v: Vec<i64>,
    genus: u64,
    degree: i64,
    mode: Mode,
}

impl CwResult {
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn chi(&self) -> &VirtualCharacter {
        &self.chi
    }

    pub fn multiplicities(&self) -> &[i64] {
        self.chi.coeffs()
    }

    pub fn m_coefficients(&self) -> &[Rational] {
        &self.m
    }

    pub fn isotypic_degrees(&self) -> &[i64] {
        &self.deg_v
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Canonical JSON form; keys are sorted so reports are bit-stable.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "chi": self.chi.coeffs(),
            "m": self.m.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "degV": self.deg_v,
            "genus": self.genus,
            "mode": self.mode.to_string(),
        })
    }

    /// Plain-text table: one row per irreducible.
    pub fn text_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "genus {}   deg L {}   mode {}\n",
            self.genus, self.degree, self.mode
        ));
        out.push_str(&format!(
            "chi_G(L) = {}\n",
            self.chi.display_with_names(&self.names)
        ));
        let w = self.names.iter().map(|n| n.len()).max().unwrap_or(4).max(4);
        out.push_str(&format!(
            "{:w$}  {:>12}  {:>10}  {:>8}\n",
            "irr",
            "multiplicity",
            "m",
            "degV",
            w = w
        ));
        for i in 0..self.names.len() {
            out.push_str(&format!(
                "{:w$}  {:>12}  {:>10}  {:>8}\n",
                self.names[i],
                self.chi.coeffs()[i],
                self.m[i].to_string(),
                self.deg_v[i],
                w = w
            ));
        }
        out
    }
}

impl VirtualCharacter {
    /// Render against explicit names (used by reports that do not carry
    /// the full table).
    pub fn display_with_names(&self, names: &[String]) -> String {
        let mut out = String::new();
        let mut first = true;
        for (c, name) in self.coeffs().iter().zip(names.iter()) {
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

/// Evaluate the Chevalley-Weil formula:
/// multiplicity(xi) = (deg L / N + 1 - h) xi(1) - m_xi(L) and
/// deg V_xi = (deg L / N) xi(1) - m_xi(L).
///
/// Every multiplicity and every isotypic degree must come out an exact
/// integer; a fractional value is reported as inconsistent equivariant
/// data naming the offending irreducible.
pub fn chevalley_weil(
    cover: &CoverData,
    bundle: &BundleData,
    table: &CharacterTable,
    mode: Mode,
) -> Result<CwResult, CwError> {
    if table.group() != cover.group() {
        return Err(CwError::GroupMismatch);
    }
    let n = cover.group().order() as i64;
    let d = bundle.degree();
    let h = cover.quotient_genus() as i64;
    let prefactor = rat_frac(d, n);
    // restriction data is shared between orbits with the same generator
    let mut cache: HashMap<usize, LocalCharacterData> = HashMap::new();
    let mut m = vec![Rational::zero(); table.len()];
    for orbit in cover.orbits() {
        let generator = orbit.stabilizer().generator();
        let local = match cache.entry(generator) {
            std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(LocalCharacterData::build(table, orbit)?)
            }
        };
        let fib = bundle.fiber_exponent(orbit);
        for xi in 0..table.len() {
            let mut c = local.proof_coefficient(xi, orbit.rotation_exponent(), fib);
            if mode == Mode::Literal {
                c *= rat_int(table.degree(xi) as i64);
            }
            m[xi] += c;
        }
    }
    let mut mult = Vec::with_capacity(table.len());
    let mut deg_v = Vec::with_capacity(table.len());
    for xi in 0..table.len() {
        let deg = rat_int(table.degree(xi) as i64);
        let mult_xi = (&prefactor + rat_int(1 - h)) * &deg - &m[xi];
        let deg_xi = &prefactor * &deg - &m[xi];
        if !mult_xi.is_integer() {
            return Err(CwError::NonIntegralMultiplicity {
                irreducible: table.name(xi).to_string(),
                value: mult_xi,
            });
        }
        if !deg_xi.is_integer() {
            return Err(CwError::NonIntegralDegree {
                irreducible: table.name(xi).to_string(),
                value: deg_xi,
            });
        }
        mult.push(mult_xi.to_integer().to_i64().expect("desk-scale degree"));
        deg_v.push(deg_xi.to_integer().to_i64().expect("desk-scale degree"));
    }
    Ok(CwResult {
        names: table.names().to_vec(),
        chi: VirtualCharacter::new(mult),
        m,
        deg_v,
        genus: cover.total_genus(),
        degree: d,
        mode,
    })
}

/// The weighted class function rho_q = sum_i ((r+i)/n) Ind(nu tau^i)
/// attached to one orbit and a residue r. It splits as
/// (r/n) chi_reg + rho'' where rho'' is the same sum weighted by i/n.
pub fn rho(
    cover: &CoverData,
    orbit: &BranchOrbit,
    bundle: &BundleData,
    r: &Rational,
) -> Result<ClassFunction, CwError> {
    let group = cover.group();
    let sub = orbit.stabilizer();
    let n = sub.order();
    let a = orbit.rotation_exponent() as usize;
    let m = bundle.fiber_exponent(orbit) as usize;
    let cyclic = FiniteGroup::cyclic(n as u32).expect("order >= 1");
    let cyclic_table = CharacterTable::for_group(&cyclic)?;
    let mut acc: Option<ClassFunction> = None;
    for i in 0..n {
        let t = (a * (m + i)) % n;
        let ind = induce(cyclic_table.irreducible(t), sub, group)?;
        let weight = (r + rat_int(i as i64)) / rat_int(n as i64);
        let term = ind.scaled(&weight);
        acc = Some(match acc {
            None => term,
            Some(prev) => prev.plus(&term)?,
        });
    }
    Ok(acc.expect("stabilizer order >= 2"))
}

/// A residue for every branch orbit, constrained by
/// sum_q r_q * (N/N_q) = -deg L.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidueAssignment {
    values: BTreeMap<String, Rational>,
}

impl ResidueAssignment {
    pub fn new(values: BTreeMap<String, Rational>) -> Self {
        ResidueAssignment { values }
    }

    pub fn get(&self, orbit: &str) -> Option<&Rational> {
        self.values.get(orbit)
    }

    pub fn values(&self) -> &BTreeMap<String, Rational> {
        &self.values
    }

    /// The uniform default r_q = -d N_q / (N k) over k orbits, which
    /// meets the constraint term by term.
    pub fn uniform(cover: &CoverData, bundle: &BundleData) -> ResidueAssignment {
        let k = cover.orbits().len() as i64;
        let n = cover.group().order() as i64;
        let values = cover
            .orbits()
            .iter()
            .map(|o| {
                let r = rat_frac(-bundle.degree() * o.order() as i64, n * k);
                (o.id().to_string(), r)
            })
            .collect();
        ResidueAssignment { values }
    }

    /// Random small rationals on all orbits but the last, which is solved
    /// to satisfy the constraint exactly.
    pub fn random<R: Rng>(
        cover: &CoverData,
        bundle: &BundleData,
        rng: &mut R,
    ) -> ResidueAssignment {
        let orbits = cover.orbits();
        let n = cover.group().order() as i64;
        let mut values = BTreeMap::new();
        if orbits.is_empty() {
            return ResidueAssignment { values };
        }
        let mut acc = Rational::zero();
        for o in orbits.iter().take(orbits.len() - 1) {
            let num = rng.gen_range(-12..=12);
            let den = rng.gen_range(1..=6);
            let r = rat_frac(num, den);
            acc += &r * rat_frac(n / o.order() as i64, 1);
            values.insert(o.id().to_string(), r);
        }
        let last = orbits.last().expect("nonempty");
        let size = rat_frac(n / last.order() as i64, 1);
        let r_last = (rat_int(-bundle.degree()) - acc) / size;
        values.insert(last.id().to_string(), r_last);
        ResidueAssignment { values }
    }

    /// Check orbit ids and the exact sum constraint.
    pub fn verify(&self, cover: &CoverData, bundle: &BundleData) -> Result<(), CwError> {
        for id in self.values.keys() {
            if cover.orbit(id).is_none() {
                return Err(CwError::ResidueOrbitMismatch { orbit: id.clone() });
            }
        }
        let n = cover.group().order() as i64;
        let mut sum = Rational::zero();
        for o in cover.orbits() {
            let r = self
                .values
                .get(o.id())
                .ok_or_else(|| CwError::ResidueOrbitMismatch {
                    orbit: o.id().to_string(),
                })?;
            sum += r * rat_frac(n / o.order() as i64, 1);
        }
        let expected = rat_int(-bundle.degree());
        if sum != expected {
            return Err(CwError::ResidueConstraint { expected, got: sum });
        }
        Ok(())
    }
}

/// Precomputed pairing integers <Ind(nu tau^i), xi>_G per orbit. Building
/// the ledger performs the inductions once; evaluating a residue
/// assignment afterwards is pure rational bookkeeping, so invariance can
/// be fuzzed cheaply.
pub struct ResidueLedger {
    orbit_ids: Vec<String>,
    orbit_orders: Vec<usize>,
    names: Vec<String>,
    degrees: Vec<u32>,
    // pairings[q][i][xi]
    pairings: Vec<Vec<Vec<u64>>>,
}

impl ResidueLedger {
    pub fn new(
        cover: &CoverData,
        bundle: &BundleData,
        table: &CharacterTable,
    ) -> Result<ResidueLedger, CwError> {
        if table.group() != cover.group() {
            return Err(CwError::GroupMismatch);
        }
        let mut orbit_ids = Vec::new();
        let mut orbit_orders = Vec::new();
        let mut pairings = Vec::new();
        for orbit in cover.orbits() {
            let sub = orbit.stabilizer();
            let n = sub.order();
            let a = orbit.rotation_exponent() as usize;
            let m = bundle.fiber_exponent(orbit) as usize;
            let cyclic = FiniteGroup::cyclic(n as u32).expect("order >= 1");
            let cyclic_table = CharacterTable::for_group(&cyclic)?;
            let mut rows = Vec::with_capacity(n);
            for i in 0..n {
                let t = (a * (m + i)) % n;
                let ind = induce(cyclic_table.irreducible(t), sub, cover.group())?;
                let mut row = Vec::with_capacity(table.len());
                for xi in table.irreducibles() {
                    let ip = inner_product(&ind, xi)?;
                    let v = ip.to_integer().and_then(|b| b.to_u64()).ok_or_else(|| {
                        CharacterError::NonIntegralInnerProduct {
                            value: ip.to_string(),
                        }
                    })?;
                    row.push(v);
                }
                rows.push(row);
            }
            orbit_ids.push(orbit.id().to_string());
            orbit_orders.push(n);
            pairings.push(rows);
        }
        Ok(ResidueLedger {
            orbit_ids,
            orbit_orders,
            names: table.names().to_vec(),
            degrees: (0..table.len()).map(|i| table.degree(i)).collect(),
            pairings,
        })
    }

    /// deg V_xi = -sum_q <rho_q, xi> for a residue assignment already
    /// verified against the cover and bundle.
    pub fn isotypic_degrees(&self, residues: &ResidueAssignment) -> Result<Vec<i64>, CwError> {
        let mut out = Vec::with_capacity(self.names.len());
        for xi in 0..self.names.len() {
            let mut s = Rational::zero();
            for q in 0..self.orbit_ids.len() {
                let n = self.orbit_orders[q] as i64;
                let r = residues.get(&self.orbit_ids[q]).ok_or_else(|| {
                    CwError::ResidueOrbitMismatch {
                        orbit: self.orbit_ids[q].clone(),
                    }
                })?;
                for (i, row) in self.pairings[q].iter().enumerate() {
                    if row[xi] != 0 {
                        s += (r + rat_int(i as i64)) / rat_int(n) * rat_int(row[xi] as i64);
                    }
                }
            }
            let deg = -s;
            if !deg.is_integer() {
                return Err(CwError::NonIntegralDegree {
                    irreducible: self.names[xi].clone(),
                    value: deg,
                });
            }
            out.push(deg.to_integer().to_i64().expect("desk-scale degree"));
        }
        Ok(out)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }
}

/// Isotypic direct-image degrees via residue traces of the Gauss-Manin
/// connection. Validates the residue constraint, then evaluates
/// deg V_xi = -sum_q <rho_q, xi>. The result must match `chevalley_weil`
/// and be independent of the particular assignment.
pub fn gm_isotypic_degree(
    cover: &CoverData,
    bundle: &BundleData,
    table: &CharacterTable,
    residues: &ResidueAssignment,
) -> Result<Vec<i64>, CwError> {
    residues.verify(cover, bundle)?;
    ResidueLedger::new(cover, bundle, table)?.isotypic_degrees(residues)
}

/// Total residue trace sum_q tr Res_q = sum_q (N/N_q)(r_q + (N_q-1)/2).
/// Asserts both forms of the degree identity: the total equals
/// -(deg L - deg R / 2), and sum_xi xi(1) deg V_xi = deg L - deg R / 2.
pub fn gm_residue_trace_total(
    cover: &CoverData,
    bundle: &BundleData,
    table: &CharacterTable,
    residues: &ResidueAssignment,
) -> Result<Rational, CwError> {
    residues.verify(cover, bundle)?;
    let n = cover.group().order() as i64;
    let mut total = Rational::zero();
    for o in cover.orbits() {
        let size = rat_int(n / o.order() as i64);
        let r = residues.get(o.id()).expect("verified");
        total += size * (r + rat_frac(o.order() as i64 - 1, 2));
    }
    let target = rat_int(bundle.degree()) - rat_frac(cover.ramification_degree() as i64, 2);
    if total != -&target {
        return Err(CwError::DegreeIdentity {
            lhs: total,
            rhs: -target,
        });
    }
    let degrees = gm_isotypic_degree(cover, bundle, table, residues)?;
    let mut weighted = Rational::zero();
    for (xi, d) in degrees.iter().enumerate() {
        weighted += rat_int(table.degree(xi) as i64 * d);
    }
    if weighted != target {
        return Err(CwError::DegreeIdentity {
            lhs: weighted,
            rhs: target,
        });
    }
    Ok(total)
}

fn residue_mod(x: i64, n: i64) -> i64 {
    x.rem_euclid(n)
}

/// For a cyclic group, the unit u with xi^1|_{G_p} = tau_p^u: the
/// alignment between the restriction of the dual generator and the
/// rotation character.
pub fn natural_alignment(cover: &CoverData, orbit: &BranchOrbit) -> Result<u32, CwError> {
    let GroupKind::Cyclic(_) = cover.group().kind() else {
        return Err(CwError::NotCyclic);
    };
    let n = cover.group().order() as i64;
    let n_p = orbit.order() as i64;
    let t = orbit.stabilizer().generator() as i64;
    let w = t / (n / n_p); // generator = g^t with (N/N_p) | t
    let a_inv = mod_inverse(orbit.rotation_exponent() as i64, n_p).expect("rotation is a unit");
    Ok((residue_mod(a_inv * w, n_p)) as u32)
}

/// Closed form of the per-orbit coefficient for cyclic groups:
/// m_{xi^k} over the orbit equals (alignment * k - m mod N_p) / N_p.
/// Degrees are 1, so the proof and literal normalizations coincide.
pub fn cyclic_closed_form(
    orbit: &BranchOrbit,
    bundle: &BundleData,
    k: i64,
    alignment: u32,
) -> Result<Rational, CwError> {
    let n = orbit.order() as i64;
    if num::integer::gcd(alignment as i64, n) != 1 {
        return Err(CwError::AlignmentNotUnit {
            alignment,
            order: orbit.order(),
        });
    }
    let m = bundle.fiber_exponent(orbit) as i64;
    Ok(rat_frac(residue_mod(alignment as i64 * k - m, n), n))
}

/// Closed form of the per-orbit coefficient for dihedral groups with the
/// stabilizer inside the rotation subgroup. Reflection stabilizers have
/// no closed form and are served by the generic path only.
pub fn dihedral_closed_form(
    cover: &CoverData,
    orbit: &BranchOrbit,
    bundle: &BundleData,
    table: &CharacterTable,
    xi: usize,
) -> Result<Rational, CwError> {
    let GroupKind::Dihedral(n) = cover.group().kind() else {
        return Err(CwError::NotDihedral);
    };
    let n = n as i64;
    if orbit
        .stabilizer()
        .members()
        .iter()
        .any(|&g| g >= n as usize)
    {
        return Err(CwError::StabilizerNotInRotations {
            orbit: orbit.id().to_string(),
        });
    }
    let n_p = orbit.order() as i64;
    let t = orbit.stabilizer().generator() as i64;
    let w = t / (n / n_p);
    let a_inv = mod_inverse(orbit.rotation_exponent() as i64, n_p).expect("rotation is a unit");
    let u = residue_mod(a_inv * w, n_p);
    let m = bundle.fiber_exponent(orbit) as i64;
    let name = table.name(xi);
    let value = if let Some(h) = name.strip_prefix("chi") {
        let h: i64 = h
            .parse()
            .map_err(|_| CwError::UnknownIrreducible { name: name.into() })?;
        rat_frac(
            residue_mod(u * h - m, n_p) + residue_mod(-u * h - m, n_p),
            n_p,
        )
    } else {
        match name {
            "psi1" | "psi2" => rat_frac(residue_mod(-m, n_p), n_p),
            "psi3" | "psi4" => rat_frac(residue_mod(u * (n / 2) - m, n_p), n_p),
            other => return Err(CwError::UnknownIrreducible { name: other.into() }),
        }
    };
    Ok(value)
}

/// The holomorphic fixed-point sum of a non-identity element:
/// sum over fixed points of nu_p(g) / (1 - tau_p(g)). A point of the
/// orbit of coset x is fixed by g exactly when x^-1 g x lands in the
/// stabilizer; writing x^-1 g x = c^k the contribution is
/// zeta^(a m k) / (1 - zeta^(a k)).
pub fn lefschetz_value(
    cover: &CoverData,
    bundle: &BundleData,
    g: usize,
) -> Result<Cyclotomic, CwError> {
    if g == cover.group().identity() {
        return Err(CwError::IdentityElement);
    }
    let group = cover.group();
    let mut total = Cyclotomic::zero();
    for orbit in cover.orbits() {
        let sub = orbit.stabilizer();
        let n = sub.order() as u32;
        let a = orbit.rotation_exponent() as i64;
        let m = bundle.fiber_exponent(orbit) as i64;
        // 1 - zeta^(a k) is nonzero for every k != 0 since a is a unit
        let mut inverse_denominators: Vec<Option<Cyclotomic>> = vec![None; n as usize];
        for x in group.left_cosets(sub) {
            let y = group.conjugate(x, g);
            let Some(k) = sub.exponent_of(y) else {
                continue;
            };
            assert!(k != 0, "identity conjugate of a non-identity element");
            let inv = inverse_denominators[k].get_or_insert_with(|| {
                let denom = Cyclotomic::one() - root_of_unity(n, a * k as i64);
                denom
                    .try_inv()
                    .expect("1 - tau(g) is nonzero for g != 1 in the stabilizer")
            });
            let numer = root_of_unity(n, a * m * k as i64);
            total = &total + &(&numer * inv);
        }
    }
    Ok(total)
}

/// One line of the Lefschetz crosscheck: the Chevalley-Weil character
/// value against the fixed-point sum (or, at the identity, against the
/// Riemann-Roch number deg L + 1 - g).
#[derive(Debug, Clone)]
pub struct CrosscheckEntry {
    pub element: usize,
    pub label: String,
    pub cw_value: Cyclotomic,
    pub reference: Cyclotomic,
    pub is_identity: bool,
    pub ok: bool,
}

#[derive(Debug, Clone)]
pub struct CrosscheckReport {
    pub entries: Vec<CrosscheckEntry>,
    pub mismatches: usize,
}

impl CrosscheckReport {
    pub fn all_ok(&self) -> bool {
        self.mismatches == 0
    }
}

/// Compare the Chevalley-Weil character with the fixed-point sums at
/// every non-identity element, exactly, and with deg L + 1 - g at the
/// identity. Mismatches are reported, not raised.
pub fn crosscheck_lefschetz(
    cover: &CoverData,
    bundle: &BundleData,
    table: &CharacterTable,
    mode: Mode,
) -> Result<CrosscheckReport, CwError> {
    let cw = chevalley_weil(cover, bundle, table, mode)?;
    let group = cover.group();
    let mut entries = Vec::with_capacity(group.order());
    let mut mismatches = 0;
    for g in 0..group.order() {
        let cw_value = cw.chi().evaluate(table, g);
        let (reference, is_identity) = if g == group.identity() {
            (
                Cyclotomic::from_integer(bundle.degree() + 1 - cover.total_genus() as i64),
                true,
            )
        } else {
            (lefschetz_value(cover, bundle, g)?, false)
        };
        let ok = cw_value == reference;
        if !ok {
            mismatches += 1;
        }
        entries.push(CrosscheckEntry {
            element: g,
            label: group.element_label(g),
            cw_value,
            reference,
            is_identity,
            ok,
        });
    }
    Ok(CrosscheckReport {
        entries,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::regular_character;
    use crate::testutil::{d3_sphere, free_cover, hyperelliptic, quartic_cyclic3};

    #[test]
    fn local_coefficients_hyperelliptic() {
        let (cover, table) = hyperelliptic();
        let k = BundleData::canonical(&cover, 1);
        let orbit = &cover.orbits()[0];
        let triv = local_coefficient(&cover, orbit, &k, &table, 0, Mode::Proof).unwrap();
        assert_eq!(triv, rat_frac(1, 2));
        let sign = local_coefficient(&cover, orbit, &k, &table, 1, Mode::Proof).unwrap();
        assert_eq!(sign, Rational::zero());
    }

    #[test]
    fn local_coefficients_d3_proof_vs_literal() {
        let (cover, table) = d3_sphere();
        let triv = BundleData::trivial(&cover);
        let poles = cover.orbit("poles").unwrap();
        // chi1 is index 2 in the D3 table
        let proof = local_coefficient(&cover, poles, &triv, &table, 2, Mode::Proof).unwrap();
        assert_eq!(proof, rat_int(1));
        let literal = local_coefficient(&cover, poles, &triv, &table, 2, Mode::Literal).unwrap();
        assert_eq!(literal, rat_int(2));
    }

    #[test]
    fn m_totals() {
        let (cover, table) = hyperelliptic();
        let k = BundleData::canonical(&cover, 1);
        assert_eq!(
            m_total(&cover, &k, &table, 0, Mode::Proof).unwrap(),
            rat_int(3)
        );
        assert_eq!(
            m_total(&cover, &k, &table, 1, Mode::Proof).unwrap(),
            rat_int(0)
        );

        let (cover, table) = d3_sphere();
        let triv = BundleData::trivial(&cover);
        let ms: Vec<Rational> = (0..3)
            .map(|xi| m_total(&cover, &triv, &table, xi, Mode::Proof).unwrap())
            .collect();
        assert_eq!(ms, vec![rat_int(0), rat_int(1), rat_int(2)]);

        let (cover, table) = free_cover();
        let bundle = BundleData::new(&cover, 10, &BTreeMap::new()).unwrap();
        for xi in 0..table.len() {
            assert!(m_total(&cover, &bundle, &table, xi, Mode::Proof)
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn chevalley_weil_pinned_cases() {
        // genus-2 hyperelliptic, L = K: chi = -trivial + 2 sign, degV (-2, 1)
        let (cover, table) = hyperelliptic();
        let k = BundleData::canonical(&cover, 1);
        let res = chevalley_weil(&cover, &k, &table, Mode::Proof).unwrap();
        assert_eq!(res.multiplicities(), &[-1, 2]);
        assert_eq!(res.isotypic_degrees(), &[-2, 1]);
        assert_eq!(res.genus(), 2);

        // D3 on the sphere, trivial bundle: chi = psi1
        let (cover, table) = d3_sphere();
        let triv = BundleData::trivial(&cover);
        let res = chevalley_weil(&cover, &triv, &table, Mode::Proof).unwrap();
        assert_eq!(res.multiplicities(), &[1, 0, 0]);
        assert_eq!(res.isotypic_degrees(), &[0, -1, -2]);

        // cyclic(3) cover of the line branched at 5 points, L = K
        let (cover, table) = quartic_cyclic3();
        let k = BundleData::canonical(&cover, 1);
        let res = chevalley_weil(&cover, &k, &table, Mode::Proof).unwrap();
        assert_eq!(res.multiplicities(), &[-1, 2, 1]);
        assert_eq!(res.genus(), 3);
    }

    #[test]
    fn free_action_is_regular_multiple() {
        let (cover, table) = free_cover(); // cyclic(5), h = 3
        for d in [0i64, 5, 10, -15] {
            let bundle = BundleData::new(&cover, d, &BTreeMap::new()).unwrap();
            let res = chevalley_weil(&cover, &bundle, &table, Mode::Proof).unwrap();
            let scalar = d / 5 + 1 - 3;
            let reg = regular_character(cover.group());
            let expected = table.integral_decomposition(&reg).unwrap().unwrap();
            let scaled: Vec<i64> = expected.coeffs().iter().map(|c| c * scalar).collect();
            assert_eq!(res.multiplicities(), scaled.as_slice());
        }
    }

    #[test]
    fn literal_mode_is_integral_here_but_wrong() {
        let (cover, table) = d3_sphere();
        let triv = BundleData::trivial(&cover);
        let res = chevalley_weil(&cover, &triv, &table, Mode::Literal).unwrap();
        assert_eq!(res.m_coefficients()[2], rat_int(4));
        assert_eq!(res.multiplicities(), &[1, 0, -2]);
        // dimension sum breaks: 1*1 + 1*0 + 2*(-2) = -3 != d + 1 - g = 1
        let dim: i64 = (0..3)
            .map(|i| table.degree(i) as i64 * res.multiplicities()[i])
            .sum();
        assert_ne!(dim, triv.degree() + 1 - res.genus() as i64);
    }

    #[test]
    fn corrupted_degree_is_rejected() {
        let (cover, table) = hyperelliptic();
        let mut exps = BTreeMap::new();
        for o in cover.orbits() {
            exps.insert(o.id().to_string(), 1i64);
        }
        let bad = BundleData::new(&cover, 3, &exps).unwrap();
        let err = chevalley_weil(&cover, &bad, &table, Mode::Proof).unwrap_err();
        match err {
            CwError::NonIntegralMultiplicity { value, .. } => {
                assert!(!value.is_integer());
            }
            other => panic!("expected fractional multiplicity, got {other}"),
        }
    }

    #[test]
    fn rho_identities() {
        let (cover, table) = hyperelliptic();
        let k = BundleData::canonical(&cover, 1);
        let orbit = &cover.orbits()[0];
        // r = 0 kills the regular part
        let r0 = rho(&cover, orbit, &k, &Rational::zero()).unwrap();
        for (xi_idx, xi) in table.irreducibles().iter().enumerate() {
            let ip = inner_product(&r0, xi).unwrap();
            let lc = local_coefficient(&cover, orbit, &k, &table, xi_idx, Mode::Proof).unwrap();
            assert_eq!(ip, Cyclotomic::from_rational(lc));
        }
        // rho = (r/n) chi_reg + rho'' at r = -1
        let r = rat_int(-1);
        let full = rho(&cover, orbit, &k, &r).unwrap();
        let reg_part = regular_character(cover.group()).scaled(&(&r / rat_int(2)));
        let split = reg_part.plus(&r0).unwrap();
        assert_eq!(full.class_values(), split.class_values());
    }

    #[test]
    fn gm_isotypic_degrees_match_and_are_invariant() {
        let (cover, table) = hyperelliptic();
        let k = BundleData::canonical(&cover, 1);
        // uniform: r_q = -1/3 on all six orbits
        let uniform = ResidueAssignment::uniform(&cover, &k);
        for o in cover.orbits() {
            assert_eq!(*uniform.get(o.id()).unwrap(), rat_frac(-1, 3));
        }
        let degs = gm_isotypic_degree(&cover, &k, &table, &uniform).unwrap();
        assert_eq!(degs, vec![-2, 1]);
        // a lopsided assignment gives the same degrees
        let mut vals = BTreeMap::new();
        vals.insert("q1".to_string(), rat_int(-2));
        for i in 2..=6 {
            vals.insert(format!("q{i}"), Rational::zero());
        }
        let lopsided = ResidueAssignment::new(vals);
        assert_eq!(
            gm_isotypic_degree(&cover, &k, &table, &lopsided).unwrap(),
            vec![-2, 1]
        );
        // constraint violation is rejected with the computed sum
        let mut vals = BTreeMap::new();
        for i in 1..=6 {
            vals.insert(format!("q{i}"), rat_int(1));
        }
        let bad = ResidueAssignment::new(vals);
        assert!(matches!(
            gm_isotypic_degree(&cover, &k, &table, &bad),
            Err(CwError::ResidueConstraint { .. })
        ));
    }

    #[test]
    fn gm_trace_totals() {
        let (cover, table) = hyperelliptic();
        let k = BundleData::canonical(&cover, 1);
        let uniform = ResidueAssignment::uniform(&cover, &k);
        // d - deg R / 2 = 2 - 3 = -1, so the trace total is +1
        let t = gm_residue_trace_total(&cover, &k, &table, &uniform).unwrap();
        assert_eq!(t, rat_int(1));

        let (cover, table) = d3_sphere();
        let triv = BundleData::trivial(&cover);
        let uniform = ResidueAssignment::uniform(&cover, &triv);
        let t = gm_residue_trace_total(&cover, &triv, &table, &uniform).unwrap();
        assert_eq!(t, rat_int(5)); // -(0 - 10/2)

        let (cover, table) = free_cover();
        let bundle = BundleData::new(&cover, 0, &BTreeMap::new()).unwrap();
        let empty = ResidueAssignment::new(BTreeMap::new());
        let t = gm_residue_trace_total(&cover, &bundle, &table, &empty).unwrap();
        assert_eq!(t, rat_int(0));
        // free cover with nonzero degree cannot satisfy the constraint
        let bundle = BundleData::new(&cover, 5, &BTreeMap::new()).unwrap();
        assert!(matches!(
            gm_isotypic_degree(&cover, &bundle, &table, &empty),
            Err(CwError::ResidueConstraint { .. })
        ));
    }

    #[test]
    fn cyclic_closed_form_pinned() {
        // N = N_p = 4, m = 1, aligned: k = 0..3 -> 3/4, 0, 1/4, 2/4
        let c4 = FiniteGroup::cyclic(4).unwrap();
        let cover =
            CoverData::new(c4, 1, vec![("q".into(), 1, 4, 1), ("p".into(), 1, 4, 1)]).unwrap();
        let mut exps = BTreeMap::new();
        exps.insert("q".to_string(), 1i64);
        exps.insert("p".to_string(), 1i64);
        let bundle = BundleData::new(&cover, 0, &exps).unwrap();
        let orbit = &cover.orbits()[0];
        let vals: Vec<Rational> = (0..4)
            .map(|k| cyclic_closed_form(orbit, &bundle, k, 1).unwrap())
            .collect();
        assert_eq!(
            vals,
            vec![rat_frac(3, 4), rat_int(0), rat_frac(1, 4), rat_frac(2, 4)]
        );
        // k = m gives 0
        assert_eq!(
            cyclic_closed_form(orbit, &bundle, 1, 1).unwrap(),
            Rational::zero()
        );
        // alignment must be a unit
        assert!(matches!(
            cyclic_closed_form(orbit, &bundle, 1, 2),
            Err(CwError::AlignmentNotUnit { .. })
        ));
    }

    #[test]
    fn cyclic_closed_form_subgroup_orbit() {
        // N = 6, N_p = 3 orbit, m = 0, aligned, k = 4 -> 1/3
        let c6 = FiniteGroup::cyclic(6).unwrap();
        let cover =
            CoverData::new(c6, 1, vec![("q".into(), 2, 3, 1), ("p".into(), 4, 3, 1)]).unwrap();
        let mut exps = BTreeMap::new();
        exps.insert("q".to_string(), 0i64);
        exps.insert("p".to_string(), 0i64);
        let bundle = BundleData::new(&cover, 0, &exps).unwrap();
        let orbit = cover.orbit("q").unwrap();
        let u = natural_alignment(&cover, orbit).unwrap();
        assert_eq!(
            cyclic_closed_form(orbit, &bundle, 4, u).unwrap(),
            rat_frac(1, 3)
        );
    }

    #[test]
    fn dihedral_closed_form_pinned() {
        let (cover, table) = d3_sphere();
        let triv = BundleData::trivial(&cover);
        let poles = cover.orbit("poles").unwrap();
        // chi1, m = 0: (ov(1) + ov(2))/3 = 1
        assert_eq!(
            dihedral_closed_form(&cover, poles, &triv, &table, 2).unwrap(),
            rat_int(1)
        );
        // psi1, m = 0: 0
        assert_eq!(
            dihedral_closed_form(&cover, poles, &triv, &table, 0).unwrap(),
            Rational::zero()
        );
        // reflection stabilizers are unsupported
        let edge = cover.orbit("edge").unwrap();
        assert!(matches!(
            dihedral_closed_form(&cover, edge, &triv, &table, 0),
            Err(CwError::StabilizerNotInRotations { .. })
        ));
    }

    #[test]
    fn dihedral_closed_form_psi3() {
        // D4, G_p = R, m = 1, psi3 -> ov(2 - 1)/4 = 1/4
        let d4 = FiniteGroup::dihedral(4).unwrap();
        let cover =
            CoverData::new(d4, 1, vec![("q".into(), 1, 4, 1), ("p".into(), 4, 2, 1)]).unwrap();
        let mut exps = BTreeMap::new();
        exps.insert("q".to_string(), 1i64);
        exps.insert("p".to_string(), 0i64);
        let bundle = BundleData::new(&cover, 0, &exps).unwrap();
        let table = CharacterTable::for_group(cover.group()).unwrap();
        let orbit = cover.orbit("q").unwrap();
        assert_eq!(
            dihedral_closed_form(&cover, orbit, &bundle, &table, 2).unwrap(),
            rat_frac(1, 4)
        );
    }

    #[test]
    fn lefschetz_pinned_values() {
        // hyperelliptic involution on K: six points, each -1/2
        let (cover, _) = hyperelliptic();
        let k = BundleData::canonical(&cover, 1);
        let v = lefschetz_value(&cover, &k, 1).unwrap();
        assert_eq!(v, Cyclotomic::from_integer(-3));

        // D3 sphere, trivial bundle, g = r: the two poles contribute 1
        let (cover, _) = d3_sphere();
        let triv = BundleData::trivial(&cover);
        let v = lefschetz_value(&cover, &triv, 1).unwrap();
        assert_eq!(v, Cyclotomic::one());

        // free action: empty sum
        let (cover, _) = free_cover();
        let bundle = BundleData::new(&cover, 0, &BTreeMap::new()).unwrap();
        for g in 1..5 {
            assert!(lefschetz_value(&cover, &bundle, g).unwrap().is_zero());
        }

        // identity is rejected
        assert!(matches!(
            lefschetz_value(&cover, &bundle, 0),
            Err(CwError::IdentityElement)
        ));
    }

    #[test]
    fn crosscheck_passes_in_proof_mode() {
        let (cover, table) = hyperelliptic();
        let k = BundleData::canonical(&cover, 1);
        let report = crosscheck_lefschetz(&cover, &k, &table, Mode::Proof).unwrap();
        assert!(report.all_ok());
        // the involution line reads -3 on both sides
        let inv = &report.entries[1];
        assert_eq!(inv.cw_value, Cyclotomic::from_integer(-3));
        assert_eq!(inv.reference, Cyclotomic::from_integer(-3));

        let (cover, table) = d3_sphere();
        let triv = BundleData::trivial(&cover);
        let report = crosscheck_lefschetz(&cover, &triv, &table, Mode::Proof).unwrap();
        assert!(report.all_ok());
        for e in &report.entries[1..] {
            assert_eq!(e.cw_value, Cyclotomic::one());
        }
    }

    #[test]
    fn crosscheck_flags_literal_mode() {
        let (cover, table) = d3_sphere();
        let triv = BundleData::trivial(&cover);
        let report = crosscheck_lefschetz(&cover, &triv, &table, Mode::Literal).unwrap();
        assert!(report.mismatches > 0);
    }
}
