//! Self-describing JSON scenario files: group, branch data, bundle, and
//! optional residues and mode. Scenarios double as golden-test fixtures,
//! so parsing is strict (unknown fields rejected) and errors carry the
//! offending field or orbit id.

use std::collections::BTreeMap;

use serde::Deserialize;
use thiserror::Error;

use crate::character::CharacterTable;
use crate::cover::{BundleData, CoverData, CoverError};
use crate::cw::{Mode, ResidueAssignment};
use crate::exact::{parse_rational, Cyclotomic};
use crate::group::{FiniteGroup, GroupKind, GroupRef};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    /// Structural problems in the file (exit code 2 territory).
    #[error("parse error: {0}")]
    Parse(String),
    /// Well-formed but mathematically invalid data (exit code 3).
    #[error("invalid data: {0}")]
    Data(String),
}

#[derive(Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
enum GroupSpec {
    #[serde(rename = "cyclic")]
    Cyclic { n: u32 },
    #[serde(rename = "dihedral")]
    Dihedral { n: u32 },
    #[serde(rename = "explicit")]
    Explicit {
        order: usize,
        mul: Vec<Vec<usize>>,
        classes: Vec<Vec<usize>>,
        irreducibles: Vec<IrreducibleSpec>,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IrreducibleSpec {
    name: String,
    degree: u32,
    values: Vec<Cyclotomic>,
}

/// Element literal: cyclic groups use a plain integer j (meaning g^j),
/// dihedral groups use {"r": k} or {"sr": k}, explicit groups use the
/// element index.
#[derive(Deserialize, Debug, Clone)]
#[serde(untagged)]
enum ElementLiteral {
    Index(i64),
    Dihedral(DihedralLiteral),
}

#[derive(Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
struct DihedralLiteral {
    #[serde(default)]
    r: Option<i64>,
    #[serde(default)]
    sr: Option<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OrbitSpec {
    id: String,
    generator: ElementLiteral,
    order: usize,
    rotation_exponent: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BundleSpec {
    degree: i64,
    #[serde(default)]
    fiber_exponents: BTreeMap<String, i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    group: GroupSpec,
    quotient_genus: u32,
    #[serde(default)]
    branch_orbits: Vec<OrbitSpec>,
    bundle: BundleSpec,
    #[serde(default)]
    residues: Option<BTreeMap<String, String>>,
    #[serde(default)]
    mode: Option<String>,
}

/// A fully validated scenario ready for the engine.
#[derive(Debug)]
pub struct Scenario {
    pub group: GroupRef,
    pub table: CharacterTable,
    pub cover: CoverData,
    pub bundle: BundleData,
    pub residues: Option<ResidueAssignment>,
    pub mode: Mode,
    /// The parsed input, for canonical echoing in reports.
    pub echo: serde_json::Value,
}

fn resolve_element(group: &GroupRef, lit: &ElementLiteral) -> Result<usize, ScenarioError> {
    match (group.kind(), lit) {
        (GroupKind::Cyclic(n), ElementLiteral::Index(j)) => Ok(j.rem_euclid(n as i64) as usize),
        (GroupKind::Dihedral(n), ElementLiteral::Dihedral(d)) => match (d.r, d.sr) {
            (Some(k), None) => Ok(k.rem_euclid(n as i64) as usize),
            (None, Some(k)) => Ok(n as usize + k.rem_euclid(n as i64) as usize),
            _ => Err(ScenarioError::Parse(
                "dihedral element literal needs exactly one of \"r\" or \"sr\"".into(),
            )),
        },
        (GroupKind::Explicit, ElementLiteral::Index(j)) => {
            let j = *j;
            if j < 0 || j as usize >= group.order() {
                return Err(ScenarioError::Parse(format!(
                    "element index {j} out of range 0..{}",
                    group.order()
                )));
            }
            Ok(j as usize)
        }
        (kind, lit) => Err(ScenarioError::Parse(format!(
            "element literal {lit:?} does not fit group kind {kind:?}"
        ))),
    }
}

/// Parse an element literal given as JSON text (an integer for cyclic
/// and explicit groups, {"r": k} or {"sr": k} for dihedral) against a
/// group.
pub fn parse_element_literal(group: &GroupRef, text: &str) -> Result<usize, ScenarioError> {
    let lit: ElementLiteral =
        serde_json::from_str(text).map_err(|e| ScenarioError::Parse(e.to_string()))?;
    resolve_element(group, &lit)
}

pub fn parse_scenario_str(input: &str) -> Result<Scenario, ScenarioError> {
    let value: serde_json::Value =
        serde_json::from_str(input).map_err(|e| ScenarioError::Parse(e.to_string()))?;
    parse_scenario_value(value)
}

pub fn parse_scenario_value(value: serde_json::Value) -> Result<Scenario, ScenarioError> {
    let file: ScenarioFile =
        serde_json::from_value(value.clone()).map_err(|e| ScenarioError::Parse(e.to_string()))?;
    let (group, table) = match file.group {
        GroupSpec::Cyclic { n } => {
            let g = FiniteGroup::cyclic(n).map_err(|e| ScenarioError::Data(e.to_string()))?;
            let t =
                CharacterTable::for_group(&g).map_err(|e| ScenarioError::Data(e.to_string()))?;
            (g, t)
        }
        GroupSpec::Dihedral { n } => {
            let g = FiniteGroup::dihedral(n).map_err(|e| ScenarioError::Data(e.to_string()))?;
            let t =
                CharacterTable::for_group(&g).map_err(|e| ScenarioError::Data(e.to_string()))?;
            (g, t)
        }
        GroupSpec::Explicit {
            order,
            mul,
            classes,
            irreducibles,
        } => {
            if mul.len() != order {
                return Err(ScenarioError::Parse(format!(
                    "explicit group declares order {order} but the table has {} rows",
                    mul.len()
                )));
            }
            let g = FiniteGroup::explicit(mul).map_err(|e| ScenarioError::Data(e.to_string()))?;
            let rows = irreducibles
                .into_iter()
                .map(|i| (i.name, i.degree, i.values))
                .collect();
            let t = CharacterTable::from_explicit(&g, &classes, rows)
                .map_err(|e| ScenarioError::Data(e.to_string()))?;
            (g, t)
        }
    };
    let mut orbit_spec = Vec::with_capacity(file.branch_orbits.len());
    for o in &file.branch_orbits {
        let generator = resolve_element(&group, &o.generator)?;
        orbit_spec.push((o.id.clone(), generator, o.order, o.rotation_exponent));
    }
    let cover = CoverData::new(group.clone(), file.quotient_genus, orbit_spec)
        .map_err(|e| ScenarioError::Data(e.to_string()))?;
    let bundle = BundleData::new(&cover, file.bundle.degree, &file.bundle.fiber_exponents)
        .map_err(|e| match &e {
            CoverError::MissingFiberExponent { .. } | CoverError::UnknownOrbit { .. } => {
                ScenarioError::Parse(e.to_string())
            }
            _ => ScenarioError::Data(e.to_string()),
        })?;
    let residues = match file.residues {
        None => None,
        Some(raw) => {
            let mut map = BTreeMap::new();
            for (id, s) in raw {
                if cover.orbit(&id).is_none() {
                    return Err(ScenarioError::Parse(format!(
                        "residues name unknown orbit {id:?}"
                    )));
                }
                let r = parse_rational(&s)
                    .map_err(|e| ScenarioError::Parse(format!("residue for {id:?}: {e}")))?;
                map.insert(id, r);
            }
            Some(ResidueAssignment::new(map))
        }
    };
    let mode = match file.mode.as_deref() {
        None => Mode::Proof,
        Some(s) => s.parse().map_err(ScenarioError::Parse)?,
    };
    Ok(Scenario {
        group,
        table,
        cover,
        bundle,
        residues,
        mode,
        echo: value,
    })
}
