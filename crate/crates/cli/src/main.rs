//! equichar: exact character-valued Euler characteristics of equivariant
//! line bundles on Riemann surfaces, from JSON scenario files.
//!
//! Exit codes: 0 success, 1 invariant failure or mismatch, 2 parse
//! error, 3 invalid data.

mod checks;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use equichar_core::{
    chevalley_weil, compare_with_cw, lefschetz_value, parse_element_literal, parse_scenario_str,
    BranchPoint, CharacterTable, CwError, FiniteGroup, GroupKind, Mode, OracleError, Scenario,
    ScenarioError, SuperellipticCurve,
};

const EXIT_MISMATCH: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_DATA: u8 = 3;

#[derive(Parser)]
#[command(
    name = "equichar",
    version,
    about = "Exact Chevalley-Weil / Lefschetz engine for finite group actions on Riemann surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Proof,
    Literal,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Proof => Mode::Proof,
            ModeArg::Literal => Mode::Literal,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the virtual character, m coefficients and isotypic degrees
    Analyze {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Override the scenario's mode (proof or literal)
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// Run the full invariant suite on one scenario
    Check {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// Exact fixed-point sum next to the character value at one element
    Lefschetz {
        path: PathBuf,
        /// Element literal: an integer for cyclic groups, {"r":k} or
        /// {"sr":k} for dihedral groups
        #[arg(long)]
        element: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compare Chevalley-Weil multiplicities with brute-force section
    /// counts on a superelliptic curve
    Oracle {
        path: PathBuf,
        /// Power of the canonical bundle (overrides the file)
        #[arg(long)]
        t: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print a built-in character table (cyclic:N or dihedral:N)
    Table {
        #[arg(long)]
        group: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }

    fn data(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_DATA,
            message: message.into(),
        }
    }

    fn mismatch(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_MISMATCH,
            message: message.into(),
        }
    }
}

impl From<ScenarioError> for Failure {
    fn from(e: ScenarioError) -> Failure {
        match e {
            ScenarioError::Parse(_) => Failure::parse(e.to_string()),
            ScenarioError::Data(_) => Failure::data(e.to_string()),
        }
    }
}

impl From<CwError> for Failure {
    fn from(e: CwError) -> Failure {
        match e {
            CwError::NonIntegralMultiplicity { .. } | CwError::NonIntegralDegree { .. } => {
                Failure::mismatch(e.to_string())
            }
            other => Failure::data(other.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Failure {
        match e {
            OracleError::Cw(inner) => inner.into(),
            other => Failure::data(other.to_string()),
        }
    }
}

fn load_scenario(path: &PathBuf) -> Result<Scenario, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_scenario_str(&text)?)
}

fn run(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Analyze { path, format, mode } => {
            let scenario = load_scenario(&path)?;
            let mode = mode.map(Mode::from).unwrap_or(scenario.mode);
            for w in scenario.cover.warnings() {
                eprintln!("warning: {w}");
            }
            let result = chevalley_weil(&scenario.cover, &scenario.bundle, &scenario.table, mode)?;
            match format {
                Format::Text => print!("{}", result.text_table()),
                Format::Json => println!("{}", result.to_json()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { path, format, mode } => {
            let scenario = load_scenario(&path)?;
            let mode = mode.map(Mode::from).unwrap_or(scenario.mode);
            let report = checks::run_checks(&scenario, mode)?;
            let status: u8 = if report.all_ok() { 0 } else { EXIT_MISMATCH };
            match format {
                Format::Text => {
                    println!("scenario {}", path.display());
                    println!(
                        "group order {}   genus {}   deg L {}   mode {mode}",
                        scenario.group.order(),
                        scenario.cover.total_genus(),
                        scenario.bundle.degree()
                    );
                    for w in &report.warnings {
                        println!("warning: {w}");
                    }
                    for c in &report.checks {
                        println!(
                            "check {:girth$} {} ({})",
                            c.name,
                            if c.ok { "ok  " } else { "FAIL" },
                            c.detail,
                            girth = 22
                        );
                    }
                    println!("result {}", if status == 0 { "PASS" } else { "FAIL" });
                }
                Format::Json => {
                    let checks: Vec<serde_json::Value> = report
                        .checks
                        .iter()
                        .map(|c| {
                            serde_json::json!({
                                "name": c.name,
                                "ok": c.ok,
                                "detail": c.detail,
                            })
                        })
                        .collect();
                    let value = serde_json::json!({
                        "scenario": scenario.echo,
                        "result": report.result.as_ref().map(|r| r.to_json()),
                        "checks": checks,
                        "warnings": report.warnings,
                        "status": status,
                    });
                    println!("{value}");
                }
            }
            Ok(ExitCode::from(status))
        }
        Command::Lefschetz {
            path,
            element,
            format,
        } => {
            let scenario = load_scenario(&path)?;
            let g = parse_element_literal(&scenario.group, &element)?;
            if g == scenario.group.identity() {
                return Err(Failure::data(
                    "the fixed-point sum needs a non-identity element; use `analyze` for the Euler characteristic",
                ));
            }
            let fixed = lefschetz_value(&scenario.cover, &scenario.bundle, g)?;
            let cw = chevalley_weil(
                &scenario.cover,
                &scenario.bundle,
                &scenario.table,
                scenario.mode,
            )?;
            let cw_value = cw.chi().evaluate(&scenario.table, g);
            let matches = fixed == cw_value;
            match format {
                Format::Text => {
                    println!("element          {}", scenario.group.element_label(g));
                    println!("fixed-point sum  {fixed}");
                    println!("character value  {cw_value}");
                    println!("match {matches}");
                }
                Format::Json => {
                    let value = serde_json::json!({
                        "element": scenario.group.element_label(g),
                        "fixed_point": fixed.to_string(),
                        "cw": cw_value.to_string(),
                        "match": matches,
                    });
                    println!("{value}");
                }
            }
            Ok(if matches {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_MISMATCH)
            })
        }
        Command::Oracle { path, t, format } => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))?;
            let file: OracleFile =
                serde_json::from_str(&text).map_err(|e| Failure::parse(e.to_string()))?;
            let t = t.or(file.t).unwrap_or(1);
            let branch = file
                .branch
                .iter()
                .map(|b| BranchPoint { x: b.x, d: b.d })
                .collect();
            let curve = SuperellipticCurve::new(file.n, branch)
                .map_err(|e| Failure::data(e.to_string()))?;
            let report = compare_with_cw(&curve, t)?;
            match format {
                Format::Text => {
                    println!(
                        "curve y^{} = {} with {} branch points, genus {}, t = {}",
                        report.n,
                        curve.defining_polynomial(),
                        curve.branch().len(),
                        report.genus,
                        report.t
                    );
                    println!("oracle dims  {:?}", report.dims);
                    println!("cw           {:?}", report.cw_multiplicities);
                    println!("expected     {:?}", report.expected_multiplicities);
                    println!(
                        "verdict {}",
                        if report.matches { "MATCH" } else { "MISMATCH" }
                    );
                }
                Format::Json => {
                    let value = serde_json::json!({
                        "n": report.n,
                        "t": report.t,
                        "genus": report.genus,
                        "dims": report.dims,
                        "cw": report.cw_multiplicities,
                        "expected": report.expected_multiplicities,
                        "match": report.matches,
                    });
                    println!("{value}");
                }
            }
            Ok(if report.matches {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_MISMATCH)
            })
        }
        Command::Table { group, format } => {
            let group = parse_group_spec(&group)?;
            let table =
                CharacterTable::for_group(&group).map_err(|e| Failure::data(e.to_string()))?;
            let classes = group.classes();
            match format {
                Format::Text => {
                    let kind = match group.kind() {
                        GroupKind::Cyclic(n) => format!("cyclic({n})"),
                        GroupKind::Dihedral(n) => format!("dihedral({n})"),
                        GroupKind::Explicit => "explicit".into(),
                    };
                    println!(
                        "group {kind}   order {}   classes {}",
                        group.order(),
                        classes.count()
                    );
                    let reps: Vec<String> = classes
                        .representatives()
                        .map(|g| group.element_label(g))
                        .collect();
                    let sizes: Vec<String> = (0..classes.count())
                        .map(|i| classes.size(i).to_string())
                        .collect();
                    println!("class  {}", reps.join(", "));
                    println!("size   {}", sizes.join(", "));
                    for i in 0..table.len() {
                        let vals: Vec<String> = table
                            .irreducible(i)
                            .class_values()
                            .iter()
                            .map(|v| v.to_string())
                            .collect();
                        println!("{:6} {}", table.name(i), vals.join(", "));
                    }
                }
                Format::Json => {
                    let class_objs: Vec<serde_json::Value> = (0..classes.count())
                        .map(|i| {
                            serde_json::json!({
                                "rep": group.element_label(classes.representative(i)),
                                "size": classes.size(i),
                            })
                        })
                        .collect();
                    let irr: Vec<serde_json::Value> = (0..table.len())
                        .map(|i| {
                            serde_json::json!({
                                "name": table.name(i),
                                "degree": table.degree(i),
                                "values": table
                                    .irreducible(i)
                                    .class_values()
                                    .iter()
                                    .map(|v| v.to_string())
                                    .collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    let value = serde_json::json!({
                        "order": group.order(),
                        "classes": class_objs,
                        "irreducibles": irr,
                    });
                    println!("{value}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OracleFile {
    n: u32,
    branch: Vec<BranchSpec>,
    #[serde(default)]
    t: Option<u32>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BranchSpec {
    x: i64,
    d: u32,
}

fn parse_group_spec(spec: &str) -> Result<equichar_core::GroupRef, Failure> {
    let (kind, n) = spec
        .split_once(':')
        .ok_or_else(|| Failure::parse(format!("group spec {spec:?}: expected kind:N")))?;
    let n: u32 = n
        .parse()
        .map_err(|_| Failure::parse(format!("group spec {spec:?}: bad order {n:?}")))?;
    match kind {
        "cyclic" => FiniteGroup::cyclic(n).map_err(|e| Failure::data(e.to_string())),
        "dihedral" => FiniteGroup::dihedral(n).map_err(|e| Failure::data(e.to_string())),
        other => Err(Failure::parse(format!(
            "group spec {spec:?}: unknown kind {other:?} (use cyclic or dihedral)"
        ))),
    }
}
