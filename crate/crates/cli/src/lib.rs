//! File formats and command dispatch for the `special-covers` binary.
//!
//! Exit codes: `0` success, `1` mathematical failure (a failed check or an
//! anomaly), `2` usage or parse error.

pub mod datum;
pub mod survey;
pub mod tree_io;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use special_covers::degen::{enumerate_types, validate};
use special_covers::invariants::{invariant_report, InvariantError, InvariantReport};
use special_covers::tree::{
    assign_ae, check_structure, edge_invariants, median_vertex, nu_from_leaves, theorem1_verdict,
    validate_decorations, HurwitzTree, Verdict,
};
use special_covers::field_make;

use crate::datum::DatumDto;
use crate::survey::{survey, write_csv, SurveyDocument};
use crate::tree_io::TreeDto;

/// Environment variable bounding extension-degree searches.
pub const MAX_EXT_VAR: &str = "SPECIAL_COVERS_MAX_EXT";
pub const DEFAULT_MAX_EXT: usize = 4;
/// Largest extension degree in which `mu` is built explicitly.
pub const MU_CAP: usize = 12;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Math(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "special-covers", version, about = "Special degeneration data of metacyclic covers in characteristic p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the admissible (m, a, nu) classes for r branch points.
    Types {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Classify all data with four branch points for the prime p.
    Survey {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 4)]
        r: usize,
        /// Cross-check against the exhaustive search.
        #[arg(long)]
        oracle: bool,
        /// Extension degree of the exhaustive search (default: 2, capped by
        /// SPECIAL_COVERS_MAX_EXT).
        #[arg(long)]
        oracle_degree: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Check a datum file, or every datum of a survey JSON file.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Conductors, disk radii and monodromy of a type.
    Invariants {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        nu: Vec<i64>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Validate a decorated tree and classify its shape.
    Tree {
        file: PathBuf,
        /// Apply the constraints of special covers.
        #[arg(long)]
        check_special: bool,
        /// The three indices with nu = 0 (default: read from the markings).
        #[arg(long, value_delimiter = ',')]
        s0: Option<Vec<usize>>,
        /// Characteristic for conductors and thickness data.
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

pub fn max_ext() -> Result<usize, CliError> {
    match std::env::var(MAX_EXT_VAR) {
        Err(_) => Ok(DEFAULT_MAX_EXT),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(CliError::Usage(format!("{MAX_EXT_VAR} must be a positive integer, got {s:?}"))),
        },
    }
}

/// Runs one command, writing results to `out` and diagnostics to `err`;
/// returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Types { p, r, format } => cmd_types(p, r, format, out),
        Command::Survey { p, r, oracle, oracle_degree, format } => {
            cmd_survey(p, r, oracle, oracle_degree, format, out, err)
        }
        Command::Verify { file, format } => cmd_verify(&file, format, out),
        Command::Invariants { p, m, a, nu, format } => cmd_invariants(p, m, &a, &nu, format, out),
        Command::Tree { file, check_special, s0, p, format } => cmd_tree(&file, check_special, s0, p, format, out),
    }
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Io(e.to_string())
}

fn require_prime(p: u64) -> Result<(), CliError> {
    field_make(p, 1).map(|_| ()).map_err(|e| CliError::Usage(e.to_string()))
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn print_json(out: &mut dyn Write, v: &Value) -> Result<(), CliError> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("serializable")).map_err(io_err)
}

pub fn cmd_types(p: u64, r: usize, format: Format, out: &mut dyn Write) -> Result<i32, CliError> {
    require_prime(p)?;
    if r < 3 {
        return Err(CliError::Usage(format!("r = {r}: need at least 3 branch points")));
    }
    let classes = enumerate_types(p, r);
    match format {
        Format::Json => {
            let list: Vec<Value> = classes
                .iter()
                .map(|c| json!({"m": c.m, "a": c.a, "nu": c.nu, "connected": c.is_connected()}))
                .collect();
            print_json(out, &json!({"p": p, "r": r, "classes": list}))?;
        }
        _ => {
            writeln!(out, "{} classes for p = {p}, r = {r}", classes.len()).map_err(io_err)?;
            for c in &classes {
                let conn = if c.is_connected() { "" } else { " (disconnected)" };
                writeln!(out, "m={} a=({}) nu=({}){conn}", c.m, join(&c.a), join(&c.nu)).map_err(io_err)?;
            }
        }
    }
    Ok(0)
}

pub fn cmd_survey(
    p: u64,
    r: usize,
    oracle: bool,
    oracle_degree: Option<usize>,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    require_prime(p)?;
    if r != 4 {
        return Err(CliError::Usage(format!("the survey covers r = 4 only, got r = {r}")));
    }
    let cap = max_ext()?;
    let degree = match oracle_degree {
        Some(d) if d == 0 || d > cap => {
            return Err(CliError::Usage(format!("oracle degree {d} outside 1..={cap} ({MAX_EXT_VAR})")))
        }
        Some(d) => d,
        None => cap.min(2),
    };
    let doc = survey(p, oracle.then_some(degree), MU_CAP)?;
    match format {
        Format::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable")).map_err(io_err)?
        }
        _ => write_csv(&doc, &mut *out)?,
    }
    for a in &doc.anomalies {
        writeln!(err, "anomaly: {a}").map_err(io_err)?;
    }
    Ok(if doc.anomalies.is_empty() { 0 } else { 1 })
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, path: &Path) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| {
        CliError::Input(format!("{}: line {}, column {}: {e}", path.display(), e.line(), e.column()))
    })
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn cmd_verify(path: &Path, format: Format, out: &mut dyn Write) -> Result<i32, CliError> {
    let text = read_file(path)?;
    let value: Value = parse_json(&text, path)?;
    let dtos: Vec<(String, DatumDto)> = if value.get("rows").is_some() {
        let doc: SurveyDocument = parse_json(&text, path)?;
        doc.rows
            .into_iter()
            .enumerate()
            .filter_map(|(i, r)| r.datum.map(|d| (format!("row {}", i + 1), d)))
            .collect()
    } else {
        vec![(path.display().to_string(), parse_json(&text, path)?)]
    };
    let mut all_ok = true;
    let mut reports = Vec::new();
    for (name, dto) in &dtos {
        let d = dto.to_datum().map_err(|e| CliError::Input(format!("{name}: {e}")))?;
        let rep = validate(&d);
        all_ok &= rep.is_valid();
        match format {
            Format::Json => reports.push(json!({
                "name": name,
                "valid": rep.is_valid(),
                "checks": rep.checks.iter().map(|c| json!({
                    "check": c.kind.to_string(), "passed": c.passed, "detail": c.detail,
                })).collect::<Vec<_>>(),
            })),
            _ => {
                writeln!(out, "{name}: {}", if rep.is_valid() { "valid" } else { "INVALID" }).map_err(io_err)?;
                for c in &rep.checks {
                    let mark = if c.passed { "pass" } else { "FAIL" };
                    let detail = if c.detail.is_empty() { String::new() } else { format!(" ({})", c.detail) };
                    writeln!(out, "  {mark} {}{detail}", c.kind).map_err(io_err)?;
                }
            }
        }
    }
    if format == Format::Json {
        print_json(out, &json!({"valid": all_ok, "data": reports}))?;
    }
    Ok(if all_ok { 0 } else { 1 })
}

pub fn report_json(r: &InvariantReport) -> Value {
    json!({
        "p": r.p,
        "m": r.m,
        "a": r.a,
        "nu": r.nu,
        "per_index": r.per_index.iter().map(|x| json!({
            "sigma": x.sigma.to_string(),
            "m_i": x.m_i,
            "a_tilde": x.a_tilde,
            "h": x.h,
            "congruence": x.congruence,
            "disk_radius_exponent": x.disk_radius.to_string(),
            "chain_thickness": x.chain_thickness.to_string(),
        })).collect::<Vec<_>>(),
        "vanishing_cycle_ok": r.vanishing_cycle_ok,
        "vanishing_cycle_sum": r.vanishing_cycle_sum.to_string(),
        "monodromy_order": r.monodromy_order,
        "tail_action_orders": r.tail_action_orders,
        "moduli_degree": r.moduli_degree,
        "assumes_rational_branch_points": r.assumes_rational_branch_points,
    })
}

pub fn cmd_invariants(p: u64, m: u64, a: &[u64], nu: &[i64], format: Format, out: &mut dyn Write) -> Result<i32, CliError> {
    require_prime(p)?;
    let report = invariant_report(p, m, a, nu).map_err(|e| match e {
        InvariantError::Inadmissible(s) => CliError::Usage(s),
        e => CliError::Math(e.to_string()),
    })?;
    match format {
        Format::Json => print_json(out, &report_json(&report))?,
        _ => writeln!(out, "{report}").map_err(io_err)?,
    }
    Ok(if report.consistent() { 0 } else { 1 })
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Star { center } => json!({"verdict": v.label(), "center": center}),
        Verdict::NonStarGeometricallyImpossible { vertex, edge, nu } => {
            json!({"verdict": v.label(), "vertex": vertex, "edge": edge, "nu": nu})
        }
    }
}

pub fn cmd_tree(
    path: &Path,
    check_special: bool,
    s0: Option<Vec<usize>>,
    p: Option<u64>,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let text = read_file(path)?;
    let dto: TreeDto = parse_json(&text, path)?;
    let mut t: HurwitzTree = dto.to_tree()?;
    let mut lines: Vec<String> = Vec::new();
    let mut failures: Vec<String> = Vec::new();
    let structure = check_structure(&t);
    if !structure.is_empty() {
        failures.extend(structure.iter().map(|v| format!("structural: {v}")));
        return finish_tree(format, out, &t, lines, failures, Value::Null);
    }
    let mut extra = serde_json::Map::new();
    if t.edges.iter().any(|e| e.a.is_none()) {
        match assign_ae(&t) {
            Ok(full) => {
                lines.push("a_e assigned from the leaf labels".to_string());
                t = full;
            }
            Err(e) => failures.push(e.to_string()),
        }
    }
    let s0 = match s0 {
        Some(v) => {
            if v.len() != 3 {
                return Err(CliError::Usage(format!("--s0 needs three indices, got {}", v.len())));
            }
            Some([v[0], v[1], v[2]])
        }
        None if check_special => {
            let zeros: Vec<usize> = (0..t.r()).filter(|&i| t.marked[i].nu == Some(0)).map(|i| i + 1).collect();
            if zeros.len() != 3 {
                return Err(CliError::Usage("--s0 is required unless exactly three markings have nu = 0".into()));
            }
            Some([zeros[0], zeros[1], zeros[2]])
        }
        None => None,
    };
    if let (true, Some(s0)) = (check_special, s0) {
        match nu_from_leaves(&t, s0) {
            Ok(computed) => {
                let mut mismatch = 0;
                for (i, (given, want)) in t.edges.iter().zip(&computed.edges).enumerate() {
                    if given.nu.is_some() && given.nu != want.nu {
                        failures.push(format!("edge {i}: nu = {:?}, closed form gives {:?}", given.nu, want.nu));
                        mismatch += 1;
                    }
                }
                if mismatch == 0 {
                    t = computed;
                }
            }
            Err(e) => failures.push(e.to_string()),
        }
        match median_vertex(&t, s0) {
            Ok(v) => {
                lines.push(format!("median vertex {v}"));
                extra.insert("median".into(), json!(v));
            }
            Err(e) => failures.push(e.to_string()),
        }
    }
    let report = validate_decorations(&t, check_special);
    failures.extend(report.violations.iter().map(|v| v.to_string()));
    match theorem1_verdict(&t) {
        Ok(v) => {
            lines.push(match &v {
                Verdict::Star { center } => format!("verdict: star (center {center})"),
                Verdict::NonStarGeometricallyImpossible { vertex, edge, nu } => format!(
                    "verdict: non_star_geometrically_impossible (vertex {vertex}, edge {edge} with nu = {nu})"
                ),
            });
            extra.insert("verdict".into(), verdict_json(&v));
        }
        Err(e) => lines.push(format!("verdict: n/a ({e})")),
    }
    if let Some(p) = p {
        match edge_invariants(&t, p) {
            Ok(inv) => {
                let mut rows = Vec::new();
                for e in &inv {
                    lines.push(format!(
                        "edge {}: h = {}, {} -> {}, thickness {}, base thickness {}",
                        e.edge,
                        e.h,
                        e.source_tag.label(),
                        e.target_tag.label(),
                        e.thickness,
                        e.base_thickness
                    ));
                    rows.push(json!({
                        "edge": e.edge, "h": e.h,
                        "source": e.source_tag.label(), "target": e.target_tag.label(),
                        "thickness": e.thickness.to_string(), "base_thickness": e.base_thickness.to_string(),
                    }));
                }
                extra.insert("edges".into(), Value::Array(rows));
            }
            Err(e) => failures.push(format!("edge invariants: {e}")),
        }
    }
    finish_tree(format, out, &t, lines, failures, Value::Object(extra))
}

fn finish_tree(
    format: Format,
    out: &mut dyn Write,
    t: &HurwitzTree,
    lines: Vec<String>,
    failures: Vec<String>,
    extra: Value,
) -> Result<i32, CliError> {
    let ok = failures.is_empty();
    match format {
        Format::Json => print_json(
            out,
            &json!({
                "valid": ok,
                "failures": failures,
                "notes": lines,
                "result": extra,
                "tree": TreeDto::from_tree(t),
            }),
        )?,
        _ => {
            writeln!(out, "{}", if ok { "decorations valid" } else { "decorations INVALID" }).map_err(io_err)?;
            for f in &failures {
                writeln!(out, "  FAIL {f}").map_err(io_err)?;
            }
            for l in &lines {
                writeln!(out, "{l}").map_err(io_err)?;
            }
        }
    }
    Ok(if ok { 0 } else { 1 })
}
