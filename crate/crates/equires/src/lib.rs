//! Batch front end for the resolved-action calculators: builds or parses a space,
//! runs the requested validators and theory computations in a fixed order, and emits
//! deterministic reports as text, CSV, or JSON lines.

pub mod format;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use num::Zero;

use equires_core::groups::{cyclic, invariant_poly_basis, GroupDesc, InvPoly};
use equires_core::linalg::{Int, Rat};
use equires_core::resolution::{
    build_free_action, build_mobius_example, build_sphere_rotation, build_trivial_action,
    circle_cells, circle_sphere_inclusion, point, validate_resolution, z2_sphere_inclusion,
    ResolutionSpace,
};
use equires_core::theories::{
    ab_pushforward, chern_triangle_check, delocalized_cohomology, equivariant_cohomology,
    k_theory, TheoryError,
};

pub use format::{parse_space, serialize_space, FormatError};

/// Exact calculators for resolved compact group actions.
#[derive(Parser, Debug)]
#[command(name = "equires", version, about)]
pub struct Cli {
    /// Builder name (see --help) or path to a JSON space description.
    ///
    /// Builders: appendix-sphere, sphere-z2, mobius, trivial-point-s1,
    /// trivial-circle-t1, free-circle-z2.
    pub input: String,

    /// Validate the space and report every structural problem.
    #[arg(long)]
    pub validate: bool,

    /// Equivariant cohomology dimensions in degrees 0..=D.
    #[arg(long, value_name = "D")]
    pub hg: Option<usize>,

    /// Delocalized cohomology (even/odd dimensions) at window W.
    #[arg(long, value_name = "W")]
    pub hdl: Option<usize>,

    /// K-theory at window W: rank, torsion, and the odd-part note.
    #[arg(long, value_name = "W")]
    pub k: Option<usize>,

    /// Chern-character triangle check up to degree D at window W.
    #[arg(long, num_args = 2, value_names = ["D", "W"])]
    pub chern: Option<Vec<usize>>,

    /// Fixed-point push-forward demonstrations truncated at degree D.
    #[arg(long, value_name = "D")]
    pub ab: Option<usize>,

    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    /// Write the report to a file instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
    Jsonl,
}

/// A run failure, carrying the documented exit code.
#[derive(Clone, Debug)]
pub enum CliError {
    /// Unreadable input, malformed document, or out-of-bounds parameter (exit 1).
    Parse(String),
    /// The space does not satisfy the structural invariants (exit 2).
    Validation(String),
    /// The request falls outside the modeled scope (exit 3).
    Scope(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Scope(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Validation(m) => write!(f, "validation error: {m}"),
            CliError::Scope(m) => write!(f, "out of scope: {m}"),
        }
    }
}

fn theory_error(e: TheoryError) -> CliError {
    match e {
        TheoryError::OutOfScope(m) => CliError::Scope(m),
        other => CliError::Validation(other.to_string()),
    }
}

/// Registered builder names, in the order they are documented.
pub fn builder_names() -> &'static [&'static str] {
    &[
        "appendix-sphere",
        "sphere-z2",
        "mobius",
        "trivial-point-s1",
        "trivial-circle-t1",
        "free-circle-z2",
    ]
}

/// Builds a registered example space; the space is renamed to the registry key so that
/// reports are stable across builder-internal naming.
pub fn build_named(name: &str) -> Option<ResolutionSpace> {
    let mut s = match name {
        "appendix-sphere" => build_sphere_rotation(circle_sphere_inclusion()).ok()?,
        "sphere-z2" => build_sphere_rotation(z2_sphere_inclusion()).ok()?,
        "mobius" => build_mobius_example(),
        "trivial-point-s1" => build_trivial_action(GroupDesc::circle(), point()),
        "trivial-circle-t1" => build_trivial_action(GroupDesc::circle(), circle_cells(2)),
        "free-circle-z2" => {
            build_free_action(GroupDesc::Finite(cyclic(2)), circle_cells(2))
        }
        _ => return None,
    };
    s.name = name.to_string();
    Some(s)
}

fn load_space(input: &str) -> Result<ResolutionSpace, CliError> {
    if let Some(s) = build_named(input) {
        return Ok(s);
    }
    let path = std::path::Path::new(input);
    if !path.exists() {
        return Err(CliError::Parse(format!(
            "'{input}' is neither a registered builder ({}) nor an existing file",
            builder_names().join(", ")
        )));
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read '{input}': {e}")))?;
    parse_space(&text).map_err(|e| CliError::Parse(e.to_string()))
}

/// One report line: operation, parameter string, key and value. All three output
/// formats render the same row stream.
#[derive(Clone, Debug)]
pub struct Row {
    pub op: String,
    pub params: String,
    pub key: String,
    pub value: String,
}

fn row(op: &str, params: &str, key: &str, value: impl Into<String>) -> Row {
    Row {
        op: op.to_string(),
        params: params.to_string(),
        key: key.to_string(),
        value: value.into(),
    }
}

/// Outcome of a run: the rendered rows plus the first error, if any. The rows gathered
/// before the error are still rendered, so a failing validation lists its problems.
pub struct RunOutcome {
    pub rows: Vec<Row>,
    pub space: String,
    pub error: Option<CliError>,
}

impl RunOutcome {
    pub fn code(&self) -> i32 {
        self.error.as_ref().map_or(0, CliError::code)
    }
}

const MAX_PARAM: usize = 64;

fn check_bound(value: usize, what: &str) -> Result<(), CliError> {
    if value > MAX_PARAM {
        return Err(CliError::Parse(format!(
            "{what} = {value} exceeds the documented bound {MAX_PARAM}"
        )));
    }
    Ok(())
}

/// Runs all requested computations in the fixed order validate, hg, hdl, k, chern, ab.
pub fn run(cli: &Cli) -> RunOutcome {
    let mut rows = Vec::new();
    let space = match load_space(&cli.input) {
        Ok(s) => s,
        Err(e) => {
            return RunOutcome {
                rows,
                space: cli.input.clone(),
                error: Some(e),
            };
        }
    };
    let error = run_ops(cli, &space, &mut rows).err();
    RunOutcome {
        rows,
        space: space.name,
        error,
    }
}

fn run_ops(cli: &Cli, space: &ResolutionSpace, rows: &mut Vec<Row>) -> Result<(), CliError> {
    for (name, value) in [("D", cli.hg), ("W", cli.hdl), ("W", cli.k), ("D", cli.ab)] {
        if let Some(v) = value {
            check_bound(v, name)?;
        }
    }
    if let Some(dw) = &cli.chern {
        check_bound(dw[0], "D")?;
        check_bound(dw[1], "W")?;
    }

    let nothing_requested = !cli.validate
        && cli.hg.is_none()
        && cli.hdl.is_none()
        && cli.k.is_none()
        && cli.chern.is_none()
        && cli.ab.is_none();
    let mut invalid = false;
    if cli.validate || nothing_requested {
        let report = validate_resolution(space);
        rows.push(row(
            "validate",
            "",
            "status",
            if report.is_valid() { "ok" } else { "invalid" },
        ));
        for p in &report.problems {
            rows.push(row("validate", "", "problem", p.clone()));
        }
        invalid = !report.is_valid();
    }

    if let Some(d) = cli.hg {
        let params = format!("D={d}");
        let result = equivariant_cohomology(space, d).map_err(theory_error)?;
        rows.push(row("H_G", &params, "dims", join_usizes(&result.dims)));
    }
    if let Some(w) = cli.hdl {
        let params = format!("W={w}");
        let result = delocalized_cohomology(space, w).map_err(theory_error)?;
        rows.push(row("H_dl", &params, "even", result.dims[0].to_string()));
        rows.push(row("H_dl", &params, "odd", result.dims[1].to_string()));
    }
    if let Some(w) = cli.k {
        let params = format!("W={w}");
        let (result, _) = k_theory(space, w).map_err(theory_error)?;
        rows.push(row("K", &params, "rank", result.dims[0].to_string()));
        let torsion = if result.torsion.is_empty() {
            "none".to_string()
        } else {
            result
                .torsion
                .iter()
                .map(|t| t.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        rows.push(row("K", &params, "torsion", torsion));
        if let Some(note) = &result.note {
            rows.push(row("K", &params, "note", note.clone()));
        }
    }
    if let Some(dw) = &cli.chern {
        let (d, w) = (dw[0], dw[1]);
        let params = format!("D={d} W={w}");
        let report = chern_triangle_check(space, d, w).map_err(theory_error)?;
        rows.push(row(
            "chern",
            &params,
            "status",
            if report.pass() { "pass" } else { "fail" },
        ));
        rows.push(row("chern", &params, "generators", report.generators.to_string()));
        rows.push(row(
            "chern",
            &params,
            "even-classes",
            report.dl_even_dim.to_string(),
        ));
        for p in &report.problems {
            rows.push(row("chern", &params, "problem", p.clone()));
        }
    }
    if let Some(d) = cli.ab {
        push_ab_rows(space, d, rows)?;
    }

    if invalid {
        return Err(CliError::Validation(
            "the space does not satisfy the structural invariants (see the report)".into(),
        ));
    }
    Ok(())
}

/// The push-forward demonstrations: they need a model with exactly two point strata
/// whose common isotropy rotates the two normal directions with weights +1 and -1.
fn push_ab_rows(
    space: &ResolutionSpace,
    d: usize,
    rows: &mut Vec<Row>,
) -> Result<(), CliError> {
    if d == 0 {
        return Err(CliError::Parse(
            "the push-forward demonstration needs D >= 1".into(),
        ));
    }
    if space.strata.len() != 2 || space.strata.iter().any(|st| st.base.dim() != 0) {
        return Err(CliError::Scope(
            "the push-forward demonstration needs a model with exactly two point strata".into(),
        ));
    }
    let g = &space.strata[0].group;
    if g.lie_dim() != 1 || invariant_poly_basis(g, 1).map_err(|e| theory_error(e.into()))?.dim() != 1
    {
        return Err(CliError::Scope(
            "the push-forward demonstration needs a circle-type isotropy with invariant ring ℚ[x]".into(),
        ));
    }
    let params = format!("D={d}");
    let zero = InvPoly::zero(g, d).map_err(|e| theory_error(e.into()))?;
    let mut one = zero.clone();
    one.components[0][0] = Rat::from(Int::from(1));
    let mut x = zero.clone();
    x.components[1][0] = Rat::from(Int::from(1));
    let weights = (Int::from(1), Int::from(-1));

    let cases: [(&str, InvPoly, InvPoly); 2] = [
        ("push(1,1; +1,-1)", one.clone(), one.clone()),
        ("push(x,0; +1,-1)", x, zero.clone()),
    ];
    for (label, f_north, f_south) in cases {
        let result = ab_pushforward(
            &[(f_north, weights.0.clone()), (f_south, weights.1.clone())],
            d,
        )
        .map_err(theory_error)?;
        rows.push(row("ab", &params, label, poly_string(&result)));
    }
    // The incompatible pair demonstrates the obstruction; its message is the value.
    match ab_pushforward(&[(one, weights.0), (zero, weights.1)], d) {
        Err(TheoryError::Obstruction(m)) => {
            rows.push(row(
                "ab",
                &params,
                "push(1,0; +1,-1)",
                format!("localization obstruction: {m}"),
            ));
        }
        Err(other) => return Err(theory_error(other)),
        Ok(_) => {
            return Err(CliError::Validation(
                "incompatible constants unexpectedly pushed forward".into(),
            ));
        }
    }
    Ok(())
}

fn join_usizes(v: &[usize]) -> String {
    v.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Renders a one-variable invariant polynomial, exact rationals as a/b.
fn poly_string(p: &InvPoly) -> String {
    let mut terms = Vec::new();
    for (j, c) in p.components.iter().enumerate() {
        let Some(v) = c.first() else { continue };
        if v.is_zero() {
            continue;
        }
        let coeff = v.to_string();
        terms.push(match j {
            0 => coeff,
            1 if coeff == "1" => "x".to_string(),
            1 if coeff == "-1" => "-x".to_string(),
            1 => format!("{coeff}*x"),
            _ if coeff == "1" => format!("x^{j}"),
            _ if coeff == "-1" => format!("-x^{j}"),
            _ => format!("{coeff}*x^{j}"),
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ").replace(" + -", " - ")
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Renders the row stream in the chosen format. The text form opens with the space
/// name; CSV carries it per row after a header; JSON lines carry it per object.
pub fn render(outcome: &RunOutcome, format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Text => {
            let _ = writeln!(out, "space: {}", outcome.space);
            for r in &outcome.rows {
                if r.params.is_empty() {
                    let _ = writeln!(out, "{} {}: {}", r.op, r.key, r.value);
                } else {
                    let _ = writeln!(out, "{}[{}] {}: {}", r.op, r.params, r.key, r.value);
                }
            }
        }
        OutputFormat::Csv => {
            let _ = writeln!(out, "space,op,params,key,value");
            for r in &outcome.rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    csv_field(&outcome.space),
                    csv_field(&r.op),
                    csv_field(&r.params),
                    csv_field(&r.key),
                    csv_field(&r.value)
                );
            }
        }
        OutputFormat::Jsonl => {
            for r in &outcome.rows {
                let line = serde_json::json!({
                    "space": outcome.space,
                    "op": r.op,
                    "params": r.params,
                    "key": r.key,
                    "value": r.value,
                });
                let _ = writeln!(out, "{line}");
            }
        }
    }
    out
}

/// Full CLI entry: runs the job, writes the report to stdout or `--out`, sends errors
/// to stderr, and returns the documented exit code.
pub fn run_to_streams(cli: &Cli) -> i32 {
    let outcome = run(cli);
    let text = render(&outcome, cli.format);
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("parse error: cannot write '{}': {e}", path.display());
            return 1;
        }
    } else {
        print!("{text}");
    }
    if let Some(err) = &outcome.error {
        eprintln!("{err}");
    }
    outcome.code()
}
