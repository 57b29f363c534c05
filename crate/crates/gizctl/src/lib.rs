//! `gizctl` command dispatch, kept separate from `main` so tests can drive
//! it in-process.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use gizatullin::autgroup::{
    aut_generated_by_fibrations, fibration_graph_shape, presentation_for, toric_report, GraphShape,
};
use gizatullin::configinv::{fmt_q, q_self_reversed, symmetry_group};
use gizatullin::document::{emit_surface, parse_surface};
use gizatullin::dot::export_dot;
use gizatullin::extdiv::{
    classify_components, exceptional_components_of, exceptional_components_of_reversed, validate,
    DiagnosticKind, ExtendedDivisor,
};
use gizatullin::orbits::{orbit_decomposition, Verdict};
use gizatullin::serieslift::{
    lift_word_series, verify_claim3, TriangularMap, TurnWord, DEFAULT_ORDER,
};
use gizatullin::sweep::{enumerate_sweep, Property};
use gizatullin::zigzag::{reverse_chain, standardize_with, SearchBounds, WeightedChain};
use gizatullin::Poly;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "gizctl",
    version,
    about = "Combinatorics of Gizatullin surfaces"
)]
pub struct Cli {
    /// Append a JSON block after the text report.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bring a boundary chain to standard form.
    Standardize {
        /// Surface file or an inline chain such as `0,-1,-2,-3`.
        #[arg(allow_hyphen_values = true)]
        input: String,
    },
    /// Reverse a standard or 1-standard chain.
    Reverse {
        #[arg(allow_hyphen_values = true)]
        input: String,
    },
    /// Validate a surface and type its boundary components.
    Classify { file: PathBuf },
    /// Exceptional components of a surface and of its reversal.
    Exceptional { file: PathBuf },
    /// Root-of-unity symmetry of the base points and self-reversal of Q.
    Invariant { file: PathBuf },
    /// Orbit decomposition and transitivity verdict.
    Orbits { file: PathBuf },
    /// Shape of the fibration graph.
    GraphShape { file: PathBuf },
    /// Presentation of the automorphism group.
    Autgroup { file: PathBuf },
    /// Lift a triangular map `(a x + P(y), b y)` along a word in L/R.
    Lift {
        #[arg(long, allow_hyphen_values = true, default_value = "-")]
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long = "P", allow_hyphen_values = true, default_value = "0")]
        p: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Toric surface data for the cyclic quotient `(d, e)`.
    Toric {
        d: i64,
        #[arg(allow_hyphen_values = true)]
        e: i64,
    },
    /// Sweep every blowup word up to a length and check a property.
    Enumerate {
        #[arg(long, default_value_t = 9)]
        max_blowups: usize,
        #[arg(long, default_value = "claim3")]
        check: String,
    },
    /// Graphviz rendering of the extended divisor.
    ExportDot {
        file: PathBuf,
        /// Annotate matching atoms.
        #[arg(long)]
        atoms: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parse a surface file and print it back in canonical form.
    Emit { file: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn invalid(msg: impl Into<String>) -> Self {
        Self {
            code: EXIT_INVALID,
            stdout: String::new(),
            stderr: format!("error: {}\n", msg.into()),
        }
    }
}

struct Report {
    text: String,
    data: Value,
    code: i32,
}

impl Report {
    fn new(text: String, data: Value) -> Self {
        Self {
            text,
            data,
            code: EXIT_OK,
        }
    }
}

type Run = Result<Report, String>;

/// Search bounds for `standardize`, overridden by `GIZCTL_MAX_DEPTH`.
pub fn search_bounds() -> SearchBounds {
    let mut bounds = SearchBounds::default();
    if let Some(depth) = std::env::var("GIZCTL_MAX_DEPTH")
        .ok()
        .and_then(|v| v.trim().parse().ok())
    {
        bounds.max_depth = depth;
    }
    bounds
}

fn load(path: &PathBuf) -> Result<ExtendedDivisor, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let div = parse_surface(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let structural: Vec<_> = validate(&div)
        .into_iter()
        .filter(|d| d.kind == DiagnosticKind::Structural)
        .map(|d| format!("{}: {}", d.location, d.message))
        .collect();
    if !structural.is_empty() {
        return Err(structural.join("; "));
    }
    Ok(div)
}

fn chain_input(input: &str) -> Result<WeightedChain, String> {
    if let Ok(chain) = input.parse::<WeightedChain>() {
        return Ok(chain);
    }
    Ok(load(&PathBuf::from(input))?.chain().clone())
}

fn set_text<T: std::fmt::Debug>(set: &std::collections::BTreeSet<T>) -> String {
    let items: Vec<String> = set.iter().map(|x| format!("{x:?}")).collect();
    format!("{{{}}}", items.join(","))
}

fn cmd_standardize(input: &str) -> Run {
    let chain = chain_input(input)?;
    let (std_chain, log) = standardize_with(&chain, search_bounds()).map_err(|e| e.to_string())?;
    let moves: Vec<String> = log.iter().map(ToString::to_string).collect();
    let text = format!(
        "{chain} -> {std_chain}\nmoves: {}\n",
        if moves.is_empty() {
            "-".to_string()
        } else {
            moves.join(" ")
        }
    );
    Ok(Report::new(
        text,
        json!({"input": chain.weights(), "standard": std_chain.weights(), "moves": moves}),
    ))
}

fn cmd_reverse(input: &str) -> Run {
    let chain = chain_input(input)?;
    let rev = reverse_chain(&chain).map_err(|e| e.to_string())?;
    Ok(Report::new(
        format!("{chain} -> {rev}\n"),
        json!({"input": chain.weights(), "reversed": rev.weights()}),
    ))
}

fn cmd_classify(file: &PathBuf) -> Run {
    let div = load(file)?;
    let types = classify_components(&div);
    let mut text = String::new();
    let mut rows = Vec::new();
    for (i, t) in types.iter() {
        let _ = writeln!(text, "C_{i}: {t} (r = {})", div.r(i));
        rows.push(json!({"component": i, "type": t.to_string(), "r": div.r(i)}));
    }
    let warnings: Vec<String> = validate(&div)
        .into_iter()
        .map(|d| format!("{}: {}", d.location, d.message))
        .collect();
    for w in &warnings {
        let _ = writeln!(text, "warning: {w}");
    }
    let star = div.require_condition_star();
    let _ = writeln!(
        text,
        "condition (*): {}",
        match &star {
            Ok(()) => "holds".to_string(),
            Err(e) => format!("fails ({e})"),
        }
    );
    Ok(Report::new(
        text,
        json!({"components": rows, "warnings": warnings, "condition_star": star.is_ok()}),
    ))
}

fn cmd_exceptional(file: &PathBuf) -> Run {
    let div = load(file)?;
    let e = exceptional_components_of(&div).map_err(|e| e.to_string())?;
    let e_rev = exceptional_components_of_reversed(&div).map_err(|e| e.to_string())?;
    let mut text = format!("E_D = {}; E_D^v = {}\n", set_text(&e), set_text(&e_rev));
    let mut rows = Vec::new();
    for row in verify_claim3(&div).map_err(|e| e.to_string())? {
        let _ = writeln!(
            text,
            "C_{}: word {}; (k,l) = ({},{}){}",
            row.component,
            row.word,
            row.k,
            row.l,
            if row.exceptional { "; exceptional" } else { "" }
        );
        rows.push(serde_json::to_value(&row).expect("row serializes"));
    }
    Ok(Report::new(
        text,
        json!({"exceptional": e, "exceptional_reversed": e_rev, "charts": rows}),
    ))
}

fn cmd_invariant(file: &PathBuf) -> Run {
    let div = load(file)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for i in 2..=div.n() {
        let points = div.points_on(i);
        if points.is_empty() {
            continue;
        }
        let sym = symmetry_group(&points);
        let _ = writeln!(text, "A_{i} = {points}; d = {}; m = {}", sym.d, sym.m);
        rows.push(json!({"component": i, "points": points.to_string(), "d": sym.d, "m": sym.m}));
    }
    let rev = q_self_reversed(&div).map_err(|e| e.to_string())?;
    let gammas: Vec<String> = rev
        .gammas
        .iter()
        .map(|(i, g)| match g {
            Some(g) => format!("γ_{i} = {g}"),
            None => format!("γ_{i} = none"),
        })
        .collect();
    let _ = writeln!(
        text,
        "Q = Q^v: {}{}",
        rev.equal,
        if gammas.is_empty() {
            String::new()
        } else {
            format!(" ({})", gammas.join(", "))
        }
    );
    Ok(Report::new(
        text,
        json!({"components": rows, "self_reversed": rev.equal, "gammas": gammas}),
    ))
}

fn cmd_orbits(file: &PathBuf) -> Run {
    let div = load(file)?;
    let report = orbit_decomposition(&div).map_err(|e| e.to_string())?;
    let orbits = match report.orbit_count() {
        Some(c) => format!("{c} (exact)"),
        None if report.verdict == Verdict::Transitive => "1".to_string(),
        None => "unknown".to_string(),
    };
    let mut text = format!(
        "verdict: {}; fixed points: {}; orbits: {orbits}\n",
        report.verdict,
        report.fixed_points.len()
    );
    for part in &report.parts {
        let atoms: Vec<String> = part.atoms.iter().map(ToString::to_string).collect();
        let _ = writeln!(
            text,
            "O_{},{}: {}",
            part.component,
            part.orbit,
            atoms.join(" ")
        );
    }
    let _ = writeln!(text, "O_0: {}", report.o0);
    let mut out = Report::new(
        text,
        serde_json::to_value(&report).expect("report serializes"),
    );
    if report.verdict == Verdict::Undetermined {
        out.code = EXIT_UNDECIDED;
    }
    Ok(out)
}

fn shape_json(shape: &GraphShape) -> Value {
    match shape {
        GraphShape::Loop { gammas } => json!({
            "shape": shape.name(),
            "gammas": gammas.iter().map(|(i, g)| json!([i, g.to_string()])).collect::<Vec<_>>(),
        }),
        GraphShape::TwoVertices { reason } => json!({"shape": shape.name(), "reason": reason}),
        GraphShape::Unknown { feathered } => json!({"shape": shape.name(), "feathered": feathered}),
    }
}

fn cmd_graph_shape(file: &PathBuf) -> Run {
    let div = load(file)?;
    let shape = fibration_graph_shape(&div).map_err(|e| e.to_string())?;
    let mut out = Report::new(format!("shape: {shape}\n"), shape_json(&shape));
    if matches!(shape, GraphShape::Unknown { .. }) {
        out.code = EXIT_UNDECIDED;
    }
    Ok(out)
}

fn cmd_autgroup(file: &PathBuf) -> Run {
    let div = load(file)?;
    let shape = fibration_graph_shape(&div).map_err(|e| e.to_string())?;
    if matches!(shape, GraphShape::Unknown { .. }) {
        let mut out = Report::new(
            format!("shape: {shape}\nAut: undetermined\n"),
            shape_json(&shape),
        );
        out.code = EXIT_UNDECIDED;
        return Ok(out);
    }
    let pres = presentation_for(&shape).map_err(|e| e.to_string())?;
    let generated = aut_generated_by_fibrations(&div).map_err(|e| e.to_string())?;
    let mut text = format!("shape: {}; Aut = {}\n", shape.name(), pres.formula);
    for (name, meaning) in &pres.factors {
        let _ = writeln!(text, "  {name} = {meaning}");
    }
    let _ = writeln!(text, "  edge group: {}", pres.edge_group);
    let _ = writeln!(text, "generated by fibered modifications: {generated}");
    Ok(Report::new(
        text,
        json!({"shape": shape_json(&shape), "presentation": pres, "generated_by_fibrations": generated}),
    ))
}

fn parse_q(flag: &str, s: &str) -> Result<num_rational::BigRational, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("--{flag}: {s:?} is not a rational number"))
}

fn cmd_lift(word: &str, a: &str, b: &str, p: &str, order: usize) -> Run {
    let turns: TurnWord = word.parse().map_err(|e| format!("--word: {e}"))?;
    let p: Poly = p.parse().map_err(|e| format!("--P: {e}"))?;
    let psi =
        TriangularMap::new(parse_q("a", a)?, parse_q("b", b)?, p).map_err(|e| e.to_string())?;
    let form = lift_word_series(&psi, &turns.0, order).map_err(|e| e.to_string())?;
    let text = format!(
        "(k,l) = ({},{}); alpha = {}; beta = {}\nR = {}\nS = {}\nsharp: {}\n",
        form.k,
        form.l,
        fmt_q(&form.alpha),
        fmt_q(&form.beta),
        form.r,
        form.s,
        form.sharp
    );
    Ok(Report::new(
        text,
        json!({
            "k": form.k, "l": form.l,
            "alpha": fmt_q(&form.alpha), "beta": fmt_q(&form.beta),
            "alpha_exp": form.alpha_exp, "beta_exp": form.beta_exp,
            "R": form.r.to_string(), "S": form.s.to_string(), "sharp": form.sharp,
        }),
    ))
}

fn cmd_toric(d: i64, e: i64) -> Run {
    let rep = toric_report(d, e).map_err(|e| e.to_string())?;
    let pres = presentation_for(&rep.shape).map_err(|e| e.to_string())?;
    let mut text = format!(
        "e' = {}; shape: {}; Aut = {}\n",
        rep.e_prime,
        rep.shape.name(),
        pres.formula
    );
    let boxes = |b: &Option<gizatullin::zigzag::HJFraction>| {
        b.as_ref()
            .map(|h| format!("{:?}", h.expansion))
            .unwrap_or_else(|| "[]".into())
    };
    let _ = writeln!(
        text,
        "boundary: {}; feather: {}",
        boxes(&rep.boundary_box),
        boxes(&rep.feather_box)
    );
    let _ = writeln!(text, "divisor: {}", rep.divisor);
    Ok(Report::new(
        text,
        json!({
            "d": rep.d, "e": rep.e, "e_prime": rep.e_prime,
            "shape": rep.shape.name(), "presentation": pres.formula,
            "divisor": rep.divisor.weights(),
        }),
    ))
}

fn cmd_enumerate(max: usize, check: &str) -> Run {
    let property: Property = check.parse().map_err(|e| format!("--check: {e}"))?;
    let summary = enumerate_sweep(max, property).map_err(|e| e.to_string())?;
    let mut out = Report::new(
        format!("{summary}\n"),
        serde_json::to_value(&summary).expect("summary serializes"),
    );
    if summary.counterexamples > 0 {
        out.code = EXIT_UNDECIDED;
    }
    Ok(out)
}

fn cmd_export_dot(file: &PathBuf, atoms: bool, out: &Option<PathBuf>) -> Run {
    let div = load(file)?;
    let dot = export_dot(&div, atoms);
    match out {
        Some(path) => {
            std::fs::write(path, &dot).map_err(|e| format!("{}: {e}", path.display()))?;
            Ok(Report::new(
                format!("wrote {}\n", path.display()),
                json!({"out": path.display().to_string()}),
            ))
        }
        None => Ok(Report::new(dot.clone(), json!({"dot": dot}))),
    }
}

fn cmd_emit(file: &PathBuf) -> Run {
    let div = load(file)?;
    let text = emit_surface(&div);
    let data: Value = serde_json::from_str(&text).expect("emitted JSON");
    Ok(Report::new(text, data))
}

pub fn run_command(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Standardize { input } => cmd_standardize(input),
        Command::Reverse { input } => cmd_reverse(input),
        Command::Classify { file } => cmd_classify(file),
        Command::Exceptional { file } => cmd_exceptional(file),
        Command::Invariant { file } => cmd_invariant(file),
        Command::Orbits { file } => cmd_orbits(file),
        Command::GraphShape { file } => cmd_graph_shape(file),
        Command::Autgroup { file } => cmd_autgroup(file),
        Command::Lift {
            word,
            a,
            b,
            p,
            order,
        } => cmd_lift(word, a, b, p, *order),
        Command::Toric { d, e } => cmd_toric(*d, *e),
        Command::Enumerate { max_blowups, check } => cmd_enumerate(*max_blowups, check),
        Command::ExportDot { file, atoms, out } => cmd_export_dot(file, *atoms, out),
        Command::Emit { file } => cmd_emit(file),
    };
    match result {
        Err(msg) => Outcome::invalid(msg),
        Ok(report) => {
            let mut stdout = report.text;
            if cli.json {
                stdout.push_str(&serde_json::to_string_pretty(&report.data).expect("json"));
                stdout.push('\n');
            }
            Outcome {
                code: report.code,
                stdout,
                stderr: String::new(),
            }
        }
    }
}

/// Parses `args` (program name first) and runs; clap errors exit with 2.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run_command(&cli),
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                Outcome::ok(rendered)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            }
        }
    }
}
