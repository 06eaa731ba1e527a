//! `blocksieve`: bounds, rule checks, feasibility search and coalgebra analysis.
//!
//! Exit codes: 0 feasible / passing, 1 infeasible / violations, 2 usage or input error.

mod output;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use blocksieve::solver::DEFAULT_NODE_CAP;
use blocksieve::{
    analyze, check, explain, lower_bound, minimal_form, solve_with, BlockSystem, Certificate, Coalgebra,
    FeasibilityProblem, GridBounds, ModeFlags, NspRegime, SolveOptions,
};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use output::{Format, Table};

const NODE_CAP_VAR: &str = "BLOCKSIEVE_NODE_CAP";

#[derive(Parser)]
#[command(name = "blocksieve", version, about = "Necessary conditions and feasibility search for block systems of Hopf algebras")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Worker threads for the search (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Smallest dimension with a minimal form for a group order.
    Bound {
        #[arg(long)]
        group_order: u64,
    },
    /// Check a block-system JSON file against the rules.
    Check {
        file: PathBuf,
        #[command(flatten)]
        mode: Mode,
    },
    /// Decide whether some block system of dimension N and group order r passes the rules.
    Solve {
        #[arg(long)]
        dim: u64,
        #[arg(long)]
        group_order: u64,
        #[command(flatten)]
        mode: Mode,
        #[command(flatten)]
        grid: Grid,
    },
    /// Solve N = t·r for t = 1..t_max.
    Scan {
        #[arg(long)]
        group_order: u64,
        #[arg(long)]
        t_max: u64,
        #[command(flatten)]
        mode: Mode,
        #[command(flatten)]
        grid: Grid,
    },
    /// Group orders r (proper divisors of N) that survive the search.
    Orders {
        #[arg(long)]
        dim: u64,
        #[command(flatten)]
        mode: Mode,
        #[command(flatten)]
        grid: Grid,
    },
    /// Coradical filtration, block system and rule report of a coalgebra JSON file.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        mode: Mode,
    },
}

#[derive(Args, Clone, Copy)]
struct Mode {
    /// Assume no nontrivial skew-primitives (implies --non-cosemisimple).
    #[arg(long)]
    no_skew_primitives: bool,
    /// Assume no skew-primitives exactly when gcd(r, N/r) = 1.
    #[arg(long)]
    auto_nsp: bool,
    /// Require a block above level 0.
    #[arg(long)]
    non_cosemisimple: bool,
}

impl Mode {
    fn flags(self) -> ModeFlags {
        ModeFlags {
            non_cosemisimple: self.non_cosemisimple,
            no_skew_primitives: self.no_skew_primitives,
            auto_nsp: self.auto_nsp,
        }
        .normalized()
    }
}

#[derive(Args, Clone, Copy)]
struct Grid {
    /// Override the highest level searched.
    #[arg(long)]
    max_level: Option<u32>,
    /// Override the largest simple-subcoalgebra size d searched.
    #[arg(long)]
    max_d: Option<u32>,
}

impl Grid {
    fn problem(self, n: u64, r: u64, flags: ModeFlags) -> FeasibilityProblem {
        let mut b = GridBounds::for_problem(n, r);
        if let Some(l) = self.max_level {
            b.max_level = l;
        }
        if let Some(d) = self.max_d {
            b.max_d = d;
        }
        FeasibilityProblem::new(n, r, flags).with_bounds(b)
    }
}

/// Failure that maps to exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

struct Outcome {
    stdout: String,
    /// Header for csv output, which must stay machine-readable.
    stderr: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            eprint!("{}", out.stderr);
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn options() -> Result<SolveOptions, InputError> {
    let mut opts = SolveOptions::default();
    if let Ok(raw) = std::env::var(NODE_CAP_VAR) {
        opts.node_cap = raw
            .trim()
            .parse()
            .map_err(|_| InputError(format!("{NODE_CAP_VAR} must be a non-negative integer, got {raw:?}")))?;
    } else {
        opts.node_cap = DEFAULT_NODE_CAP;
    }
    Ok(opts)
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))
}

fn positive(name: &str, v: u64) -> Result<(), InputError> {
    if v == 0 {
        Err(InputError(format!("--{name} must be positive")))
    } else {
        Ok(())
    }
}

fn regime_line(regime: NspRegime, n: u64, r: u64) -> String {
    let g = gcd(r, n.checked_div(r).unwrap_or(0));
    match regime {
        NspRegime::Derived => format!("regime: no skew-primitives derived (gcd(r, N/r) = gcd({r}, {}) = 1)\n", n / r),
        NspRegime::Assumed => "regime: no skew-primitives assumed (conclusions are conditional on it)\n".to_string(),
        NspRegime::Off if r > 0 && n % r == 0 => {
            format!("regime: skew-primitives allowed (gcd(r, N/r) = gcd({r}, {}) = {g} != 1)\n", n / r)
        }
        NspRegime::Off => format!("regime: skew-primitives allowed ({r} does not divide {n})\n"),
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn regime_name(regime: NspRegime) -> &'static str {
    match regime {
        NspRegime::Off => "off",
        NspRegime::Assumed => "assumed",
        NspRegime::Derived => "derived",
    }
}

fn json(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json output") + "\n"
}

/// Renders a table-shaped report; `header` goes first in text and markdown, to stderr for csv.
fn tabular(format: Format, header: &str, table: &Table, text_tail: &str, value: serde_json::Value, code: u8) -> Outcome {
    let (stdout, stderr) = match format {
        Format::Json => (json(&value), String::new()),
        Format::Csv => (table.csv(), header.to_string()),
        Format::Markdown => {
            let head = if header.is_empty() { String::new() } else { format!("{}\n", header.trim_end()) };
            (format!("{head}{}", table.markdown()), String::new())
        }
        Format::Text => (format!("{header}{}{text_tail}", table.text()), String::new()),
    };
    Outcome { stdout, stderr, code }
}

fn run(cli: &Cli) -> Result<Outcome, InputError> {
    match &cli.command {
        Command::Bound { group_order } => bound(cli.format, *group_order),
        Command::Check { file, mode } => check_file(cli.format, file, *mode),
        Command::Solve { dim, group_order, mode, grid } => solve_cmd(cli.format, *dim, *group_order, *mode, *grid),
        Command::Scan { group_order, t_max, mode, grid } => scan_cmd(cli.format, *group_order, *t_max, *mode, *grid),
        Command::Orders { dim, mode, grid } => orders_cmd(cli.format, *dim, *mode, *grid),
        Command::Analyze { file, mode } => analyze_cmd(cli.format, file, *mode),
    }
}

fn bound(format: Format, r: u64) -> Result<Outcome, InputError> {
    positive("group-order", r)?;
    let (n_min, ds) = lower_bound(r);
    let set = ds.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    let header = format!("N_min = {n_min}, d in {{{set}}}\n");
    let mut table = Table::new(vec!["d", "total", "minimal_form"]);
    for &d in &ds {
        let form = minimal_form(r, d);
        table.push(vec![d.to_string(), form.total_dim().to_string(), form.to_string()]);
    }
    let value = serde_json::json!({
        "group_order": r,
        "n_min": n_min,
        "argmin": ds,
        "minimal_forms": ds.iter().map(|&d| minimal_form(r, d)).collect::<Vec<_>>(),
    });
    Ok(tabular(format, &header, &table, "", value, 0))
}

fn check_file(format: Format, path: &Path, mode: Mode) -> Result<Outcome, InputError> {
    let system = BlockSystem::from_json(&read(path)?)?;
    let r = system.group_order();
    let n = system.total_dim();
    let (flags, regime) = FeasibilityProblem::new(n, r, mode.flags()).effective_flags();
    let violations = check(&system, flags);
    let code = u8::from(!violations.is_empty());
    let mut header = String::new();
    if mode.auto_nsp {
        header.push_str(&regime_line(regime, n, r));
    }
    let _ = writeln!(header, "system: {system} (total {n})");
    let mut table = Table::new(vec!["rule", "name", "indices", "message"]);
    for v in &violations {
        let idx = v.indices.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        table.push(vec![v.rule.id().to_string(), v.rule.name().to_string(), idx, v.message.clone()]);
    }
    let value = serde_json::json!({
        "system": system,
        "total_dim": n,
        "nsp_regime": regime,
        "violations": violations,
        "passes": violations.is_empty(),
    });
    if format == Format::Text {
        let mut out = header;
        if violations.is_empty() {
            out.push_str("ok: all rules pass\n");
        }
        for v in &violations {
            let _ = writeln!(out, "{}", explain(v));
        }
        return Ok(Outcome { stdout: out, stderr: String::new(), code });
    }
    Ok(tabular(format, &header, &table, "", value, code))
}

fn certificate_text(cert: &Certificate, n: u64, r: u64) -> String {
    let mut out = String::new();
    if let Some(w) = &cert.witness {
        let _ = writeln!(out, "feasible: N={n} r={r}");
        let _ = writeln!(out, "witness: {w}");
    } else {
        let _ = writeln!(out, "infeasible: N={n} r={r}");
        if let Some(reason) = &cert.reason {
            let _ = writeln!(out, "reason: {reason}");
        }
        for case in cert.refutation.iter().flatten() {
            let _ = writeln!(out, "case {}: first closed by {} ({} nodes)", case.case, case.closing_rule, case.nodes);
        }
    }
    let _ = writeln!(out, "nodes: {}", cert.stats.nodes);
    if !cert.stats.prunes.is_empty() {
        let _ = writeln!(out, "prunes: {}", cert.stats.summary());
    }
    out
}

fn solve_cmd(format: Format, n: u64, r: u64, mode: Mode, grid: Grid) -> Result<Outcome, InputError> {
    positive("dim", n)?;
    positive("group-order", r)?;
    let problem = grid.problem(n, r, mode.flags());
    let cert = solve_with(&problem, options()?)?;
    let code = u8::from(!cert.is_feasible());
    let header = if mode.auto_nsp { regime_line(cert.nsp_regime, n, r) } else { String::new() };
    let mut table = Table::new(vec!["level", "d1", "d2", "dim"]);
    if let Some(w) = &cert.witness {
        for (k, v) in w.entries() {
            table.push(vec![k.level.to_string(), k.d1.to_string(), k.d2.to_string(), v.to_string()]);
        }
    } else {
        table = Table::new(vec!["case", "closing_rule", "nodes"]);
        for c in cert.refutation.iter().flatten() {
            table.push(vec![c.case.clone(), c.closing_rule.clone(), c.nodes.to_string()]);
        }
    }
    let mut value = serde_json::to_value(&cert).expect("certificate serializes");
    value["dim"] = n.into();
    value["group_order"] = r.into();
    if format == Format::Text {
        let stdout = header + &certificate_text(&cert, n, r);
        return Ok(Outcome { stdout, stderr: String::new(), code });
    }
    Ok(tabular(format, &header, &table, "", value, code))
}

fn summary(cert: &Certificate) -> String {
    match (&cert.witness, &cert.reason) {
        (Some(w), _) => format!("witness {w}"),
        (None, Some(reason)) if cert.stats.nodes == 0 => reason.clone(),
        _ => cert.stats.summary(),
    }
}

fn verdict_word(cert: &Certificate) -> &'static str {
    if cert.is_feasible() {
        "feasible"
    } else {
        "infeasible"
    }
}

fn solve_many(problems: &[FeasibilityProblem]) -> Result<Vec<Certificate>, InputError> {
    let opts = options()?;
    let certs: Vec<_> = problems.par_iter().map(|p| solve_with(p, opts)).collect();
    certs.into_iter().map(|c| c.map_err(InputError::from)).collect()
}

fn scan_cmd(format: Format, r: u64, t_max: u64, mode: Mode, grid: Grid) -> Result<Outcome, InputError> {
    positive("group-order", r)?;
    positive("t-max", t_max)?;
    let problems: Vec<_> = (1..=t_max).map(|t| grid.problem(t * r, r, mode.flags())).collect();
    let certs = solve_many(&problems)?;
    let mut header = String::new();
    if mode.auto_nsp {
        header.push_str("regime: decided per row from gcd(r, N/r); see the regime column\n");
    }
    let mut cols = vec!["t", "N", "verdict", "summary"];
    if mode.auto_nsp {
        cols.push("regime");
    }
    let mut table = Table::new(cols);
    let mut rows = Vec::new();
    for (t, cert) in (1..=t_max).zip(&certs) {
        let mut row = vec![t.to_string(), (t * r).to_string(), verdict_word(cert).to_string(), summary(cert)];
        if mode.auto_nsp {
            row.push(regime_name(cert.nsp_regime).to_string());
        }
        table.push(row);
        rows.push(serde_json::json!({"t": t, "n": t * r, "verdict": cert.verdict, "summary": summary(cert), "certificate": cert}));
    }
    let excluded: Vec<u64> = (1..=t_max).zip(&certs).filter(|(_, c)| !c.is_feasible()).map(|(t, _)| t).collect();
    let tail = format!("excluded t: {}\n", set_text(&excluded));
    let value = serde_json::json!({"group_order": r, "t_max": t_max, "excluded": excluded, "rows": rows});
    Ok(tabular(format, &header, &table, &tail, value, 0))
}

fn set_text(v: &[u64]) -> String {
    format!("{{{}}}", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn orders_cmd(format: Format, n: u64, mode: Mode, grid: Grid) -> Result<Outcome, InputError> {
    positive("dim", n)?;
    let divisors: Vec<u64> = (1..n).filter(|r| n % r == 0).collect();
    let problems: Vec<_> = divisors.iter().map(|&r| grid.problem(n, r, mode.flags())).collect();
    let certs = solve_many(&problems)?;
    let mut cols = vec!["r", "verdict", "summary"];
    if mode.auto_nsp {
        cols.push("regime");
    }
    let mut table = Table::new(cols);
    for (r, cert) in divisors.iter().zip(&certs) {
        let mut row = vec![r.to_string(), verdict_word(cert).to_string(), summary(cert)];
        if mode.auto_nsp {
            row.push(regime_name(cert.nsp_regime).to_string());
        }
        table.push(row);
    }
    let admissible: Vec<u64> = divisors.iter().zip(&certs).filter(|(_, c)| c.is_feasible()).map(|(r, _)| *r).collect();
    let header = if mode.auto_nsp {
        "regime: decided per row from gcd(r, N/r); see the regime column\n".to_string()
    } else {
        String::new()
    };
    let tail = format!("surviving group orders for N={n}: {}\n", set_text(&admissible));
    let value = serde_json::json!({
        "dim": n,
        "admissible": admissible,
        "survey": divisors.iter().zip(&certs).map(|(r, c)| serde_json::json!({"group_order": r, "certificate": c})).collect::<Vec<_>>(),
    });
    Ok(tabular(format, &header, &table, &tail, value, u8::from(admissible.is_empty())))
}

fn analyze_cmd(format: Format, path: &Path, mode: Mode) -> Result<Outcome, InputError> {
    let coalgebra = Coalgebra::from_json(&read(path)?)?;
    let result = analyze(&coalgebra, mode.flags())?;
    let code = u8::from(!result.passes());
    let n = result.dim as u64;
    let r = result.group_order();
    let header = if mode.auto_nsp { regime_line(result.nsp_regime, n, r) } else { String::new() };
    let mut table = Table::new(vec!["level", "d1", "d2", "dim"]);
    for (k, v) in result.block_system.entries() {
        table.push(vec![k.level.to_string(), k.d1.to_string(), k.d2.to_string(), v.to_string()]);
    }
    if format != Format::Text {
        return Ok(tabular(format, &header, &table, "", result.to_json(), code));
    }
    let mut out = header;
    let _ = writeln!(out, "coalgebra: dim {n}, group order r = {r}");
    let dims = result.filtration.dims().iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    let _ = writeln!(out, "coradical filtration dims: [{dims}]");
    out.push_str("simple components:\n");
    for c in &result.components {
        let kind = if c.grouplike { ", grouplike" } else { "" };
        let _ = writeln!(out, "  {} (d={}{kind})", c.label, c.d);
    }
    if !result.q_table.is_empty() {
        out.push_str("isotypic dimensions (n, tau, mu):\n");
        for (level, t, m, v) in result.labelled_q_table() {
            let _ = writeln!(out, "  ({level}, {t}, {m}): {v}");
        }
    }
    out.push_str("block system:\n");
    for line in table.text().lines() {
        let _ = writeln!(out, "  {line}");
    }
    if result.violations.is_empty() {
        out.push_str("violations: none\n");
    } else {
        out.push_str("violations:\n");
        for v in &result.violations {
            let _ = writeln!(out, "  {}", explain(v));
        }
    }
    let _ = writeln!(out, "verdict: {}", result.verdict_line());
    Ok(Outcome { stdout: out, stderr: String::new(), code })
}
