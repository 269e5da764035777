//! Command-line front end. `run` returns the process exit code so tests can drive it.

use std::io::Write;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use crate::audit::{claims, render_report, run_audit, AuditOptions, Status};
use crate::closure::{compare_subalgebras, compute_closure, gpb_ops, jacobian_ops, Ambient, ClosureResult, GpbAmbient, JacAmbient, OpKind};
use crate::dsl::{eval_expr, format_gpb, format_jac, parse_expr, EvalContext, Expr, Value};
use crate::error::{Error, Result};
use crate::gpb::{GpbClass, Preset};
use crate::jacobian::{JacClass, MAX_GENUS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "jacring", version, about = "Exact tautological-ring calculus on J and its P1-bundle P")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate an expression and print the result.
    Eval(EvalArgs),
    /// Run the claim checks and print a verdict report.
    Audit(AuditArgs),
    /// Close a set of classes under operators and report dimensions.
    Closure(ClosureArgs),
    /// Print W_i, the extended classes and the pairing matrix.
    Table(TableArgs),
    /// Evaluate two expressions and report whether they are equal.
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
struct ModelArgs {
    #[arg(long, short)]
    genus: usize,
    #[arg(long, default_value = "geometric")]
    preset: String,
    /// Codimension-1 class c with H^2 = pi^*(c) H.
    #[arg(long, allow_hyphen_values = true)]
    twist: Option<String>,
    /// Codimension-1 class s with S_y = H + pi^*(s).
    #[arg(long, allow_hyphen_values = true)]
    shift: Option<String>,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(allow_hyphen_values = true)]
    expr: String,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(allow_hyphen_values = true)]
    lhs: String,
    #[arg(allow_hyphen_values = true)]
    rhs: String,
}

#[derive(Debug, Args)]
struct AuditArgs {
    /// A genus, a range `a..b` (inclusive) or a comma list.
    #[arg(long, short, default_value = "1..2")]
    genus: String,
    #[arg(long, default_value = "geometric,paper")]
    preset: String,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated claim ids.
    #[arg(long)]
    claims: Option<String>,
    /// Exit with status 1 when any claim is refuted or errored.
    #[arg(long)]
    strict: bool,
    /// Record per-claim wall time (makes output nondeterministic).
    #[arg(long)]
    timings: bool,
    #[arg(long, default_value_t = 24)]
    samples: usize,
    /// Skip claims on P x P above this genus.
    #[arg(long)]
    product_genus_limit: Option<usize>,
    /// Per-claim time budget in seconds.
    #[arg(long)]
    budget: Option<u64>,
    /// List claim ids and exit.
    #[arg(long)]
    list: bool,
}

#[derive(Debug, Args)]
struct ClosureArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Comma-separated expressions; `W`, `piW` and `Wt` expand to families.
    #[arg(long)]
    generators: String,
    #[arg(long, default_value = "all")]
    ops: String,
    /// Compare with the intersection subalgebra generated by these classes.
    #[arg(long)]
    compare_with: Option<String>,
    /// Print a basis of each degree.
    #[arg(long)]
    basis: bool,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long, short)]
    genus: usize,
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Eval(a) => eval_cmd(&a, out),
        Command::Audit(a) => audit_cmd(&a, out),
        Command::Closure(a) => closure_cmd(&a, out),
        Command::Table(a) => table_cmd(&a, out),
        Command::Compare(a) => compare_cmd(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if is_usage_error(&e) {
                EXIT_USAGE
            } else {
                EXIT_FAILURE
            }
        }
    }
}

/// Errors caused by the invocation itself rather than by a computation.
fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse { .. }
            | Error::Sort(_)
            | Error::UnknownPreset(_)
            | Error::UnknownFormat(_)
            | Error::UnknownClaim(_)
            | Error::Usage(_)
    )
}

fn io(e: std::io::Error) -> Error {
    Error::Usage(format!("write failed: {e}"))
}

fn check_genus(g: usize) -> Result<usize> {
    if g == 0 || g > MAX_GENUS {
        return Err(Error::Usage(format!("genus {g} outside 1..={MAX_GENUS}")));
    }
    Ok(g)
}

fn context(m: &ModelArgs) -> Result<EvalContext> {
    let g = check_genus(m.genus)?;
    let preset: Preset = m.preset.parse()?;
    let twist = m.twist.as_deref().map(parse_expr).transpose()?;
    let shift = m.shift.as_deref().map(parse_expr).transpose()?;
    EvalContext::with_twist(g, preset, twist.as_ref(), shift.as_ref())
}

/// Parses and evaluates one expression.
pub fn evaluate(src: &str, ctx: &EvalContext) -> Result<Value> {
    let e = parse_expr(src)?;
    eval_expr(&e, ctx)
}

fn eval_cmd(a: &EvalArgs, out: &mut dyn Write) -> Result<i32> {
    let ctx = context(&a.model)?;
    let v = evaluate(&a.expr, &ctx)?;
    writeln!(out, "{v}").map_err(io)?;
    Ok(EXIT_OK)
}

fn compare_cmd(a: &CompareArgs, out: &mut dyn Write) -> Result<i32> {
    let ctx = context(&a.model)?;
    let lhs = evaluate(&a.lhs, &ctx)?;
    let rhs = evaluate(&a.rhs, &ctx)?;
    if lhs.same_as(&rhs) {
        writeln!(out, "equal").map_err(io)?;
    } else {
        writeln!(out, "different\n  lhs: {lhs}\n  rhs: {rhs}").map_err(io)?;
    }
    Ok(EXIT_OK)
}

/// Parses `2`, `1..4` (inclusive) or `1,3`.
fn parse_genera(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::Usage(format!("bad genus list {s:?}"));
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    out.into_iter().map(check_genus).collect()
}

fn parse_presets(s: &str) -> Result<Vec<Preset>> {
    s.split(',').map(str::trim).filter(|p| !p.is_empty()).map(str::parse).collect()
}

fn audit_cmd(a: &AuditArgs, out: &mut dyn Write) -> Result<i32> {
    if a.list {
        for c in claims() {
            writeln!(out, "{:<28} {}", c.id, c.quote).map_err(io)?;
        }
        return Ok(EXIT_OK);
    }
    let opts = AuditOptions {
        genera: parse_genera(&a.genus)?,
        presets: parse_presets(&a.preset)?,
        claims: a
            .claims
            .as_ref()
            .map(|s| s.split(',').map(|c| c.trim().to_string()).filter(|c| !c.is_empty()).collect()),
        seed: a.seed,
        samples: a.samples,
        product_genus_limit: a.product_genus_limit,
        time_budget: a.budget.map(Duration::from_secs),
        timings: a.timings,
    };
    let report = run_audit(&opts)?;
    let rendered = render_report(&report, if a.json { "json" } else { "text" })?;
    out.write_all(rendered.as_bytes()).map_err(io)?;
    let bad = report.count(Status::RefutedInModel) + report.count(Status::Error);
    Ok(if a.strict && bad > 0 { EXIT_FAILURE } else { EXIT_OK })
}

/// Splits on commas outside brackets and parentheses.
pub fn split_list(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    out.push(cur);
    out.into_iter().map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect()
}

/// Expands the family shortcuts `W`, `piW` and `Wt`.
fn expand_generators(list: &str, g: usize) -> Result<Vec<Expr>> {
    let mut out = Vec::new();
    for tok in split_list(list) {
        match tok.as_str() {
            "W" => out.extend((1..g as i64).map(Expr::W)),
            "piW" => out.extend((1..g as i64).map(|i| Expr::Call(crate::dsl::Func::PiPull, vec![Expr::W(i)]))),
            "Wt" => out.extend((0..=g as i64).map(Expr::Wt)),
            _ => out.push(parse_expr(&tok)?),
        }
    }
    Ok(out)
}

enum Classes {
    J(Vec<JacClass>),
    P(Vec<GpbClass>),
}

fn eval_classes(exprs: &[Expr], ctx: &EvalContext, force_p: bool) -> Result<Classes> {
    let values = exprs.iter().map(|e| eval_expr(e, ctx)).collect::<Result<Vec<_>>>()?;
    let jac = ctx.gpb.jacobian();
    let on_p = force_p || values.iter().any(|v| matches!(v, Value::Gpb(_)));
    let mut js = Vec::new();
    let mut ps = Vec::new();
    for (v, e) in values.into_iter().zip(exprs) {
        match (v, on_p) {
            (Value::Scalar(c), false) => js.push(jac.scalar(c)),
            (Value::Scalar(c), true) => ps.push(ctx.gpb.pi_pullback(&jac.scalar(c))),
            (Value::Jac(x), false) => js.push(x),
            (Value::Gpb(x), true) => ps.push(x),
            (Value::Jac(_), true) => {
                return Err(Error::Sort(format!("{e} is a J-class among P-classes; wrap it in pi*(...)")))
            }
            (v, _) => return Err(Error::Sort(format!("{e} is a {}, not a class", v.sort()))),
        }
    }
    Ok(if on_p { Classes::P(ps) } else { Classes::J(js) })
}

fn write_closure<A: Ambient>(
    out: &mut dyn Write,
    amb: &A,
    res: &ClosureResult<A::Class>,
    ops: &[OpKind],
    basis: bool,
    fmt: impl Fn(&A::Class) -> String,
) -> Result<()> {
    let names: Vec<_> = ops.iter().map(|o| o.name()).collect();
    writeln!(out, "ambient {}, ops {}", amb.label(), names.join(",")).map_err(io)?;
    let state = if res.certificate.saturated { "saturated" } else { "NOT saturated" };
    writeln!(out, "dimension {} ({state}, {} iterations)", res.dim(), res.iterations).map_err(io)?;
    for d in res.dims_by_degree() {
        writeln!(out, "  degree {:>2}: {}", d.degree, d.dim).map_err(io)?;
        if basis {
            for c in &res.graded_basis[&d.degree] {
                writeln!(out, "    {}", fmt(c)).map_err(io)?;
            }
        }
    }
    Ok(())
}

fn write_comparison<A: Ambient>(
    out: &mut dyn Write,
    amb: &A,
    full: &ClosureResult<A::Class>,
    wedge: &ClosureResult<A::Class>,
    fmt: impl Fn(&A::Class) -> String,
) -> Result<()> {
    let cmp = compare_subalgebras(amb, full, wedge)?;
    writeln!(out, "comparison with the intersection subalgebra: {}", cmp.relation).map_err(io)?;
    writeln!(out, "  degree  closure  subalgebra").map_err(io)?;
    for row in &cmp.table {
        writeln!(out, "  {:>6}  {:>7}  {:>10}", row.degree, row.dim_a, row.dim_b).map_err(io)?;
    }
    if let Some(x) = &cmp.a_not_in_b {
        writeln!(out, "  in closure only: {}", fmt(x)).map_err(io)?;
    }
    if let Some(x) = &cmp.b_not_in_a {
        writeln!(out, "  in subalgebra only: {}", fmt(x)).map_err(io)?;
    }
    Ok(())
}

fn closure_cmd(a: &ClosureArgs, out: &mut dyn Write) -> Result<i32> {
    let ctx = context(&a.model)?;
    let g = ctx.genus();
    let kinds = OpKind::parse_list(&a.ops)?;
    let gens = expand_generators(&a.generators, g)?;
    let others = a.compare_with.as_deref().map(|l| expand_generators(l, g)).transpose()?;
    let mut all = gens.clone();
    all.extend(others.iter().flatten().cloned());
    let on_p = matches!(eval_classes(&all, &ctx, false)?, Classes::P(_));
    match eval_classes(&gens, &ctx, on_p)? {
        Classes::J(gs) => {
            let jac = ctx.gpb.jacobian();
            let amb = JacAmbient(jac);
            let res = compute_closure(&amb, &gs, &jacobian_ops(jac, &kinds))?;
            write_closure(out, &amb, &res, &kinds, a.basis, format_jac)?;
            if let Some(o) = &others {
                let Classes::J(os) = eval_classes(o, &ctx, false)? else { unreachable!() };
                let wedge = compute_closure(&amb, &os, &jacobian_ops(jac, &[OpKind::Wedge]))?;
                write_comparison(out, &amb, &res, &wedge, format_jac)?;
            }
        }
        Classes::P(gs) => {
            let amb = GpbAmbient(&ctx.gpb);
            let res = compute_closure(&amb, &gs, &gpb_ops(&ctx.gpb, &kinds, ctx.preset))?;
            write_closure(out, &amb, &res, &kinds, a.basis, format_gpb)?;
            if let Some(o) = &others {
                let Classes::P(os) = eval_classes(o, &ctx, true)? else { unreachable!() };
                let wedge = compute_closure(&amb, &os, &gpb_ops(&ctx.gpb, &[OpKind::Wedge], ctx.preset))?;
                write_comparison(out, &amb, &res, &wedge, format_gpb)?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn table_cmd(a: &TableArgs, out: &mut dyn Write) -> Result<i32> {
    let g = check_genus(a.genus)?;
    let ctx = EvalContext::new(g, Preset::Geometric)?;
    let jac = ctx.gpb.jacobian();
    let w = (0..=g as i64).map(|i| jac.w_class(i)).collect::<Result<Vec<_>>>()?;
    writeln!(out, "g = {g}").map_err(io)?;
    for (i, x) in w.iter().enumerate() {
        writeln!(out, "W[{i}] = {}", format_jac(x)).map_err(io)?;
    }
    for d in 0..=g as i64 {
        writeln!(out, "Wt[{d}] = {}", format_gpb(&ctx.gpb.wtilde(d)?)).map_err(io)?;
    }
    writeln!(out, "pairing of W[i] and W[j]:").map_err(io)?;
    let cells = w
        .iter()
        .map(|x| w.iter().map(|y| Ok(jac.pair(x, y)?.to_string())).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    write!(out, "{:>5}", "").map_err(io)?;
    for j in 0..=g {
        write!(out, " {:>width$}", j).map_err(io)?;
    }
    writeln!(out).map_err(io)?;
    for (i, row) in cells.iter().enumerate() {
        write!(out, "{:>5}", i).map_err(io)?;
        for c in row {
            write!(out, " {c:>width$}").map_err(io)?;
        }
        writeln!(out).map_err(io)?;
    }
    Ok(EXIT_OK)
}
