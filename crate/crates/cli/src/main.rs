//! Command line front end for the torus knot invariant engine.
//!
//! Subcommands map one-to-one onto the library: `invariant` computes the loop
//! expansion, `verify` and `sweep` run the identity suite, `lift` and `lmo`
//! handle the branched-cover side, `alexander` prints the polynomial that
//! controls the one-loop part. Results go to stdout (or `--output`),
//! diagnostics go to stderr. Exit codes: 0 all good, 1 a verified identity
//! failed, 2 the parameters were invalid.

mod render;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kzrat_core::cover::{
    lift_chain, lift_dumbbell, lmo_theta2, lmo_theta3, theta1_coefficient, CoverParams,
};
use kzrat_core::exact::{alexander_torus, fmt_rat};
use kzrat_core::pipeline::rational::{z2_rational, z3_rational};
use kzrat_core::pipeline::{torus_invariant, TorusParams};
use kzrat_core::verify::{sweep_pairs, sweep_triples, verify_cover, verify_torus, IdentityReport};
use kzrat_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "kzrat",
    version,
    about = "Exact rational Kontsevich integral of torus knots through three loops"
)]
struct Cli {
    /// Write results to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Loop expansion of the (p, q) torus knot invariant, with rational forms.
    Invariant(InvariantArgs),
    /// Check every internal identity at one parameter set.
    Verify(VerifyArgs),
    /// Lift the two- and three-loop forms to the r-fold cyclic branched cover.
    Lift(LiftArgs),
    /// Surgery coefficients of the Brieskorn sphere Sigma(p, q, r).
    Lmo(LmoArgs),
    /// Alexander polynomial of the (p, q) torus knot.
    Alexander(AlexanderArgs),
    /// Run the identity suite over the default parameter grid.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct KnotArgs {
    /// Cabling parameter, at least 1.
    #[arg(long)]
    p: i64,
    /// Companion parameter, nonzero and coprime to p.
    #[arg(long, allow_negative_numbers = true)]
    q: i64,
}

#[derive(Args)]
struct OrderArg {
    /// Series truncation order.
    #[arg(long, default_value_t = 8, env = "KZRAT_ORDER")]
    order: i64,
}

#[derive(Args)]
struct FormatArg {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct InvariantArgs {
    #[command(flatten)]
    knot: KnotArgs,
    #[command(flatten)]
    order: OrderArg,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    knot: KnotArgs,
    /// Also run the covering checks for this branching order.
    #[arg(long)]
    r: Option<i64>,
    #[command(flatten)]
    order: OrderArg,
}

#[derive(Args)]
struct LiftArgs {
    #[command(flatten)]
    knot: KnotArgs,
    /// Covering order, coprime to both p and q.
    #[arg(long)]
    r: i64,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Args)]
struct LmoArgs {
    #[command(flatten)]
    knot: KnotArgs,
    /// Covering order, coprime to both p and q.
    #[arg(long)]
    r: i64,
    /// Knot signature input for the degree-one coefficient.
    #[arg(long, allow_negative_numbers = true)]
    sigma: Option<i64>,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Args)]
struct AlexanderArgs {
    #[command(flatten)]
    knot: KnotArgs,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    order: OrderArg,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli.command) {
        Ok((text, code)) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &text).map_err(|e| e.to_string()),
                None => {
                    print!("{}", text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("cannot write output: {}", e);
                return ExitCode::from(1);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("{}", e);
            match e {
                Error::Parameter(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn dispatch(command: &Command) -> Result<(String, u8)> {
    match command {
        Command::Invariant(a) => invariant(a),
        Command::Verify(a) => verify(a),
        Command::Lift(a) => lift(a),
        Command::Lmo(a) => lmo(a),
        Command::Alexander(a) => alexander(a),
        Command::Sweep(a) => sweep(a),
    }
}

fn invariant(args: &InvariantArgs) -> Result<(String, u8)> {
    let (p, q, order) = (args.knot.p, args.knot.q, args.order.order);
    let params = TorusParams::new(p, q, order)?;
    let inv = torus_invariant(&params)?;
    let alex = alexander_torus(p, q)?;
    let z2r = z2_rational(&params)?;
    let z3r = z3_rational(&params)?;

    if args.format.format == Format::Json {
        let brackets: Vec<Value> = inv
            .z3_brackets
            .iter()
            .map(|b| {
                json!({
                    "coef": fmt_rat(&b.coef),
                    "g": render::series_json(&b.g, Some(order)),
                    "h": render::series_json(&b.h, Some(order)),
                })
            })
            .collect();
        let doc = json!({
            "p": p,
            "q": q,
            "order": order,
            "strut": fmt_rat(&inv.strut),
            "z1": render::series_json(&inv.z1.series, None),
            "z2": render::series_json(&inv.z2.series, None),
            "z3_chain": render::series_json(&inv.z3_chain.series, None),
            "z3_brackets": brackets,
            "closed": {
                "theta2": fmt_rat(&inv.closed.theta2),
                "theta3": fmt_rat(&inv.closed.theta3),
            },
            "alexander": render::laurent_json(&alex),
            "z2_rational": render::dumbbell_json(&z2r),
            "z3_rational": render::chain_json(&z3r),
        });
        return Ok((pretty(&doc), 0));
    }

    let mut out = String::new();
    let _ = writeln!(out, "K({}, {}) invariant, truncation order {}", p, q, order);
    let _ = writeln!(out, "strut: {}", fmt_rat(&inv.strut));
    let _ = writeln!(out, "z1: {}", inv.z1.series);
    let _ = writeln!(out, "z2: {}", inv.z2.series);
    let _ = writeln!(out, "z3 chain: {}", inv.z3_chain.series);
    if inv.z3_brackets.is_empty() {
        let _ = writeln!(out, "z3 brackets: none");
    } else {
        let _ = writeln!(out, "z3 brackets:");
        for b in &inv.z3_brackets {
            let g = b.g.truncate_to(order)?;
            let h = b.h.truncate_to(order)?;
            let _ = writeln!(out, "  ({}) * [{}, {}]", fmt_rat(&b.coef), g, h);
        }
    }
    let _ = writeln!(
        out,
        "closed: theta2 = {}, theta3 = {}",
        fmt_rat(&inv.closed.theta2),
        fmt_rat(&inv.closed.theta3)
    );
    let _ = writeln!(out, "alexander: {}", alex);
    let _ = writeln!(out, "z2 rational form:");
    for line in render::dumbbell_text(&z2r) {
        let _ = writeln!(out, "  {}", line);
    }
    let _ = writeln!(out, "z3 rational form:");
    for line in render::chain_text(&z3r) {
        let _ = writeln!(out, "  {}", line);
    }
    Ok((out, 0))
}

fn report_block(out: &mut String, indent: &str, reports: &[IdentityReport]) -> usize {
    let mut failures = 0;
    for r in reports {
        let _ = writeln!(out, "{}{}", indent, r.line());
        if !r.pass {
            failures += 1;
        }
    }
    failures
}

fn verify(args: &VerifyArgs) -> Result<(String, u8)> {
    let (p, q, order) = (args.knot.p, args.knot.q, args.order.order);
    let params = TorusParams::new(p, q, order)?;
    let mut reports = verify_torus(&params)?;
    if let Some(r) = args.r {
        reports.extend(verify_cover(&CoverParams::new(p, q, r, None)?)?);
    }
    let mut out = String::new();
    let failures = report_block(&mut out, "", &reports);
    let _ = writeln!(
        out,
        "verify K({}, {}) at order {}: {} checks, {} failures",
        p,
        q,
        order,
        reports.len(),
        failures
    );
    Ok((out, u8::from(failures > 0)))
}

fn lift(args: &LiftArgs) -> Result<(String, u8)> {
    let (p, q, r) = (args.knot.p, args.knot.q, args.r);
    let cover = CoverParams::new(p, q, r, None)?;
    let params = TorusParams::new(p, q, 2)?;
    let lifted2 = lift_dumbbell(&z2_rational(&params)?, r)?;
    let lifted3 = lift_chain(&z3_rational(&params)?, r)?;
    let checks = verify_cover(&cover)?;
    let failures = checks.iter().filter(|c| !c.pass).count();

    if args.format.format == Format::Json {
        let check_list: Vec<Value> = checks
            .iter()
            .map(|c| json!({ "name": c.name, "pass": c.pass }))
            .collect();
        let doc = json!({
            "p": p,
            "q": q,
            "r": r,
            "z2_lifted": render::dumbbell_json(&lifted2),
            "z3_lifted": render::chain_json(&lifted3),
            "checks": check_list,
        });
        return Ok((pretty(&doc), u8::from(failures > 0)));
    }

    let mut out = String::new();
    let _ = writeln!(
        out,
        "K({}, {}) forms lifted to the {}-fold cyclic branched cover",
        p, q, r
    );
    let _ = writeln!(out, "lifted z2:");
    for line in render::dumbbell_text(&lifted2) {
        let _ = writeln!(out, "  {}", line);
    }
    let _ = writeln!(out, "lifted z3:");
    for line in render::chain_text(&lifted3) {
        let _ = writeln!(out, "  {}", line);
    }
    let _ = writeln!(out, "scaling checks:");
    report_block(&mut out, "  ", &checks);
    Ok((out, u8::from(failures > 0)))
}

fn lmo(args: &LmoArgs) -> Result<(String, u8)> {
    let (p, q, r) = (args.knot.p, args.knot.q, args.r);
    let cover = CoverParams::new(p, q, r, args.sigma)?;
    let theta2 = lmo_theta2(&cover)?;
    let theta3 = lmo_theta3(&cover);
    let theta1 = theta1_coefficient(&cover);

    if args.format.format == Format::Json {
        let doc = json!({
            "p": p,
            "q": q,
            "r": r,
            "sigma_r": args.sigma,
            "theta1": theta1.as_ref().map_or_else(|| "sigma_r/16".to_string(), fmt_rat),
            "theta2": fmt_rat(&theta2),
            "theta3_conjectural": fmt_rat(&theta3),
        });
        return Ok((pretty(&doc), 0));
    }

    let mut out = String::new();
    let _ = writeln!(out, "Sigma({}, {}, {}) surgery coefficients", p, q, r);
    match (&theta1, args.sigma) {
        (Some(v), Some(s)) => {
            let _ = writeln!(out, "Theta1: {} (sigma_r = {})", fmt_rat(v), s);
        }
        _ => {
            let _ = writeln!(
                out,
                "Theta1: sigma_r/16 (symbolic; supply --sigma to evaluate)"
            );
        }
    }
    let _ = writeln!(out, "Theta2: {}", fmt_rat(&theta2));
    let _ = writeln!(out, "Theta3 (conjectural): {}", fmt_rat(&theta3));
    Ok((out, 0))
}

fn alexander(args: &AlexanderArgs) -> Result<(String, u8)> {
    let (p, q) = (args.knot.p, args.knot.q);
    let alex = alexander_torus(p, q)?;
    if args.format.format == Format::Json {
        let doc = json!({
            "p": p,
            "q": q,
            "alexander": render::laurent_json(&alex),
        });
        return Ok((pretty(&doc), 0));
    }
    Ok((format!("alexander K({}, {}): {}\n", p, q, alex), 0))
}

fn sweep(args: &SweepArgs) -> Result<(String, u8)> {
    let order = args.order.order;
    let mut out = String::new();
    let mut checks = 0;
    let mut failures = 0;
    for (p, q) in sweep_pairs() {
        let _ = writeln!(out, "K({}, {}) at order {}", p, q, order);
        let reports = verify_torus(&TorusParams::new(p, q, order)?)?;
        checks += reports.len();
        failures += report_block(&mut out, "  ", &reports);
    }
    for (p, q, r) in sweep_triples() {
        let _ = writeln!(out, "Sigma({}, {}, {})", p, q, r);
        let reports = verify_cover(&CoverParams::new(p, q, r, None)?)?;
        checks += reports.len();
        failures += report_block(&mut out, "  ", &reports);
    }
    let _ = writeln!(
        out,
        "sweep: {} pairs, {} triples, {} checks, {} failures",
        sweep_pairs().len(),
        sweep_triples().len(),
        checks,
        failures
    );
    Ok((out, u8::from(failures > 0)))
}

fn pretty(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("rendering cannot fail");
    s.push('\n');
    s
}
