//! `slidetok`: decide, plan, verify and generate Sliding Token instances on
//! trees from the command line.
//!
//! Exit codes: 0 for yes / valid, 1 for no / violation, 2 for errors.

use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use slidetok::instances::{gen_random_instance, gen_random_yes_instance, GeneratorSpec};
use slidetok::oracle::{oracle_decide, oracle_shortest, DEFAULT_CAP};
use slidetok::{
    compute_rigid_set, decide, emit_dot, emit_instance, emit_plan, forest_after_deletion,
    parse_instance, parse_plan, plan, verify_plan, Certificate, Decision, IndependentSet, Instance,
    PlanDocument, TokenBoard,
};

#[derive(Parser)]
#[command(name = "slidetok", version, about = "Sliding Token solver for trees")]
struct Cli {
    /// Output style for reports.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Print nothing but data documents; the exit code carries the answer.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the start configuration reaches the target.
    Decide { file: PathBuf },
    /// Build a slide sequence for a yes-instance.
    Plan {
        file: PathBuf,
        /// Write the plan document here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write one DOT frame per configuration into this directory.
        #[arg(long)]
        dot_dir: Option<PathBuf>,
        /// Record planning time in the document.
        #[arg(long)]
        timing: bool,
    },
    /// Replay a plan against an instance.
    Verify { instance: PathBuf, plan: PathBuf },
    /// Show the rigid tokens and the forest left after removing them.
    Rigid {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Side::Start)]
        set: Side,
    },
    /// Brute-force answer from the configuration graph (small trees only).
    Oracle {
        file: PathBuf,
        /// Largest vertex count the oracle accepts.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Also report the length of a shortest slide sequence.
        #[arg(long)]
        shortest: bool,
    },
    /// Generate instance documents, one per line.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Time the solver on random trees and print CSV.
    Bench {
        #[arg(value_enum)]
        target: BenchTarget,
        /// Comma-separated vertex counts.
        #[arg(long, value_delimiter = ',', default_value = "1000,10000,100000")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    Start,
    Target,
}

#[derive(Subcommand)]
enum GenKind {
    /// The quadratic-length path family on 8k vertices.
    PathFamily {
        #[arg(long)]
        k: usize,
    },
    /// A random tree with random start and target sets.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        tokens: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Every labeled tree on n vertices, with empty token sets.
    Exhaustive {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BenchTarget {
    Decide,
    Plan,
}

struct Ctx {
    format: Format,
    quiet: bool,
}

impl Ctx {
    /// Prints a report: `text` in text mode, `value` in JSON mode.
    fn report(&self, text: impl FnOnce() -> String, value: impl FnOnce() -> serde_json::Value) {
        if self.quiet {
            return;
        }
        match self.format {
            Format::Text => println!("{}", text()),
            Format::Json => println!("{}", value()),
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_instance(path: &Path) -> Result<Instance> {
    parse_instance(&read_text(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn verdict_code(yes: bool) -> ExitCode {
    if yes {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn certificate_json(c: &Certificate) -> serde_json::Value {
    match c {
        Certificate::SizeMismatch { start, target } => {
            json!({"kind": c.kind(), "start_tokens": start, "target_tokens": target})
        }
        Certificate::RigidMismatch { start, target } => {
            json!({"kind": c.kind(), "start_rigid": start.members(), "target_rigid": target.members()})
        }
        Certificate::ComponentCountMismatch {
            component,
            start,
            target,
        } => json!({
            "kind": c.kind(),
            "component": component,
            "start_tokens": start,
            "target_tokens": target,
        }),
        Certificate::Feasible { rigid, forest, counts } => json!({
            "kind": c.kind(),
            "rigid": rigid.members(),
            "components": forest.components,
            "tokens_per_component": counts,
        }),
    }
}

fn run_decide(ctx: &Ctx, file: &Path) -> Result<ExitCode> {
    let inst = load_instance(file)?;
    let d = decide(&inst);
    ctx.report(
        || format!("{}\n{}", d.verdict, d.certificate),
        || json!({"verdict": d.verdict.to_string(), "certificate": certificate_json(&d.certificate)}),
    );
    Ok(verdict_code(d.is_yes()))
}

fn write_frames(dir: &Path, inst: &Instance, doc: &PlanDocument) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let t = inst.tree();
    let moves = doc.plan().moves;
    let width = moves.len().to_string().len().max(4);
    let mut board = TokenBoard::new(t, inst.start());
    for step in 0..=moves.len() {
        let highlight = moves.get(step).copied();
        let path = dir.join(format!("step_{step:0width$}.dot"));
        fs::write(&path, emit_dot(t, Some(&board.to_set()), highlight))
            .with_context(|| format!("writing {}", path.display()))?;
        if let Some(m) = highlight {
            board.slide(m)?;
        }
    }
    Ok(())
}

fn run_plan(ctx: &Ctx, file: &Path, out: Option<&Path>, dot_dir: Option<&Path>, timing: bool) -> Result<ExitCode> {
    let inst = load_instance(file)?;
    let clock = Instant::now();
    let d = decide(&inst);
    let moves = if d.is_yes() { plan(&inst)?.plan } else { Default::default() };
    let elapsed = timing.then(|| clock.elapsed().as_micros() as u64);
    let doc = PlanDocument::new(&d, &moves, elapsed);
    let text = emit_plan(&doc);
    match out {
        Some(path) => {
            fs::write(path, format!("{text}\n")).with_context(|| format!("writing {}", path.display()))?;
            ctx.report(
                || format!("{}: {} moves written to {}", d.verdict, doc.move_count, path.display()),
                || json!({"verdict": doc.verdict, "move_count": doc.move_count, "out": path}),
            );
        }
        None => println!("{text}"),
    }
    if let (Some(dir), true) = (dot_dir, d.is_yes()) {
        write_frames(dir, &inst, &doc)?;
    }
    Ok(verdict_code(d.is_yes()))
}

fn run_verify(ctx: &Ctx, instance: &Path, plan_file: &Path) -> Result<ExitCode> {
    let inst = load_instance(instance)?;
    let doc = parse_plan(&read_text(plan_file)?).with_context(|| format!("parsing {}", plan_file.display()))?;
    let p = doc.plan();
    match verify_plan(&inst, &p) {
        Ok(()) => {
            ctx.report(
                || format!("ok: {} moves reach the target", p.len()),
                || json!({"valid": true, "move_count": p.len()}),
            );
            Ok(ExitCode::SUCCESS)
        }
        Err(v) => {
            ctx.report(
                || v.to_string(),
                || json!({"valid": false, "index": v.index, "reason": v.to_string()}),
            );
            Ok(ExitCode::from(1))
        }
    }
}

fn run_rigid(ctx: &Ctx, file: &Path, side: Side) -> Result<ExitCode> {
    let inst = load_instance(file)?;
    let set: &IndependentSet = match side {
        Side::Start => inst.start(),
        Side::Target => inst.target(),
    };
    let report = compute_rigid_set(inst.tree(), set)?;
    let forest = forest_after_deletion(inst.tree(), &report.rigid);
    ctx.report(
        || {
            let mut s = format!(
                "rigid: {}\nmovable: {}\ndeleted: {:?}",
                report.rigid, report.movable, forest.deleted
            );
            for (j, c) in forest.components.iter().enumerate() {
                s.push_str(&format!("\ncomponent {j}: {c:?}"));
            }
            s
        },
        || {
            json!({
                "rigid": report.rigid.members(),
                "movable": report.movable.members(),
                "deleted": forest.deleted,
                "components": forest.components,
            })
        },
    );
    Ok(ExitCode::SUCCESS)
}

fn run_oracle(ctx: &Ctx, file: &Path, cap: usize, shortest: bool) -> Result<ExitCode> {
    let inst = load_instance(file)?;
    let (yes, length) = if shortest {
        let d = oracle_shortest(&inst, cap)?;
        (d.is_some(), d)
    } else {
        (oracle_decide(&inst, cap)?, None)
    };
    let verdict = if yes { "yes" } else { "no" };
    ctx.report(
        || match length {
            Some(d) => format!("{verdict}\nshortest: {d}"),
            None => verdict.to_string(),
        },
        || match shortest {
            true => json!({"verdict": verdict, "shortest": length}),
            false => json!({"verdict": verdict}),
        },
    );
    Ok(verdict_code(yes))
}

fn run_gen(kind: &GenKind, out: Option<&Path>) -> Result<ExitCode> {
    let spec = match *kind {
        GenKind::PathFamily { k } => GeneratorSpec::PathFamily { k },
        GenKind::Random { n, tokens, seed } => GeneratorSpec::RandomInstance { n, tokens, seed },
        GenKind::Exhaustive { n } => GeneratorSpec::ExhaustiveTrees { n },
    };
    let sink: Box<dyn Write> = match out {
        Some(path) => Box::new(fs::File::create(path).with_context(|| format!("creating {}", path.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = BufWriter::new(sink);
    for inst in spec.instances()? {
        writeln!(sink, "{}", emit_instance(&inst))?;
    }
    sink.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn bench_instance(target: BenchTarget, n: usize, seed: u64) -> Result<Instance> {
    let k = (n / 8).max(1);
    Ok(match target {
        BenchTarget::Decide => gen_random_instance(n, k, seed)?,
        BenchTarget::Plan => gen_random_yes_instance(n, k, seed)?,
    })
}

/// Runs one timed call and returns (microseconds, verdict, moves).
fn bench_once(target: BenchTarget, inst: &Instance) -> Result<(u128, Decision, usize)> {
    let clock = Instant::now();
    let d = decide(inst);
    let moves = match target {
        BenchTarget::Decide => 0,
        BenchTarget::Plan => plan(inst)?.plan.len(),
    };
    Ok((clock.elapsed().as_micros(), d, moves))
}

fn run_bench(target: BenchTarget, sizes: &[usize], seed: u64, repeats: usize) -> Result<ExitCode> {
    if sizes.is_empty() {
        bail!("--sizes needs at least one value");
    }
    let mut out = io::stdout().lock();
    writeln!(out, "size,repeat,wall_us,verdict,moves")?;
    for &n in sizes {
        let inst = bench_instance(target, n, seed)?;
        bench_once(target, &inst)?; // warm-up, not reported
        for r in 0..repeats {
            let (us, d, moves) = bench_once(target, &inst)?;
            writeln!(out, "{n},{r},{us},{},{moves}", d.verdict)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let ctx = Ctx {
        format: cli.format,
        quiet: cli.quiet,
    };
    match &cli.command {
        Command::Decide { file } => run_decide(&ctx, file),
        Command::Plan {
            file,
            out,
            dot_dir,
            timing,
        } => run_plan(&ctx, file, out.as_deref(), dot_dir.as_deref(), *timing),
        Command::Verify { instance, plan } => run_verify(&ctx, instance, plan),
        Command::Rigid { file, set } => run_rigid(&ctx, file, *set),
        Command::Oracle { file, cap, shortest } => run_oracle(&ctx, file, *cap, *shortest),
        Command::Gen { kind, out } => run_gen(kind, out.as_deref()),
        Command::Bench {
            target,
            sizes,
            seed,
            repeats,
        } => run_bench(*target, sizes, *seed, *repeats),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
