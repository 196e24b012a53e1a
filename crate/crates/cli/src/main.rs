//! `cfmove`: invariants, normal forms, equivalence decisions and oracle runs
//! for Gauss diagrams, with JSON on standard output.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use cfmove_core::classify::{decide, relation_check, Status};
use cfmove_core::invariants::invariant_profile;
use cfmove_core::normalform::{
    canonicalize_even3, normalize_general, normalize_odd, NormalFormParams,
};
use cfmove_core::oracle::{bfs_equiv, check_invariance, random_walk, SearchConfig, SearchOutcome};
use cfmove_core::random::{random_diagram, random_even3};
use cfmove_core::{parse_gauss_code, serialize, GaussDiagram, LinkClass, MoveTrace};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

const EX_USAGE: u8 = 64;
const EX_DATAERR: u8 = 65;
const EX_NOINPUT: u8 = 66;
const EX_SOFTWARE: u8 = 70;

#[derive(Parser)]
#[command(
    name = "cfmove",
    version,
    about = "CF-moves on Gauss diagrams of virtual links"
)]
struct Cli {
    /// Indent JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum Mode {
    General,
    Odd,
    Even3,
}

#[derive(Subcommand)]
enum Command {
    /// Linking matrix, parities, n-invariants and tau pair.
    Invariants { file: PathBuf },
    /// Reduce to a normal form; the move trace can be written out.
    Normalize {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "general")]
        mode: Mode,
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
    /// Decide CF-equivalence of two diagrams.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        /// Where to write the certificate of an equivalent pair.
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
    /// Bounded breadth-first search for a move sequence between two diagrams.
    OracleCheck {
        a: PathBuf,
        b: PathBuf,
        /// Defaults to the larger chord count plus 4.
        #[arg(long)]
        max_chords: Option<usize>,
        #[arg(long, default_value_t = 200_000)]
        max_states: usize,
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
    /// Apply uniformly random moves.
    RandomWalk {
        file: PathBuf,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        seed: u64,
        /// Defaults to the input chord count plus 4.
        #[arg(long)]
        max_chords: Option<usize>,
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
    /// Replay a trace file against a diagram.
    Replay { file: PathBuf, trace: PathBuf },
    /// Relation audit and invariance checks over random diagrams.
    Selftest {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        steps: usize,
    },
}

/// JSON document and exit code of a finished command.
struct Report {
    body: Value,
    code: u8,
}

impl Report {
    fn ok(body: Value) -> Self {
        Report { body, code: 0 }
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_diagram(path: &Path) -> Result<GaussDiagram> {
    let text = read_text(path)?;
    parse_gauss_code(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_trace(path: Option<&PathBuf>, trace: &MoveTrace) -> Result<Value> {
    let Some(path) = path else {
        return Ok(Value::Null);
    };
    fs::write(path, trace.to_text()).with_context(|| format!("writing {}", path.display()))?;
    Ok(json!(path.display().to_string()))
}

fn params_json(p: &NormalFormParams) -> Value {
    json!({ "text": p.to_string(), "a": p })
}

fn cmd_invariants(file: &Path) -> Result<Report> {
    let g = read_diagram(file)?;
    Ok(Report::ok(serde_json::to_value(invariant_profile(&g))?))
}

fn cmd_normalize(file: &Path, mode: Mode, trace_out: Option<&PathBuf>) -> Result<Report> {
    let g = read_diagram(file)?;
    let (mode_name, p, trace) = match mode {
        Mode::General => {
            let (p, t) = normalize_general(&g);
            ("general", p, t)
        }
        Mode::Odd => {
            let (p, t) = normalize_odd(&g)?;
            ("odd", p, t)
        }
        Mode::Even3 => {
            if g.mu() != 3 || g.link_class() != LinkClass::Even {
                bail!(cfmove_core::Error::Precondition(
                    "even3 mode needs three even circles".into()
                ));
            }
            let (p, t) = normalize_general(&g);
            ("even3", p, t)
        }
    };
    let end = trace.replay()?;
    let mut body = json!({
        "mode": mode_name,
        "params": params_json(&p),
        "steps": trace.len(),
        "final": serialize(&end),
        "trace_file": write_trace(trace_out, &trace)?,
    });
    if matches!(mode, Mode::Even3) {
        body["canonical"] = params_json(&canonicalize_even3(&p)?);
    }
    Ok(Report::ok(body))
}

fn cmd_equiv(a: &Path, b: &Path, trace_out: Option<&PathBuf>) -> Result<Report> {
    let (g, h) = (read_diagram(a)?, read_diagram(b)?);
    let v = decide(&g, &h);
    let certificate_file = match &v.certificate {
        Some(t) => write_trace(trace_out, t)?,
        None => Value::Null,
    };
    let code = match v.status {
        Status::Equivalent => 0,
        Status::NotEquivalent => 1,
        Status::Unknown => 2,
    };
    Ok(Report {
        body: json!({
            "status": v.status,
            "theorem": v.theorem,
            "witness": v.witness,
            "certificate_file": certificate_file,
        }),
        code,
    })
}

fn cmd_oracle(
    a: &Path,
    b: &Path,
    max_chords: Option<usize>,
    max_states: usize,
    trace_out: Option<&PathBuf>,
) -> Result<Report> {
    let (g, h) = (read_diagram(a)?, read_diagram(b)?);
    let mut cfg = SearchConfig::for_inputs(&g, &h);
    if let Some(m) = max_chords {
        cfg.max_chords = m;
    }
    cfg.max_states = max_states;
    Ok(match bfs_equiv(&g, &h, &cfg)? {
        SearchOutcome::Found(t) => Report::ok(json!({
            "outcome": "Found",
            "steps": t.len(),
            "max_chords": cfg.max_chords,
            "trace_file": write_trace(trace_out, &t)?,
        })),
        SearchOutcome::NotFoundWithinBudget { explored } => Report {
            body: json!({
                "outcome": "NotFoundWithinBudget",
                "explored": explored,
                "max_chords": cfg.max_chords,
                "max_states": cfg.max_states,
            }),
            code: 2,
        },
    })
}

fn cmd_walk(
    file: &Path,
    steps: usize,
    seed: u64,
    max_chords: Option<usize>,
    trace_out: Option<&PathBuf>,
) -> Result<Report> {
    let g = read_diagram(file)?;
    let cfg = SearchConfig {
        max_chords: max_chords.unwrap_or(g.chord_count() + 4),
        seed,
        ..SearchConfig::default()
    };
    let (end, t) = random_walk(&g, steps, &cfg);
    Ok(Report::ok(json!({
        "seed": seed,
        "steps": t.len(),
        "final": serialize(&end),
        "trace_file": write_trace(trace_out, &t)?,
    })))
}

fn cmd_replay(file: &Path, trace: &Path) -> Result<Report> {
    let g = read_diagram(file)?;
    let t = MoveTrace::from_text(g, &read_text(trace)?)
        .with_context(|| format!("parsing {}", trace.display()))?;
    Ok(match t.replay() {
        Ok(end) => Report::ok(json!({
            "valid": true,
            "steps": t.len(),
            "final": serialize(&end),
        })),
        Err(e) => Report {
            body: json!({ "valid": false, "steps": t.len(), "error": e.to_string() }),
            code: 1,
        },
    })
}

fn cmd_selftest(count: usize, seed: u64, steps: usize) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut relation_failures = Vec::new();
    let mut invariance_failures = Vec::new();
    let mut checked_steps = 0;
    for k in 0..count {
        let chords = rng.gen_range(0..=10);
        let g = random_even3(&mut rng, chords);
        let rep = relation_check(&g)?;
        if !rep.passed() {
            relation_failures.push(json!({ "diagram": serialize(&g), "report": rep }));
        }
        let mu = rng.gen_range(1..=4);
        let chords = rng.gen_range(0..=6);
        let g = random_diagram(&mut rng, mu, chords);
        let cfg = SearchConfig {
            max_chords: chords + 4,
            seed: seed.wrapping_add(k as u64),
            ..SearchConfig::default()
        };
        let (_, t) = random_walk(&g, steps, &cfg);
        let rep = check_invariance(&t)?;
        checked_steps += rep.checked_steps;
        if !rep.passed() {
            invariance_failures.push(json!({ "diagram": serialize(&g), "report": rep }));
        }
    }
    let passed = relation_failures.is_empty() && invariance_failures.is_empty();
    log::info!("selftest checked {count} diagrams and {checked_steps} moves");
    Ok(Report {
        body: json!({
            "count": count,
            "seed": seed,
            "relation_failures": relation_failures,
            "invariance_steps": checked_steps,
            "invariance_failures": invariance_failures,
            "passed": passed,
        }),
        code: if passed { 0 } else { 1 },
    })
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Invariants { file } => cmd_invariants(file),
        Command::Normalize {
            file,
            mode,
            trace_out,
        } => cmd_normalize(file, *mode, trace_out.as_ref()),
        Command::Equiv { a, b, trace_out } => cmd_equiv(a, b, trace_out.as_ref()),
        Command::OracleCheck {
            a,
            b,
            max_chords,
            max_states,
            trace_out,
        } => cmd_oracle(a, b, *max_chords, *max_states, trace_out.as_ref()),
        Command::RandomWalk {
            file,
            steps,
            seed,
            max_chords,
            trace_out,
        } => cmd_walk(file, *steps, *seed, *max_chords, trace_out.as_ref()),
        Command::Replay { file, trace } => cmd_replay(file, trace),
        Command::Selftest { count, seed, steps } => cmd_selftest(*count, *seed, *steps),
    }
}

fn init_logging() {
    let level = match std::env::var("CFMOVE_LOG").as_deref() {
        Ok("debug") => log::LevelFilter::Debug,
        Ok("info") => log::LevelFilter::Info,
        _ => log::LevelFilter::Off,
    };
    env_logger::Builder::new().filter_level(level).init();
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<std::io::Error>().is_some() {
        EX_NOINPUT
    } else if err.downcast_ref::<cfmove_core::Error>().is_some() {
        EX_DATAERR
    } else {
        EX_SOFTWARE
    }
}

fn main() -> ExitCode {
    init_logging();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EX_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(report) => {
            let text = if cli.pretty {
                serde_json::to_string_pretty(&report.body)
            } else {
                serde_json::to_string(&report.body)
            }
            .expect("JSON values serialize");
            println!("{text}");
            ExitCode::from(report.code)
        }
        Err(e) => {
            eprintln!("cfmove: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
