use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use galois_lines::aut::AutGroup;
use galois_lines::curve::Curve;
use galois_lines::galois::{GaloisEngine, SweepConfig, SweepMode};
use galois_lines::plane::{verify_corollary, Which};
use galois_lines::projective::parse::parse_line;
use galois_lines::{Error, Tower};

#[derive(Parser)]
#[command(name = "galois-lines", version, about = "Galois lines of y^((q+1)/2) = x^q - x in P^3")]
struct Cli {
    /// Odd prime power q >= 5.
    #[arg(long, global = true, default_value_t = 5)]
    q: u64,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for sampled lines.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Full,
    Stratified,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify lines over GF(q^2) and check counts, degrees and groups.
    Sweep {
        #[arg(long, value_enum, default_value = "full")]
        mode: Mode,
        /// Level-4 sample lines (and random level-2 lines in stratified mode).
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Omit wall time so reruns are byte-identical.
        #[arg(long)]
        no_timing: bool,
        /// Lift the full-mode limit on q.
        #[arg(long)]
        force: bool,
    },
    /// Verdict for one line, given as "F0; F1".
    Classify { line: String },
    /// Galois points of a plane model.
    Corollary {
        /// 1, 2, 3 or prop.
        #[arg(long)]
        which: String,
    },
    /// Order, element orders, kernel and image of the automorphism group.
    Autgroup,
    /// Field tower used for q.
    FieldInfo,
}

enum Failure {
    Mismatch(String),
    Config(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Internal(_) | Error::NotClosed(_) => Failure::Mismatch(e.to_string()),
            _ => Failure::Config(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Mismatch(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Config(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.cmd {
        Cmd::Sweep { mode, samples, no_timing, force } => {
            let cfg = SweepConfig {
                mode: match mode {
                    Mode::Full => SweepMode::Full,
                    Mode::Stratified => SweepMode::Stratified,
                },
                samples: *samples,
                seed: cli.seed,
                force: *force,
                timed: !no_timing,
            };
            let engine = GaloisEngine::new(cli.q)?;
            let report = engine.sweep(&cfg)?;
            let body = match cli.format.unwrap_or(Format::Json) {
                Format::Csv => report.to_csv(),
                _ => to_json(&report),
            };
            emit(cli, &body)?;
            eprintln!(
                "q = {}: {} Galois lines out of {}, {} mismatches",
                report.q,
                report.galois_total,
                report.lines_total,
                report.mismatches.len()
            );
            for m in &report.mismatches {
                eprintln!("  {m}");
            }
            Ok(report.passed())
        }
        Cmd::Classify { line } => {
            let engine = GaloisEngine::new(cli.q)?;
            let f = engine.field();
            let l = parse_line(f, line)?;
            let v = engine.evaluate(&l)?;
            let expected = v.case.expected(f);
            let mismatch = v.mismatch(f);
            let group = v.group.as_ref().map(|g| g.to_string());
            if cli.format == Some(Format::Json) {
                let body = json!({
                    "q": cli.q,
                    "line": l.to_string(f),
                    "case": v.case,
                    "galois": v.galois,
                    "degree": v.degree,
                    "stabilizer_order": v.stabilizer_order,
                    "group": group,
                    "expected_group": expected.as_ref().map(|(_, g)| g.to_string()),
                    "witnesses": v.witnesses.record(engine.curve()),
                    "mismatch": mismatch,
                });
                emit(cli, &to_json(&body))?;
            } else {
                let w = v.witnesses.record(engine.curve());
                let mut s = format!("line: {}\ncase: {}\ngalois: {}\n", l.to_string(f), v.case, v.galois);
                let degree = match v.degree {
                    Some(d) => d.to_string(),
                    None => format!("{} (not computed; trivial stabilizer)", engine.projection_degree(&l)),
                };
                s += &format!("degree: {degree}\nstabilizer order: {}\n", v.stabilizer_order);
                if let Some(g) = &group {
                    s += &format!("group: {g}");
                    if let Some((_, eg)) = &expected {
                        s += &format!(" (expected {eg}, isomorphic)");
                    }
                    s.push('\n');
                }
                if let Some(m) = &w.meet_point {
                    s += &format!("meets Y = 0 at: {m}\n");
                }
                if !w.conic_points.is_empty() {
                    s += &format!("conic points: {}\n", w.conic_points.join(", "));
                }
                s += &format!("defined over level: {}\n", w.level);
                if let Some(m) = &mismatch {
                    s += &format!("MISMATCH: {m}\n");
                }
                emit(cli, &s)?;
            }
            Ok(mismatch.is_none())
        }
        Cmd::Corollary { which } => {
            let which: Which = which.parse()?;
            let engine = GaloisEngine::new(cli.q)?;
            let report = verify_corollary(&engine, which)?;
            emit(cli, &to_json(&report))?;
            for c in report.checks.iter().filter(|c| !c.pass) {
                eprintln!("FAILED {}: {}", c.name, c.detail);
            }
            Ok(report.pass)
        }
        Cmd::Autgroup => {
            let curve = Curve::with_levels(cli.q, 2)?;
            let g = AutGroup::build(&curve)?;
            let census = g.census(&curve);
            let order = g.order() as u64;
            let expected = AutGroup::expected_order(cli.q);
            let kernel = g.kernel().len();
            let image = g.image_order();
            if cli.format == Some(Format::Json) {
                let body = json!({
                    "q": cli.q,
                    "order": order,
                    "expected_order": expected,
                    "census": census,
                    "kernel": kernel,
                    "image": image,
                });
                emit(cli, &to_json(&body))?;
            } else {
                let parts: Vec<String> = census.iter().map(|(o, n)| format!("{o}:{n}")).collect();
                emit(
                    cli,
                    &format!(
                        "order: {order}\nelement orders: {}\nkernel: {kernel}\nimage in PGL(2,{}): {image}\n",
                        parts.join(" "),
                        cli.q
                    ),
                )?;
            }
            Ok(order == expected)
        }
        Cmd::FieldInfo => {
            let f = Tower::for_q(cli.q, 4)?;
            let levels: Vec<String> =
                [1, 2, 4].iter().map(|&l| format!("GF(q^{l}) = {} elements", f.level_size(l))).collect();
            let gens: Vec<String> = f.steps()[1..]
                .iter()
                .filter_map(|s| s.name)
                .map(|c| c.to_string())
                .collect();
            if cli.format == Some(Format::Json) {
                let body = json!({
                    "q": cli.q,
                    "p": f.p(),
                    "n": f.n(),
                    "tower": f.describe(),
                    "generators": gens,
                    "sizes": [f.level_size(1), f.level_size(2), f.level_size(4)],
                });
                emit(cli, &to_json(&body))?;
            } else {
                emit(
                    cli,
                    &format!("tower: {}\ngenerators: {}\n{}\n", f.describe(), gens.join(", "), levels.join("\n")),
                )?;
            }
            Ok(true)
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable report");
    s.push('\n');
    s
}

fn emit(cli: &Cli, body: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(p) => write_atomic(p, body).map_err(|e| Failure::Config(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::Config(e.to_string()))
        }
    }
}

/// Writes through a sibling temporary file and a rename.
fn write_atomic(path: &Path, body: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| std::io::Error::other("not a file path"))?;
    let tmp = dir.join(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    std::fs::write(&tmp, body)?;
    std::fs::rename(&tmp, path).inspect_err(|_| {
        let _ = std::fs::remove_file(&tmp);
    })
}
