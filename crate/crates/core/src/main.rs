use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use secant_core::classify::{self, ClassifyOptions};
use secant_core::prolong::{self, Config, SweepOptions, CACHE_ENV};
use secant_core::quintics;
use secant_core::symmetry::{self, SplitSpec};
use secant_core::trace;
use secant_core::{Error, MultiIndex, SMonomial};

#[derive(Parser, Debug)]
#[command(
    name = "secant",
    version,
    about = "Degree-(k+1) equations of secant varieties of Veronese embeddings"
)]
struct Cli {
    /// Worker threads for weight sweeps.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,

    /// Directory for per-orbit kernel reports.
    #[arg(long, global = true, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,

    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Structured,
}

#[derive(Args, Debug, Clone)]
struct Dims {
    /// `k d n` given positionally instead of with flags.
    #[arg(num_args = 0..=3, value_name = "K D N")]
    positional: Vec<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kernel dimension at one weight.
    Kappa {
        #[command(flatten)]
        dims: Dims,
        /// Weight as comma-separated integers.
        #[arg(long)]
        beta: String,
        /// Also print a kernel basis.
        #[arg(long)]
        basis: bool,
    },
    /// Dimension of the degree-(k+1) piece of the ideal.
    IdealDim {
        #[command(flatten)]
        dims: Dims,
        /// Skip orbits with more elements than this.
        #[arg(long)]
        prune_bound: Option<u64>,
        /// Allow configurations that take minutes to hours.
        #[arg(long, env = "SECANT_EXTENDED")]
        extended: bool,
        /// Wall-clock budget in seconds.
        #[arg(long)]
        budget_secs: Option<u64>,
        /// Print the per-orbit breakdown.
        #[arg(long)]
        verbose: bool,
    },
    /// Kernel dimension on the sign components of commuting transpositions.
    SplitKappa {
        #[command(flatten)]
        dims: Dims,
        #[arg(long)]
        beta: String,
        /// e.g. "(01)-,(23)+"
        #[arg(long)]
        split: String,
    },
    /// Step-by-step elimination on one weight space.
    Trace {
        #[command(flatten)]
        dims: Dims,
        #[arg(long)]
        beta: String,
        /// File listing monomials (one per line) to prefer as free variables.
        #[arg(long)]
        priority: Option<PathBuf>,
    },
    /// The quintic generators for four points on cubic surfaces.
    Quintics {
        #[command(subcommand)]
        action: QuinticsAction,
    },
    /// Minimal-degree / del Pezzo verdict for one configuration.
    Classify {
        #[command(flatten)]
        dims: Dims,
        /// Use this dimension instead of computing it.
        #[arg(long)]
        dim_piece: Option<u64>,
        #[arg(long, env = "SECANT_EXTENDED")]
        extended: bool,
        #[arg(long)]
        budget_secs: Option<u64>,
    },
    /// Verdicts for the table of small secant varieties.
    Table1 {
        #[arg(long, env = "SECANT_EXTENDED")]
        extended: bool,
        /// Wall-clock budget per row in seconds.
        #[arg(long)]
        budget_secs: Option<u64>,
    },
    /// Known generators of the ideals of secant varieties of cubics.
    Table2,
    /// Independent cross-checks: codimension by tangent spaces and, with
    /// --beta, the kernel dimension by evaluation at points.
    Oracle {
        #[command(flatten)]
        dims: Dims,
        #[arg(long)]
        beta: Option<String>,
        /// Evaluation points; defaults to dim L_β + 16.
        #[arg(long)]
        samples: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum QuinticsAction {
    /// Runs every check on the matrices and the 36 quintics.
    Verify,
    /// Writes xi, F, G, H and the 36-element basis as interchange records.
    Export {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Configurations whose unpruned sweep takes minutes to hours.
const HEAVY: [(u32, u32, u32); 4] = [(8, 6, 2), (7, 4, 3), (8, 4, 3), (9, 3, 5)];

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::OutOfScope(_)
            | Error::InvalidSplit(_)
            | Error::WeightMismatch { .. }
            | Error::LengthMismatch { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Verification(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

impl Dims {
    fn resolve(&self) -> CliResult<(u32, u32, usize)> {
        let (k, d, n) = match (self.positional.as_slice(), self.k, self.d, self.n) {
            ([k, d, n], None, None, None) => (*k, *d, *n),
            ([], Some(k), Some(d), Some(n)) => (k, d, n),
            _ => {
                return Err(Failure::Usage(
                    "give k, d, n either as three positional values or as --k --d --n".into(),
                ))
            }
        };
        if k == 0 || d == 0 || n == 0 {
            return Err(Failure::Usage("k, d and n must be at least 1".into()));
        }
        Ok((k, d, n as usize))
    }
}

fn parse_beta(s: &str) -> CliResult<MultiIndex> {
    s.parse::<MultiIndex>().map_err(Failure::from)
}

struct Ctx {
    output: Output,
    workers: Option<usize>,
    cache_dir: Option<PathBuf>,
    seed: u64,
    out: Vec<String>,
}

impl Ctx {
    fn line(&mut self, s: impl Into<String>) {
        self.out.push(s.into());
    }

    fn record(&mut self, command: &str, mut v: Value) {
        if let Value::Object(m) = &mut v {
            m.insert("schema".into(), json!(1));
            m.insert("command".into(), json!(command));
        }
        self.out.push(v.to_string());
    }

    fn sweep(&self, prune: Option<u64>, budget: Option<u64>) -> SweepOptions {
        SweepOptions {
            prune_bound: prune,
            workers: self.workers,
            cache_dir: self.cache_dir.clone(),
            with_basis: false,
            deadline: budget.map(|s| Instant::now() + Duration::from_secs(s)),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut ctx = Ctx {
        output: cli.output,
        workers: cli.workers.map(|w| w as usize),
        cache_dir: cli.cache_dir.clone(),
        seed: cli.seed,
        out: Vec::new(),
    };
    let res = run(&mut ctx, cli.command);
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    for l in &ctx.out {
        let _ = writeln!(lock, "{l}");
    }
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            eprintln!("run `secant --help` for usage");
            ExitCode::from(2)
        }
        Err(Failure::Verification(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(1)
        }
    }
}

fn run(ctx: &mut Ctx, cmd: Command) -> CliResult<()> {
    match cmd {
        Command::Kappa { dims, beta, basis } => {
            let (k, d, n) = dims.resolve()?;
            let beta = parse_beta(&beta)?;
            let r = prolong::cached_kappa(
                &beta,
                Config::new(k, d, n),
                basis,
                None,
                ctx.cache_dir.as_deref(),
            )?;
            if r.from_cache {
                eprintln!("cache: hit for {beta}");
            }
            match ctx.output {
                Output::Text => {
                    ctx.line(r.kappa.to_string());
                    if let Some(polys) = r.basis_polys() {
                        for p in polys? {
                            ctx.line(format!("  {p}"));
                        }
                    }
                }
                Output::Structured => {
                    ctx.record("kappa", json!({"k": k, "d": d, "n": n, "report": r}))
                }
            }
            if !r.certified {
                return Err(Failure::Verification(format!(
                    "kappa at {beta} is only an upper bound"
                )));
            }
        }
        Command::IdealDim {
            dims,
            prune_bound,
            extended,
            budget_secs,
            verbose,
        } => {
            let (k, d, n) = dims.resolve()?;
            if HEAVY.contains(&(k, d, n as u32)) && !extended && prune_bound.is_none() {
                return Err(Failure::Usage(format!(
                    "({k},{d},{n}) is a long computation; pass --extended or --prune-bound"
                )));
            }
            let piece = prolong::graded_piece_dim(k, d, n, &ctx.sweep(prune_bound, budget_secs))?;
            if ctx.cache_dir.is_some() {
                eprintln!(
                    "cache: {} hits of {} orbits",
                    piece.cache_hits(),
                    piece.orbits.len()
                );
            }
            match ctx.output {
                Output::Text => {
                    ctx.line(piece.total.to_string());
                    if verbose {
                        for o in piece.nonzero() {
                            ctx.line(format!(
                                "  {} x{} kappa={} dimL={}",
                                o.representative, o.orbit_size, o.report.kappa, o.report.dim_l
                            ));
                        }
                    }
                }
                Output::Structured => {
                    let orbits: Vec<Value> = piece
                        .orbits
                        .iter()
                        .map(|o| {
                            json!({
                                "beta": o.representative,
                                "orbit_size": o.orbit_size,
                                "dim_l": o.report.dim_l,
                                "kappa": o.report.kappa,
                                "certified": o.report.certified,
                                "method": o.report.method,
                            })
                        })
                        .collect();
                    ctx.record(
                        "ideal-dim",
                        json!({"k": k, "d": d, "n": n, "prune_bound": prune_bound, "total": piece.total,
                               "certified": piece.certified, "orbits": orbits}),
                    );
                }
            }
            if !piece.certified {
                return Err(Failure::Verification(
                    "some kernel dimensions are only upper bounds".into(),
                ));
            }
        }
        Command::SplitKappa { dims, beta, split } => {
            let (k, d, n) = dims.resolve()?;
            let beta = parse_beta(&beta)?;
            let spec: SplitSpec = split.parse().map_err(Failure::from)?;
            spec.validate(&beta)?;
            let comp = symmetry::split_kappa_component(&beta, Config::new(k, d, n), &spec)?;
            match ctx.output {
                Output::Text => ctx.line(comp.kappa.to_string()),
                Output::Structured => ctx.record(
                    "split-kappa",
                    json!({"k": k, "d": d, "n": n, "beta": beta, "component": comp}),
                ),
            }
            if !comp.certified {
                return Err(Failure::Verification(
                    "split kernel dimension is only an upper bound".into(),
                ));
            }
        }
        Command::Trace {
            dims,
            beta,
            priority,
        } => {
            let (k, d, n) = dims.resolve()?;
            let beta = parse_beta(&beta)?;
            let prio = match priority {
                None => None,
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    let monos = text
                        .lines()
                        .map(str::trim)
                        .filter(|l| !l.is_empty() && !l.starts_with('#'))
                        .map(|l| l.parse::<SMonomial>())
                        .collect::<Result<Vec<_>, _>>()?;
                    Some(monos)
                }
            };
            let tr = trace::elimination_trace(&beta, k, d, n, prio.as_deref())?;
            match ctx.output {
                Output::Text => ctx.line(trace::render_trace(&tr).trim_end().to_string()),
                Output::Structured => {
                    let v: Value = serde_json::from_str(&tr.to_json())
                        .map_err(|e| Failure::Verification(e.to_string()))?;
                    ctx.record("trace", json!({"trace": v}));
                }
            }
        }
        Command::Quintics { action } => match action {
            QuinticsAction::Verify => {
                let checks = quintics::verify_all();
                let failed = checks.iter().filter(|c| !c.passed).count();
                match ctx.output {
                    Output::Text => {
                        for c in &checks {
                            ctx.line(format!(
                                "{} {}: {}",
                                if c.passed { "PASS" } else { "FAIL" },
                                c.name,
                                c.detail
                            ));
                        }
                        ctx.line(format!("{} checks, {failed} failed", checks.len()));
                    }
                    Output::Structured => {
                        for c in &checks {
                            ctx.record(
                                "quintics-verify",
                                json!({"name": c.name, "passed": c.passed, "detail": c.detail}),
                            );
                        }
                    }
                }
                if failed > 0 {
                    return Err(Failure::Verification(format!(
                        "{failed} quintic checks failed"
                    )));
                }
            }
            QuinticsAction::Export { out } => {
                let ex = quintics::export();
                let text = serde_json::to_string_pretty(&ex)
                    .map_err(|e| Failure::Verification(e.to_string()))?;
                match out {
                    Some(path) => {
                        prolong::write_atomic(&path, &text)?;
                        ctx.line(format!(
                            "wrote {} polynomials to {}",
                            ex.named.len() + ex.basis.len(),
                            path.display()
                        ));
                    }
                    None => ctx.line(text),
                }
            }
        },
        Command::Classify {
            dims,
            dim_piece,
            extended,
            budget_secs,
        } => {
            let (k, d, n) = dims.resolve()?;
            let opts = ClassifyOptions {
                sweep: ctx.sweep(None, budget_secs),
                no_sweep: HEAVY.contains(&(k, d, n as u32)) && !extended,
                seed: ctx.seed,
            };
            let r = classify::classify(k, d, n, dim_piece, &opts)?;
            match ctx.output {
                Output::Text => ctx.line(
                    classify::render_table1(std::slice::from_ref(&r))
                        .trim_end()
                        .to_string(),
                ),
                Output::Structured => ctx.record("classify", json!({"report": r})),
            }
        }
        Command::Table1 {
            extended,
            budget_secs,
        } => {
            let opts = ClassifyOptions {
                sweep: ctx.sweep(None, None),
                no_sweep: false,
                seed: ctx.seed,
            };
            let rows = classify::table1_with_budget(
                extended,
                &opts,
                budget_secs.map(Duration::from_secs),
            )?;
            match ctx.output {
                Output::Text => ctx.line(classify::render_table1(&rows).trim_end().to_string()),
                Output::Structured => {
                    for r in &rows {
                        ctx.record("table1", json!({"report": r}));
                    }
                }
            }
        }
        Command::Table2 => match ctx.output {
            Output::Text => ctx.line(classify::table2().trim_end().to_string()),
            Output::Structured => {
                for l in classify::table2().lines().skip(1) {
                    ctx.record("table2", json!({"row": l.trim_end()}));
                }
            }
        },
        Command::Oracle {
            dims,
            beta,
            samples,
        } => {
            let (k, d, n) = dims.resolve()?;
            let (e, defective) = classify::codim(k, d, n)?;
            let tangent_e = classify::terracini_codim_oracle(k, d, n, ctx.seed);
            let mut rec = json!({"k": k, "d": d, "n": n, "e": e, "defective": defective, "terracini_e": tangent_e});
            let mut agree = tangent_e == e;
            let mut lines = vec![format!("codimension: {e} (tangent spaces: {tangent_e})")];
            if let Some(b) = beta {
                let beta = parse_beta(&b)?;
                let cfg = Config::new(k, d, n);
                cfg.check_weight(&beta)?;
                let s = samples.unwrap_or_else(|| prolong::dim_l(&beta, cfg) + 16);
                let oracle = prolong::interpolation_oracle_kappa(&beta, k, d, n, s, ctx.seed)?;
                let exact = prolong::kappa(&beta, k, d, n, false)?;
                agree &= oracle == exact.kappa;
                lines.push(format!(
                    "kappa at {beta}: {} (evaluation at {s} points: {oracle})",
                    exact.kappa
                ));
                rec["kappa"] = json!(exact.kappa);
                rec["oracle_kappa"] = json!(oracle);
            }
            rec["agree"] = json!(agree);
            match ctx.output {
                Output::Text => lines.into_iter().for_each(|l| ctx.line(l)),
                Output::Structured => ctx.record("oracle", rec),
            }
            if !agree {
                return Err(Failure::Verification(
                    "oracle disagrees with the exact computation".into(),
                ));
            }
        }
    }
    Ok(())
}
