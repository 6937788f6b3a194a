//! Command-line front end: construct quadratic-residue CSS codes, run
//! reduction chains, reproduce the built-in parameter tables, and verify
//! minimum distances under explicit enumeration budgets.

use cssprop_cli::{report, tables};

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use cssprop::{
    derive_chain, involution_plan, min_weight, quantum_qr, relative_min_weight, ChainConfig,
    ChainRule, CssCode, DistanceValue, Engine, EnumerationBudget, Field, LinearCode,
    MinDistOptions, QuantumParams, VerifyConfig,
};

use report::{BudgetInfo, MatrixBlock, Report, ReportRow, RowSource};
use tables::VerifyLevel;

/// Build CSS quantum codes from classical codes and propagate their
/// parameters through length-reduction rules.
#[derive(Parser)]
#[command(name = "cssprop", version, about)]
struct Cli {
    /// Seed for any randomized fixture generation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for exhaustive enumeration (0 = all cores).
    /// Env override: CSSPROP_THREADS.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Abort enumeration after this many codewords.
    /// Env override: CSSPROP_MAX_CODEWORDS.
    #[arg(long, global = true)]
    max_codewords: Option<u64>,

    /// Abort enumeration after this many seconds.
    /// Env override: CSSPROP_MAX_SECONDS.
    #[arg(long, global = true)]
    max_seconds: Option<f64>,

    /// Write the structured JSON report here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    #[default]
    Brute,
    Bz,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Engine {
        match e {
            EngineArg::Brute => Engine::Brute,
            EngineArg::Bz => Engine::BrouwerZimmermann,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum RuleArg {
    /// Puncture one code, shorten the other: n-1, d1-1.
    Reduce1,
    /// Both sides in turn: n-2, each distance -1.
    #[default]
    Reduce2,
    /// Puncture both codes: n-1, k+1, each distance -1.
    Pair,
}

impl From<RuleArg> for ChainRule {
    fn from(r: RuleArg) -> ChainRule {
        match r {
            RuleArg::Reduce1 => ChainRule::ReduceOne,
            RuleArg::Reduce2 => ChainRule::ReduceTwo,
            RuleArg::Pair => ChainRule::PairPuncture,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum VerifyArg {
    #[default]
    None,
    Small,
    All,
}

impl From<VerifyArg> for VerifyLevel {
    fn from(v: VerifyArg) -> VerifyLevel {
        match v {
            VerifyArg::None => VerifyLevel::None,
            VerifyArg::Small => VerifyLevel::Small,
            VerifyArg::All => VerifyLevel::All,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Construct a quadratic-residue CSS code and report its parameters.
    Qr {
        /// Prime code length n.
        #[arg(long)]
        n: u64,
        /// Field order (a prime that is a square modulo n).
        #[arg(long)]
        q: u64,
        /// Build the length-(n+1) extended code ([[n+1, 0]]) instead of [[n, 1]].
        #[arg(long)]
        extended: bool,
        /// Distance engine for k = 0 codes.
        #[arg(long, value_enum, default_value_t)]
        engine: EngineArg,
        /// Skip distance computation and emit the shell only.
        #[arg(long)]
        no_distances: bool,
        /// Include the generator matrices in the output.
        #[arg(long)]
        matrices: bool,
    },
    /// Apply a reduction rule repeatedly to a seed code.
    Chain {
        /// Seed from a quadratic-residue construction: prime length n.
        #[arg(long, conflicts_with_all = ["seed_file", "seed_params"])]
        seed_qr: Option<u64>,
        /// Field order for --seed-qr.
        #[arg(long)]
        q: Option<u64>,
        /// Use the extended QR code as the seed.
        #[arg(long)]
        extended: bool,
        /// Seed from a generator-matrix file (the code C is used as both
        /// constituents; its dual must be self-orthogonal into C).
        #[arg(long, conflicts_with = "seed_params")]
        seed_file: Option<PathBuf>,
        /// Parameter-only seed, e.g. "[[168,0,24]]_2"; no codes are built.
        #[arg(long)]
        seed_params: Option<String>,
        /// Declare the seed distance instead of computing it.
        #[arg(long)]
        seed_distance: Option<u32>,
        /// Number of rule applications.
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value_t)]
        rule: RuleArg,
        /// Re-verify each derived code's distances by enumeration.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t)]
        engine: EngineArg,
    },
    /// Reproduce one of the built-in parameter tables.
    Table {
        /// Which table: 1 (binary, extended QR seeds), 2 (binary,
        /// self-dual seeds) or 3 (ternary, from [[60,0,18]]).
        #[arg(long)]
        which: u8,
        #[arg(long, value_enum, default_value_t)]
        verify: VerifyArg,
        /// Generator-matrix file for a table-2 seed, as LENGTH=PATH
        /// (e.g. --matrix 152=codes/sd152.gen). May repeat.
        #[arg(long = "matrix")]
        matrices: Vec<String>,
    },
    /// Compute the minimum weight of a code from a generator-matrix file.
    Mindist {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        engine: EngineArg,
        /// Compute the relative minimum weight over codewords outside this
        /// subcode instead.
        #[arg(long)]
        relative: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn env_parse<T: std::str::FromStr>(name: &str) -> Option<T> {
    std::env::var(name).ok()?.parse().ok()
}

fn run(cli: Cli) -> Result<ExitCode> {
    let threads = cli
        .threads
        .or_else(|| env_parse("CSSPROP_THREADS"))
        .unwrap_or(0);
    let max_codewords = cli
        .max_codewords
        .or_else(|| env_parse("CSSPROP_MAX_CODEWORDS"))
        .unwrap_or(1 << 28);
    let max_seconds = cli
        .max_seconds
        .or_else(|| env_parse("CSSPROP_MAX_SECONDS"))
        .unwrap_or(600.0);
    let opts = MinDistOptions {
        budget: EnumerationBudget {
            max_codewords,
            max_seconds,
        },
        threads,
    };
    let budget_info = BudgetInfo {
        max_codewords,
        max_seconds: max_seconds.is_finite().then_some(max_seconds),
    };
    let started = Instant::now();

    let (mut report, exit) = match &cli.cmd {
        Cmd::Qr {
            n,
            q,
            extended,
            engine,
            no_distances,
            matrices,
        } => {
            let mut report = Report::new(
                format!(
                    "qr --n {n} --q {q}{}",
                    if *extended { " --extended" } else { "" }
                ),
                cli.seed,
                threads,
                budget_info,
            );
            cmd_qr(
                *n,
                *q,
                *extended,
                (*engine).into(),
                *no_distances,
                *matrices,
                &opts,
                &mut report,
            )?;
            (report, ExitCode::SUCCESS)
        }
        Cmd::Chain {
            seed_qr,
            q,
            extended,
            seed_file,
            seed_params,
            seed_distance,
            steps,
            rule,
            verify,
            engine,
        } => {
            let mut report = Report::new(
                format!("chain --steps {steps} --rule {:?}", rule).to_lowercase(),
                cli.seed,
                threads,
                budget_info,
            );
            cmd_chain(
                ChainSeed {
                    qr: seed_qr.map(|n| (n, q.unwrap_or(2), *extended)),
                    file: seed_file.clone(),
                    params: seed_params.clone(),
                    declared_distance: *seed_distance,
                },
                *steps,
                (*rule).into(),
                *verify,
                (*engine).into(),
                &opts,
                &mut report,
            )?;
            (report, ExitCode::SUCCESS)
        }
        Cmd::Table {
            which,
            verify,
            matrices,
        } => {
            let level: VerifyLevel = (*verify).into();
            let mut report = Report::new(
                format!("table --which {which} --verify {}", level.label()),
                cli.seed,
                threads,
                budget_info,
            );
            let files = parse_matrix_args(matrices)?;
            tables::generate_table(*which, level, &files, &opts, &mut report)?;
            (report, ExitCode::SUCCESS)
        }
        Cmd::Mindist {
            file,
            engine,
            relative,
        } => {
            let mut report = Report::new(
                format!("mindist --engine {:?}", engine).to_lowercase(),
                cli.seed,
                threads,
                budget_info,
            );
            let verified = cmd_mindist(
                file,
                (*engine).into(),
                relative.as_deref(),
                &opts,
                &mut report,
            )?;
            let exit = if verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            };
            (report, exit)
        }
    };

    report.runtime_ms = started.elapsed().as_millis() as u64;
    print!("{}", report.render_text());
    if let Some(path) = &cli.out {
        std::fs::write(path, report.to_json())
            .with_context(|| format!("writing report to {}", path.display()))?;
    }
    Ok(exit)
}

#[allow(clippy::too_many_arguments)]
fn cmd_qr(
    n: u64,
    q: u64,
    extended: bool,
    engine: Engine,
    no_distances: bool,
    with_matrices: bool,
    opts: &MinDistOptions,
    report: &mut Report,
) -> Result<()> {
    let field = Field::new(q, 1).map_err(|e| anyhow!("bad field order {q}: {e}"))?;
    let code = quantum_qr(n, &field, extended)?;
    let trace = code.trace().to_string();
    let row = if no_distances {
        report
            .notes
            .push("distances not computed (--no-distances)".into());
        ReportRow {
            q,
            n: code.n() as u32,
            k: code.k() as u32,
            d1: DistanceValue::lower_bound(1, cssprop::DistanceMethod::TheoremDerived),
            d2: DistanceValue::lower_bound(1, cssprop::DistanceMethod::TheoremDerived),
            source: RowSource::TheoremBound,
            declared_d: None,
            star: None,
            trace,
            note: Some("distances unknown".into()),
        }
    } else {
        let computed = code.compute_distances(engine, opts)?;
        let p = computed.params().expect("distances computed");
        let verified = p.d1.is_verified() && p.d2.is_verified();
        if !verified {
            report
                .notes
                .push("enumeration aborted under budget; distances are lower bounds".into());
        }
        ReportRow::from_params(
            &p,
            if verified {
                RowSource::Verified
            } else {
                RowSource::TheoremBound
            },
            trace,
        )
    };
    report.rows.push(row);
    if with_matrices {
        report.matrices = Some(vec![
            MatrixBlock {
                label: "c1".into(),
                text: code.c1().to_text(),
            },
            MatrixBlock {
                label: "c2".into(),
                text: code.c2().to_text(),
            },
        ]);
    }
    Ok(())
}

struct ChainSeed {
    qr: Option<(u64, u64, bool)>,
    file: Option<PathBuf>,
    params: Option<String>,
    declared_distance: Option<u32>,
}

fn cmd_chain(
    seed: ChainSeed,
    steps: usize,
    rule: ChainRule,
    verify: bool,
    engine: Engine,
    opts: &MinDistOptions,
    report: &mut Report,
) -> Result<()> {
    if let Some(text) = &seed.params {
        // parameter-only mode
        let mut p = parse_params(text)?;
        if let Some(d) = seed.declared_distance {
            p = QuantumParams::declared(p.q, p.n, p.k, d);
        }
        if verify {
            report
                .notes
                .push("parameter-only mode: nothing to verify".into());
        }
        report.rows.push(ReportRow::from_params(
            &p,
            RowSource::Ingested,
            "seed (parameters only)".into(),
        ));
        let mut current = p;
        for step in 0..steps {
            let next = match rule {
                ChainRule::ReduceOne => current.reduce_one(),
                ChainRule::ReduceTwo => current.reduce_two(),
                ChainRule::PairPuncture => current.pair_puncture(),
            };
            match next {
                Ok(np) => {
                    report.rows.push(ReportRow::from_params(
                        &np,
                        RowSource::TheoremBound,
                        format!("{p} | step {}", step + 1),
                    ));
                    current = np;
                }
                Err(e) => {
                    report
                        .notes
                        .push(format!("chain truncated at step {}: {e}", step + 1));
                    break;
                }
            }
        }
        return Ok(());
    }

    // code-backed modes
    let (css, plan) = if let Some((n, q, extended)) = seed.qr {
        let field = Field::new(q, 1).map_err(|e| anyhow!("bad field order {q}: {e}"))?;
        let css = quantum_qr(n, &field, extended)?;
        let plan = (extended && rule != ChainRule::PairPuncture)
            .then(|| involution_plan(n, steps))
            .transpose()?;
        (css, plan)
    } else if let Some(path) = &seed.file {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading seed matrix {}", path.display()))?;
        let c = LinearCode::from_text(&text)
            .with_context(|| format!("parsing seed matrix {}", path.display()))?;
        let css = CssCode::new(c.clone(), c)
            .map_err(|e| anyhow!("seed code is not dual-containing: {e}"))?;
        (css, None)
    } else {
        bail!("a chain needs a seed: --seed-qr, --seed-file or --seed-params");
    };

    let css = if let Some(d) = seed.declared_distance {
        report
            .notes
            .push(format!("seed distance {d} supplied as an external input"));
        css.with_declared_distances(d, d)
    } else {
        let computed = css.compute_distances(engine, opts)?;
        let p = computed.params().expect("distances computed");
        if !(p.d1.is_verified() && p.d2.is_verified()) {
            report
                .notes
                .push("seed enumeration aborted under budget; chain uses the trivial bound".into());
        }
        computed
    };
    let seed_params = css.params().expect("seed distances known");
    let seed_verified = seed_params.d1.is_verified() && seed_params.d2.is_verified();
    report.rows.push(ReportRow::from_params(
        &seed_params,
        if seed_verified {
            RowSource::Verified
        } else {
            RowSource::Ingested
        },
        css.trace().to_string(),
    ));

    let cfg = ChainConfig {
        rule: Some(rule),
        steps,
        plan,
        verify: verify.then_some(VerifyConfig {
            engine,
            opts: *opts,
        }),
    };
    let outcome = derive_chain(&css, &cfg)?;
    for entry in &outcome.entries {
        let p = entry.params();
        report.rows.push(ReportRow::from_params(
            &p,
            if entry.verified {
                RowSource::Verified
            } else {
                RowSource::TheoremBound
            },
            entry.code.trace().to_string(),
        ));
    }
    if let Some(reason) = outcome.truncated {
        report.notes.push(format!("chain truncated: {reason}"));
    }
    for note in outcome.notes {
        report.notes.push(note);
    }
    Ok(())
}

fn cmd_mindist(
    file: &std::path::Path,
    engine: Engine,
    relative: Option<&std::path::Path>,
    opts: &MinDistOptions,
    report: &mut Report,
) -> Result<bool> {
    let code = LinearCode::from_text(
        &std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?,
    )
    .with_context(|| format!("parsing {}", file.display()))?;
    let d = match relative {
        Some(sub_path) => {
            let sub = LinearCode::from_text(
                &std::fs::read_to_string(sub_path)
                    .with_context(|| format!("reading {}", sub_path.display()))?,
            )
            .with_context(|| format!("parsing {}", sub_path.display()))?;
            if engine == Engine::BrouwerZimmermann {
                report
                    .notes
                    .push("relative distances always use exhaustive coset enumeration".into());
            }
            relative_min_weight(&code, &sub, opts)?
        }
        None => min_weight(&code, engine, opts)?,
    };
    report
        .notes
        .push(format!("code {} over GF({})", code, code.field().order()));
    report.notes.push(format!(
        "minimum weight {} ({})",
        d,
        if d.is_verified() {
            "verified"
        } else {
            "lower bound; enumeration aborted under budget"
        }
    ));
    Ok(d.is_verified())
}

fn parse_matrix_args(args: &[String]) -> Result<BTreeMap<u32, PathBuf>> {
    let mut out = BTreeMap::new();
    for arg in args {
        let (len, path) = arg
            .split_once('=')
            .ok_or_else(|| anyhow!("--matrix takes LENGTH=PATH, got {arg}"))?;
        let len: u32 = len
            .parse()
            .map_err(|_| anyhow!("bad length in --matrix {arg}"))?;
        out.insert(len, PathBuf::from(path));
    }
    Ok(out)
}

/// Parses "[[n,k,d]]_q".
fn parse_params(text: &str) -> Result<QuantumParams> {
    let err = || anyhow!("expected parameters like [[168,0,24]]_2, got {text}");
    let rest = text.trim().strip_prefix("[[").ok_or_else(err)?;
    let (inner, q) = rest.split_once("]]_").ok_or_else(err)?;
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != 3 {
        return Err(err());
    }
    let n: u32 = parts[0].trim().parse().map_err(|_| err())?;
    let k: u32 = parts[1].trim().parse().map_err(|_| err())?;
    let d: u32 = parts[2].trim().parse().map_err(|_| err())?;
    let q: u64 = q.trim().parse().map_err(|_| err())?;
    Ok(QuantumParams::declared(q, n, k, d))
}
