use std::fmt::Write as _;

use cjt_core::chains::greene_kleitman_lambda;
use cjt_core::fibers::{check_box_fibers, q_fibers_with, BoxReport};
use cjt_core::field::{FieldSpec, DEFAULT_PRIME};
use cjt_core::oracle::{generic_commuting_type, verify_q_escalating, OracleConfig, DEFAULT_SAMPLES, DEFAULT_SEED};
use cjt_core::poset::{max_u_chains, PosetDp};
use cjt_core::verify::check_properties;
use cjt_core::{oblak_process, q_map, Error, Partition};
use clap::{Args, Parser, Subcommand};

use crate::format::{
    self, BoxDoc, BoxRunDoc, EscalationDoc, OracleDoc, OracleRunDoc, PosetDoc, QDoc, TraceDoc, VerifyDoc,
};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const PROPERTY_FAILURE: i32 = 2;
    pub const CONJECTURE_FINDING: i32 = 3;
    pub const INTERNAL: i32 = 4;
}

#[derive(Debug, Parser)]
#[command(
    name = "cjt",
    version,
    about = "Generic commuting Jordan types of nilpotent matrices"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Emit JSON instead of text.
    #[arg(long, global = true, env = "CJT_JSON")]
    pub json: bool,

    /// Prime modulus for the sampling oracle.
    #[arg(long = "prime", global = true, env = "CJT_PRIME", default_value_t = DEFAULT_PRIME)]
    pub prime: u64,

    /// Samples drawn per partition by the oracle.
    #[arg(long, global = true, env = "CJT_SAMPLES", default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,

    /// Master seed (decimal or 0x-prefixed hex).
    #[arg(long, global = true, env = "CJT_SEED", default_value = "0x4a430001", value_parser = parse_seed)]
    pub seed: u64,

    /// Upper bound on n for exhaustive sweeps.
    #[arg(long = "max-n", global = true, env = "CJT_MAX_N", default_value_t = 40)]
    pub max_n: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            json: false,
            prime: DEFAULT_PRIME,
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            max_n: 40,
        }
    }
}

impl RunConfig {
    pub fn oracle(&self) -> OracleConfig {
        OracleConfig {
            prime: self.prime,
            samples: self.samples,
            seed: self.seed,
        }
    }

    /// Rejects a non-prime modulus, `q <= n`, or zero samples.
    pub fn validate_oracle(&self, n: usize) -> Result<(), Error> {
        if self.samples == 0 {
            return Err(Error::NoSamples);
        }
        FieldSpec::Prime(self.prime).validate_for(n)
    }

    fn check_n(&self, n: usize) -> Result<(), Error> {
        if n > self.max_n {
            return Err(Error::ResourceLimit {
                what: "n",
                limit: self.max_n,
                got: n,
            });
        }
        Ok(())
    }
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(&hex.replace('_', ""), 16),
        None => s.replace('_', "").parse(),
    };
    parsed.map_err(|e| format!("invalid seed `{s}`: {e}"))
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print Q(P).
    Q { partition: String },
    /// Show the Oblak process step by step.
    Trace { partition: String },
    /// Export the poset D_P as DOT or JSON.
    Poset {
        partition: String,
        /// Emit DOT (default unless --json).
        #[arg(long)]
        dot: bool,
        /// Box the vertices of the U-chain U_P(p).
        #[arg(long, value_name = "P")]
        highlight: Option<usize>,
        /// Also print Gansner's lambda(D_P) (text mode).
        #[arg(long)]
        lambda: bool,
    },
    /// Check the properties of Q on every partition of n.
    Verify {
        n: usize,
        /// Run tie exploration only up to this n.
        #[arg(long, default_value_t = 12)]
        tie_max: usize,
    },
    /// Compare Q(P) with the sampling oracle.
    Oracle {
        /// Partition to check; omit with --sweep.
        partition: Option<String>,
        /// Check every partition of every m <= N instead.
        #[arg(long, value_name = "N", conflicts_with = "partition")]
        sweep: Option<usize>,
        /// Retries with more samples and a larger prime before reporting a shortfall.
        #[arg(long, default_value_t = 2)]
        escalate: usize,
    },
    /// Check the box-shape predictions for the fibers of Q over partitions of n.
    Box {
        n: usize,
        /// Compute Q with the sampling oracle instead of the Oblak process.
        #[arg(long)]
        oracle: bool,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: exit::OK,
        }
    }

    fn with_code(stdout: String, code: i32) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code,
        }
    }

    fn error(err: &Error) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
            code: error_code(err),
        }
    }
}

fn error_code(err: &Error) -> i32 {
    match err {
        Error::NilpotencyGuard { .. } | Error::CommutationGuard { .. } | Error::IncomparableSamples { .. } => {
            exit::INTERNAL
        }
        _ => exit::USAGE,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            } else {
                Outcome::ok(text)
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let cfg = &cli.config;
    let result = match &cli.command {
        Command::Q { partition } => cmd_q(cfg, partition),
        Command::Trace { partition } => cmd_trace(cfg, partition),
        Command::Poset {
            partition,
            dot,
            highlight,
            lambda,
        } => cmd_poset(cfg, partition, *dot, *highlight, *lambda),
        Command::Verify { n, tie_max } => cmd_verify(cfg, *n, *tie_max),
        Command::Oracle {
            partition,
            sweep,
            escalate,
        } => cmd_oracle(cfg, partition.as_deref(), *sweep, *escalate),
        Command::Box { n, oracle } => cmd_box(cfg, *n, *oracle),
    };
    result.unwrap_or_else(|e| Outcome::error(&e))
}

fn parse(text: &str) -> Result<Partition, Error> {
    let p: Partition = text.parse()?;
    if p.is_empty() {
        return Err(Error::EmptyPartition);
    }
    Ok(p)
}

fn to_json<T: serde::Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn cmd_q(cfg: &RunConfig, text: &str) -> Result<Outcome, Error> {
    let p = parse(text)?;
    let q = q_map(&p)?;
    Ok(Outcome::ok(if cfg.json {
        to_json(&QDoc::new(&p, &q))
    } else {
        format!("{q}\n")
    }))
}

fn cmd_trace(cfg: &RunConfig, text: &str) -> Result<Outcome, Error> {
    let p = parse(text)?;
    let trace = oblak_process(&p)?;
    let doc = TraceDoc::new(&trace);
    if cfg.json {
        return Ok(Outcome::ok(to_json(&doc)));
    }
    let mut out = String::new();
    let _ = writeln!(out, "P = ({})", trace.input);
    let mut current = trace.input.clone();
    for (i, (step, sdoc)) in trace.steps.iter().zip(&doc.steps).enumerate() {
        let r = current.subpartition_r(step.chosen_p)?;
        let ties = if sdoc.maximizers.len() > 1 {
            let list: Vec<String> = sdoc.maximizers.iter().map(ToString::to_string).collect();
            format!(" (maximal for p in {{{}}})", list.join(", "))
        } else {
            String::new()
        };
        let _ = writeln!(
            out,
            "step {}: remove U({}) over R = ({}), |max U-chain| = {}{} -> P{} = ({})",
            i + 1,
            step.chosen_p,
            r,
            step.chain_size,
            ties,
            i + 1,
            step.residual
        );
        current = step.residual.clone();
    }
    let _ = writeln!(out, "Q(P) = ({})", trace.result);
    Ok(Outcome::ok(out))
}

fn cmd_poset(cfg: &RunConfig, text: &str, dot: bool, highlight: Option<usize>, lambda: bool) -> Result<Outcome, Error> {
    let p = parse(text)?;
    let dp = PosetDp::build(&p)?;
    let chain = highlight.map(|h| dp.u_chain(h)).transpose()?;
    if cfg.json && !dot {
        let doc = PosetDoc::new(&dp, chain.as_ref().map(|c| c.vertices.as_slice()));
        return Ok(Outcome::ok(to_json(&doc)));
    }
    let mut out = dp.to_dot(chain.as_ref());
    if lambda {
        let l = greene_kleitman_lambda(&dp)?;
        let (_, best) = max_u_chains(&p)?;
        let _ = writeln!(out, "// lambda(D_P) = ({l}); max U-chain = {best}");
    }
    Ok(Outcome::ok(out))
}

fn cmd_verify(cfg: &RunConfig, n: usize, tie_max: usize) -> Result<Outcome, Error> {
    cfg.check_n(n)?;
    let report = check_properties(n, tie_max)?;
    let code = if report.passed() {
        exit::OK
    } else {
        exit::PROPERTY_FAILURE
    };
    if cfg.json {
        return Ok(Outcome::with_code(to_json(&VerifyDoc::new(&report)), code));
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "n = {n}: checked {} partitions (tie exploration {}): {}",
        report.checked,
        if n <= tie_max { "on" } else { "off" },
        if report.passed() { "PASS" } else { "FAIL" }
    );
    for v in &report.violations {
        let _ = writeln!(out, "  violation: {} for P = ({})", v.property.name(), v.partition);
    }
    Ok(Outcome::with_code(out, code))
}

fn cmd_oracle(cfg: &RunConfig, text: Option<&str>, sweep: Option<usize>, escalate: usize) -> Result<Outcome, Error> {
    let targets: Vec<Partition> = match (text, sweep) {
        (Some(t), _) => vec![parse(t)?],
        (None, Some(n)) => {
            cfg.check_n(n)?;
            (1..=n)
                .map(|m| cjt_core::fibers::enumerate_partitions_bounded(m, cfg.max_n))
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .flatten()
                .collect()
        }
        (None, None) => return Err(Error::EmptyPartition),
    };
    let largest = targets.iter().map(Partition::total).max().unwrap_or(0);
    cfg.validate_oracle(largest)?;
    let oracle_cfg = cfg.oracle();
    let runs = targets
        .iter()
        .map(|p| verify_q_escalating(p, &oracle_cfg, escalate))
        .collect::<Result<Vec<_>, _>>()?;
    let escalated = |used: &OracleConfig| (*used != oracle_cfg).then_some(*used);
    let reports: Vec<_> = runs.iter().map(|(r, _)| r.clone()).collect();
    let all_agree = reports.iter().all(|r| r.passed());
    let code = if all_agree { exit::OK } else { exit::PROPERTY_FAILURE };
    if cfg.json {
        let doc = OracleRunDoc {
            schema: format::SCHEMA.into(),
            prime: cfg.prime,
            samples: cfg.samples,
            seed: cfg.seed,
            reports: runs
                .iter()
                .map(|(r, used)| OracleDoc {
                    escalated: escalated(used).map(|c| EscalationDoc {
                        prime: c.prime,
                        samples: c.samples,
                    }),
                    ..OracleDoc::new(r)
                })
                .collect(),
            all_agree,
        };
        return Ok(Outcome::with_code(to_json(&doc), code));
    }
    let mut out = String::new();
    for (r, used) in &runs {
        let status = if r.passed() { "agree" } else { "DISAGREE" };
        let _ = writeln!(
            out,
            "P = ({}): oblak ({}), oracle ({}) {status}",
            r.partition, r.oblak, r.oracle
        );
        if let Some(c) = escalated(used) {
            let _ = writeln!(out, "  escalated to q = {}, {} samples", c.prime, c.samples);
        }
        if text.is_some() || !r.passed() {
            for (i, s) in r.samples.iter().enumerate() {
                let flag = if r.undominated.contains(&i) {
                    "  NOT DOMINATED"
                } else {
                    ""
                };
                let _ = writeln!(out, "  sample {i} seed {:#018x}: ({}){flag}", s.seed, s.jordan_type);
            }
        }
    }
    if sweep.is_some() {
        let _ = writeln!(
            out,
            "{} partitions, {} disagreements",
            reports.len(),
            reports.iter().filter(|r| !r.passed()).count()
        );
    }
    Ok(Outcome::with_code(out, code))
}

fn cmd_box(cfg: &RunConfig, n: usize, use_oracle: bool) -> Result<Outcome, Error> {
    cfg.check_n(n)?;
    let fibers = if use_oracle {
        cfg.validate_oracle(n)?;
        let oracle_cfg = cfg.oracle();
        q_fibers_with(n, cfg.max_n, |p| generic_commuting_type(p, &oracle_cfg))?
    } else {
        q_fibers_with(n, cfg.max_n, q_map)?
    };
    let reports = check_box_fibers(fibers)?;
    let all_pass = reports.iter().all(BoxReport::passed);
    let code = if all_pass { exit::OK } else { exit::CONJECTURE_FINDING };
    if cfg.json {
        let doc = BoxRunDoc {
            schema: format::SCHEMA.into(),
            n,
            reports: reports.iter().map(BoxDoc::new).collect(),
            all_pass,
        };
        return Ok(Outcome::with_code(to_json(&doc), code));
    }
    Ok(Outcome::with_code(render_box_table(n, &reports), code))
}

fn join(v: &[usize], sep: &str) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

pub fn render_box_table(n: usize, reports: &[BoxReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<16} {:<12} {:>9} {:>9} {:>6} {:>6}  result",
        "Q", "box", "predicted", "observed", "size", "parts"
    );
    for r in reports {
        let verdict = if r.passed() { "PASS" } else { "FAIL" };
        let ok = |b: bool| if b { "ok" } else { "bad" };
        let _ = writeln!(
            out,
            "{:<16} {:<12} {:>9} {:>9} {:>6} {:>6}  {verdict}",
            format!("({})", r.q),
            join(&r.dims, "x"),
            r.predicted,
            r.fiber.len(),
            ok(r.cardinality_ok && r.two_part_ok != Some(false)),
            ok(r.part_count_ok),
        );
        if !r.passed() {
            for member in &r.fiber {
                let _ = writeln!(out, "    ({member}) [{} parts]", member.len());
            }
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let _ = writeln!(out, "n = {n}: {} stable partitions, {failed} failing", reports.len());
    out
}
