//! The `helix` command line.
//!
//! Exit codes: 0 for a positive answer, 1 for a negative one (not extendable,
//! distinct classes, corpus failures), 2 for unusable input.

pub mod corpus;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::ampleness::{ample_two_periodic, limit_product, three_periodic_ample, three_periodic_cross, three_periodic_seq};
use crate::arith::QuadNum;
use crate::classify::classify_theta;
use crate::hilbert::hilbert_table;
use crate::json::BigIntJson;
use crate::ops::{same_numerical_class, DistinctReason, Equivalence};
use crate::quadform::{to_diag, to_pell};
use crate::seed::{ExtendVerdict, Seed};
use crate::theta::Theta;

#[derive(Debug, Parser)]
#[command(name = "helix", version, about = "Exact numerics of two-periodic elliptic helices")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Add k-digit decimal renderings of quadratic irrationals.
    #[arg(long, global = true, value_name = "K")]
    pub approx: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a seed extends to a helix; report d, D, θ and the normal form.
    Validate { seed: PathBuf },
    /// Ranks and degrees over a window of indices.
    Seq {
        seed: PathBuf,
        #[arg(long, default_value_t = -40, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, default_value_t = 40, allow_hyphen_values = true)]
        to: i64,
    },
    /// Negative limit slope of a seed.
    Theta { seed: PathBuf },
    /// Numerical classes with hom dimension d and negative limit slope θ.
    Classify {
        #[arg(allow_hyphen_values = true)]
        d: BigInt,
        /// e.g. "1/2 - 1/2*sqrt(21)", "-sqrt(6)" or "-inf".
        #[arg(allow_hyphen_values = true)]
        theta: String,
    },
    /// Decide whether two seeds lie in the same numerical class.
    Equiv {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        allow_dual: bool,
    },
    /// Ampleness by the determinant test, for a seed or a three-periodic helix.
    Ample {
        #[arg(required_unless_present = "three_periodic", conflicts_with = "three_periodic")]
        seed: Option<PathBuf>,
        #[arg(long, value_name = "D")]
        three_periodic: Option<BigInt>,
    },
    /// Euler-form table h(i, j) for 0 ≤ i ≤ j ≤ size.
    Hilbert {
        #[arg(long)]
        seed: PathBuf,
        #[arg(long, default_value_t = 5)]
        size: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Diagonal-form and Pell-associate solutions of the seed's rank pairs.
    Pell {
        seed: PathBuf,
        /// Also list the shifted rank pairs with |n| ≤ this bound.
        #[arg(long, default_value_t = 0)]
        shifts: u32,
    },
    /// Run the built-in regression corpus.
    Corpus {
        /// Only cases whose id or citation contains this text.
        #[arg(long)]
        filter: Option<String>,
        /// Extra cases in the corpus JSON format.
        #[arg(long)]
        extra: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

/// Parses arguments, runs the command, and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> anyhow::Result<i32> {
    let ctx = Ctx { json: cli.json, approx: cli.approx };
    match &cli.command {
        Command::Validate { seed } => cmd_validate(&ctx, &read_seed(seed)?, out),
        Command::Seq { seed, from, to } => cmd_seq(&ctx, &read_seed(seed)?, *from, *to, out),
        Command::Theta { seed } => cmd_theta(&ctx, &read_seed(seed)?, out),
        Command::Classify { d, theta } => cmd_classify(&ctx, d, theta, out),
        Command::Equiv { first, second, allow_dual } => {
            cmd_equiv(&ctx, &read_seed(first)?, &read_seed(second)?, *allow_dual, out)
        }
        Command::Ample { seed, three_periodic } => match (seed, three_periodic) {
            (_, Some(d)) => cmd_ample_three(&ctx, d, out),
            (Some(path), None) => cmd_ample(&ctx, &read_seed(path)?, out),
            (None, None) => bail!("give a seed file or --three-periodic d"),
        },
        Command::Hilbert { seed, size, format } => {
            let format = if ctx.json { TableFormat::Json } else { *format };
            cmd_hilbert(&read_seed(seed)?, *size, format, out)
        }
        Command::Pell { seed, shifts } => cmd_pell(&ctx, &read_seed(seed)?, *shifts, out),
        Command::Corpus { filter, extra } => cmd_corpus(&ctx, filter.as_deref(), extra.as_deref(), out),
    }
}

struct Ctx {
    json: bool,
    approx: Option<u32>,
}

impl Ctx {
    fn emit(&self, out: &mut dyn Write, value: &Value, text: &str) -> anyhow::Result<()> {
        if self.json {
            writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
        } else {
            write!(out, "{text}")?;
        }
        Ok(())
    }

    fn approx(&self, q: &QuadNum) -> Option<String> {
        self.approx.map(|k| q.to_decimal(k))
    }

    fn approx_theta(&self, t: &Theta) -> Option<String> {
        match t {
            Theta::NegInfinity => self.approx.map(|_| "-inf".to_string()),
            Theta::Finite(q) => self.approx(q),
        }
    }
}

/// Reads a seed from a JSON file, or from stdin for `-`.
pub fn read_seed(path: &Path) -> anyhow::Result<Seed> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    serde_json::from_str(&text).with_context(|| format!("parsing seed JSON in {}", path.display()))
}

fn with_approx(mut v: Value, key: &str, approx: Option<String>) -> Value {
    if let (Some(a), Some(obj)) = (approx, v.as_object_mut()) {
        obj.insert(key.to_string(), Value::String(a));
    }
    v
}

fn approx_suffix(a: &Option<String>) -> String {
    a.as_ref().map(|s| format!("  (≈ {s})")).unwrap_or_default()
}

fn cmd_validate(ctx: &Ctx, seed: &Seed, out: &mut dyn Write) -> anyhow::Result<i32> {
    let verdict = seed.extendable();
    let theta = verdict.is_yes().then(|| seed.theta()).transpose()?;
    let normalized = match verdict {
        ExtendVerdict::YesGeneric => Some(seed.normalize()?),
        _ => None,
    };
    let theta_approx = theta.as_ref().and_then(|t| ctx.approx_theta(t));
    let value = json!({
        "seed": seed,
        "verdict": verdict,
        "d": BigIntJson(seed.det()),
        "D": BigIntJson(seed.big_d()),
        "theta": theta,
        "normalized": normalized.as_ref().map(|n| json!({"seed": n.seed, "shift": n.shift, "tie": n.tie})),
    });
    let mut text = format!("seed: {seed:?}\nverdict: {verdict:?}\nd = {}\nD = {}\n", seed.det(), seed.big_d());
    if let Some(t) = &theta {
        text += &format!("theta = {t}{}\n", approx_suffix(&theta_approx));
    }
    if let Some(n) = &normalized {
        text += &format!("normalized: {:?} (shift {}, tie {})\n", n.seed, n.shift, n.tie);
    }
    ctx.emit(out, &with_approx(value, "theta_approx", theta_approx), &text)?;
    Ok(if verdict.is_yes() { 0 } else { 1 })
}

fn cmd_seq(ctx: &Ctx, seed: &Seed, from: i64, to: i64, out: &mut dyn Write) -> anyhow::Result<i32> {
    let terms = seed.rank_deg_window(from, to)?;
    let mut text = String::from("n\trank\tdegree\n");
    for t in &terms {
        text += &format!("{}\t{}\t{}\n", t.index, t.rank, t.degree);
    }
    ctx.emit(out, &json!({"seed": seed, "terms": terms}), &text)?;
    Ok(0)
}

fn cmd_theta(ctx: &Ctx, seed: &Seed, out: &mut dyn Write) -> anyhow::Result<i32> {
    let theta = seed.theta()?;
    let approx = ctx.approx_theta(&theta);
    let value = json!({"seed": seed, "d": BigIntJson(seed.det()), "D": BigIntJson(seed.big_d()), "theta": theta});
    let text = format!("{theta}{}\n", approx_suffix(&approx));
    ctx.emit(out, &with_approx(value, "theta_approx", approx), &text)?;
    Ok(0)
}

fn cmd_classify(ctx: &Ctx, d: &BigInt, theta: &str, out: &mut dyn Write) -> anyhow::Result<i32> {
    let theta: Theta = theta.parse().with_context(|| format!("cannot parse θ = {theta:?}"))?;
    let report = classify_theta(d, &theta)?;
    let mut text = format!("d = {}, D = {}, theta = {}\n", report.d, report.big_d, report.theta);
    text += &format!("{} numerical class{}\n", report.count, if report.count == 1 { "" } else { "es" });
    for c in &report.classes {
        text += &format!(
            "  {:?}  orbit ({}, {})  gcd {}  coset {}\n",
            c.seed, c.orbit.0, c.orbit.1, c.gcd_bar, c.coset
        );
    }
    for w in &report.warnings {
        text += &format!("warning: {w}\n");
    }
    let value = with_approx(serde_json::to_value(&report)?, "theta_approx", ctx.approx_theta(&theta));
    ctx.emit(out, &value, &text)?;
    Ok(0)
}

fn reason_text(r: &DistinctReason) -> String {
    match r {
        DistinctReason::HomDimensionMismatch { d1, d2 } => format!("hom dimensions differ ({d1} vs {d2})"),
        DistinctReason::RankOrbits => "rank sequences are not shifts of each other".into(),
        DistinctReason::TwistCoset => "degrees differ by a non-integral twist".into(),
    }
}

fn cmd_equiv(ctx: &Ctx, a: &Seed, b: &Seed, allow_dual: bool, out: &mut dyn Write) -> anyhow::Result<i32> {
    let outcome = same_numerical_class(a, b, allow_dual)?;
    let (value, text, code) = match &outcome {
        Equivalence::Same(w) => {
            let label = if w.dual { "equivalent up to dual" } else { "equivalent" };
            (json!({"witness": w, "reason": null}), format!("{label}: {w}\n"), 0)
        }
        Equivalence::Distinct(r) => {
            (json!({"witness": null, "reason": reason_text(r)}), format!("distinct: {}\n", reason_text(r)), 1)
        }
    };
    ctx.emit(out, &value, &text)?;
    Ok(code)
}

fn cmd_ample(ctx: &Ctx, seed: &Seed, out: &mut dyn Write) -> anyhow::Result<i32> {
    let ample = ample_two_periodic(seed)?;
    let lim = limit_product(seed)?;
    let exceeds = lim.checked_sub(&QuadNum::from_int(1))?.signum() > 0;
    let approx = ctx.approx(&lim);
    let value = json!({
        "seed": seed,
        "det": BigIntJson(seed.det()),
        "ample": ample,
        "limit_product": lim,
        "limit_exceeds_one": exceeds,
    });
    let text = format!(
        "ample: {ample}\ndet M = {}\nlimit product = {lim}{}\nlimit product > 1: {exceeds}\n",
        seed.det(),
        approx_suffix(&approx)
    );
    ctx.emit(out, &with_approx(value, "limit_product_approx", approx), &text)?;
    Ok(if ample { 0 } else { 1 })
}

fn cmd_ample_three(ctx: &Ctx, d: &BigInt, out: &mut dyn Write) -> anyhow::Result<i32> {
    let ample = three_periodic_ample(d)?;
    let seq = three_periodic_seq(d, -2, 2)?;
    let cross = three_periodic_cross(&seq, 0).expect("window covers n = −2..0");
    let text = format!("three-periodic d = {d}\nample: {ample}\ncross product = ({}, {}, {})\n", cross[0], cross[1], cross[2]);
    let cross: Vec<BigIntJson> = cross.into_iter().map(BigIntJson).collect();
    let value = json!({"d": BigIntJson(d.clone()), "ample": ample, "cross_product": cross, "terms": seq.terms});
    ctx.emit(out, &value, &text)?;
    Ok(if ample { 0 } else { 1 })
}

fn cmd_hilbert(seed: &Seed, size: usize, format: TableFormat, out: &mut dyn Write) -> anyhow::Result<i32> {
    let table = hilbert_table(seed, size)?;
    match format {
        TableFormat::Csv => write!(out, "{}", table.to_csv())?,
        TableFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&table)?)?,
    }
    Ok(0)
}

fn cmd_pell(ctx: &Ctx, seed: &Seed, shifts: u32, out: &mut dyn Write) -> anyhow::Result<i32> {
    let d = seed.det();
    let bound = i64::from(shifts);
    let terms = seed.rank_deg_window(-bound - 1, bound)?;
    let mut rows = Vec::new();
    let mut text = String::from("n\tx\ty\tX\tY\n");
    for pair in terms.windows(2) {
        let diag = to_diag(&pair[0].rank, &pair[1].rank, &d)?;
        let pell = to_pell(&diag)?;
        text += &format!("{}\t{}\t{}\t{}\t{}\n", pair[1].index, diag.x, diag.y, pell.big_x, pell.big_y);
        rows.push(json!({"shift": pair[1].index, "diag": diag, "pell": pell}));
    }
    ctx.emit(out, &json!({"seed": seed, "d": BigIntJson(d.clone()), "solutions": rows}), &text)?;
    Ok(0)
}

fn cmd_corpus(ctx: &Ctx, filter: Option<&str>, extra: Option<&Path>, out: &mut dyn Write) -> anyhow::Result<i32> {
    let mut cases = corpus::builtin_cases();
    if let Some(path) = extra {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        cases.extend(corpus::parse_cases(&text).with_context(|| format!("parsing cases in {}", path.display()))?);
    }
    if let Some(f) = filter {
        cases.retain(|c| c.matches(f));
    }
    let outcomes = corpus::run_cases(&cases);
    let failed: Vec<_> = outcomes.iter().filter(|o| o.failure.is_some()).collect();
    let passed = outcomes.len() - failed.len();
    let mut text = String::new();
    for o in &failed {
        text += &format!("FAIL {} [{}]: {}\n", o.id, o.citation, o.failure.as_deref().unwrap_or_default());
    }
    text += &format!("{passed} passed, {} failed\n", failed.len());
    let value = json!({
        "passed": passed,
        "failed": failed.iter().map(|o| json!({"id": o.id, "citation": o.citation, "message": o.failure})).collect::<Vec<_>>(),
    });
    ctx.emit(out, &value, &text)?;
    Ok(if failed.is_empty() { 0 } else { 1 })
}
