//! Command-line interface.
//!
//! Every subcommand prints a short human-readable summary, or with `--json`
//! a [`RunReport`]. Exit codes: 0 success (or set is free), 1 progression
//! found, 2 usage or input error, 3 construction failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::codes::{CodeTable, TableName};
use crate::constructions::frequency::{equal_frequency_member, equal_frequency_sampler};
use crate::constructions::{
    self, behrend_shell, bound_theorem_const_with, classify_digit_aps, coding_system, equal_frequency_set,
    greedy_codes, komlos_set, mod11_k4, primepower_digits_a, primepower_digits_b, r4_system, salem_spencer_odd,
    DigitSet,
};
use crate::error::{Error, Result};
use crate::group::GroupParams;
use crate::pointset::PointSet;
use crate::reformulation::SubsetSystem;
use crate::search::{max_apfree, SearchConfig};
use crate::verifier::{sample_check, verify};

pub const REPORT_VERSION: &str = "capkit-report/1";

const AFTER_HELP: &str = "\
Exit codes: 0 success or set is free, 1 progression found, 2 usage or input error, 3 construction failure.
Set CAPKIT_THREADS to cap the number of worker threads.
Randomized checks use the ChaCha8 generator seeded from --seed.";

#[derive(Parser, Debug)]
#[command(
    name = "capkit",
    version,
    about = "Build, verify, bound and search sets in Z_m^n without proper k-term arithmetic progressions",
    after_help = AFTER_HELP
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a progression-free set and write it as a capset file.
    Construct(ConstructArgs),
    /// Check a capset (or capsys) file for proper k-APs.
    Verify(VerifyArgs),
    /// Evaluate the coding lower bound for r_3(Z_4^n), n = 1..n-max.
    Bound(BoundArgs),
    /// Exact maximum k-AP-free set by branch and bound.
    Search(SearchArgs),
    /// Show a digit alphabet and classify the progressions inside it.
    Digits(DigitsArgs),
    /// Convert between capset and capsys files (direction from the header).
    Convert(ConvertArgs),
    /// Randomized search for progressions in an equal-frequency set too
    /// large to write out.
    Sample(SampleArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Salem,
    Behrend,
    Komlos,
    Coding,
    Mod11,
    PrimePowerA,
    PrimePowerB,
    Product,
    R4,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub method: Method,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    /// Progression length the set is checked against (defaults per method).
    #[arg(long)]
    pub k: Option<usize>,
    /// Weight threshold for the coding method (default: the best t).
    #[arg(long)]
    pub t: Option<u32>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub s: Option<u32>,
    /// Scaled squared radius 16 R^2 for the behrend method (default: largest shell).
    #[arg(long)]
    pub r_prime: Option<u64>,
    /// Input capset files for the product method (give twice).
    #[arg(long = "in")]
    pub inputs: Vec<PathBuf>,
    #[arg(short, long)]
    pub output: PathBuf,
    /// Run the verifier on the result; a progression is a construction failure.
    #[arg(long)]
    pub verify: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    #[arg(long)]
    pub n_max: u32,
    /// Code-size table; lengths beyond 10 fall back to greedy lexicodes.
    #[arg(long, default_value = "paper")]
    pub table: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 600)]
    pub budget_secs: u64,
    /// Search all sets rather than only those containing 0.
    #[arg(long)]
    pub no_assume_zero: bool,
    #[arg(long)]
    pub parallel: bool,
    /// Write the best set found.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    A,
    B,
    Mod11,
    SalemOdd,
    SalemEven,
}

#[derive(Args, Debug)]
pub struct DigitsArgs {
    #[arg(long, value_enum)]
    pub variant: Variant,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub s: Option<u32>,
    /// Modulus for the salem variants.
    #[arg(long)]
    pub m: Option<u32>,
    /// Progression length (default: the one the alphabet is built for).
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct ConvertArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(short, long)]
    pub output: PathBuf,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[arg(long, value_enum)]
    pub variant: Variant,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub s: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub trials: u64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
}

/// Machine-readable record of one invocation.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub version: &'static str,
    pub command: String,
    pub parameters: Value,
    pub outputs: Value,
    pub elapsed_ms: f64,
}

/// Parses `args`, runs the command and returns the process exit code.
/// Errors go to stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let echo = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = configure_threads().and_then(|()| run(cli, &echo, &mut out));
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("capkit: {e}");
            e.exit_code()
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("CAPKIT_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Error::usage(format!("CAPKIT_THREADS must be a positive integer, got '{raw}'")))?;
    // a second initialization in the same process is harmless
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

/// Runs a parsed command, writing its primary output to `out`.
pub fn run(cli: Cli, echo: &str, out: &mut dyn Write) -> Result<i32> {
    let started = Instant::now();
    let mut ctx = Ctx { echo, started, out };
    match cli.command {
        Command::Construct(a) => construct(a, &mut ctx),
        Command::Verify(a) => verify_cmd(a, &mut ctx),
        Command::Bound(a) => bound(a, &mut ctx),
        Command::Search(a) => search(a, &mut ctx),
        Command::Digits(a) => digits(a, &mut ctx),
        Command::Convert(a) => convert(a, &mut ctx),
        Command::Sample(a) => sample(a, &mut ctx),
    }
}

struct Ctx<'a> {
    echo: &'a str,
    started: Instant,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn line(&mut self, s: impl AsRef<str>) -> Result<()> {
        writeln!(self.out, "{}", s.as_ref())?;
        Ok(())
    }

    fn report(&mut self, parameters: Value, outputs: Value) -> Result<()> {
        let r = RunReport {
            version: REPORT_VERSION,
            command: self.echo.to_string(),
            parameters,
            outputs,
            elapsed_ms: self.started.elapsed().as_secs_f64() * 1000.0,
        };
        let text = serde_json::to_string_pretty(&r).map_err(|e| Error::Io(e.into()))?;
        self.line(text)
    }
}

fn need<T>(v: Option<T>, flag: &str, method: &str) -> Result<T> {
    v.ok_or_else(|| Error::usage(format!("{method} needs --{flag}")))
}

fn fixed_modulus(m: Option<u32>, want: u32, method: &str) -> Result<()> {
    match m {
        Some(m) if m != want => Err(Error::usage(format!("{method} works in Z_{want}^n, got --m {m}"))),
        _ => Ok(()),
    }
}

fn read_text(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

/// A capset file, or a capsys file materialized into Z_4^n. A zero-byte
/// file is the empty set.
fn read_point_set(path: &Path) -> Result<Option<PointSet>> {
    let text = read_text(path)?;
    if text.trim().is_empty() {
        return Ok(None);
    }
    if text.starts_with("capsys") {
        return Ok(Some(SubsetSystem::parse_capsys(&text)?.materialize()));
    }
    PointSet::parse_capset(&text).map(Some)
}

fn construct(a: ConstructArgs, ctx: &mut Ctx) -> Result<i32> {
    let name = format!("{:?}", a.method).to_lowercase();
    let mut extra = serde_json::Map::new();
    let (set, k) = match a.method {
        Method::Salem => {
            let m = need(a.m, "m", &name)?;
            let n = need(a.n, "n", &name)?;
            let set = if m % 2 == 1 {
                salem_spencer_odd(m, n)?
            } else {
                let d = DigitSet::salem_even(m)?;
                if n < d.len() as u32 {
                    return Err(Error::usage(format!("salem with m={m} needs n >= {}", d.len())));
                }
                equal_frequency_set(&d, n)?
            };
            (set, 3)
        }
        Method::Behrend => {
            let m = need(a.m, "m", &name)?;
            let n = need(a.n, "n", &name)?;
            let (set, spec) = behrend_shell(m, n, a.r_prime)?;
            let consts = constructions::theoretical_constants(m)?;
            extra.insert("shell".into(), json!(spec));
            extra.insert("sigma_m".into(), json!(consts.sigma_m));
            extra.insert("c_m".into(), json!(consts.c_m));
            extra.insert("shell_floor".into(), json!(consts.shell_floor(n)));
            (set, 3)
        }
        Method::Komlos => {
            fixed_modulus(a.m, 4, &name)?;
            (komlos_set(need(a.n, "n", &name)?)?, 3)
        }
        Method::Coding => {
            fixed_modulus(a.m, 4, &name)?;
            let n = need(a.n, "n", &name)?;
            let best = bound_theorem_const_with(n, &CodeTable::paper(), true)?;
            let t = a.t.unwrap_or(best.t);
            let sys = coding_system(n, t, greedy_codes)?;
            extra.insert("t".into(), json!(t));
            extra.insert("table_bound".into(), json!(best.total));
            extra.insert("table_bound_t".into(), json!(best.t));
            (sys.materialize(), 3)
        }
        Method::Mod11 => {
            fixed_modulus(a.m, 11, &name)?;
            (mod11_k4(need(a.n, "n", &name)?)?, 4)
        }
        Method::PrimePowerA | Method::PrimePowerB => {
            let p = need(a.p, "p", &name)?;
            let s = need(a.s, "s", &name)?;
            let n = need(a.n, "n", &name)?;
            let d = if a.method == Method::PrimePowerA {
                primepower_digits_a(p, s)?
            } else {
                primepower_digits_b(p, s)?
            };
            fixed_modulus(a.m, d.m, &name)?;
            let k = d.default_k() as usize;
            (equal_frequency_set(&d, n)?, k)
        }
        Method::Product => {
            if a.inputs.len() != 2 {
                return Err(Error::usage("product needs exactly two --in files"));
            }
            let s1 = PointSet::parse_capset(&read_text(&a.inputs[0])?)?;
            let s2 = PointSet::parse_capset(&read_text(&a.inputs[1])?)?;
            (constructions::product(&s1, &s2)?, 3)
        }
        Method::R4 => {
            fixed_modulus(a.m, 4, &name)?;
            (r4_system(need(a.n, "n", &name)?)?.materialize(), 4)
        }
    };
    let k = a.k.unwrap_or(k);
    let mut verified = Value::Null;
    if a.verify {
        let r = verify(&set, k)?;
        if let Some(w) = r.witness {
            return Err(Error::construction(format!("result contains a proper {k}-AP: {w}")));
        }
        verified = json!(true);
    }
    std::fs::write(&a.output, set.to_capset())?;
    let p = set.params();
    if a.json {
        let mut outputs = serde_json::Map::new();
        outputs.insert("size".into(), json!(set.len()));
        outputs.insert("file".into(), json!(a.output.display().to_string()));
        outputs.insert("verified".into(), verified);
        outputs.extend(extra);
        let params = json!({
            "method": a.method, "m": p.m(), "n": p.n(), "k": k,
            "t": a.t, "p": a.p, "s": a.s, "r_prime": a.r_prime,
        });
        ctx.report(params, Value::Object(outputs))?;
    } else {
        ctx.line(format!("wrote {} points in {p} to {}", set.len(), a.output.display()))?;
        for (key, v) in &extra {
            ctx.line(format!("{key}={v}"))?;
        }
        if a.verify {
            ctx.line(format!("verified k={k}: FREE"))?;
        }
    }
    Ok(0)
}

fn verify_cmd(a: VerifyArgs, ctx: &mut Ctx) -> Result<i32> {
    let set = read_point_set(&a.input)?;
    let report = match &set {
        Some(s) => Some(verify(s, a.k)?),
        None if a.k < 3 => return Err(Error::usage(format!("progression length must be >= 3, got {}", a.k))),
        None => None,
    };
    let witness = report.as_ref().and_then(|r| r.witness.clone());
    if a.json {
        let params = json!({ "k": a.k, "input": a.input.display().to_string() });
        let outputs = json!({
            "size": set.as_ref().map_or(0, |s| s.len()),
            "free": witness.is_none(),
            "report": report,
        });
        ctx.report(params, outputs)?;
    } else {
        match &witness {
            None => ctx.line("FREE")?,
            Some(w) => ctx.line(format!("WITNESS {w}"))?,
        }
    }
    Ok(if witness.is_some() { 1 } else { 0 })
}

fn bound(a: BoundArgs, ctx: &mut Ctx) -> Result<i32> {
    if a.n_max < 1 {
        return Err(Error::usage("--n-max must be >= 1"));
    }
    let table = CodeTable::by_name(a.table.parse::<TableName>()?);
    let rows = (1..=a.n_max)
        .map(|n| bound_theorem_const_with(n, &table, true))
        .collect::<Result<Vec<_>>>()?;
    if a.json {
        ctx.report(
            json!({ "n_max": a.n_max, "table": table.name }),
            json!({ "bounds": rows }),
        )?;
    } else {
        for b in &rows {
            ctx.line(format!(
                "n={} t={} terms={} total={}",
                b.n,
                b.t,
                b.terms_expr(),
                b.total
            ))?;
        }
    }
    Ok(0)
}

fn search(a: SearchArgs, ctx: &mut Ctx) -> Result<i32> {
    let p = GroupParams::new(a.m, a.n)?;
    let cfg = SearchConfig {
        time_budget: Duration::from_secs(a.budget_secs),
        assume_zero: !a.no_assume_zero,
        parallel: a.parallel,
        initial: None,
    };
    let r = max_apfree(&p, a.k, &cfg)?;
    if let Some(path) = &a.output {
        std::fs::write(path, r.best.to_capset())?;
    }
    if a.json {
        let params = json!({
            "m": a.m, "n": a.n, "k": a.k, "budget_secs": a.budget_secs,
            "assume_zero": cfg.assume_zero, "parallel": a.parallel,
        });
        let members: Vec<String> = r.best.vecs().map(|v| v.to_string()).collect();
        ctx.report(params, json!({ "result": r, "best": members }))?;
    } else {
        ctx.line(format!(
            "size={} optimal={} nodes={} elapsed_ms={:.1}",
            r.size,
            r.optimal,
            r.nodes,
            r.elapsed.as_secs_f64() * 1000.0
        ))?;
    }
    Ok(0)
}

fn digit_set(variant: Variant, p: Option<u32>, s: Option<u32>, m: Option<u32>) -> Result<DigitSet> {
    match variant {
        Variant::A => primepower_digits_a(need(p, "p", "variant a")?, need(s, "s", "variant a")?),
        Variant::B => primepower_digits_b(need(p, "p", "variant b")?, need(s, "s", "variant b")?),
        Variant::Mod11 => Ok(DigitSet::mod11()),
        Variant::SalemOdd => DigitSet::salem_odd(need(m, "m", "variant salem-odd")?),
        Variant::SalemEven => DigitSet::salem_even(need(m, "m", "variant salem-even")?),
    }
}

fn digits(a: DigitsArgs, ctx: &mut Ctx) -> Result<i32> {
    let d = digit_set(a.variant, a.p, a.s, a.m)?;
    let k = a.k.unwrap_or_else(|| d.default_k());
    let r = classify_digit_aps(&d, k)?;
    if a.json {
        let params =
            json!({ "variant": format!("{:?}", a.variant).to_lowercase(), "p": a.p, "s": a.s, "m": d.m, "k": k });
        ctx.report(params, json!({ "digits": d, "report": r }))?;
    } else {
        ctx.line(d.to_string())?;
        ctx.line(format!(
            "k={k} progressions={} violations={} cascade_survivors={} certified={}",
            r.progressions,
            r.violations.len(),
            r.cascade.survivors.len(),
            r.cascade.certified
        ))?;
        for (class, count) in &r.classes {
            ctx.line(format!("  {class}: {count}"))?;
        }
        for v in &r.violations {
            let terms: Vec<String> = v.terms.iter().map(|t| t.to_string()).collect();
            ctx.line(format!("  violation ({}): {}", terms.join(","), v.reason))?;
        }
    }
    Ok(0)
}

fn convert(a: ConvertArgs, ctx: &mut Ctx) -> Result<i32> {
    let text = read_text(&a.input)?;
    let (written, what) = if text.starts_with("capsys") {
        let sys = SubsetSystem::parse_capsys(&text)?;
        (sys.materialize().to_capset(), "capset")
    } else {
        let set = PointSet::parse_capset(&text)?;
        (SubsetSystem::from_point_set(&set)?.to_capsys(), "capsys")
    };
    std::fs::write(&a.output, written)?;
    ctx.line(format!("wrote {what} file {}", a.output.display()))?;
    Ok(0)
}

fn sample(a: SampleArgs, ctx: &mut Ctx) -> Result<i32> {
    let d = digit_set(a.variant, a.p, a.s, a.m)?;
    if (a.n as usize) < d.len() {
        return Err(Error::usage(format!("need n >= |D| = {}, got n = {}", d.len(), a.n)));
    }
    let k = a.k.unwrap_or_else(|| d.default_k());
    let p = GroupParams::new(d.m, a.n)?;
    let hit = sample_check(
        &p,
        equal_frequency_member(&d, a.n),
        equal_frequency_sampler(&d, a.n),
        k as usize,
        a.trials,
        a.seed,
    )?;
    if a.json {
        let params = json!({ "m": d.m, "n": a.n, "k": k, "trials": a.trials, "seed": a.seed, "rng": "ChaCha8" });
        ctx.report(params, json!({ "witness": hit }))?;
    } else {
        match &hit {
            None => ctx.line(format!("no progression in {} trials (not a proof)", a.trials))?,
            Some(w) => ctx.line(format!("WITNESS {w}"))?,
        }
    }
    Ok(if hit.is_some() { 1 } else { 0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (Result<i32>, String) {
        let cli = Cli::try_parse_from(std::iter::once("capkit").chain(args.iter().copied())).unwrap();
        let mut buf = Vec::new();
        let code = run(cli, &args.join(" "), &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn bound_lines() {
        let (code, out) = run_args(&["bound", "--n-max", "5"]);
        assert_eq!(code.unwrap(), 0);
        let last = out.lines().last().unwrap();
        assert_eq!(last, "n=5 t=2 terms=80+40+4 total=124");
        assert!(out.starts_with("n=1 t=0 terms=2 total=2\n"));
    }

    #[test]
    fn bound_rejects_unknown_table() {
        let (code, _) = run_args(&["bound", "--n-max", "3", "--table", "nope"]);
        assert_eq!(code.unwrap_err().exit_code(), 2);
    }

    #[test]
    fn report_has_version_first() {
        let (_, out) = run_args(&["bound", "--n-max", "2", "--json"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["version"], REPORT_VERSION);
        assert!(out.trim_start().starts_with("{\n  \"version\""));
        assert_eq!(v["outputs"]["bounds"][1]["total"], 6);
    }

    #[test]
    fn digits_summary() {
        let (code, out) = run_args(&["digits", "--p", "3", "--s", "3", "--variant", "b", "--k", "4"]);
        assert_eq!(code.unwrap(), 0);
        assert!(out.contains("|D|=15"));
        assert!(out.contains("violations=0"));
    }

    #[test]
    fn search_summary() {
        let (_, out) = run_args(&["search", "--m", "4", "--n", "2", "--k", "3"]);
        assert!(out.starts_with("size=6 optimal=true"));
    }

    #[test]
    fn construct_needs_its_flags() {
        let dir = tempfile::tempdir().unwrap();
        let o = dir.path().join("x.capset");
        let o = o.to_str().unwrap();
        let (code, _) = run_args(&["construct", "--method", "behrend", "--m", "4", "-o", o]);
        assert_eq!(code.unwrap_err().exit_code(), 2);
        let (code, _) = run_args(&["construct", "--method", "komlos", "--m", "5", "--n", "2", "-o", o]);
        assert_eq!(code.unwrap_err().exit_code(), 2);
        let (code, _) = run_args(&["construct", "--method", "coding", "--n", "3", "--t", "4", "-o", o]);
        assert_eq!(code.unwrap_err().exit_code(), 2);
    }
}
