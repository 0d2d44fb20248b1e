//! Argument parsing and command dispatch.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use ugen_core::cover::{self, default_bound, Cover, GroupFamily, DEFAULT_CLOSURE_CAP};

use crate::covers;
use crate::error::CliError;
use crate::lemma::{self, Lemma, Params, WitnessJson};
use crate::sweep::{self, Check, Profile, SweepArgs, Tally};

#[derive(Debug, Parser)]
#[command(name = "ugen", version, about = "Factorisation witnesses for finite simple groups and subgroup cover algebra")]
pub struct Cli {
    /// Seed for every randomised step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Sweep size: quick, full or big.
    #[arg(long, global = true, value_enum, default_value_t = Profile::Quick)]
    pub profile: Profile,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Add wall-clock time to the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factor one element with a lemma and validate the witness.
    Factorize {
        /// uni1, uni2, brenner, sl-step, sl-double, sp-word, su3 or torus.
        lemma: String,
        /// Cycles, `d,q;row|row` matrix text, or a field element, by lemma.
        target: Option<String>,
        #[command(flatten)]
        p: NumArgs,
    },
    /// Sweep a lemma or property over a parameter range.
    Verify {
        /// A lemma name, or saxl, split, symmetric, generic.
        check: String,
        #[command(flatten)]
        r: RangeArgs,
    },
    /// Re-validate the witness in a factorize report.
    Check { file: PathBuf },
    /// Cover algebra.
    #[command(subcommand)]
    Cover(CoverCommand),
}

#[derive(Debug, Default, Args)]
pub struct NumArgs {
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub d: Option<u64>,
    #[arg(long)]
    pub q: Option<u64>,
}

#[derive(Debug, Default, Args)]
pub struct RangeArgs {
    /// Ranges like `3..7`, `2,3,5` or `4`.
    #[arg(long)]
    pub m: Option<String>,
    #[arg(long)]
    pub n: Option<String>,
    #[arg(long)]
    pub d: Option<String>,
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long)]
    pub t: Option<String>,
    /// Distance bound for saxl.
    #[arg(long)]
    pub bound: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum CoverCommand {
    /// Star product of two covers on the same window.
    Star { a: PathBuf, b: PathBuf },
    /// Every distinct value of a star expression up to a depth.
    Closure {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
        cap: usize,
    },
    /// A tuple outside the depth-bounded closure, for f(n) = 2^(n+2).
    Escape {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Random covers `{1, b, b^-1}` over a window such as `sym(3) sym(4)`.
    Random {
        #[arg(required = true)]
        window: Vec<String>,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// First non-associative triple of basic covers over a window.
    Assoc {
        #[arg(required = true)]
        window: Vec<String>,
    },
}

/// The JSON envelope every command writes.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub profile: Profile,
    pub results: Value,
    pub summary: Tally,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.summary.failures == 0 {
            0
        } else {
            1
        }
    }
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialise")
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let start = Instant::now();
    let (command, results, summary) = match &cli.command {
        Command::Factorize { lemma, target, p } => factorize(lemma, target.as_deref(), p)?,
        Command::Verify { check, r } => verify(cli, check, r)?,
        Command::Check { file } => check(file)?,
        Command::Cover(c) => cover_cmd(cli, c)?,
    };
    Ok(Report {
        command,
        seed: cli.seed,
        profile: cli.profile,
        results,
        summary,
        timing_ms: cli.timing.then(|| start.elapsed().as_millis()),
    })
}

type Out = (String, Value, Tally);

fn factorize(name: &str, target: Option<&str>, a: &NumArgs) -> Result<Out, CliError> {
    let l: Lemma = name.parse()?;
    let target = match (l, target) {
        (Lemma::Torus, t) => t.unwrap_or(""),
        (_, Some(t)) => t,
        (_, None) => return Err(CliError::usage(format!("{l} needs a target"))),
    };
    let p = Params { m: a.m, n: a.n, d: a.d, q: a.q };
    let w = lemma::factorize(l, target, &p)?;
    // round trip through the serialised form before reporting
    let reloaded: WitnessJson = serde_json::from_str(&serde_json::to_string(&w)?)?;
    let ok = w.valid && lemma::recheck(&reloaded)?;
    let mut t = Tally::default();
    t.record(ok, || format!("{l} witness for {target} failed validation"));
    Ok((format!("factorize {l}"), to_value(&w), t))
}

fn verify(cli: &Cli, name: &str, r: &RangeArgs) -> Result<Out, CliError> {
    let check: Check = name.parse()?;
    let args = SweepArgs {
        m: r.m.clone(),
        n: r.n.clone(),
        d: r.d.clone(),
        q: r.q.clone(),
        t: r.t.clone(),
        bound: r.bound,
        seed: cli.seed,
        profile: cli.profile,
    };
    let blocks = sweep::run(check, &args)?;
    let mut total = Tally::default();
    for b in &blocks {
        total.merge(&b.tally);
    }
    Ok((format!("verify {name}"), to_value(&blocks), total))
}

fn check(file: &PathBuf) -> Result<Out, CliError> {
    let v: Value = serde_json::from_str(&read(file)?)?;
    let inner = v.get("results").cloned().unwrap_or(v);
    let w: WitnessJson = serde_json::from_value(inner)?;
    let ok = lemma::recheck(&w)?;
    let mut t = Tally::default();
    t.record(ok, || format!("{} witness for {} does not re-validate", w.lemma, w.target));
    Ok(("check".into(), json!({"lemma": w.lemma, "target": w.target, "valid": ok}), t))
}

/// Accepts a cover file, a cover list, or a report wrapping either.
fn load_covers(path: &PathBuf) -> Result<(GroupFamily, Vec<Cover>), CliError> {
    let mut v: Value = serde_json::from_str(&read(path)?)?;
    if let Some(r) = v.get("results") {
        v = r.clone();
    }
    if let Some(c) = v.get("cover") {
        v = c.clone();
    }
    covers::load(&v.to_string())
}

fn cover_cmd(cli: &Cli, c: &CoverCommand) -> Result<Out, CliError> {
    let mut t = Tally::default();
    match c {
        CoverCommand::Star { a, b } => {
            let (fa, ca) = load_covers(a)?;
            let (fb, cb) = load_covers(b)?;
            if fa != fb {
                return Err(CliError::usage("covers live on different windows"));
            }
            if ca.len() != 1 || cb.len() != 1 {
                return Err(CliError::usage("star takes one cover per file"));
            }
            let s = cover::star(&fa, &ca[0], &cb[0])?;
            let sizes = s.sizes();
            let bound: Vec<usize> =
                ca[0].sizes().iter().zip(cb[0].sizes()).map(|(x, y)| 2 * x * y).collect();
            for (n, (s, b)) in sizes.iter().zip(&bound).enumerate() {
                t.record(s <= b, || format!("index {n}: size {s} exceeds {b}"));
            }
            let res = json!({"cover": covers::cover_json(&fa, &s), "sizes": sizes, "bound": bound});
            Ok(("cover star".into(), res, t))
        }
        CoverCommand::Closure { file, depth, cap } => {
            let (fam, cs) = load_covers(file)?;
            let list = cover::closure_enumerate(&fam, &cs, *depth, *cap)?;
            let entries: Vec<Value> =
                list.iter().map(|e| json!({"expr": e.expr, "stars": e.stars, "sizes": e.cover.sizes()})).collect();
            t.record(true, String::new);
            Ok(("cover closure".into(), json!({"depth": depth, "count": list.len(), "entries": entries}), t))
        }
        CoverCommand::Escape { file, depth } => {
            let (fam, cs) = load_covers(file)?;
            let e = cover::escape_element(&fam, &cs, &default_bound, *depth)?;
            let verified = !cover::covered_subgroup_contains(&fam, &cs, *depth, &e.g)?;
            t.record(verified, || "escape tuple is covered".into());
            let mut res = to_value(&covers::escape_json(&fam, &e));
            res["verified"] = json!(verified);
            Ok(("cover escape".into(), res, t))
        }
        CoverCommand::Random { window, count } => {
            let fam = covers::family(window)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let cs = cover::random_covers(&fam, *count, &mut rng);
            t.record(true, String::new);
            Ok(("cover random".into(), to_value(&covers::covers_json(&fam, &cs)), t))
        }
        CoverCommand::Assoc { window } => {
            let fam = covers::family(window)?;
            let w = cover::non_associative_witness(&fam)?;
            let res = match &w {
                Some(triple) => {
                    let [a, b, c] = triple;
                    let l = cover::star(&fam, &cover::star(&fam, a, b)?, c)?;
                    let r = cover::star(&fam, a, &cover::star(&fam, b, c)?)?;
                    t.record(l != r, || "triple is associative".into());
                    let triple: Vec<_> = [a, b, c].iter().map(|x| covers::sets_to_strings(&fam, x)).collect();
                    json!({
                        "window": covers::window_of(&fam),
                        "triple": triple,
                        "left_sizes": l.sizes(),
                        "right_sizes": r.sizes(),
                    })
                }
                None => json!({"window": covers::window_of(&fam), "triple": null}),
            };
            Ok(("cover assoc".into(), res, t))
        }
    }
}
