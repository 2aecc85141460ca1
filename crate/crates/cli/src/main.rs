use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use nerveforge_core::clumps::{maximal_chains, maximal_clumps, PatchSystem};
use nerveforge_core::cover::{goodness_check, nerve, Cover};
use nerveforge_core::scenario::{self, generate, lemmas, FamilyParams, Scenario, Verdict};
use nerveforge_core::simplicial::{homology, HomologySummary, SimplicialComplex};

#[derive(Parser)]
#[command(name = "nerveforge", version, about = "Exact nerve, clump and periodic-window computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integral homology of a complex file.
    Homology { file: PathBuf },
    /// Nerve of a cover file with the homology of every intersection.
    Nerve { file: PathBuf },
    /// Maximal clumps of a patch system file, with ranks and inclusions.
    Clumps { file: PathBuf },
    /// Run lemma checks on a scenario.
    Verify(VerifyArgs),
    /// Print a seeded scenario from a named family.
    Generate(GenerateArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Lemma ids, comma separated or repeated; `all` runs every lemma that
    /// accepts the scenario.
    #[arg(long, value_delimiter = ',', required_unless_present = "list")]
    lemma: Vec<String>,
    #[arg(long, required_unless_present = "list")]
    scenario: Option<PathBuf>,
    /// Write the JSON report here (atomically).
    #[arg(long)]
    report: Option<PathBuf>,
    /// Overrides the scenario seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Largest window radius for the periodic checks.
    #[arg(long)]
    wmax: Option<u64>,
    /// Print the lemma table and exit.
    #[arg(long)]
    list: bool,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    pieces: Option<usize>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Order of the deck group for periodic boxes.
    #[arg(long)]
    order: Option<i64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("NERVEFORGE_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().with_context(|| format!("NERVEFORGE_THREADS={v:?} is not a count"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn print_json(v: &impl Serialize) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

/// Torsion coefficients as decimal strings, which read better than the
/// big-integer digit arrays.
fn homology_json(h: &HomologySummary) -> Value {
    let torsion: Vec<Vec<String>> = h.torsion.iter().map(|t| t.iter().map(|x| x.to_string()).collect()).collect();
    json!({"betti": h.betti, "torsion": torsion, "text": h.to_string()})
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Homology { file } => {
            let k = SimplicialComplex::parse(&read(&file)?)?;
            let counts: Vec<usize> = (0..=k.dim().unwrap_or(0)).map(|d| k.count(d)).collect();
            let mut v = homology_json(&homology(&k));
            v["counts"] = json!(counts);
            v["euler"] = json!(k.euler_characteristic());
            print_json(&v)?;
        }
        Command::Nerve { file } => {
            let c = Cover::parse(&read(&file)?)?;
            let nv = nerve(&c);
            let g = goodness_check(&c);
            let table: Vec<Value> = g
                .entries
                .iter()
                .map(|e| {
                    let names: Vec<&str> = e.simplex.iter().map(|&i| c.names[i as usize].as_str()).collect();
                    json!({"simplex": e.simplex, "pieces": names, "reduced": homology_json(&e.reduced)})
                })
                .collect();
            print_json(&json!({
                "nerve": nv.complex.to_json(),
                "homology": homology_json(&homology(&nv.complex)),
                "good": g.good,
                "intersections": table,
            }))?;
        }
        Command::Clumps { file } => {
            let ps = PatchSystem::parse(&read(&file)?)?;
            let clumps = maximal_clumps(&ps);
            let rows: Vec<Value> = clumps
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let inside: Vec<usize> = (0..clumps.len())
                        .filter(|&j| j != i && clumps[j].support.is_subcomplex_of(&c.support))
                        .collect();
                    json!({
                        "index": i,
                        "group": c.group,
                        "rank": c.rank,
                        "nerve_simplices": c.simplices,
                        "support": c.support.maximal_simplices(),
                        "contains": inside,
                    })
                })
                .collect();
            print_json(&json!({"clumps": rows, "chains": maximal_chains(&clumps)}))?;
        }
        Command::Verify(args) => return verify(args),
        Command::Generate(args) => {
            let p = FamilyParams { pieces: args.pieces, dim: args.dim, rank: args.rank, n: args.n, order: args.order };
            let text = generate(&args.family, &p, args.seed)?.to_json_string() + "\n";
            match args.out {
                Some(path) => write_atomic(&path, text.as_bytes())?,
                None => print!("{text}"),
            }
        }
    }
    Ok(0)
}

#[derive(Serialize)]
#[serde(untagged)]
enum Entry {
    Verdict(Verdict),
    Invalid { lemma: String, status: &'static str, error: String },
}

impl Entry {
    fn exit_code(&self) -> u8 {
        match self {
            Entry::Verdict(v) => v.status.exit_code() as u8,
            Entry::Invalid { .. } => 2,
        }
    }
}

#[derive(Serialize)]
struct Report {
    tool: &'static str,
    version: &'static str,
    generator: &'static str,
    seed: u64,
    /// SHA-256 of the scenario file bytes.
    scenario_digest: String,
    verdicts: Vec<Entry>,
    /// The only field that varies between identical runs.
    timings_ms: BTreeMap<String, f64>,
}

fn verify(args: VerifyArgs) -> Result<u8> {
    if args.list {
        for l in lemmas() {
            println!("{:<26} {:<13} {:<32} {}", l.id, l.kind, l.operation, l.statement);
        }
        return Ok(0);
    }
    let path = args.scenario.expect("clap enforces --scenario");
    let bytes = std::fs::read(&path).with_context(|| format!("reading {}", path.display()))?;
    let text = std::str::from_utf8(&bytes).context("scenario is not UTF-8")?;
    let mut s = Scenario::parse(text).with_context(|| format!("parsing {}", path.display()))?;
    if let Some(seed) = args.seed {
        s.seed = seed;
    }
    let ids = expand_lemmas(&args.lemma, &s)?;

    let runs: Vec<(Entry, f64)> = ids
        .par_iter()
        .map(|id| {
            let t = Instant::now();
            let e = match scenario::verify(id, &s, args.wmax) {
                Ok(v) => Entry::Verdict(v),
                Err(e) => Entry::Invalid { lemma: id.clone(), status: "invalid", error: e.to_string() },
            };
            (e, t.elapsed().as_secs_f64() * 1e3)
        })
        .collect();

    let mut code = 0u8;
    let mut timings = BTreeMap::new();
    for (e, ms) in &runs {
        let (id, status, text) = match e {
            Entry::Verdict(v) => (&v.lemma, format!("{:?}", v.status).to_lowercase(), &v.summary),
            Entry::Invalid { lemma, error, .. } => (lemma, "invalid".to_string(), error),
        };
        println!("{status:<12} {id:<26} {text}");
        timings.insert(id.clone(), (ms * 1e3).round() / 1e3);
        code = worse(code, e.exit_code());
    }

    if let Some(out) = args.report {
        let report = Report {
            tool: "nerveforge",
            version: env!("CARGO_PKG_VERSION"),
            generator: scenario::GENERATOR,
            seed: s.seed,
            scenario_digest: format!("{:x}", Sha256::digest(&bytes)),
            verdicts: runs.into_iter().map(|(e, _)| e).collect(),
            timings_ms: timings,
        };
        let mut text = serde_json::to_string_pretty(&report)?;
        text.push('\n');
        write_atomic(&out, text.as_bytes())?;
    }
    Ok(code)
}

/// Invalid input outranks a failure, which outranks an inconclusive run.
fn worse(a: u8, b: u8) -> u8 {
    let rank = |c: u8| match c {
        2 => 3,
        1 => 2,
        3 => 1,
        _ => 0,
    };
    if rank(b) > rank(a) {
        b
    } else {
        a
    }
}

fn expand_lemmas(requested: &[String], s: &Scenario) -> Result<Vec<String>> {
    if requested.iter().any(|l| l == "all") {
        let kind = s.payload.kind();
        let mut ids: Vec<String> = lemmas().iter().filter(|l| l.kind == kind).map(|l| l.id.to_string()).collect();
        if s.constants.is_some() {
            ids.push("scale-ladder".into());
        }
        if ids.is_empty() {
            bail!("no lemma accepts a {kind} scenario");
        }
        return Ok(ids);
    }
    for id in requested {
        scenario::lemma(id)?;
    }
    Ok(requested.to_vec())
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating a file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
