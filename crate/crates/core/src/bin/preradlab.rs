use clap::{Args, Parser, Subcommand, ValueEnum};
use preradlab::classifier::{classify_ring, verify_theorem, THEOREM_IDS};
use preradlab::corpus::build_corpus;
use preradlab::firstness::firstness_report;
use preradlab::job::{
    parse_job_document, parse_job_with, parse_ring_spec, run_job, Check, JobSpec, OutputFormat, UniverseSpec,
    ENGINE_VERSION, SCHEMA_VERSION,
};
use preradlab::order::random::law_sweep;
use preradlab::{Caps, Error, Result, UniverseParams};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "preradlab", version, about = "Finite module theory workbench: firstness, preradicals, theorem replay")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Largest ring order accepted.
    #[arg(long, global = true)]
    cap_ring: Option<usize>,
    /// Largest module order accepted.
    #[arg(long, global = true)]
    cap_module: Option<usize>,
    /// Largest number of summands in generated universes.
    #[arg(long, global = true)]
    universe_depth: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Include the runtime in reports.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a job document and print its canonical form.
    Define { file: PathBuf },
    /// Run every check of a job document.
    Check { file: PathBuf },
    /// Replay theorems, from a job document or a ring given inline.
    Verify {
        file: Option<PathBuf>,
        #[arg(long)]
        ring: Option<String>,
        /// Theorem id; repeatable. Defaults to all.
        #[arg(long = "theorem")]
        theorems: Vec<String>,
    },
    /// Sweep the built-in corpus and a randomized set of poset actions.
    Corpus {
        /// Number of random actions.
        #[arg(long, default_value_t = 100)]
        instances: usize,
    },
}

impl Common {
    fn apply(&self, spec: &mut JobSpec) {
        if let Some(c) = self.cap_ring {
            spec.caps.ring = c;
        }
        if let Some(c) = self.cap_module {
            spec.caps.module = c;
        }
        if let Some(d) = self.universe_depth {
            spec.universe = UniverseSpec::Generated { depth: d };
        }
        if let Some(f) = self.format {
            spec.format = f.into();
        }
        spec.timing |= self.timing;
    }

    fn caps(&self) -> Caps {
        let d = Caps::default();
        Caps {
            ring: self.cap_ring.unwrap_or(d.ring),
            module: self.cap_module.unwrap_or(d.module),
        }
    }
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => OutputFormat::Text,
            Format::Structured => OutputFormat::Structured,
        }
    }
}

fn read(file: &PathBuf) -> Result<String> {
    std::fs::read_to_string(file).map_err(|e| Error::InvalidArgument(format!("{}: {e}", file.display())))
}

/// Parses a document with the command line overrides applied.
fn load(file: &PathBuf, common: &Common) -> Result<JobSpec> {
    parse_job_with(&read(file)?, |spec| common.apply(spec))
}

fn run(cli: &Cli) -> Result<i32> {
    let common = &cli.common;
    match &cli.command {
        Command::Define { file } => {
            let spec = load(file, common)?;
            match spec.format {
                OutputFormat::Text => print!("{spec}"),
                OutputFormat::Structured => println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "schema_version": SCHEMA_VERSION,
                        "engine_version": ENGINE_VERSION,
                        "valid": true,
                        "canonical": spec.to_string(),
                    }))
                    .expect("json")
                ),
            }
            Ok(0)
        }
        Command::Check { file } => {
            let spec = load(file, common)?;
            let report = run_job(&spec)?;
            print!("{}", report.render(spec.format));
            Ok(report.exit_code)
        }
        Command::Verify { file, ring, theorems } => {
            let mut spec = match (file, ring) {
                (Some(_), Some(_)) => {
                    return Err(Error::InvalidArgument("give a job file or --ring, not both".into()))
                }
                (None, None) => return Err(Error::InvalidArgument("give a job file or --ring".into())),
                (Some(f), None) => {
                    let mut s = load(f, common)?;
                    s.checks.retain(|c| matches!(c, Check::Verify(_)));
                    s
                }
                (None, Some(r)) => {
                    let mut s = parse_job_document("[ring]\nspec = cyclic(2)\n")?;
                    s.ring = parse_ring_spec(r)?;
                    common.apply(&mut s);
                    s
                }
            };
            if !theorems.is_empty() {
                spec.checks = theorems.iter().map(|t| Check::Verify(t.clone())).collect();
            } else if ring.is_some() {
                spec.checks = THEOREM_IDS.iter().map(|t| Check::Verify(t.to_string())).collect();
            }
            for t in theorems {
                if !THEOREM_IDS.contains(&t.as_str()) {
                    return Err(Error::UnknownTheorem(t.clone()));
                }
            }
            let report = run_job(&spec)?;
            print!("{}", report.render(spec.format));
            Ok(report.exit_code)
        }
        Command::Corpus { instances } => corpus(common, *instances),
    }
}

fn corpus(common: &Common, instances: usize) -> Result<i32> {
    let start = Instant::now();
    let params = UniverseParams {
        depth: common.universe_depth.unwrap_or(UniverseParams::default().depth),
    };
    let caps = common.caps();
    let format = common.format.map(OutputFormat::from).unwrap_or(OutputFormat::Text);
    let mut exit = 0;
    let mut text = String::new();
    let mut rings = Vec::new();
    for entry in build_corpus(&caps, params)? {
        let ring = entry.universe.ring();
        let mut modules = Vec::new();
        let mut mtext = String::new();
        for m in entry.universe.modules() {
            match firstness_report(&m.module) {
                Ok(r) => {
                    mtext.push_str(&format!(
                        "  {:<24} order {:>2}  bjkn_prime={} prime={} rpid_first={} diuniform={} retractable={} end_prime={}\n",
                        m.label, r.order, r.bjkn_prime, r.prime, r.rpid_first, r.diuniform, r.retractable,
                        r.endomorphism_ring_prime
                    ));
                    modules.push(json!({ "label": m.label, "report": r }));
                }
                Err(e) => {
                    exit = exit.max(e.exit_code());
                    mtext.push_str(&format!("  {}: error: {e}\n", m.label));
                    modules.push(json!({ "label": m.label, "error": e.to_string() }));
                }
            }
        }
        let classification = classify_ring(ring, &entry.universe)?;
        let mut verdicts = Vec::new();
        let mut line = String::new();
        for id in THEOREM_IDS {
            match verify_theorem(id, ring, &entry.universe) {
                Ok(v) => {
                    if !v.consistent {
                        exit = 4;
                    }
                    line.push_str(&format!(" {id}={}", if v.consistent { "ok" } else { "INCONSISTENT" }));
                    verdicts.push(json!(v));
                }
                Err(e) => {
                    exit = exit.max(e.exit_code());
                    line.push_str(&format!(" {id}=error"));
                    verdicts.push(json!({ "theorem": id, "error": e.to_string() }));
                }
            }
        }
        text.push_str(&format!(
            "{} (order {}, universe {}):{line}\n{mtext}",
            entry.spec,
            ring.order(),
            entry.universe.len()
        ));
        rings.push(json!({
            "ring": entry.spec.to_string(),
            "universe_size": entry.universe.len(),
            "classification": classification,
            "theorems": verdicts,
            "modules": modules,
        }));
    }
    let mut rng = StdRng::seed_from_u64(common.seed);
    let sweep = law_sweep(&mut rng, instances)?;
    if !sweep.violations.is_empty() {
        exit = 4;
    }
    text.push_str(&format!(
        "action sweep (seed {}): {} instances, {} atoms, {} bridge pairs, {} pullback pairs, {} violations\n",
        common.seed,
        sweep.instances,
        sweep.atoms_checked,
        sweep.bridge_checked,
        sweep.pullbacks_checked,
        sweep.violations.len()
    ));
    for v in &sweep.violations {
        text.push_str(&format!("  {v}\n"));
    }
    let runtime = common.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    match format {
        OutputFormat::Text => {
            print!("{text}");
            if let Some(ms) = runtime {
                println!("runtime {ms:.1} ms");
            }
        }
        OutputFormat::Structured => {
            let mut doc = json!({
                "schema_version": SCHEMA_VERSION,
                "engine_version": ENGINE_VERSION,
                "caps": caps,
                "universe": params,
                "seed": common.seed,
                "rings": rings,
                "action_sweep": sweep,
                "exit_code": exit,
            });
            if let Some(ms) = runtime {
                doc["runtime_ms"] = json!(ms);
            }
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
    }
    Ok(exit)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
