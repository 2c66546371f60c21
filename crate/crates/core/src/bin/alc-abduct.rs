use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use alc_abduct::abduction::{abduce, AbductionRequest, Mode};
use alc_abduct::bench::{self, BenchConfig, Profile, SynthConfig};
use alc_abduct::forgetting::{self, Budget};
use alc_abduct::model::Ontology;
use alc_abduct::parser::{
    parse_axiom, parse_observation, parse_ontology, parse_symbol_list, render_axiom, render_hypothesis,
    render_ontology, SourceDocument,
};
use alc_abduct::tableau::Reasoner;

#[derive(Parser)]
#[command(name = "alc-abduct", version, about = "ABox abduction for ALC ontologies via forgetting")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a hypothesis explaining an observation.
    Abduce {
        #[arg(long)]
        ontology: PathBuf,
        #[arg(long)]
        observation: PathBuf,
        /// Comma-separated concept names to forget.
        #[arg(long)]
        forget: String,
        #[arg(long, default_value = "full")]
        mode: Mode,
        #[arg(long, default_value_t = 300_000)]
        timeout_ms: u64,
        /// Write the resolution derivation here.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Write a JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Skip the consistency, explanation and independence checks.
        #[arg(long)]
        no_verify: bool,
    },
    /// Print a uniform interpolant of an ontology.
    Forget {
        #[arg(long)]
        ontology: PathBuf,
        #[arg(long)]
        forget: String,
        #[arg(long, default_value_t = 300_000)]
        timeout_ms: u64,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Decide whether an ontology entails an axiom. Exits 0 if it does, 1 if not.
    Entails {
        #[arg(long)]
        ontology: PathBuf,
        #[arg(long)]
        axiom: String,
    },
    /// Run the benchmark protocol and write per-call CSV.
    Bench {
        /// Ontology file or directory of `.dl` files; repeatable.
        #[arg(long)]
        corpus: Vec<PathBuf>,
        /// Add generated ontologies of these TBox sizes.
        #[arg(long, value_delimiter = ',')]
        synthetic: Vec<usize>,
        #[arg(long, default_value = "alc")]
        profile: ProfileArg,
        #[arg(long, default_value_t = 30)]
        num_obs: usize,
        #[arg(long, value_delimiter = ',', default_value = "1,10,25,50")]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "approx,full")]
        modes: Vec<Mode>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 300_000)]
        timeout_ms: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Write a seeded synthetic ontology.
    Generate {
        #[arg(long, default_value_t = 900)]
        tbox: usize,
        #[arg(long)]
        abox: Option<usize>,
        #[arg(long, default_value = "alc")]
        profile: ProfileArg,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum ProfileArg {
    El,
    Alc,
}

impl From<ProfileArg> for Profile {
    fn from(p: ProfileArg) -> Profile {
        match p {
            ProfileArg::El => Profile::El,
            ProfileArg::Alc => Profile::Alc,
        }
    }
}

fn load(path: &PathBuf) -> Result<Ontology> {
    let doc = SourceDocument::from_path(path)?;
    parse_ontology(&doc).with_context(|| format!("parsing {}", path.display()))
}

fn write_or_print(path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Abduce { ontology, observation, forget, mode, timeout_ms, trace, report, no_verify } => {
            let mut onto = load(&ontology)?;
            let obs_doc = SourceDocument::from_path(&observation)?;
            let psi = parse_observation(&obs_doc, &mut onto.symbols)
                .with_context(|| format!("parsing {}", observation.display()))?;
            let f = parse_symbol_list(&forget, &mut onto.symbols).context("parsing --forget")?;
            let mut req = AbductionRequest::new(onto, psi, f, mode);
            req.budget = Budget::with_timeout_ms(timeout_ms);
            req.verify = !no_verify;
            req.keep_interpolant = trace.is_some();
            let r = abduce(&req)?;
            let table = &req.ontology.symbols;
            if let (Some(path), Some(ui)) = (&trace, &r.interpolant) {
                fs::write(path, ui.trace(table)).with_context(|| format!("writing {}", path.display()))?;
            }
            if let Some(path) = &report {
                let json = serde_json::to_string_pretty(&r.to_json(table))?;
                fs::write(path, json + "\n").with_context(|| format!("writing {}", path.display()))?;
            }
            for w in &r.warnings {
                eprintln!("warning: {w}");
            }
            match &r.hypothesis {
                Some(h) => print!("{}", render_hypothesis(h, table)),
                None if r.timeout => bail!("budget exceeded before a hypothesis was found"),
                None => bail!("no hypothesis"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Forget { ontology, forget, timeout_ms, trace } => {
            let mut onto = load(&ontology)?;
            let f = parse_symbol_list(&forget, &mut onto.symbols).context("parsing --forget")?;
            let ui = forgetting::forget(&onto, None, None, &f, &Budget::with_timeout_ms(timeout_ms))?;
            if let Some(path) = &trace {
                fs::write(path, ui.trace(&onto.symbols)).with_context(|| format!("writing {}", path.display()))?;
            }
            for a in &ui.axioms {
                println!("{}", render_axiom(&a.axiom, &onto.symbols));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Entails { ontology, axiom } => {
            let mut onto = load(&ontology)?;
            let ax = parse_axiom(&axiom, &mut onto.symbols).context("parsing --axiom")?;
            let text = render_axiom(&ax, &onto.symbols);
            if Reasoner::default().entails(&onto, &ax)? {
                println!("entailed: {text}");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("not entailed: {text}");
                Ok(ExitCode::from(1))
            }
        }
        Command::Bench { corpus, synthetic, profile, num_obs, sizes, modes, seed, timeout_ms, csv } => {
            let cfg = BenchConfig {
                corpus,
                synthetic: synthetic.into_iter().map(|n| SynthConfig::new(profile.into(), n, seed)).collect(),
                observations: num_obs,
                sizes,
                seed,
                timeout_ms,
                modes,
            };
            if cfg.corpus.is_empty() && cfg.synthetic.is_empty() {
                bail!("nothing to run: pass --corpus or --synthetic");
            }
            let out = bench::run_bench(&cfg)?;
            let mut buf = Vec::new();
            bench::write_csv(&out.records, &mut buf)?;
            match &csv {
                Some(p) => fs::write(p, &buf).with_context(|| format!("writing {}", p.display()))?,
                None => std::io::stdout().write_all(&buf)?,
            }
            eprint!("{}", bench::render_summary(&out.rows));
            for e in &out.errors {
                let at = [
                    e.mode.map(|m| m.to_string()),
                    e.sig_size.map(|s| format!("|F|={s}")),
                    e.obs_idx.map(|k| format!("obs {k}")),
                ]
                .into_iter()
                .flatten()
                .collect::<Vec<_>>()
                .join(" ");
                eprintln!("error: {} {at}: {}", e.ontology, e.message);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Generate { tbox, abox, profile, seed, out } => {
            let mut cfg = SynthConfig::new(profile.into(), tbox, seed);
            if let Some(a) = abox {
                cfg.abox_axioms = a;
            }
            let onto = bench::generate_ontology(&cfg);
            write_or_print(out.as_ref(), &render_ontology(&onto))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
