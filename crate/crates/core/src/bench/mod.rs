//! Seeded benchmark runs: random observations, forgetting-signature sweeps,
//! per-call timings and redundancy counts written as CSV.
//!
//! `% H_app redundant` in [`BenchRow`] is `(|V*_app| - |V*|) / |V*_app|`
//! averaged over calls with a non-empty `V*_app`. It is zero for `approx`.

mod sample;
mod synth;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::abduction::{abduce, AbductionRequest, Mode};
use crate::forgetting::Budget;
use crate::model::{ConceptAssertion, Ontology, SymbolSet};
use crate::parser::{parse_ontology, ParseError, SourceDocument};
use crate::tableau::{Reasoner, TableauError};

pub use sample::{
    derive_seed, generate_observations, pick_signature, subconcepts, MAX_OBSERVATION_DEPTH, REJECTIONS_PER_OBSERVATION,
};
pub use synth::{generate_ontology, Profile, SynthConfig};

/// Exact header of the per-call CSV.
pub const CSV_HEADER: &str = "ontology,mode,sig_size,obs_idx,t_forget_ms,t_filter_ms,t_reduce_ms,t_total_ms,\
                              v_size,v_app_size,v_star_size,hyp_disjuncts,fixpoint,timeout";

/// CSV columns that hold wall-clock measurements.
pub const TIMING_COLUMNS: [&str; 4] = ["t_forget_ms", "t_filter_ms", "t_reduce_ms", "t_total_ms"];

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("found {found} of {wanted} observations after {attempts} attempts")]
    SamplingExhausted { wanted: usize, found: usize, attempts: usize },
    #[error("signature of size {requested} requested but only {available} concept names exist")]
    SignatureTooLarge { requested: usize, available: usize },
    #[error("the observation has no concept names to forget")]
    NoObservationSymbols,
    #[error("the ontology is inconsistent")]
    InconsistentOntology,
    #[error(transparent)]
    Reasoner(#[from] TableauError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("cannot read corpus {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    /// Ontology files, or directories scanned for `*.dl` files.
    pub corpus: Vec<PathBuf>,
    /// Generated ontologies added to the corpus.
    pub synthetic: Vec<SynthConfig>,
    pub observations: usize,
    pub sizes: Vec<usize>,
    pub seed: u64,
    pub timeout_ms: u64,
    pub modes: Vec<Mode>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            corpus: Vec::new(),
            synthetic: Vec::new(),
            observations: 30,
            sizes: vec![1, 10, 25, 50],
            seed: 42,
            timeout_ms: 300_000,
            modes: vec![Mode::Approx, Mode::Full],
        }
    }
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub ontology: Ontology,
}

/// One abduction call; serializes to one CSV line under [`CSV_HEADER`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CallRecord {
    pub ontology: String,
    pub mode: Mode,
    pub sig_size: usize,
    pub obs_idx: usize,
    pub t_forget_ms: f64,
    pub t_filter_ms: f64,
    pub t_reduce_ms: f64,
    pub t_total_ms: f64,
    pub v_size: usize,
    pub v_app_size: usize,
    pub v_star_size: usize,
    pub hyp_disjuncts: usize,
    pub fixpoint: bool,
    pub timeout: bool,
}

impl CallRecord {
    pub fn removed_by_filter(&self) -> usize {
        self.v_size - self.v_app_size
    }

    pub fn removed_by_reduce(&self) -> usize {
        self.v_app_size - self.v_star_size
    }
}

/// A call that did not produce a record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowError {
    pub ontology: String,
    pub mode: Option<Mode>,
    pub sig_size: Option<usize>,
    pub obs_idx: Option<usize>,
    pub message: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Stat {
    pub mean: f64,
    pub max: f64,
}

impl Stat {
    fn of(xs: impl Iterator<Item = f64> + Clone) -> Stat {
        let n = xs.clone().count();
        if n == 0 {
            return Stat::default();
        }
        Stat { mean: xs.clone().sum::<f64>() / n as f64, max: xs.fold(f64::MIN, f64::max) }
    }
}

/// Aggregate over the observations of one ontology, mode and signature size.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub ontology: String,
    pub mode: Mode,
    pub sig_size: usize,
    pub calls: usize,
    pub t_forget_ms: Stat,
    pub t_filter_ms: Stat,
    pub t_reduce_ms: Stat,
    pub t_total_ms: Stat,
    pub redund_v_to_v_app: f64,
    pub redund_v_app_to_v_star: f64,
    pub hyp_disjuncts: Stat,
    pub pct_h_app_redundant: f64,
    pub timeouts: usize,
    pub fixpoints: usize,
}

#[derive(Clone, Debug, Default)]
pub struct BenchOutcome {
    pub records: Vec<CallRecord>,
    pub rows: Vec<BenchRow>,
    pub errors: Vec<RowError>,
}

/// Expands directories to their `*.dl` files, sorted, and parses each file.
pub fn load_corpus(paths: &[PathBuf]) -> Result<Vec<CorpusEntry>, BenchError> {
    let mut files = Vec::new();
    for p in paths {
        if p.is_dir() {
            let rd = std::fs::read_dir(p).map_err(|source| BenchError::Io { path: p.clone(), source })?;
            let mut found: Vec<PathBuf> = rd
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| f.extension().is_some_and(|x| x == "dl"))
                .collect();
            found.sort();
            files.extend(found);
        } else {
            files.push(p.clone());
        }
    }
    files
        .into_iter()
        .map(|f| {
            let ontology = parse_ontology(&SourceDocument::from_path(&f)?)?;
            Ok(CorpusEntry { name: stem(&f), ontology })
        })
        .collect()
}

fn stem(p: &Path) -> String {
    p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| p.display().to_string())
}

/// Name used for a generated ontology in the corpus.
pub fn synthetic_name(cfg: &SynthConfig) -> String {
    let profile = match cfg.profile {
        Profile::El => "el",
        Profile::Alc => "alc",
    };
    format!("synth-{profile}-{}-s{}", cfg.tbox_axioms + cfg.abox_axioms, cfg.seed)
}

/// Loads the configured corpus and runs it.
pub fn run_bench(cfg: &BenchConfig) -> Result<BenchOutcome, BenchError> {
    let mut entries = load_corpus(&cfg.corpus)?;
    entries
        .extend(cfg.synthetic.iter().map(|s| CorpusEntry { name: synthetic_name(s), ontology: generate_ontology(s) }));
    Ok(run_entries(entries, cfg))
}

struct Task {
    onto: usize,
    mode_idx: usize,
    mode: Mode,
    size: usize,
    obs_idx: usize,
    obs: ConceptAssertion,
    forget: SymbolSet,
}

/// Runs every (ontology, mode, size, observation) call on a worker pool.
/// Sampling happens up front and sequentially, so results depend only on
/// `cfg` apart from the timing columns.
pub fn run_entries(mut entries: Vec<CorpusEntry>, cfg: &BenchConfig) -> BenchOutcome {
    let mut out = BenchOutcome::default();
    let mut tasks = Vec::new();
    let timeout = Duration::from_millis(cfg.timeout_ms);
    for (oi, entry) in entries.iter_mut().enumerate() {
        let fail = |message: String, size: Option<usize>, obs_idx: Option<usize>| RowError {
            ontology: entry.name.clone(),
            mode: None,
            sig_size: size,
            obs_idx,
            message,
        };
        let reasoner = Reasoner::default();
        match reasoner.is_consistent(&entry.ontology) {
            Ok(true) => {}
            Ok(false) => {
                out.errors.push(fail(BenchError::InconsistentOntology.to_string(), None, None));
                continue;
            }
            Err(e) => {
                out.errors.push(fail(e.to_string(), None, None));
                continue;
            }
        }
        let seed = derive_seed(cfg.seed, &[oi as u64]);
        let observations = match generate_observations(&mut entry.ontology, cfg.observations, seed, &reasoner) {
            Ok(obs) => obs,
            Err(e) => {
                out.errors.push(fail(e.to_string(), None, None));
                continue;
            }
        };
        for &size in &cfg.sizes {
            for (k, obs) in observations.iter().enumerate() {
                let seed = derive_seed(cfg.seed, &[oi as u64, size as u64, k as u64]);
                let forget = match pick_signature(&entry.ontology, std::slice::from_ref(obs), size, seed) {
                    Ok(f) => f,
                    Err(e) => {
                        out.errors.push(fail(e.to_string(), Some(size), Some(k)));
                        continue;
                    }
                };
                for (mi, &mode) in cfg.modes.iter().enumerate() {
                    tasks.push(Task {
                        onto: oi,
                        mode_idx: mi,
                        mode,
                        size,
                        obs_idx: k,
                        obs: obs.clone(),
                        forget: forget.clone(),
                    });
                }
            }
        }
    }

    let mut results: Vec<_> = tasks
        .into_par_iter()
        .map(|t| {
            let entry = &entries[t.onto];
            let mut req = AbductionRequest::new(entry.ontology.clone(), vec![t.obs], t.forget, t.mode);
            req.budget = Budget { timeout, ..Budget::default() };
            req.verify = false;
            let res = abduce(&req).map(|r| CallRecord {
                ontology: entry.name.clone(),
                mode: t.mode,
                sig_size: t.size,
                obs_idx: t.obs_idx,
                t_forget_ms: r.t_forget_ms,
                t_filter_ms: r.t_filter_ms,
                t_reduce_ms: r.t_reduce_ms,
                t_total_ms: r.t_total_ms,
                v_size: r.v_size,
                v_app_size: r.v_app_size,
                v_star_size: r.v_star_size,
                hyp_disjuncts: r.hyp_disjuncts,
                fixpoint: r.fixpoint,
                timeout: r.timeout,
            });
            ((t.onto, t.mode_idx, t.size, t.obs_idx), t.mode, res)
        })
        .collect();
    results.sort_by_key(|(k, _, _)| *k);
    for ((oi, _, size, k), mode, res) in results {
        match res {
            Ok(rec) => out.records.push(rec),
            Err(e) => out.errors.push(RowError {
                ontology: entries[oi].name.clone(),
                mode: Some(mode),
                sig_size: Some(size),
                obs_idx: Some(k),
                message: e.to_string(),
            }),
        }
    }
    out.rows = summarize(&out.records);
    out
}

/// Groups records by ontology, mode and signature size, keeping first-seen order.
pub fn summarize(records: &[CallRecord]) -> Vec<BenchRow> {
    let mut order = Vec::new();
    let mut groups: BTreeMap<(String, &'static str, usize), Vec<&CallRecord>> = BTreeMap::new();
    for r in records {
        let key = (r.ontology.clone(), r.mode.as_str(), r.sig_size);
        let g = groups.entry(key.clone()).or_default();
        if g.is_empty() {
            order.push(key);
        }
        g.push(r);
    }
    order
        .into_iter()
        .map(|key| {
            let g = &groups[&key];
            let n = g.len() as f64;
            let pct: Vec<f64> = g
                .iter()
                .filter(|r| r.v_app_size > 0)
                .map(|r| r.removed_by_reduce() as f64 / r.v_app_size as f64 * 100.0)
                .collect();
            BenchRow {
                ontology: key.0,
                mode: g[0].mode,
                sig_size: key.2,
                calls: g.len(),
                t_forget_ms: Stat::of(g.iter().map(|r| r.t_forget_ms)),
                t_filter_ms: Stat::of(g.iter().map(|r| r.t_filter_ms)),
                t_reduce_ms: Stat::of(g.iter().map(|r| r.t_reduce_ms)),
                t_total_ms: Stat::of(g.iter().map(|r| r.t_total_ms)),
                redund_v_to_v_app: g.iter().map(|r| r.removed_by_filter() as f64).sum::<f64>() / n,
                redund_v_app_to_v_star: g.iter().map(|r| r.removed_by_reduce() as f64).sum::<f64>() / n,
                hyp_disjuncts: Stat::of(g.iter().map(|r| r.hyp_disjuncts as f64)),
                pct_h_app_redundant: if pct.is_empty() { 0.0 } else { pct.iter().sum::<f64>() / pct.len() as f64 },
                timeouts: g.iter().filter(|r| r.timeout).count(),
                fixpoints: g.iter().filter(|r| r.fixpoint).count(),
            }
        })
        .collect()
}

/// Writes the per-call CSV.
pub fn write_csv<W: Write>(records: &[CallRecord], out: W) -> Result<(), BenchError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Plain-text table of aggregated rows.
pub fn render_summary(rows: &[BenchRow]) -> String {
    let mut s = format!(
        "{:<24} {:<15} {:>4} {:>5} {:>10} {:>10} {:>10} {:>10} {:>8} {:>8} {:>6} {:>6} {:>7} {:>4} {:>4}\n",
        "ontology",
        "mode",
        "|F|",
        "calls",
        "forget",
        "filter",
        "reduce",
        "total",
        "V>Vapp",
        "Vapp>V*",
        "|H|",
        "max|H|",
        "%red",
        "TO",
        "fix"
    );
    for r in rows {
        s += &format!(
            "{:<24} {:<15} {:>4} {:>5} {:>10.2} {:>10.2} {:>10.2} {:>10.2} {:>8.2} {:>8.2} {:>6.2} {:>6} {:>7.2} {:>4} {:>4}\n",
            r.ontology,
            r.mode.as_str(),
            r.sig_size,
            r.calls,
            r.t_forget_ms.mean,
            r.t_filter_ms.mean,
            r.t_reduce_ms.mean,
            r.t_total_ms.mean,
            r.redund_v_to_v_app,
            r.redund_v_app_to_v_star,
            r.hyp_disjuncts.mean,
            r.hyp_disjuncts.max,
            r.pct_h_app_redundant,
            r.timeouts,
            r.fixpoints
        );
    }
    s
}
