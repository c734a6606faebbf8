//! T-count search: tries `t = t_min, t_min + 1, …` until a decomposition
//! is found.

mod emit;
mod exhaustive;
mod tableau;

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use emit::{emit_gates, rotation_gates, verify_gates, verify_solution};
pub use exhaustive::{
    mitm_exhaustive, mitm_search, side_sizes, MitmSearch, DEFAULT_EXHAUSTIVE_THRESHOLD,
};
pub use tableau::{extract_clifford, Tableau};

use crate::channel::{channel_of_circuit, Gate};
use crate::claw::{search_chunk_cancellable, RoleConfig, MIN_CHUNK_BUDGET};
use crate::cost::optimal_theta_exp;
use crate::error::{Error, Result};
use crate::matrix::SparseChannelMatrix;
use crate::solution::Solution;
use crate::stats::SearchStats;
use crate::walk::{derive_salt, WalkConfig};

pub const DEFAULT_STORE_CAPACITY: usize = 1 << 20;
pub const DEFAULT_ROUNDS: u32 = 3;
pub const DEFAULT_BUDGET_FACTOR: u64 = 10;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineChoice {
    #[default]
    Auto,
    Walk,
    Exhaustive,
}

/// Engine that settled one value of `t`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// Direct test for `t ≤ 1`.
    Scan,
    Exhaustive,
    Walk,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum OptimalityFlag {
    ProvenOptimal,
    HeuristicOptimal,
}

#[derive(Clone, Debug)]
pub struct SynthesisOptions {
    pub t_min: usize,
    pub t_max: usize,
    pub engine: EngineChoice,
    /// Largest per-side tuple count searched exhaustively.
    pub exhaustive_threshold: u64,
    /// `θ = 2^-theta_exp`; chosen from the cost model when absent.
    pub theta_exp: Option<u32>,
    pub threads: usize,
    pub workers: Option<usize>,
    pub collectors: Option<usize>,
    pub verifiers: Option<usize>,
    pub store_capacity: usize,
    pub seed: u64,
    pub chunk_parallel: bool,
    pub rounds: u32,
    /// Step budget per chunk is `budget_factor · 2·ξ^half`, at least
    /// [`MIN_CHUNK_BUDGET`].
    pub budget_factor: u64,
    pub emit_gates: bool,
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        SynthesisOptions {
            t_min: 0,
            t_max: 10,
            engine: EngineChoice::Auto,
            exhaustive_threshold: DEFAULT_EXHAUSTIVE_THRESHOLD,
            theta_exp: None,
            threads: 1,
            workers: None,
            collectors: None,
            verifiers: None,
            store_capacity: DEFAULT_STORE_CAPACITY,
            seed: 0,
            chunk_parallel: false,
            rounds: DEFAULT_ROUNDS,
            budget_factor: DEFAULT_BUDGET_FACTOR,
            emit_gates: true,
        }
    }
}

impl SynthesisOptions {
    pub fn roles(&self) -> RoleConfig {
        let mut r = RoleConfig::for_threads(self.threads, self.store_capacity);
        if self.workers.is_some() || self.collectors.is_some() || self.verifiers.is_some() {
            r.inline = false;
        }
        r.workers = self.workers.unwrap_or(r.workers).max(1);
        r.collectors = self.collectors.unwrap_or(r.collectors).max(1);
        r.verifiers = self.verifiers.unwrap_or(r.verifiers).max(1);
        r
    }

    /// Engine for one `t`.
    pub fn engine_for(&self, n: usize, t: usize) -> Engine {
        if t <= 1 {
            return Engine::Scan;
        }
        match self.engine {
            EngineChoice::Exhaustive => Engine::Exhaustive,
            EngineChoice::Walk => Engine::Walk,
            EngineChoice::Auto => match side_sizes(n, t) {
                Some((nv, _)) if nv <= self.exhaustive_threshold as u128 => Engine::Exhaustive,
                _ => Engine::Walk,
            },
        }
    }

    fn theta_exp_for(&self, cfg_n: usize, t: usize) -> u32 {
        self.theta_exp.unwrap_or_else(|| {
            optimal_theta_exp(cfg_n as u32, t as u32, self.store_capacity as f64, 62)
        })
    }
}

/// What was tried at one `t`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TReport {
    pub t: usize,
    pub engine: Engine,
    pub found: bool,
    /// Tuples (exhaustive) or steps per chunk (walk).
    pub budget: u64,
    pub theta_exp: Option<u32>,
    pub chunks_searched: u64,
    pub rounds: u32,
    pub steps: u64,
}

#[derive(Clone, Debug)]
pub struct SynthesisResult {
    pub n: usize,
    pub target: SparseChannelMatrix,
    pub solution: Solution,
    pub tableau: Tableau,
    pub gates: Option<Vec<Gate>>,
    pub engine: Engine,
    pub optimality: OptimalityFlag,
    pub stats: SearchStats,
    pub reports: Vec<TReport>,
}

impl SynthesisResult {
    pub fn t(&self) -> usize {
        self.solution.t()
    }
}

#[derive(Clone, Debug)]
pub struct NotFound {
    pub t_max: usize,
    pub stats: SearchStats,
    pub reports: Vec<TReport>,
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Found(Box<SynthesisResult>),
    NotFound(NotFound),
}

impl Outcome {
    pub fn found(self) -> Option<SynthesisResult> {
        match self {
            Outcome::Found(r) => Some(*r),
            Outcome::NotFound(_) => None,
        }
    }
}

/// Synthesizes a circuit given as a gate list.
pub fn synthesize(gates: &[Gate], n: usize, opts: &SynthesisOptions) -> Result<Outcome> {
    let target = channel_of_circuit(gates, n)?;
    synthesize_channel(&target, opts)
}

/// Synthesizes the unitary with channel matrix `target`.
pub fn synthesize_channel(
    target: &SparseChannelMatrix,
    opts: &SynthesisOptions,
) -> Result<Outcome> {
    if opts.t_min > opts.t_max {
        return Err(Error::Domain("t_min exceeds t_max".into()));
    }
    let n = target.num_qubits();
    let mut stats = SearchStats::default();
    let mut reports = Vec::new();
    let mut exhaustive_below = opts.t_min == 0;

    for t in opts.t_min..=opts.t_max {
        let engine = opts.engine_for(n, t);
        let (found, report) = match engine {
            Engine::Scan | Engine::Exhaustive => {
                let threshold = if engine == Engine::Scan {
                    u64::MAX
                } else {
                    opts.exhaustive_threshold
                };
                let s = mitm_search(target, t, threshold)?;
                let report = TReport {
                    t,
                    engine,
                    found: s.solution.is_some(),
                    budget: s.stored.saturating_add(s.probed),
                    theta_exp: None,
                    chunks_searched: 1,
                    rounds: 1,
                    steps: s.probed,
                };
                (s.solution, report)
            }
            Engine::Walk => walk_search(target, t, opts, &mut stats)?,
        };
        reports.push(report);
        if let Some(mut solution) = found {
            solution.stats = stats;
            if !verify_solution(&solution, target) {
                return Err(Error::Consistency("solution failed recomposition".into()));
            }
            let tableau = extract_clifford(&solution.clifford)?;
            let gates = if opts.emit_gates {
                let g = emit_gates(&solution)?;
                if !verify_gates(&g, target) {
                    return Err(Error::Consistency(
                        "emitted circuit failed recomposition".into(),
                    ));
                }
                Some(g)
            } else {
                None
            };
            let optimality = if exhaustive_below {
                OptimalityFlag::ProvenOptimal
            } else {
                OptimalityFlag::HeuristicOptimal
            };
            return Ok(Outcome::Found(Box::new(SynthesisResult {
                n,
                target: target.clone(),
                solution,
                tableau,
                gates,
                engine,
                optimality,
                stats,
                reports,
            })));
        }
        exhaustive_below &= engine != Engine::Walk;
    }
    Ok(Outcome::NotFound(NotFound {
        t_max: opts.t_max,
        stats,
        reports,
    }))
}

/// Walk search at one `t` over all chunks and rounds.
fn walk_search(
    target: &SparseChannelMatrix,
    t: usize,
    opts: &SynthesisOptions,
    stats: &mut SearchStats,
) -> Result<(Option<Solution>, TReport)> {
    let n = target.num_qubits();
    let theta_exp = opts.theta_exp_for(n, t).min(62);
    let chunks: Vec<Option<usize>> = if t % 2 == 1 {
        (0..crate::pauli::pauli_count(n) - 1).map(Some).collect()
    } else {
        vec![None]
    };
    let roles = opts.roles();
    let mut report = TReport {
        t,
        engine: Engine::Walk,
        found: false,
        budget: 0,
        theta_exp: Some(theta_exp),
        chunks_searched: 0,
        rounds: 0,
        steps: 0,
    };
    for round in 0..opts.rounds.max(1) {
        report.rounds = round + 1;
        let config = |chunk: Option<usize>| {
            WalkConfig::new(
                n,
                t,
                chunk,
                theta_exp,
                derive_salt(opts.seed, n, t, chunk, round),
            )
        };
        let budget_of = |cfg: &WalkConfig| {
            u64::try_from(cfg.point_count().saturating_mul(opts.budget_factor as u128))
                .unwrap_or(u64::MAX)
                .max(MIN_CHUNK_BUDGET)
        };
        if opts.chunk_parallel && chunks.len() > 1 {
            let cancel = AtomicBool::new(false);
            let acc = Mutex::new((SearchStats::default(), 0u64, 0u64));
            let found = chunks
                .par_iter()
                .map(|&chunk| -> Result<Option<Solution>> {
                    if cancel.load(Ordering::Relaxed) {
                        return Ok(None);
                    }
                    let cfg = config(chunk)?;
                    let budget = budget_of(&cfg);
                    let r = RoleConfig::inline(roles.store_capacity);
                    let out = search_chunk_cancellable(&cfg, target, budget, &r, &cancel)?;
                    {
                        let mut a = acc.lock().expect("stats lock poisoned");
                        a.0 += out.stats;
                        a.1 += 1;
                        a.2 = budget;
                    }
                    if out.solution.is_some() {
                        cancel.store(true, Ordering::Relaxed);
                    }
                    Ok(out.solution)
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .next();
            let (st, searched, budget) = acc.into_inner().expect("stats lock poisoned");
            *stats += st;
            report.steps += st.steps;
            report.chunks_searched += searched;
            report.budget = budget;
            if found.is_some() {
                report.found = true;
                return Ok((found, report));
            }
        } else {
            for &chunk in &chunks {
                let cfg = config(chunk)?;
                let budget = budget_of(&cfg);
                let out = search_chunk_cancellable(
                    &cfg,
                    target,
                    budget,
                    &roles,
                    &AtomicBool::new(false),
                )?;
                *stats += out.stats;
                report.steps += out.stats.steps;
                report.chunks_searched += 1;
                report.budget = budget;
                if out.solution.is_some() {
                    report.found = true;
                    return Ok((out.solution, report));
                }
            }
        }
    }
    Ok((None, report))
}
