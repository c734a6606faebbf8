//! Per-chunk parallel claw search.
//!
//! Workers walk trails from pseudorandom starts and hand finished triples to
//! collectors, each owning one shard of the distinguished-point store.
//! Collectors forward candidate pairs to verifiers, which trace the trails
//! back and check claws exactly. Roles run as threads connected by bounded
//! queues; the inline mode runs all three roles on the calling thread and is
//! bit-reproducible.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::thread;

use crossbeam_channel::bounded;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::merge::{locate_merge_with, verify_claw, MergeOutcome};
use super::store::{DpStore, InsertResult};
use crate::error::{Error, Result};
use crate::matrix::SparseChannelMatrix;
use crate::solution::Solution;
use crate::stats::SearchStats;
use crate::walk::{run_trail_with, Point, Side, TrailOutcome, TrailTriple, WalkConfig, Walker};

const QUEUE_DEPTH: usize = 1024;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RoleConfig {
    pub workers: usize,
    pub collectors: usize,
    pub verifiers: usize,
    /// Total distinguished-point slots across all collectors.
    pub store_capacity: usize,
    /// Run every role on the calling thread.
    pub inline: bool,
}

impl RoleConfig {
    pub fn inline(store_capacity: usize) -> Self {
        RoleConfig {
            workers: 1,
            collectors: 1,
            verifiers: 1,
            store_capacity,
            inline: true,
        }
    }

    /// Splits `threads` into roles: 1/8 collectors, 1/4 verifiers, the rest
    /// workers. One thread means inline mode.
    pub fn for_threads(threads: usize, store_capacity: usize) -> Self {
        if threads <= 1 {
            return Self::inline(store_capacity);
        }
        let collectors = (threads / 8).max(1);
        let verifiers = (threads / 4).max(1);
        let workers = threads.saturating_sub(collectors + verifiers).max(1);
        RoleConfig {
            workers,
            collectors,
            verifiers,
            store_capacity,
            inline: false,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }
}

#[derive(Clone, Debug)]
pub struct ChunkSearch {
    pub solution: Option<Solution>,
    pub stats: SearchStats,
    /// Slots allocated across all store shards.
    pub store_capacity: usize,
    /// Triples resident at the end of the search.
    pub stored: usize,
}

/// Floor on per-chunk budgets. Tiny spaces map many points onto each
/// distinguished point, so the golden pair is often never compared under one
/// function version; the floor buys enough versions to make that vanish.
pub const MIN_CHUNK_BUDGET: u64 = 1 << 12;

/// Default step budget for one chunk, `10 · 2 · ξ^half`, at least
/// [`MIN_CHUNK_BUDGET`].
pub fn default_budget(cfg: &WalkConfig) -> u64 {
    u64::try_from(cfg.point_count().saturating_mul(10))
        .unwrap_or(u64::MAX)
        .max(MIN_CHUNK_BUDGET)
}

fn effective_capacity(cfg: &WalkConfig, requested: usize) -> usize {
    // No more slots than there are points to end on.
    let points = usize::try_from(cfg.point_count()).unwrap_or(usize::MAX);
    requested.min(points.saturating_mul(2)).max(1)
}

fn worker_rng(cfg: &WalkConfig, worker: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.salt ^ ((worker as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15)))
}

fn random_start(rng: &mut ChaCha8Rng, cfg: &WalkConfig) -> Point {
    let x = rng.gen_range(0..cfg.space);
    let side = if rng.gen::<bool>() { Side::W } else { Side::V };
    Point::new(x, side)
}

fn record_trail(stats: &mut SearchStats, outcome: &TrailOutcome) {
    match outcome {
        TrailOutcome::Complete(_) => stats.trails += 1,
        TrailOutcome::CycleAbandoned { .. } => stats.abandoned_trails += 1,
        TrailOutcome::Interrupted { .. } => stats.interrupted_trails += 1,
    }
}

fn record_insert(stats: &mut SearchStats, result: &InsertResult) {
    match result {
        InsertResult::Inserted => stats.dp_insertions += 1,
        InsertResult::DuplicateStart => stats.duplicate_starts += 1,
        InsertResult::CandidatePair(_) => stats.candidate_pairs += 1,
    }
}

/// Traces a candidate pair back and verifies the claw it yields, if any.
fn check_pair(
    a: &TrailTriple,
    b: &TrailTriple,
    walker: &mut Walker<'_>,
    cfg: &WalkConfig,
    target: &SparseChannelMatrix,
    stats: &mut SearchStats,
) -> Result<Option<Solution>> {
    let (outcome, steps) = locate_merge_with(a, b, |p| walker.step(p))?;
    stats.verify_steps += steps;
    match outcome {
        MergeOutcome::PrefixOrIdentical => stats.prefix_merges += 1,
        MergeOutcome::SameSideCollision { .. } => stats.same_side_collisions += 1,
        MergeOutcome::Claw { v, w } => {
            stats.claws += 1;
            match verify_claw(v, w, cfg, target)? {
                Some(sol) => return Ok(Some(sol)),
                None => stats.false_claws += 1,
            }
        }
    }
    Ok(None)
}

/// Searches one chunk for a claw within `budget` walk steps.
pub fn search_chunk(
    cfg: &WalkConfig,
    target: &SparseChannelMatrix,
    budget: u64,
    roles: &RoleConfig,
) -> Result<ChunkSearch> {
    search_chunk_cancellable(cfg, target, budget, roles, &AtomicBool::new(false))
}

/// As [`search_chunk`], stopping early once `cancel` is set.
///
/// The step function is re-salted and the store cleared every
/// [`version_length`] steps, so that one unlucky function cannot hide every
/// golden collision for the whole budget.
pub fn search_chunk_cancellable(
    cfg: &WalkConfig,
    target: &SparseChannelMatrix,
    budget: u64,
    roles: &RoleConfig,
    cancel: &AtomicBool,
) -> Result<ChunkSearch> {
    if budget == 0 {
        return Err(Error::Domain("step budget must be positive".into()));
    }
    if target.num_qubits() != cfg.n {
        return Err(Error::Domain("target has wrong qubit count".into()));
    }
    let period = version_length(cfg, roles.store_capacity);
    let mut total = ChunkSearch {
        solution: None,
        stats: SearchStats::default(),
        store_capacity: 0,
        stored: 0,
    };
    let mut version = 0u64;
    while total.stats.steps < budget && !cancel.load(Ordering::Relaxed) {
        let mut vcfg = cfg.clone();
        vcfg.salt = version_salt(cfg.salt, version);
        let slice = period.min(budget - total.stats.steps);
        let out = if roles.inline {
            search_inline(&vcfg, target, slice, roles, cancel)?
        } else {
            search_threaded(&vcfg, target, slice, roles, cancel)?
        };
        total.stats += out.stats;
        total.store_capacity = out.store_capacity;
        total.stored = out.stored;
        if out.solution.is_some() {
            total.solution = out.solution;
            break;
        }
        version += 1;
    }
    if let Some(sol) = total.solution.as_mut() {
        sol.stats = total.stats;
    }
    Ok(total)
}

/// Steps per function version: ten times the expected number of distinct
/// distinguished points that fit in the store, in units of trail length.
pub fn version_length(cfg: &WalkConfig, store_capacity: usize) -> u64 {
    let theta_inv = 1u128 << cfg.theta_exp;
    let dps = (cfg.point_count() / theta_inv).max(1);
    let held = dps.min(effective_capacity(cfg, store_capacity) as u128);
    u64::try_from(held.saturating_mul(theta_inv).saturating_mul(10)).unwrap_or(u64::MAX)
}

fn version_salt(salt: u64, version: u64) -> u64 {
    if version == 0 {
        return salt;
    }
    let mut buf = [0u8; 11];
    buf[..3].copy_from_slice(b"ver");
    buf[3..].copy_from_slice(&version.to_le_bytes());
    xxhash_rust::xxh3::xxh3_64_with_seed(&buf, salt)
}

fn search_inline(
    cfg: &WalkConfig,
    target: &SparseChannelMatrix,
    budget: u64,
    roles: &RoleConfig,
    cancel: &AtomicBool,
) -> Result<ChunkSearch> {
    let capacity = effective_capacity(cfg, roles.store_capacity);
    let mut store = DpStore::new(capacity, cfg.salt);
    let mut walker = Walker::new(cfg, target)?;
    let mut rng = worker_rng(cfg, 0);
    let mut stats = SearchStats::default();
    let mut solution = None;

    while stats.steps < budget && !cancel.load(Ordering::Relaxed) {
        let start = random_start(&mut rng, cfg);
        let mut steps = stats.steps;
        let outcome = run_trail_with(start, cfg, |p| {
            if steps >= budget {
                return Ok(None);
            }
            steps += 1;
            walker.step(p).map(Some)
        })?;
        stats.steps = steps;
        record_trail(&mut stats, &outcome);
        let TrailOutcome::Complete(triple) = outcome else {
            continue;
        };
        let inserted = store.insert(triple);
        record_insert(&mut stats, &inserted);
        if let InsertResult::CandidatePair(resident) = inserted {
            if let Some(sol) = check_pair(&resident, &triple, &mut walker, cfg, target, &mut stats)?
            {
                solution = Some(sol);
                break;
            }
        }
    }
    stats.evictions = store.evictions();
    Ok(ChunkSearch {
        solution,
        stats,
        store_capacity: store.capacity(),
        stored: store.len(),
    })
}

fn search_threaded(
    cfg: &WalkConfig,
    target: &SparseChannelMatrix,
    budget: u64,
    roles: &RoleConfig,
    cancel: &AtomicBool,
) -> Result<ChunkSearch> {
    let collectors = roles.collectors.max(1);
    let shard_capacity = (effective_capacity(cfg, roles.store_capacity) / collectors).max(1);
    let stop = AtomicBool::new(false);
    let steps = AtomicU64::new(0);
    let found: Mutex<Option<Solution>> = Mutex::new(None);
    let halted = || stop.load(Ordering::Relaxed) || cancel.load(Ordering::Relaxed);

    let scoped = thread::scope(|s| -> Result<(SearchStats, usize, usize)> {
        let (pair_tx, pair_rx) = bounded::<(TrailTriple, TrailTriple)>(QUEUE_DEPTH);

        let mut verifier_handles = Vec::new();
        for _ in 0..roles.verifiers.max(1) {
            let rx = pair_rx.clone();
            let (stop, found) = (&stop, &found);
            verifier_handles.push(s.spawn(move || -> Result<SearchStats> {
                let mut walker = Walker::new(cfg, target)?;
                let mut stats = SearchStats::default();
                for (a, b) in rx {
                    if halted() {
                        continue;
                    }
                    if let Some(sol) = check_pair(&a, &b, &mut walker, cfg, target, &mut stats)? {
                        let mut slot = found.lock().expect("solution lock poisoned");
                        if slot.is_none() {
                            *slot = Some(sol);
                        }
                        stop.store(true, Ordering::Relaxed);
                    }
                }
                Ok(stats)
            }));
        }
        drop(pair_rx);

        let mut triple_txs = Vec::new();
        let mut collector_handles = Vec::new();
        for _ in 0..collectors {
            let (tx, rx) = bounded::<TrailTriple>(QUEUE_DEPTH);
            triple_txs.push(tx);
            let pair_tx = pair_tx.clone();
            collector_handles.push(s.spawn(move || {
                let mut store = DpStore::new(shard_capacity, cfg.salt);
                let mut stats = SearchStats::default();
                for triple in rx {
                    if halted() {
                        continue;
                    }
                    let inserted = store.insert(triple);
                    record_insert(&mut stats, &inserted);
                    if let InsertResult::CandidatePair(resident) = inserted {
                        // Verifiers only disappear on error; the error surfaces on join.
                        let _ = pair_tx.send((resident, triple));
                    }
                }
                stats.evictions = store.evictions();
                (stats, store.capacity(), store.len())
            }));
        }
        drop(pair_tx);

        let mut worker_handles = Vec::new();
        for id in 0..roles.workers.max(1) {
            let txs = triple_txs.clone();
            let steps = &steps;
            worker_handles.push(s.spawn(move || -> Result<SearchStats> {
                let mut walker = Walker::new(cfg, target)?;
                let mut rng = worker_rng(cfg, id);
                let mut stats = SearchStats::default();
                while !halted() && steps.load(Ordering::Relaxed) < budget {
                    let start = random_start(&mut rng, cfg);
                    let outcome = run_trail_with(start, cfg, |p| {
                        if halted() || steps.fetch_add(1, Ordering::Relaxed) >= budget {
                            return Ok(None);
                        }
                        walker.step(p).map(Some)
                    })?;
                    record_trail(&mut stats, &outcome);
                    if let TrailOutcome::Complete(triple) = outcome {
                        let shard = (triple.end.x % txs.len() as u128) as usize;
                        if txs[shard].send(triple).is_err() {
                            break;
                        }
                    }
                }
                Ok(stats)
            }));
        }
        drop(triple_txs);

        let mut stats = SearchStats::default();
        let mut first_err = None;
        for h in worker_handles {
            match h.join().expect("worker panicked") {
                Ok(st) => stats += st,
                Err(e) => {
                    stop.store(true, Ordering::Relaxed);
                    first_err.get_or_insert(e);
                }
            }
        }
        let (mut capacity, mut stored) = (0, 0);
        for h in collector_handles {
            let (st, cap, len) = h.join().expect("collector panicked");
            stats += st;
            capacity += cap;
            stored += len;
        }
        for h in verifier_handles {
            match h.join().expect("verifier panicked") {
                Ok(st) => stats += st,
                Err(e) => {
                    first_err.get_or_insert(e);
                }
            }
        }
        if let Some(e) = first_err {
            return Err(e);
        }
        stats.steps = steps.load(Ordering::Relaxed).min(budget);
        Ok((stats, capacity, stored))
    });
    let (stats, store_capacity, stored) = scoped?;
    Ok(ChunkSearch {
        solution: found.into_inner().expect("solution lock poisoned"),
        stats,
        store_capacity,
        stored,
    })
}
