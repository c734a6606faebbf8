//! Trace-back of two trails sharing a distinguished end point.

use crate::error::{Error, Result};
use crate::label::coset_label;
use crate::matrix::SparseChannelMatrix;
use crate::solution::Solution;
use crate::walk::{
    decode_point, v_side_matrix, w_side_matrix, Point, Side, TrailTriple, WalkConfig, Walker,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MergeOutcome {
    /// One trail is a suffix of the other.
    PrefixOrIdentical,
    /// The trails met after two steps from the same side.
    SameSideCollision { a: Point, b: Point },
    /// The trails met after one V-side and one W-side step.
    Claw { v: u128, w: u128 },
}

/// Locates the merge point using an arbitrary step function. Returns the
/// outcome and the number of steps evaluated.
pub fn locate_merge_with<F>(
    t1: &TrailTriple,
    t2: &TrailTriple,
    mut step: F,
) -> Result<(MergeOutcome, u64)>
where
    F: FnMut(Point) -> Result<Point>,
{
    if t1.end != t2.end {
        return Err(Error::Domain("trails end at different points".into()));
    }
    let (long, short) = if t1.length >= t2.length {
        (t1, t2)
    } else {
        (t2, t1)
    };
    let mut steps = 0u64;
    let mut a = long.start;
    for _ in 0..long.length - short.length {
        a = step(a)?;
        steps += 1;
    }
    let mut b = short.start;
    if a == b {
        return Ok((MergeOutcome::PrefixOrIdentical, steps));
    }
    for _ in 0..short.length {
        let na = step(a)?;
        let nb = step(b)?;
        steps += 2;
        if na == nb {
            let outcome = match (a.side, b.side) {
                (Side::V, Side::W) => MergeOutcome::Claw { v: a.x, w: b.x },
                (Side::W, Side::V) => MergeOutcome::Claw { v: b.x, w: a.x },
                _ => MergeOutcome::SameSideCollision { a, b },
            };
            return Ok((outcome, steps));
        }
        a = na;
        b = nb;
    }
    Err(Error::Corrupt(format!(
        "trails from {:?} and {:?} never merged before {:?}",
        t1.start, t2.start, t1.end
    )))
}

/// Locates the merge point of two trails ending at the same point.
pub fn locate_merge(
    t1: &TrailTriple,
    t2: &TrailTriple,
    cfg: &WalkConfig,
    target: &SparseChannelMatrix,
) -> Result<MergeOutcome> {
    let mut walker = Walker::new(cfg, target)?;
    locate_merge_with(t1, t2, |p| walker.step(p)).map(|(o, _)| o)
}

/// Confirms a claw by exact label comparison and extracts the solution.
/// Returns `None` for hash-level false positives.
pub fn verify_claw(
    v: u128,
    w: u128,
    cfg: &WalkConfig,
    target: &SparseChannelMatrix,
) -> Result<Option<Solution>> {
    let v_paulis = decode_point(v, cfg)?;
    let w_paulis = decode_point(w, cfg)?;
    let vm = v_side_matrix(&v_paulis, cfg)?;
    let wm = w_side_matrix(&w_paulis, target)?;
    if coset_label(&vm) != coset_label(&wm) {
        return Ok(None);
    }
    let v_full: Vec<_> = v_paulis.iter().copied().chain(cfg.chunk_pauli()).collect();
    Solution::assemble(&v_full, &w_paulis, cfg.chunk, target).map(Some)
}
