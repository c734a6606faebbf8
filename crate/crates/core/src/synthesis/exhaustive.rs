//! Deterministic meet-in-the-middle over all Pauli tuples.
//!
//! The `⌊t/2⌋`-factor W side is tabulated as sorted label hashes; the
//! `⌈t/2⌉`-factor V side is streamed against it in parallel. Hash hits are
//! confirmed by full label comparison.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use xxhash_rust::xxh3::xxh3_128;

use crate::error::{Error, Result};
use crate::label::write_coset_label;
use crate::matrix::SparseChannelMatrix;
use crate::pauli::{pauli_count, Pauli};
use crate::solution::Solution;

/// Default limit on tuples enumerated per side.
pub const DEFAULT_EXHAUSTIVE_THRESHOLD: u64 = 1 << 20;

#[derive(Clone, Debug)]
pub struct MitmSearch {
    pub solution: Option<Solution>,
    /// W-side tuples tabulated, `ξ^⌊t/2⌋`.
    pub stored: u64,
    /// V-side tuples compared before stopping; `ξ^⌈t/2⌉` when nothing is found.
    pub probed: u64,
}

/// `(ξ^⌈t/2⌉, ξ^⌊t/2⌋)`, the V and W side sizes; `None` past 128 bits.
pub fn side_sizes(n: usize, t: usize) -> Option<(u128, u128)> {
    let xi = pauli_count(n) as u128 - 1;
    let pow = |k: usize| (0..k).try_fold(1u128, |acc, _| acc.checked_mul(xi));
    Some((pow(t.div_ceil(2))?, pow(t / 2)?))
}

/// Depth-first enumeration of `R̂(a_k)^{(T)}···R̂(a_1)^{(T)}·base` over all
/// digit strings `a` extending `prefix`, with `f` seeing digits in
/// application order.
fn enumerate<T, F>(
    base: &SparseChannelMatrix,
    depth: usize,
    transpose: bool,
    paulis: &[Pauli],
    digits: &mut Vec<usize>,
    f: &mut F,
) -> Result<Option<T>>
where
    F: FnMut(&[usize], &SparseChannelMatrix) -> Result<Option<T>>,
{
    if depth == 0 {
        return f(digits, base);
    }
    for (d, p) in paulis.iter().enumerate() {
        let next = base.rotate_left(p, transpose)?;
        digits.push(d);
        let hit = enumerate(&next, depth - 1, transpose, paulis, digits, f)?;
        digits.pop();
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

fn label_hash(m: &SparseChannelMatrix, buf: &mut Vec<u8>) -> u128 {
    write_coset_label(m, buf);
    xxh3_128(buf)
}

fn w_matrix(
    target: &SparseChannelMatrix,
    digits: &[usize],
    paulis: &[Pauli],
) -> Result<SparseChannelMatrix> {
    let mut m = target.clone();
    for &d in digits {
        m = m.rotate_left(&paulis[d], true)?;
    }
    Ok(m)
}

fn decode(mut idx: u64, len: usize, xi: u64) -> Vec<usize> {
    (0..len)
        .map(|_| {
            let d = (idx % xi) as usize;
            idx /= xi;
            d
        })
        .collect()
}

fn encode(digits: &[usize], xi: u64) -> u64 {
    digits.iter().rev().fold(0, |acc, &d| acc * xi + d as u64)
}

/// Runs the first level of the enumeration in parallel, the rest
/// depth-first, each task with its own state from `init`.
fn par_enumerate<S, T, I, F>(
    base: &SparseChannelMatrix,
    depth: usize,
    transpose: bool,
    paulis: &[Pauli],
    init: I,
    visit: F,
) -> Result<Vec<(S, Option<T>)>>
where
    S: Send,
    T: Send,
    I: Fn() -> S + Sync,
    F: Fn(&mut S, &[usize], &SparseChannelMatrix) -> Result<Option<T>> + Sync,
{
    let task = |first: Option<usize>| -> Result<(S, Option<T>)> {
        let mut state = init();
        let mut f = |digits: &[usize], m: &SparseChannelMatrix| visit(&mut state, digits, m);
        let hit = match first {
            None => enumerate(base, depth, transpose, paulis, &mut Vec::new(), &mut f)?,
            Some(d) => {
                let m = base.rotate_left(&paulis[d], transpose)?;
                enumerate(&m, depth - 1, transpose, paulis, &mut vec![d], &mut f)?
            }
        };
        Ok((state, hit))
    };
    if depth == 0 {
        return Ok(vec![task(None)?]);
    }
    (0..paulis.len())
        .into_par_iter()
        .map(|d| task(Some(d)))
        .collect()
}

/// Exhaustive search for a decomposition of `target` with exactly `t`
/// rotations. Refuses when `ξ^⌈t/2⌉` exceeds `threshold`.
pub fn mitm_search(target: &SparseChannelMatrix, t: usize, threshold: u64) -> Result<MitmSearch> {
    let n = target.num_qubits();
    let (nv, nw) =
        side_sizes(n, t).ok_or_else(|| Error::Refused(format!("t = {t} is far too large")))?;
    if nv > threshold as u128 {
        return Err(Error::Refused(format!(
            "exhaustive search at t = {t} needs {nv} tuples per side, threshold is {threshold}"
        )));
    }
    let xi = pauli_count(n) as u64 - 1;
    let paulis: Vec<Pauli> = (1..pauli_count(n))
        .map(|i| Pauli::from_index(i, n))
        .collect::<Result<_>>()?;
    let (kv, kw) = (t.div_ceil(2), t / 2);

    // W side: entries (label hash, tuple index), digits in application order.
    let shards = par_enumerate(
        target,
        kw,
        true,
        &paulis,
        || (Vec::new(), Vec::<(u128, u64)>::new()),
        |(buf, out), digits, m| -> Result<Option<()>> {
            out.push((label_hash(m, buf), encode(digits, xi)));
            Ok(None)
        },
    )?;
    let mut table: Vec<(u128, u64)> = shards.into_iter().flat_map(|((_, out), _)| out).collect();
    debug_assert_eq!(table.len() as u128, nw);
    table.sort_unstable();

    let probed = AtomicU64::new(0);
    let identity = SparseChannelMatrix::identity(n);
    let hits = par_enumerate(
        &identity,
        kv,
        false,
        &paulis,
        || (Vec::new(), Vec::new()),
        |(buf, wbuf), digits, v| -> Result<Option<Solution>> {
            probed.fetch_add(1, Ordering::Relaxed);
            let h = label_hash(v, buf);
            let lo = table.partition_point(|e| e.0 < h);
            for &(eh, idx) in &table[lo..] {
                if eh != h {
                    break;
                }
                let w_digits = decode(idx, kw, xi);
                let wm = w_matrix(target, &w_digits, &paulis)?;
                write_coset_label(&wm, wbuf);
                if wbuf != buf {
                    continue;
                }
                let v_list: Vec<Pauli> = digits.iter().map(|&d| paulis[d]).collect();
                let w_list: Vec<Pauli> = w_digits.iter().rev().map(|&d| paulis[d]).collect();
                return Solution::assemble(&v_list, &w_list, None, target).map(Some);
            }
            Ok(None)
        },
    )?;
    let solution = hits.into_iter().find_map(|(_, hit)| hit);
    Ok(MitmSearch {
        solution,
        stored: table.len() as u64,
        probed: probed.into_inner(),
    })
}

/// Exhaustive search returning only the solution.
pub fn mitm_exhaustive(
    target: &SparseChannelMatrix,
    t: usize,
    threshold: u64,
) -> Result<Option<Solution>> {
    mitm_search(target, t, threshold).map(|s| s.solution)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{channel_of_circuit, rotation_product, Gate, GateKind};

    #[test]
    fn side_size_accounting() {
        assert_eq!(side_sizes(1, 5), Some((27, 9)));
        assert_eq!(side_sizes(3, 7), Some((63u128.pow(4), 63u128.pow(3))));
        // A rotation is never Clifford, so nothing stops the scan early.
        let id = SparseChannelMatrix::identity(2);
        let out = mitm_search(&id, 1, 1 << 20).unwrap();
        assert!(out.solution.is_none());
        assert_eq!((out.probed, out.stored), (15, 1));
    }

    #[test]
    fn s_gate_needs_two_rotations() {
        let s = channel_of_circuit(&[Gate::single(GateKind::S, 0)], 1).unwrap();
        assert!(mitm_exhaustive(&s, 0, 1 << 20).unwrap().is_some());
        assert!(mitm_exhaustive(&s, 1, 1 << 20).unwrap().is_none());
        let sol = mitm_exhaustive(&s, 2, 1 << 20).unwrap().unwrap();
        assert!(sol.recomposes(&s));
    }

    #[test]
    fn planted_product_is_found() {
        let ps: Vec<Pauli> = ["XZ", "YY", "IZ"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let target = rotation_product(&ps, 2).unwrap();
        let sol = mitm_exhaustive(&target, 3, 1 << 20).unwrap().unwrap();
        assert!(sol.recomposes(&target));
    }

    #[test]
    fn oversized_search_is_refused() {
        let target = SparseChannelMatrix::identity(2);
        assert!(matches!(
            mitm_search(&target, 6, 1000),
            Err(Error::Refused(_))
        ));
    }
}
