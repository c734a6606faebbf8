//! Gate-level output for solutions.

use crate::channel::{channel_of_circuit, Gate, GateKind};
use crate::error::{Error, Result};
use crate::matrix::SparseChannelMatrix;
use crate::pauli::Pauli;
use crate::solution::Solution;

use super::tableau::extract_clifford;

/// A Clifford circuit `B` with `B·P·B† = Z_pivot`, and the pivot.
fn basis_change(p: &Pauli) -> Result<(Vec<Gate>, usize)> {
    let support: Vec<usize> = p.support().collect();
    let &pivot = support
        .first()
        .ok_or_else(|| Error::Domain("R(I) has no gate form".into()))?;
    let mut b = Vec::new();
    for &q in &support {
        match p.letter(q) {
            'X' => b.push(Gate::single(GateKind::H, q)),
            'Y' => {
                b.push(Gate::single(GateKind::Sdg, q));
                b.push(Gate::single(GateKind::H, q));
            }
            _ => {}
        }
    }
    for &q in &support[1..] {
        b.push(Gate::two(GateKind::Cnot, q, pivot));
    }
    let mut img = *p;
    let mut neg = false;
    for g in &b {
        let (next, flip) = g.conjugate(&img)?;
        img = next;
        neg ^= flip;
    }
    debug_assert_eq!(img, Pauli::single(p.num_qubits(), pivot, 'Z')?);
    if neg {
        b.push(Gate::single(GateKind::X, pivot));
    }
    Ok((b, pivot))
}

/// Gates for the π/8 rotation about `p`: `B`, then `T` on the pivot, then `B†`.
pub fn rotation_gates(p: &Pauli) -> Result<Vec<Gate>> {
    let (b, pivot) = basis_change(p)?;
    let mut out = b.clone();
    out.push(Gate::single(GateKind::T, pivot));
    out.extend(b.iter().rev().map(Gate::inverse));
    Ok(out)
}

/// Full circuit for a solution: the Clifford first, then `R(P_1)..R(P_t)`.
pub fn emit_gates(solution: &Solution) -> Result<Vec<Gate>> {
    let mut out = extract_clifford(&solution.clifford)?.to_gates()?;
    for p in &solution.paulis {
        out.extend(rotation_gates(p)?);
    }
    Ok(out)
}

/// Exact check `R̂(P_t)···R̂(P_1)·D̂ = Ĉ`.
pub fn verify_solution(solution: &Solution, target: &SparseChannelMatrix) -> bool {
    solution.n == target.num_qubits() && solution.recomposes(target)
}

/// Exact check that a gate list has channel matrix `Ĉ`.
pub fn verify_gates(gates: &[Gate], target: &SparseChannelMatrix) -> bool {
    channel_of_circuit(gates, target.num_qubits())
        .map(|m| m == *target)
        .unwrap_or(false)
}
