use crate::channel::rotation_product;
use crate::error::{Error, Result};
use crate::matrix::SparseChannelMatrix;
use crate::pauli::Pauli;
use crate::stats::SearchStats;

/// A decomposition `Ĉ = R̂(P_t)···R̂(P_1)·D̂`.
#[derive(Clone, Debug)]
pub struct Solution {
    pub n: usize,
    /// `P_1..P_t`; `P_1` is applied first.
    pub paulis: Vec<Pauli>,
    /// Channel matrix of the Clifford `D`, a signed permutation.
    pub clifford: SparseChannelMatrix,
    pub chunk: Option<usize>,
    pub stats: SearchStats,
}

impl Solution {
    pub fn t(&self) -> usize {
        self.paulis.len()
    }

    /// Builds a solution from the two halves of a claw: `v` are the V-side
    /// Paulis (including the chunk Pauli last, when present) and `w` the
    /// W-side Paulis. Fails if the implied Clifford is not a signed
    /// permutation.
    pub fn assemble(
        v: &[Pauli],
        w: &[Pauli],
        chunk: Option<usize>,
        target: &SparseChannelMatrix,
    ) -> Result<Self> {
        let n = target.num_qubits();
        let paulis: Vec<Pauli> = v.iter().chain(w).copied().collect();
        let product = rotation_product(&paulis, n)?;
        let clifford = product.transpose().mat_mul(target)?;
        if !clifford.is_signed_permutation() {
            return Err(Error::Consistency(
                "equal coset labels but the quotient is not a signed permutation".into(),
            ));
        }
        Ok(Solution {
            n,
            paulis,
            clifford,
            chunk,
            stats: SearchStats::default(),
        })
    }

    /// Exact recomposition check against `target`.
    pub fn recomposes(&self, target: &SparseChannelMatrix) -> bool {
        rotation_product(&self.paulis, self.n)
            .and_then(|r| r.mat_mul(&self.clifford))
            .map(|m| m == *target)
            .unwrap_or(false)
    }
}
