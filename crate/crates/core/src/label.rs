//! Canonical labels for right cosets `A·Ĉ` of channel matrices modulo
//! Clifford channel matrices.
//!
//! Right multiplication by a signed permutation that fixes the identity
//! column only permutes and sign-flips the remaining columns. Normalizing the
//! sign of every non-identity column on its first nonzero row and sorting the
//! columns removes exactly that freedom.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::SparseChannelMatrix;

/// Serialized canonical representative of a coset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetLabel {
    bytes: Vec<u8>,
}

impl CosetLabel {
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.bytes)
    }
}

impl fmt::Debug for CosetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CosetLabel({} bytes)", self.bytes.len())
    }
}

/// Computes the coset label of a canonical channel matrix.
pub fn coset_label(a: &SparseChannelMatrix) -> CosetLabel {
    let mut bytes = Vec::new();
    write_coset_label(a, &mut bytes);
    CosetLabel { bytes }
}

/// Writes the label bytes into `out` (cleared first). Shares buffers in
/// hot loops.
pub fn write_coset_label(a: &SparseChannelMatrix, out: &mut Vec<u8>) {
    out.clear();
    append_coset_label(a, out);
}

pub(crate) fn append_coset_label(a: &SparseChannelMatrix, out: &mut Vec<u8>) {
    let mut m = a.clone();
    for c in 1..m.dim() {
        let (_, vals) = m.column_slices(c);
        if vals.first().is_some_and(|v| v.signum() < 0) {
            m.negate_column(c);
        }
    }
    let mut order: Vec<usize> = (1..m.dim()).collect();
    order.sort_unstable_by(|&i, &j| compare_columns(&m, i, j));
    order.insert(0, 0);
    m.write_bytes_in_order(&order, out);
}

fn compare_columns(m: &SparseChannelMatrix, i: usize, j: usize) -> Ordering {
    let (ri, vi) = m.column_slices(i);
    let (rj, vj) = m.column_slices(j);
    let lhs = ri.iter().zip(vi).map(|(r, v)| (*r, v.a, v.b));
    let rhs = rj.iter().zip(vj).map(|(r, v)| (*r, v.a, v.b));
    lhs.cmp(rhs)
}

/// `Aᵀ·B` when it is a signed permutation, i.e. when `B = A·Q̂`.
pub fn clifford_quotient(
    a: &SparseChannelMatrix,
    b: &SparseChannelMatrix,
) -> Result<Option<SparseChannelMatrix>> {
    if a.dim() != b.dim() {
        return Err(Error::Domain(format!(
            "dimension mismatch: {} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    let q = a.transpose().mat_mul(b)?;
    Ok(q.is_signed_permutation().then_some(q))
}
