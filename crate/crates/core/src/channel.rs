//! Exact channel representations of Clifford+T gates and circuits.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{SparseChannelMatrix, ZRoot2};
use crate::pauli::{pauli_count, Pauli};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum GateKind {
    H,
    S,
    Sdg,
    X,
    Y,
    Z,
    #[serde(rename = "CNOT")]
    Cnot,
    #[serde(rename = "CZ")]
    Cz,
    #[serde(rename = "SWAP")]
    Swap,
    T,
    Tdg,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::Cnot | GateKind::Cz | GateKind::Swap => 2,
            _ => 1,
        }
    }

    pub fn is_clifford(self) -> bool {
        !matches!(self, GateKind::T | GateKind::Tdg)
    }

    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::Sdg => "Sdg",
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::Cnot => "CNOT",
            GateKind::Cz => "CZ",
            GateKind::Swap => "SWAP",
            GateKind::T => "T",
            GateKind::Tdg => "Tdg",
        }
    }

    pub fn from_mnemonic(s: &str) -> Option<Self> {
        Some(match s {
            "H" => GateKind::H,
            "S" => GateKind::S,
            "Sdg" => GateKind::Sdg,
            "X" => GateKind::X,
            "Y" => GateKind::Y,
            "Z" => GateKind::Z,
            "CNOT" | "CX" => GateKind::Cnot,
            "CZ" => GateKind::Cz,
            "SWAP" => GateKind::Swap,
            "T" => GateKind::T,
            "Tdg" => GateKind::Tdg,
            _ => return None,
        })
    }

    /// Kind of the inverse gate.
    pub fn inverse(self) -> Self {
        match self {
            GateKind::S => GateKind::Sdg,
            GateKind::Sdg => GateKind::S,
            GateKind::T => GateKind::Tdg,
            GateKind::Tdg => GateKind::T,
            k => k,
        }
    }
}

/// One gate; for `CNOT` the qubits are `(control, target)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Gate {
    pub kind: GateKind,
    qubits: [u8; 2],
}

impl Gate {
    pub fn single(kind: GateKind, q: usize) -> Self {
        debug_assert_eq!(kind.arity(), 1);
        Gate {
            kind,
            qubits: [q as u8, 0],
        }
    }

    pub fn two(kind: GateKind, a: usize, b: usize) -> Self {
        debug_assert_eq!(kind.arity(), 2);
        Gate {
            kind,
            qubits: [a as u8, b as u8],
        }
    }

    pub fn new(kind: GateKind, qubits: &[usize]) -> Result<Self> {
        if qubits.len() != kind.arity() {
            return Err(Error::Domain(format!(
                "{} takes {} qubit(s), got {}",
                kind.mnemonic(),
                kind.arity(),
                qubits.len()
            )));
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(Error::Domain(format!(
                "{} applied twice to qubit {}",
                kind.mnemonic(),
                qubits[0]
            )));
        }
        if qubits.iter().any(|&q| q >= crate::pauli::MAX_QUBITS) {
            return Err(Error::Domain("qubit index too large".into()));
        }
        let mut qs = [0u8; 2];
        for (slot, &q) in qs.iter_mut().zip(qubits) {
            *slot = q as u8;
        }
        Ok(Gate { kind, qubits: qs })
    }

    pub fn qubits(&self) -> &[u8] {
        &self.qubits[..self.kind.arity()]
    }

    pub fn inverse(&self) -> Self {
        Gate {
            kind: self.kind.inverse(),
            qubits: self.qubits,
        }
    }

    pub fn check(&self, n: usize) -> Result<()> {
        if let Some(&q) = self.qubits().iter().find(|&&q| q as usize >= n) {
            return Err(Error::Domain(format!(
                "gate {self} uses qubit {q} on a {n}-qubit register"
            )));
        }
        Ok(())
    }

    /// Conjugation `G·P·G†` of a Clifford gate; returns the image and its sign.
    pub fn conjugate(&self, p: &Pauli) -> Result<(Pauli, bool)> {
        self.check(p.num_qubits())?;
        let mut x = p.x_bits();
        let mut z = p.z_bits();
        let mut neg = false;
        self.conjugate_bits(&mut x, &mut z, &mut neg)?;
        Ok((Pauli::from_bits(p.num_qubits(), x, z)?, neg))
    }

    fn conjugate_bits(&self, x: &mut u16, z: &mut u16, neg: &mut bool) -> Result<()> {
        let bit = |v: u16, q: u8| (v >> q) & 1 == 1;
        let q = self.qubits[0];
        let m = 1u16 << q;
        match self.kind {
            GateKind::H => {
                *neg ^= bit(*x, q) && bit(*z, q);
                let (xq, zq) = (*x & m, *z & m);
                *x = (*x & !m) | zq;
                *z = (*z & !m) | xq;
            }
            GateKind::S => {
                *neg ^= bit(*x, q) && bit(*z, q);
                *z ^= *x & m;
            }
            GateKind::Sdg => {
                *neg ^= bit(*x, q) && !bit(*z, q);
                *z ^= *x & m;
            }
            GateKind::X => *neg ^= bit(*z, q),
            GateKind::Z => *neg ^= bit(*x, q),
            GateKind::Y => *neg ^= bit(*x, q) ^ bit(*z, q),
            GateKind::Cnot => {
                let (c, t) = (self.qubits[0], self.qubits[1]);
                *neg ^= bit(*x, c) && bit(*z, t) && (bit(*x, t) == bit(*z, c));
                if bit(*x, c) {
                    *x ^= 1 << t;
                }
                if bit(*z, t) {
                    *z ^= 1 << c;
                }
            }
            GateKind::Cz => {
                let (a, b) = (self.qubits[0], self.qubits[1]);
                for g in [
                    Gate::single(GateKind::H, b as usize),
                    Gate::two(GateKind::Cnot, a as usize, b as usize),
                    Gate::single(GateKind::H, b as usize),
                ] {
                    g.conjugate_bits(x, z, neg)?;
                }
            }
            GateKind::Swap => {
                let (a, b) = (self.qubits[0], self.qubits[1]);
                for v in [x, z] {
                    let (va, vb) = (bit(*v, a), bit(*v, b));
                    if va != vb {
                        *v ^= (1 << a) | (1 << b);
                    }
                }
            }
            GateKind::T | GateKind::Tdg => {
                return Err(Error::Domain(format!(
                    "{} is not a Clifford gate",
                    self.kind.mnemonic()
                )))
            }
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind.mnemonic())?;
        for q in self.qubits() {
            write!(f, " {q}")?;
        }
        Ok(())
    }
}

/// `R̂(P)`, the channel representation of the π/8 rotation about `P`.
pub fn channel_r(p: &Pauli) -> Result<SparseChannelMatrix> {
    if p.is_identity() {
        return Err(Error::Domain("R(P) requires a non-identity Pauli".into()));
    }
    SparseChannelMatrix::identity(p.num_qubits()).rotate_left(p, false)
}

/// Signed permutation induced by conjugation with a Clifford gate.
pub fn channel_clifford_gate(g: &Gate, n: usize) -> Result<SparseChannelMatrix> {
    if !g.kind.is_clifford() {
        return Err(Error::Domain(format!(
            "{} has no signed-permutation channel matrix; use channel_r",
            g.kind.mnemonic()
        )));
    }
    g.check(n)?;
    let dim = pauli_count(n);
    let mut cols = Vec::with_capacity(dim);
    for j in 0..dim {
        let (img, neg) = g.conjugate(&Pauli::from_index_unchecked(j, n))?;
        let v = if neg { ZRoot2::new(-1, 0) } else { ZRoot2::ONE };
        cols.push(vec![(img.index(), v)]);
    }
    SparseChannelMatrix::from_columns(n, 0, cols)
}

/// Left-multiplies `m` by the channel matrix of `g`.
pub fn apply_gate(m: &SparseChannelMatrix, g: &Gate) -> Result<SparseChannelMatrix> {
    let n = m.num_qubits();
    g.check(n)?;
    match g.kind {
        GateKind::T | GateKind::Tdg => {
            let z = Pauli::single(n, g.qubits()[0] as usize, 'Z')?;
            m.rotate_left(&z, g.kind == GateKind::Tdg)
        }
        _ => channel_clifford_gate(g, n)?.mat_mul(m),
    }
}

/// Channel matrix of a circuit given in temporal order.
pub fn channel_of_circuit(gates: &[Gate], n: usize) -> Result<SparseChannelMatrix> {
    let mut m = SparseChannelMatrix::identity(n);
    for g in gates {
        m = apply_gate(&m, g)?;
    }
    Ok(m)
}

/// Product `R̂(P_t)···R̂(P_1)` for a sequence listed as `P_1..P_t`.
pub fn rotation_product(paulis: &[Pauli], n: usize) -> Result<SparseChannelMatrix> {
    let mut m = SparseChannelMatrix::identity(n);
    for p in paulis {
        m = m.rotate_left(p, false)?;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Pauli {
        s.parse().unwrap()
    }

    fn r2(a: i64) -> ZRoot2 {
        ZRoot2::new(a, 0)
    }

    #[test]
    fn rotation_about_z() {
        let m = channel_r(&p("Z")).unwrap();
        let (i, z, x, y) = (0, 1, 2, 3);
        assert_eq!(m.sde(), 1);
        assert_eq!(m.nnz(), 6);
        // Integer entries carry a √2 numerator at sde 1.
        assert_eq!(m.get(i, i).to_f64(), 1.0);
        assert_eq!(m.get(z, z).to_f64(), 1.0);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for (r, c, v) in [(x, x, h), (y, x, h), (x, y, -h), (y, y, h)] {
            assert!((m.get(r, c).to_f64() - v).abs() < 1e-12, "({r},{c})");
        }
        assert_eq!(m.get(x, x).numerator(), r2(1));
        assert_eq!(m.get(x, y).numerator(), r2(-1));
    }

    #[test]
    fn identity_rotation_is_rejected() {
        assert!(channel_r(&p("II")).is_err());
    }

    #[test]
    fn rotation_sparsity_is_exact() {
        for n in 1..=3 {
            for idx in 1..pauli_count(n) {
                let m = channel_r(&Pauli::from_index(idx, n).unwrap()).unwrap();
                assert_eq!(m.nnz(), 3 * pauli_count(n) / 2);
            }
        }
    }

    #[test]
    fn t_squared_is_s() {
        let rz = channel_r(&p("Z")).unwrap();
        let s = channel_clifford_gate(&Gate::single(GateKind::S, 0), 1).unwrap();
        assert_eq!(rz.mat_mul(&rz).unwrap(), s);
        assert!(!rz.canonical_equal(&s));
    }

    #[test]
    fn hadamard_is_an_involution() {
        let h = channel_clifford_gate(&Gate::single(GateKind::H, 0), 1).unwrap();
        assert!(h.is_signed_permutation());
        assert_eq!(h.mat_mul(&h).unwrap(), SparseChannelMatrix::identity(1));
        // X -> Z, Z -> X, Y -> -Y
        assert_eq!(h.get(1, 2).to_f64(), 1.0);
        assert_eq!(h.get(2, 1).to_f64(), 1.0);
        assert_eq!(h.get(3, 3).to_f64(), -1.0);
    }

    #[test]
    fn cnot_copies_control_x() {
        let g = Gate::two(GateKind::Cnot, 0, 1);
        let m = channel_clifford_gate(&g, 2).unwrap();
        let col = p("XI").index();
        let entries: Vec<_> = m.column(col).collect();
        assert_eq!(entries, vec![(p("XX").index(), ZRoot2::ONE)]);
    }

    #[test]
    fn non_clifford_is_rejected() {
        assert!(channel_clifford_gate(&Gate::single(GateKind::T, 0), 1).is_err());
        assert!(Gate::new(GateKind::Cnot, &[1, 1]).is_err());
        assert!(channel_of_circuit(&[Gate::single(GateKind::H, 2)], 2).is_err());
    }

    #[test]
    fn circuit_examples() {
        assert_eq!(
            channel_of_circuit(&[], 2).unwrap(),
            SparseChannelMatrix::identity(2)
        );
        assert_eq!(
            channel_of_circuit(&[Gate::single(GateKind::T, 0)], 1).unwrap(),
            channel_r(&p("Z")).unwrap()
        );
        let hh = [Gate::single(GateKind::H, 0); 2];
        assert_eq!(
            channel_of_circuit(&hh, 1).unwrap(),
            SparseChannelMatrix::identity(1)
        );
        let t_tdg = [Gate::single(GateKind::T, 1), Gate::single(GateKind::Tdg, 1)];
        assert_eq!(
            channel_of_circuit(&t_tdg, 2).unwrap(),
            SparseChannelMatrix::identity(2)
        );
    }

    #[test]
    fn rotations_are_orthogonal() {
        for n in 1..=3 {
            for idx in (1..pauli_count(n)).step_by(5) {
                let m = channel_r(&Pauli::from_index(idx, n).unwrap()).unwrap();
                assert_eq!(
                    m.transpose().mat_mul(&m).unwrap(),
                    SparseChannelMatrix::identity(n)
                );
            }
        }
    }

    #[test]
    fn rotate_left_matches_mat_mul() {
        let a = channel_of_circuit(
            &[
                Gate::single(GateKind::H, 0),
                Gate::single(GateKind::T, 0),
                Gate::two(GateKind::Cnot, 0, 1),
                Gate::single(GateKind::T, 1),
            ],
            2,
        )
        .unwrap();
        for idx in 1..16 {
            let q = Pauli::from_index(idx, 2).unwrap();
            let r = channel_r(&q).unwrap();
            assert_eq!(a.rotate_left(&q, false).unwrap(), r.mat_mul(&a).unwrap());
            assert_eq!(
                a.rotate_left(&q, true).unwrap(),
                r.transpose().mat_mul(&a).unwrap()
            );
        }
    }
}
