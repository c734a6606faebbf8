//! Independent dense oracle: unitaries as complex matrices and the channel
//! representation `Û_ij = Tr(P_i U P_j U†) / 2ⁿ` computed directly.

#![allow(dead_code)]

use std::path::PathBuf;

use clawsynth::channel::{Gate, GateKind};
use clawsynth::matrix::SparseChannelMatrix;
use clawsynth::pauli::Pauli;
use num_complex::Complex64;
use rand::Rng;

pub type Dense = Vec<Vec<Complex64>>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(d: usize) -> Dense {
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) })
                .collect()
        })
        .collect()
}

pub fn mul(a: &Dense, b: &Dense) -> Dense {
    let d = a.len();
    let mut out = vec![vec![c(0.0, 0.0); d]; d];
    for i in 0..d {
        for k in 0..d {
            if a[i][k] == c(0.0, 0.0) {
                continue;
            }
            for j in 0..d {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn dagger(a: &Dense) -> Dense {
    let d = a.len();
    (0..d)
        .map(|i| (0..d).map(|j| a[j][i].conj()).collect())
        .collect()
}

fn trace(a: &Dense) -> Complex64 {
    (0..a.len()).map(|i| a[i][i]).sum()
}

/// Pauli by index: per-qubit code `2x + z`, qubit 0 least significant,
/// `Y = iXZ`.
pub fn pauli_dense(idx: usize, n: usize) -> Dense {
    let (mut x, mut z) = (0usize, 0usize);
    for q in 0..n {
        let code = (idx >> (2 * q)) & 3;
        x |= (code >> 1) << q;
        z |= (code & 1) << q;
    }
    let d = 1 << n;
    let mut m = vec![vec![c(0.0, 0.0); d]; d];
    let base = Complex64::i().powu((x & z).count_ones());
    for b in 0..d {
        let sign = if (z & b).count_ones() % 2 == 1 {
            -1.0
        } else {
            1.0
        };
        m[b ^ x][b] = base * sign;
    }
    m
}

/// Embeds a 2×2 matrix on qubit `q`.
#[allow(clippy::needless_range_loop)]
fn single(u: [[Complex64; 2]; 2], q: usize, n: usize) -> Dense {
    let d = 1 << n;
    let mut m = vec![vec![c(0.0, 0.0); d]; d];
    for col in 0..d {
        let bit = (col >> q) & 1;
        for out_bit in 0..2 {
            let row = (col & !(1 << q)) | (out_bit << q);
            m[row][col] += u[out_bit][bit];
        }
    }
    m
}

#[allow(clippy::needless_range_loop)]
fn permutation(n: usize, f: impl Fn(usize) -> (usize, Complex64)) -> Dense {
    let d = 1 << n;
    let mut m = vec![vec![c(0.0, 0.0); d]; d];
    for col in 0..d {
        let (row, v) = f(col);
        m[row][col] = v;
    }
    m
}

pub fn gate_dense(g: &Gate, n: usize) -> Dense {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let w = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), Complex64::i());
    let q: Vec<usize> = g.qubits().iter().map(|&q| q as usize).collect();
    match g.kind {
        GateKind::H => single([[c(s, 0.0), c(s, 0.0)], [c(s, 0.0), c(-s, 0.0)]], q[0], n),
        GateKind::S => single([[o, z], [z, i]], q[0], n),
        GateKind::Sdg => single([[o, z], [z, -i]], q[0], n),
        GateKind::X => single([[z, o], [o, z]], q[0], n),
        GateKind::Y => single([[z, -i], [i, z]], q[0], n),
        GateKind::Z => single([[o, z], [z, -o]], q[0], n),
        GateKind::T => single([[o, z], [z, w]], q[0], n),
        GateKind::Tdg => single([[o, z], [z, w.conj()]], q[0], n),
        GateKind::Cnot => permutation(n, |b| {
            let flip = if (b >> q[0]) & 1 == 1 { 1 << q[1] } else { 0 };
            (b ^ flip, o)
        }),
        GateKind::Cz => permutation(n, |b| {
            let both = (b >> q[0]) & 1 == 1 && (b >> q[1]) & 1 == 1;
            (b, if both { -o } else { o })
        }),
        GateKind::Swap => permutation(n, |b| {
            let (ba, bb) = ((b >> q[0]) & 1, (b >> q[1]) & 1);
            let r = (b & !(1 << q[0]) & !(1 << q[1])) | (bb << q[0]) | (ba << q[1]);
            (r, o)
        }),
    }
}

/// Unitary of a circuit in temporal order.
pub fn circuit_dense(gates: &[Gate], n: usize) -> Dense {
    gates
        .iter()
        .fold(identity(1 << n), |u, g| mul(&gate_dense(g, n), &u))
}

/// `exp(-iπ/8·P)`.
pub fn rotation_dense(idx: usize, n: usize) -> Dense {
    let p = pauli_dense(idx, n);
    let (cs, sn) = (
        (std::f64::consts::PI / 8.0).cos(),
        (std::f64::consts::PI / 8.0).sin(),
    );
    let d = 1 << n;
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let id = if i == j { cs } else { 0.0 };
                    c(id, 0.0) - Complex64::i() * sn * p[i][j]
                })
                .collect()
        })
        .collect()
}

/// Channel representation, row-major, real parts.
pub fn channel_dense(u: &Dense, n: usize) -> Vec<Vec<f64>> {
    let dim = 1 << (2 * n);
    let paulis: Vec<Dense> = (0..dim).map(|i| pauli_dense(i, n)).collect();
    let ud = dagger(u);
    let conj: Vec<Dense> = paulis.iter().map(|p| mul(&mul(u, p), &ud)).collect();
    let scale = (1usize << n) as f64;
    let mut out = vec![vec![0.0; dim]; dim];
    for (i, pi) in paulis.iter().enumerate() {
        for (j, cj) in conj.iter().enumerate() {
            let t = trace(&mul(pi, cj)) / scale;
            assert!(
                t.im.abs() < 1e-9,
                "channel entry has imaginary part {}",
                t.im
            );
            out[i][j] = t.re;
        }
    }
    out
}

pub fn max_abs_diff(a: &SparseChannelMatrix, b: &[Vec<f64>]) -> f64 {
    let da = a.to_dense_f64();
    da.iter()
        .zip(b)
        .flat_map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| (x - y).abs()))
        .fold(0.0, f64::max)
}

pub fn all_gates(n: usize) -> Vec<Gate> {
    use GateKind::*;
    let mut out = Vec::new();
    for q in 0..n {
        for k in [H, S, Sdg, X, Y, Z, T, Tdg] {
            out.push(Gate::single(k, q));
        }
    }
    for a in 0..n {
        for b in 0..n {
            if a != b {
                for k in [Cnot, Cz, Swap] {
                    out.push(Gate::two(k, a, b));
                }
            }
        }
    }
    out
}

pub fn random_circuit<R: Rng>(rng: &mut R, n: usize, len: usize, clifford_only: bool) -> Vec<Gate> {
    let pool: Vec<Gate> = all_gates(n)
        .into_iter()
        .filter(|g| !clifford_only || g.kind.is_clifford())
        .collect();
    (0..len)
        .map(|_| pool[rng.gen_range(0..pool.len())])
        .collect()
}

pub fn random_pauli<R: Rng>(rng: &mut R, n: usize) -> Pauli {
    Pauli::from_index(rng.gen_range(1..1usize << (2 * n)), n).unwrap()
}

pub fn circuit_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("circuits")
        .join(name)
}

pub fn load_circuit(name: &str) -> (usize, Vec<Gate>) {
    let text = std::fs::read_to_string(circuit_path(name)).unwrap();
    clawsynth::cli::parse_circuit(&text).unwrap()
}
