//! n-qubit Pauli operators in binary symplectic form.
//!
//! A Pauli is stored as two bit masks `x` and `z` (bit `q` belongs to qubit
//! `q`). The single-qubit code used for indexing is `2·x + z`, so
//! `0 = I, 1 = Z, 2 = X, 3 = Y`, and the full index places qubit 0 in the
//! least-significant base-4 digit. `Y` is fixed globally as `i·X·Z`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported qubit count. Channel matrices are `4ⁿ × 4ⁿ`.
pub const MAX_QUBITS: usize = 6;

/// A Hermitian n-qubit Pauli operator without phase.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Pauli {
    n: u8,
    x: u16,
    z: u16,
}

/// A Pauli with a phase `i^phase_exp`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PhasedPauli {
    pub pauli: Pauli,
    pub phase_exp: u8,
}

fn check_qubits(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::Domain(format!(
            "qubit count {n} outside 1..={MAX_QUBITS}"
        )));
    }
    Ok(())
}

/// Number of Paulis on `n` qubits, `4ⁿ`.
pub fn pauli_count(n: usize) -> usize {
    1 << (2 * n)
}

impl Pauli {
    pub fn identity(n: usize) -> Result<Self> {
        check_qubits(n)?;
        Ok(Pauli {
            n: n as u8,
            x: 0,
            z: 0,
        })
    }

    /// Builds a Pauli from raw masks. Bits above `n` are rejected.
    pub fn from_bits(n: usize, x: u16, z: u16) -> Result<Self> {
        check_qubits(n)?;
        let mask = ((1u32 << n) - 1) as u16;
        if x & !mask != 0 || z & !mask != 0 {
            return Err(Error::Domain("bit vector wider than qubit count".into()));
        }
        Ok(Pauli { n: n as u8, x, z })
    }

    /// Unranks `idx` using the per-qubit code `2·x + z`.
    pub fn from_index(idx: usize, n: usize) -> Result<Self> {
        check_qubits(n)?;
        if idx >= pauli_count(n) {
            return Err(Error::Domain(format!(
                "Pauli index {idx} out of range for {n} qubits"
            )));
        }
        Ok(Self::from_index_unchecked(idx, n))
    }

    #[inline]
    pub(crate) fn from_index_unchecked(idx: usize, n: usize) -> Self {
        let mut x = 0u16;
        let mut z = 0u16;
        for q in 0..n {
            let code = (idx >> (2 * q)) & 3;
            x |= ((code >> 1) as u16) << q;
            z |= ((code & 1) as u16) << q;
        }
        Pauli { n: n as u8, x, z }
    }

    #[inline]
    pub fn index(&self) -> usize {
        let mut idx = 0usize;
        for q in 0..self.n as usize {
            let code = (((self.x >> q) & 1) << 1 | ((self.z >> q) & 1)) as usize;
            idx |= code << (2 * q);
        }
        idx
    }

    /// A single-qubit Pauli (`'I'`, `'X'`, `'Y'` or `'Z'`) on qubit `q`.
    pub fn single(n: usize, q: usize, letter: char) -> Result<Self> {
        check_qubits(n)?;
        if q >= n {
            return Err(Error::Domain(format!(
                "qubit {q} out of range for {n} qubits"
            )));
        }
        let (x, z) = match letter {
            'I' => (0, 0),
            'X' => (1, 0),
            'Y' => (1, 1),
            'Z' => (0, 1),
            other => return Err(Error::Domain(format!("unknown Pauli letter {other:?}"))),
        };
        Ok(Pauli {
            n: n as u8,
            x: x << q,
            z: z << q,
        })
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn x_bits(&self) -> u16 {
        self.x
    }

    #[inline]
    pub fn z_bits(&self) -> u16 {
        self.z
    }

    #[inline]
    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Letter acting on qubit `q`.
    pub fn letter(&self, q: usize) -> char {
        match ((self.x >> q) & 1, (self.z >> q) & 1) {
            (0, 0) => 'I',
            (0, _) => 'Z',
            (_, 0) => 'X',
            _ => 'Y',
        }
    }

    /// Qubits on which the Pauli acts non-trivially.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n as usize).filter(move |q| (self.x | self.z) >> q & 1 == 1)
    }

    /// Symplectic product parity without the qubit-count check.
    #[inline]
    pub(crate) fn commutes_unchecked(&self, other: &Pauli) -> bool {
        ((self.x & other.z) ^ (self.z & other.x))
            .count_ones()
            .is_multiple_of(2)
    }

    /// `P·Q = i^e · R` without the qubit-count check.
    #[inline]
    pub(crate) fn mul_unchecked(&self, other: &Pauli) -> PhasedPauli {
        let x = self.x ^ other.x;
        let z = self.z ^ other.z;
        let e = (self.x & self.z).count_ones()
            + (other.x & other.z).count_ones()
            + 2 * (self.z & other.x).count_ones()
            + 3 * (x & z).count_ones();
        PhasedPauli {
            pauli: Pauli { n: self.n, x, z },
            phase_exp: (e % 4) as u8,
        }
    }

    /// Hex form of the symplectic bits, `x` mask then `z` mask.
    pub fn symplectic_hex(&self) -> String {
        format!("{:04x}{:04x}", self.x, self.z)
    }
}

fn same_width(p: &Pauli, q: &Pauli) -> Result<()> {
    if p.n != q.n {
        return Err(Error::Domain(format!(
            "qubit count mismatch: {} vs {}",
            p.n, q.n
        )));
    }
    Ok(())
}

/// Unranks a Pauli index.
pub fn pauli_from_index(idx: usize, n: usize) -> Result<Pauli> {
    Pauli::from_index(idx, n)
}

/// True iff the symplectic inner product vanishes.
pub fn commutes(p: &Pauli, q: &Pauli) -> Result<bool> {
    same_width(p, q)?;
    Ok(p.commutes_unchecked(q))
}

/// Product with exact phase, `P·Q = i^phase_exp · R`.
pub fn pauli_mul(p: &Pauli, q: &Pauli) -> Result<PhasedPauli> {
    same_width(p, q)?;
    Ok(p.mul_unchecked(q))
}

impl PhasedPauli {
    pub fn new(pauli: Pauli, phase_exp: u8) -> Self {
        PhasedPauli {
            pauli,
            phase_exp: phase_exp % 4,
        }
    }

    /// Multiplies two phased Paulis, accumulating phases.
    pub fn mul(&self, other: &PhasedPauli) -> Result<PhasedPauli> {
        let prod = pauli_mul(&self.pauli, &other.pauli)?;
        Ok(PhasedPauli::new(
            prod.pauli,
            prod.phase_exp + self.phase_exp + other.phase_exp,
        ))
    }

    /// `Some(+1 | -1)` when the phase is real.
    pub fn sign(&self) -> Option<i8> {
        match self.phase_exp {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n as usize {
            write!(f, "{}", self.letter(q))?;
        }
        Ok(())
    }
}

impl FromStr for Pauli {
    type Err = Error;

    /// Parses `"XIZ"` with qubit 0 leftmost.
    fn from_str(s: &str) -> Result<Self> {
        let n = s.chars().count();
        check_qubits(n)?;
        let mut x = 0u16;
        let mut z = 0u16;
        for (q, c) in s.chars().enumerate() {
            let (bx, bz) = match c {
                'I' => (0, 0),
                'X' => (1, 0),
                'Y' => (1, 1),
                'Z' => (0, 1),
                other => return Err(Error::Domain(format!("unknown Pauli letter {other:?}"))),
            };
            x |= bx << q;
            z |= bz << q;
        }
        Ok(Pauli { n: n as u8, x, z })
    }
}

impl fmt::Display for PhasedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = ["+", "+i", "-", "-i"][self.phase_exp as usize];
        write!(f, "{prefix}{}", self.pauli)
    }
}
