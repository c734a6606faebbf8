//! Clifford tableaux read off signed-permutation channel matrices.

use serde::{Serialize, Serializer};

use crate::channel::{Gate, GateKind};
use crate::error::{Error, Result};
use crate::matrix::{SparseChannelMatrix, ZRoot2};
use crate::pauli::{Pauli, PhasedPauli};

/// Images of `X_q` and `Z_q` under conjugation `D·P·D†`. Every phase is 0 or 2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tableau {
    n: usize,
    x_images: Vec<PhasedPauli>,
    z_images: Vec<PhasedPauli>,
}

fn signed(p: Pauli, neg: bool) -> PhasedPauli {
    PhasedPauli::new(p, if neg { 2 } else { 0 })
}

fn format_signed(p: &PhasedPauli) -> String {
    let s = if p.phase_exp == 2 { '-' } else { '+' };
    format!("{s}{}", p.pauli)
}

impl Tableau {
    pub fn identity(n: usize) -> Result<Self> {
        let mut x_images = Vec::with_capacity(n);
        let mut z_images = Vec::with_capacity(n);
        for q in 0..n {
            x_images.push(signed(Pauli::single(n, q, 'X')?, false));
            z_images.push(signed(Pauli::single(n, q, 'Z')?, false));
        }
        Ok(Tableau {
            n,
            x_images,
            z_images,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn x_image(&self, q: usize) -> PhasedPauli {
        self.x_images[q]
    }

    pub fn z_image(&self, q: usize) -> PhasedPauli {
        self.z_images[q]
    }

    /// Image of an arbitrary Pauli, composed from the generator images.
    pub fn image(&self, p: &Pauli) -> Result<PhasedPauli> {
        let (x, z) = (p.x_bits(), p.z_bits());
        // P = i^{|x∧z|} · Π_q X_q^{x_q} Z_q^{z_q}
        let mut acc = PhasedPauli::new(Pauli::identity(self.n)?, ((x & z).count_ones() % 4) as u8);
        for q in 0..self.n {
            if x >> q & 1 == 1 {
                acc = acc.mul(&self.x_images[q])?;
            }
            if z >> q & 1 == 1 {
                acc = acc.mul(&self.z_images[q])?;
            }
        }
        Ok(acc)
    }

    /// Conjugates every generator image by `g`.
    fn apply(&mut self, g: &Gate) -> Result<()> {
        for img in self.x_images.iter_mut().chain(self.z_images.iter_mut()) {
            let (p, neg) = g.conjugate(&img.pauli)?;
            *img = PhasedPauli::new(p, img.phase_exp + if neg { 2 } else { 0 });
        }
        Ok(())
    }

    /// `"+XZ"`-style strings, X images first.
    pub fn to_strings(&self) -> (Vec<String>, Vec<String>) {
        (
            self.x_images.iter().map(format_signed).collect(),
            self.z_images.iter().map(format_signed).collect(),
        )
    }

    /// Parses `"+XZ"`-style generator images.
    pub fn from_strings(x_images: &[String], z_images: &[String]) -> Result<Self> {
        let n = x_images.len();
        if n == 0 || z_images.len() != n {
            return Err(Error::Domain(
                "tableau needs one X and one Z image per qubit".into(),
            ));
        }
        let parse = |s: &String| -> Result<PhasedPauli> {
            let (neg, body) = match s.as_bytes().first() {
                Some(b'-') => (true, &s[1..]),
                Some(b'+') => (false, &s[1..]),
                _ => (false, s.as_str()),
            };
            let p: Pauli = body.parse()?;
            if p.num_qubits() != n {
                return Err(Error::Domain(format!("image {s} has the wrong width")));
            }
            Ok(signed(p, neg))
        };
        Ok(Tableau {
            n,
            x_images: x_images.iter().map(parse).collect::<Result<_>>()?,
            z_images: z_images.iter().map(parse).collect::<Result<_>>()?,
        })
    }

    /// Channel matrix of the tableau; fails unless it describes a Clifford.
    pub fn to_matrix(&self) -> Result<SparseChannelMatrix> {
        let n = self.n;
        let mut cols = Vec::with_capacity(crate::pauli::pauli_count(n));
        for j in 0..crate::pauli::pauli_count(n) {
            let img = self.image(&Pauli::from_index(j, n)?)?;
            let sign = img.sign().ok_or_else(invalid)?;
            cols.push(vec![(img.pauli.index(), ZRoot2::new(sign as i64, 0))]);
        }
        let m = SparseChannelMatrix::from_columns(n, 0, cols)?;
        if extract_clifford(&m)? != *self {
            return Err(invalid());
        }
        Ok(m)
    }

    /// A Clifford circuit, in temporal order, whose conjugation action is this
    /// tableau.
    pub fn to_gates(&self) -> Result<Vec<Gate>> {
        let n = self.n;
        let mut work = self.clone();
        let mut ops = Vec::new();
        let mut push = |work: &mut Tableau, g: Gate| -> Result<()> {
            work.apply(&g)?;
            ops.push(g);
            Ok(())
        };
        let x_at = |p: &Pauli, q: usize| p.x_bits() >> q & 1 == 1;
        let z_at = |p: &Pauli, q: usize| p.z_bits() >> q & 1 == 1;

        for i in 0..n {
            // Reduce the X_i image to ±X_i; it is trivial on qubits below i.
            let a = work.x_images[i].pauli;
            let k = (i..n).find(|&k| x_at(&a, k));
            let k = match k {
                Some(k) => k,
                None => {
                    let k = (i..n).find(|&k| z_at(&a, k)).ok_or_else(invalid)?;
                    push(&mut work, Gate::single(GateKind::H, k))?;
                    k
                }
            };
            if k != i {
                push(&mut work, Gate::two(GateKind::Swap, i, k))?;
            }
            for j in i + 1..n {
                if x_at(&work.x_images[i].pauli, j) {
                    push(&mut work, Gate::two(GateKind::Cnot, i, j))?;
                }
            }
            if z_at(&work.x_images[i].pauli, i) {
                push(&mut work, Gate::single(GateKind::S, i))?;
            }
            for j in i + 1..n {
                if z_at(&work.x_images[i].pauli, j) {
                    push(&mut work, Gate::two(GateKind::Cz, i, j))?;
                }
            }

            // Reduce the Z_i image to ±Z_i while fixing X_i.
            let b = work.z_images[i].pauli;
            if !z_at(&b, i) {
                return Err(invalid());
            }
            if x_at(&b, i) {
                for g in [GateKind::H, GateKind::S, GateKind::H] {
                    push(&mut work, Gate::single(g, i))?;
                }
            }
            for j in i + 1..n {
                let b = work.z_images[i].pauli;
                match (x_at(&b, j), z_at(&b, j)) {
                    (false, false) => continue,
                    (true, false) => push(&mut work, Gate::single(GateKind::H, j))?,
                    (true, true) => {
                        push(&mut work, Gate::single(GateKind::S, j))?;
                        push(&mut work, Gate::single(GateKind::H, j))?;
                    }
                    (false, true) => {}
                }
                push(&mut work, Gate::two(GateKind::Cnot, j, i))?;
            }
        }
        for i in 0..n {
            if work.x_images[i].phase_exp == 2 {
                push(&mut work, Gate::single(GateKind::Z, i))?;
            }
            if work.z_images[i].phase_exp == 2 {
                push(&mut work, Gate::single(GateKind::X, i))?;
            }
        }
        if work != Tableau::identity(n)? {
            return Err(Error::Consistency(
                "tableau reduction did not reach the identity".into(),
            ));
        }
        Ok(ops.iter().rev().map(Gate::inverse).collect())
    }
}

fn invalid() -> Error {
    Error::Consistency("tableau images violate commutation relations".into())
}

impl Serialize for Tableau {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let (x, z) = self.to_strings();
        let mut st = s.serialize_struct("Tableau", 2)?;
        st.serialize_field("x_images", &x)?;
        st.serialize_field("z_images", &z)?;
        st.end()
    }
}

/// Reads the tableau of a signed-permutation channel matrix and checks that
/// it is the matrix of a Clifford.
pub fn extract_clifford(d: &SparseChannelMatrix) -> Result<Tableau> {
    if !d.is_signed_permutation() {
        return Err(Error::Domain("not a signed permutation".into()));
    }
    let d = d.clone().canonicalized();
    let n = d.num_qubits();
    let column_image = |j: usize| -> Result<PhasedPauli> {
        let (r, v) = d.column(j).next().ok_or_else(invalid)?;
        Ok(signed(Pauli::from_index(r, n)?, v.a < 0))
    };
    let mut x_images = Vec::with_capacity(n);
    let mut z_images = Vec::with_capacity(n);
    for q in 0..n {
        x_images.push(column_image(Pauli::single(n, q, 'X')?.index())?);
        z_images.push(column_image(Pauli::single(n, q, 'Z')?.index())?);
    }
    let tab = Tableau {
        n,
        x_images,
        z_images,
    };

    for a in 0..n {
        for b in 0..n {
            let xa = tab.x_images[a].pauli;
            let za = tab.z_images[a].pauli;
            let xb = tab.x_images[b].pauli;
            let zb = tab.z_images[b].pauli;
            let ok = (a == b || xa.commutes_unchecked(&xb))
                && (a == b || za.commutes_unchecked(&zb))
                && xa.commutes_unchecked(&zb) == (a != b);
            if !ok {
                return Err(invalid());
            }
        }
    }
    for j in 1..d.dim() {
        let img = tab.image(&Pauli::from_index(j, n)?)?;
        if img.sign().is_none() || column_image(j)? != img {
            return Err(Error::Consistency(format!(
                "column {j} disagrees with the generator images"
            )));
        }
    }
    Ok(tab)
}
