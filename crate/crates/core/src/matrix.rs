//! Exact sparse channel matrices.
//!
//! Every entry has the form `(a + b·√2) / √2^sde` with integers `a, b` and a
//! denominator exponent `sde` shared by the whole matrix. Columns are stored
//! in compressed form with strictly increasing row indices.
//!
//! Canonical form: while `sde ≥ 1` and every `a` is even, divide all
//! numerators by `√2` (`(a, b) ↦ (b, a/2)`) and decrement `sde`. Since `√2`
//! is prime in `ℤ[√2]` this yields a unique representation, so canonical
//! matrices compare bit-for-bit.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::pauli::{pauli_count, Pauli};

/// An element `a + b·√2` of `ℤ[√2]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug)]
pub struct ZRoot2 {
    pub a: i64,
    pub b: i64,
}

impl ZRoot2 {
    pub const ZERO: ZRoot2 = ZRoot2 { a: 0, b: 0 };
    pub const ONE: ZRoot2 = ZRoot2 { a: 1, b: 0 };

    #[inline]
    pub const fn new(a: i64, b: i64) -> Self {
        ZRoot2 { a, b }
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    #[inline]
    pub fn checked_add(self, o: Self) -> Option<Self> {
        Some(ZRoot2 {
            a: self.a.checked_add(o.a)?,
            b: self.b.checked_add(o.b)?,
        })
    }

    #[inline]
    pub fn checked_neg(self) -> Option<Self> {
        Some(ZRoot2 {
            a: self.a.checked_neg()?,
            b: self.b.checked_neg()?,
        })
    }

    /// `(a + b√2)(c + d√2) = (ac + 2bd) + (ad + bc)√2`
    pub fn checked_mul(self, o: Self) -> Option<Self> {
        let ac = (self.a as i128) * (o.a as i128);
        let bd = (self.b as i128) * (o.b as i128);
        let ad = (self.a as i128) * (o.b as i128);
        let bc = (self.b as i128) * (o.a as i128);
        let a = ac.checked_add(bd.checked_mul(2)?)?;
        let b = ad.checked_add(bc)?;
        Some(ZRoot2 {
            a: i64::try_from(a).ok()?,
            b: i64::try_from(b).ok()?,
        })
    }

    /// Multiplication by `√2`: `(a, b) ↦ (2b, a)`.
    #[inline]
    pub fn checked_mul_root2(self) -> Option<Self> {
        Some(ZRoot2 {
            a: self.b.checked_mul(2)?,
            b: self.a,
        })
    }

    /// Division by `√2`; requires `a` even.
    #[inline]
    pub fn div_root2(self) -> Self {
        debug_assert!(self.a % 2 == 0);
        ZRoot2 {
            a: self.b,
            b: self.a / 2,
        }
    }

    /// Exact sign of the real number `a + b√2`.
    pub fn signum(self) -> i32 {
        let sa = self.a.signum();
        let sb = self.b.signum();
        if sa == sb || sb == 0 {
            return sa as i32;
        }
        if sa == 0 {
            return sb as i32;
        }
        // Opposite signs: compare a² with 2b².
        let a2 = (self.a as i128) * (self.a as i128);
        let b2 = 2 * (self.b as i128) * (self.b as i128);
        match a2.cmp(&b2) {
            Ordering::Greater => sa as i32,
            Ordering::Less => sb as i32,
            Ordering::Equal => 0,
        }
    }

    pub fn to_f64(self) -> f64 {
        self.a as f64 + self.b as f64 * std::f64::consts::SQRT_2
    }
}

/// A single exact scalar `(a + b√2)/√2^sde` in normalized form.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct RootTwoScalar {
    num: ZRoot2,
    sde: u32,
}

impl RootTwoScalar {
    pub fn new(num: ZRoot2, sde: u32) -> Self {
        let mut s = RootTwoScalar { num, sde };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.sde = 0;
            return;
        }
        while self.sde > 0 && self.num.a % 2 == 0 {
            self.num = self.num.div_root2();
            self.sde -= 1;
        }
    }

    pub fn numerator(&self) -> ZRoot2 {
        self.num
    }

    pub fn sde(&self) -> u32 {
        self.sde
    }

    pub fn to_f64(&self) -> f64 {
        self.num.to_f64() / std::f64::consts::SQRT_2.powi(self.sde as i32)
    }
}

/// A `4ⁿ × 4ⁿ` exact sparse matrix in compressed sparse column form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseChannelMatrix {
    n: usize,
    dim: usize,
    sde: u32,
    col_ptr: Vec<u32>,
    rows: Vec<u32>,
    vals: Vec<ZRoot2>,
}

impl fmt::Debug for SparseChannelMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseChannelMatrix(n={}, sde={}) {{", self.n, self.sde)?;
        for c in 0..self.dim {
            let entries: Vec<String> = self
                .column(c)
                .map(|(r, v)| format!("{}:({}{:+}√2)", r, v.a, v.b))
                .collect();
            if !entries.is_empty() {
                writeln!(f, "  col {c}: {}", entries.join(" "))?;
            }
        }
        write!(f, "}}")
    }
}

impl SparseChannelMatrix {
    pub fn identity(n: usize) -> Self {
        let dim = pauli_count(n);
        SparseChannelMatrix {
            n,
            dim,
            sde: 0,
            col_ptr: (0..=dim as u32).collect(),
            rows: (0..dim as u32).collect(),
            vals: vec![ZRoot2::ONE; dim],
        }
    }

    /// Builds a matrix from per-column `(row, numerator)` lists. Entries
    /// need not be sorted; duplicates are summed and zeros dropped.
    pub fn from_columns(n: usize, sde: u32, columns: Vec<Vec<(usize, ZRoot2)>>) -> Result<Self> {
        let dim = pauli_count(n);
        if columns.len() != dim {
            return Err(Error::Domain(format!(
                "expected {dim} columns, got {}",
                columns.len()
            )));
        }
        let mut builder = ColumnBuilder::new(n, sde);
        let mut acc = vec![ZRoot2::ZERO; dim];
        let mut touched = vec![false; dim];
        for col in columns {
            for (r, v) in col {
                if r >= dim {
                    return Err(Error::Domain(format!("row index {r} out of range")));
                }
                acc[r] = acc[r].checked_add(v).ok_or(Error::Overflow)?;
                touched[r] = true;
            }
            builder.flush_dense(&mut acc, &mut touched);
        }
        Ok(builder.finish())
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn sde(&self) -> u32 {
        self.sde
    }

    pub fn nnz(&self) -> usize {
        self.rows.len()
    }

    /// Iterates the nonzero entries of column `c` in row order.
    pub fn column(&self, c: usize) -> impl Iterator<Item = (usize, ZRoot2)> + '_ {
        let (s, e) = (self.col_ptr[c] as usize, self.col_ptr[c + 1] as usize);
        self.rows[s..e]
            .iter()
            .zip(&self.vals[s..e])
            .map(|(&r, &v)| (r as usize, v))
    }

    pub(crate) fn column_slices(&self, c: usize) -> (&[u32], &[ZRoot2]) {
        let (s, e) = (self.col_ptr[c] as usize, self.col_ptr[c + 1] as usize);
        (&self.rows[s..e], &self.vals[s..e])
    }

    /// Exact entry at `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> RootTwoScalar {
        let (rows, vals) = self.column_slices(col);
        match rows.binary_search(&(row as u32)) {
            Ok(i) => RootTwoScalar::new(vals[i], self.sde),
            Err(_) => RootTwoScalar::new(ZRoot2::ZERO, 0),
        }
    }

    /// Dense floating-point copy, row-major.
    #[allow(clippy::needless_range_loop)]
    pub fn to_dense_f64(&self) -> Vec<Vec<f64>> {
        let scale = std::f64::consts::SQRT_2.powi(self.sde as i32);
        let mut out = vec![vec![0.0; self.dim]; self.dim];
        for c in 0..self.dim {
            for (r, v) in self.column(c) {
                out[r][c] = v.to_f64() / scale;
            }
        }
        out
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Domain(format!(
                "dimension mismatch: {} vs {}",
                self.dim, other.dim
            )));
        }
        Ok(())
    }

    /// Exact product `self · other`.
    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let sde = self.sde.checked_add(other.sde).ok_or(Error::Overflow)?;
        let mut builder = ColumnBuilder::new(self.n, sde);
        let mut acc = vec![ZRoot2::ZERO; self.dim];
        let mut touched = vec![false; self.dim];
        for c in 0..other.dim {
            for (k, bv) in other.column(c) {
                for (r, av) in self.column(k) {
                    let prod = av.checked_mul(bv).ok_or(Error::Overflow)?;
                    acc[r] = acc[r].checked_add(prod).ok_or(Error::Overflow)?;
                    touched[r] = true;
                }
            }
            builder.flush_dense(&mut acc, &mut touched);
        }
        Ok(builder.finish())
    }

    pub fn transpose(&self) -> Self {
        let mut counts = vec![0u32; self.dim + 1];
        for &r in &self.rows {
            counts[r as usize + 1] += 1;
        }
        for i in 0..self.dim {
            counts[i + 1] += counts[i];
        }
        let col_ptr = counts.clone();
        let mut next = counts;
        let mut rows = vec![0u32; self.rows.len()];
        let mut vals = vec![ZRoot2::ZERO; self.vals.len()];
        for c in 0..self.dim {
            let (s, e) = (self.col_ptr[c] as usize, self.col_ptr[c + 1] as usize);
            for i in s..e {
                let r = self.rows[i] as usize;
                let slot = next[r] as usize;
                rows[slot] = c as u32;
                vals[slot] = self.vals[i];
                next[r] += 1;
            }
        }
        SparseChannelMatrix {
            n: self.n,
            dim: self.dim,
            sde: self.sde,
            col_ptr,
            rows,
            vals,
        }
    }

    /// Left multiplication by the rotation matrix `R̂(P)` (or its transpose
    /// when `transpose` is set), in `O(nnz)`.
    ///
    /// `R̂(P)` fixes rows of Paulis commuting with `P` and mixes each
    /// anticommuting pair `{Q, ±(-i·P·Q)}` by a 45° rotation.
    pub fn rotate_left(&self, p: &Pauli, transpose: bool) -> Result<Self> {
        if p.num_qubits() != self.n {
            return Err(Error::Domain("rotation Pauli has wrong qubit count".into()));
        }
        if p.is_identity() {
            return Err(Error::Domain("rotation about the identity".into()));
        }
        let pairing = RotationPairing::new(p);
        let mut builder = ColumnBuilder::new(self.n, self.sde + 1);
        let mut acc = vec![ZRoot2::ZERO; self.dim];
        let mut touched = vec![false; self.dim];
        for c in 0..self.dim {
            for (r, v) in self.column(c) {
                match pairing.partner(r) {
                    None => {
                        acc[r] = v.checked_mul_root2().ok_or(Error::Overflow)?;
                        touched[r] = true;
                    }
                    Some((partner, sign)) => {
                        // Column r of R̂ is (e_r + s·e_partner)/√2; R̂ᵀ negates s.
                        let s = if transpose { -sign } else { sign };
                        acc[r] = acc[r].checked_add(v).ok_or(Error::Overflow)?;
                        touched[r] = true;
                        let off = if s > 0 {
                            v
                        } else {
                            v.checked_neg().ok_or(Error::Overflow)?
                        };
                        acc[partner] = acc[partner].checked_add(off).ok_or(Error::Overflow)?;
                        touched[partner] = true;
                    }
                }
            }
            builder.flush_dense(&mut acc, &mut touched);
        }
        Ok(builder.finish())
    }

    /// True iff the canonical forms agree.
    pub fn canonical_equal(&self, other: &Self) -> bool {
        let a = self.clone().canonicalized();
        let b = other.clone().canonicalized();
        a == b
    }

    /// True iff `sde = 0` and every row and column has one entry `±1`.
    pub fn is_signed_permutation(&self) -> bool {
        let m = self.clone().canonicalized();
        if m.sde != 0 || m.nnz() != m.dim {
            return false;
        }
        let mut seen = vec![false; m.dim];
        for c in 0..m.dim {
            let (rows, vals) = m.column_slices(c);
            if rows.len() != 1 || vals[0].b != 0 || vals[0].a.abs() != 1 {
                return false;
            }
            let r = rows[0] as usize;
            if seen[r] {
                return false;
            }
            seen[r] = true;
        }
        true
    }

    /// Applies the reduction rule until it no longer fires.
    pub fn canonicalized(mut self) -> Self {
        self.reduce();
        self
    }

    fn reduce(&mut self) {
        if self.vals.is_empty() {
            self.sde = 0;
            return;
        }
        while self.sde > 0 && self.vals.iter().all(|v| v.a % 2 == 0) {
            for v in &mut self.vals {
                *v = v.div_root2();
            }
            self.sde -= 1;
        }
    }

    /// Flips the sign of every entry in column `c`.
    pub(crate) fn negate_column(&mut self, c: usize) {
        let (s, e) = (self.col_ptr[c] as usize, self.col_ptr[c + 1] as usize);
        for v in &mut self.vals[s..e] {
            *v = ZRoot2::new(-v.a, -v.b);
        }
    }

    /// Deterministic little-endian serialization: `dim: u32`, `sde: u32`,
    /// then for each column `count: u32` followed by `(row: u32, a: i64,
    /// b: i64)` triples in row order.
    pub fn to_bytes(&self) -> Vec<u8> {
        let order: Vec<usize> = (0..self.dim).collect();
        let mut out = Vec::new();
        self.write_bytes_in_order(&order, &mut out);
        out
    }

    pub(crate) fn write_bytes_in_order(&self, order: &[usize], out: &mut Vec<u8>) {
        out.reserve(8 + 4 * self.dim + 20 * self.nnz());
        out.extend_from_slice(&(self.dim as u32).to_le_bytes());
        out.extend_from_slice(&self.sde.to_le_bytes());
        for &c in order {
            let (rows, vals) = self.column_slices(c);
            out.extend_from_slice(&(rows.len() as u32).to_le_bytes());
            for (r, v) in rows.iter().zip(vals) {
                out.extend_from_slice(&r.to_le_bytes());
                out.extend_from_slice(&v.a.to_le_bytes());
                out.extend_from_slice(&v.b.to_le_bytes());
            }
        }
    }
}

/// Row pairing induced by `R̂(P)`.
pub(crate) struct RotationPairing {
    p: Pauli,
}

impl RotationPairing {
    pub(crate) fn new(p: &Pauli) -> Self {
        RotationPairing { p: *p }
    }

    /// For a row `Q` anticommuting with `P`, returns `(R, s)` with
    /// `-i·P·Q = s·R`; commuting rows give `None`.
    #[inline]
    pub(crate) fn partner(&self, row: usize) -> Option<(usize, i64)> {
        let q = Pauli::from_index_unchecked(row, self.p.num_qubits());
        if self.p.commutes_unchecked(&q) {
            return None;
        }
        let prod = self.p.mul_unchecked(&q);
        // -i·i^e = i^(e+3); e is odd for anticommuting pairs.
        let sign = if (prod.phase_exp + 3).is_multiple_of(4) {
            1
        } else {
            -1
        };
        Some((prod.pauli.index(), sign))
    }
}

/// Accumulates columns into compressed storage, then canonicalizes.
struct ColumnBuilder {
    n: usize,
    dim: usize,
    sde: u32,
    col_ptr: Vec<u32>,
    rows: Vec<u32>,
    vals: Vec<ZRoot2>,
}

impl ColumnBuilder {
    fn new(n: usize, sde: u32) -> Self {
        let dim = pauli_count(n);
        let mut col_ptr = Vec::with_capacity(dim + 1);
        col_ptr.push(0);
        ColumnBuilder {
            n,
            dim,
            sde,
            col_ptr,
            rows: Vec::new(),
            vals: Vec::new(),
        }
    }

    /// Moves the touched nonzero entries of a dense accumulator into the
    /// next column and clears the accumulator.
    fn flush_dense(&mut self, acc: &mut [ZRoot2], touched: &mut [bool]) {
        for r in 0..self.dim {
            if touched[r] {
                touched[r] = false;
                let v = std::mem::take(&mut acc[r]);
                if !v.is_zero() {
                    self.rows.push(r as u32);
                    self.vals.push(v);
                }
            }
        }
        self.col_ptr.push(self.rows.len() as u32);
    }

    fn finish(self) -> SparseChannelMatrix {
        debug_assert_eq!(self.col_ptr.len(), self.dim + 1);
        SparseChannelMatrix {
            n: self.n,
            dim: self.dim,
            sde: self.sde,
            col_ptr: self.col_ptr,
            rows: self.rows,
            vals: self.vals,
        }
        .canonicalized()
    }
}
