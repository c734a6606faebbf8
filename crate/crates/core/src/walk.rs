//! Deterministic walks over Pauli-rotation products.
//!
//! A point `(x, side)` encodes `half = ⌊t/2⌋` Paulis as base-`ξ` digits of
//! `x` (`ξ = 4ⁿ − 1`, least significant digit first, digit `g` meaning the
//! Pauli of index `g + 1`). Side 1 builds
//! `V = R̂(P_chunk)·R̂(P_half)···R̂(P_1)` (the chunk factor only for odd `t`),
//! side 2 builds `W = R̂(P_1)ᵀ···R̂(P_half)ᵀ·Ĉ`. One step hashes the coset
//! label of that product back into a point, so two points collide with
//! distinct sides exactly when the halves meet up to a right Clifford.

use serde::{Deserialize, Serialize};
use xxhash_rust::xxh3::{xxh3_128_with_seed, xxh3_64_with_seed};

use crate::error::{Error, Result};
use crate::label::append_coset_label;
use crate::matrix::SparseChannelMatrix;
use crate::pauli::{pauli_count, Pauli};

/// Name of the keyed hash used for steps and distinguished points.
pub const HASH_ID: &str = "xxh3-128-seeded";

const STEP_TAG: &[u8] = b"step";
const DP_TAG: &[u8] = b"dp";
const SALT_TAG: &[u8] = b"salt";

pub const DEFAULT_MAX_TRAIL_FACTOR: u64 = 20;

/// Which half of the meet-in-the-middle equation a point encodes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    V = 1,
    W = 2,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Point {
    pub x: u128,
    pub side: Side,
}

impl Point {
    pub fn new(x: u128, side: Side) -> Self {
        Point { x, side }
    }
}

/// Record of one finished walk.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct TrailTriple {
    pub start: Point,
    pub end: Point,
    pub length: u64,
}

#[derive(Clone, Debug)]
pub struct WalkConfig {
    pub n: usize,
    pub t: usize,
    pub half: usize,
    pub xi: u128,
    /// `ξ^half`, the number of values of `x`.
    pub space: u128,
    /// Outermost V-side Pauli index minus one; only for odd `t`.
    pub chunk: Option<usize>,
    pub theta_exp: u32,
    pub salt: u64,
    pub max_trail_factor: u64,
    chunk_pauli: Option<Pauli>,
}

impl WalkConfig {
    pub fn new(
        n: usize,
        t: usize,
        chunk: Option<usize>,
        theta_exp: u32,
        salt: u64,
    ) -> Result<Self> {
        Pauli::identity(n)?;
        let half = t / 2;
        if half == 0 {
            return Err(Error::Domain("walks need t ≥ 2".into()));
        }
        if theta_exp > 62 {
            return Err(Error::Domain(format!("theta_exp {theta_exp} exceeds 62")));
        }
        let xi = pauli_count(n) as u128 - 1;
        let space = (0..half)
            .try_fold(1u128, |acc, _| acc.checked_mul(xi))
            .ok_or_else(|| Error::Domain(format!("ξ^{half} does not fit in 128 bits")))?;
        let chunk_pauli = match (t % 2, chunk) {
            (1, Some(c)) if (c as u128) < xi => Some(Pauli::from_index(c + 1, n)?),
            (1, Some(c)) => return Err(Error::Domain(format!("chunk {c} out of range"))),
            (1, None) => return Err(Error::Domain("odd t requires a chunk".into())),
            (_, Some(_)) => return Err(Error::Domain("even t takes no chunk".into())),
            (_, None) => None,
        };
        Ok(WalkConfig {
            n,
            t,
            half,
            xi,
            space,
            chunk,
            theta_exp,
            salt,
            max_trail_factor: DEFAULT_MAX_TRAIL_FACTOR,
            chunk_pauli,
        })
    }

    pub fn with_max_trail_factor(mut self, factor: u64) -> Self {
        self.max_trail_factor = factor;
        self
    }

    pub fn chunk_pauli(&self) -> Option<Pauli> {
        self.chunk_pauli
    }

    /// Longest trail before it is treated as trapped in a cycle.
    pub fn max_trail_length(&self) -> u64 {
        self.max_trail_factor.saturating_mul(1u64 << self.theta_exp)
    }

    /// Size of the whole point set, `2·ξ^half`.
    pub fn point_count(&self) -> u128 {
        self.space.saturating_mul(2)
    }
}

/// Mixes the run seed with the search coordinates into a walk salt.
pub fn derive_salt(seed: u64, n: usize, t: usize, chunk: Option<usize>, round: u32) -> u64 {
    let mut buf = Vec::with_capacity(40);
    buf.extend_from_slice(SALT_TAG);
    buf.extend_from_slice(&(n as u64).to_le_bytes());
    buf.extend_from_slice(&(t as u64).to_le_bytes());
    buf.extend_from_slice(&chunk.map_or(u64::MAX, |c| c as u64).to_le_bytes());
    buf.extend_from_slice(&round.to_le_bytes());
    xxh3_64_with_seed(&buf, seed)
}

/// Unranks `x` into `half` Paulis, `P_1` first.
pub fn decode_point(x: u128, cfg: &WalkConfig) -> Result<Vec<Pauli>> {
    if x >= cfg.space {
        return Err(Error::Domain(format!(
            "point {x} outside [0, {})",
            cfg.space
        )));
    }
    let mut rest = x;
    let mut out = Vec::with_capacity(cfg.half);
    for _ in 0..cfg.half {
        let digit = (rest % cfg.xi) as usize;
        rest /= cfg.xi;
        out.push(Pauli::from_index_unchecked(digit + 1, cfg.n));
    }
    Ok(out)
}

/// Inverse of [`decode_point`].
pub fn encode_paulis(paulis: &[Pauli], cfg: &WalkConfig) -> Result<u128> {
    if paulis.len() != cfg.half {
        return Err(Error::Domain("wrong number of Paulis for this walk".into()));
    }
    let mut x = 0u128;
    for p in paulis.iter().rev() {
        if p.is_identity() || p.num_qubits() != cfg.n {
            return Err(Error::Domain(format!("{p} cannot be a walk digit")));
        }
        x = x * cfg.xi + (p.index() as u128 - 1);
    }
    Ok(x)
}

/// `V` for side-1 Paulis `P_1..P_half` (plus the chunk factor).
pub fn v_side_matrix(paulis: &[Pauli], cfg: &WalkConfig) -> Result<SparseChannelMatrix> {
    let mut m = SparseChannelMatrix::identity(cfg.n);
    for p in paulis.iter().chain(cfg.chunk_pauli.iter()) {
        m = m.rotate_left(p, false)?;
    }
    Ok(m)
}

/// `W` for side-2 Paulis `P_1..P_half`.
pub fn w_side_matrix(
    paulis: &[Pauli],
    target: &SparseChannelMatrix,
) -> Result<SparseChannelMatrix> {
    let mut m = target.clone();
    for p in paulis.iter().rev() {
        m = m.rotate_left(p, true)?;
    }
    Ok(m)
}

/// Product encoded by a point.
pub fn point_matrix(
    p: &Point,
    cfg: &WalkConfig,
    target: &SparseChannelMatrix,
) -> Result<SparseChannelMatrix> {
    let paulis = decode_point(p.x, cfg)?;
    match p.side {
        Side::V => v_side_matrix(&paulis, cfg),
        Side::W => w_side_matrix(&paulis, target),
    }
}

/// Evaluates the step function with reusable scratch space.
pub struct Walker<'a> {
    cfg: &'a WalkConfig,
    target: &'a SparseChannelMatrix,
    buf: Vec<u8>,
}

impl<'a> Walker<'a> {
    pub fn new(cfg: &'a WalkConfig, target: &'a SparseChannelMatrix) -> Result<Self> {
        if target.num_qubits() != cfg.n {
            return Err(Error::Domain("target has wrong qubit count".into()));
        }
        Ok(Walker {
            cfg,
            target,
            buf: Vec::new(),
        })
    }

    pub fn config(&self) -> &WalkConfig {
        self.cfg
    }

    pub fn step(&mut self, p: Point) -> Result<Point> {
        let m = point_matrix(&p, self.cfg, self.target)?;
        self.buf.clear();
        self.buf.extend_from_slice(STEP_TAG);
        append_coset_label(&m, &mut self.buf);
        let h = xxh3_128_with_seed(&self.buf, self.cfg.salt);
        let side = if h >> 127 == 0 { Side::V } else { Side::W };
        Ok(Point {
            x: h % self.cfg.space,
            side,
        })
    }
}

/// One application of the step function.
pub fn step(p: Point, cfg: &WalkConfig, target: &SparseChannelMatrix) -> Result<Point> {
    Walker::new(cfg, target)?.step(p)
}

/// Whether a point terminates trails.
pub fn is_distinguished(p: &Point, cfg: &WalkConfig) -> bool {
    if cfg.theta_exp == 0 {
        return true;
    }
    let mut buf = [0u8; 2 + 16 + 1];
    buf[..2].copy_from_slice(DP_TAG);
    buf[2..18].copy_from_slice(&p.x.to_le_bytes());
    buf[18] = p.side as u8;
    let h = xxh3_64_with_seed(&buf, cfg.salt);
    h >> (64 - cfg.theta_exp) == 0
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TrailOutcome {
    Complete(TrailTriple),
    /// No distinguished point within the length cap.
    CycleAbandoned {
        steps: u64,
    },
    /// The step source stopped early (budget or cancellation).
    Interrupted {
        steps: u64,
    },
}

impl TrailOutcome {
    pub fn steps(&self) -> u64 {
        match self {
            TrailOutcome::Complete(t) => t.length,
            TrailOutcome::CycleAbandoned { steps } | TrailOutcome::Interrupted { steps } => *steps,
        }
    }
}

/// Walks from `start` until a distinguished point, using `step` which may
/// return `None` to stop early.
pub fn run_trail_with<F>(start: Point, cfg: &WalkConfig, mut step: F) -> Result<TrailOutcome>
where
    F: FnMut(Point) -> Result<Option<Point>>,
{
    let cap = cfg.max_trail_length();
    let mut cur = start;
    let mut d = 0u64;
    loop {
        if d >= cap {
            return Ok(TrailOutcome::CycleAbandoned { steps: d });
        }
        match step(cur)? {
            Some(next) => cur = next,
            None => return Ok(TrailOutcome::Interrupted { steps: d }),
        }
        d += 1;
        if is_distinguished(&cur, cfg) {
            return Ok(TrailOutcome::Complete(TrailTriple {
                start,
                end: cur,
                length: d,
            }));
        }
    }
}

/// Walks from `start` to the next distinguished point.
pub fn run_trail(
    start: Point,
    cfg: &WalkConfig,
    target: &SparseChannelMatrix,
) -> Result<TrailOutcome> {
    let mut walker = Walker::new(cfg, target)?;
    run_trail_with(start, cfg, |p| walker.step(p).map(Some))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::channel_r;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cfg(n: usize, t: usize, chunk: Option<usize>, theta_exp: u32) -> WalkConfig {
        WalkConfig::new(n, t, chunk, theta_exp, 0x5eed).unwrap()
    }

    #[test]
    fn decode_examples() {
        let c = cfg(2, 4, None, 0);
        let z0: Pauli = "ZI".parse().unwrap();
        let x0: Pauli = "XI".parse().unwrap();
        assert_eq!(decode_point(0, &c).unwrap(), vec![z0, z0]);
        assert_eq!(decode_point(16, &c).unwrap(), vec![x0, x0]);
        assert!(decode_point(225, &c).is_err());
    }

    #[test]
    fn decode_is_injective() {
        let c = cfg(2, 8, None, 0);
        assert_eq!(c.space, 50625);
        for x in 0..c.space {
            let ps = decode_point(x, &c).unwrap();
            assert_eq!(encode_paulis(&ps, &c).unwrap(), x);
        }
    }

    #[test]
    fn config_validation() {
        assert!(WalkConfig::new(2, 1, None, 0, 0).is_err());
        assert!(WalkConfig::new(2, 3, None, 0, 0).is_err());
        assert!(WalkConfig::new(2, 3, Some(15), 0, 0).is_err());
        assert!(WalkConfig::new(2, 4, Some(0), 0, 0).is_err());
        assert!(WalkConfig::new(2, 4, None, 63, 0).is_err());
        assert!(WalkConfig::new(6, 40, None, 0, 0).is_err());
        assert_eq!(cfg(2, 5, Some(3), 0).chunk_pauli().unwrap().index(), 4);
    }

    #[test]
    fn step_is_deterministic() {
        let c = cfg(2, 4, None, 0);
        let target = channel_r(&"XZ".parse().unwrap()).unwrap();
        let p = Point::new(17, Side::W);
        assert_eq!(step(p, &c, &target).unwrap(), step(p, &c, &target).unwrap());
    }

    #[test]
    fn step_factors_through_the_label() {
        // Target V(x1) itself: then W(x2 = 0...) needs label equality; construct the
        // target so that x1 and x2 are a claw by definition.
        let c = cfg(2, 4, None, 0);
        let v_paulis = decode_point(40, &c).unwrap();
        let w_paulis = decode_point(101, &c).unwrap();
        let v = v_side_matrix(&v_paulis, &c).unwrap();
        // Ĉ = R(w2)R(w1)·V so that W(w) = V.
        let mut target = v.clone();
        for p in &w_paulis {
            target = target.rotate_left(p, false).unwrap();
        }
        assert_eq!(w_side_matrix(&w_paulis, &target).unwrap(), v);
        assert_eq!(
            step(Point::new(40, Side::V), &c, &target).unwrap(),
            step(Point::new(101, Side::W), &c, &target).unwrap()
        );
    }

    #[test]
    fn theta_zero_marks_everything() {
        let c = cfg(2, 4, None, 0);
        let target = SparseChannelMatrix::identity(2);
        assert!(is_distinguished(&Point::new(3, Side::V), &c));
        match run_trail(Point::new(5, Side::V), &c, &target).unwrap() {
            TrailOutcome::Complete(t) => assert_eq!(t.length, 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn two_cycle_is_abandoned() {
        let c = cfg(2, 4, None, 8);
        let mut plain = (0u128..)
            .map(|x| Point::new(x, Side::V))
            .filter(|p| !is_distinguished(p, &c));
        let (a, b) = (plain.next().unwrap(), plain.next().unwrap());
        let out = run_trail_with(a, &c, |p| Ok(Some(if p == a { b } else { a }))).unwrap();
        assert!(matches!(out, TrailOutcome::CycleAbandoned { .. }));
        assert_eq!(out.steps(), c.max_trail_length());
    }

    #[test]
    fn interrupted_trail_reports_steps() {
        let c = cfg(2, 4, None, 62);
        let mut left = 3;
        let out = run_trail_with(Point::new(0, Side::V), &c, |p| {
            if left == 0 {
                return Ok(None);
            }
            left -= 1;
            Ok(Some(Point::new(p.x + 1, Side::V)))
        })
        .unwrap();
        assert_eq!(out, TrailOutcome::Interrupted { steps: 3 });
    }

    #[test]
    fn distinguished_fraction_is_close_to_theta() {
        let c = cfg(2, 4, None, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let hits = (0..80_000)
            .filter(|_| is_distinguished(&Point::new(rng.gen::<u128>(), Side::V), &c))
            .count();
        let frac = hits as f64 / 80_000.0;
        assert!((frac - 0.125).abs() < 0.01, "{frac}");
    }

    #[test]
    fn salt_depends_on_every_coordinate() {
        let base = derive_salt(1, 2, 5, Some(3), 0);
        assert_ne!(base, derive_salt(2, 2, 5, Some(3), 0));
        assert_ne!(base, derive_salt(1, 3, 5, Some(3), 0));
        assert_ne!(base, derive_salt(1, 2, 7, Some(3), 0));
        assert_ne!(base, derive_salt(1, 2, 5, Some(4), 0));
        assert_ne!(base, derive_salt(1, 2, 5, Some(3), 1));
    }
}
