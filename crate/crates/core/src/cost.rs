//! Runtime model for the collision search, in arbitrary cost units.
//!
//! Multiply any output by a measured per-step time ([`calibrate`]) to get
//! wall-clock predictions.

use serde::Serialize;

fn ceil_half(k: u32) -> u32 {
    k.div_ceil(2)
}

fn floor_half(k: u32) -> u32 {
    k / 2
}

/// Expected steps to find one collision in a space of `n_points` with `w`
/// stored distinguished points.
pub fn collision_steps(n_points: f64, w: f64, theta: f64) -> f64 {
    n_points * theta / w + 2.0 / theta
}

/// Search cost for `ξ` building blocks and depth `k` with per-step time `tau`.
pub fn runtime_general(xi: f64, k: u32, w: f64, m: f64, tau: f64) -> f64 {
    let e = ceil_half(k) as f64 + 0.5 * floor_half(k) as f64;
    xi.powf(e) * w.powf(-0.5) / m * tau
}

/// [`runtime_general`] with the per-step time of `⌈k/2⌉` multiplications of
/// `2ⁿ`-scale matrices at exponent `alpha`.
pub fn runtime_matmul(xi: f64, k: u32, w: f64, m: f64, alpha: f64, n: u32) -> f64 {
    let tau = 2f64.powf(alpha * n as f64) * ceil_half(k) as f64;
    runtime_general(xi, k, w, m, tau)
}

/// Closed-form T-count search cost.
pub fn runtime_tcount(n: u32, t: u32, w: f64, m: f64, alpha: f64) -> f64 {
    let e = n as f64 * (2.0 * alpha + 2.0 * ceil_half(t) as f64 + floor_half(t) as f64);
    2f64.powf(e) * w.powf(-0.5) / m * ceil_half(t) as f64
}

/// Cost with explicit distinguished-point fraction `theta`.
pub fn runtime_refined(n: u32, t: u32, w: f64, m: f64, theta: f64, alpha: f64) -> f64 {
    let (c, f) = (ceil_half(t) as f64, floor_half(t) as f64);
    let n = n as f64;
    let lead = c * (0.5 / m) * 4f64.powf(n * (alpha + 1.0 + c));
    lead * (4f64.powf(n * f) * theta / w + 1.0 / theta)
}

/// Large-memory limit of [`runtime_refined`].
pub fn runtime_limit(n: u32, t: u32, m: f64, theta: f64, alpha: f64) -> f64 {
    let c = ceil_half(t) as f64;
    c * (0.5 / m) * 4f64.powf(n as f64 * (alpha + 1.0 + c)) / theta
}

/// Converts cost units into seconds given a measured time per unit.
pub fn calibrate(cost: f64, seconds_per_unit: f64) -> f64 {
    cost * seconds_per_unit
}

/// `θ ∈ (0, 1]` minimizing [`runtime_refined`], by golden-section search on
/// `log θ`.
pub fn optimal_theta(n: u32, t: u32, w: f64, m: f64, alpha: f64) -> f64 {
    let f = |lt: f64| runtime_refined(n, t, w, m, lt.exp(), alpha);
    let (mut a, mut b) = ((2f64).powi(-80).ln(), 0.0f64);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    let best = ((a + b) / 2.0).exp();
    if f(0.0) <= f(best.ln()) {
        1.0
    } else {
        best
    }
}

/// Exponent `e ≤ max_exp` for which `θ = 2^-e` minimizes [`runtime_refined`].
pub fn optimal_theta_exp(n: u32, t: u32, w: f64, max_exp: u32) -> u32 {
    (0..=max_exp)
        .min_by(|&a, &b| {
            let ca = runtime_refined(n, t, w, 1.0, 2f64.powi(-(a as i32)), 2.0);
            let cb = runtime_refined(n, t, w, 1.0, 2f64.powi(-(b as i32)), 2.0);
            ca.total_cmp(&cb)
        })
        .unwrap_or(0)
}

/// One parameter point of the model.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CostParams {
    pub n: u32,
    pub t: u32,
    pub w: f64,
    pub m: f64,
    pub theta: f64,
    pub alpha: f64,
}

/// All model outputs at one parameter point.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CostRow {
    #[serde(flatten)]
    pub params: CostParams,
    pub xi: f64,
    pub collision_steps: f64,
    pub runtime_matmul: f64,
    pub runtime_tcount: f64,
    pub runtime_refined: f64,
    pub runtime_limit: f64,
    pub optimal_theta: f64,
}

impl CostParams {
    pub fn evaluate(&self) -> CostRow {
        let xi = 4f64.powi(self.n as i32) - 1.0;
        let space = 2.0 * xi.powi(floor_half(self.t) as i32);
        CostRow {
            params: *self,
            xi,
            collision_steps: collision_steps(space, self.w, self.theta),
            runtime_matmul: runtime_matmul(xi, self.t, self.w, self.m, self.alpha, self.n),
            runtime_tcount: runtime_tcount(self.n, self.t, self.w, self.m, self.alpha),
            runtime_refined: runtime_refined(
                self.n, self.t, self.w, self.m, self.theta, self.alpha,
            ),
            runtime_limit: runtime_limit(self.n, self.t, self.m, self.theta, self.alpha),
            optimal_theta: optimal_theta(self.n, self.t, self.w, self.m, self.alpha),
        }
    }
}
