//! Runtime predictions and the best distinguished-point fraction.
//!
//! `cargo run --example cost_model`

use clawsynth::cost::{
    optimal_theta, optimal_theta_exp, runtime_refined, runtime_tcount, CostParams,
};

fn main() {
    println!("Toffoli-scale search, n = 3, t = 7, α = 3:");
    for m in [1.0, 64.0, 4096.0] {
        let c = runtime_tcount(3, 7, (1u64 << 20) as f64, m, 3.0);
        println!("  m = {m:>6}: 2^{:.2} units", c.log2());
    }

    println!("\nmemory against cost at the best θ, n = 3, t = 12:");
    for e in [10, 16, 22, 28] {
        let w = 2f64.powi(e);
        let th = optimal_theta(3, 12, w, 1.0, 2.0);
        println!(
            "  w = 2^{e}: θ* = 2^{:.1}, cost 2^{:.2}",
            th.log2(),
            runtime_refined(3, 12, w, 1.0, th, 2.0).log2()
        );
    }
    println!(
        "integer exponent for n = 3, t = 8, w = 2^16: {}",
        optimal_theta_exp(3, 8, 65536.0, 40)
    );

    let row = CostParams {
        n: 2,
        t: 5,
        w: 4096.0,
        m: 4.0,
        theta: 0.125,
        alpha: 2.0,
    }
    .evaluate();
    println!("\n{}", serde_json::to_string_pretty(&row).unwrap());
}
