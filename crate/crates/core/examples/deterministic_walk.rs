//! The pseudorandom walk over both halves of the split search space.
//!
//! `cargo run --release --example deterministic_walk`

use clawsynth::channel::rotation_product;
use clawsynth::pauli::Pauli;
use clawsynth::walk::{decode_point, run_trail, Point, Side, TrailOutcome, WalkConfig, Walker};

fn main() -> clawsynth::Result<()> {
    let ps: Vec<Pauli> = ["XZ", "YI", "ZZ", "IX"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let target = rotation_product(&ps, 2)?;
    let cfg = WalkConfig::new(2, 4, None, 4, 2024)?;
    println!(
        "{} points per side, θ = 1/{}",
        cfg.space,
        1u64 << cfg.theta_exp
    );

    let mut walker = Walker::new(&cfg, &target)?;
    let mut p = Point::new(7, Side::V);
    for _ in 0..6 {
        let paulis = decode_point(p.x, &cfg)?;
        println!(
            "{:?} {:>4} {:?}",
            p.side,
            p.x,
            paulis.iter().map(|q| q.to_string()).collect::<Vec<_>>()
        );
        p = walker.step(p)?;
    }

    let mut lengths = Vec::new();
    for x in 0..2000 {
        if let TrailOutcome::Complete(t) =
            run_trail(Point::new(x % cfg.space, Side::W), &cfg, &target)?
        {
            lengths.push(t.length);
        }
    }
    let mean = lengths.iter().sum::<u64>() as f64 / lengths.len() as f64;
    // Below 1/θ here: in so small a space many walks close a short cycle
    // first, and the ones that finish are biased short.
    println!(
        "mean trail length over {} trails: {mean:.1} (1/θ = {})",
        lengths.len(),
        1u64 << cfg.theta_exp
    );
    Ok(())
}
