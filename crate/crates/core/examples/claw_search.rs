//! Parallel collision search for a planted claw in one chunk.
//!
//! `cargo run --release --example claw_search -- [threads]`

use clawsynth::channel::{channel_of_circuit, rotation_product, Gate, GateKind};
use clawsynth::claw::{default_budget, search_chunk, RoleConfig};
use clawsynth::pauli::Pauli;
use clawsynth::synthesis::verify_solution;
use clawsynth::walk::WalkConfig;

fn main() -> clawsynth::Result<()> {
    let threads: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(4);
    let ps: Vec<Pauli> = ["XY", "ZI", "YZ", "IX", "XX"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let d = channel_of_circuit(
        &[
            Gate::single(GateKind::S, 1),
            Gate::two(GateKind::Cnot, 1, 0),
        ],
        2,
    )?;
    let target = rotation_product(&ps, 2)?.mat_mul(&d)?;

    // Odd t: the middle rotation selects the chunk.
    let chunk = ps[2].index() - 1;
    let cfg = WalkConfig::new(2, 5, Some(chunk), 3, 99)?;
    let roles = RoleConfig::for_threads(threads, 1 << 12);
    println!(
        "roles: {} workers, {} collectors, {} verifiers",
        roles.workers, roles.collectors, roles.verifiers
    );

    let out = search_chunk(&cfg, &target, default_budget(&cfg), &roles)?;
    let s = &out.stats;
    println!(
        "steps {}, trails {}, candidate pairs {}, false claws {}",
        s.steps, s.trails, s.candidate_pairs, s.false_claws
    );
    match out.solution {
        Some(sol) => {
            let seq: Vec<_> = sol.paulis.iter().map(|p| p.to_string()).collect();
            println!("claw: {seq:?}, verified {}", verify_solution(&sol, &target));
        }
        None => println!("no claw within budget"),
    }
    Ok(())
}
