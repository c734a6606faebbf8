//! Exhaustive meet-in-the-middle search, the reference engine.
//!
//! `cargo run --release --example exhaustive_mitm`

use clawsynth::channel::{channel_of_circuit, Gate, GateKind};
use clawsynth::synthesis::{mitm_search, side_sizes, DEFAULT_EXHAUSTIVE_THRESHOLD};

fn main() -> clawsynth::Result<()> {
    // Controlled-S: three rotations are needed.
    let gates = [
        Gate::single(GateKind::T, 0),
        Gate::single(GateKind::T, 1),
        Gate::two(GateKind::Cnot, 0, 1),
        Gate::single(GateKind::Tdg, 1),
        Gate::two(GateKind::Cnot, 0, 1),
    ];
    let target = channel_of_circuit(&gates, 2)?;
    for t in 0..=4 {
        let (probe, store) = side_sizes(2, t).expect("small");
        let s = mitm_search(&target, t, DEFAULT_EXHAUSTIVE_THRESHOLD)?;
        let found = s
            .solution
            .map(|sol| sol.paulis.iter().map(|p| p.to_string()).collect::<Vec<_>>());
        println!("t = {t}: {store} stored, {probe} probed, solution {found:?}");
    }
    Ok(())
}
