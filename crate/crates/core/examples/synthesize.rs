//! End-to-end synthesis of a circuit file.
//!
//! `cargo run --release --example synthesize -- [circuit] [threads]`
//!
//! Defaults to the controlled-S circuit; pass `circuits/toffoli.txt` for the
//! Toffoli gate (about half a minute on one core).

use std::path::PathBuf;

use clawsynth::cli::parse_circuit;
use clawsynth::synthesis::{synthesize, Outcome, SynthesisOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("circuits/cs.txt"));
    let threads = args.next().and_then(|a| a.parse().ok()).unwrap_or(1);
    let (n, gates) = parse_circuit(&std::fs::read_to_string(&path)?)?;
    let input_t = gates.iter().filter(|g| !g.kind.is_clifford()).count();
    println!(
        "{}: {n} qubits, {} gates, {input_t} T gates",
        path.display(),
        gates.len()
    );

    let opts = SynthesisOptions {
        threads,
        seed: 1,
        ..Default::default()
    };
    match synthesize(&gates, n, &opts)? {
        Outcome::Found(r) => {
            for rep in &r.reports {
                println!("  t = {}: {:?}, found {}", rep.t, rep.engine, rep.found);
            }
            println!("T-count {} ({:?})", r.t(), r.optimality);
            let seq: Vec<_> = r.solution.paulis.iter().map(|p| p.to_string()).collect();
            println!("rotations {seq:?}");
            let (x, z) = r.tableau.to_strings();
            println!("Clifford tableau X ↦ {x:?}, Z ↦ {z:?}");
            println!("{} emitted gates", r.gates.as_ref().map_or(0, |g| g.len()));
        }
        Outcome::NotFound(nf) => println!("nothing up to t = {}", nf.t_max),
    }
    Ok(())
}
