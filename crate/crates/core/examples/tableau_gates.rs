//! Turning a solution into gates: Clifford tableau extraction and rotation
//! circuits.
//!
//! `cargo run --example tableau_gates`

use clawsynth::channel::{channel_of_circuit, rotation_product, Gate, GateKind};
use clawsynth::cli::format_circuit;
use clawsynth::solution::Solution;
use clawsynth::synthesis::{emit_gates, extract_clifford, rotation_gates, verify_gates};

fn main() -> clawsynth::Result<()> {
    let clifford = [
        Gate::single(GateKind::H, 0),
        Gate::two(GateKind::Cnot, 0, 1),
        Gate::single(GateKind::S, 1),
    ];
    let d = channel_of_circuit(&clifford, 2)?;
    let tab = extract_clifford(&d)?;
    let (x, z) = tab.to_strings();
    println!("X images {x:?}, Z images {z:?}");
    println!(
        "resynthesized: {:?}",
        tab.to_gates()?
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
    );

    for p in ["Z", "X", "Y"] {
        let gates = rotation_gates(&p.parse()?)?;
        println!(
            "R({p}) = {:?}",
            gates.iter().map(|g| g.to_string()).collect::<Vec<_>>()
        );
    }
    println!(
        "R(XYZ) = {:?}",
        rotation_gates(&"XYZ".parse()?)?
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
    );

    let sol = Solution {
        n: 2,
        paulis: vec!["ZZ".parse()?, "XI".parse()?],
        clifford: d,
        chunk: None,
        stats: Default::default(),
    };
    let target = rotation_product(&sol.paulis, 2)?.mat_mul(&sol.clifford)?;
    let gates = emit_gates(&sol)?;
    println!(
        "\nverified: {}\n{}",
        verify_gates(&gates, &target),
        format_circuit(2, &gates)
    );
    Ok(())
}
