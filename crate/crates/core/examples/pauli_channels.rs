//! Pauli algebra and exact channel matrices.
//!
//! `cargo run --example pauli_channels`

use clawsynth::channel::{channel_of_circuit, channel_r, Gate, GateKind};
use clawsynth::pauli::{commutes, pauli_mul, Pauli};

fn main() -> clawsynth::Result<()> {
    let xz: Pauli = "XZ".parse()?;
    let zx: Pauli = "ZX".parse()?;
    let yy: Pauli = "YY".parse()?;
    println!(
        "{xz} index {}, symplectic {}",
        xz.index(),
        xz.symplectic_hex()
    );
    println!("{xz} commutes with {zx}: {}", commutes(&xz, &zx)?);
    println!("{xz} · {zx} = {}", pauli_mul(&xz, &zx)?);
    println!("{xz} commutes with {yy}: {}", commutes(&xz, &yy)?);

    // T is the rotation about Z; its channel matrix has entries ±1/√2.
    let t = channel_of_circuit(&[Gate::single(GateKind::T, 0)], 1)?;
    assert_eq!(t, channel_r(&"Z".parse()?)?);
    println!("\nT channel (sde {}, {} nonzeros):", t.sde(), t.nnz());
    for row in t.to_dense_f64() {
        println!(
            "  {}",
            row.iter()
                .map(|v| format!("{v:+.4}"))
                .collect::<Vec<_>>()
                .join(" ")
        );
    }

    // Clifford channels are signed permutations.
    let cnot = channel_of_circuit(
        &[
            Gate::two(GateKind::Cnot, 0, 1),
            Gate::single(GateKind::H, 1),
        ],
        2,
    )?;
    println!(
        "\nCNOT then H is a signed permutation: {}",
        cnot.is_signed_permutation()
    );
    for g in [
        Gate::single(GateKind::H, 0),
        Gate::two(GateKind::Cnot, 0, 1),
    ] {
        let (image, negated) = g.conjugate(&xz)?;
        println!(
            "{g} maps {xz} to {}{image}",
            if negated { "-" } else { "+" }
        );
    }
    Ok(())
}
