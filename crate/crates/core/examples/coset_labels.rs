//! Coset labels identify channel matrices up to a Clifford on the right.
//!
//! `cargo run --example coset_labels`

use clawsynth::channel::{channel_of_circuit, rotation_product, Gate, GateKind};
use clawsynth::label::{clifford_quotient, coset_label};
use clawsynth::pauli::Pauli;

fn main() -> clawsynth::Result<()> {
    let ps: Vec<Pauli> = vec!["ZI".parse()?, "XX".parse()?];
    let a = rotation_product(&ps, 2)?;
    let d = channel_of_circuit(
        &[Gate::single(GateKind::H, 0), Gate::two(GateKind::Cz, 0, 1)],
        2,
    )?;
    let ad = a.mat_mul(&d)?;

    let (la, lad) = (coset_label(&a), coset_label(&ad));
    println!("label(A)   = {}…", &la.to_hex()[..32]);
    println!("label(A·D) = {}…", &lad.to_hex()[..32]);
    println!("equal: {}", la == lad);

    let q = clifford_quotient(&a, &ad)?.expect("same coset");
    println!("recovered quotient equals D: {}", q == d);

    // Swapping the order of anticommuting rotations lands in another coset.
    let swapped = rotation_product(&[ps[1], ps[0]], 2)?;
    println!(
        "R(XX)R(ZI) in the same coset: {}",
        coset_label(&swapped) == la
    );
    Ok(())
}
