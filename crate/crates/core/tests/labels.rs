mod common;

use std::collections::{HashMap, HashSet};

use clawsynth::channel::{channel_of_circuit, rotation_product, Gate, GateKind};
use clawsynth::label::{clifford_quotient, coset_label};
use clawsynth::matrix::SparseChannelMatrix;
use clawsynth::pauli::{pauli_count, Pauli};
use common::*;
use proptest::prelude::*;

/// All Clifford channel matrices on one qubit, by closure under H and S.
fn one_qubit_cliffords() -> Vec<SparseChannelMatrix> {
    let gens = [Gate::single(GateKind::H, 0), Gate::single(GateKind::S, 0)];
    let mut seen = HashSet::new();
    let mut frontier = vec![SparseChannelMatrix::identity(1)];
    seen.insert(frontier[0].clone());
    while let Some(m) = frontier.pop() {
        for g in &gens {
            let next = channel_of_circuit(&[*g], 1).unwrap().mat_mul(&m).unwrap();
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    seen.into_iter().collect()
}

fn rotation_words(n: usize, max_len: usize) -> Vec<Vec<Pauli>> {
    let paulis: Vec<Pauli> = (1..pauli_count(n))
        .map(|i| Pauli::from_index(i, n).unwrap())
        .collect();
    let mut words = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<Pauli>| {
                paulis.iter().map(move |p| {
                    let mut w = w.clone();
                    w.push(*p);
                    w
                })
            })
            .collect();
        words.extend(layer.iter().cloned());
    }
    words
}

#[test]
fn there_are_24_one_qubit_cliffords() {
    let cl = one_qubit_cliffords();
    assert_eq!(cl.len(), 24);
    assert!(cl.iter().all(|m| m.is_signed_permutation()));
}

#[test]
fn labels_are_sound_and_complete_on_one_qubit() {
    let cliffords = one_qubit_cliffords();
    let mut mats = Vec::new();
    for w in rotation_words(1, 3) {
        let a = rotation_product(&w, 1).unwrap();
        for d in &cliffords {
            mats.push(a.mat_mul(d).unwrap());
        }
    }
    let labels: Vec<_> = mats.iter().map(coset_label).collect();
    let mut groups: HashMap<_, Vec<usize>> = HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        groups.entry(l.clone()).or_default().push(i);
    }
    for i in 0..mats.len() {
        for j in i..mats.len() {
            let q = clifford_quotient(&mats[i], &mats[j]).unwrap();
            assert_eq!(q.is_some(), labels[i] == labels[j], "pair {i}, {j}");
        }
    }
    // Every coset is hit by all 24 Cliffords.
    assert!(groups.values().all(|g| g.len() % 24 == 0));
}

fn clifford_gates() -> Vec<Gate> {
    all_gates(2)
        .into_iter()
        .filter(|g| g.kind.is_clifford())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn right_clifford_factors_are_invisible(
        word in prop::collection::vec(1usize..16, 0..5),
        cliff in prop::collection::vec(prop::sample::select(clifford_gates()), 0..10),
    ) {
        let paulis: Vec<Pauli> = word.iter().map(|&i| Pauli::from_index(i, 2).unwrap()).collect();
        let a = rotation_product(&paulis, 2).unwrap();
        let d = channel_of_circuit(&cliff, 2).unwrap();
        prop_assert_eq!(coset_label(&a.mat_mul(&d).unwrap()), coset_label(&a));
    }

    #[test]
    fn distinct_labels_mean_no_clifford_quotient(
        w1 in prop::collection::vec(1usize..16, 1..4),
        w2 in prop::collection::vec(1usize..16, 1..4),
    ) {
        let to_p = |w: &Vec<usize>| -> Vec<Pauli> { w.iter().map(|&i| Pauli::from_index(i, 2).unwrap()).collect() };
        let a = rotation_product(&to_p(&w1), 2).unwrap();
        let b = rotation_product(&to_p(&w2), 2).unwrap();
        let same = coset_label(&a) == coset_label(&b);
        prop_assert_eq!(same, clifford_quotient(&a, &b).unwrap().is_some());
    }
}
