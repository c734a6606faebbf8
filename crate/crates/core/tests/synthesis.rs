mod common;

use clawsynth::channel::{channel_of_circuit, rotation_product, Gate, GateKind};
use clawsynth::matrix::SparseChannelMatrix;
use clawsynth::pauli::Pauli;
use clawsynth::solution::Solution;
use clawsynth::synthesis::{
    emit_gates, extract_clifford, mitm_exhaustive, synthesize, synthesize_channel, verify_gates,
    verify_solution, EngineChoice, OptimalityFlag, SynthesisOptions,
};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn planted(
    rng: &mut ChaCha8Rng,
    n: usize,
    t: usize,
) -> (Vec<Pauli>, SparseChannelMatrix, SparseChannelMatrix) {
    let ps: Vec<Pauli> = (0..t).map(|_| random_pauli(rng, n)).collect();
    let d = channel_of_circuit(&random_circuit(rng, n, 8, true), n).unwrap();
    let c = rotation_product(&ps, n).unwrap().mat_mul(&d).unwrap();
    (ps, d, c)
}

fn min_t(target: &SparseChannelMatrix, engine: EngineChoice, seed: u64) -> Option<usize> {
    let opts = SynthesisOptions {
        t_max: 4,
        engine,
        seed,
        emit_gates: false,
        ..Default::default()
    };
    synthesize_channel(target, &opts).unwrap().found().map(|r| {
        assert!(verify_solution(&r.solution, target));
        r.t()
    })
}

#[test]
fn controlled_s_needs_three_rotations() {
    let (n, gates) = load_circuit("cs.txt");
    let r = synthesize(&gates, n, &SynthesisOptions::default())
        .unwrap()
        .found()
        .unwrap();
    assert_eq!(r.t(), 3);
    assert_eq!(r.optimality, OptimalityFlag::ProvenOptimal);
    assert!(verify_gates(r.gates.as_ref().unwrap(), &r.target));
}

#[test]
fn planted_three_rotation_targets_are_recovered() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..10 {
        let (_, _, c) = planted(&mut rng, 2, 3);
        let sol = (0..=3)
            .find_map(|t| mitm_exhaustive(&c, t, 1 << 20).unwrap())
            .expect("t ≤ 3");
        assert!(sol.t() <= 3);
        assert!(verify_solution(&sol, &c));
    }
}

#[test]
fn perturbed_solutions_fail_verification() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let (ps, d, c) = planted(&mut rng, 2, 4);
        let mut sol = Solution {
            n: 2,
            paulis: ps.clone(),
            clifford: d,
            chunk: None,
            stats: Default::default(),
        };
        assert!(verify_solution(&sol, &c));
        let i = rng.gen_range(0..ps.len());
        let replacement = loop {
            let p = random_pauli(&mut rng, 2);
            if p != ps[i] {
                break p;
            }
        };
        sol.paulis[i] = replacement;
        assert!(!verify_solution(&sol, &c));
    }
}

#[test]
fn empty_sequence_verifies_a_clifford() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let d = channel_of_circuit(&random_circuit(&mut rng, 3, 20, true), 3).unwrap();
    let sol = Solution {
        n: 3,
        paulis: vec![],
        clifford: d.clone(),
        chunk: None,
        stats: Default::default(),
    };
    assert!(verify_solution(&sol, &d));
}

#[test]
fn emitted_circuits_recompose_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 1..=3 {
        for _ in 0..10 {
            let (ps, d, c) = planted(&mut rng, n, 3);
            let sol = Solution {
                n,
                paulis: ps,
                clifford: d,
                chunk: None,
                stats: Default::default(),
            };
            let gates = emit_gates(&sol).unwrap();
            assert!(verify_gates(&gates, &c));
            let dense = channel_dense(&circuit_dense(&gates, n), n);
            assert!(max_abs_diff(&c, &dense) < 1e-9);
            assert_eq!(gates.iter().filter(|g| g.kind == GateKind::T).count(), 3);
        }
    }
}

#[test]
fn random_clifford_tableaux_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 1..=4 {
        for _ in 0..20 {
            let d = channel_of_circuit(&random_circuit(&mut rng, n, 30, true), n).unwrap();
            let tab = extract_clifford(&d).unwrap();
            assert_eq!(channel_of_circuit(&tab.to_gates().unwrap(), n).unwrap(), d);
            assert_eq!(tab.to_matrix().unwrap(), d);
        }
    }
}

#[test]
fn walk_agrees_with_exhaustive_on_a_sample() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for i in 0..8 {
        let n = 1 + i % 2;
        let t = rng.gen_range(2..=4);
        let (_, _, c) = planted(&mut rng, n, t);
        let exact = min_t(&c, EngineChoice::Exhaustive, 0);
        assert_eq!(
            min_t(&c, EngineChoice::Walk, i as u64),
            exact,
            "instance {i}"
        );
    }
}

#[test]
fn walk_results_are_heuristic_unless_lower_t_was_exhausted() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (_, _, c) = planted(&mut rng, 2, 4);
    let exact = min_t(&c, EngineChoice::Exhaustive, 0).unwrap();
    assert!(exact >= 2);
    let walk = SynthesisOptions {
        engine: EngineChoice::Walk,
        t_max: 4,
        ..Default::default()
    };
    let r = synthesize_channel(&c, &walk).unwrap().found().unwrap();
    assert_eq!(r.optimality, OptimalityFlag::HeuristicOptimal);
    let auto = SynthesisOptions {
        t_max: 4,
        ..Default::default()
    };
    let r = synthesize_channel(&c, &auto).unwrap().found().unwrap();
    assert_eq!(r.optimality, OptimalityFlag::ProvenOptimal);
}

#[test]
fn threaded_and_chunk_parallel_modes_find_the_same_t() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let (_, _, c) = planted(&mut rng, 2, 3);
    let exact = min_t(&c, EngineChoice::Exhaustive, 0);
    for (threads, chunk_parallel) in [(4, false), (1, true), (4, true)] {
        let opts = SynthesisOptions {
            engine: EngineChoice::Walk,
            t_max: 4,
            threads,
            chunk_parallel,
            emit_gates: false,
            ..Default::default()
        };
        let r = synthesize_channel(&c, &opts).unwrap().found().unwrap();
        assert_eq!(Some(r.t()), exact);
    }
}

#[test]
fn gate_list_input_matches_channel_input() {
    let gates = vec![
        Gate::single(GateKind::H, 0),
        Gate::single(GateKind::T, 0),
        Gate::single(GateKind::H, 0),
    ];
    let r = synthesize(&gates, 1, &SynthesisOptions::default())
        .unwrap()
        .found()
        .unwrap();
    assert_eq!(r.t(), 1);
    assert_eq!(r.solution.paulis, vec!["X".parse::<Pauli>().unwrap()]);
}
