use clawsynth::channel::rotation_product;
use clawsynth::pauli::Pauli;
use clawsynth::walk::{is_distinguished, run_trail, Point, Side, TrailOutcome, WalkConfig, Walker};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn planted_target() -> clawsynth::matrix::SparseChannelMatrix {
    let ps: Vec<Pauli> = ["XZ", "YI", "ZZ", "IX"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    rotation_product(&ps, 2).unwrap()
}

#[test]
fn trail_lengths_follow_the_geometric_law() {
    let target = planted_target();
    let cfg = WalkConfig::new(2, 8, None, 5, 77).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut total = 0u64;
    let mut done = 0u64;
    for _ in 0..2000 {
        let start = Point::new(rng.gen_range(0..cfg.space), Side::V);
        if let TrailOutcome::Complete(t) = run_trail(start, &cfg, &target).unwrap() {
            total += t.length;
            done += 1;
        }
    }
    let mean = total as f64 / done as f64;
    assert!((mean - 32.0).abs() < 0.2 * 32.0, "mean trail length {mean}");
}

#[test]
fn steps_depend_only_on_the_point_and_salt() {
    let target = planted_target();
    let a = WalkConfig::new(2, 4, None, 3, 1).unwrap();
    let b = WalkConfig::new(2, 4, None, 3, 2).unwrap();
    let (mut wa, mut wb) = (
        Walker::new(&a, &target).unwrap(),
        Walker::new(&b, &target).unwrap(),
    );
    let mut differ = 0;
    for x in 0..a.space {
        for side in [Side::V, Side::W] {
            let p = Point::new(x, side);
            assert_eq!(wa.step(p).unwrap(), wa.step(p).unwrap());
            differ += (wa.step(p).unwrap() != wb.step(p).unwrap()) as u32;
        }
    }
    assert!(differ > 400, "salt changed only {differ} of 450 steps");
}

#[test]
fn both_sides_are_reached() {
    let target = planted_target();
    let cfg = WalkConfig::new(2, 6, None, 0, 9).unwrap();
    let mut w = Walker::new(&cfg, &target).unwrap();
    let mut v_hits = 0;
    for x in 0..2000u128 {
        v_hits += (w.step(Point::new(x, Side::W)).unwrap().side == Side::V) as u32;
    }
    assert!((800..1200).contains(&v_hits), "{v_hits}");
}

#[test]
fn distinguished_points_are_salt_dependent() {
    let a = WalkConfig::new(2, 8, None, 4, 1).unwrap();
    let b = WalkConfig::new(2, 8, None, 4, 2).unwrap();
    let both = (0..100_000u128)
        .map(|x| Point::new(x, Side::V))
        .filter(|p| is_distinguished(p, &a) && is_distinguished(p, &b))
        .count();
    // Independent predicates: about 100000 / 256.
    assert!((250..550).contains(&both), "{both}");
}
