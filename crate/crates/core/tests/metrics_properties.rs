//! Metric invariants against brute-force oracles: accelerated Chamfer vs
//! exhaustive scan, assignment-metric metric axioms, F-score monotonicity,
//! and the self-evaluation noise floor.

use rand::Rng;
use sketchkit_core::seed;
use sketchkit_core::{
    chamfer_distance, chamfer_distance_with, emd_exact, evaluate_pair, fscore, Backend,
    EvalOptions, PointCloud, Reduce, TriangleMesh,
};

fn random_cloud(rng: &mut impl Rng, n: usize, scale: f64) -> PointCloud {
    let points: Vec<[f64; 3]> = (0..n)
        .map(|_| {
            [
                rng.random_range(-scale..scale),
                rng.random_range(-scale..scale),
                rng.random_range(-scale..scale),
            ]
        })
        .collect();
    PointCloud::new(points).unwrap()
}

#[test]
fn accelerated_chamfer_equals_brute_force() {
    let mut rng = seed::rng(301);
    for _ in 0..1000 {
        let n = rng.random_range(1..=64);
        let m = rng.random_range(1..=64);
        let a = random_cloud(&mut rng, n, 2.0);
        let b = random_cloud(&mut rng, m, 2.0);
        let brute = chamfer_distance_with(&a, &b, Reduce::Sum, Backend::Brute).unwrap();
        let kd = chamfer_distance_with(&a, &b, Reduce::Sum, Backend::KdTree).unwrap();
        assert_eq!(brute, kd);
    }
}

#[test]
fn chamfer_is_symmetric() {
    let mut rng = seed::rng(302);
    for _ in 0..200 {
        let (n, m) = (rng.random_range(1..=32), rng.random_range(1..=32));
        let a = random_cloud(&mut rng, n, 1.0);
        let b = random_cloud(&mut rng, m, 1.0);
        assert_eq!(
            chamfer_distance(&a, &b).unwrap(),
            chamfer_distance(&b, &a).unwrap()
        );
    }
}

#[test]
fn assignment_metric_zero_iff_equal_multisets() {
    let mut rng = seed::rng(303);
    for _ in 0..100 {
        let n = rng.random_range(1..=16);
        let a = random_cloud(&mut rng, n, 1.0);
        // The same multiset in a different order.
        let mut shuffled = a.points().to_vec();
        for i in (1..shuffled.len()).rev() {
            let j = rng.random_range(0..=i);
            shuffled.swap(i, j);
        }
        let b = PointCloud::new(shuffled).unwrap();
        assert_eq!(emd_exact(&a, &b).unwrap(), 0.0);

        // Any displaced point forces a positive value.
        let mut moved = a.points().to_vec();
        let k = rng.random_range(0..moved.len());
        moved[k][0] += 3.5;
        let c = PointCloud::new(moved).unwrap();
        assert!(emd_exact(&a, &c).unwrap() > 0.0);
    }
}

fn emd_permutation_oracle(a: &PointCloud, b: &PointCloud) -> f64 {
    fn walk(
        level: usize,
        used: &mut Vec<bool>,
        acc: f64,
        best: &mut f64,
        a: &[[f64; 3]],
        b: &[[f64; 3]],
    ) {
        if level == a.len() {
            *best = best.min(acc);
            return;
        }
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                let d = sketchkit_core::dist2(a[level], b[j]).sqrt();
                walk(level + 1, used, acc + d, best, a, b);
                used[j] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    let mut used = vec![false; b.len()];
    walk(0, &mut used, 0.0, &mut best, a.points(), b.points());
    best
}

#[test]
fn assignment_metric_matches_permutation_oracle_at_n7() {
    let mut rng = seed::rng(304);
    for _ in 0..10 {
        let a = random_cloud(&mut rng, 7, 1.0);
        let b = random_cloud(&mut rng, 7, 1.0);
        let fast = emd_exact(&a, &b).unwrap();
        let oracle = emd_permutation_oracle(&a, &b);
        assert!((fast - oracle).abs() < 1e-10, "{fast} vs {oracle}");
    }
}

#[test]
fn assignment_metric_satisfies_triangle_inequality() {
    let mut rng = seed::rng(305);
    for _ in 0..200 {
        let a = random_cloud(&mut rng, 5, 1.0);
        let b = random_cloud(&mut rng, 5, 1.0);
        let c = random_cloud(&mut rng, 5, 1.0);
        let ab = emd_exact(&a, &b).unwrap();
        let bc = emd_exact(&b, &c).unwrap();
        let ac = emd_exact(&a, &c).unwrap();
        assert!(ac <= ab + bc + 1e-9, "{ac} > {ab} + {bc}");
    }
}

#[test]
fn fscore_is_monotone_in_threshold() {
    let mut rng = seed::rng(306);
    for _ in 0..100 {
        let (n, m) = (rng.random_range(2..=40), rng.random_range(2..=40));
        let a = random_cloud(&mut rng, n, 1.0);
        let b = random_cloud(&mut rng, m, 1.0);
        let mut prev = (0.0, 0.0, 0.0);
        for step in 1..=10 {
            let t = 0.2 * step as f64;
            let f = fscore(&a, &b, t).unwrap();
            assert!(f.precision >= prev.0 && f.recall >= prev.1 && f.fscore >= prev.2 - 1e-15);
            assert!((0.0..=1.0).contains(&f.fscore));
            prev = (f.precision, f.recall, f.fscore);
        }
    }
}

/// Evaluating a mesh against a dense sample of itself establishes the
/// sampling-noise floor: density-independent Chamfer stays under 1e-3 and
/// the F-score at the default threshold is essentially perfect.
#[test]
fn self_evaluation_sits_at_the_noise_floor() {
    // Thin box: 1 × 0.02 × 0.02, normalized-scale geometry.
    let vertices = vec![
        [0.0, 0.0, 0.0],
        [1.0, 0.0, 0.0],
        [1.0, 0.02, 0.0],
        [0.0, 0.02, 0.0],
        [0.0, 0.0, 0.02],
        [1.0, 0.0, 0.02],
        [1.0, 0.02, 0.02],
        [0.0, 0.02, 0.02],
    ];
    let faces = vec![
        [0, 1, 2],
        [0, 2, 3],
        [4, 6, 5],
        [4, 7, 6],
        [0, 4, 5],
        [0, 5, 1],
        [1, 5, 6],
        [1, 6, 2],
        [2, 6, 7],
        [2, 7, 3],
        [3, 7, 4],
        [3, 4, 0],
    ];
    let mesh = TriangleMesh::new(vertices, faces).unwrap();
    let reference = sketchkit_core::sample_surface(&mesh, 100_000, 401).unwrap();

    let opts = EvalOptions {
        reduce: Reduce::Mean,
        ..EvalOptions::default()
    };
    let report = evaluate_pair(&mesh, &reference, 402, &opts).unwrap();
    assert!(report.chamfer <= 1e-3, "chamfer {}", report.chamfer);
    assert!(report.fscore >= 0.99, "fscore {}", report.fscore);
    assert!(report.emd.is_some());
}
