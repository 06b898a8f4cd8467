//! Geometry pipeline invariants: normalization, alignment, OBJ loading,
//! and byte-level determinism of the sketch pipeline.

use std::fs;

use proptest::prelude::*;
use rand::Rng;
use sketchkit_core::seed;
use sketchkit_core::{
    align_to_reference, load_obj, normalize_unit, parse_svg, stylize, write_svg, PointCloud,
    Sketch, Stroke, StylizeParams,
};

fn random_cloud(rng: &mut impl Rng, n: usize) -> PointCloud {
    let points: Vec<[f64; 3]> = (0..n)
        .map(|_| {
            [
                rng.random_range(-5.0..5.0),
                rng.random_range(-5.0..5.0),
                rng.random_range(-5.0..5.0),
            ]
        })
        .collect();
    PointCloud::new(points).unwrap()
}

#[test]
fn normalize_unit_is_idempotent() {
    let mut rng = seed::rng(701);
    for _ in 0..50 {
        let n = rng.random_range(2..=200);
        let cloud = random_cloud(&mut rng, n);
        let once = normalize_unit(&cloud).unwrap();
        let twice = normalize_unit(&once).unwrap();
        for (a, b) in once.points().iter().zip(twice.points()) {
            for k in 0..3 {
                assert!((a[k] - b[k]).abs() <= 1e-12);
            }
        }
    }
}

#[test]
fn normalize_scales_by_longest_side() {
    // A 4×2×1 box becomes 1×0.5×0.25, centered at the origin.
    let corners: Vec<[f64; 3]> = (0..8)
        .map(|i| {
            [
                 if i & 1 == 0 { 3.0 } else { 7.0 },
                 if i & 2 == 0 { -1.0 } else { 1.0 },
                 if i & 4 == 0 { 10.0 } else { 11.0 },
            ]
        })
        .collect();
    let cloud = PointCloud::new(corners).unwrap();
    let normalized = normalize_unit(&cloud).unwrap();
    let aabb = normalized.aabb().unwrap();
    let extent = aabb.extent();
    assert!((extent[0] - 1.0).abs() < 1e-12);
    assert!((extent[1] - 0.5).abs() < 1e-12);
    assert!((extent[2] - 0.25).abs() < 1e-12);
    for c in aabb.center() {
        assert!(c.abs() < 1e-12);
    }
}

#[test]
fn aligning_a_cloud_to_itself_is_identity() {
    let mut rng = seed::rng(702);
    for _ in 0..50 {
        let n = rng.random_range(2..=100);
        let cloud = random_cloud(&mut rng, n);
        let aligned = align_to_reference(&cloud, &cloud).unwrap();
        for (a, b) in aligned.points().iter().zip(cloud.points()) {
            for k in 0..3 {
                assert!((a[k] - b[k]).abs() <= 1e-12);
            }
        }
    }
}

#[test]
fn alignment_does_not_correct_rotation() {
    // A cloud vs itself rotated 90° about z: centroids and bounding boxes
    // match after alignment, but the points do not.
    let mut rng = seed::rng(703);
    let points: Vec<[f64; 3]> = (0..64)
        .map(|_| {
            [
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            ]
        })
        .collect();
    let rotated: Vec<[f64; 3]> = points.iter().map(|p| [-p[1], p[0], p[2]]).collect();
    let a = PointCloud::new(points).unwrap();
    let b = PointCloud::new(rotated).unwrap();
    let aligned = align_to_reference(&a, &b).unwrap();

    let ca = aligned.centroid().unwrap();
    let cb = b.centroid().unwrap();
    for k in 0..3 {
        assert!((ca[k] - cb[k]).abs() < 1e-9);
    }
    assert!(
        (aligned.aabb().unwrap().max_extent() - b.aabb().unwrap().max_extent()).abs() < 1e-9
    );
    let moved = aligned
        .points()
        .iter()
        .zip(b.points())
        .any(|(p, q)| (p[0] - q[0]).abs() > 0.1 || (p[1] - q[1]).abs() > 0.1);
    assert!(moved, "rotation was unexpectedly corrected");
}

#[test]
fn quad_faces_triangulate_with_equal_area() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("quad.obj");
    fs::write(
        &path,
        "v 0 0 0\nv 2 0 0\nv 2 3 0\nv 0 3 0\nf 1 2 3 4\n",
    )
    .unwrap();
    let mesh = load_obj(&path).unwrap();
    assert_eq!(mesh.faces().len(), 2);
    assert!((mesh.total_area() - 6.0).abs() < 1e-12);
}

#[test]
fn stylized_svg_files_are_byte_identical_across_runs() {
    let sketch = Sketch {
        strokes: vec![
            Stroke::new(vec![[10.0, 10.0], [80.0, 15.0], [120.0, 60.0]], 2.0).unwrap(),
            Stroke::new(vec![[30.0, 90.0], [60.0, 40.0]], 1.0).unwrap(),
        ],
        canvas: (128.0, 128.0),
    };
    let params = StylizeParams::default();
    let dir = tempfile::tempdir().unwrap();

    let mut outputs = Vec::new();
    for run in 0..2 {
        let styled = stylize(&sketch, &params, 31415).unwrap();
        let path = dir.path().join(format!("run{run}.svg"));
        write_svg(&path, &styled).unwrap();
        outputs.push(fs::read(&path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);

    // And the written file parses back to the same geometry.
    let reparsed = parse_svg(&dir.path().join("run0.svg")).unwrap();
    let original = stylize(&sketch, &params, 31415).unwrap();
    assert_eq!(reparsed.strokes.len(), original.strokes.len());
    for (a, b) in reparsed.strokes.iter().zip(&original.strokes) {
        assert_eq!(a.width, b.width);
        assert_eq!(a.points.len(), b.points.len());
    }
}

proptest! {
    // Sampled surface points always lie inside the mesh bounding box, and
    // sampling is deterministic in the seed.
    #[test]
    fn surface_samples_stay_in_bounds(seed_value in 0u64..1000, n in 1usize..300) {
        let vertices = vec![
            [0.0, 0.0, 0.0],
            [2.0, 0.0, 0.0],
            [0.0, 3.0, 0.0],
            [0.0, 0.0, 4.0],
        ];
        let faces = vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
        let mesh = sketchkit_core::TriangleMesh::new(vertices, faces).unwrap();
        let a = sketchkit_core::sample_surface(&mesh, n, seed_value).unwrap();
        let b = sketchkit_core::sample_surface(&mesh, n, seed_value).unwrap();
        prop_assert_eq!(a.points(), b.points());
        for p in a.points() {
            prop_assert!((-1e-12..=2.0 + 1e-12).contains(&p[0]));
            prop_assert!((-1e-12..=3.0 + 1e-12).contains(&p[1]));
            prop_assert!((-1e-12..=4.0 + 1e-12).contains(&p[2]));
        }
    }
}
