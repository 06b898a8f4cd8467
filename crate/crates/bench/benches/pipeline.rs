use criterion::{criterion_group, criterion_main, Criterion};
use rand::Rng;
use sketchkit_core::{
    propagate_labels, sample_labels, sample_surface, seed, stylize, BinaryMask, Sketch, Stroke,
    StylizeParams, TriangleMesh,
};
use std::hint::black_box;

fn cube() -> TriangleMesh {
    let v = vec![
        [-1.0, -1.0, -1.0],
        [1.0, -1.0, -1.0],
        [1.0, 1.0, -1.0],
        [-1.0, 1.0, -1.0],
        [-1.0, -1.0, 1.0],
        [1.0, -1.0, 1.0],
        [1.0, 1.0, 1.0],
        [-1.0, 1.0, 1.0],
    ];
    let f = vec![
        [0, 1, 2],
        [0, 2, 3],
        [4, 7, 6],
        [4, 6, 5],
        [0, 4, 5],
        [0, 5, 1],
        [1, 5, 6],
        [1, 6, 2],
        [2, 6, 7],
        [2, 7, 3],
        [3, 7, 4],
        [3, 4, 0],
    ];
    TriangleMesh::new(v, f).unwrap()
}

fn hundred_stroke_sketch() -> Sketch {
    let mut rng = seed::rng(10);
    let strokes = (0..100)
        .map(|_| {
            let n = rng.random_range(2..=12);
            let pts: Vec<[f64; 2]> = (0..n)
                .map(|_| [rng.random_range(5.0..251.0), rng.random_range(5.0..251.0)])
                .collect();
            Stroke::new(pts, 1.5).unwrap()
        })
        .collect();
    Sketch {
        strokes,
        canvas: (256.0, 256.0),
    }
}

fn bench_sampling(c: &mut Criterion) {
    let mesh = cube();
    c.bench_function("sample_surface/10000", |bench| {
        bench.iter(|| sample_surface(black_box(&mesh), 10_000, 7).unwrap())
    });
}

fn bench_stylize(c: &mut Criterion) {
    let sketch = hundred_stroke_sketch();
    let params = StylizeParams::default();
    c.bench_function("stylize/100-strokes", |bench| {
        bench.iter(|| stylize(black_box(&sketch), &params, 11).unwrap())
    });
}

fn bench_svg_round_trip(c: &mut Criterion) {
    let sketch = stylize(&hundred_stroke_sketch(), &StylizeParams::default(), 12).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bench.svg");
    sketchkit_core::write_svg(&path, &sketch).unwrap();
    c.bench_function("svg/write-100-strokes", |bench| {
        bench.iter(|| sketchkit_core::write_svg(black_box(&path), black_box(&sketch)).unwrap())
    });
    c.bench_function("svg/parse-100-strokes", |bench| {
        bench.iter(|| sketchkit_core::parse_svg(black_box(&path)).unwrap())
    });
}

fn bench_propagate(c: &mut Criterion) {
    let mut rng = seed::rng(13);
    let mut raster = BinaryMask::new(128, 128).unwrap();
    let mut gt = BinaryMask::new(128, 128).unwrap();
    for r in 0..128 {
        for col in 0..128 {
            raster.set(r, col, rng.random_bool(0.1));
            gt.set(r, col, col >= 64);
        }
    }
    let labels = sample_labels(&gt, 14).unwrap();
    c.bench_function("propagate/128x128", |bench| {
        bench.iter(|| propagate_labels(black_box(&raster), black_box(&labels)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_sampling,
    bench_stylize,
    bench_svg_round_trip,
    bench_propagate
);
criterion_main!(benches);
