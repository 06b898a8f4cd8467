use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::seed;
use crate::sketch::{Point2, Sketch, Stroke, StylizeParams};

/// The parameters sampled for one emitted trace, recorded for auditing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrokeTrace {
    /// Index of the input stroke this trace was drawn from.
    pub source_stroke: usize,
    /// Position of this trace among the stroke's traces.
    pub trace_index: u32,
    /// Trace count sampled for the source stroke.
    pub trace_count: u32,
    /// Signed rotation about the stroke centroid, degrees.
    pub rotation_deg: f64,
    /// Per-axis scale factors applied about the centroid.
    pub scale: [f64; 2],
    /// Translation vector, px.
    pub translation: [f64; 2],
    /// Sampled stroke width after clamping, px.
    pub width: f64,
    /// Local-noise control offsets along arc length, px components.
    pub noise_controls: Vec<[f64; 2]>,
}

/// Insert evenly spaced vertices so no segment of the polyline is longer
/// than `max_spacing`. Original vertices are preserved.
pub fn subdivide_polyline(points: &[Point2], max_spacing: f64) -> Vec<Point2> {
    assert!(max_spacing > 0.0, "max_spacing must be positive");
    let mut out = Vec::with_capacity(points.len());
    for w in points.windows(2) {
        let (a, b) = (w[0], w[1]);
        out.push(a);
        let len = ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt();
        let pieces = (len / max_spacing).ceil() as usize;
        for k in 1..pieces {
            let t = k as f64 / pieces as f64;
            out.push([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
        }
    }
    if let Some(last) = points.last() {
        out.push(*last);
    }
    out
}

/// Apply the stochastic stylization and also return the per-trace sampled
/// parameters. Per-stroke RNG streams are derived from (seed, stroke index),
/// so the result is independent of evaluation order.
pub fn stylize_traced(
    sketch: &Sketch,
    params: &StylizeParams,
    seed_value: u64,
) -> Result<(Sketch, Vec<StrokeTrace>)> {
    sketch.validate()?;
    params.validate()?;

    let mut strokes = Vec::new();
    let mut traces = Vec::new();
    for (i, stroke) in sketch.strokes.iter().enumerate() {
        let stroke_seed = seed::derive_indexed(seed_value, "stroke", i as u64);
        let mut rng = seed::rng(stroke_seed);
        let trace_count = rng.random_range(1..=params.max_traces);
        for trace_index in 0..trace_count {
            let (out, trace) =
                stylize_one_trace(stroke, params, &mut rng, i, trace_index, trace_count);
            strokes.push(out);
            traces.push(trace);
        }
    }
    Ok((
        Sketch {
            strokes,
            canvas: sketch.canvas,
        },
        traces,
    ))
}

/// [`stylize_traced`] without the trace records.
pub fn stylize(sketch: &Sketch, params: &StylizeParams, seed_value: u64) -> Result<Sketch> {
    stylize_traced(sketch, params, seed_value).map(|(s, _)| s)
}

fn stylize_one_trace(
    stroke: &Stroke,
    params: &StylizeParams,
    rng: &mut rand_chacha::ChaCha8Rng,
    source_stroke: usize,
    trace_index: u32,
    trace_count: u32,
) -> (Stroke, StrokeTrace) {
    // Global transform draws. Rotation: magnitude in [0, rot_max] with a
    // uniform random sign, about the vertex centroid.
    let rot_mag: f64 = rng.random_range(0.0..=params.rot_max);
    let rot_sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
    let rotation_deg = rot_sign * rot_mag;
    let [lo, hi] = params.scale_range;
    let sx = rng.random_range(lo..=hi);
    let sy = rng.random_range(lo..=hi);
    // Translation uniform over the disk area: radius R·√u.
    let trans_angle = rng.random_range(0.0..std::f64::consts::TAU);
    let trans_r = params.trans_radius * rng.random::<f64>().sqrt();
    let translation = [trans_r * trans_angle.cos(), trans_r * trans_angle.sin()];

    let width = sample_width(params, rng);

    // Rotate, then scale per canvas axis, both about the centroid; then
    // translate.
    let c = stroke.centroid();
    let theta = rotation_deg.to_radians();
    let (sin, cos) = theta.sin_cos();
    let transform = |p: Point2| -> Point2 {
        let (dx, dy) = (p[0] - c[0], p[1] - c[1]);
        let (rx, ry) = (cos * dx - sin * dy, sin * dx + cos * dy);
        [
            c[0] + sx * rx + translation[0],
            c[1] + sy * ry + translation[1],
        ]
    };
    let transformed: Vec<Point2> = stroke.points.iter().map(|p| transform(*p)).collect();

    // Coherent local noise in canvas coordinates along the transformed arc
    // length. Skipped entirely (no subdivision, no draws) when disabled so
    // the identity configuration reproduces the input vertex list.
    let (points, noise_controls) = if params.local_noise_max > 0.0 {
        let pts = subdivide_polyline(&transformed, params.noise_wavelength / 4.0);
        apply_local_noise(pts, params, rng)
    } else {
        (transformed, Vec::new())
    };

    let out = Stroke { points, width };
    let trace = StrokeTrace {
        source_stroke,
        trace_index,
        trace_count,
        rotation_deg,
        scale: [sx, sy],
        translation,
        width,
        noise_controls,
    };
    (out, trace)
}

fn sample_width(params: &StylizeParams, rng: &mut rand_chacha::ChaCha8Rng) -> f64 {
    let sigma = params.width_var.sqrt();
    let normal = Normal::new(params.width_mean, sigma).expect("validated width parameters");
    let hi = (params.width_mean + 3.0 * sigma).max(0.5);
    normal.sample(rng).clamp(0.5, hi)
}

/// Offset every vertex by a smooth field over arc length: control offsets
/// every `noise_wavelength` px with components uniform in
/// [0, local_noise_max], cosine-interpolated between controls.
fn apply_local_noise(
    points: Vec<Point2>,
    params: &StylizeParams,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> (Vec<Point2>, Vec<[f64; 2]>) {
    let wavelength = params.noise_wavelength;
    let mut arc = Vec::with_capacity(points.len());
    let mut s = 0.0;
    arc.push(0.0);
    for w in points.windows(2) {
        s += ((w[1][0] - w[0][0]).powi(2) + (w[1][1] - w[0][1]).powi(2)).sqrt();
        arc.push(s);
    }
    let total = s;

    let n_controls = (total / wavelength).floor() as usize + 2;
    let controls: Vec<[f64; 2]> = (0..n_controls)
        .map(|_| {
            [
                rng.random_range(0.0..=params.local_noise_max),
                rng.random_range(0.0..=params.local_noise_max),
            ]
        })
        .collect();

    let noised = points
        .into_iter()
        .zip(&arc)
        .map(|(p, &s)| {
            let k = ((s / wavelength).floor() as usize).min(n_controls - 2);
            let t = ((s - k as f64 * wavelength) / wavelength).clamp(0.0, 1.0);
            let w = (1.0 - (std::f64::consts::PI * t).cos()) / 2.0;
            let (a, b) = (controls[k], controls[k + 1]);
            [
                p[0] + a[0] + (b[0] - a[0]) * w,
                p[1] + a[1] + (b[1] - a[1]) * w,
            ]
        })
        .collect();
    (noised, controls)
}
