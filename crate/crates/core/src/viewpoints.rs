//! Camera viewpoint sampling: 8 equispaced base views per shape plus 5
//! bounded Gaussian perturbations of each, and the seeded test-view choice.

use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed;

pub const BASE_ELEVATION: f64 = 10.0;
pub const BASE_DISTANCE: f64 = 1.5;
pub const AZIMUTH_STEP: f64 = 45.0;
pub const BASE_COUNT: usize = 8;
pub const PERTURBED_PER_BASE: usize = 5;

// Gaussian perturbation parameters and their acceptance bounds.
const ANGLE_SIGMA: f64 = 7.0;
const DEV_MIN: f64 = 5.0;
const DEV_MAX: f64 = 15.0;
const DIST_SIGMA: f64 = 0.05;
const DIST_MIN: f64 = 1.4;
const DIST_MAX: f64 = 1.6;
const RETRY_CAP: usize = 10_000;

/// Spherical camera pose. Angles in degrees, azimuth normalized to [0, 360).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Viewpoint {
    pub azimuth: f64,
    pub elevation: f64,
    pub distance: f64,
    /// Which of the 8 base views this view belongs to.
    pub base_id: u8,
    pub is_base: bool,
}

/// Circular distance between two azimuths, degrees in [0, 180].
pub fn circular_deviation(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(360.0);
    d.min(360.0 - d)
}

impl Viewpoint {
    /// Check the structural invariants for this pose.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParam(msg));
        if self.base_id as usize >= BASE_COUNT {
            return bad(format!("base_id {} out of range", self.base_id));
        }
        if !(0.0..360.0).contains(&self.azimuth) {
            return bad(format!("azimuth {} outside [0,360)", self.azimuth));
        }
        let base_az = AZIMUTH_STEP * self.base_id as f64;
        if self.is_base {
            if self.elevation != BASE_ELEVATION
                || self.azimuth != base_az
                || self.distance != BASE_DISTANCE
            {
                return bad(format!("malformed base viewpoint {self:?}"));
            }
        } else {
            let el_dev = (self.elevation - BASE_ELEVATION).abs();
            let az_dev = circular_deviation(self.azimuth, base_az);
            if !(DEV_MIN..=DEV_MAX).contains(&el_dev) {
                return bad(format!("elevation deviation {el_dev} outside [5,15]"));
            }
            if !(DEV_MIN..=DEV_MAX).contains(&az_dev) {
                return bad(format!("azimuth deviation {az_dev} outside [5,15]"));
            }
            if !(DIST_MIN..=DIST_MAX).contains(&self.distance) {
                return bad(format!("distance {} outside [1.4,1.6]", self.distance));
            }
        }
        Ok(())
    }
}

/// The 8 base views: azimuths 0°,45°,…,315°, elevation 10°, distance 1.5.
pub fn base_viewpoints() -> Vec<Viewpoint> {
    (0..BASE_COUNT)
        .map(|k| Viewpoint {
            azimuth: AZIMUTH_STEP * k as f64,
            elevation: BASE_ELEVATION,
            distance: BASE_DISTANCE,
            base_id: k as u8,
            is_base: true,
        })
        .collect()
}

fn sample_bounded(
    rng: &mut rand_chacha::ChaCha8Rng,
    dist: &Normal<f64>,
    accept: impl Fn(f64) -> bool,
) -> f64 {
    for _ in 0..RETRY_CAP {
        let x = dist.sample(rng);
        if accept(x) {
            return x;
        }
    }
    // The acceptance sets carry ~46% (angles) and ~95% (distance) of the
    // mass; exhausting the cap is a logic error, not an input condition.
    panic!("rejection sampling exhausted {RETRY_CAP} retries");
}

/// Five perturbed views of a base view. Elevation and azimuth are Normal
/// around the base value with σ = 7°, each redrawn until its absolute
/// deviation lies in [5°, 15°] (azimuth measured circularly); distance is
/// Normal(1.5, 0.05) redrawn until inside [1.4, 1.6].
pub fn perturb(base: &Viewpoint, seed_value: u64) -> Vec<Viewpoint> {
    assert!(base.is_base, "perturb requires a base viewpoint");
    let mut rng = seed::rng(seed_value);
    let el_dist = Normal::new(BASE_ELEVATION, ANGLE_SIGMA).expect("valid normal");
    let az_dist = Normal::new(base.azimuth, ANGLE_SIGMA).expect("valid normal");
    let d_dist = Normal::new(BASE_DISTANCE, DIST_SIGMA).expect("valid normal");
    (0..PERTURBED_PER_BASE)
        .map(|_| {
            let elevation = sample_bounded(&mut rng, &el_dist, |el| {
                let dev = (el - BASE_ELEVATION).abs();
                (DEV_MIN..=DEV_MAX).contains(&dev)
            });
            let azimuth = sample_bounded(&mut rng, &az_dist, |az| {
                let dev = circular_deviation(az, base.azimuth);
                (DEV_MIN..=DEV_MAX).contains(&dev)
            })
            .rem_euclid(360.0);
            let distance = sample_bounded(&mut rng, &d_dist, |d| (DIST_MIN..=DIST_MAX).contains(&d));
            Viewpoint {
                azimuth,
                elevation,
                distance,
                base_id: base.base_id,
                is_base: false,
            }
        })
        .collect()
}

/// All 48 views for one shape: the 8 bases first, then each base's 5
/// perturbations in base order. Keyed by (seed, shape_id), so manifest order
/// and other shapes never affect the result.
pub fn dataset_viewpoints(shape_id: &str, seed_value: u64) -> Vec<Viewpoint> {
    let shape_seed = seed::derive(seed::derive(seed_value, "views"), shape_id);
    let bases = base_viewpoints();
    let mut out = bases.clone();
    for base in &bases {
        let base_seed = seed::derive_indexed(shape_seed, "perturb", base.base_id as u64);
        out.extend(perturb(base, base_seed));
    }
    out
}

/// The fixed test-time viewpoint index for a shape: uniform over
/// [0, n_choices), stable across runs for a fixed seed.
pub fn select_test_viewpoint(shape_id: &str, n_choices: usize, seed_value: u64) -> usize {
    assert!(n_choices >= 1, "n_choices must be positive");
    let mut rng = seed::rng(seed::derive(seed::derive(seed_value, "test-view"), shape_id));
    rand::Rng::random_range(&mut rng, 0..n_choices)
}

/// One camera row of the JSON manifest consumed by external renderers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CameraRecord {
    pub shape_id: String,
    pub viewpoint_id: usize,
    pub azimuth_deg: f64,
    pub elevation_deg: f64,
    pub distance: f64,
    pub is_base: bool,
    pub base_id: u8,
}

impl CameraRecord {
    pub fn from_viewpoint(shape_id: &str, viewpoint_id: usize, v: &Viewpoint) -> CameraRecord {
        CameraRecord {
            shape_id: shape_id.to_string(),
            viewpoint_id,
            azimuth_deg: v.azimuth,
            elevation_deg: v.elevation,
            distance: v.distance,
            is_base: v.is_base,
            base_id: v.base_id,
        }
    }
}
