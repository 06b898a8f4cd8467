//! Vector sketches: SVG parsing/writing, stochastic stroke stylization
//! (global transform, coherent local noise, over-sketching, width jitter),
//! and rasterization to binary images.

mod raster;
mod stylize;
mod svg;

pub use raster::rasterize;
pub use stylize::{stylize, stylize_traced, subdivide_polyline, StrokeTrace};
pub use svg::{parse_svg, write_svg};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A 2D point in canvas pixels.
pub type Point2 = [f64; 2];

/// One polyline stroke with a uniform rendering width.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stroke {
    /// Ordered polyline vertices; at least two.
    pub points: Vec<Point2>,
    /// Rendering width in pixels; positive.
    pub width: f64,
}

impl Stroke {
    pub fn new(points: Vec<Point2>, width: f64) -> Result<Stroke> {
        let s = Stroke { points, width };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.points.len() < 2 {
            return Err(Error::InvalidStroke);
        }
        if !(self.width > 0.0) || !self.width.is_finite() {
            return Err(Error::InvalidStroke);
        }
        if self.points.iter().any(|p| !p[0].is_finite() || !p[1].is_finite()) {
            return Err(Error::InvalidStroke);
        }
        Ok(())
    }

    /// Mean of the polyline vertices.
    pub fn centroid(&self) -> Point2 {
        let mut c = [0.0, 0.0];
        for p in &self.points {
            c[0] += p[0];
            c[1] += p[1];
        }
        let n = self.points.len() as f64;
        [c[0] / n, c[1] / n]
    }

    /// Total polyline length.
    pub fn arc_length(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| ((w[1][0] - w[0][0]).powi(2) + (w[1][1] - w[0][1]).powi(2)).sqrt())
            .sum()
    }
}

/// A vector sketch: strokes on a fixed-size canvas (pixels).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sketch {
    pub strokes: Vec<Stroke>,
    /// Canvas (width, height) in pixels.
    pub canvas: (f64, f64),
}

impl Sketch {
    /// Empty sketch on the standard 256×256 canvas.
    pub fn empty() -> Sketch {
        Sketch {
            strokes: Vec::new(),
            canvas: (256.0, 256.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.canvas.0 > 0.0) || !(self.canvas.1 > 0.0) {
            return Err(Error::InvalidParam(format!(
                "canvas dimensions must be positive, got {:?}",
                self.canvas
            )));
        }
        for s in &self.strokes {
            s.validate()?;
        }
        Ok(())
    }
}

/// Stylization knobs. Defaults are the standard stylization recipe:
/// rotation up to 2.5°, per-axis scale in [0.9, 1.1], translation inside a
/// 2.5 px disk, coherent local noise up to 1.3 px with a 16 px wavelength,
/// up to 2 traces per stroke, and stroke width from Normal(2.5, var 1.5).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StylizeParams {
    /// Maximum rotation magnitude, degrees.
    pub rot_max: f64,
    /// Per-axis scale factor range `[lo, hi]`.
    pub scale_range: [f64; 2],
    /// Translation disk radius, px.
    pub trans_radius: f64,
    /// Maximum local-noise offset per component, px.
    pub local_noise_max: f64,
    /// Over-sketching: trace count drawn uniformly from `{1, …, max_traces}`.
    pub max_traces: u32,
    /// Mean of the stroke-width normal, px.
    pub width_mean: f64,
    /// Variance of the stroke-width normal, px².
    pub width_var: f64,
    /// Arc-length spacing of local-noise control offsets, px.
    pub noise_wavelength: f64,
}

impl Default for StylizeParams {
    fn default() -> Self {
        StylizeParams {
            rot_max: 2.5,
            scale_range: [0.9, 1.1],
            trans_radius: 2.5,
            local_noise_max: 1.3,
            max_traces: 2,
            width_mean: 2.5,
            width_var: 1.5,
            noise_wavelength: 16.0,
        }
    }
}

impl StylizeParams {
    /// The configuration that reproduces input geometry unchanged.
    pub fn identity() -> Self {
        StylizeParams {
            rot_max: 0.0,
            scale_range: [1.0, 1.0],
            trans_radius: 0.0,
            local_noise_max: 0.0,
            max_traces: 1,
            width_mean: 2.5,
            width_var: 0.0,
            noise_wavelength: 16.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParam(msg));
        if !(self.rot_max >= 0.0) {
            return bad(format!("rot_max must be ≥ 0, got {}", self.rot_max));
        }
        if !(self.scale_range[0] <= self.scale_range[1]) {
            return bad(format!("scale_range lo > hi: {:?}", self.scale_range));
        }
        if !(self.trans_radius >= 0.0) {
            return bad(format!("trans_radius must be ≥ 0, got {}", self.trans_radius));
        }
        if !(self.local_noise_max >= 0.0) {
            return bad(format!(
                "local_noise_max must be ≥ 0, got {}",
                self.local_noise_max
            ));
        }
        if self.max_traces < 1 {
            return bad("max_traces must be ≥ 1".into());
        }
        if !(self.width_mean > 0.0) {
            return bad(format!("width_mean must be > 0, got {}", self.width_mean));
        }
        if !(self.width_var >= 0.0) {
            return bad(format!("width_var must be ≥ 0, got {}", self.width_var));
        }
        if !(self.noise_wavelength > 0.0) {
            return bad(format!(
                "noise_wavelength must be > 0, got {}",
                self.noise_wavelength
            ));
        }
        Ok(())
    }
}
