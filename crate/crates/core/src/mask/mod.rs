//! Binary foreground masks: sparse ground-truth label sampling, mask-quality
//! metrics, and a shortest-path label-propagation baseline.

mod io;

pub use io::{read_labels, read_pgm, write_labels, write_pgm};

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand_distr::{Distribution, Geometric, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A row-major H×W boolean grid; true = foreground.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMask {
    bits: Vec<bool>,
    h: usize,
    w: usize,
}

impl BinaryMask {
    /// All-false mask with the given dimensions.
    pub fn new(h: usize, w: usize) -> Result<Self> {
        if h == 0 || w == 0 {
            return Err(Error::InvalidParam(format!(
                "mask dimensions must be positive, got {h}×{w}"
            )));
        }
        Ok(BinaryMask {
            bits: vec![false; h * w],
            h,
            w,
        })
    }

    /// Build by evaluating `f(row, col)` over the grid.
    pub fn from_fn(h: usize, w: usize, f: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut m = BinaryMask::new(h, w)?;
        for r in 0..h {
            for c in 0..w {
                m.bits[r * w + c] = f(r, c);
            }
        }
        Ok(m)
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.h, self.w)
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.h && c < self.w, "mask index ({r},{c}) out of range");
        self.bits[r * self.w + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        assert!(r < self.h && c < self.w, "mask index ({r},{c}) out of range");
        self.bits[r * self.w + c] = v;
    }

    /// Number of true pixels.
    pub fn count_true(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

/// Sparse per-class pixel labels, `[row, col]` each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseLabelSet {
    pub foreground: Vec<[usize; 2]>,
    pub background: Vec<[usize; 2]>,
}

/// IoU / precision / recall of a predicted mask against ground truth.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaskReport {
    pub iou: f64,
    pub precision: f64,
    pub recall: f64,
}

// Rejection-sampling retry budget for one label position.
const POSITION_RETRY_CAP: usize = 100_000;

/// Draw sparse foreground/background labels from a ground-truth mask. Label
/// counts per class follow a number-of-trials Geometric(1/8) (support ≥ 1,
/// mean 8); positions are Gaussian around the image center with σ = half the
/// image size per axis, rounded to the nearest pixel, redrawn when off-image
/// or on the wrong class.
pub fn sample_labels(gt: &BinaryMask, seed: u64) -> Result<SparseLabelSet> {
    let n_true = gt.count_true();
    let (h, w) = gt.dims();
    if n_true == 0 {
        return Err(Error::UniformMask("all-background"));
    }
    if n_true == h * w {
        return Err(Error::UniformMask("all-foreground"));
    }

    let mut rng = crate::seed::rng(seed);
    let count_dist = Geometric::new(0.125).expect("valid geometric parameter");
    // Number-of-trials convention: failures before first success, plus one.
    let n_fg = count_dist.sample(&mut rng) as usize + 1;
    let n_bg = count_dist.sample(&mut rng) as usize + 1;

    let row_dist = Normal::new(0.5 * h as f64, 0.5 * h as f64).expect("valid normal");
    let col_dist = Normal::new(0.5 * w as f64, 0.5 * w as f64).expect("valid normal");

    let draw_class = |rng: &mut rand_chacha::ChaCha8Rng, want: bool| -> Result<[usize; 2]> {
        for _ in 0..POSITION_RETRY_CAP {
            let r = row_dist.sample(rng).round();
            let c = col_dist.sample(rng).round();
            if r < 0.0 || c < 0.0 || r >= h as f64 || c >= w as f64 {
                continue;
            }
            let (ri, ci) = (r as usize, c as usize);
            if gt.get(ri, ci) == want {
                return Ok([ri, ci]);
            }
        }
        Err(Error::RetryExhausted(POSITION_RETRY_CAP))
    };

    let mut foreground = Vec::with_capacity(n_fg);
    for _ in 0..n_fg {
        foreground.push(draw_class(&mut rng, true)?);
    }
    let mut background = Vec::with_capacity(n_bg);
    for _ in 0..n_bg {
        background.push(draw_class(&mut rng, false)?);
    }
    Ok(SparseLabelSet {
        foreground,
        background,
    })
}

/// IoU, precision, and recall between a predicted and a ground-truth mask.
/// Empty-denominator conventions: a metric whose denominator is empty is 1
/// when the other set is also empty and 0 otherwise; IoU of two empty masks
/// is 1.
pub fn mask_metrics(pred: &BinaryMask, gt: &BinaryMask) -> Result<MaskReport> {
    if pred.dims() != gt.dims() {
        return Err(Error::DimMismatch(format!(
            "mask dims {:?} vs {:?}",
            pred.dims(),
            gt.dims()
        )));
    }
    let mut inter = 0usize;
    let mut n_pred = 0usize;
    let mut n_gt = 0usize;
    for (p, g) in pred.bits.iter().zip(&gt.bits) {
        inter += (*p && *g) as usize;
        n_pred += *p as usize;
        n_gt += *g as usize;
    }
    let union = n_pred + n_gt - inter;
    let iou = if union > 0 {
        inter as f64 / union as f64
    } else {
        1.0
    };
    let precision = if n_pred > 0 {
        inter as f64 / n_pred as f64
    } else if n_gt == 0 {
        1.0
    } else {
        0.0
    };
    let recall = if n_gt > 0 {
        inter as f64 / n_gt as f64
    } else if n_pred == 0 {
        1.0
    } else {
        0.0
    };
    Ok(MaskReport {
        iou,
        precision,
        recall,
    })
}

/// Per-pixel entry cost paid when a shortest path steps onto a stroke pixel.
pub const DEFAULT_STROKE_COST: u64 = 50;

/// [`propagate_labels_with`] at the default stroke crossing cost.
pub fn propagate_labels(raster: &BinaryMask, labels: &SparseLabelSet) -> Result<BinaryMask> {
    propagate_labels_with(raster, labels, DEFAULT_STROKE_COST)
}

/// Classify every pixel by its cheapest-reaching label under 4-connected
/// shortest paths, where stepping onto a free pixel costs 1 and onto a
/// stroke pixel costs `stroke_cost`. Ties go to foreground.
pub fn propagate_labels_with(
    raster: &BinaryMask,
    labels: &SparseLabelSet,
    stroke_cost: u64,
) -> Result<BinaryMask> {
    if labels.foreground.is_empty() || labels.background.is_empty() {
        return Err(Error::MissingLabelClass);
    }
    let (h, w) = raster.dims();
    for &[r, c] in labels.foreground.iter().chain(&labels.background) {
        if r >= h || c >= w {
            return Err(Error::LabelOutOfBounds { row: r, col: c, h, w });
        }
    }
    let dist_fg = grid_dijkstra(raster, &labels.foreground, stroke_cost);
    let dist_bg = grid_dijkstra(raster, &labels.background, stroke_cost);
    let mut out = BinaryMask::new(h, w)?;
    for i in 0..h * w {
        out.bits[i] = dist_fg[i] <= dist_bg[i];
    }
    Ok(out)
}

fn grid_dijkstra(raster: &BinaryMask, sources: &[[usize; 2]], stroke_cost: u64) -> Vec<u64> {
    let (h, w) = raster.dims();
    let mut dist = vec![u64::MAX; h * w];
    let mut heap: BinaryHeap<Reverse<(u64, usize)>> = BinaryHeap::new();
    for &[r, c] in sources {
        let i = r * w + c;
        if dist[i] != 0 {
            dist[i] = 0;
            heap.push(Reverse((0, i)));
        }
    }
    while let Some(Reverse((d, i))) = heap.pop() {
        if d > dist[i] {
            continue;
        }
        let (r, c) = (i / w, i % w);
        let mut relax = |nr: usize, nc: usize, heap: &mut BinaryHeap<Reverse<(u64, usize)>>| {
            let j = nr * w + nc;
            let step = if raster.bits[j] { stroke_cost } else { 1 };
            let nd = d + step;
            if nd < dist[j] {
                dist[j] = nd;
                heap.push(Reverse((nd, j)));
            }
        };
        if r > 0 {
            relax(r - 1, c, &mut heap);
        }
        if r + 1 < h {
            relax(r + 1, c, &mut heap);
        }
        if c > 0 {
            relax(r, c - 1, &mut heap);
        }
        if c + 1 < w {
            relax(r, c + 1, &mut heap);
        }
    }
    dist
}
