//! Point-cloud reconstruction metrics: Chamfer distance, exact earth mover's
//! distance, and threshold F-score, plus the batch evaluator that applies the
//! standard sampling/normalization protocol.

mod chamfer;
mod emd;
mod fscore;
pub(crate) mod kdtree;

pub use chamfer::{chamfer_distance, chamfer_distance_with, Backend, Reduce};
pub use emd::emd_exact;
pub use fscore::{fscore, FScore};
pub use kdtree::KdTree;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{align_to_reference, sample_surface, AlignMode, PointCloud, TriangleMesh};

/// All metrics for one prediction/reference pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub chamfer: f64,
    /// Absent when the compared subsets have different sizes.
    pub emd: Option<f64>,
    pub fscore: f64,
    pub precision: f64,
    pub recall: f64,
    pub threshold: f64,
}

/// Knobs for [`evaluate_pair`]. Defaults follow the standard protocol:
/// 2048 predicted samples, 2048-point subsets for the assignment metric,
/// threshold 0.01, sum-form Chamfer, centroid+scale alignment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    /// Points sampled from the predicted mesh surface.
    pub pred_samples: usize,
    /// Size of the subsets compared by the assignment metric.
    pub emd_samples: usize,
    /// F-score distance threshold.
    pub threshold: f64,
    pub reduce: Reduce,
    pub align: AlignMode,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            pred_samples: 2048,
            emd_samples: 2048,
            threshold: 0.01,
            reduce: Reduce::Sum,
            align: AlignMode::CentroidScale,
        }
    }
}

/// Evaluate a predicted mesh against a reference cloud: sample the surface,
/// align to the reference, then compute Chamfer (full reference), the
/// assignment metric (first `emd_samples` points of each side, skipped if the
/// subset sizes differ), and the F-score. Deterministic given the seed.
pub fn evaluate_pair(
    pred_mesh: &TriangleMesh,
    ref_cloud: &PointCloud,
    seed: u64,
    opts: &EvalOptions,
) -> Result<MetricReport> {
    let pred = sample_surface(pred_mesh, opts.pred_samples, seed)?;
    let aligned = match opts.align {
        AlignMode::None => pred,
        AlignMode::CentroidScale => align_to_reference(&pred, ref_cloud)?,
    };

    let chamfer = chamfer_distance_with(&aligned, ref_cloud, opts.reduce, Backend::Auto)?;

    let emd_pred = aligned.head(opts.emd_samples);
    let emd_ref = ref_cloud.head(opts.emd_samples);
    let emd = if !emd_pred.is_empty() && emd_pred.len() == emd_ref.len() {
        Some(emd_exact(&emd_pred, &emd_ref)?)
    } else {
        None
    };

    let fs = fscore(&aligned, ref_cloud, opts.threshold)?;

    Ok(MetricReport {
        chamfer,
        emd,
        fscore: fs.fscore,
        precision: fs.precision,
        recall: fs.recall,
        threshold: opts.threshold,
    })
}
