//! Geometry, sketch-processing, and evaluation primitives for sketch-based
//! 3D modeling pipelines: stochastic sketch stylization, viewpoint sampling,
//! sparse mask labeling, embedding-regression losses, and point-cloud
//! reconstruction metrics. Everything randomized is seeded and reproducible.

// Validation guards are written `!(x > 0.0)` on purpose: the negated form
// also rejects NaN, which `x <= 0.0` would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod geometry;
pub mod mask;
pub mod metrics;
pub mod regression;
pub mod seed;
pub mod sketch;
pub mod viewpoints;

pub use error::{Error, Result};
pub use geometry::{
    align_to_reference, dist2, load_obj, normalize_unit, sample_surface, AlignMode, Point3,
    PointCloud, TriangleMesh,
};
pub use mask::{
    mask_metrics, propagate_labels, sample_labels, BinaryMask, MaskReport, SparseLabelSet,
};
pub use metrics::{
    chamfer_distance, chamfer_distance_with, emd_exact, evaluate_pair, fscore, Backend,
    EvalOptions, FScore, MetricReport, Reduce,
};
pub use regression::{
    cd_to_prob, emb_to_prob, finite_difference_grad, regression_loss, sigma_from_dataset,
    EmbeddingBatch, LossReport, ShapeDistanceMatrix,
};
pub use sketch::{
    parse_svg, rasterize, stylize, stylize_traced, write_svg, Point2, Sketch, Stroke,
    StrokeTrace, StylizeParams,
};
pub use viewpoints::{
    base_viewpoints, dataset_viewpoints, perturb, select_test_viewpoint, CameraRecord, Viewpoint,
};
