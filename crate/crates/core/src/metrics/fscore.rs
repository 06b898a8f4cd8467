use crate::error::{Error, Result};
use crate::geometry::{dist2, PointCloud};
use crate::metrics::kdtree::KdTree;

/// Precision/recall/F-score between a prediction and a reference at a
/// distance threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FScore {
    /// Fraction of predicted points within `threshold` of some reference point.
    pub precision: f64,
    /// Fraction of reference points within `threshold` of some predicted point.
    pub recall: f64,
    /// Harmonic mean of precision and recall; 0 when both are 0.
    pub fscore: f64,
    pub threshold: f64,
}

fn fraction_within(from: &PointCloud, to: &PointCloud, threshold: f64) -> f64 {
    let t2 = threshold * threshold;
    let hits = if from.len().saturating_mul(to.len()) > 1_000_000 {
        let tree = KdTree::build(to.points());
        from.points()
            .iter()
            .filter(|p| tree.nearest_dist2(**p) <= t2)
            .count()
    } else {
        from.points()
            .iter()
            .filter(|p| {
                to.points()
                    .iter()
                    .map(|q| dist2(**p, *q))
                    .fold(f64::INFINITY, f64::min)
                    <= t2
            })
            .count()
    };
    hits as f64 / from.len() as f64
}

/// Compute precision, recall, and their harmonic mean. The distance
/// comparison is inclusive: a point exactly at `threshold` counts as matched.
pub fn fscore(pred: &PointCloud, reference: &PointCloud, threshold: f64) -> Result<FScore> {
    if pred.is_empty() || reference.is_empty() {
        return Err(Error::EmptyCloud);
    }
    if !(threshold > 0.0) || !threshold.is_finite() {
        return Err(Error::InvalidParam(format!(
            "threshold must be positive and finite, got {threshold}"
        )));
    }
    let precision = fraction_within(pred, reference, threshold);
    let recall = fraction_within(reference, pred, threshold);
    let fscore = if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    };
    Ok(FScore {
        precision,
        recall,
        fscore,
        threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cloud(pts: &[[f64; 3]]) -> PointCloud {
        PointCloud::new(pts.to_vec()).unwrap()
    }

    #[test]
    fn identical_clouds_are_perfect() {
        let a = cloud(&[[0.0; 3], [1.0, 2.0, 3.0], [4.0, 5.0, 6.0]]);
        let s = fscore(&a, &a, 0.01).unwrap();
        assert_eq!((s.precision, s.recall, s.fscore), (1.0, 1.0, 1.0));
    }

    #[test]
    fn distant_clouds_are_zero() {
        let a = cloud(&[[0.0; 3]]);
        let b = cloud(&[[10.0, 0.0, 0.0]]);
        let s = fscore(&a, &b, 0.01).unwrap();
        assert_eq!((s.precision, s.recall, s.fscore), (0.0, 0.0, 0.0));
    }

    #[test]
    fn half_matched_prediction() {
        // Two pred points sit on ref points, two are far away; every ref
        // point has a match → precision 0.5, recall 1.0, F = 2/3.
        let pred = cloud(&[
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [5.0, 5.0, 5.0],
            [6.0, 6.0, 6.0],
        ]);
        let reference = cloud(&[[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]]);
        let s = fscore(&pred, &reference, 0.01).unwrap();
        assert_eq!(s.precision, 0.5);
        assert_eq!(s.recall, 1.0);
        assert!((s.fscore - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn threshold_is_inclusive() {
        let a = cloud(&[[0.0; 3]]);
        let b = cloud(&[[0.01, 0.0, 0.0]]);
        let s = fscore(&a, &b, 0.01).unwrap();
        assert_eq!(s.precision, 1.0);
        assert_eq!(s.recall, 1.0);
    }

    #[test]
    fn nonpositive_threshold_is_error() {
        let a = cloud(&[[0.0; 3]]);
        assert!(fscore(&a, &a, 0.0).is_err());
        assert!(fscore(&a, &a, -1.0).is_err());
        assert!(fscore(&a, &a, f64::NAN).is_err());
    }
}
