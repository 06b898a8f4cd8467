use crate::error::{Error, Result};
use crate::geometry::{dist2, Point3, PointCloud};
use crate::metrics::kdtree::KdTree;

/// How per-point squared distances are combined into a Chamfer value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Reduce {
    /// Sum over both directions (scales with point count).
    #[default]
    Sum,
    /// Mean within each direction, then summed — density independent.
    Mean,
}

impl std::str::FromStr for Reduce {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "sum" => Ok(Reduce::Sum),
            "mean" => Ok(Reduce::Mean),
            other => Err(format!("unknown reduce mode '{other}' (expected sum|mean)")),
        }
    }
}

impl std::fmt::Display for Reduce {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Reduce::Sum => "sum",
            Reduce::Mean => "mean",
        })
    }
}

/// Nearest-neighbor backend selection for [`chamfer_distance_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    /// Pick by problem size: brute force for small products, kd-tree above.
    #[default]
    Auto,
    Brute,
    KdTree,
}

// Below this |A|·|B| product the O(n·m) scan beats building two trees.
const BRUTE_FORCE_LIMIT: usize = 1_000_000;

fn directed_sum_brute(from: &[Point3], to: &[Point3]) -> f64 {
    from.iter()
        .map(|p| {
            to.iter()
                .map(|q| dist2(*p, *q))
                .fold(f64::INFINITY, f64::min)
        })
        .sum()
}

fn directed_sum_kd(from: &[Point3], to: &KdTree) -> f64 {
    from.iter().map(|p| to.nearest_dist2(*p)).sum()
}

/// Symmetric Chamfer distance: each direction accumulates nearest-neighbor
/// squared distances, reduced per [`Reduce`]. Both backends compute exact
/// nearest neighbors, so the result is independent of the backend.
pub fn chamfer_distance_with(
    a: &PointCloud,
    b: &PointCloud,
    reduce: Reduce,
    backend: Backend,
) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let (pa, pb) = (a.points(), b.points());
    let use_kd = match backend {
        Backend::Brute => false,
        Backend::KdTree => true,
        Backend::Auto => pa.len().saturating_mul(pb.len()) > BRUTE_FORCE_LIMIT,
    };
    let (sum_ab, sum_ba) = if use_kd {
        let tree_b = KdTree::build(pb);
        let tree_a = KdTree::build(pa);
        (directed_sum_kd(pa, &tree_b), directed_sum_kd(pb, &tree_a))
    } else {
        (directed_sum_brute(pa, pb), directed_sum_brute(pb, pa))
    };
    Ok(match reduce {
        Reduce::Sum => sum_ab + sum_ba,
        Reduce::Mean => sum_ab / pa.len() as f64 + sum_ba / pb.len() as f64,
    })
}

/// [`chamfer_distance_with`] using the sum reduction and automatic backend.
pub fn chamfer_distance(a: &PointCloud, b: &PointCloud) -> Result<f64> {
    chamfer_distance_with(a, b, Reduce::Sum, Backend::Auto)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cloud(pts: &[Point3]) -> PointCloud {
        PointCloud::new(pts.to_vec()).unwrap()
    }

    #[test]
    fn two_point_hand_value() {
        // A = {(0,0,0),(1,0,0)}, B = {(0,0,1),(1,0,0)}:
        // A->B: 1 + 0; B->A: 1 + 0; sum form = 2.
        let a = cloud(&[[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]]);
        let b = cloud(&[[0.0, 0.0, 1.0], [1.0, 0.0, 0.0]]);
        assert_eq!(chamfer_distance(&a, &b).unwrap(), 2.0);
        assert_eq!(
            chamfer_distance_with(&a, &b, Reduce::Mean, Backend::Auto).unwrap(),
            1.0
        );
    }

    #[test]
    fn identical_clouds_are_zero() {
        let a = cloud(&[[0.5, 0.25, -1.0], [2.0, 3.0, 4.0], [0.0, 0.0, 0.0]]);
        assert_eq!(chamfer_distance(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn symmetric_in_arguments() {
        let a = cloud(&[[0.0, 0.0, 0.0], [1.0, 2.0, 3.0], [-1.0, 0.5, 0.25]]);
        let b = cloud(&[[0.1, 0.0, 0.0], [1.0, 2.5, 3.0]]);
        assert_eq!(
            chamfer_distance(&a, &b).unwrap(),
            chamfer_distance(&b, &a).unwrap()
        );
    }

    #[test]
    fn backends_agree() {
        let mut rng = crate::seed::rng(5);
        use rand::Rng;
        let pts_a: Vec<Point3> = (0..300).map(|_| [rng.random(), rng.random(), rng.random()]).collect();
        let pts_b: Vec<Point3> = (0..200).map(|_| [rng.random(), rng.random(), rng.random()]).collect();
        let (a, b) = (cloud(&pts_a), cloud(&pts_b));
        let brute = chamfer_distance_with(&a, &b, Reduce::Sum, Backend::Brute).unwrap();
        let kd = chamfer_distance_with(&a, &b, Reduce::Sum, Backend::KdTree).unwrap();
        assert_eq!(brute, kd);
    }

    #[test]
    fn empty_cloud_is_error() {
        let a = cloud(&[[0.0; 3]]);
        let e = PointCloud::new(vec![]).unwrap();
        assert!(matches!(chamfer_distance(&a, &e), Err(Error::EmptyCloud)));
    }
}
