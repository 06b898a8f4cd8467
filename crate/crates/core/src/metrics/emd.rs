use crate::error::{Error, Result};
use crate::geometry::{dist2, PointCloud};

/// Exact earth mover's distance between equal-size clouds: the minimum over
/// bijections φ of Σ‖x − φ(x)‖₂ with plain Euclidean edge costs, solved as a
/// dense linear assignment problem.
pub fn emd_exact(s1: &PointCloud, s2: &PointCloud) -> Result<f64> {
    if s1.is_empty() || s2.is_empty() {
        return Err(Error::EmptyCloud);
    }
    if s1.len() != s2.len() {
        return Err(Error::SizeMismatch {
            left: s1.len(),
            right: s2.len(),
        });
    }
    let n = s1.len();
    let (pa, pb) = (s1.points(), s2.points());
    let mut cost = vec![0.0; n * n];
    for (i, a) in pa.iter().enumerate() {
        for (j, b) in pb.iter().enumerate() {
            cost[i * n + j] = dist2(*a, *b).sqrt();
        }
    }
    let col4row = solve_assignment(&cost, n);
    Ok((0..n).map(|i| cost[i * n + col4row[i]]).sum())
}

/// Minimum-cost perfect matching on a dense square cost matrix by successive
/// shortest augmenting paths with dual potentials (the classic cubic-time
/// assignment scheme). Costs must be finite. Returns the matched column for
/// each row.
pub(crate) fn solve_assignment(cost: &[f64], n: usize) -> Vec<usize> {
    assert_eq!(cost.len(), n * n);
    let mut u = vec![0.0; n]; // row potentials
    let mut v = vec![0.0; n]; // column potentials
    let mut shortest = vec![0.0f64; n];
    let mut path = vec![usize::MAX; n]; // predecessor row for each column
    let mut col4row = vec![usize::MAX; n];
    let mut row4col = vec![usize::MAX; n];
    let mut sr = vec![false; n]; // rows scanned this phase
    let mut sc = vec![false; n]; // columns finalized this phase
    let mut remaining = vec![0usize; n];

    for cur_row in 0..n {
        let mut min_val = 0.0;
        let mut i = cur_row;
        let mut num_remaining = n;
        for (it, slot) in remaining.iter_mut().enumerate() {
            // Reverse fill keeps ties resolving toward the identity matching.
            *slot = n - it - 1;
        }
        sr.fill(false);
        sc.fill(false);
        shortest.fill(f64::INFINITY);

        // Dijkstra over columns until an unmatched one is reached.
        let sink = loop {
            sr[i] = true;
            let mut index = usize::MAX;
            let mut lowest = f64::INFINITY;
            for (it, &j) in remaining[..num_remaining].iter().enumerate() {
                let r = min_val + cost[i * n + j] - u[i] - v[j];
                if r < shortest[j] {
                    path[j] = i;
                    shortest[j] = r;
                }
                // Prefer an unmatched column on ties so the phase ends sooner.
                if shortest[j] < lowest || (shortest[j] == lowest && row4col[j] == usize::MAX)
                {
                    lowest = shortest[j];
                    index = it;
                }
            }
            min_val = lowest;
            assert!(
                min_val.is_finite(),
                "assignment infeasible: non-finite reduced cost"
            );
            let j = remaining[index];
            sc[j] = true;
            num_remaining -= 1;
            remaining[index] = remaining[num_remaining];
            if row4col[j] == usize::MAX {
                break j;
            }
            i = row4col[j];
        };

        // Update potentials so finalized reduced costs stay zero.
        u[cur_row] += min_val;
        for r in 0..n {
            if sr[r] && r != cur_row {
                u[r] += min_val - shortest[col4row[r]];
            }
        }
        for (j, &scanned) in sc.iter().enumerate() {
            if scanned {
                v[j] -= min_val - shortest[j];
            }
        }

        // Flip the augmenting path ending at the sink.
        let mut j = sink;
        loop {
            let r = path[j];
            row4col[j] = r;
            std::mem::swap(&mut col4row[r], &mut j);
            if r == cur_row {
                break;
            }
        }
    }
    col4row
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point3;

    fn cloud(pts: &[Point3]) -> PointCloud {
        PointCloud::new(pts.to_vec()).unwrap()
    }

    fn brute_force_emd(a: &PointCloud, b: &PointCloud) -> f64 {
        fn go(a: &[Point3], b: &[Point3], used: &mut Vec<bool>, i: usize, acc: f64, best: &mut f64) {
            if acc >= *best {
                return;
            }
            if i == a.len() {
                *best = acc;
                return;
            }
            for j in 0..b.len() {
                if !used[j] {
                    used[j] = true;
                    go(a, b, used, i + 1, acc + dist2(a[i], b[j]).sqrt(), best);
                    used[j] = false;
                }
            }
        }
        let mut best = f64::INFINITY;
        go(
            a.points(),
            b.points(),
            &mut vec![false; b.len()],
            0,
            0.0,
            &mut best,
        );
        best
    }

    #[test]
    fn self_distance_is_zero() {
        let a = cloud(&[[0.0; 3], [1.0, 2.0, 3.0], [0.5, -1.0, 0.25]]);
        assert_eq!(emd_exact(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn single_pair_euclidean() {
        let a = cloud(&[[0.0, 0.0, 0.0]]);
        let b = cloud(&[[3.0, 4.0, 0.0]]);
        assert_eq!(emd_exact(&a, &b).unwrap(), 5.0);
    }

    #[test]
    fn crossing_pairs_resolve_optimally() {
        // Matching straight across costs 2; crossing costs 2·√2 — the solver
        // must pick the identity-like matching.
        let a = cloud(&[[0.0, 0.0, 0.0], [0.0, 1.0, 0.0]]);
        let b = cloud(&[[1.0, 0.0, 0.0], [1.0, 1.0, 0.0]]);
        assert!((emd_exact(&a, &b).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn matches_permutation_oracle() {
        use rand::Rng;
        let mut rng = crate::seed::rng(42);
        for _ in 0..50 {
            let n = rng.random_range(1..=6);
            let pa: Vec<Point3> = (0..n).map(|_| [rng.random(), rng.random(), rng.random()]).collect();
            let pb: Vec<Point3> = (0..n).map(|_| [rng.random(), rng.random(), rng.random()]).collect();
            let (a, b) = (cloud(&pa), cloud(&pb));
            let fast = emd_exact(&a, &b).unwrap();
            let brute = brute_force_emd(&a, &b);
            assert!(
                (fast - brute).abs() < 1e-10,
                "solver {fast} vs oracle {brute}"
            );
        }
    }

    #[test]
    fn size_mismatch_is_error() {
        let a = cloud(&[[0.0; 3], [1.0; 3]]);
        let b = cloud(&[[0.0; 3]]);
        assert!(matches!(
            emd_exact(&a, &b),
            Err(Error::SizeMismatch { left: 2, right: 1 })
        ));
    }

    #[test]
    fn constant_cost_matrix_assigns_identity() {
        let col4row = solve_assignment(&[1.0; 9], 3);
        assert_eq!(col4row, vec![0, 1, 2]);
    }
}
