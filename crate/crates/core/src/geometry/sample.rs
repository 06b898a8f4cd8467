use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::{PointCloud, TriangleMesh};
use crate::seed;

/// Draw `n` points uniformly from the surface of `mesh`, seeded. Faces are
/// chosen proportionally to area via a cumulative table; the point within a
/// face uses the square-root barycentric map, so density is uniform per unit
/// area rather than per face.
pub fn sample_surface(mesh: &TriangleMesh, n: usize, seed_value: u64) -> Result<PointCloud> {
    let faces = mesh.faces();
    let mut cumulative = Vec::with_capacity(faces.len());
    let mut total = 0.0;
    for f in 0..faces.len() {
        total += mesh.face_area(f);
        cumulative.push(total);
    }
    if !(total > 0.0) || !total.is_finite() {
        return Err(Error::ZeroAreaMesh);
    }

    let mut rng = seed::rng(seed_value);
    let verts = mesh.vertices();
    let mut points = Vec::with_capacity(n);
    for _ in 0..n {
        let t = rng.random::<f64>() * total;
        // partition_point: first face whose cumulative area exceeds t.
        let f = cumulative.partition_point(|&c| c <= t).min(faces.len() - 1);
        let [ia, ib, ic] = faces[f];
        let (a, b, c) = (verts[ia], verts[ib], verts[ic]);
        let su = rng.random::<f64>().sqrt();
        let v = rng.random::<f64>();
        let (wa, wb, wc) = (1.0 - su, su * (1.0 - v), su * v);
        points.push([
            wa * a[0] + wb * b[0] + wc * c[0],
            wa * a[1] + wb * b[1] + wc * c[1],
            wa * a[2] + wb * b[2] + wc * c[2],
        ]);
    }
    Ok(PointCloud::from_points_unchecked(points))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square_mesh() -> TriangleMesh {
        TriangleMesh::new(
            vec![
                [0.0, 0.0, 0.0],
                [1.0, 0.0, 0.0],
                [1.0, 1.0, 0.0],
                [0.0, 1.0, 0.0],
            ],
            vec![[0, 1, 2], [0, 2, 3]],
        )
        .unwrap()
    }

    #[test]
    fn same_seed_same_cloud() {
        let mesh = unit_square_mesh();
        let a = sample_surface(&mesh, 100, 7).unwrap();
        let b = sample_surface(&mesh, 100, 7).unwrap();
        assert_eq!(a, b);
        let c = sample_surface(&mesh, 100, 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn points_lie_on_surface() {
        let mesh = unit_square_mesh();
        let cloud = sample_surface(&mesh, 1000, 3).unwrap();
        for p in cloud.points() {
            assert!(p[2].abs() < 1e-15);
            assert!((0.0..=1.0).contains(&p[0]));
            assert!((0.0..=1.0).contains(&p[1]));
        }
    }

    #[test]
    fn area_weighting_favors_large_faces() {
        // One tiny and one large triangle; expect counts roughly in area ratio.
        let mesh = TriangleMesh::new(
            vec![
                [0.0, 0.0, 0.0],
                [0.1, 0.0, 0.0],
                [0.0, 0.1, 0.0],
                [10.0, 0.0, 0.0],
                [20.0, 0.0, 0.0],
                [10.0, 10.0, 0.0],
            ],
            vec![[0, 1, 2], [3, 4, 5]],
        )
        .unwrap();
        let cloud = sample_surface(&mesh, 10_000, 11).unwrap();
        let near_small = cloud.points().iter().filter(|p| p[0] < 5.0).count();
        // Small face is 0.005 of 50.005 total area: ~1e-4 fraction.
        assert!(near_small < 50, "too many samples on tiny face: {near_small}");
    }

    #[test]
    fn degenerate_mesh_is_error() {
        let mesh = TriangleMesh::new(
            vec![[0.0; 3], [1.0, 0.0, 0.0], [2.0, 0.0, 0.0]],
            vec![[0, 1, 2]],
        )
        .unwrap();
        assert!(matches!(
            sample_surface(&mesh, 10, 1),
            Err(Error::ZeroAreaMesh)
        ));
    }
}
