//! 3D geometry: triangle meshes, point clouds, surface sampling, and the
//! normalization/alignment applied before metric computation.

mod obj;
mod sample;
mod xyz;

pub use obj::load_obj;
pub use sample::sample_surface;
pub use xyz::{load_cloud, read_xyz, read_xyz_bin, write_xyz, write_xyz_bin};

use crate::error::{Error, Result};

/// A 3D point or vector.
pub type Point3 = [f64; 3];

pub(crate) fn sub(a: Point3, b: Point3) -> Point3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn cross(a: Point3, b: Point3) -> Point3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn norm(a: Point3) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

/// Squared Euclidean distance between two points.
pub fn dist2(a: Point3, b: Point3) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    let dz = a[2] - b[2];
    dx * dx + dy * dy + dz * dz
}

/// An indexed triangle mesh.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleMesh {
    vertices: Vec<Point3>,
    faces: Vec<[usize; 3]>,
}

impl TriangleMesh {
    /// Build a mesh, checking that every face index is in range.
    pub fn new(vertices: Vec<Point3>, faces: Vec<[usize; 3]>) -> Result<Self> {
        for face in &faces {
            for &i in face {
                if i >= vertices.len() {
                    return Err(Error::FaceIndexOutOfRange {
                        index: i,
                        vertex_count: vertices.len(),
                    });
                }
            }
        }
        Ok(TriangleMesh { vertices, faces })
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    /// Area of face `f`.
    pub fn face_area(&self, f: usize) -> f64 {
        let [a, b, c] = self.faces[f];
        let e1 = sub(self.vertices[b], self.vertices[a]);
        let e2 = sub(self.vertices[c], self.vertices[a]);
        0.5 * norm(cross(e1, e2))
    }

    /// Sum of all face areas.
    pub fn total_area(&self) -> f64 {
        (0..self.faces.len()).map(|f| self.face_area(f)).sum()
    }
}

/// An unordered set of 3D points. Coordinates are always finite.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    points: Vec<Point3>,
}

impl PointCloud {
    /// Build a cloud, rejecting non-finite coordinates.
    pub fn new(points: Vec<Point3>) -> Result<Self> {
        if points.iter().any(|p| p.iter().any(|c| !c.is_finite())) {
            return Err(Error::NonFinitePoint);
        }
        Ok(PointCloud { points })
    }

    /// Internal constructor for points already known to be finite.
    pub(crate) fn from_points_unchecked(points: Vec<Point3>) -> Self {
        debug_assert!(points.iter().all(|p| p.iter().all(|c| c.is_finite())));
        PointCloud { points }
    }

    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn into_points(self) -> Vec<Point3> {
        self.points
    }

    /// The first `n` points as a new cloud.
    pub fn head(&self, n: usize) -> PointCloud {
        PointCloud {
            points: self.points[..n.min(self.points.len())].to_vec(),
        }
    }

    /// Mean of all points.
    pub fn centroid(&self) -> Result<Point3> {
        if self.points.is_empty() {
            return Err(Error::EmptyCloud);
        }
        let mut c = [0.0; 3];
        for p in &self.points {
            c[0] += p[0];
            c[1] += p[1];
            c[2] += p[2];
        }
        let n = self.points.len() as f64;
        Ok([c[0] / n, c[1] / n, c[2] / n])
    }

    pub fn aabb(&self) -> Result<Aabb> {
        Aabb::from_points(&self.points).ok_or(Error::EmptyCloud)
    }
}

/// Axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aabb {
    pub min: Point3,
    pub max: Point3,
}

impl Aabb {
    pub fn from_points(points: &[Point3]) -> Option<Aabb> {
        let first = points.first()?;
        let mut min = *first;
        let mut max = *first;
        for p in points {
            for k in 0..3 {
                min[k] = min[k].min(p[k]);
                max[k] = max[k].max(p[k]);
            }
        }
        Some(Aabb { min, max })
    }

    pub fn extent(&self) -> Point3 {
        sub(self.max, self.min)
    }

    /// Longest side of the box.
    pub fn max_extent(&self) -> f64 {
        let e = self.extent();
        e[0].max(e[1]).max(e[2])
    }

    pub fn center(&self) -> Point3 {
        [
            (self.min[0] + self.max[0]) / 2.0,
            (self.min[1] + self.max[1]) / 2.0,
            (self.min[2] + self.max[2]) / 2.0,
        ]
    }
}

/// Rescale a cloud so its bounding box has a longest side of exactly 1,
/// centered at the origin. Uniform scale only.
pub fn normalize_unit(cloud: &PointCloud) -> Result<PointCloud> {
    let bb = cloud.aabb()?;
    let m = bb.max_extent();
    if !(m > 0.0) || !m.is_finite() {
        return Err(Error::DegenerateCloud);
    }
    let c = bb.center();
    let points = cloud
        .points
        .iter()
        .map(|p| {
            [
                (p[0] - c[0]) / m,
                (p[1] - c[1]) / m,
                (p[2] - c[2]) / m,
            ]
        })
        .collect();
    Ok(PointCloud { points })
}

/// How a predicted cloud is registered to the reference before metrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AlignMode {
    /// Use the prediction as-is.
    None,
    /// Translate the centroid onto the reference centroid, then scale
    /// uniformly about it so the bounding-box longest sides match.
    #[default]
    CentroidScale,
}

impl std::str::FromStr for AlignMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "none" => Ok(AlignMode::None),
            "centroid-scale" => Ok(AlignMode::CentroidScale),
            other => Err(format!(
                "unknown align mode '{other}' (expected none|centroid-scale)"
            )),
        }
    }
}

impl std::fmt::Display for AlignMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            AlignMode::None => "none",
            AlignMode::CentroidScale => "centroid-scale",
        })
    }
}

/// Register `pred` onto `reference`: centroid translation plus a uniform
/// scale matching the bounding-box longest sides. No rotation search.
pub fn align_to_reference(pred: &PointCloud, reference: &PointCloud) -> Result<PointCloud> {
    let c_pred = pred.centroid()?;
    let c_ref = reference.centroid()?;
    let m_pred = pred.aabb()?.max_extent();
    let m_ref = reference.aabb()?.max_extent();
    if !(m_pred > 0.0) || !(m_ref > 0.0) {
        return Err(Error::DegenerateCloud);
    }
    let s = m_ref / m_pred;
    let points = pred
        .points
        .iter()
        .map(|p| {
            [
                c_ref[0] + s * (p[0] - c_pred[0]),
                c_ref[1] + s * (p[1] - c_pred[1]),
                c_ref[2] + s * (p[2] - c_pred[2]),
            ]
        })
        .collect();
    Ok(PointCloud { points })
}
