use crate::geometry::{dist2, Point3};

const LEAF_SIZE: usize = 16;

/// A static 3D kd-tree for nearest-neighbor queries. Built once over a point
/// set; splits on the widest axis at the median, leaves hold up to 16 points.
pub struct KdTree {
    points: Vec<Point3>,
    nodes: Vec<Node>,
}

enum Node {
    Leaf {
        start: usize,
        end: usize,
    },
    Split {
        axis: usize,
        value: f64,
        left: usize,
        right: usize,
    },
}

impl KdTree {
    /// Build over a copy of `points`. Panics on an empty slice.
    pub fn build(points: &[Point3]) -> KdTree {
        assert!(!points.is_empty(), "kd-tree over empty point set");
        let mut tree = KdTree {
            points: points.to_vec(),
            nodes: Vec::new(),
        };
        let n = tree.points.len();
        tree.build_node(0, n);
        tree
    }

    fn build_node(&mut self, start: usize, end: usize) -> usize {
        let id = self.nodes.len();
        if end - start <= LEAF_SIZE {
            self.nodes.push(Node::Leaf { start, end });
            return id;
        }
        // Widest axis of the local bounding box.
        let mut min = self.points[start];
        let mut max = self.points[start];
        for p in &self.points[start..end] {
            for k in 0..3 {
                min[k] = min[k].min(p[k]);
                max[k] = max[k].max(p[k]);
            }
        }
        let mut axis = 0;
        for k in 1..3 {
            if max[k] - min[k] > max[axis] - min[axis] {
                axis = k;
            }
        }
        let mid = start + (end - start) / 2;
        self.points[start..end].select_nth_unstable_by(mid - start, |a, b| {
            a[axis].partial_cmp(&b[axis]).unwrap()
        });
        let value = self.points[mid][axis];

        self.nodes.push(Node::Leaf { start: 0, end: 0 }); // placeholder
        let left = self.build_node(start, mid);
        let right = self.build_node(mid, end);
        self.nodes[id] = Node::Split {
            axis,
            value,
            left,
            right,
        };
        id
    }

    /// Squared distance from `query` to its nearest stored point.
    pub fn nearest_dist2(&self, query: Point3) -> f64 {
        let mut best = f64::INFINITY;
        self.search(0, query, &mut best);
        best
    }

    fn search(&self, node: usize, query: Point3, best: &mut f64) {
        match &self.nodes[node] {
            Node::Leaf { start, end } => {
                for p in &self.points[*start..*end] {
                    let d = dist2(query, *p);
                    if d < *best {
                        *best = d;
                    }
                }
            }
            Node::Split {
                axis,
                value,
                left,
                right,
            } => {
                let delta = query[*axis] - value;
                let (near, far) = if delta < 0.0 {
                    (*left, *right)
                } else {
                    (*right, *left)
                };
                self.search(near, query, best);
                if delta * delta < *best {
                    self.search(far, query, best);
                }
            }
        }
    }
}
