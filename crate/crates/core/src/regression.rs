//! Style/view-invariance regression loss: Chamfer distances and embedding
//! dot products are converted to per-anchor probability distributions whose
//! L1 discrepancy is the loss; gradients are analytic with respect to the
//! pre-normalization embeddings.

use ndarray::{Array1, Array2, Axis};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::PointCloud;
use crate::metrics::chamfer_distance;
use crate::seed;

// Unit-norm tolerance for rows fed to the probability conversion.
const NORM_TOL: f64 = 1e-9;

/// Three-sigma rule factor: σ_A = (0.997/3)·max distance.
pub const THREE_SIGMA_FACTOR: f64 = 0.997 / 3.0;

/// A batch of shape embeddings, one row per shape.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingBatch {
    rows: Array2<f64>,
    shape_ids: Vec<String>,
}

impl EmbeddingBatch {
    /// Build a batch; requires B ≥ 2, matching id count, finite entries.
    pub fn new(rows: Array2<f64>, shape_ids: Vec<String>) -> Result<Self> {
        if rows.nrows() < 2 {
            return Err(Error::InvalidParam(format!(
                "embedding batch needs at least 2 rows, got {}",
                rows.nrows()
            )));
        }
        if rows.ncols() == 0 {
            return Err(Error::InvalidParam("embedding dimension is zero".into()));
        }
        if shape_ids.len() != rows.nrows() {
            return Err(Error::DimMismatch(format!(
                "{} shape ids for {} embedding rows",
                shape_ids.len(),
                rows.nrows()
            )));
        }
        if rows.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParam("non-finite embedding entry".into()));
        }
        Ok(EmbeddingBatch { rows, shape_ids })
    }

    pub fn rows(&self) -> &Array2<f64> {
        &self.rows
    }

    pub fn shape_ids(&self) -> &[String] {
        &self.shape_ids
    }

    pub fn batch_size(&self) -> usize {
        self.rows.nrows()
    }

    pub fn dim(&self) -> usize {
        self.rows.ncols()
    }

    /// Project every row onto the unit sphere. Errors on a zero row.
    pub fn normalized(&self) -> Result<EmbeddingBatch> {
        let mut rows = self.rows.clone();
        for mut row in rows.axis_iter_mut(Axis(0)) {
            let norm = row.dot(&row).sqrt();
            if !(norm > 0.0) {
                return Err(Error::InvalidParam(
                    "cannot normalize a zero embedding row".into(),
                ));
            }
            row.mapv_inplace(|v| v / norm);
        }
        Ok(EmbeddingBatch {
            rows,
            shape_ids: self.shape_ids.clone(),
        })
    }

    /// True when every row has unit Euclidean norm within tolerance.
    pub fn is_normalized(&self) -> bool {
        self.rows.axis_iter(Axis(0)).all(|row| {
            let norm = row.dot(&row).sqrt();
            (norm - 1.0).abs() <= NORM_TOL
        })
    }
}

/// Pairwise Chamfer distances within a batch plus the per-shape σ values
/// used by the distance→probability conversion.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeDistanceMatrix {
    d_cd: Array2<f64>,
    sigma: Vec<f64>,
}

impl ShapeDistanceMatrix {
    /// Build from a symmetric zero-diagonal distance matrix and positive σs.
    pub fn new(d_cd: Array2<f64>, sigma: Vec<f64>) -> Result<Self> {
        let b = d_cd.nrows();
        if d_cd.ncols() != b {
            return Err(Error::DimMismatch(format!(
                "distance matrix is {}×{}",
                b,
                d_cd.ncols()
            )));
        }
        if sigma.len() != b {
            return Err(Error::DimMismatch(format!(
                "{} sigmas for a {b}×{b} matrix",
                sigma.len()
            )));
        }
        if d_cd.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidParam(
                "distance matrix entries must be finite and non-negative".into(),
            ));
        }
        for i in 0..b {
            if d_cd[[i, i]] != 0.0 {
                return Err(Error::InvalidParam(format!(
                    "distance matrix diagonal entry {i} is {}",
                    d_cd[[i, i]]
                )));
            }
            for j in 0..i {
                if d_cd[[i, j]] != d_cd[[j, i]] {
                    return Err(Error::InvalidParam(format!(
                        "distance matrix not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        if sigma.iter().any(|s| !(*s > 0.0) || !s.is_finite()) {
            return Err(Error::ZeroSigma);
        }
        Ok(ShapeDistanceMatrix { d_cd, sigma })
    }

    /// Build from a distance matrix alone, deriving each σ by the
    /// three-sigma rule over its row.
    pub fn from_distances_three_sigma(d_cd: Array2<f64>) -> Result<Self> {
        let sigma: Vec<f64> = d_cd
            .axis_iter(Axis(0))
            .map(|row| THREE_SIGMA_FACTOR * row.iter().fold(0.0f64, |m, v| m.max(*v)))
            .collect();
        ShapeDistanceMatrix::new(d_cd, sigma)
    }

    pub fn distances(&self) -> &Array2<f64> {
        &self.d_cd
    }

    pub fn sigma(&self) -> &[f64] {
        &self.sigma
    }

    pub fn batch_size(&self) -> usize {
        self.d_cd.nrows()
    }
}

/// Loss value and its gradient at the pre-normalization embeddings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LossReport {
    pub loss: f64,
    /// B×d matrix, row-major.
    pub grad: Vec<Vec<f64>>,
}

/// σ for one shape by the three-sigma rule: (0.997/3) times the maximum
/// Chamfer distance from the shape to a seeded subset of the dataset. The
/// subset is a seeded permutation prefix, so enlarging it never drops
/// previously considered shapes.
pub fn sigma_from_dataset(
    shape_id: &str,
    dataset: &[(String, PointCloud)],
    subset_size: usize,
    seed_value: u64,
) -> Result<f64> {
    if dataset.is_empty() {
        return Err(Error::InvalidParam("empty dataset".into()));
    }
    if subset_size == 0 || subset_size > dataset.len() {
        return Err(Error::InvalidParam(format!(
            "subset size {subset_size} outside [1, {}]",
            dataset.len()
        )));
    }
    let anchor = dataset
        .iter()
        .find(|(id, _)| id == shape_id)
        .ok_or_else(|| Error::ShapeNotFound(shape_id.to_string()))?;

    let mut order: Vec<usize> = (0..dataset.len()).collect();
    let mut rng = seed::rng(seed::derive(seed::derive(seed_value, "sigma-subset"), shape_id));
    // Fisher-Yates; the permutation is independent of subset_size, so a
    // larger subset is always a superset.
    for i in (1..order.len()).rev() {
        let j = rand::Rng::random_range(&mut rng, 0..=i);
        order.swap(i, j);
    }

    let mut max_cd = 0.0f64;
    for &idx in order.iter().take(subset_size) {
        let cd = chamfer_distance(&anchor.1, &dataset[idx].1)?;
        max_cd = max_cd.max(cd);
    }
    if !(max_cd > 0.0) {
        return Err(Error::ZeroSigma);
    }
    Ok(THREE_SIGMA_FACTOR * max_cd)
}

/// Ground-truth distribution for one anchor: softmax of −d²/(2σ_A²) over the
/// batch, self-term included.
pub fn cd_to_prob(d_cd: &ShapeDistanceMatrix, anchor: usize) -> Result<Vec<f64>> {
    let b = d_cd.batch_size();
    if anchor >= b {
        return Err(Error::InvalidParam(format!(
            "anchor {anchor} out of range for batch {b}"
        )));
    }
    let sigma = d_cd.sigma[anchor];
    let logits: Vec<f64> = (0..b)
        .map(|j| {
            let d = d_cd.d_cd[[anchor, j]];
            -(d * d) / (2.0 * sigma * sigma)
        })
        .collect();
    Ok(softmax(&logits))
}

/// Embedding-side distribution for one anchor: softmax of the dot products
/// of its row with every row, self-term included. Rows must be unit norm.
pub fn emb_to_prob(emb: &EmbeddingBatch, anchor: usize) -> Result<Vec<f64>> {
    if !emb.is_normalized() {
        return Err(Error::UnnormalizedRows);
    }
    let b = emb.batch_size();
    if anchor >= b {
        return Err(Error::InvalidParam(format!(
            "anchor {anchor} out of range for batch {b}"
        )));
    }
    let f = emb.rows();
    let anchor_row = f.row(anchor);
    let logits: Vec<f64> = (0..b).map(|j| anchor_row.dot(&f.row(j))).collect();
    Ok(softmax(&logits))
}

fn softmax(logits: &[f64]) -> Vec<f64> {
    let max = logits.iter().fold(f64::NEG_INFINITY, |m, v| m.max(*v));
    let exps: Vec<f64> = logits.iter().map(|v| (v - max).exp()).collect();
    let sum: f64 = exps.iter().sum();
    exps.into_iter().map(|e| e / sum).collect()
}

/// The regression loss between a raw embedding batch and a distance matrix:
/// mean over all ordered pairs of |p̂ − p|, where p̂ comes from the
/// unit-normalized embeddings and p from the distances. The gradient is
/// taken at the raw embeddings, differentiating through both the softmax
/// and the unit-sphere projection; the |·| subgradient at 0 is 0.
pub fn regression_loss(emb: &EmbeddingBatch, d_cd: &ShapeDistanceMatrix) -> Result<LossReport> {
    let b = emb.batch_size();
    if d_cd.batch_size() != b {
        return Err(Error::DimMismatch(format!(
            "embedding batch {} vs distance matrix {}",
            b,
            d_cd.batch_size()
        )));
    }

    let raw = emb.rows();
    let normalized = emb.normalized()?;
    let f = normalized.rows().clone();

    // Row softmaxes of the Gram matrix against targets from the distances.
    let mut p_hat = Array2::<f64>::zeros((b, b));
    let mut p = Array2::<f64>::zeros((b, b));
    for a in 0..b {
        let hat = emb_to_prob(&normalized, a)?;
        let target = cd_to_prob(d_cd, a)?;
        for j in 0..b {
            p_hat[[a, j]] = hat[j];
            p[[a, j]] = target[j];
        }
    }

    let scale = 1.0 / (b * b) as f64;
    let mut loss = 0.0;
    // w = dL/dp̂, g = dL/d(gram entries).
    let mut g = Array2::<f64>::zeros((b, b));
    for a in 0..b {
        let mut w_row = Array1::<f64>::zeros(b);
        for j in 0..b {
            let diff = p_hat[[a, j]] - p[[a, j]];
            loss += diff.abs() * scale;
            w_row[j] = sign_zero(diff) * scale;
        }
        // Softmax backprop for row a: g_ac = p̂_ac (w_ac − Σ_b w_ab p̂_ab).
        let dot: f64 = (0..b).map(|j| w_row[j] * p_hat[[a, j]]).sum();
        for c in 0..b {
            g[[a, c]] = p_hat[[a, c]] * (w_row[c] - dot);
        }
    }

    // Gram entries s_ac = f_a·f_c depend on both rows: dL/dF = (G + Gᵀ)F.
    let df = (&g + &g.t()).dot(&f);

    // Unit-sphere projection: dL/de_r = (dL/df_r − f_r (f_r·dL/df_r)) / ‖e_r‖.
    let mut grad = Array2::<f64>::zeros((b, emb.dim()));
    for r in 0..b {
        let e_norm = raw.row(r).dot(&raw.row(r)).sqrt();
        let fr = f.row(r);
        let dfr = df.row(r);
        let radial = fr.dot(&dfr);
        for k in 0..emb.dim() {
            grad[[r, k]] = (dfr[k] - fr[k] * radial) / e_norm;
        }
    }

    Ok(LossReport {
        loss,
        grad: grad.outer_iter().map(|row| row.to_vec()).collect(),
    })
}

fn sign_zero(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Central finite differences of the loss at the raw embeddings, for
/// checking the analytic gradient.
pub fn finite_difference_grad(
    emb: &EmbeddingBatch,
    d_cd: &ShapeDistanceMatrix,
    h: f64,
) -> Result<Vec<Vec<f64>>> {
    let (b, d) = (emb.batch_size(), emb.dim());
    let mut out = vec![vec![0.0; d]; b];
    for r in 0..b {
        for k in 0..d {
            let mut plus = emb.rows().clone();
            plus[[r, k]] += h;
            let mut minus = emb.rows().clone();
            minus[[r, k]] -= h;
            let lp = regression_loss(
                &EmbeddingBatch::new(plus, emb.shape_ids.clone())?,
                d_cd,
            )?
            .loss;
            let lm = regression_loss(
                &EmbeddingBatch::new(minus, emb.shape_ids.clone())?,
                d_cd,
            )?
            .loss;
            out[r][k] = (lp - lm) / (2.0 * h);
        }
    }
    Ok(out)
}
