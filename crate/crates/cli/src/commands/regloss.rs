use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use ndarray::Array2;
use serde::Serialize;
use sketchkit_core::{
    finite_difference_grad, regression_loss, EmbeddingBatch, ShapeDistanceMatrix,
};

use crate::config::RunConfig;

const GRAD_CHECK_H: f64 = 1e-5;

/// Embeddings CSV: header `shape_id,<dim names...>`, one row per shape with
/// the id followed by its coordinates. Row-major, B rows of d values.
fn read_embeddings(path: &Path) -> Result<EmbeddingBatch> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let headers = rdr.headers()?.clone();
    if headers.is_empty() || &headers[0] != "shape_id" {
        bail!(
            "{}: first CSV column must be `shape_id`",
            path.display()
        );
    }
    let dim = headers.len() - 1;
    let mut ids = Vec::new();
    let mut data = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record?;
        if record.len() != dim + 1 {
            bail!(
                "{}: row {} has {} fields, expected {}",
                path.display(),
                i + 2,
                record.len(),
                dim + 1
            );
        }
        ids.push(record[0].to_string());
        for cell in record.iter().skip(1) {
            data.push(
                cell.parse::<f64>()
                    .with_context(|| format!("{}: row {}: `{cell}`", path.display(), i + 2))?,
            );
        }
    }
    let rows = Array2::from_shape_vec((ids.len(), dim), data)?;
    Ok(EmbeddingBatch::new(rows, ids)?)
}

/// Distances CSV: header `shape_id,<id...>` naming the columns, one row per
/// shape. Ids must match the embeddings file; order may differ.
fn read_distances(path: &Path, ids: &[String]) -> Result<Array2<f64>> {
    let n = ids.len();
    let index: HashMap<&str, usize> = ids
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect();

    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let headers = rdr.headers()?.clone();
    if headers.is_empty() || &headers[0] != "shape_id" {
        bail!("{}: first CSV column must be `shape_id`", path.display());
    }
    if headers.len() != n + 1 {
        bail!(
            "{}: {} distance columns for {} embeddings",
            path.display(),
            headers.len() - 1,
            n
        );
    }
    let mut col_pos = Vec::with_capacity(n);
    let mut seen_cols = HashSet::new();
    for name in headers.iter().skip(1) {
        let pos = *index
            .get(name)
            .with_context(|| format!("{}: column `{name}` not in embeddings", path.display()))?;
        if !seen_cols.insert(pos) {
            bail!("{}: duplicate column `{name}`", path.display());
        }
        col_pos.push(pos);
    }

    let mut d = Array2::from_elem((n, n), f64::NAN);
    let mut seen_rows = HashSet::new();
    for record in rdr.records() {
        let record = record?;
        if record.len() != n + 1 {
            bail!("{}: row for `{}` has wrong width", path.display(), &record[0]);
        }
        let row = *index
            .get(&record[0])
            .with_context(|| format!("{}: row `{}` not in embeddings", path.display(), &record[0]))?;
        if !seen_rows.insert(row) {
            bail!("{}: duplicate row `{}`", path.display(), &record[0]);
        }
        for (j, cell) in record.iter().skip(1).enumerate() {
            d[[row, col_pos[j]]] = cell
                .parse::<f64>()
                .with_context(|| format!("{}: `{cell}`", path.display()))?;
        }
    }
    if seen_rows.len() != n {
        let missing: Vec<&String> = ids
            .iter()
            .filter(|id| !seen_rows.contains(&index[id.as_str()]))
            .collect();
        bail!("{}: missing rows for {missing:?}", path.display());
    }
    Ok(d)
}

#[derive(Serialize)]
struct GradCheck {
    h: f64,
    max_rel_err: f64,
}

#[derive(Serialize)]
struct ReglossFile<'a> {
    schema_version: u32,
    loss: f64,
    batch_size: usize,
    dim: usize,
    shape_ids: &'a [String],
    sigma: &'a [f64],
    grad: &'a [Vec<f64>],
    grad_check: Option<GradCheck>,
}

/// Loss + gradient for an embedding batch against a shape-distance matrix.
/// σ defaults to the three-sigma rule over each matrix row; `--sigma`
/// overrides with an explicit comma-separated list in embedding order.
pub fn run(
    embeddings_path: &Path,
    distances_path: &Path,
    sigma_override: Option<&str>,
    grad_check: bool,
    cfg: &RunConfig,
) -> Result<()> {
    fs::create_dir_all(&cfg.out_dir)
        .with_context(|| format!("creating {}", cfg.out_dir.display()))?;

    let emb = read_embeddings(embeddings_path)?;
    let d = read_distances(distances_path, emb.shape_ids())?;
    let matrix = match sigma_override {
        Some(list) => {
            let sigma: Vec<f64> = list
                .split(',')
                .map(|s| s.trim().parse::<f64>().map_err(anyhow::Error::from))
                .collect::<Result<_>>()
                .context("parsing --sigma")?;
            ShapeDistanceMatrix::new(d, sigma)?
        }
        None => ShapeDistanceMatrix::from_distances_three_sigma(d)?,
    };

    let report = regression_loss(&emb, &matrix)?;
    let check = if grad_check {
        let fd = finite_difference_grad(&emb, &matrix, GRAD_CHECK_H)?;
        let mut scale = 1.0f64;
        let mut max_abs_err = 0.0f64;
        for (a_row, f_row) in report.grad.iter().zip(&fd) {
            for (a, f) in a_row.iter().zip(f_row) {
                scale = scale.max(a.abs()).max(f.abs());
                max_abs_err = max_abs_err.max((a - f).abs());
            }
        }
        Some(GradCheck {
            h: GRAD_CHECK_H,
            max_rel_err: max_abs_err / scale,
        })
    } else {
        None
    };

    let out = cfg.out_dir.join("regloss.json");
    let file = ReglossFile {
        schema_version: 1,
        loss: report.loss,
        batch_size: emb.batch_size(),
        dim: emb.dim(),
        shape_ids: emb.shape_ids(),
        sigma: matrix.sigma(),
        grad: &report.grad,
        grad_check: check,
    };
    fs::write(&out, super::to_json_bytes(&file)?)?;
    println!(
        "regloss: loss {} (B={}, d={}) -> {}",
        report.loss,
        emb.batch_size(),
        emb.dim(),
        out.display()
    );
    if let Some(check) = &file.grad_check {
        println!(
            "regloss: gradient check max relative error {} at h={}",
            check.max_rel_err, check.h
        );
    }
    Ok(())
}
