use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sketchkit_core::seed;
use sketchkit_core::{
    evaluate_pair, load_obj, sample_surface, MetricReport, PointCloud,
};

use crate::config::RunConfig;
use crate::manifest::{DatasetManifest, ManifestEntry};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReconRow {
    pub shape_id: String,
    pub category: String,
    pub chamfer: f64,
    pub emd: Option<f64>,
    pub precision: f64,
    pub recall: f64,
    pub fscore: f64,
}

/// Mean metrics over a group of rows. `emd` averages the rows that have
/// one and is absent when none do.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Aggregate {
    pub category: String,
    pub count: usize,
    pub chamfer: f64,
    pub emd: Option<f64>,
    pub precision: f64,
    pub recall: f64,
    pub fscore: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ReconFile {
    pub schema_version: u32,
    pub threshold: f64,
    pub reduce: String,
    pub align: String,
    pub pred_samples: usize,
    pub emd_samples: usize,
    pub ref_samples: usize,
    pub rows: Vec<ReconRow>,
    pub aggregates: Vec<Aggregate>,
    pub overall: Option<Aggregate>,
}

pub fn aggregate(category: &str, rows: &[&ReconRow]) -> Aggregate {
    let n = rows.len() as f64;
    let mean = |f: &dyn Fn(&ReconRow) -> f64| rows.iter().map(|r| f(r)).sum::<f64>() / n;
    let emds: Vec<f64> = rows.iter().filter_map(|r| r.emd).collect();
    Aggregate {
        category: category.to_string(),
        count: rows.len(),
        chamfer: mean(&|r| r.chamfer),
        emd: (!emds.is_empty()).then(|| emds.iter().sum::<f64>() / emds.len() as f64),
        precision: mean(&|r| r.precision),
        recall: mean(&|r| r.recall),
        fscore: mean(&|r| r.fscore),
    }
}

/// Reference geometry: OBJ meshes are surface-sampled at `ref_samples`
/// points; `.xyz`/`.xyzb`/`.bin` files are loaded as clouds directly.
fn load_reference(path: &Path, ref_samples: usize, seed_value: u64) -> Result<PointCloud> {
    let is_obj = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("obj"));
    if is_obj {
        let mesh = load_obj(path)?;
        Ok(sample_surface(&mesh, ref_samples, seed_value)?)
    } else {
        Ok(sketchkit_core::geometry::load_cloud(path)?)
    }
}

fn check_same_ids(pred: &DatasetManifest, reference: &DatasetManifest) -> Result<()> {
    let pred_ids: BTreeSet<&str> = pred.entries.iter().map(|e| e.shape_id.as_str()).collect();
    let ref_ids: BTreeSet<&str> = reference
        .entries
        .iter()
        .map(|e| e.shape_id.as_str())
        .collect();
    if pred_ids != ref_ids {
        let missing_ref: Vec<&&str> = pred_ids.difference(&ref_ids).collect();
        let missing_pred: Vec<&&str> = ref_ids.difference(&pred_ids).collect();
        bail!(
            "manifests disagree: missing from reference: {missing_ref:?}; missing from prediction: {missing_pred:?}"
        );
    }
    Ok(())
}

/// Evaluate every predicted mesh against its reference and write the CSV
/// and JSON tables. Aggregates are per-category means plus an overall row.
pub fn run(pred: &DatasetManifest, reference: &DatasetManifest, cfg: &RunConfig) -> Result<()> {
    fs::create_dir_all(&cfg.out_dir)
        .with_context(|| format!("creating {}", cfg.out_dir.display()))?;
    check_same_ids(pred, reference)?;

    let ref_by_id: HashMap<&str, &ManifestEntry> = reference
        .entries
        .iter()
        .map(|e| (e.shape_id.as_str(), e))
        .collect();

    let results: Vec<Result<MetricReport>> = pred
        .entries
        .par_iter()
        .map(|entry| {
            let eval_seed = seed::derive(seed::derive(cfg.seed, "eval-recon"), &entry.shape_id);
            let mesh_path = pred.resolve(&entry.mesh_path);
            let pred_mesh = load_obj(&mesh_path)
                .with_context(|| format!("loading {}", mesh_path.display()))?;
            let ref_entry = ref_by_id[entry.shape_id.as_str()];
            let ref_path = reference.resolve(&ref_entry.mesh_path);
            let ref_cloud =
                load_reference(&ref_path, cfg.ref_samples, seed::derive(eval_seed, "ref"))
                    .with_context(|| format!("loading {}", ref_path.display()))?;
            Ok(evaluate_pair(
                &pred_mesh,
                &ref_cloud,
                seed::derive(eval_seed, "pred"),
                &cfg.eval,
            )?)
        })
        .collect();

    let mut rows = Vec::new();
    let mut failed = 0;
    for (entry, result) in pred.entries.iter().zip(results) {
        match result {
            Ok(report) => rows.push(ReconRow {
                shape_id: entry.shape_id.clone(),
                category: entry.category.clone(),
                chamfer: report.chamfer,
                emd: report.emd,
                precision: report.precision,
                recall: report.recall,
                fscore: report.fscore,
            }),
            Err(err) => {
                eprintln!("eval-recon {}: error: {err:#}", entry.shape_id);
                failed += 1;
            }
        }
    }

    let mut by_category: BTreeMap<&str, Vec<&ReconRow>> = BTreeMap::new();
    for row in &rows {
        by_category.entry(&row.category).or_default().push(row);
    }
    let aggregates: Vec<Aggregate> = by_category
        .iter()
        .map(|(cat, group)| aggregate(cat, group))
        .collect();
    let all: Vec<&ReconRow> = rows.iter().collect();
    let overall = (!all.is_empty()).then(|| aggregate("overall", &all));

    let csv_path = cfg.out_dir.join("recon.csv");
    write_csv(&csv_path, &rows)?;

    let json_path = cfg.out_dir.join("recon.json");
    let file = ReconFile {
        schema_version: 1,
        threshold: cfg.eval.threshold,
        reduce: cfg.eval.reduce.to_string(),
        align: cfg.eval.align.to_string(),
        pred_samples: cfg.eval.pred_samples,
        emd_samples: cfg.eval.emd_samples,
        ref_samples: cfg.ref_samples,
        rows,
        aggregates,
        overall,
    };
    fs::write(&json_path, super::to_json_bytes(&file)?)?;
    println!(
        "eval-recon: {} rows -> {}, {}",
        file.rows.len(),
        csv_path.display(),
        json_path.display()
    );
    super::fail_if_any("eval-recon", failed, pred.entries.len())
}

fn write_csv(path: &Path, rows: &[ReconRow]) -> Result<()> {
    let mut wtr = csv::Writer::from_path(path)
        .with_context(|| format!("writing {}", path.display()))?;
    wtr.write_record([
        "shape_id",
        "category",
        "chamfer",
        "emd",
        "precision",
        "recall",
        "fscore",
    ])?;
    for row in rows {
        wtr.write_record([
            row.shape_id.as_str(),
            row.category.as_str(),
            &row.chamfer.to_string(),
            &row.emd.map(|v| v.to_string()).unwrap_or_default(),
            &row.precision.to_string(),
            &row.recall.to_string(),
            &row.fscore.to_string(),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(id: &str, cat: &str, chamfer: f64, emd: Option<f64>, fscore: f64) -> ReconRow {
        ReconRow {
            shape_id: id.into(),
            category: cat.into(),
            chamfer,
            emd,
            precision: fscore,
            recall: fscore,
            fscore,
        }
    }

    #[test]
    fn aggregate_means_match_recomputation() {
        let rows = [
            row("a", "chair", 1.0, Some(2.0), 0.5),
            row("b", "chair", 3.0, None, 0.7),
            row("c", "table", 5.0, Some(4.0), 0.9),
        ];
        let refs: Vec<&ReconRow> = rows.iter().collect();
        let agg = aggregate("overall", &refs);
        assert_eq!(agg.count, 3);
        assert!((agg.chamfer - 3.0).abs() < 1e-15);
        assert!((agg.emd.unwrap() - 3.0).abs() < 1e-15);
        assert!((agg.fscore - (0.5 + 0.7 + 0.9) / 3.0).abs() < 1e-15);

        let chairs: Vec<&ReconRow> = rows.iter().filter(|r| r.category == "chair").collect();
        let agg = aggregate("chair", &chairs);
        assert_eq!(agg.count, 2);
        assert!((agg.emd.unwrap() - 2.0).abs() < 1e-15);

        let no_emd = [row("a", "x", 1.0, None, 0.5)];
        let refs: Vec<&ReconRow> = no_emd.iter().collect();
        assert_eq!(aggregate("x", &refs).emd, None);
    }
}
