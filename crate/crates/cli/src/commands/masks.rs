use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use sketchkit_core::mask::{propagate_labels_with, read_labels, read_pgm, write_pgm};
use sketchkit_core::{mask_metrics, parse_svg, rasterize, BinaryMask};

use crate::config::RunConfig;

fn load_sketch_raster(path: &Path) -> Result<BinaryMask> {
    let is_svg = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("svg"));
    if is_svg {
        let sketch = parse_svg(path)?;
        Ok(rasterize(&sketch)?)
    } else {
        Ok(read_pgm(path)?)
    }
}

/// Grow sparse labels into a dense foreground mask over a sketch raster.
/// SVG sketches are rasterized on the fly; anything else is read as PGM.
pub fn propagate(sketch_path: &Path, labels_path: &Path, cfg: &RunConfig) -> Result<()> {
    fs::create_dir_all(&cfg.out_dir)
        .with_context(|| format!("creating {}", cfg.out_dir.display()))?;
    let raster = load_sketch_raster(sketch_path)?;
    let labels = read_labels(labels_path)?;
    let mask = propagate_labels_with(&raster, &labels, cfg.stroke_cost)?;
    let out = cfg
        .out_dir
        .join(format!("{}.mask.pgm", super::stem(sketch_path)));
    write_pgm(&out, &mask)?;
    println!(
        "propagate {}: {} of {} pixels foreground -> {}",
        super::stem(sketch_path),
        mask.count_true(),
        mask.dims().0 * mask.dims().1,
        out.display()
    );
    Ok(())
}

#[derive(Serialize)]
struct MaskMetricsFile {
    schema_version: u32,
    iou: f64,
    precision: f64,
    recall: f64,
}

/// Score a predicted mask against ground truth.
pub fn eval(pred_path: &Path, truth_path: &Path, cfg: &RunConfig) -> Result<()> {
    fs::create_dir_all(&cfg.out_dir)
        .with_context(|| format!("creating {}", cfg.out_dir.display()))?;
    let pred = read_pgm(pred_path)?;
    let truth = read_pgm(truth_path)?;
    let report = mask_metrics(&pred, &truth)?;
    let out = cfg.out_dir.join("mask-metrics.json");
    let file = MaskMetricsFile {
        schema_version: 1,
        iou: report.iou,
        precision: report.precision,
        recall: report.recall,
    };
    fs::write(&out, super::to_json_bytes(&file)?)?;
    println!(
        "eval-mask: iou {} precision {} recall {} -> {}",
        report.iou,
        report.precision,
        report.recall,
        out.display()
    );
    Ok(())
}
