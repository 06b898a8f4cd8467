use std::fs;

use anyhow::{Context, Result};
use rayon::prelude::*;
use serde::Serialize;
use sketchkit_core::{dataset_viewpoints, CameraRecord};

use crate::config::RunConfig;
use crate::manifest::DatasetManifest;

#[derive(Serialize)]
struct CameraFile {
    schema_version: u32,
    cameras: Vec<CameraRecord>,
}

/// Emit the full camera set (8 base + 40 perturbed views per shape) for
/// every manifest entry, in manifest order.
pub fn run(manifest: &DatasetManifest, cfg: &RunConfig) -> Result<()> {
    fs::create_dir_all(&cfg.out_dir)
        .with_context(|| format!("creating {}", cfg.out_dir.display()))?;

    let per_shape: Vec<Vec<CameraRecord>> = manifest
        .entries
        .par_iter()
        .map(|entry| {
            dataset_viewpoints(&entry.shape_id, cfg.seed)
                .iter()
                .enumerate()
                .map(|(i, v)| CameraRecord::from_viewpoint(&entry.shape_id, i, v))
                .collect()
        })
        .collect();

    let cameras: Vec<CameraRecord> = per_shape.into_iter().flatten().collect();
    let path = cfg.out_dir.join("cameras.json");
    let file = CameraFile {
        schema_version: 1,
        cameras,
    };
    fs::write(&path, super::to_json_bytes(&file)?)?;
    println!(
        "sample-views: {} shapes, {} cameras -> {}",
        manifest.entries.len(),
        file.cameras.len(),
        path.display()
    );
    Ok(())
}
