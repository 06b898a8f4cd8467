use std::fs;

use anyhow::{anyhow, Context, Result};
use rayon::prelude::*;
use serde::Serialize;
use sketchkit_core::mask::write_pgm;
use sketchkit_core::seed;
use sketchkit_core::{parse_svg, rasterize, stylize_traced, write_svg, Sketch, StrokeTrace};

use crate::config::RunConfig;
use crate::manifest::DatasetManifest;

#[derive(Serialize)]
struct TraceSidecar<'a> {
    schema_version: u32,
    shape_id: &'a str,
    seed: u64,
    strokes: &'a [StrokeTrace],
}

/// Stylize every sketch in the manifest. Entries fail independently; all
/// outputs land in the out dir named by shape id.
pub fn run(manifest: &DatasetManifest, cfg: &RunConfig) -> Result<()> {
    fs::create_dir_all(&cfg.out_dir)
        .with_context(|| format!("creating {}", cfg.out_dir.display()))?;

    let results: Vec<Result<(Sketch, Vec<StrokeTrace>, u64)>> = manifest
        .entries
        .par_iter()
        .map(|entry| {
            let rel = entry
                .sketch_path
                .as_deref()
                .ok_or_else(|| anyhow!("entry has no sketch_path"))?;
            let path = manifest.resolve(rel);
            let sketch = parse_svg(&path)?;
            let entry_seed = seed::derive(seed::derive(cfg.seed, "stylize"), &entry.shape_id);
            let (styled, traces) = stylize_traced(&sketch, &cfg.stylize, entry_seed)?;
            Ok((styled, traces, entry_seed))
        })
        .collect();

    let mut failed = 0;
    for (entry, result) in manifest.entries.iter().zip(results) {
        match result {
            Ok((styled, traces, entry_seed)) => {
                let svg_path = cfg.out_dir.join(format!("{}.svg", entry.shape_id));
                write_svg(&svg_path, &styled)?;
                let sidecar = TraceSidecar {
                    schema_version: 1,
                    shape_id: &entry.shape_id,
                    seed: entry_seed,
                    strokes: &traces,
                };
                fs::write(
                    cfg.out_dir.join(format!("{}.traces.json", entry.shape_id)),
                    super::to_json_bytes(&sidecar)?,
                )?;
                if cfg.raster {
                    let mask = rasterize(&styled)?;
                    write_pgm(&cfg.out_dir.join(format!("{}.pgm", entry.shape_id)), &mask)?;
                }
                println!(
                    "stylize {}: {} strokes -> {}",
                    entry.shape_id,
                    styled.strokes.len(),
                    svg_path.display()
                );
            }
            Err(err) => {
                eprintln!("stylize {}: error: {err:#}", entry.shape_id);
                failed += 1;
            }
        }
    }
    super::fail_if_any("stylize", failed, manifest.entries.len())
}
