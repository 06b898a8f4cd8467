use std::collections::HashSet;
use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use sketchkit_core::mask::{read_pgm, write_labels};
use sketchkit_core::seed;
use sketchkit_core::{sample_labels, SparseLabelSet};

use crate::config::RunConfig;

/// Draw sparse foreground/background labels from each ground-truth mask.
/// Output naming and RNG streams key off the mask file stem.
pub fn run(masks: &[PathBuf], cfg: &RunConfig) -> Result<()> {
    fs::create_dir_all(&cfg.out_dir)
        .with_context(|| format!("creating {}", cfg.out_dir.display()))?;

    let stems: Vec<String> = masks.iter().map(|p| super::stem(p)).collect();
    let mut seen = HashSet::new();
    for stem in &stems {
        if !seen.insert(stem.as_str()) {
            bail!("two mask files share the stem `{stem}`; outputs would collide");
        }
    }

    let results: Vec<Result<SparseLabelSet>> = masks
        .par_iter()
        .zip(&stems)
        .map(|(path, stem)| {
            let mask = read_pgm(path)?;
            let file_seed = seed::derive(seed::derive(cfg.seed, "sample-labels"), stem);
            Ok(sample_labels(&mask, file_seed)?)
        })
        .collect();

    let mut failed = 0;
    for (stem, result) in stems.iter().zip(results) {
        match result {
            Ok(labels) => {
                let path = cfg.out_dir.join(format!("{stem}.labels.json"));
                write_labels(&path, &labels)?;
                println!(
                    "sample-labels {stem}: {} foreground, {} background -> {}",
                    labels.foreground.len(),
                    labels.background.len(),
                    path.display()
                );
            }
            Err(err) => {
                eprintln!("sample-labels {stem}: error: {err:#}");
                failed += 1;
            }
        }
    }
    super::fail_if_any("sample-labels", failed, masks.len())
}
