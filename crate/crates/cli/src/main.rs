//! `sketchkit` — seeded dataset preparation and evaluation toolkit for
//! sketch-based 3D modeling experiments. Every command is deterministic
//! given (inputs, seed, config), independent of `--jobs`.

mod commands;
mod config;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use config::RunConfig;
use manifest::DatasetManifest;

#[derive(Parser)]
#[command(name = "sketchkit", version, about = "Sketch dataset and 3D reconstruction evaluation toolkit")]
struct Cli {
    /// Master RNG seed; per-entry streams are derived from it.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (default: all cores). Outputs do not depend on this.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Flat `key = value` config file; flags override its entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for generated artifacts (default `out`).
    #[arg(long, global = true, value_name = "DIR")]
    out_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply seeded stroke deformations to every sketch in a manifest.
    Stylize {
        /// Dataset manifest JSON; entries need `sketch_path`.
        #[arg(long)]
        manifest: PathBuf,
        /// Max rotation magnitude in degrees.
        #[arg(long)]
        rot_max: Option<f64>,
        /// Lower bound of the per-axis scale factor.
        #[arg(long)]
        scale_min: Option<f64>,
        /// Upper bound of the per-axis scale factor.
        #[arg(long)]
        scale_max: Option<f64>,
        /// Max translation magnitude in pixels.
        #[arg(long)]
        trans_radius: Option<f64>,
        /// Max local noise offset per component, in pixels.
        #[arg(long)]
        noise_max: Option<f64>,
        /// Spacing between noise control points along a stroke, in pixels.
        #[arg(long)]
        noise_wavelength: Option<f64>,
        /// Max over-sketch trace count per stroke.
        #[arg(long)]
        max_traces: Option<u32>,
        /// Mean of the sampled stroke width, in pixels.
        #[arg(long)]
        width_mean: Option<f64>,
        /// Variance of the sampled stroke width.
        #[arg(long)]
        width_var: Option<f64>,
        /// Also rasterize each stylized sketch to PGM.
        #[arg(long)]
        raster: bool,
    },
    /// Generate the per-shape camera set (8 base + 40 perturbed views).
    SampleViews {
        #[arg(long)]
        manifest: PathBuf,
    },
    /// Draw sparse foreground/background pixel labels from mask images.
    SampleLabels {
        /// Ground-truth mask PGMs, one label file produced per input.
        #[arg(required = true)]
        masks: Vec<PathBuf>,
    },
    /// Grow sparse labels into a dense mask over a rasterized sketch.
    Propagate {
        /// Sketch raster (PGM), or an SVG rasterized on the fly.
        #[arg(long)]
        sketch: PathBuf,
        /// Sparse label JSON produced by sample-labels.
        #[arg(long)]
        labels: PathBuf,
        /// Cost of entering a stroke pixel (background pixels cost 1).
        #[arg(long)]
        stroke_cost: Option<u64>,
    },
    /// Score a predicted mask against ground truth (IoU/precision/recall).
    EvalMask {
        #[arg(long)]
        pred: PathBuf,
        #[arg(long)]
        truth: PathBuf,
    },
    /// Evaluate predicted meshes against references (Chamfer/EMD/F-score).
    EvalRecon {
        /// Manifest of predicted meshes (OBJ).
        #[arg(long)]
        pred: PathBuf,
        /// Manifest of references (OBJ sampled at --ref-samples, or
        /// .xyz/.xyzb point clouds used as-is).
        #[arg(long = "ref")]
        reference: PathBuf,
        /// Points sampled from each predicted mesh.
        #[arg(long)]
        pred_samples: Option<usize>,
        /// Subset size for the assignment metric.
        #[arg(long)]
        emd_samples: Option<usize>,
        /// Points sampled from OBJ references.
        #[arg(long)]
        ref_samples: Option<usize>,
        /// F-score distance threshold.
        #[arg(long)]
        threshold: Option<f64>,
        /// Chamfer reduction: sum | mean.
        #[arg(long)]
        reduce: Option<String>,
        /// Pre-metric registration: none | centroid-scale.
        #[arg(long)]
        align: Option<String>,
    },
    /// Regression loss and gradient from embeddings and distances CSVs.
    Regloss {
        /// CSV: header `shape_id,<dims...>`, one row per shape.
        #[arg(long)]
        embeddings: PathBuf,
        /// CSV: header `shape_id,<ids...>`, square distance matrix.
        #[arg(long)]
        distances: PathBuf,
        /// Comma-separated per-shape sigmas (default: three-sigma rule).
        #[arg(long)]
        sigma: Option<String>,
        /// Also compare the gradient against central finite differences.
        #[arg(long)]
        grad_check: bool,
    },
    /// Format an eval-recon JSON report as an aligned summary table.
    Report {
        /// recon.json produced by eval-recon.
        #[arg(long)]
        input: PathBuf,
        /// Also write gnuplot-ready data columns to the out dir.
        #[arg(long)]
        gnuplot: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        cfg.apply_file(path)?;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(jobs) = cli.jobs {
        cfg.set_jobs(jobs)?;
    }
    if let Some(dir) = &cli.out_dir {
        cfg.out_dir = dir.clone();
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.unwrap_or(0))
        .build()
        .context("building thread pool")?;
    pool.install(|| dispatch(cli.command, cfg))
}

fn dispatch(command: Command, mut cfg: RunConfig) -> Result<()> {
    match command {
        Command::Stylize {
            manifest,
            rot_max,
            scale_min,
            scale_max,
            trans_radius,
            noise_max,
            noise_wavelength,
            max_traces,
            width_mean,
            width_var,
            raster,
        } => {
            if let Some(v) = rot_max {
                cfg.stylize.rot_max = v;
            }
            if let Some(v) = scale_min {
                cfg.stylize.scale_range[0] = v;
            }
            if let Some(v) = scale_max {
                cfg.stylize.scale_range[1] = v;
            }
            if let Some(v) = trans_radius {
                cfg.stylize.trans_radius = v;
            }
            if let Some(v) = noise_max {
                cfg.stylize.local_noise_max = v;
            }
            if let Some(v) = noise_wavelength {
                cfg.stylize.noise_wavelength = v;
            }
            if let Some(v) = max_traces {
                cfg.stylize.max_traces = v;
            }
            if let Some(v) = width_mean {
                cfg.stylize.width_mean = v;
            }
            if let Some(v) = width_var {
                cfg.stylize.width_var = v;
            }
            if raster {
                cfg.raster = true;
            }
            let manifest = DatasetManifest::load(&manifest)?;
            commands::stylize::run(&manifest, &cfg)
        }
        Command::SampleViews { manifest } => {
            let manifest = DatasetManifest::load(&manifest)?;
            commands::views::run(&manifest, &cfg)
        }
        Command::SampleLabels { masks } => commands::labels::run(&masks, &cfg),
        Command::Propagate {
            sketch,
            labels,
            stroke_cost,
        } => {
            if let Some(v) = stroke_cost {
                cfg.stroke_cost = v;
            }
            commands::masks::propagate(&sketch, &labels, &cfg)
        }
        Command::EvalMask { pred, truth } => commands::masks::eval(&pred, &truth, &cfg),
        Command::EvalRecon {
            pred,
            reference,
            pred_samples,
            emd_samples,
            ref_samples,
            threshold,
            reduce,
            align,
        } => {
            if let Some(v) = pred_samples {
                cfg.eval.pred_samples = v;
            }
            if let Some(v) = emd_samples {
                cfg.eval.emd_samples = v;
            }
            if let Some(v) = ref_samples {
                cfg.ref_samples = v;
            }
            if let Some(v) = threshold {
                cfg.eval.threshold = v;
            }
            if let Some(v) = reduce {
                cfg.apply_kv("reduce", &v)?;
            }
            if let Some(v) = align {
                cfg.apply_kv("align", &v)?;
            }
            let pred = DatasetManifest::load(&pred)?;
            let reference = DatasetManifest::load(&reference)?;
            commands::recon::run(&pred, &reference, &cfg)
        }
        Command::Regloss {
            embeddings,
            distances,
            sigma,
            grad_check,
        } => commands::regloss::run(&embeddings, &distances, sigma.as_deref(), grad_check, &cfg),
        Command::Report { input, gnuplot } => commands::report::run(&input, gnuplot, &cfg),
    }
}
