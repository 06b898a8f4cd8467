use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use sketchkit_core::mask::DEFAULT_STROKE_COST;
use sketchkit_core::{AlignMode, EvalOptions, Reduce, StylizeParams};

/// Everything a run needs beyond its positional inputs. Values are layered:
/// built-in defaults, then the `--config` file, then command-line flags.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub seed: u64,
    /// Worker threads; `None` leaves the pool at its default size.
    pub jobs: Option<usize>,
    pub out_dir: PathBuf,
    pub stylize: StylizeParams,
    /// Also rasterize stylized sketches to PGM.
    pub raster: bool,
    pub eval: EvalOptions,
    /// Points sampled from a reference mesh when the reference is an OBJ.
    pub ref_samples: usize,
    pub stroke_cost: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            jobs: None,
            out_dir: PathBuf::from("out"),
            stylize: StylizeParams::default(),
            raster: false,
            eval: EvalOptions::default(),
            ref_samples: 2048,
            stroke_cost: DEFAULT_STROKE_COST,
        }
    }
}

impl RunConfig {
    /// Apply a flat `key = value` config file. Keys mirror flag names;
    /// `#`-prefixed lines and blank lines are skipped.
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .with_context(|| format!("{}:{}: expected key = value", path.display(), lineno + 1))?;
            self.apply_kv(key.trim(), value.trim())
                .with_context(|| format!("{}:{}", path.display(), lineno + 1))?;
        }
        Ok(())
    }

    pub fn apply_kv(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "seed" => self.seed = parse(key, value)?,
            "jobs" => self.set_jobs(parse(key, value)?)?,
            "out-dir" => self.out_dir = PathBuf::from(value),
            "rot-max" => self.stylize.rot_max = parse(key, value)?,
            "scale-min" => self.stylize.scale_range[0] = parse(key, value)?,
            "scale-max" => self.stylize.scale_range[1] = parse(key, value)?,
            "trans-radius" => self.stylize.trans_radius = parse(key, value)?,
            "noise-max" => self.stylize.local_noise_max = parse(key, value)?,
            "noise-wavelength" => self.stylize.noise_wavelength = parse(key, value)?,
            "max-traces" => self.stylize.max_traces = parse(key, value)?,
            "width-mean" => self.stylize.width_mean = parse(key, value)?,
            "width-var" => self.stylize.width_var = parse(key, value)?,
            "raster" => self.raster = parse(key, value)?,
            "threshold" => self.eval.threshold = parse(key, value)?,
            "reduce" => self.eval.reduce = Reduce::from_str(value).map_err(anyhow::Error::msg)?,
            "align" => self.eval.align = AlignMode::from_str(value).map_err(anyhow::Error::msg)?,
            "pred-samples" => self.eval.pred_samples = parse(key, value)?,
            "emd-samples" => self.eval.emd_samples = parse(key, value)?,
            "ref-samples" => self.ref_samples = parse(key, value)?,
            "stroke-cost" => self.stroke_cost = parse(key, value)?,
            _ => bail!("unknown config key `{key}`"),
        }
        Ok(())
    }

    pub fn set_jobs(&mut self, jobs: usize) -> Result<()> {
        if jobs == 0 {
            bail!("--jobs must be positive");
        }
        self.jobs = Some(jobs);
        Ok(())
    }
}

fn parse<T>(key: &str, value: &str) -> Result<T>
where
    T: FromStr,
    T::Err: Display,
{
    value
        .parse()
        .map_err(|e| anyhow::anyhow!("invalid value `{value}` for `{key}`: {e}"))
}
