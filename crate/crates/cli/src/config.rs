//! Flat `key = value` run configuration.
//!
//! Keys are dotted (`model.mu`), one assignment per line; blank lines and
//! lines starting with `#` are ignored. Command-line `--set key=value`
//! overrides apply on top of the file, and `--seed` / `--out` flags on top
//! of those.

use anyhow::{bail, Context, Result};
use covshift_core::binormal::BinormalParams;
use covshift_core::finite_space::SweepConfig;
use covshift_core::quadrature::QuadratureConfig;
use std::path::PathBuf;

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub mu: f64,
    pub nu: f64,
    pub sigma: f64,
    pub p: f64,
    pub tau: f64,
    pub quad_abs_tol: f64,
    pub figure1_q_step: f64,
    pub figure2_x_min: f64,
    pub figure2_x_max: f64,
    pub figure2_x_step: f64,
    pub n_source: usize,
    pub n_target: usize,
    pub theorem_max_outcomes: usize,
    pub theorem_draws_per_structure: usize,
    pub theorem_random_densities: usize,
    pub probing_grid_points: usize,
    pub probing_t_max: f64,
    pub probing_max_iter: usize,
    pub probing_pps_weight: f64,
    pub tol: f64,
    pub seed: u64,
    pub out: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            mu: 0.0,
            nu: 1.5,
            sigma: 1.0,
            p: 0.3,
            tau: 2.5,
            quad_abs_tol: 1e-8,
            figure1_q_step: 0.01,
            figure2_x_min: -3.0,
            figure2_x_max: 8.0,
            figure2_x_step: 0.01,
            n_source: 1_000_000,
            n_target: 1_000_000,
            theorem_max_outcomes: 6,
            theorem_draws_per_structure: 20,
            theorem_random_densities: 5,
            probing_grid_points: 1000,
            probing_t_max: 0.999,
            probing_max_iter: 100,
            probing_pps_weight: 0.6,
            tol: 1e-9,
            seed: 0,
            out: PathBuf::from("out"),
        }
    }
}

impl RunConfig {
    /// Applies every assignment in a config file.
    pub fn apply_file(&mut self, text: &str) -> Result<()> {
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .with_context(|| format!("line {}: expected `key = value`", lineno + 1))?;
            self.set(key.trim(), value.trim())
                .with_context(|| format!("line {}", lineno + 1))?;
        }
        Ok(())
    }

    /// Applies one `key=value` assignment.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T>
        where
            T::Err: std::fmt::Display,
        {
            value
                .parse()
                .map_err(|e| anyhow::anyhow!("bad value {value:?} for {key}: {e}"))
        }
        match key {
            "model.mu" => self.mu = num(key, value)?,
            "model.nu" => self.nu = num(key, value)?,
            "model.sigma" => self.sigma = num(key, value)?,
            "model.p" => self.p = num(key, value)?,
            "model.tau" => self.tau = num(key, value)?,
            "quadrature.abs_tol" => self.quad_abs_tol = num(key, value)?,
            "figure1.q_step" => self.figure1_q_step = num(key, value)?,
            "figure2.x_min" => self.figure2_x_min = num(key, value)?,
            "figure2.x_max" => self.figure2_x_max = num(key, value)?,
            "figure2.x_step" => self.figure2_x_step = num(key, value)?,
            "samples.n_source" => self.n_source = num(key, value)?,
            "samples.n_target" => self.n_target = num(key, value)?,
            "theorem.max_outcomes" => self.theorem_max_outcomes = num(key, value)?,
            "theorem.draws_per_structure" => self.theorem_draws_per_structure = num(key, value)?,
            "theorem.random_densities" => self.theorem_random_densities = num(key, value)?,
            "probing.grid_points" => self.probing_grid_points = num(key, value)?,
            "probing.t_max" => self.probing_t_max = num(key, value)?,
            "probing.max_iter" => self.probing_max_iter = num(key, value)?,
            "probing.pps_weight" => self.probing_pps_weight = num(key, value)?,
            "tol" => self.tol = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "out" => self.out = PathBuf::from(value),
            other => bail!("unknown config key {other:?}"),
        }
        Ok(())
    }

    pub fn params(&self) -> Result<BinormalParams> {
        Ok(BinormalParams::new(
            self.mu, self.nu, self.sigma, self.p, self.tau,
        )?)
    }

    pub fn quadrature(&self) -> QuadratureConfig {
        QuadratureConfig::adaptive(self.quad_abs_tol)
    }

    pub fn sweep(&self) -> SweepConfig {
        SweepConfig {
            max_outcomes: self.theorem_max_outcomes,
            draws_per_structure: self.theorem_draws_per_structure,
            random_densities: self.theorem_random_densities,
            seed: self.seed,
            tol: self.tol,
        }
    }
}
