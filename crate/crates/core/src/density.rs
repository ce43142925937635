//! Monte Carlo kink density on random rings.
//!
//! Trial `t` of a run seeded with `s` draws its ring from ChaCha8 seeded
//! with `s` on stream `t`, so a series depends only on its parameters and
//! never on scheduling. Trials run in parallel and are reduced in trial
//! order.

use rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::config::CyclicConfig;
use crate::dynamics::{packed, Rule};
use crate::error::{Error, Result};
use crate::kink::count_kinks_cyclic;
use crate::word::Word;

pub const RNG_NAME: &str = "ChaCha8Rng (rand_chacha 0.3)";
pub const RNG_DERIVATION: &str =
    "seed_from_u64(seed), set_stream(trial); cells filled from next_u64, cell i = bit i % 64 of draw i / 64";

/// Fit window floor: earlier steps are transient.
pub const DEFAULT_FIT_START: usize = 32;

pub fn sample_trial(width: usize, seed: u64, trial: u64) -> Result<CyclicConfig> {
    if width < crate::config::MIN_CYCLIC_WIDTH {
        return Err(Error::WidthTooSmall { width, needed: crate::config::MIN_CYCLIC_WIDTH });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let lanes = (0..packed::lanes_for(width)).map(|_| rng.next_u64()).collect();
    CyclicConfig::from_lanes(width, lanes)
}

/// A uniformly random ring; the same as trial 0 of a run with this seed.
pub fn sample_uniform(width: usize, seed: u64) -> Result<CyclicConfig> {
    sample_trial(width, seed, 0)
}

/// Per-step means over trials of a per-cell count.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensitySeries {
    /// What was counted: `kinks` or `word:<w>`.
    pub observable: String,
    pub width: usize,
    pub steps: usize,
    pub trials: u64,
    pub seed: u64,
    pub values: Vec<f64>,
    pub stderr: Vec<f64>,
}

impl DensitySeries {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,mean_density,stderr,trials,width,seed\n");
        for (n, (v, e)) in self.values.iter().zip(&self.stderr).enumerate() {
            out.push_str(&format!("{n},{v},{e},{},{},{}\n", self.trials, self.width, self.seed));
        }
        out
    }

    /// Sidecar metadata: parameters, generator identity and optional fit.
    pub fn metadata(&self, fit: Option<&PowerLawFit>) -> serde_json::Value {
        json!({
            "observable": self.observable,
            "width": self.width,
            "steps": self.steps,
            "trials": self.trials,
            "seed": self.seed,
            "rng": { "generator": RNG_NAME, "derivation": RNG_DERIVATION },
            "fit": fit,
        })
    }
}

fn check_run(width: usize, steps: usize, trials: u64) -> Result<()> {
    let needed = (2 * steps + 3).max(crate::config::MIN_CYCLIC_WIDTH);
    if width < needed {
        return Err(Error::WidthTooSmall { width, needed });
    }
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    Ok(())
}

/// Mean and standard error per step; `counts[t][n]` is trial `t` at step `n`.
fn aggregate(counts: &[Vec<usize>], width: usize, steps: usize) -> (Vec<f64>, Vec<f64>) {
    let trials = counts.len() as f64;
    (0..=steps)
        .map(|n| {
            let per_cell: Vec<f64> = counts.iter().map(|c| c[n] as f64 / width as f64).collect();
            let mean = per_cell.iter().sum::<f64>() / trials;
            let stderr = if counts.len() < 2 {
                0.0
            } else {
                let var = per_cell.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (trials - 1.0);
                (var / trials).sqrt()
            };
            (mean, stderr)
        })
        .unzip()
}

/// Kinks per cell after `0..=steps` steps of rule 18.
///
/// Aborts with `KinkCreated` if any trial's kink count ever rises.
pub fn density_trajectory(width: usize, steps: usize, trials: u64, seed: u64) -> Result<DensitySeries> {
    check_run(width, steps, trials)?;
    let counts: Vec<Vec<usize>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut x = sample_trial(width, seed, trial)?;
            let mut counts = Vec::with_capacity(steps + 1);
            counts.push(count_kinks_cyclic(&x));
            for step in 1..=steps {
                x = x.step(Rule::R18);
                let after = count_kinks_cyclic(&x);
                let before = counts[step - 1];
                if after > before {
                    return Err(Error::KinkCreated { trial, step, before, after });
                }
                counts.push(after);
            }
            Ok(counts)
        })
        .collect::<Result<_>>()?;
    let (values, stderr) = aggregate(&counts, width, steps);
    Ok(DensitySeries { observable: "kinks".into(), width, steps, trials, seed, values, stderr })
}

fn cyclic_occurrences(x: &CyclicConfig, w: &Word) -> usize {
    let cells = x.to_word();
    let wrapped = crate::word![&cells, cells.subword(0..w.len() - 1)];
    wrapped.occurrences(w).len()
}

/// Occurrences of `w` per cell after `0..=steps` steps of rule 18.
pub fn word_frequency_trajectory(w: &Word, width: usize, steps: usize, trials: u64, seed: u64) -> Result<DensitySeries> {
    check_run(width, steps, trials)?;
    if w.is_empty() {
        return Err(Error::WordTooShort { len: 0, needed: 1 });
    }
    if w.len() + 2 * steps > width {
        return Err(Error::WidthTooSmall { width, needed: w.len() + 2 * steps });
    }
    let counts: Vec<Vec<usize>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut x = sample_trial(width, seed, trial)?;
            let mut counts = vec![cyclic_occurrences(&x, w)];
            for _ in 0..steps {
                x = x.step(Rule::R18);
                counts.push(cyclic_occurrences(&x, w));
            }
            Ok(counts)
        })
        .collect::<Result<_>>()?;
    let (values, stderr) = aggregate(&counts, width, steps);
    Ok(DensitySeries { observable: format!("word:{w}"), width, steps, trials, seed, values, stderr })
}

/// Least-squares line through `(ln n, ln d_n)` over a window of steps.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PowerLawFit {
    pub exponent: f64,
    pub amplitude: f64,
    pub window: (usize, usize),
    /// RMS of the log-log residuals.
    pub residual: f64,
    /// `D` with `amplitude = (8 pi D)^{-1/2}`.
    pub diffusion: f64,
}

/// `[32, floor(0.9 * steps)]`: drops the transient and the last tenth.
pub fn default_window(steps: usize) -> (usize, usize) {
    (DEFAULT_FIT_START, steps * 9 / 10)
}

pub fn fit_power_law(series: &DensitySeries, window: (usize, usize)) -> Result<PowerLawFit> {
    fit_power_law_values(&series.values, window)
}

/// Fits `values[n]` for `n` in the inclusive window.
pub fn fit_power_law_values(values: &[f64], window: (usize, usize)) -> Result<PowerLawFit> {
    let (n_min, n_max) = window;
    let degenerate = |reason| Error::DegenerateWindow { n_min, n_max, reason };
    if n_min == 0 {
        return Err(degenerate("step 0 has no logarithm"));
    }
    if n_max >= values.len() {
        return Err(degenerate("window runs past the series"));
    }
    if n_max < n_min + 2 {
        return Err(degenerate("fewer than 3 points"));
    }
    let points = &values[n_min..=n_max];
    if points.iter().any(|&v| v.is_nan() || v <= 0.0) {
        return Err(degenerate("non-positive value in window"));
    }
    let xs: Vec<f64> = (n_min..=n_max).map(|n| (n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|v| v.ln()).collect();
    let count = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / count;
    let my = ys.iter().sum::<f64>() / count;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum::<f64>() / count).sqrt();
    let amplitude = intercept.exp();
    Ok(PowerLawFit {
        exponent: slope,
        amplitude,
        window,
        residual,
        diffusion: 1.0 / (8.0 * std::f64::consts::PI * amplitude * amplitude),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic() {
        assert_eq!(sample_uniform(8, 3).unwrap(), sample_uniform(8, 3).unwrap());
        assert_ne!(sample_trial(256, 3, 0).unwrap(), sample_trial(256, 3, 1).unwrap());
        assert_eq!(sample_uniform(2, 0), Err(Error::WidthTooSmall { width: 2, needed: 3 }));
    }

    #[test]
    fn run_preconditions() {
        assert_eq!(
            density_trajectory(10, 4, 1, 0).unwrap_err(),
            Error::WidthTooSmall { width: 10, needed: 11 }
        );
        assert_eq!(density_trajectory(11, 4, 0, 0).unwrap_err(), Error::NoTrials);
        let s = density_trajectory(64, 0, 1, 0).unwrap();
        assert_eq!(s.values.len(), 1);
        assert_eq!(s.stderr, vec![0.0]);
    }

    #[test]
    fn exact_fits() {
        let half: Vec<f64> = (0..200).map(|n| (n.max(1) as f64).powf(-0.5)).collect();
        let fit = fit_power_law_values(&half, (1, 199)).unwrap();
        assert!((fit.exponent + 0.5).abs() < 1e-9);
        assert!((fit.amplitude - 1.0).abs() < 1e-9);

        let inv: Vec<f64> = (0..200).map(|n| 3.0 / n.max(1) as f64).collect();
        let fit = fit_power_law_values(&inv, (10, 150)).unwrap();
        assert!((fit.exponent + 1.0).abs() < 1e-9);
        assert!(fit.residual < 1e-9);
    }

    #[test]
    fn degenerate_windows() {
        let v = vec![1.0, 0.5, 0.25, 0.0, 0.1];
        assert!(matches!(fit_power_law_values(&v, (1, 2)), Err(Error::DegenerateWindow { .. })));
        assert!(matches!(fit_power_law_values(&v, (0, 2)), Err(Error::DegenerateWindow { .. })));
        assert!(matches!(fit_power_law_values(&v, (1, 4)), Err(Error::DegenerateWindow { .. })));
        assert!(matches!(fit_power_law_values(&v, (2, 9)), Err(Error::DegenerateWindow { .. })));
    }

    #[test]
    fn csv_layout() {
        let s = density_trajectory(16, 2, 2, 5).unwrap();
        let csv = s.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "n,mean_density,stderr,trials,width,seed");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("0,") && lines[1].ends_with(",2,16,5"));
    }
}
