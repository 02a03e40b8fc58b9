//! Exact Gaussian-process regression with a squared-exponential kernel.
//!
//! Each output dimension is an independent GP sharing the input lengthscales.
//! Targets are centered on their training mean; the signal variance of each
//! output is the sample variance of its targets (floored), and the noise
//! variance is fixed per output.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fixed hyperparameters of one multi-output regressor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GpConfig {
    /// One lengthscale per input dimension.
    pub lengthscales: Vec<f64>,
    /// One noise standard deviation per output dimension.
    pub noise_std: Vec<f64>,
    /// Lower bound on the per-output signal standard deviation.
    pub signal_std_floor: f64,
}

/// Dense lower-triangular Cholesky factor stored row-major.
#[derive(Debug, Clone)]
struct Cholesky {
    n: usize,
    l: Vec<f64>,
}

impl Cholesky {
    /// Factorizes the symmetric matrix `a` (row-major, n×n). Returns the index
    /// and value of the first non-positive pivot on failure.
    fn factor(a: &[f64], n: usize) -> std::result::Result<Self, (usize, f64)> {
        let mut l = vec![0.0; n * n];
        for j in 0..n {
            let mut d = a[j * n + j];
            for k in 0..j {
                d -= l[j * n + k] * l[j * n + k];
            }
            if !(d > 0.0) {
                return Err((j, d));
            }
            let djj = d.sqrt();
            l[j * n + j] = djj;
            for i in (j + 1)..n {
                let mut s = a[i * n + j];
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k];
                }
                l[i * n + j] = s / djj;
            }
        }
        Ok(Self { n, l })
    }

    /// Solves `L Lᵀ x = b`.
    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut y = b.to_vec();
        for i in 0..n {
            let mut s = y[i];
            for k in 0..i {
                s -= self.l[i * n + k] * y[k];
            }
            y[i] = s / self.l[i * n + i];
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in (i + 1)..n {
                s -= self.l[k * n + i] * y[k];
            }
            y[i] = s / self.l[i * n + i];
        }
        y
    }

    /// Solves `L v = b` (forward substitution only).
    fn solve_lower(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut y = b.to_vec();
        for i in 0..n {
            let mut s = y[i];
            for k in 0..i {
                s -= self.l[i * n + k] * y[k];
            }
            y[i] = s / self.l[i * n + i];
        }
        y
    }
}

#[derive(Debug, Clone)]
struct OutputGp {
    mean: f64,
    signal_var: f64,
    noise_var: f64,
    chol: Cholesky,
    /// (K + σₙ²I)⁻¹ (y − ȳ), with K built from the unit-variance base kernel times `signal_var`.
    weights: Vec<f64>,
}

/// A fitted multi-output GP.
#[derive(Debug, Clone)]
pub struct GpRegressor {
    input_dim: usize,
    inputs: Vec<f64>,
    inv_lengthscales: Vec<f64>,
    outputs: Vec<OutputGp>,
}

impl GpRegressor {
    /// Fits the regressor. `inputs[i]` and `targets[i]` belong to sample `i`.
    pub fn fit(inputs: &[Vec<f64>], targets: &[Vec<f64>], config: &GpConfig) -> Result<Self> {
        let n = inputs.len();
        if n == 0 {
            return Err(Error::EmptyTrainingSet);
        }
        if targets.len() != n {
            return Err(Error::DimensionMismatch(format!("{n} inputs but {} targets", targets.len())));
        }
        let input_dim = config.lengthscales.len();
        let output_dim = config.noise_std.len();
        if let Some(bad) = inputs.iter().find(|x| x.len() != input_dim) {
            return Err(Error::DimensionMismatch(format!(
                "input of length {} but {input_dim} lengthscales",
                bad.len()
            )));
        }
        if let Some(bad) = targets.iter().find(|y| y.len() != output_dim) {
            return Err(Error::DimensionMismatch(format!(
                "target of length {} but {output_dim} noise levels",
                bad.len()
            )));
        }
        if config.lengthscales.iter().any(|l| !(*l > 0.0)) || config.noise_std.iter().any(|s| !(*s > 0.0)) {
            return Err(Error::Config("GP lengthscales and noise levels must be positive".into()));
        }

        let inv_lengthscales: Vec<f64> = config.lengthscales.iter().map(|l| 1.0 / l).collect();
        let flat: Vec<f64> = inputs.iter().flatten().copied().collect();
        let mut reg = Self {
            input_dim,
            inputs: flat,
            inv_lengthscales,
            outputs: Vec::with_capacity(output_dim),
        };

        let mut base = vec![0.0; n * n];
        for i in 0..n {
            base[i * n + i] = 1.0;
            for j in 0..i {
                let k = reg.base_kernel(reg.input(i), reg.input(j));
                base[i * n + j] = k;
                base[j * n + i] = k;
            }
        }

        for d in 0..output_dim {
            let ys: Vec<f64> = targets.iter().map(|t| t[d]).collect();
            let mean = ys.iter().sum::<f64>() / n as f64;
            let var = ys.iter().map(|y| (y - mean).powi(2)).sum::<f64>() / n as f64;
            let signal_var = var.sqrt().max(config.signal_std_floor).powi(2);
            let noise_var = config.noise_std[d].powi(2);
            let chol = factor_with_jitter(&base, n, signal_var, noise_var)?;
            let centered: Vec<f64> = ys.iter().map(|y| y - mean).collect();
            let weights = chol.solve(&centered);
            reg.outputs.push(OutputGp {
                mean,
                signal_var,
                noise_var,
                chol,
                weights,
            });
        }
        Ok(reg)
    }

    #[inline]
    fn input(&self, i: usize) -> &[f64] {
        &self.inputs[i * self.input_dim..(i + 1) * self.input_dim]
    }

    #[inline]
    fn base_kernel(&self, a: &[f64], b: &[f64]) -> f64 {
        let mut s = 0.0;
        for ((x, y), il) in a.iter().zip(b).zip(&self.inv_lengthscales) {
            let z = (x - y) * il;
            s += z * z;
        }
        (-0.5 * s).exp()
    }

    pub fn len(&self) -> usize {
        self.inputs.len() / self.input_dim
    }

    pub fn is_empty(&self) -> bool {
        self.inputs.is_empty()
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn output_dim(&self) -> usize {
        self.outputs.len()
    }

    /// Per-output training mean (the prediction far from all data).
    pub fn prior_mean(&self) -> Vec<f64> {
        self.outputs.iter().map(|o| o.mean).collect()
    }

    /// Per-output signal and noise variances.
    pub fn variances(&self) -> Vec<(f64, f64)> {
        self.outputs.iter().map(|o| (o.signal_var, o.noise_var)).collect()
    }

    fn kernel_row(&self, query: &[f64]) -> Vec<f64> {
        (0..self.len()).map(|i| self.base_kernel(query, self.input(i))).collect()
    }

    /// Posterior mean `ȳ + kᵀ (K + σₙ² I)⁻¹ (y − ȳ)` for every output.
    pub fn predict_mean(&self, query: &[f64]) -> Vec<f64> {
        let k = self.kernel_row(query);
        self.outputs
            .iter()
            .map(|o| o.mean + o.signal_var * k.iter().zip(&o.weights).map(|(a, b)| a * b).sum::<f64>())
            .collect()
    }

    /// Posterior variance of the latent function per output (diagnostics only).
    pub fn predict_variance(&self, query: &[f64]) -> Vec<f64> {
        let k = self.kernel_row(query);
        self.outputs
            .iter()
            .map(|o| {
                let ks: Vec<f64> = k.iter().map(|v| v * o.signal_var).collect();
                let v = o.chol.solve_lower(&ks);
                (o.signal_var - v.iter().map(|x| x * x).sum::<f64>()).max(0.0)
            })
            .collect()
    }

    /// `max_d ‖L Lᵀ − (K + σₙ²I)‖∞ / ‖K‖∞` over output dimensions.
    pub fn factorization_residual(&self) -> f64 {
        let n = self.len();
        let mut worst: f64 = 0.0;
        for o in &self.outputs {
            let l = &o.chol.l;
            let mut res_norm: f64 = 0.0;
            let mut k_norm: f64 = 0.0;
            for i in 0..n {
                let mut res_row = 0.0;
                let mut k_row = 0.0;
                for j in 0..n {
                    let k = o.signal_var * self.base_kernel(self.input(i), self.input(j));
                    let a = k + if i == j { o.noise_var } else { 0.0 };
                    let llt: f64 = (0..=i.min(j)).map(|m| l[i * n + m] * l[j * n + m]).sum();
                    res_row += (llt - a).abs();
                    k_row += k.abs();
                }
                res_norm = res_norm.max(res_row);
                k_norm = k_norm.max(k_row);
            }
            worst = worst.max(res_norm / k_norm);
        }
        worst
    }
}

fn factor_with_jitter(base: &[f64], n: usize, signal_var: f64, noise_var: f64) -> Result<Cholesky> {
    let mut a: Vec<f64> = base.iter().map(|k| k * signal_var).collect();
    for i in 0..n {
        a[i * n + i] += noise_var;
    }
    let scale = signal_var + noise_var;
    let mut jitter = 0.0;
    let mut last_pivot = 0.0;
    for attempt in 0..6 {
        if attempt > 0 {
            let next = if jitter == 0.0 { 1e-12 * scale } else { jitter * 100.0 };
            for i in 0..n {
                a[i * n + i] += next - jitter;
            }
            jitter = next;
        }
        match Cholesky::factor(&a, n) {
            Ok(c) => return Ok(c),
            Err((_, pivot)) => last_pivot = pivot,
        }
    }
    let condition_estimate = if last_pivot.abs() > 0.0 {
        scale * n as f64 / last_pivot.abs()
    } else {
        f64::INFINITY
    };
    Err(Error::Factorization { condition_estimate })
}
