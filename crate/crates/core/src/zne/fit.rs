use serde::{Deserialize, Serialize};

use super::{ZneDataset, ZneError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FitModel {
    /// `f(c) = a + b c`.
    Linear,
    /// `f(c) = mu e^{lambda c}`.
    #[serde(rename = "exp")]
    Exponential,
    /// The mean at a single stretch factor, no extrapolation.
    Raw,
}

impl FitModel {
    pub fn as_str(self) -> &'static str {
        match self {
            FitModel::Linear => "linear",
            FitModel::Exponential => "exp",
            FitModel::Raw => "raw",
        }
    }

    pub fn eval(self, params: [f64; 2], c: f64) -> f64 {
        match self {
            FitModel::Linear => params[0] + params[1] * c,
            FitModel::Exponential => params[0] * (params[1] * c).exp(),
            FitModel::Raw => params[0],
        }
    }
}

impl std::str::FromStr for FitModel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "linear" => Ok(FitModel::Linear),
            "exp" | "exponential" => Ok(FitModel::Exponential),
            "raw" => Ok(FitModel::Raw),
            other => Err(format!(
                "unknown fit model `{other}` (expected linear or exp)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub model: FitModel,
    /// `(a, b)` or `(mu, lambda)` from the full dataset.
    pub params: [f64; 2],
    /// Bootstrap means; equal to `params` without a bootstrap.
    pub param_means: [f64; 2],
    /// One standard deviation per parameter; zero without a bootstrap.
    pub param_stds: [f64; 2],
    pub zero_noise: f64,
    /// Two standard deviations of the zero-noise value.
    pub zero_noise_err: f64,
    pub cs_used: Vec<u32>,
    pub resamples: usize,
    pub dropped: usize,
}

impl FitResult {
    pub(crate) fn point(model: FitModel, params: [f64; 2], cs_used: Vec<u32>) -> Self {
        FitResult {
            model,
            params,
            param_means: params,
            param_stds: [0.0; 2],
            zero_noise: model.eval(params, 0.0),
            zero_noise_err: 0.0,
            cs_used,
            resamples: 0,
            dropped: 0,
        }
    }

    pub fn curve(&self, c: f64) -> f64 {
        self.model.eval(self.param_means, c)
    }
}

fn pooled<'a>(ds: &'a ZneDataset, cs: &[u32]) -> Result<Vec<(f64, &'a [f64])>, ZneError> {
    let mut distinct = cs.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(ZneError::TooFewStretches(distinct));
    }
    distinct
        .iter()
        .map(|&c| Ok((c as f64, ds.values(c)?)))
        .collect()
}

/// Ordinary least squares through every pooled point.
pub(crate) fn fit_linear(groups: &[(f64, &[f64])]) -> [f64; 2] {
    let (mut n, mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &(c, ys) in groups {
        for &y in ys {
            n += 1.0;
            sx += c;
            sy += y;
            sxx += c * c;
            sxy += c * y;
        }
    }
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    [(sy - slope * sx) / n, slope]
}

/// Levenberg-Marquardt on the pooled points, started from a straight-line
/// fit of `ln |mean|` against `c`.
pub(crate) fn fit_exponential(groups: &[(f64, &[f64])]) -> Result<[f64; 2], ZneError> {
    let means: Vec<(f64, f64)> = groups
        .iter()
        .map(|&(c, ys)| (c, ys.iter().sum::<f64>() / ys.len() as f64))
        .collect();
    let sign = means[0].1.signum();
    if means.iter().any(|&(_, m)| m == 0.0 || m.signum() != sign) {
        return Err(ZneError::NonConvergent(
            "per-stretch means change sign".into(),
        ));
    }
    let logs: Vec<f64> = means.iter().map(|&(_, m)| m.abs().ln()).collect();
    let log_groups: Vec<(f64, &[f64])> = means
        .iter()
        .zip(&logs)
        .map(|(&(c, _), l)| (c, std::slice::from_ref(l)))
        .collect();
    let [ln_mu, lambda0] = fit_linear(&log_groups);
    let mut p = [sign * ln_mu.exp(), lambda0];

    let points: Vec<(f64, f64)> = groups
        .iter()
        .flat_map(|&(c, ys)| ys.iter().map(move |&y| (c, y)))
        .collect();
    let cost = |p: [f64; 2]| -> f64 {
        points
            .iter()
            .map(|&(c, y)| (y - p[0] * (p[1] * c).exp()).powi(2))
            .sum()
    };
    let mut current = cost(p);
    let mut damping = 1e-3;
    for _ in 0..500 {
        // Normal equations J^T J and J^T r.
        let (mut a11, mut a12, mut a22, mut g1, mut g2) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for &(c, y) in &points {
            let e = (p[1] * c).exp();
            let (j1, j2) = (e, p[0] * c * e);
            let r = y - p[0] * e;
            a11 += j1 * j1;
            a12 += j1 * j2;
            a22 += j2 * j2;
            g1 += j1 * r;
            g2 += j2 * r;
        }
        let mut accepted = false;
        while damping < 1e12 {
            let (b11, b22) = (a11 * (1.0 + damping), a22 * (1.0 + damping));
            let det = b11 * b22 - a12 * a12;
            if det.abs() < f64::MIN_POSITIVE {
                damping *= 10.0;
                continue;
            }
            let step = [(b22 * g1 - a12 * g2) / det, (b11 * g2 - a12 * g1) / det];
            let trial = [p[0] + step[0], p[1] + step[1]];
            let trial_cost = cost(trial);
            if trial_cost.is_finite() && trial_cost <= current {
                let small = step[0].abs() <= 1e-13 * (p[0].abs() + 1e-13)
                    && step[1].abs() <= 1e-13 * (p[1].abs() + 1e-13);
                let flat = current - trial_cost <= 1e-15 * current.max(1e-300);
                p = trial;
                current = trial_cost;
                damping = (damping / 10.0).max(1e-12);
                accepted = true;
                if small || flat {
                    return finish(p);
                }
                break;
            }
            damping *= 10.0;
        }
        if !accepted {
            // No downhill step at any damping: already at the minimum.
            return finish(p);
        }
    }
    Err(ZneError::NonConvergent("iteration limit reached".into()))
}

fn finish(p: [f64; 2]) -> Result<[f64; 2], ZneError> {
    if p.iter().all(|x| x.is_finite()) && p[0] != 0.0 {
        Ok(p)
    } else {
        Err(ZneError::NonConvergent(format!(
            "parameters diverged to {p:?}"
        )))
    }
}

pub(crate) fn fit_params(model: FitModel, groups: &[(f64, &[f64])]) -> Result<[f64; 2], ZneError> {
    match model {
        FitModel::Linear => Ok(fit_linear(groups)),
        FitModel::Exponential => fit_exponential(groups),
        FitModel::Raw => {
            let ys = groups[0].1;
            Ok([ys.iter().sum::<f64>() / ys.len() as f64, 0.0])
        }
    }
}

/// Least-squares fit of `model` to every sample at the stretch factors in
/// `cs`.
pub fn fit(ds: &ZneDataset, model: FitModel, cs: &[u32]) -> Result<FitResult, ZneError> {
    if model == FitModel::Raw {
        let c = *cs.first().ok_or(ZneError::TooFewStretches(Vec::new()))?;
        return raw_estimate(ds, c);
    }
    let groups = pooled(ds, cs)?;
    let params = fit_params(model, &groups)?;
    let used = groups.iter().map(|&(c, _)| c as u32).collect();
    Ok(FitResult::point(model, params, used))
}

/// Sample mean at one stretch factor with twice its standard error.
pub fn raw_estimate(ds: &ZneDataset, c: u32) -> Result<FitResult, ZneError> {
    let v = ds.values(c)?;
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = if v.len() > 1 {
        v.iter().map(|y| (y - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    let sem = (var / n).sqrt();
    let mut r = FitResult::point(FitModel::Raw, [mean, 0.0], vec![c]);
    r.param_stds = [sem, 0.0];
    r.zero_noise_err = 2.0 * sem;
    Ok(r)
}

pub(crate) fn pooled_groups<'a>(
    ds: &'a ZneDataset,
    cs: &[u32],
) -> Result<Vec<(f64, &'a [f64])>, ZneError> {
    pooled(ds, cs)
}
