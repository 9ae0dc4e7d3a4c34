use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fit::{fit_params, pooled_groups, FitModel, FitResult};
use super::{ZneDataset, ZneError};
use crate::seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Resampling {
    /// Each stretch factor resampled on its own.
    #[default]
    Independent,
    /// Whole runs resampled together, keeping every stretch factor of a run.
    Tuple,
}

impl std::str::FromStr for Resampling {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "independent" => Ok(Resampling::Independent),
            "tuple" => Ok(Resampling::Tuple),
            other => Err(format!("unknown resampling scheme `{other}`")),
        }
    }
}

/// Fits `model` to the full dataset and to `resamples` bootstrap copies.
/// Copies whose fit fails are dropped and counted; the reported error is two
/// standard deviations over the surviving copies.
pub fn bootstrap(
    ds: &ZneDataset,
    model: FitModel,
    cs: &[u32],
    resamples: usize,
    master_seed: u64,
    scheme: Resampling,
) -> Result<FitResult, ZneError> {
    let mut result = super::fit(ds, model, cs)?;
    if resamples == 0 {
        return Ok(result);
    }
    let groups = if model == FitModel::Raw {
        vec![(cs[0] as f64, ds.values(cs[0])?)]
    } else {
        pooled_groups(ds, cs)?
    };
    let runs = groups[0].1.len();
    if scheme == Resampling::Tuple && groups.iter().any(|g| g.1.len() != runs) {
        return Err(ZneError::RaggedTuples);
    }

    let fits: Vec<Option<[f64; 2]>> = (0..resamples)
        .into_par_iter()
        .map(|i| {
            let mut rng = seed::rng(master_seed, &[i as u64]);
            let copies: Vec<Vec<f64>> = match scheme {
                Resampling::Independent => groups
                    .iter()
                    .map(|(_, ys)| {
                        (0..ys.len())
                            .map(|_| ys[rng.random_range(0..ys.len())])
                            .collect()
                    })
                    .collect(),
                Resampling::Tuple => {
                    let picks: Vec<usize> = (0..runs).map(|_| rng.random_range(0..runs)).collect();
                    groups
                        .iter()
                        .map(|(_, ys)| picks.iter().map(|&k| ys[k]).collect())
                        .collect()
                }
            };
            let view: Vec<(f64, &[f64])> = groups
                .iter()
                .zip(&copies)
                .map(|(&(c, _), v)| (c, v.as_slice()))
                .collect();
            fit_params(model, &view).ok()
        })
        .collect();

    let ok: Vec<[f64; 2]> = fits.iter().flatten().copied().collect();
    if ok.is_empty() {
        return Err(ZneError::NonConvergent(
            "every bootstrap resample failed".into(),
        ));
    }
    let m = ok.len() as f64;
    let mut means = [0.0; 2];
    let mut stds = [0.0; 2];
    for k in 0..2 {
        means[k] = ok.iter().map(|p| p[k]).sum::<f64>() / m;
        let var = if ok.len() > 1 {
            ok.iter().map(|p| (p[k] - means[k]).powi(2)).sum::<f64>() / (m - 1.0)
        } else {
            0.0
        };
        stds[k] = var.sqrt();
    }
    let zeros: Vec<f64> = ok.iter().map(|&p| model.eval(p, 0.0)).collect();
    let z_mean = zeros.iter().sum::<f64>() / m;
    let z_var = if ok.len() > 1 {
        zeros.iter().map(|z| (z - z_mean).powi(2)).sum::<f64>() / (m - 1.0)
    } else {
        0.0
    };

    result.param_means = means;
    result.param_stds = stds;
    result.zero_noise = model.eval(means, 0.0);
    result.zero_noise_err = 2.0 * z_var.sqrt();
    result.resamples = resamples;
    result.dropped = resamples - ok.len();
    Ok(result)
}
