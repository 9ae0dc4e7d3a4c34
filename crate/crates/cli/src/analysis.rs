use jonesq_core::seed::derive;
use jonesq_core::zne::{bootstrap, raw_estimate, DatasetRow, FitResult, JonesEstimate, ZneDataset};
use jonesq_core::{assemble_jones, jones_factors, jones_value, FitModel, KnotRecord, Part};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::simulate::{part_index, TAG_BOOTSTRAP};
use crate::{CliError, RunConfig};

/// Output of the extrapolation step for one knot on one backend.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZneReport {
    pub estimate: JonesEstimate,
    /// The unextrapolated estimate from the lowest stretch factor.
    pub raw: JonesEstimate,
    pub fit_real: FitResult,
    pub fit_imag: FitResult,
    pub raw_real: FitResult,
    pub raw_imag: FitResult,
}

/// Distribution summary of one part at one stretch factor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StretchSummary {
    pub stretch: u32,
    pub count: usize,
    pub mean: f64,
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
    /// Nested quantile pairs `(p, lower, upper)` with tail mass `p` on each side.
    pub ladder: Vec<(f64, f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartPlot {
    pub part: Part,
    pub summaries: Vec<StretchSummary>,
    pub fit_curve: Vec<(f64, f64)>,
    pub zero_noise: f64,
    pub zero_noise_err: f64,
    pub raw: f64,
    pub raw_err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotData {
    pub knot: String,
    pub backend_label: String,
    pub model: FitModel,
    pub parts: Vec<PartPlot>,
    pub jones: JonesEstimate,
    pub raw_jones: JonesEstimate,
}

/// Linear-interpolation quantile of sorted data.
pub fn quantile(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn summarise(stretch: u32, values: &[f64]) -> StretchSummary {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    let mut ladder = Vec::new();
    let mut p = 0.25;
    while n as f64 * p >= 1.0 {
        ladder.push((p, quantile(&v, p), quantile(&v, 1.0 - p)));
        p /= 2.0;
    }
    StretchSummary {
        stretch,
        count: n,
        mean: v.iter().sum::<f64>() / n as f64,
        median: quantile(&v, 0.5),
        q1: quantile(&v, 0.25),
        q3: quantile(&v, 0.75),
        ladder,
    }
}

fn single_label(rows: &[DatasetRow]) -> Result<(String, String), CliError> {
    let first = rows
        .first()
        .ok_or_else(|| CliError::Validation("dataset is empty".into()))?;
    if rows
        .iter()
        .any(|r| r.knot != first.knot || r.backend_label != first.backend_label)
    {
        return Err(CliError::Validation(
            "dataset mixes several knots or backends".into(),
        ));
    }
    Ok((first.knot.clone(), first.backend_label.clone()))
}

/// Fits both parts, bootstraps their errors and assembles the Jones value.
pub fn analyse(
    rows: &[DatasetRow],
    cfg: &RunConfig,
    record: &KnotRecord,
) -> Result<ZneReport, CliError> {
    let (_, label) = single_label(rows)?;
    let (re, im) = ZneDataset::from_rows(rows)?;
    let cs = cfg.fit_stretches();
    let factors = jones_factors(&record.tait_graph, record.writhe, 2)?;
    let exact = jones_value(&record.tait_graph, record.writhe, 2)?;

    let fit_part = |ds: &ZneDataset| -> Result<FitResult, CliError> {
        let seed = derive(cfg.seed, &[TAG_BOOTSTRAP, part_index(ds.part)]);
        Ok(bootstrap(
            ds,
            cfg.fit,
            &cs,
            cfg.resamples,
            seed,
            cfg.resampling,
        )?)
    };
    let fit_real = fit_part(&re)?;
    let fit_imag = fit_part(&im)?;
    let c_raw = *cs.iter().min().expect("validated non-empty");
    let raw_real = raw_estimate(&re, c_raw)?;
    let raw_imag = raw_estimate(&im, c_raw)?;

    let estimate = assemble_jones(
        &record.name,
        &label,
        &fit_real,
        &fit_imag,
        &factors,
        Some(exact),
    );
    let raw = assemble_jones(
        &record.name,
        &label,
        &raw_real,
        &raw_imag,
        &factors,
        Some(exact),
    );
    Ok(ZneReport {
        estimate,
        raw,
        fit_real,
        fit_imag,
        raw_real,
        raw_imag,
    })
}

/// Plot-ready summaries: per-stretch distributions, fit curves on `[0, 7]`
/// and the extrapolated points.
pub fn plot_data(rows: &[DatasetRow], report: &ZneReport) -> Result<PlotData, CliError> {
    let (re, im) = ZneDataset::from_rows(rows)?;
    let part_plot =
        |ds: &ZneDataset, fit: &FitResult, raw: &FitResult| -> Result<PartPlot, CliError> {
            let summaries = ds
                .stretches()
                .into_iter()
                .map(|c| Ok(summarise(c, ds.values(c)?)))
                .collect::<Result<Vec<_>, CliError>>()?;
            let fit_curve = (0..=70)
                .map(|k| k as f64 / 10.0)
                .map(|c| (c, fit.curve(c)))
                .collect();
            Ok(PartPlot {
                part: ds.part,
                summaries,
                fit_curve,
                zero_noise: fit.zero_noise,
                zero_noise_err: fit.zero_noise_err,
                raw: raw.zero_noise,
                raw_err: raw.zero_noise_err,
            })
        };
    Ok(PlotData {
        knot: report.estimate.knot.clone(),
        backend_label: report.estimate.backend_label.clone(),
        model: report.fit_real.model,
        parts: vec![
            part_plot(&re, &report.fit_real, &report.raw_real)?,
            part_plot(&im, &report.fit_imag, &report.raw_imag)?,
        ],
        jones: report.estimate.clone(),
        raw_jones: report.raw.clone(),
    })
}

/// Combined half-width of a Jones error rectangle.
pub fn error_size(e: &JonesEstimate) -> f64 {
    e.err_re.hypot(e.err_im)
}

pub fn distance(e: &JonesEstimate, exact: Complex64) -> f64 {
    (e.value - exact).norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantiles_and_ladder() {
        let v: Vec<f64> = (0..9).map(f64::from).collect();
        let s = summarise(1, &v);
        assert_eq!((s.median, s.q1, s.q3), (4.0, 2.0, 6.0));
        // 9 points: tails of 1/4 and 1/8 hold at least one point, 1/16 does not.
        assert_eq!(s.ladder.len(), 2);
        assert_eq!(s.ladder[1], (0.125, 1.0, 7.0));
    }
}
