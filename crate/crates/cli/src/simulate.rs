use jonesq_core::circuit::{compile_controlled_diagonal, htest, iqp_from_graph, stretch_cnots};
use jonesq_core::noise::{
    calibrate_readout, mitigate_readout, read_one_probability, sample_from_probability,
    sample_shots, ShotEngine,
};
use jonesq_core::seed::{derive, rng};
use jonesq_core::zne::DatasetRow;
use jonesq_core::{Circuit, KnotRecord, NoiseModel, Part, TaitGraph};
use rand::Rng;
use rayon::prelude::*;

use crate::{CliError, RunConfig};

// Seed-path tags keep the random streams of different stages apart.
pub(crate) const TAG_SHOTS: u64 = 1;
pub(crate) const TAG_CALIBRATION: u64 = 2;
pub(crate) const TAG_JITTER: u64 = 3;
pub(crate) const TAG_BOOTSTRAP: u64 = 4;
pub(crate) const TAG_VARIANT: u64 = 5;
pub(crate) const TAG_PIPELINE: u64 = 6;

pub(crate) fn part_index(p: Part) -> u64 {
    match p {
        Part::Real => 0,
        Part::Imag => 1,
    }
}

/// The compiled, stretched Hadamard-test circuit for each part and factor.
pub fn build_circuits(
    g: &TaitGraph,
    parts: &[Part],
    stretch: &[u32],
) -> Result<Vec<(Part, u32, Circuit)>, CliError> {
    let base = iqp_from_graph(g);
    let mut out = Vec::new();
    for &part in parts {
        let compiled = compile_controlled_diagonal(&htest(&base, part)?)?;
        for &c in stretch {
            out.push((part, c, stretch_cnots(&compiled, c)?));
        }
    }
    Ok(out)
}

/// Noise model for one run: `p_cnot` drawn uniformly within the jitter band.
pub fn run_noise(nm: &NoiseModel, master: u64, run: u32) -> NoiseModel {
    match nm.jitter_pct {
        Some(pct) if pct > 0.0 => {
            let u: f64 = rng(master, &[TAG_JITTER, run as u64]).random_range(-1.0..=1.0);
            NoiseModel {
                p_cnot: (nm.p_cnot * (1.0 + u * pct / 100.0)).clamp(0.0, 1.0),
                ..nm.clone()
            }
        }
        _ => nm.clone(),
    }
}

fn has_jitter(nm: &NoiseModel) -> bool {
    nm.jitter_pct.is_some_and(|p| p > 0.0)
}

/// Runs the repeated noisy experiment. Each run recalibrates readout, then
/// measures every part at every stretch factor.
pub fn simulate(
    cfg: &RunConfig,
    record: &KnotRecord,
    nm: &NoiseModel,
    label: &str,
) -> Result<Vec<DatasetRow>, CliError> {
    cfg.validate_pipeline()?;
    nm.validate()?;
    let circuits = build_circuits(&record.tait_graph, &cfg.parts, &cfg.stretch)?;
    let exact = cfg.engine == ShotEngine::Exact;
    let shared: Option<Vec<f64>> = if exact && !has_jitter(nm) {
        Some(
            circuits
                .par_iter()
                .map(|(_, _, c)| read_one_probability(c, nm))
                .collect::<Result<_, _>>()?,
        )
    } else {
        None
    };

    let per_run: Vec<Vec<DatasetRow>> = (1..=cfg.runs)
        .into_par_iter()
        .map(|run| -> Result<Vec<DatasetRow>, CliError> {
            let nm_r = run_noise(nm, cfg.seed, run);
            let confusion = calibrate_readout(
                &nm_r,
                cfg.calibration_shots(),
                derive(cfg.seed, &[TAG_CALIBRATION, run as u64]),
            )?;
            let mut rows = Vec::with_capacity(circuits.len());
            for (i, (part, c, circuit)) in circuits.iter().enumerate() {
                let seed = derive(
                    cfg.seed,
                    &[TAG_SHOTS, run as u64, part_index(*part), *c as u64],
                );
                let counts = match (&shared, exact) {
                    (Some(p), _) => sample_from_probability(p[i], cfg.shots, seed)?,
                    (None, true) => sample_from_probability(
                        read_one_probability(circuit, &nm_r)?,
                        cfg.shots,
                        seed,
                    )?,
                    (None, false) => sample_shots(circuit, &nm_r, cfg.shots, seed)?,
                };
                let est = mitigate_readout(&counts, &confusion)?;
                rows.push(DatasetRow {
                    knot: record.name.clone(),
                    backend_label: label.to_string(),
                    part: *part,
                    stretch: *c,
                    run_index: run,
                    value: est.value,
                    std: est.std,
                    shots: est.shots,
                    seed,
                });
            }
            Ok(rows)
        })
        .collect::<Result<_, _>>()?;
    Ok(per_run.into_iter().flatten().collect())
}
