use jonesq_core::knot::{kauffman_jones, random_moves, Colour, KnotDiagram, Move};
use jonesq_core::seed::{derive, rng};
use jonesq_core::zne::JonesEstimate;
use jonesq_core::{eval_point, jones_value, KnotRecord, NoiseModel, TaitGraph};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analysis::analyse;
use crate::simulate::{simulate, TAG_PIPELINE, TAG_VARIANT};
use crate::{CliError, KnotSource, RunConfig};

const INVARIANCE_TOL: f64 = 1e-9;

/// Classical evidence that a variant is still the base knot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvarianceCheck {
    /// `(q, state-sum value, Potts value)` at each checked evaluation point.
    pub values: Vec<(u32, Complex64, Complex64)>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariantReport {
    pub index: usize,
    pub moves: Vec<Move>,
    pub pd: String,
    pub crossings: usize,
    pub writhe: i32,
    pub tait_vertices: usize,
    pub tau: i32,
    pub invariance: InvarianceCheck,
    pub estimate: JonesEstimate,
    pub contains_exact: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkReport {
    pub base: String,
    pub backend_label: String,
    pub seed: u64,
    pub exact: Complex64,
    pub variants: Vec<VariantReport>,
    /// `(i, j, overlap)`: whether the error rectangles of two variants meet.
    pub pairwise_overlap: Vec<(usize, usize, bool)>,
    pub mean_distance: f64,
    pub fraction_containing_exact: f64,
    pub invariance_passed: bool,
}

/// Tait graph of the colouring with fewer black faces, which needs fewer
/// qubits.
pub fn smallest_tait_graph(d: &KnotDiagram) -> Result<TaitGraph, CliError> {
    let own = d.checkerboard(d.outer_face())?;
    let other_face = own
        .colours
        .iter()
        .position(|&c| c == Colour::Black)
        .expect("a crossing has a black face");
    let other = d.checkerboard(other_face)?;
    let best = if other.black_count() < own.black_count() {
        other
    } else {
        own
    };
    Ok(d.tait_graph(&best)?)
}

fn check_invariance(
    d: &KnotDiagram,
    g: &TaitGraph,
    base: &[Complex64; 3],
) -> Result<InvarianceCheck, CliError> {
    let mut values = Vec::new();
    let mut passed = true;
    for (k, q) in [2u32, 3, 4].into_iter().enumerate() {
        let t = eval_point(q)?.t;
        let state_sum = kauffman_jones(d, t)?;
        let potts = jones_value(g, d.writhe(), q)?;
        passed &= (state_sum - potts).norm() < INVARIANCE_TOL
            && (state_sum - base[k]).norm() < INVARIANCE_TOL;
        values.push((q, state_sum, potts));
    }
    Ok(InvarianceCheck { values, passed })
}

fn overlaps(a: &JonesEstimate, b: &JonesEstimate) -> bool {
    (a.value.re - b.value.re).abs() <= a.err_re + b.err_re
        && (a.value.im - b.value.im).abs() <= a.err_im + b.err_im
}

/// Seeded variants of the base diagram, each run through the full noisy
/// pipeline. With zero moves the base diagram is the single entry.
pub fn benchmark(
    cfg: &RunConfig,
    src: &KnotSource,
    nm: &NoiseModel,
    label: &str,
) -> Result<BenchmarkReport, CliError> {
    cfg.validate_pipeline()?;
    let base = src.diagram.as_ref().ok_or_else(|| {
        CliError::Validation(format!(
            "`{}` has no diagram to apply moves to",
            src.record.name
        ))
    })?;
    let mut base_values = [Complex64::default(); 3];
    for (k, q) in [2u32, 3, 4].into_iter().enumerate() {
        base_values[k] = kauffman_jones(base, eval_point(q)?.t)?;
    }
    let exact = base_values[0];
    let count = if cfg.moves == 0 { 1 } else { cfg.variants };

    let mut variants = Vec::with_capacity(count);
    for index in 0..count {
        let (d, moves) = random_moves(
            base,
            cfg.moves,
            &mut rng(cfg.seed, &[TAG_VARIANT, index as u64]),
        )?;
        let g = smallest_tait_graph(&d)?;
        let invariance = check_invariance(&d, &g, &base_values)?;
        let record = KnotRecord {
            name: format!("{}-variant-{index}", src.record.name),
            tait_graph: g,
            writhe: d.writhe(),
            pd: None,
            exact_jones_at_i: Some(exact),
        };
        let sub = RunConfig {
            seed: derive(cfg.seed, &[TAG_PIPELINE, index as u64]),
            ..cfg.clone()
        };
        let rows = simulate(&sub, &record, nm, label)?;
        let estimate = analyse(&rows, &sub, &record)?.estimate;
        variants.push(VariantReport {
            index,
            moves,
            pd: d.pd().to_string(),
            crossings: d.crossing_count(),
            writhe: d.writhe(),
            tait_vertices: record.tait_graph.n(),
            tau: record.tait_graph.tau(),
            invariance,
            contains_exact: estimate.covers(exact),
            estimate,
        });
    }

    let mut pairwise_overlap = Vec::new();
    for i in 0..variants.len() {
        for j in i + 1..variants.len() {
            pairwise_overlap.push((i, j, overlaps(&variants[i].estimate, &variants[j].estimate)));
        }
    }
    let n = variants.len() as f64;
    Ok(BenchmarkReport {
        base: src.record.name.clone(),
        backend_label: label.to_string(),
        seed: cfg.seed,
        exact,
        mean_distance: variants
            .iter()
            .map(|v| (v.estimate.value - exact).norm())
            .sum::<f64>()
            / n,
        fraction_containing_exact: variants.iter().filter(|v| v.contains_exact).count() as f64 / n,
        invariance_passed: variants.iter().all(|v| v.invariance.passed),
        pairwise_overlap,
        variants,
    })
}
