use std::path::{Path, PathBuf};

use jonesq_core::knot::{orient_and_sign, parse_pd, KnotDiagram};
use jonesq_core::noise::ShotEngine;
use jonesq_core::{builtin, FitModel, KnotRecord, NoiseModel, Part, Resampling};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Everything a command needs. Loaded from a JSON file, then overridden by
/// command-line flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Builtin name, a PD text file, or a knot-record JSON file.
    pub knot: Option<String>,
    /// Face index treated as unbounded; defaults to the diagram's own choice.
    pub outer_face: Option<usize>,
    pub q: u32,
    pub parts: Vec<Part>,
    pub stretch: Vec<u32>,
    pub shots: u64,
    /// Calibration shots per basis state per run; defaults to `shots`.
    pub calibration_shots: Option<u64>,
    pub runs: u32,
    /// Noise-model JSON file; overrides the backend profile's model.
    pub noise: Option<PathBuf>,
    pub backend: String,
    pub engine: ShotEngine,
    pub fit: FitModel,
    /// Stretch factors used by the fit; defaults depend on the model.
    pub cs: Option<Vec<u32>>,
    pub resamples: usize,
    pub resampling: Resampling,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub plot: Option<PathBuf>,
    pub variants: usize,
    pub moves: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            knot: None,
            outer_face: None,
            q: 2,
            parts: vec![Part::Real, Part::Imag],
            stretch: vec![1, 3, 5, 7],
            shots: 8192,
            calibration_shots: None,
            runs: 150,
            noise: None,
            backend: "default".into(),
            engine: ShotEngine::Exact,
            fit: FitModel::Linear,
            cs: None,
            resamples: 50_000,
            resampling: Resampling::Independent,
            seed: 0,
            out: None,
            plot: None,
            variants: 4,
            moves: 3,
        }
    }
}

pub const DEFAULT_KNOT: &str = "trefoil";

/// Named noise profiles standing in for devices of decreasing quality.
pub const BACKENDS: [(&str, f64); 4] = [
    ("tier-1", 0.005),
    ("tier-2", 0.01),
    ("tier-3", 0.015),
    ("tier-4", 0.02),
];

pub fn backend_model(name: &str) -> Result<NoiseModel, CliError> {
    match name {
        "default" => Ok(NoiseModel::default()),
        "ideal" => Ok(NoiseModel::ideal()),
        _ => BACKENDS
            .iter()
            .find(|(n, _)| *n == name)
            .map(|&(_, p_cnot)| NoiseModel {
                p_cnot,
                ..NoiseModel::default()
            })
            .ok_or_else(|| {
                let names: Vec<&str> = BACKENDS.iter().map(|b| b.0).collect();
                CliError::Validation(format!(
                    "unknown backend `{name}` (expected default, ideal, {})",
                    names.join(", ")
                ))
            }),
    }
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
    }

    pub fn knot_name(&self) -> &str {
        self.knot.as_deref().unwrap_or(DEFAULT_KNOT)
    }

    pub fn calibration_shots(&self) -> u64 {
        self.calibration_shots.unwrap_or(self.shots)
    }

    pub fn fit_stretches(&self) -> Vec<u32> {
        match (&self.cs, self.fit) {
            (Some(cs), _) => cs.clone(),
            (None, FitModel::Exponential) => self.stretch.clone(),
            (None, _) => vec![1, 3],
        }
    }

    pub fn noise_model(&self) -> Result<NoiseModel, CliError> {
        let nm = match &self.noise {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                NoiseModel::from_json(&text)?
            }
            None => backend_model(&self.backend)?,
        };
        nm.validate()?;
        Ok(nm)
    }

    /// Checks shared by every noisy-pipeline command.
    pub fn validate_pipeline(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Validation(m));
        if self.q != 2 {
            return bad(format!(
                "the circuit pipeline runs at q = 2 only, got q = {}",
                self.q
            ));
        }
        if self.runs == 0 {
            return bad("runs must be at least 1".into());
        }
        if self.shots == 0 || self.calibration_shots() == 0 {
            return bad("shot counts must be positive".into());
        }
        if self.stretch.is_empty() || self.stretch.iter().any(|c| c % 2 == 0) {
            return bad(format!(
                "stretch factors must be odd, got {:?}",
                self.stretch
            ));
        }
        if self.parts.is_empty() {
            return bad("at least one part is required".into());
        }
        let cs = self.fit_stretches();
        if let Some(c) = cs.iter().find(|c| !self.stretch.contains(c)) {
            return bad(format!(
                "fit stretch factor {c} is not among the simulated ones {:?}",
                self.stretch
            ));
        }
        Ok(())
    }
}

/// A resolved knot, with its diagram when one is known.
#[derive(Debug, Clone)]
pub struct KnotSource {
    pub record: KnotRecord,
    pub diagram: Option<KnotDiagram>,
}

pub fn resolve_knot(name: &str) -> Result<KnotSource, CliError> {
    if let Ok(record) = builtin(name) {
        let diagram = record.pd.as_ref().map(orient_and_sign);
        return Ok(KnotSource { record, diagram });
    }
    let path = Path::new(name);
    if !path.exists() {
        return Err(CliError::Validation(format!(
            "`{name}` is neither a builtin knot nor a readable file"
        )));
    }
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{name}: {e}")))?;
    let record = if text.trim_start().starts_with('{') {
        KnotRecord::from_json(&text)?
    } else {
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("knot");
        KnotRecord::from_pd(stem, parse_pd(&text)?)?
    };
    let diagram = record.pd.as_ref().map(orient_and_sign);
    Ok(KnotSource { record, diagram })
}

impl RunConfig {
    /// The configured knot, recoloured when `outer_face` is set.
    pub fn knot_source(&self) -> Result<KnotSource, CliError> {
        let src = resolve_knot(self.knot_name())?;
        let Some(face) = self.outer_face else {
            return Ok(src);
        };
        let Some(diagram) = src.diagram else {
            return Err(CliError::Validation(format!(
                "`{}` has no PD code, so its outer face is fixed",
                src.record.name
            )));
        };
        let diagram = diagram.with_outer_face(face);
        let record = KnotRecord {
            tait_graph: diagram.default_tait_graph()?,
            ..src.record
        };
        Ok(KnotSource {
            record,
            diagram: Some(diagram),
        })
    }
}

pub fn parse_list(text: &str) -> Result<Vec<u32>, String> {
    text.split(',')
        .map(|s| s.trim().parse::<u32>().map_err(|e| format!("`{s}`: {e}")))
        .collect()
}
