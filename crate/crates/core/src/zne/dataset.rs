use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::ZneError;
use crate::circuit::Part;

/// One simulated execution: the mitigated `<Z>` of a Hadamard test at one
/// stretch factor in one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetRow {
    pub knot: String,
    pub backend_label: String,
    pub part: Part,
    pub stretch: u32,
    pub run_index: u32,
    pub value: f64,
    pub std: f64,
    pub shots: u64,
    pub seed: u64,
}

/// Repeated estimates of one part, keyed by stretch factor, in run order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZneDataset {
    pub part: Part,
    pub samples: BTreeMap<u32, Vec<f64>>,
}

impl ZneDataset {
    pub fn new(part: Part) -> Self {
        ZneDataset {
            part,
            samples: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, stretch: u32, value: f64) {
        self.samples.entry(stretch).or_default().push(value);
    }

    /// Splits rows by part, ordering samples by run index.
    pub fn from_rows(rows: &[DatasetRow]) -> Result<(ZneDataset, ZneDataset), ZneError> {
        let mut sorted: Vec<&DatasetRow> = rows.iter().collect();
        sorted.sort_by_key(|r| (r.part, r.stretch, r.run_index));
        let mut re = ZneDataset::new(Part::Real);
        let mut im = ZneDataset::new(Part::Imag);
        for r in sorted {
            if !r.value.is_finite() {
                return Err(ZneError::InvalidDataset(format!(
                    "non-finite value in run {}",
                    r.run_index
                )));
            }
            match r.part {
                Part::Real => re.push(r.stretch, r.value),
                Part::Imag => im.push(r.stretch, r.value),
            }
        }
        if re.samples.is_empty() {
            return Err(ZneError::MissingPart("real"));
        }
        if im.samples.is_empty() {
            return Err(ZneError::MissingPart("imag"));
        }
        Ok((re, im))
    }

    pub fn stretches(&self) -> Vec<u32> {
        self.samples.keys().copied().collect()
    }

    pub fn values(&self, c: u32) -> Result<&[f64], ZneError> {
        match self.samples.get(&c) {
            Some(v) if !v.is_empty() => Ok(v),
            _ => Err(ZneError::MissingStretch(c)),
        }
    }

    pub fn mean(&self, c: u32) -> Result<f64, ZneError> {
        let v = self.values(c)?;
        Ok(v.iter().sum::<f64>() / v.len() as f64)
    }
}
