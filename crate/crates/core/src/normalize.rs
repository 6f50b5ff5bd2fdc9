//! Lobanov speaker normalization: per-speaker z-scores of F1 and F2.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formant::FormantPair;
use crate::stats::{mean, population_variance};

/// Dimensionless vowel-space coordinates `(z1, z2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizedPoint {
    pub z1: f64,
    pub z2: f64,
}

impl NormalizedPoint {
    pub fn new(z1: f64, z2: f64) -> Self {
        Self { z1, z2 }
    }
}

/// Maps raw formants into a speaker-independent space.
pub trait SpeakerNormalization {
    fn normalize(&self, point: &FormantPair) -> NormalizedPoint;
}

/// Per-speaker means and population standard deviations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpeakerNormStats {
    pub speaker_id: String,
    pub n: usize,
    pub mean_f1: f64,
    pub mean_f2: f64,
    pub sd_f1: f64,
    pub sd_f2: f64,
}

/// Means and population SDs over all realizations of one speaker.
pub fn speaker_stats(speaker_id: &str, realizations: &[FormantPair]) -> Result<SpeakerNormStats> {
    if realizations.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "speaker {speaker_id} has {} realization(s), need at least 2",
            realizations.len()
        )));
    }
    let f1: Vec<f64> = realizations.iter().map(|p| p.f1).collect();
    let f2: Vec<f64> = realizations.iter().map(|p| p.f2).collect();
    let (mean_f1, mean_f2) = (mean(&f1).unwrap_or(0.0), mean(&f2).unwrap_or(0.0));
    let sd_f1 = population_variance(&f1).unwrap_or(0.0).sqrt();
    let sd_f2 = population_variance(&f2).unwrap_or(0.0).sqrt();
    for (name, sd, m) in [("F1", sd_f1, mean_f1), ("F2", sd_f2, mean_f2)] {
        if !(sd > 1e-12 * m.abs().max(1.0)) {
            return Err(Error::ZeroVariance(format!("speaker {speaker_id}: {name} is constant")));
        }
    }
    Ok(SpeakerNormStats { speaker_id: speaker_id.to_string(), n: realizations.len(), mean_f1, mean_f2, sd_f1, sd_f2 })
}

/// `z = (F - mean) / sd` per formant.
pub fn lobanov(point: &FormantPair, stats: &SpeakerNormStats) -> NormalizedPoint {
    NormalizedPoint { z1: (point.f1 - stats.mean_f1) / stats.sd_f1, z2: (point.f2 - stats.mean_f2) / stats.sd_f2 }
}

impl SpeakerNormalization for SpeakerNormStats {
    fn normalize(&self, point: &FormantPair) -> NormalizedPoint {
        lobanov(point, self)
    }
}
