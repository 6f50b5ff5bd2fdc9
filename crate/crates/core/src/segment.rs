//! Energy-based location of the leading voiced segment of an utterance.
//!
//! Frames are classified active when their level exceeds a noise floor by
//! `threshold_db`. The floor is the 5th percentile of frame levels, capped at
//! [`MAX_DYNAMIC_RANGE_DB`] below the loudest frame so that a buffer without
//! any silence still has a floor beneath its signal.

use crate::audio::{frame_ranges, AudioBuffer};
use crate::error::{Error, Result};

/// RMS floor applied before taking the logarithm (-160 dB).
pub const RMS_FLOOR: f64 = 1e-8;

/// Noise-floor percentile over frame levels.
pub const FLOOR_PERCENTILE: f64 = 5.0;

/// The noise floor never sits higher than this far below the loudest frame.
pub const MAX_DYNAMIC_RANGE_DB: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentParams {
    pub frame_ms: f64,
    pub hop_ms: f64,
    pub threshold_db: f64,
    pub min_silence_ms: f64,
    pub min_voiced_ms: f64,
}

impl Default for SegmentParams {
    fn default() -> Self {
        Self { frame_ms: 25.0, hop_ms: 10.0, threshold_db: 10.0, min_silence_ms: 50.0, min_voiced_ms: 60.0 }
    }
}

/// Half-open sample range `[start_sample, end_sample)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub start_sample: usize,
    pub end_sample: usize,
}

impl Segment {
    pub fn len(&self) -> usize {
        self.end_sample - self.start_sample
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn midpoint(&self) -> usize {
        self.start_sample + self.len() / 2
    }
}

/// Per-frame level `20*log10(rms)`, with the RMS floored at [`RMS_FLOOR`].
pub fn frame_energy_db(buffer: &AudioBuffer, frame_ms: f64, hop_ms: f64) -> Result<Vec<f64>> {
    if frame_ms <= 0.0 || hop_ms <= 0.0 {
        return Err(Error::InvalidParameter("frame and hop must be positive".into()));
    }
    let frames = buffer.frames(frame_ms, hop_ms);
    if frames.is_empty() {
        return Err(Error::TooShort(format!(
            "{} samples cannot hold one {frame_ms} ms frame",
            buffer.len()
        )));
    }
    Ok(frames.into_iter().map(level_db).collect())
}

fn level_db(frame: &[f64]) -> f64 {
    let rms = (frame.iter().map(|s| s * s).sum::<f64>() / frame.len() as f64).sqrt();
    20.0 * rms.max(RMS_FLOOR).log10()
}

/// Linear-interpolated percentile (`q` in 0..=100) of unsorted values.
pub(crate) fn percentile(values: &[f64], q: f64) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let pos = q / 100.0 * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

/// Noise floor estimate for a sequence of frame levels.
pub fn noise_floor_db(levels: &[f64]) -> f64 {
    let peak = levels.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let floor_db = 20.0 * RMS_FLOOR.log10();
    percentile(levels, FLOOR_PERCENTILE).min(peak - MAX_DYNAMIC_RANGE_DB).max(floor_db)
}

fn frames_for(ms: f64, hop_ms: f64) -> usize {
    (ms / hop_ms - 1e-9).ceil().max(0.0) as usize
}

/// The first voiced run of the buffer.
///
/// Active frame runs separated by less than `min_silence_ms` of inactive
/// frames are joined; the first joined run lasting at least `min_voiced_ms`
/// is returned. The onset maps to the last hop of the first active frame and
/// the offset to the end of the first hop of the last active frame, so a clean
/// edge is located within one hop. A run touching the first or last frame
/// extends to the buffer edge.
pub fn first_segment(buffer: &AudioBuffer, params: &SegmentParams) -> Result<Segment> {
    let levels = frame_energy_db(buffer, params.frame_ms, params.hop_ms)?;
    let threshold = noise_floor_db(&levels) + params.threshold_db;
    let active: Vec<bool> = levels.iter().map(|&e| e > threshold).collect();

    let min_silence = frames_for(params.min_silence_ms, params.hop_ms).max(1);
    let min_voiced = frames_for(params.min_voiced_ms, params.hop_ms).max(1);

    let (first, last) = first_voiced_run(&active, min_silence, min_voiced).ok_or(Error::NoVoicedSegment)?;

    let frame_len = buffer.ms_to_samples(params.frame_ms);
    let hop = buffer.ms_to_samples(params.hop_ms);
    let n = buffer.len();
    debug_assert_eq!(frame_ranges(n, frame_len, hop).len(), active.len());

    let start = if first == 0 { 0 } else { first * hop + frame_len.saturating_sub(hop) };
    let end = if last + 1 == active.len() { n } else { ((last + 1) * hop).min(n) };
    Ok(Segment { start_sample: start.min(end.saturating_sub(1)), end_sample: end })
}

/// Inclusive frame bounds of the first qualifying bridged run.
fn first_voiced_run(active: &[bool], min_silence: usize, min_voiced: usize) -> Option<(usize, usize)> {
    let mut runs: Vec<(usize, usize)> = Vec::new();
    let mut k = 0;
    while k < active.len() {
        if !active[k] {
            k += 1;
            continue;
        }
        let start = k;
        while k < active.len() && active[k] {
            k += 1;
        }
        match runs.last_mut() {
            Some(prev) if start - prev.1 - 1 < min_silence => prev.1 = k - 1,
            _ => runs.push((start, k - 1)),
        }
    }
    runs.into_iter().find(|&(s, e)| e - s + 1 >= min_voiced)
}
