//! F1/F2 estimation by LPC root analysis at the midpoint of a vowel segment.

use std::f64::consts::PI;

use nalgebra::{Complex, DMatrix};
use serde::{Deserialize, Serialize};

use crate::audio::{resample, AudioBuffer};
use crate::error::{Error, Result};
use crate::segment::{first_segment, SegmentParams};
use crate::stats::median;

/// Candidates must lie at least this far above DC.
pub const MIN_CANDIDATE_HZ: f64 = 90.0;
/// ... and this far below Nyquist.
pub const NYQUIST_MARGIN_HZ: f64 = 50.0;

/// First and second formant of one vowel realization, in Hz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FormantPair {
    pub f1: f64,
    pub f2: f64,
}

impl FormantPair {
    /// Checks `0 < f1 < f2` (both finite).
    pub fn new(f1: f64, f2: f64) -> Result<Self> {
        if !(f1.is_finite() && f2.is_finite() && 0.0 < f1 && f1 < f2) {
            return Err(Error::InvalidParameter(format!("formants must satisfy 0 < F1 < F2, got ({f1}, {f2})")));
        }
        Ok(Self { f1, f2 })
    }
}

/// A pole-pair resonance recovered from the LPC polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormantCandidate {
    pub frequency: f64,
    pub bandwidth: f64,
}

/// Plausibility ranges for F1/F2 and the bandwidth ceiling for candidates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormantGates {
    pub f1_min: f64,
    pub f1_max: f64,
    pub f2_min: f64,
    pub f2_max: f64,
    pub max_bandwidth: f64,
}

impl Default for FormantGates {
    fn default() -> Self {
        Self { f1_min: 150.0, f1_max: 1200.0, f2_min: 500.0, f2_max: 3500.0, max_bandwidth: 400.0 }
    }
}

impl FormantGates {
    pub fn admits(&self, pair: &FormantPair) -> bool {
        (self.f1_min..=self.f1_max).contains(&pair.f1) && (self.f2_min..=self.f2_max).contains(&pair.f2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisParams {
    pub analysis_rate: u32,
    pub lpc_order: usize,
    pub preemphasis: f64,
    pub segment: SegmentParams,
    pub gates: FormantGates,
}

impl Default for AnalysisParams {
    fn default() -> Self {
        Self {
            analysis_rate: 10_000,
            lpc_order: 12,
            preemphasis: 0.97,
            segment: SegmentParams::default(),
            gates: FormantGates::default(),
        }
    }
}

/// Autocorrelation LPC via the Levinson-Durbin recursion.
///
/// Returns `order + 1` coefficients of the prediction-error filter
/// `A(z) = 1 + a1 z^-1 + ... + ap z^-p`, which is minimum phase. If the
/// recursion reaches a reflection coefficient of magnitude one (a perfectly
/// predictable frame) the remaining coefficients stay zero.
pub fn lpc_coefficients(frame: &[f64], order: usize) -> Result<Vec<f64>> {
    if order < 2 || frame.len() <= order {
        return Err(Error::InvalidParameter(format!(
            "LPC order {order} needs 2 <= order < frame length ({})",
            frame.len()
        )));
    }
    let r: Vec<f64> =
        (0..=order).map(|lag| frame.iter().zip(&frame[lag..]).map(|(a, b)| a * b).sum()).collect();
    if !(r[0] > 0.0) {
        return Err(Error::DegenerateFrame);
    }

    let mut a = vec![0.0; order + 1];
    a[0] = 1.0;
    let mut err = r[0];
    for i in 1..=order {
        let acc: f64 = r[i] + (1..i).map(|j| a[j] * r[i - j]).sum::<f64>();
        let k = -acc / err;
        if !(k.abs() < 1.0) {
            break;
        }
        let prev = a.clone();
        for j in 1..i {
            a[j] = prev[j] + k * prev[i - j];
        }
        a[i] = k;
        err *= 1.0 - k * k;
    }
    Ok(a)
}

/// Roots of `z^p + c1 z^(p-1) + ... + cp` for coefficients `[1, c1, .., cp]`.
pub fn polynomial_roots(coeffs: &[f64]) -> Vec<Complex<f64>> {
    let p = coeffs.len().saturating_sub(1);
    if p == 0 {
        return Vec::new();
    }
    let lead = coeffs[0];
    let mut companion = DMatrix::<f64>::zeros(p, p);
    for j in 0..p {
        companion[(0, j)] = -coeffs[j + 1] / lead;
    }
    for i in 1..p {
        companion[(i, i - 1)] = 1.0;
    }
    let Some(schur) = nalgebra::linalg::Schur::try_new(companion, 1e-14, 10_000) else {
        return Vec::new();
    };
    schur.complex_eigenvalues().iter().map(|&z| polish_root(coeffs, z)).collect()
}

/// A few Newton steps on the polynomial; keeps the Schur estimate if they diverge.
fn polish_root(coeffs: &[f64], mut z: Complex<f64>) -> Complex<f64> {
    let start = z;
    for _ in 0..3 {
        let (mut p, mut dp) = (Complex::new(0.0, 0.0), Complex::new(0.0, 0.0));
        for &c in coeffs {
            dp = dp * z + p;
            p = p * z + c;
        }
        if dp.norm() < 1e-300 {
            break;
        }
        z -= p / dp;
    }
    if z.is_finite() && (z - start).norm() < 1e-6 {
        z
    } else {
        start
    }
}

/// Resonances implied by the LPC polynomial, sorted by frequency, using the
/// default 400 Hz bandwidth ceiling.
pub fn formant_candidates(coeffs: &[f64], sample_rate: u32) -> Vec<FormantCandidate> {
    formant_candidates_with(coeffs, sample_rate, FormantGates::default().max_bandwidth)
}

/// Resonances implied by the LPC polynomial, sorted by frequency.
///
/// Each root with positive imaginary part yields frequency `fs/(2 pi) arg(r)`
/// and bandwidth `-(fs/pi) ln|r|`. Candidates outside
/// `[90, fs/2 - 50]` Hz or at least `max_bandwidth` wide are dropped.
pub fn formant_candidates_with(coeffs: &[f64], sample_rate: u32, max_bandwidth: f64) -> Vec<FormantCandidate> {
    let fs = sample_rate as f64;
    let f_max = fs / 2.0 - NYQUIST_MARGIN_HZ;
    let mut out: Vec<FormantCandidate> = polynomial_roots(coeffs)
        .into_iter()
        .filter(|z| z.im > 0.0)
        .map(|z| FormantCandidate { frequency: fs / (2.0 * PI) * z.arg(), bandwidth: -fs / PI * z.norm().ln() })
        .filter(|c| c.frequency >= MIN_CANDIDATE_HZ && c.frequency <= f_max)
        .filter(|c| c.bandwidth > 0.0 && c.bandwidth < max_bandwidth)
        .collect();
    out.sort_by(|a, b| a.frequency.total_cmp(&b.frequency));
    out
}

/// Picks F1 as the lowest candidate inside the F1 gate and F2 as the next
/// candidate above it inside the F2 gate.
pub fn pick_formants(candidates: &[FormantCandidate], gates: &FormantGates) -> Result<FormantPair> {
    if candidates.len() < 2 {
        return Err(Error::InsufficientFormants { found: candidates.len() });
    }
    let violation = || Error::GateViolation { candidates: candidates.iter().map(|c| c.frequency).collect() };
    let (i1, f1) = candidates
        .iter()
        .enumerate()
        .find(|(_, c)| (gates.f1_min..=gates.f1_max).contains(&c.frequency))
        .ok_or_else(violation)?;
    let f2 = candidates[i1 + 1..]
        .iter()
        .find(|c| c.frequency > f1.frequency && (gates.f2_min..=gates.f2_max).contains(&c.frequency))
        .ok_or_else(violation)?;
    FormantPair::new(f1.frequency, f2.frequency)
}

/// The analysis frame centred on the segment midpoint, pre-emphasized and
/// Hamming-windowed.
fn midpoint_frame(buffer: &AudioBuffer, params: &AnalysisParams) -> Result<Vec<f64>> {
    let segment = first_segment(buffer, &params.segment)?;
    let x = buffer.samples();
    let frame_len = buffer.ms_to_samples(params.segment.frame_ms);
    if x.len() < frame_len {
        return Err(Error::TooShort("buffer shorter than one analysis frame".into()));
    }
    let start = segment.midpoint().saturating_sub(frame_len / 2).min(x.len() - frame_len);
    let denom = (frame_len - 1).max(1) as f64;
    Ok((start..start + frame_len)
        .map(|n| {
            let prev = if n > 0 { x[n - 1] } else { 0.0 };
            let emphasized = x[n] - params.preemphasis * prev;
            let w = 0.54 - 0.46 * (2.0 * PI * (n - start) as f64 / denom).cos();
            emphasized * w
        })
        .collect())
}

/// Resample, segment, and read F1/F2 at the midpoint of the first voiced segment.
pub fn measure_vowel(buffer: &AudioBuffer, params: &AnalysisParams) -> Result<FormantPair> {
    let analysed = resample(buffer, params.analysis_rate);
    let frame = midpoint_frame(&analysed, params)?;
    let coeffs = lpc_coefficients(&frame, params.lpc_order)?;
    let candidates = formant_candidates_with(&coeffs, params.analysis_rate, params.gates.max_bandwidth);
    pick_formants(&candidates, &params.gates)
}

/// Component-wise median of a set of realizations.
pub fn representative(realizations: &[FormantPair]) -> Result<FormantPair> {
    let f1: Vec<f64> = realizations.iter().map(|p| p.f1).collect();
    let f2: Vec<f64> = realizations.iter().map(|p| p.f2).collect();
    match (median(&f1), median(&f2)) {
        (Some(f1), Some(f2)) => Ok(FormantPair { f1, f2 }),
        _ => Err(Error::EmptyList),
    }
}
