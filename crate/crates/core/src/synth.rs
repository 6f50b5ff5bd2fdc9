//! Source-filter vowel synthesis with exactly known formants.
//!
//! Used as ground truth for the analysis chain: an impulse train (or seeded
//! white noise) passes a one-pole source tilt of -6 dB/octave above
//! [`SOURCE_TILT_HZ`], then drives a cascade of two-pole resonators. The tilt
//! has a real pole only, so the formants are exactly the resonator poles.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::audio::AudioBuffer;
use crate::error::{Error, Result};

pub const PEAK_LEVEL: f64 = 0.9;

/// Corner of the source tilt; matches the usual 0.97 pre-emphasis at 10 kHz.
pub const SOURCE_TILT_HZ: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resonance {
    pub frequency: f64,
    pub bandwidth: f64,
}

impl Resonance {
    pub fn new(frequency: f64, bandwidth: f64) -> Self {
        Self { frequency, bandwidth }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Excitation {
    #[default]
    ImpulseTrain,
    /// Gaussian white noise from a ChaCha8 stream with this seed.
    Noise { seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct VowelSpec {
    pub f0: f64,
    pub formants: Vec<Resonance>,
    pub duration_s: f64,
    pub sample_rate: u32,
    pub excitation: Excitation,
}

impl VowelSpec {
    /// Impulse-excited spec with the given formants.
    pub fn new(f0: f64, formants: Vec<Resonance>, duration_s: f64, sample_rate: u32) -> Self {
        Self { f0, formants, duration_s, sample_rate, excitation: Excitation::ImpulseTrain }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.sample_rate == 0 {
            return bad("sample rate must be positive".into());
        }
        if !(60.0..=400.0).contains(&self.f0) {
            return bad(format!("f0 {} Hz outside [60, 400]", self.f0));
        }
        if !(self.duration_s > 0.0 && self.duration_s.is_finite()) {
            return bad(format!("duration {} s must be positive", self.duration_s));
        }
        if !(2..=4).contains(&self.formants.len()) {
            return bad(format!("{} formants given, need 2 to 4", self.formants.len()));
        }
        let nyquist = self.sample_rate as f64 / 2.0;
        for r in &self.formants {
            if !(r.frequency > 0.0 && r.frequency < nyquist) || !(r.bandwidth > 0.0 && r.bandwidth.is_finite()) {
                return bad(format!("formant ({}, {}) invalid at {} Hz", r.frequency, r.bandwidth, self.sample_rate));
            }
        }
        if self.formants.windows(2).any(|w| w[0].frequency >= w[1].frequency) {
            return bad("formant frequencies must be strictly increasing".into());
        }
        Ok(())
    }

    pub fn with_duration(&self, duration_s: f64) -> Self {
        Self { duration_s, ..self.clone() }
    }
}

/// Renders the vowel: `round(duration * rate)` samples, peak-normalized to 0.9.
pub fn synth_vowel(spec: &VowelSpec) -> Result<AudioBuffer> {
    spec.validate()?;
    let fs = spec.sample_rate as f64;
    let n = (spec.duration_s * fs).round() as usize;
    let mut signal = excitation(spec, n);

    let tilt = (-2.0 * PI * SOURCE_TILT_HZ / fs).exp();
    let mut prev = 0.0;
    for s in signal.iter_mut() {
        prev = (1.0 - tilt) * *s + tilt * prev;
        *s = prev;
    }

    for res in &spec.formants {
        let r = (-PI * res.bandwidth / fs).exp();
        let b1 = 2.0 * r * (2.0 * PI * res.frequency / fs).cos();
        let b2 = -r * r;
        let gain = 1.0 - b1 - b2;
        let (mut y1, mut y2) = (0.0, 0.0);
        for s in signal.iter_mut() {
            let y = gain * *s + b1 * y1 + b2 * y2;
            y2 = y1;
            y1 = y;
            *s = y;
        }
    }

    let peak = signal.iter().fold(0.0f64, |m, s| m.max(s.abs()));
    if peak > 0.0 {
        signal.iter_mut().for_each(|s| *s *= PEAK_LEVEL / peak);
    }
    AudioBuffer::new(signal, spec.sample_rate)
}

fn excitation(spec: &VowelSpec, n: usize) -> Vec<f64> {
    match spec.excitation {
        Excitation::ImpulseTrain => {
            let period = spec.sample_rate as f64 / spec.f0;
            let mut out = vec![0.0; n];
            let mut k = 0usize;
            loop {
                let idx = (k as f64 * period).round() as usize;
                if idx >= n {
                    break;
                }
                out[idx] = 1.0;
                k += 1;
            }
            out
        }
        Excitation::Noise { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..n).map(|_| StandardNormal.sample(&mut rng)).collect()
        }
    }
}

/// Vowel, then `gap_s` of digital silence, then `tail_s` more of the same vowel.
pub fn synth_utterance_with_gap(spec: &VowelSpec, gap_s: f64, tail_s: f64) -> Result<AudioBuffer> {
    if !(gap_s >= 0.0 && tail_s >= 0.0) {
        return Err(Error::InvalidParameter("gap and tail must be non-negative".into()));
    }
    let fs = spec.sample_rate as f64;
    let mut samples = synth_vowel(spec)?.samples().to_vec();
    samples.extend(std::iter::repeat_n(0.0, (gap_s * fs).round() as usize));
    if tail_s > 0.0 {
        samples.extend_from_slice(synth_vowel(&spec.with_duration(tail_s))?.samples());
    }
    AudioBuffer::new(samples, spec.sample_rate)
}
