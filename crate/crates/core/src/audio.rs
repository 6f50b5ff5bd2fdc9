//! Mono PCM buffers: WAV input/output, band-limited resampling and framing.

use std::f64::consts::PI;
use std::ops::Range;
use std::path::Path;

use crate::error::{Error, Result};

/// Half-width of the resampling kernel, in zero crossings of the low-pass sinc.
const RESAMPLE_HALF_TAPS: f64 = 16.0;

/// Mono audio with its sample rate. Samples are finite and lie in `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AudioBuffer {
    samples: Vec<f64>,
    sample_rate: u32,
}

impl AudioBuffer {
    /// Builds a buffer, clamping samples into `[-1, 1]`.
    pub fn new(samples: Vec<f64>, sample_rate: u32) -> Result<Self> {
        if sample_rate == 0 {
            return Err(Error::InvalidParameter("sample rate must be positive".into()));
        }
        if let Some(i) = samples.iter().position(|s| !s.is_finite()) {
            return Err(Error::InvalidParameter(format!("sample {i} is not finite")));
        }
        let samples = samples.into_iter().map(|s| s.clamp(-1.0, 1.0)).collect();
        Ok(Self { samples, sample_rate })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate as f64
    }

    /// Multiplies every sample by `gain` (result clamped to `[-1, 1]`).
    pub fn scaled(&self, gain: f64) -> Self {
        Self {
            samples: self.samples.iter().map(|s| (s * gain).clamp(-1.0, 1.0)).collect(),
            sample_rate: self.sample_rate,
        }
    }

    /// Number of samples spanned by `ms` milliseconds at this rate (at least one).
    pub fn ms_to_samples(&self, ms: f64) -> usize {
        ms_to_samples(ms, self.sample_rate)
    }

    /// Splits the buffer into `frame_ms` windows every `hop_ms`; see [`frame_ranges`].
    pub fn frames(&self, frame_ms: f64, hop_ms: f64) -> Vec<&[f64]> {
        assert!(frame_ms > 0.0 && hop_ms > 0.0, "frame and hop must be positive");
        frame_ranges(self.len(), self.ms_to_samples(frame_ms), self.ms_to_samples(hop_ms))
            .into_iter()
            .map(|r| &self.samples[r])
            .collect()
    }
}

pub(crate) fn ms_to_samples(ms: f64, sample_rate: u32) -> usize {
    ((ms * sample_rate as f64 / 1000.0).round() as usize).max(1)
}

/// Sample ranges of full frames: frame `k` covers `[k*hop, k*hop + frame_len)`.
///
/// A trailing partial frame is dropped, so there are `(n - frame_len) / hop + 1`
/// frames when `n >= frame_len` and none otherwise.
pub fn frame_ranges(n: usize, frame_len: usize, hop: usize) -> Vec<Range<usize>> {
    assert!(frame_len > 0 && hop > 0, "frame length and hop must be positive");
    if n < frame_len {
        return Vec::new();
    }
    let count = (n - frame_len) / hop + 1;
    (0..count).map(|k| k * hop..k * hop + frame_len).collect()
}

/// Reads a RIFF/WAVE file (PCM 16-bit or IEEE float 32-bit, mono or stereo).
///
/// Stereo is downmixed by the per-sample channel mean. Integer samples are
/// scaled by 1/32768.
pub fn load_audio(path: impl AsRef<Path>) -> Result<AudioBuffer> {
    let path = path.as_ref();
    if !path.is_file() {
        return Err(Error::MissingFile(path.to_path_buf()));
    }
    let mut reader = hound::WavReader::open(path).map_err(map_hound)?;
    let spec = reader.spec();
    if spec.channels == 0 || spec.channels > 2 {
        return Err(Error::UnsupportedFormat(format!("{} channels", spec.channels)));
    }
    let interleaved: Vec<f64> = match (spec.sample_format, spec.bits_per_sample) {
        (hound::SampleFormat::Int, 16) => reader
            .samples::<i16>()
            .map(|s| s.map(|v| v as f64 / 32768.0))
            .collect::<std::result::Result<_, _>>()
            .map_err(map_hound)?,
        (hound::SampleFormat::Float, 32) => reader
            .samples::<f32>()
            .map(|s| s.map(f64::from))
            .collect::<std::result::Result<_, _>>()
            .map_err(map_hound)?,
        (format, bits) => {
            return Err(Error::UnsupportedFormat(format!("{format:?} with {bits} bits per sample")))
        }
    };
    let channels = spec.channels as usize;
    let mono: Vec<f64> = interleaved
        .chunks_exact(channels)
        .map(|frame| frame.iter().sum::<f64>() / channels as f64)
        .collect();
    if mono.is_empty() {
        return Err(Error::EmptyAudio);
    }
    AudioBuffer::new(mono, spec.sample_rate)
}

fn map_hound(err: hound::Error) -> Error {
    match err {
        hound::Error::IoError(e) => Error::Io(e),
        hound::Error::Unsupported => Error::UnsupportedFormat("unsupported WAVE encoding".into()),
        other => Error::UnsupportedFormat(other.to_string()),
    }
}

/// Writes a mono 16-bit PCM WAV file.
pub fn save_wav(buffer: &AudioBuffer, path: impl AsRef<Path>) -> Result<()> {
    let spec = hound::WavSpec {
        channels: 1,
        sample_rate: buffer.sample_rate,
        bits_per_sample: 16,
        sample_format: hound::SampleFormat::Int,
    };
    let mut writer = hound::WavWriter::create(path, spec).map_err(map_hound)?;
    for &s in &buffer.samples {
        let v = (s * 32768.0).round().clamp(i16::MIN as f64, i16::MAX as f64) as i16;
        writer.write_sample(v).map_err(map_hound)?;
    }
    writer.finalize().map_err(map_hound)
}

/// Windowed-sinc resampling (Hann window, 16 zero crossings per side).
///
/// When downsampling, the low-pass cutoff follows the output Nyquist rate.
/// Output length is `round(n * target_rate / rate)`.
pub fn resample(buffer: &AudioBuffer, target_rate: u32) -> AudioBuffer {
    assert!(target_rate > 0, "target rate must be positive");
    if target_rate == buffer.sample_rate {
        return buffer.clone();
    }
    let rate_in = buffer.sample_rate as f64;
    let ratio = target_rate as f64 / rate_in;
    let n_in = buffer.len();
    let n_out = (n_in as f64 * ratio).round() as usize;
    let cutoff = ratio.min(1.0);
    let half_width = RESAMPLE_HALF_TAPS / cutoff;
    let x = &buffer.samples;

    let samples = (0..n_out)
        .map(|m| {
            let t = m as f64 * rate_in / target_rate as f64;
            let lo = (t - half_width).ceil().max(0.0) as usize;
            let hi = ((t + half_width).floor() as usize).min(n_in.saturating_sub(1));
            let mut acc = 0.0;
            for (k, &xk) in x.iter().enumerate().take(hi + 1).skip(lo) {
                let d = t - k as f64;
                let window = 0.5 * (1.0 + (PI * d / half_width).cos());
                acc += xk * cutoff * sinc(cutoff * d) * window;
            }
            acc.clamp(-1.0, 1.0)
        })
        .collect();
    AudioBuffer { samples, sample_rate: target_rate }
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        1.0
    } else {
        (PI * x).sin() / (PI * x)
    }
}
