//! Cross-lingual vowel-space analysis.
//!
//! Audio goes through [`formant::measure_vowel`] to F1/F2, per-speaker
//! [`normalize::lobanov`] z-scores, and [`metrics`] comparing each vowel with
//! a native anchor. [`pipeline`] wires the stages to files.

// `!(x > 0.0)` style checks are deliberate: they reject NaN too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod audio;
pub mod config;
pub mod error;
pub mod formant;
pub mod inventory;
pub mod metrics;
pub mod normalize;
pub mod pipeline;
pub mod report;
pub mod segment;
pub mod stats;
pub mod synth;

pub use error::{Error, Result};
