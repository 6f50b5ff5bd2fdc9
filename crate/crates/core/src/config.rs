//! `key = value` configuration files and the parameter block recorded with outputs.
//!
//! Blank lines and `#` comments are ignored. Unknown or repeated keys are
//! errors. A relative `inventory` path is resolved against the directory of
//! the config file.

use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::formant::AnalysisParams;
use crate::inventory::Inventory;
use crate::metrics::{PairFilter, Weighting};

pub const KEYS: [&str; 17] = [
    "analysis_rate",
    "lpc_order",
    "preemphasis",
    "frame_ms",
    "hop_ms",
    "threshold_db",
    "min_silence_ms",
    "min_voiced_ms",
    "f1_min",
    "f1_max",
    "f2_min",
    "f2_max",
    "max_bandwidth",
    "inventory",
    "out",
    "token_weighted",
    "pair_filter",
];

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Config {
    pub analysis: AnalysisParams,
    /// Inventory file; `None` selects the bundled inventory.
    pub inventory: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub weighting: Weighting,
    pub pair_filter: PairFilter,
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| Error::Config(format!("{key}: cannot parse {value:?}")))
}

impl Config {
    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        if !path.is_file() {
            return Err(Error::MissingFile(path.to_path_buf()));
        }
        let mut cfg = Self::parse(&std::fs::read_to_string(path)?)?;
        if let (Some(inv), Some(dir)) = (&cfg.inventory, path.parent()) {
            if inv.is_relative() {
                cfg.inventory = Some(dir.join(inv));
            }
        }
        Ok(cfg)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Config::default();
        let mut seen: Vec<&str> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split_once('#').map_or(raw, |(l, _)| l).trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", i + 1)))?;
            let key = KEYS
                .iter()
                .copied()
                .find(|k| *k == key)
                .ok_or_else(|| Error::Config(format!("line {}: unknown key {key:?}", i + 1)))?;
            if seen.contains(&key) {
                return Err(Error::Config(format!("line {}: {key} given twice", i + 1)));
            }
            seen.push(key);
            cfg.set(key, value).map_err(|e| match e {
                Error::Config(m) => Error::Config(format!("line {}: {m}", i + 1)),
                other => other,
            })?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let a = &mut self.analysis;
        match key {
            "analysis_rate" => a.analysis_rate = parse_num(key, value)?,
            "lpc_order" => a.lpc_order = parse_num(key, value)?,
            "preemphasis" => a.preemphasis = parse_num(key, value)?,
            "frame_ms" => a.segment.frame_ms = parse_num(key, value)?,
            "hop_ms" => a.segment.hop_ms = parse_num(key, value)?,
            "threshold_db" => a.segment.threshold_db = parse_num(key, value)?,
            "min_silence_ms" => a.segment.min_silence_ms = parse_num(key, value)?,
            "min_voiced_ms" => a.segment.min_voiced_ms = parse_num(key, value)?,
            "f1_min" => a.gates.f1_min = parse_num(key, value)?,
            "f1_max" => a.gates.f1_max = parse_num(key, value)?,
            "f2_min" => a.gates.f2_min = parse_num(key, value)?,
            "f2_max" => a.gates.f2_max = parse_num(key, value)?,
            "max_bandwidth" => a.gates.max_bandwidth = parse_num(key, value)?,
            "inventory" => self.inventory = (value != "bundled").then(|| PathBuf::from(value)),
            "out" => self.out = Some(PathBuf::from(value)),
            "token_weighted" => {
                let token: bool = parse_num(key, value)?;
                self.weighting = if token { Weighting::Token } else { Weighting::Vowel };
            }
            "pair_filter" => {
                self.pair_filter = value.parse().map_err(|_| Error::Config(format!("pair_filter: {value:?} is not all, shared or non-shared")))?
            }
            _ => unreachable!("key list checked by caller"),
        }
        Ok(())
    }

    /// Every numeric parameter positive, gates ordered, pre-emphasis below one.
    pub fn validate(&self) -> Result<()> {
        let a = &self.analysis;
        let s = &a.segment;
        let g = &a.gates;
        let positive = [
            ("preemphasis", a.preemphasis),
            ("frame_ms", s.frame_ms),
            ("hop_ms", s.hop_ms),
            ("threshold_db", s.threshold_db),
            ("min_silence_ms", s.min_silence_ms),
            ("min_voiced_ms", s.min_voiced_ms),
            ("f1_min", g.f1_min),
            ("f1_max", g.f1_max),
            ("f2_min", g.f2_min),
            ("f2_max", g.f2_max),
            ("max_bandwidth", g.max_bandwidth),
        ];
        for (key, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("{key} must be positive, got {v}")));
            }
        }
        if a.analysis_rate == 0 {
            return Err(Error::Config("analysis_rate must be positive".into()));
        }
        if a.lpc_order < 2 {
            return Err(Error::Config("lpc_order must be at least 2".into()));
        }
        if a.preemphasis >= 1.0 {
            return Err(Error::Config("preemphasis must be below 1".into()));
        }
        if g.f1_min >= g.f1_max || g.f2_min >= g.f2_max {
            return Err(Error::Config("gate minimum must be below its maximum".into()));
        }
        Ok(())
    }

    pub fn load_inventory(&self) -> Result<Inventory> {
        match &self.inventory {
            None => Inventory::bundled(),
            Some(p) => Inventory::from_path(p),
        }
    }

    /// Parameter block embedded in outputs. The output directory is left out
    /// so that identical inputs give identical files wherever they are written.
    pub fn params_json(&self) -> Value {
        let a = &self.analysis;
        let s = &a.segment;
        let g = &a.gates;
        json!({
            "analysis_rate": a.analysis_rate,
            "lpc_order": a.lpc_order,
            "preemphasis": a.preemphasis,
            "frame_ms": s.frame_ms,
            "hop_ms": s.hop_ms,
            "threshold_db": s.threshold_db,
            "min_silence_ms": s.min_silence_ms,
            "min_voiced_ms": s.min_voiced_ms,
            "f1_min": g.f1_min,
            "f1_max": g.f1_max,
            "f2_min": g.f2_min,
            "f2_max": g.f2_max,
            "max_bandwidth": g.max_bandwidth,
            "inventory": self.inventory.as_ref().map_or("bundled".to_string(), |p| p.display().to_string()),
            "token_weighted": self.weighting == Weighting::Token,
            "pair_filter": self.pair_filter.to_string(),
        })
    }

    /// Config-file text that parses back to `self`.
    pub fn to_config_string(&self) -> String {
        let mut out = String::new();
        if let Value::Object(map) = self.params_json() {
            for (k, v) in map {
                let text = match v {
                    Value::String(s) => s,
                    other => other.to_string(),
                };
                out.push_str(&format!("{k} = {text}\n"));
            }
        }
        if let Some(o) = &self.out {
            out.push_str(&format!("out = {}\n", o.display()));
        }
        out
    }
}
