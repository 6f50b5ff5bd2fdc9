//! Manifest-driven batch stages: extract, normalize, metrics, plot, synth and
//! inventory listing. Each stage reads files and writes its outputs plus the
//! parameter block into an output directory.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use indexmap::IndexMap;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::audio::{load_audio, save_wav};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::formant::measure_vowel;
use crate::inventory::{Inventory, LanguageCode};
use crate::metrics::{build_metric_rows, pair_matrices_by_system, shared_summary, MetricRow, Role, VowelObservationSet};
use crate::normalize::{lobanov, speaker_stats, NormalizedPoint};
use crate::report::{
    json_to_string, pair_matrix_json, read_pair_matrices, read_table, render_heatmap, render_vowel_space, round_g6,
    summary_json, table_to_string, FormantRecord, NormalizedRecord, PlotPoint, VowelSpacePlot,
};
use crate::stats::median;
use crate::synth::{synth_utterance_with_gap, Excitation, Resonance, VowelSpec};

pub const MANIFEST_HEADER: [&str; 7] = ["wav_path", "system", "speaker", "native_lang", "target_lang", "vowel", "role"];
pub const ERRORS_HEADER: [&str; 3] = ["line", "wav_path", "error"];

pub const FORMANTS_FILE: &str = "formants.csv";
pub const EXTRACT_ERRORS_FILE: &str = "extract_errors.csv";
pub const NORMALIZED_FILE: &str = "normalized.csv";
pub const SPEAKER_STATS_FILE: &str = "speaker_stats.json";
pub const METRICS_FILE: &str = "metrics.csv";
pub const SUMMARY_FILE: &str = "summary.json";
pub const PAIR_MATRIX_FILE: &str = "pair_matrix.json";

/// One manifest row; `wav_path` is resolved against the manifest directory.
#[derive(Debug, Clone, PartialEq)]
pub struct ManifestEntry {
    pub line: u64,
    pub wav_path: PathBuf,
    pub listed_path: String,
    pub system: String,
    pub speaker: String,
    pub native_lang: LanguageCode,
    pub target_lang: LanguageCode,
    pub vowel: String,
    pub role: Role,
}

pub fn read_manifest(path: &Path, inventory: &Inventory) -> Result<Vec<ManifestEntry>> {
    if !path.is_file() {
        return Err(Error::MissingFile(path.to_path_buf()));
    }
    let base = path.parent().unwrap_or(Path::new("."));
    let mut reader = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_path(path).map_err(csv_io)?;
    let mut records = reader.records();
    let parse_err = |line: u64, message: String| Error::ManifestParse { line, message };
    let header = match records.next() {
        None => return Err(parse_err(1, "missing header".into())),
        Some(r) => r.map_err(|e| parse_err(1, e.to_string()))?,
    };
    if header.iter().map(str::trim).ne(MANIFEST_HEADER.iter().copied()) {
        return Err(parse_err(1, format!("header must be {}", MANIFEST_HEADER.join(","))));
    }
    let mut entries = Vec::new();
    for rec in records {
        let rec = rec.map_err(|e| parse_err(e.position().map_or(0, |p| p.line()), e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != MANIFEST_HEADER.len() {
            return Err(parse_err(line, format!("expected {} fields, found {}", MANIFEST_HEADER.len(), rec.len())));
        }
        let field = |k: usize| -> Result<&str> {
            let v = rec[k].trim();
            if v.is_empty() {
                Err(parse_err(line, format!("{} is empty", MANIFEST_HEADER[k])))
            } else {
                Ok(v)
            }
        };
        let lang = |k: usize| -> Result<LanguageCode> {
            let code = LanguageCode::new(field(k)?).map_err(|e| parse_err(line, e.to_string()))?;
            inventory.get(&code).map_err(|e| parse_err(line, e.to_string()))?;
            Ok(code)
        };
        let native_lang = lang(3)?;
        let target_lang = lang(4)?;
        let vowel = crate::inventory::normalize_symbol(field(5)?).to_string();
        let role: Role = field(6)?.parse().map_err(|e: Error| parse_err(line, e.to_string()))?;
        if role == Role::Anchor && native_lang != target_lang {
            return Err(parse_err(line, format!("anchor speaks {native_lang} but targets {target_lang}")));
        }
        if !inventory.get(&target_lang)?.contains(&vowel) {
            return Err(parse_err(line, format!("/{vowel}/ is not in the {target_lang} inventory")));
        }
        let listed = field(0)?.to_string();
        entries.push(ManifestEntry {
            line,
            wav_path: base.join(&listed),
            listed_path: listed,
            system: field(1)?.to_string(),
            speaker: field(2)?.to_string(),
            native_lang,
            target_lang,
            vowel,
            role,
        });
    }
    Ok(entries)
}

fn csv_io(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::InvalidParameter(format!("{other:?}")),
    }
}

fn params_sidecar(out_dir: &Path, stem: &str, cfg: &Config) -> Result<()> {
    fs::write(out_dir.join(format!("{stem}.params.json")), json_to_string(&cfg.params_json()))?;
    Ok(())
}

/// A manifest row that could not be measured.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtractFailure {
    pub line: u64,
    pub wav_path: String,
    pub kind: &'static str,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtractOutcome {
    pub rows: Vec<FormantRecord>,
    pub failures: Vec<ExtractFailure>,
}

/// Measures every manifest entry, in parallel over `jobs` threads.
///
/// Writes `formants.csv`, its parameter sidecar and `extract_errors.csv`.
/// Fails with `InsufficientData` when the manifest is empty or no entry
/// could be measured; the outputs are still written in the latter case.
pub fn cmd_extract(manifest: &Path, cfg: &Config, out_dir: &Path, jobs: usize) -> Result<ExtractOutcome> {
    let inventory = cfg.load_inventory()?;
    let entries = read_manifest(manifest, &inventory)?;
    if entries.is_empty() {
        return Err(Error::InsufficientData("no entries".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let measured: Vec<Result<crate::formant::FormantPair>> = pool.install(|| {
        entries
            .par_iter()
            .map(|e| {
                if !e.wav_path.is_file() {
                    return Err(Error::MissingFile(e.wav_path.clone()));
                }
                measure_vowel(&load_audio(&e.wav_path)?, &cfg.analysis)
            })
            .collect()
    });

    let mut ordinals: IndexMap<(&str, &str, &LanguageCode, &LanguageCode, &str, Role), usize> = IndexMap::new();
    let mut outcome = ExtractOutcome { rows: Vec::new(), failures: Vec::new() };
    for (entry, result) in entries.iter().zip(measured) {
        let key = (entry.system.as_str(), entry.speaker.as_str(), &entry.native_lang, &entry.target_lang, entry.vowel.as_str(), entry.role);
        let ordinal = ordinals.entry(key).or_insert(0);
        let idx = *ordinal;
        *ordinal += 1;
        match result {
            Ok(pair) => outcome.rows.push(FormantRecord {
                system: entry.system.clone(),
                speaker: entry.speaker.clone(),
                src_lang: entry.native_lang.clone(),
                tgt_lang: entry.target_lang.clone(),
                vowel: entry.vowel.clone(),
                role: entry.role,
                idx,
                f1_hz: pair.f1,
                f2_hz: pair.f2,
            }),
            Err(e) => outcome.failures.push(ExtractFailure {
                line: entry.line,
                wav_path: entry.listed_path.clone(),
                kind: e.kind(),
                message: e.to_string(),
            }),
        }
    }

    fs::create_dir_all(out_dir)?;
    fs::write(out_dir.join(FORMANTS_FILE), table_to_string(&outcome.rows))?;
    params_sidecar(out_dir, "formants", cfg)?;
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(ERRORS_HEADER).map_err(csv_io)?;
    for f in &outcome.failures {
        w.write_record([f.line.to_string().as_str(), &f.wav_path, f.kind]).map_err(csv_io)?;
    }
    fs::write(out_dir.join(EXTRACT_ERRORS_FILE), w.into_inner().map_err(|e| Error::Io(e.into_error()))?)?;

    if outcome.rows.is_empty() {
        return Err(Error::InsufficientData(format!("all {} entries failed", outcome.failures.len())));
    }
    Ok(outcome)
}

/// Lobanov-normalizes `formants.csv` per (system, speaker).
///
/// Writes `normalized.csv` (same row order), its parameter sidecar and
/// `speaker_stats.json`.
pub fn cmd_normalize(formants: &Path, cfg: &Config, out_dir: &Path) -> Result<Vec<NormalizedRecord>> {
    let rows: Vec<FormantRecord> = read_table(formants)?;
    if rows.is_empty() {
        return Err(Error::InsufficientData(format!("{} has no rows", formants.display())));
    }
    let mut groups: IndexMap<(&str, &str), Vec<crate::formant::FormantPair>> = IndexMap::new();
    for r in &rows {
        groups
            .entry((r.system.as_str(), r.speaker.as_str()))
            .or_default()
            .push(crate::formant::FormantPair { f1: r.f1_hz, f2: r.f2_hz });
    }
    let mut stats = IndexMap::new();
    for ((system, speaker), pairs) in &groups {
        let s = speaker_stats(&format!("{system}/{speaker}"), pairs)?;
        stats.insert((*system, *speaker), s);
    }
    let normalized: Vec<NormalizedRecord> = rows
        .iter()
        .map(|r| {
            let s = &stats[&(r.system.as_str(), r.speaker.as_str())];
            let z = lobanov(&crate::formant::FormantPair { f1: r.f1_hz, f2: r.f2_hz }, s);
            NormalizedRecord {
                system: r.system.clone(),
                speaker: r.speaker.clone(),
                src_lang: r.src_lang.clone(),
                tgt_lang: r.tgt_lang.clone(),
                vowel: r.vowel.clone(),
                role: r.role,
                idx: r.idx,
                z1: z.z1,
                z2: z.z2,
            }
        })
        .collect();

    let speakers: Vec<Value> = stats
        .iter()
        .map(|((system, speaker), s)| {
            json!({
                "system": system,
                "speaker": speaker,
                "n": s.n,
                "mean_f1": round_g6(s.mean_f1),
                "mean_f2": round_g6(s.mean_f2),
                "sd_f1": round_g6(s.sd_f1),
                "sd_f2": round_g6(s.sd_f2),
            })
        })
        .collect();
    fs::create_dir_all(out_dir)?;
    fs::write(out_dir.join(NORMALIZED_FILE), table_to_string(&normalized))?;
    params_sidecar(out_dir, "normalized", cfg)?;
    let doc = json!({ "speakers": speakers, "parameters": cfg.params_json() });
    fs::write(out_dir.join(SPEAKER_STATS_FILE), json_to_string(&doc))?;
    Ok(normalized)
}

type SetKey<'a> = (&'a str, &'a str, &'a LanguageCode, &'a LanguageCode, &'a str, Role);

/// Groups normalized rows into observation sets, in order of first appearance.
pub fn observation_sets(rows: &[NormalizedRecord]) -> Vec<VowelObservationSet> {
    let mut groups: IndexMap<SetKey, Vec<NormalizedPoint>> = IndexMap::new();
    for r in rows {
        groups
            .entry((&r.system, &r.speaker, &r.src_lang, &r.tgt_lang, &r.vowel, r.role))
            .or_default()
            .push(NormalizedPoint::new(r.z1, r.z2));
    }
    groups
        .into_iter()
        .map(|((system, speaker, src, tgt, vowel, role), points)| VowelObservationSet {
            system_id: system.to_string(),
            speaker_id: speaker.to_string(),
            source_language: src.clone(),
            target_language: tgt.clone(),
            vowel: vowel.to_string(),
            points,
            role,
        })
        .collect()
}

/// Writes `metrics.csv` (plus sidecar), `summary.json` and `pair_matrix.json`.
pub fn cmd_metrics(normalized: &Path, cfg: &Config, out_dir: &Path) -> Result<Vec<MetricRow>> {
    let inventory = cfg.load_inventory()?;
    let rows: Vec<NormalizedRecord> = read_table(normalized)?;
    let metric_rows = build_metric_rows(&observation_sets(&rows), &inventory)?;
    if metric_rows.is_empty() {
        return Err(Error::InsufficientData("no test rows to score".into()));
    }
    let params = cfg.params_json();
    let summary = summary_json(&shared_summary(&metric_rows, cfg.weighting), cfg.weighting, &params);
    let matrices = pair_matrices_by_system(&metric_rows, cfg.pair_filter);
    let matrix_doc = pair_matrix_json(&matrices, cfg.pair_filter, &params);

    fs::create_dir_all(out_dir)?;
    fs::write(out_dir.join(METRICS_FILE), table_to_string(&metric_rows))?;
    params_sidecar(out_dir, "metrics", cfg)?;
    fs::write(out_dir.join(SUMMARY_FILE), json_to_string(&summary))?;
    fs::write(out_dir.join(PAIR_MATRIX_FILE), json_to_string(&matrix_doc))?;
    Ok(metric_rows)
}

/// Filters for `cmd_plot`; `None` matches everything.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PlotSelector {
    pub system: Option<String>,
    pub speaker: Option<String>,
    pub vowel: Option<String>,
    pub target: Option<String>,
    pub source: Option<String>,
}

fn check_selector<'a>(name: &str, wanted: &Option<String>, mut available: impl Iterator<Item = &'a str>) -> Result<()> {
    match wanted {
        Some(w) if !available.any(|a| a == w) => Err(Error::UnknownSelector(format!("{name} {w:?} does not occur in the input"))),
        _ => Ok(()),
    }
}

fn series_name(r: &NormalizedRecord) -> String {
    match r.role {
        Role::Anchor => format!("{} native ({})", r.tgt_lang, r.system),
        Role::Test => format!("{} speaker -> {} ({})", r.src_lang, r.tgt_lang, r.system),
    }
}

/// Per-series, per-vowel median points of the selected normalized rows.
pub fn vowel_space_plot(rows: &[NormalizedRecord], sel: &PlotSelector) -> Result<VowelSpacePlot> {
    let sel = PlotSelector {
        vowel: sel.vowel.as_deref().map(|v| crate::inventory::normalize_symbol(v).to_string()),
        target: sel.target.as_deref().map(str::to_ascii_uppercase),
        source: sel.source.as_deref().map(str::to_ascii_uppercase),
        ..sel.clone()
    };
    check_selector("system", &sel.system, rows.iter().map(|r| r.system.as_str()))?;
    check_selector("speaker", &sel.speaker, rows.iter().map(|r| r.speaker.as_str()))?;
    check_selector("vowel", &sel.vowel, rows.iter().map(|r| r.vowel.as_str()))?;
    check_selector("target", &sel.target, rows.iter().map(|r| r.tgt_lang.as_str()))?;
    check_selector("source", &sel.source, rows.iter().map(|r| r.src_lang.as_str()))?;

    let keep = |r: &&NormalizedRecord| {
        sel.system.as_ref().is_none_or(|s| *s == r.system)
            && sel.speaker.as_ref().is_none_or(|s| *s == r.speaker)
            && sel.vowel.as_ref().is_none_or(|s| *s == r.vowel)
            && sel.target.as_ref().is_none_or(|s| s == r.tgt_lang.as_str())
            && sel.source.as_ref().is_none_or(|s| s == r.src_lang.as_str())
    };
    let mut groups: IndexMap<(String, &str), [Vec<f64>; 2]> = IndexMap::new();
    for r in rows.iter().filter(keep) {
        let g = groups.entry((series_name(r), r.vowel.as_str())).or_default();
        g[0].push(r.z1);
        g[1].push(r.z2);
    }
    if groups.is_empty() {
        return Err(Error::EmptyPlot);
    }
    let points = groups
        .into_iter()
        .map(|((series, vowel), [z1, z2])| PlotPoint {
            label: vowel.to_string(),
            series,
            point: NormalizedPoint::new(median(&z1).unwrap_or(0.0), median(&z2).unwrap_or(0.0)),
        })
        .collect();

    let mut title = vec!["Normalized vowel space".to_string()];
    for (name, v) in [("system", &sel.system), ("speaker", &sel.speaker), ("vowel", &sel.vowel), ("target", &sel.target), ("source", &sel.source)] {
        if let Some(v) = v {
            title.push(format!("{name} {v}"));
        }
    }
    Ok(VowelSpacePlot { title: title.join(", "), points })
}

fn file_safe(name: &str) -> String {
    name.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' }).collect()
}

/// Renders a vowel-space SVG from `normalized.csv`, or one heatmap per
/// system from `pair_matrix.json`. Returns the written paths.
pub fn cmd_plot(input: &Path, sel: &PlotSelector, out_dir: &Path) -> Result<Vec<PathBuf>> {
    if !input.is_file() {
        return Err(Error::MissingFile(input.to_path_buf()));
    }
    fs::create_dir_all(out_dir)?;
    if input.extension().is_some_and(|e| e == "json") {
        if sel.speaker.is_some() || sel.vowel.is_some() || sel.target.is_some() || sel.source.is_some() {
            return Err(Error::UnknownSelector("pair matrices only accept --system".into()));
        }
        let matrices = read_pair_matrices(input)?;
        check_selector("system", &sel.system, matrices.iter().map(|(s, _)| s.as_str()))?;
        let mut written = Vec::new();
        for (system, m) in matrices.iter().filter(|(s, _)| sel.system.as_ref().is_none_or(|w| w == s)) {
            if m.populated() == 0 {
                continue;
            }
            let svg = render_heatmap(m, &format!("Mean vowel distance, {system}"))?;
            let path = out_dir.join(format!("heatmap_{}.svg", file_safe(system)));
            fs::write(&path, svg)?;
            written.push(path);
        }
        if written.is_empty() {
            return Err(Error::EmptyPlot);
        }
        return Ok(written);
    }
    let rows: Vec<NormalizedRecord> = read_table(input)?;
    let svg = render_vowel_space(&vowel_space_plot(&rows, sel)?)?;
    let path = out_dir.join("vowel_space.svg");
    fs::write(&path, svg)?;
    Ok(vec![path])
}

/// One line of a synthesis spec file.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthJob {
    pub name: String,
    pub spec: VowelSpec,
    pub gap_s: f64,
    pub tail_s: f64,
}

pub const SYNTH_HEADER: [&str; 5] = ["name", "f0", "duration", "sample_rate", "formants"];
pub const SYNTH_OPTIONAL: [&str; 3] = ["gap", "tail", "seed"];

/// Parses a synthesis spec: CSV with columns `name,f0,duration,sample_rate,formants`
/// and optionally `gap,tail,seed`; `formants` is `freq/bw freq/bw ...`.
pub fn parse_synth_spec(path: &Path) -> Result<Vec<SynthJob>> {
    if !path.is_file() {
        return Err(Error::MissingFile(path.to_path_buf()));
    }
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_path(path).map_err(csv_io)?;
    let header: Vec<String> = reader.headers().map_err(csv_io)?.iter().map(str::to_string).collect();
    let column = |name: &str| header.iter().position(|h| h == name);
    let missing: Vec<&str> = SYNTH_HEADER.iter().copied().filter(|h| column(h).is_none()).collect();
    if !missing.is_empty() {
        return Err(Error::InvalidParameter(format!("synth spec lacks column(s) {}", missing.join(", "))));
    }
    if let Some(extra) = header.iter().find(|h| !SYNTH_HEADER.contains(&h.as_str()) && !SYNTH_OPTIONAL.contains(&h.as_str())) {
        return Err(Error::InvalidParameter(format!("synth spec has unknown column {extra:?}")));
    }
    let mut jobs = Vec::new();
    let mut names = HashSet::new();
    for rec in reader.records() {
        let rec = rec.map_err(csv_io)?;
        let line = rec.position().map_or(0, |p| p.line());
        let bad = |m: String| Error::InvalidParameter(format!("synth spec line {line}: {m}"));
        let get = |name: &str| column(name).and_then(|k| rec.get(k)).filter(|v| !v.is_empty());
        let num = |name: &str| -> Result<Option<f64>> {
            get(name).map(|v| v.parse::<f64>().map_err(|_| bad(format!("{name}: {v:?} is not a number")))).transpose()
        };
        let name = get("name").ok_or_else(|| bad("empty name".into()))?.to_string();
        if !name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '-' || c == '.') || name.starts_with('.') {
            return Err(bad(format!("name {name:?} is not a plain file stem")));
        }
        if !names.insert(name.clone()) {
            return Err(bad(format!("name {name:?} repeated")));
        }
        let formants = get("formants")
            .ok_or_else(|| bad("empty formants".into()))?
            .split_whitespace()
            .map(|fb| {
                let (f, b) = fb.split_once('/').ok_or_else(|| bad(format!("formant {fb:?} is not freq/bw")))?;
                match (f.parse::<f64>(), b.parse::<f64>()) {
                    (Ok(f), Ok(b)) => Ok(Resonance::new(f, b)),
                    _ => Err(bad(format!("formant {fb:?} is not freq/bw"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let rate = get("sample_rate")
            .ok_or_else(|| bad("empty sample_rate".into()))?
            .parse::<u32>()
            .map_err(|_| bad("sample_rate must be a positive integer".into()))?;
        let seed = get("seed").map(|s| s.parse::<u64>().map_err(|_| bad(format!("seed {s:?} is not an integer")))).transpose()?;
        let mut spec = VowelSpec::new(
            num("f0")?.ok_or_else(|| bad("empty f0".into()))?,
            formants,
            num("duration")?.ok_or_else(|| bad("empty duration".into()))?,
            rate,
        );
        if let Some(seed) = seed {
            spec.excitation = Excitation::Noise { seed };
        }
        spec.validate().map_err(|e| bad(e.to_string()))?;
        jobs.push(SynthJob { name, spec, gap_s: num("gap")?.unwrap_or(0.0), tail_s: num("tail")?.unwrap_or(0.0) });
    }
    Ok(jobs)
}

/// Renders each spec line to `<name>.wav` (16-bit PCM).
pub fn cmd_synth(spec_file: &Path, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let jobs = parse_synth_spec(spec_file)?;
    if jobs.is_empty() {
        return Err(Error::InsufficientData("synth spec has no entries".into()));
    }
    fs::create_dir_all(out_dir)?;
    jobs.iter()
        .map(|job| {
            let buf = synth_utterance_with_gap(&job.spec, job.gap_s, job.tail_s)?;
            let path = out_dir.join(format!("{}.wav", job.name));
            save_wav(&buf, &path)?;
            Ok(path)
        })
        .collect()
}

/// Shared vowels of a pair and the vowels found in only one of them.
#[derive(Debug, Clone, PartialEq)]
pub struct InventoryListing {
    pub a: LanguageCode,
    pub b: LanguageCode,
    pub shared: Vec<String>,
    pub only_a: Vec<String>,
    pub only_b: Vec<String>,
}

impl InventoryListing {
    pub fn non_shared(&self) -> Vec<String> {
        self.only_a.iter().chain(&self.only_b).cloned().collect()
    }

    pub fn render(&self) -> String {
        format!(
            "shared: {}\nnon-shared: {}\n",
            self.shared.join(" "),
            self.only_a
                .iter()
                .map(|v| format!("{v} ({})", self.a))
                .chain(self.only_b.iter().map(|v| format!("{v} ({})", self.b)))
                .collect::<Vec<_>>()
                .join(" ")
        )
    }
}

pub fn cmd_inventory(a: &str, b: &str, cfg: &Config) -> Result<InventoryListing> {
    let inventory = cfg.load_inventory()?;
    let (a, b) = (LanguageCode::new(a)?, LanguageCode::new(b)?);
    Ok(InventoryListing {
        shared: inventory.shared_vowels(&a, &b)?,
        only_a: inventory.unshared_vowels(&a, &b)?,
        only_b: inventory.unshared_vowels(&b, &a)?,
        a,
        b,
    })
}
