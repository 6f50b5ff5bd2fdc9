//! Table serialization (CSV), aggregate documents (JSON) and SVG rendering.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::inventory::LanguageCode;
use crate::metrics::{MetricRow, PairFilter, PairMatrix, Role, SystemSummary, Weighting};
use crate::normalize::NormalizedPoint;

pub const FORMANTS_HEADER: [&str; 9] = ["system", "speaker", "src_lang", "tgt_lang", "vowel", "role", "idx", "f1_hz", "f2_hz"];
pub const NORMALIZED_HEADER: [&str; 9] = ["system", "speaker", "src_lang", "tgt_lang", "vowel", "role", "idx", "z1", "z2"];
pub const METRICS_HEADER: [&str; 8] = ["system", "src_lang", "tgt_lang", "vowel", "shared", "distance", "compactness", "n"];

/// Formats like C's `%.6g`: six significant digits, trailing zeros trimmed.
pub fn format_g6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..6).contains(&exp) {
        let s = format!("{x:.*}", (5 - exp) as usize);
        trim_fraction(&s).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_fraction(mantissa), exp.abs())
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `x` rounded to six significant digits.
pub fn round_g6(x: f64) -> f64 {
    format_g6(x).parse().unwrap_or(x)
}

/// A row type with a fixed CSV schema.
pub trait TableRow: Sized {
    const HEADER: &'static [&'static str];
    fn to_fields(&self) -> Vec<String>;
    fn from_fields(fields: &csv::StringRecord) -> std::result::Result<Self, String>;
}

#[derive(Debug, Clone, PartialEq)]
pub struct FormantRecord {
    pub system: String,
    pub speaker: String,
    pub src_lang: LanguageCode,
    pub tgt_lang: LanguageCode,
    pub vowel: String,
    pub role: Role,
    pub idx: usize,
    pub f1_hz: f64,
    pub f2_hz: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedRecord {
    pub system: String,
    pub speaker: String,
    pub src_lang: LanguageCode,
    pub tgt_lang: LanguageCode,
    pub vowel: String,
    pub role: Role,
    pub idx: usize,
    pub z1: f64,
    pub z2: f64,
}

fn parse_f64(name: &str, s: &str) -> std::result::Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("{name}: not a finite number: {s:?}")),
    }
}

fn parse_usize(name: &str, s: &str) -> std::result::Result<usize, String> {
    s.trim().parse().map_err(|_| format!("{name}: not a count: {s:?}"))
}

fn parse_lang(name: &str, s: &str) -> std::result::Result<LanguageCode, String> {
    LanguageCode::new(s).map_err(|_| format!("{name}: bad language code {s:?}"))
}

fn parse_text(name: &str, s: &str) -> std::result::Result<String, String> {
    if s.trim().is_empty() {
        Err(format!("{name}: empty"))
    } else {
        Ok(s.to_string())
    }
}

type Key = (String, String, LanguageCode, LanguageCode, String, Role, usize);

fn key_fields(k: (&str, &str, &LanguageCode, &LanguageCode, &str, Role, usize)) -> Vec<String> {
    vec![k.0.into(), k.1.into(), k.2.to_string(), k.3.to_string(), k.4.into(), k.5.to_string(), k.6.to_string()]
}

fn parse_key(f: &csv::StringRecord) -> std::result::Result<Key, String> {
    Ok((
        parse_text("system", &f[0])?,
        parse_text("speaker", &f[1])?,
        parse_lang("src_lang", &f[2])?,
        parse_lang("tgt_lang", &f[3])?,
        parse_text("vowel", &f[4])?,
        f[5].parse::<Role>().map_err(|e| e.to_string())?,
        parse_usize("idx", &f[6])?,
    ))
}

impl TableRow for FormantRecord {
    const HEADER: &'static [&'static str] = &FORMANTS_HEADER;

    fn to_fields(&self) -> Vec<String> {
        let mut f = key_fields((&self.system, &self.speaker, &self.src_lang, &self.tgt_lang, &self.vowel, self.role, self.idx));
        f.extend([format_g6(self.f1_hz), format_g6(self.f2_hz)]);
        f
    }

    fn from_fields(f: &csv::StringRecord) -> std::result::Result<Self, String> {
        let (system, speaker, src_lang, tgt_lang, vowel, role, idx) = parse_key(f)?;
        Ok(Self {
            system,
            speaker,
            src_lang,
            tgt_lang,
            vowel,
            role,
            idx,
            f1_hz: parse_f64("f1_hz", &f[7])?,
            f2_hz: parse_f64("f2_hz", &f[8])?,
        })
    }
}

impl TableRow for NormalizedRecord {
    const HEADER: &'static [&'static str] = &NORMALIZED_HEADER;

    fn to_fields(&self) -> Vec<String> {
        let mut f = key_fields((&self.system, &self.speaker, &self.src_lang, &self.tgt_lang, &self.vowel, self.role, self.idx));
        f.extend([format_g6(self.z1), format_g6(self.z2)]);
        f
    }

    fn from_fields(f: &csv::StringRecord) -> std::result::Result<Self, String> {
        let (system, speaker, src_lang, tgt_lang, vowel, role, idx) = parse_key(f)?;
        Ok(Self { system, speaker, src_lang, tgt_lang, vowel, role, idx, z1: parse_f64("z1", &f[7])?, z2: parse_f64("z2", &f[8])? })
    }
}

impl TableRow for MetricRow {
    const HEADER: &'static [&'static str] = &METRICS_HEADER;

    fn to_fields(&self) -> Vec<String> {
        vec![
            self.system_id.clone(),
            self.source_language.to_string(),
            self.target_language.to_string(),
            self.vowel.clone(),
            self.shared.to_string(),
            format_g6(self.distance),
            format_g6(self.compactness_sd),
            self.n_points.to_string(),
        ]
    }

    fn from_fields(f: &csv::StringRecord) -> std::result::Result<Self, String> {
        Ok(Self {
            system_id: parse_text("system", &f[0])?,
            source_language: parse_lang("src_lang", &f[1])?,
            target_language: parse_lang("tgt_lang", &f[2])?,
            vowel: parse_text("vowel", &f[3])?,
            shared: f[4].trim().parse().map_err(|_| format!("shared: expected true or false, got {:?}", &f[4]))?,
            distance: parse_f64("distance", &f[5])?,
            compactness_sd: parse_f64("compactness", &f[6])?,
            n_points: parse_usize("n", &f[7])?,
        })
    }
}

/// Serializes rows as CSV with the row type's header.
pub fn table_to_string<R: TableRow>(rows: &[R]) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(R::HEADER).expect("in-memory write");
    for r in rows {
        w.write_record(r.to_fields()).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

pub fn write_table<R: TableRow>(rows: &[R], path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, table_to_string(rows))?;
    Ok(())
}

pub fn read_table<R: TableRow>(path: impl AsRef<Path>) -> Result<Vec<R>> {
    let path = path.as_ref();
    if !path.is_file() {
        return Err(Error::MissingFile(path.to_path_buf()));
    }
    parse_table(&fs::read(path)?, path)
}

/// Parses CSV bytes; `path` only labels errors.
pub fn parse_table<R: TableRow>(bytes: &[u8], path: &Path) -> Result<Vec<R>> {
    let mismatch = |line: u64, message: String| Error::SchemaMismatch { path: path.to_path_buf(), line, message };
    let mut reader = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_reader(bytes);
    let mut records = reader.records();
    let header = match records.next() {
        None => return Err(mismatch(1, "missing header".into())),
        Some(r) => r.map_err(|e| mismatch(1, e.to_string()))?,
    };
    if header.iter().ne(R::HEADER.iter().copied()) {
        return Err(mismatch(1, format!("expected header {}, found {}", R::HEADER.join(","), header.iter().collect::<Vec<_>>().join(","))));
    }
    let mut rows = Vec::new();
    for rec in records {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            mismatch(line, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != R::HEADER.len() {
            return Err(mismatch(line, format!("expected {} fields, found {}", R::HEADER.len(), rec.len())));
        }
        rows.push(R::from_fields(&rec).map_err(|m| mismatch(line, m))?);
    }
    Ok(rows)
}

fn g6_or_null(x: Option<f64>) -> Value {
    x.map_or(Value::Null, |v| json!(round_g6(v)))
}

/// Per-system `{shared, non-shared} x {distance, sd}` block plus row counts.
pub fn summary_json(summaries: &[SystemSummary], weighting: Weighting, parameters: &Value) -> Value {
    let mut systems = Map::new();
    let mut counts = Map::new();
    for s in summaries {
        let cell = |c: Option<crate::metrics::CellMeans>| {
            json!({ "distance": g6_or_null(c.map(|c| c.distance)), "sd": g6_or_null(c.map(|c| c.compactness)) })
        };
        systems.insert(s.system_id.clone(), json!({ "shared": cell(s.shared), "non-shared": cell(s.non_shared) }));
        counts.insert(
            s.system_id.clone(),
            json!({ "shared": s.shared.map_or(0, |c| c.rows), "non-shared": s.non_shared.map_or(0, |c| c.rows) }),
        );
    }
    json!({
        "weighting": weighting,
        "systems": systems,
        "row_counts": counts,
        "parameters": parameters,
    })
}

/// Source x target mean-distance matrices per system; `null` marks absent cells.
pub fn pair_matrix_json<'a>(
    matrices: impl IntoIterator<Item = (&'a String, &'a PairMatrix)>,
    filter: PairFilter,
    parameters: &Value,
) -> Value {
    let mut systems = Map::new();
    for (system, m) in matrices {
        let distance: Vec<Vec<Value>> = m.cells.iter().map(|row| row.iter().map(|&c| g6_or_null(c)).collect()).collect();
        systems.insert(system.clone(), json!({ "languages": m.languages, "distance": distance, "n": m.counts }));
    }
    json!({
        "filter": filter.to_string(),
        "rows": "src_lang",
        "columns": "tgt_lang",
        "systems": systems,
        "parameters": parameters,
    })
}

/// Pretty JSON with a trailing newline.
pub fn json_to_string(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

pub fn write_json(value: &Value, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, json_to_string(value))?;
    Ok(())
}

/// Reads back the matrices written by [`pair_matrix_json`].
pub fn read_pair_matrices(path: impl AsRef<Path>) -> Result<Vec<(String, PairMatrix)>> {
    let path = path.as_ref();
    if !path.is_file() {
        return Err(Error::MissingFile(path.to_path_buf()));
    }
    let bad = |message: String| Error::SchemaMismatch { path: path.to_path_buf(), line: 0, message };
    let doc: Value = serde_json::from_str(&fs::read_to_string(path)?)?;
    let systems = doc.get("systems").and_then(Value::as_object).ok_or_else(|| bad("missing systems object".into()))?;
    let mut out = Vec::new();
    for (system, entry) in systems {
        let languages: Vec<LanguageCode> = serde_json::from_value(entry.get("languages").cloned().unwrap_or(Value::Null))
            .map_err(|e| bad(format!("{system}.languages: {e}")))?;
        let cells: Vec<Vec<Option<f64>>> = serde_json::from_value(entry.get("distance").cloned().unwrap_or(Value::Null))
            .map_err(|e| bad(format!("{system}.distance: {e}")))?;
        let counts: Vec<Vec<usize>> = serde_json::from_value(entry.get("n").cloned().unwrap_or(Value::Null))
            .map_err(|e| bad(format!("{system}.n: {e}")))?;
        let n = languages.len();
        if cells.len() != n || cells.iter().any(|r| r.len() != n) || counts.len() != n || counts.iter().any(|r| r.len() != n) {
            return Err(bad(format!("{system}: matrix is not {n}x{n}")));
        }
        out.push((system.clone(), PairMatrix { languages, cells, counts }));
    }
    Ok(out)
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// One labelled point of a vowel-space plot.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotPoint {
    pub label: String,
    pub series: String,
    pub point: NormalizedPoint,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VowelSpacePlot {
    pub title: String,
    pub points: Vec<PlotPoint>,
}

/// Square data window shared by both axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisRange {
    pub lo: f64,
    pub hi: f64,
}

const PLOT_LEFT: f64 = 70.0;
const PLOT_TOP: f64 = 50.0;
const PLOT_SIZE: f64 = 440.0;
const LEGEND_WIDTH: f64 = 160.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

impl VowelSpacePlot {
    pub fn axis_range(&self) -> AxisRange {
        let values = self.points.iter().flat_map(|p| [p.point.z1, p.point.z2]);
        let (min, max) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
        AxisRange { lo: (min - 0.5).floor().min(-2.0), hi: (max + 0.5).ceil().max(2.0) }
    }

    /// Pixel position of a point: z2 grows leftward, z1 grows downward.
    pub fn to_pixels(&self, p: &NormalizedPoint) -> (f64, f64) {
        let AxisRange { lo, hi } = self.axis_range();
        let span = hi - lo;
        (PLOT_LEFT + (hi - p.z2) / span * PLOT_SIZE, PLOT_TOP + (p.z1 - lo) / span * PLOT_SIZE)
    }

    fn series(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for p in &self.points {
            if !out.contains(&p.series.as_str()) {
                out.push(&p.series);
            }
        }
        out
    }
}

fn marker(shape: usize, x: f64, y: f64, color: &str) -> String {
    let r = 5.0;
    match shape % 5 {
        0 => format!(r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r}" fill="{color}"/>"#),
        1 => format!(r#"<rect x="{:.2}" y="{:.2}" width="{}" height="{}" fill="{color}"/>"#, x - r, y - r, 2.0 * r, 2.0 * r),
        2 => format!(
            r#"<polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="{color}"/>"#,
            x,
            y - r,
            x + r,
            y + r,
            x - r,
            y + r
        ),
        3 => format!(
            r#"<polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="{color}"/>"#,
            x,
            y - r,
            x + r,
            y,
            x,
            y + r,
            x - r,
            y
        ),
        _ => format!(
            r#"<path d="M{:.2},{:.2}L{:.2},{:.2}M{:.2},{:.2}L{:.2},{:.2}" stroke="{color}" stroke-width="2"/>"#,
            x - r,
            y - r,
            x + r,
            y + r,
            x - r,
            y + r,
            x + r,
            y - r
        ),
    }
}

pub fn render_vowel_space(plot: &VowelSpacePlot) -> Result<String> {
    if plot.points.is_empty() {
        return Err(Error::EmptyPlot);
    }
    let AxisRange { lo, hi } = plot.axis_range();
    let series = plot.series();
    let width = PLOT_LEFT + PLOT_SIZE + 30.0 + LEGEND_WIDTH;
    let height = PLOT_TOP + PLOT_SIZE + 60.0;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif">"#
    );
    let _ = writeln!(s, r#"<rect width="{width}" height="{height}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="30" text-anchor="middle" font-size="16">{}</text>"#, PLOT_LEFT + PLOT_SIZE / 2.0, escape(&plot.title));
    let _ = writeln!(s, r##"<rect x="{PLOT_LEFT}" y="{PLOT_TOP}" width="{PLOT_SIZE}" height="{PLOT_SIZE}" fill="none" stroke="#333"/>"##);

    let mut tick = lo.ceil();
    while tick <= hi {
        let x = PLOT_LEFT + (hi - tick) / (hi - lo) * PLOT_SIZE;
        let y = PLOT_TOP + (tick - lo) / (hi - lo) * PLOT_SIZE;
        let bottom = PLOT_TOP + PLOT_SIZE;
        let _ = writeln!(s, r##"<line x1="{x:.2}" y1="{PLOT_TOP}" x2="{x:.2}" y2="{bottom}" stroke="#ddd"/>"##);
        let _ = writeln!(s, r##"<line x1="{PLOT_LEFT}" y1="{y:.2}" x2="{}" y2="{y:.2}" stroke="#ddd"/>"##, PLOT_LEFT + PLOT_SIZE);
        let _ = writeln!(s, r#"<text x="{x:.2}" y="{}" text-anchor="middle" font-size="11">{tick}</text>"#, bottom + 15.0);
        let _ = writeln!(s, r#"<text x="{}" y="{:.2}" text-anchor="end" font-size="11">{tick}</text>"#, PLOT_LEFT - 6.0, y + 4.0);
        tick += 1.0;
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle" font-size="13">normalized F2 (z2)</text>"#,
        PLOT_LEFT + PLOT_SIZE / 2.0,
        PLOT_TOP + PLOT_SIZE + 40.0
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{0}" text-anchor="middle" font-size="13" transform="rotate(-90 20 {0})">normalized F1 (z1)</text>"#,
        PLOT_TOP + PLOT_SIZE / 2.0
    );

    for p in &plot.points {
        let k = series.iter().position(|&n| n == p.series).unwrap_or(0);
        let (x, y) = plot.to_pixels(&p.point);
        let color = PALETTE[k % PALETTE.len()];
        let _ = writeln!(s, "{}", marker(k, x, y, color));
        let _ = writeln!(s, r#"<text class="label" x="{:.2}" y="{:.2}" font-size="14" fill="{color}">{}</text>"#, x + 7.0, y - 7.0, escape(&p.label));
    }

    let lx = PLOT_LEFT + PLOT_SIZE + 30.0;
    for (k, name) in series.iter().enumerate() {
        let y = PLOT_TOP + 10.0 + 20.0 * k as f64;
        let color = PALETTE[k % PALETTE.len()];
        let _ = writeln!(s, "{}", marker(k, lx + 6.0, y, color));
        let _ = writeln!(s, r#"<text class="legend" x="{}" y="{:.2}" font-size="12">{}</text>"#, lx + 18.0, y + 4.0, escape(name));
    }
    s.push_str("</svg>\n");
    Ok(s)
}

const LIGHT: [u8; 3] = [0xde, 0xeb, 0xf7];
const DARK: [u8; 3] = [0x08, 0x30, 0x6b];

/// Fill colour for `t` in `[0, 1]`, light to dark. Channels keep three
/// decimals so that distinct values never collapse onto one 8-bit colour.
pub fn heat_color(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let c: Vec<f64> = LIGHT.iter().zip(DARK).map(|(&a, b)| a as f64 + (b as f64 - a as f64) * t).collect();
    format!("rgb({:.3},{:.3},{:.3})", c[0], c[1], c[2])
}

/// Relative luminance of a `#rrggbb` or `rgb(r,g,b)` colour (channels 0-255).
pub fn luminance(color: &str) -> Option<f64> {
    let channels: Vec<f64> = if let Some(hex) = color.strip_prefix('#') {
        if hex.len() != 6 {
            return None;
        }
        (0..3).map(|i| u8::from_str_radix(hex.get(2 * i..2 * i + 2)?, 16).ok().map(f64::from)).collect::<Option<_>>()?
    } else {
        let inner = color.strip_prefix("rgb(")?.strip_suffix(')')?;
        inner.split(',').map(|c| c.trim().parse().ok()).collect::<Option<_>>()?
    };
    if channels.len() != 3 {
        return None;
    }
    let lin = |c: f64| {
        let c = c / 255.0;
        if c <= 0.04045 {
            c / 12.92
        } else {
            ((c + 0.055) / 1.055).powf(2.4)
        }
    };
    Some(0.2126 * lin(channels[0]) + 0.7152 * lin(channels[1]) + 0.0722 * lin(channels[2]))
}

const CELL: f64 = 64.0;

pub fn render_heatmap(matrix: &PairMatrix, title: &str) -> Result<String> {
    let values: Vec<f64> = matrix.cells.iter().flatten().flatten().copied().collect();
    if values.is_empty() {
        return Err(Error::EmptyPlot);
    }
    let (min, max) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    let n = matrix.languages.len() as f64;
    let (left, top) = (80.0, 70.0);
    let width = left + n * CELL + 30.0;
    let height = top + n * CELL + 50.0;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif">"#
    );
    s.push_str(concat!(
        r#"<defs><pattern id="hatch" width="8" height="8" patternUnits="userSpaceOnUse" patternTransform="rotate(45)">"#,
        r##"<rect width="8" height="8" fill="#f4f4f4"/><line x1="0" y1="0" x2="0" y2="8" stroke="#999" stroke-width="2"/></pattern></defs>"##,
        "\n"
    ));
    let _ = writeln!(s, r#"<rect width="{width}" height="{height}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="24" text-anchor="middle" font-size="15">{}</text>"#, width / 2.0, escape(title));
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle" font-size="12">target language</text>"#, left + n * CELL / 2.0, top - 30.0);
    let _ = writeln!(
        s,
        r#"<text x="18" y="{0}" text-anchor="middle" font-size="12" transform="rotate(-90 18 {0})">source language</text>"#,
        top + n * CELL / 2.0
    );
    for (k, lang) in matrix.languages.iter().enumerate() {
        let c = left + (k as f64 + 0.5) * CELL;
        let _ = writeln!(s, r#"<text x="{c}" y="{}" text-anchor="middle" font-size="12">{lang}</text>"#, top - 8.0);
        let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end" font-size="12">{lang}</text>"#, left - 8.0, top + (k as f64 + 0.5) * CELL + 4.0);
    }
    for (i, row) in matrix.cells.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            let (x, y) = (left + j as f64 * CELL, top + i as f64 * CELL);
            match cell {
                Some(v) => {
                    let t = if max > min { (v - min) / (max - min) } else { 1.0 };
                    let fill = heat_color(t);
                    let ink = if t > 0.5 { "white" } else { "black" };
                    let _ = writeln!(
                        s,
                        r##"<rect class="cell" x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{fill}" stroke="#fff"/>"##
                    );
                    let _ = writeln!(
                        s,
                        r#"<text class="value" x="{}" y="{}" text-anchor="middle" font-size="13" fill="{ink}">{v:.2}</text>"#,
                        x + CELL / 2.0,
                        y + CELL / 2.0 + 5.0
                    );
                }
                None => {
                    let _ = writeln!(
                        s,
                        r##"<rect class="absent" x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="url(#hatch)" stroke="#fff"/>"##
                    );
                }
            }
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn write_svg(svg: &str, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, svg)?;
    Ok(())
}
