//! Vowel accuracy (distance to the native anchor) and compactness, with
//! shared/non-shared summaries and source x target language matrices.

use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, MissingAnchor, Result};
use crate::inventory::{Inventory, LanguageCode};
use crate::normalize::NormalizedPoint;
use crate::stats::{median, population_variance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Anchor,
    Test,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Anchor => "anchor",
            Role::Test => "test",
        })
    }
}

impl FromStr for Role {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "anchor" => Ok(Role::Anchor),
            "test" => Ok(Role::Test),
            other => Err(Error::InvalidParameter(format!("role must be anchor or test, got {other:?}"))),
        }
    }
}

/// All normalized realizations of one vowel by one speaker of one system.
#[derive(Debug, Clone, PartialEq)]
pub struct VowelObservationSet {
    pub system_id: String,
    pub speaker_id: String,
    pub source_language: LanguageCode,
    pub target_language: LanguageCode,
    pub vowel: String,
    pub points: Vec<NormalizedPoint>,
    pub role: Role,
}

impl VowelObservationSet {
    pub fn validate(&self) -> Result<()> {
        if self.points.is_empty() {
            return Err(Error::InsufficientData(format!(
                "{}/{} /{}/ has no points",
                self.system_id, self.speaker_id, self.vowel
            )));
        }
        if self.role == Role::Anchor && self.source_language != self.target_language {
            return Err(Error::InvalidParameter(format!(
                "anchor {}/{} speaks {} but targets {}",
                self.system_id, self.speaker_id, self.source_language, self.target_language
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricRow {
    pub system_id: String,
    pub source_language: LanguageCode,
    pub target_language: LanguageCode,
    pub vowel: String,
    pub shared: bool,
    pub distance: f64,
    pub compactness_sd: f64,
    pub n_points: usize,
}

/// Euclidean distance in the normalized vowel space.
pub fn vowel_distance(test: &NormalizedPoint, anchor: &NormalizedPoint) -> f64 {
    (test.z1 - anchor.z1).hypot(test.z2 - anchor.z2)
}

/// Radial spread `sqrt(var(z1) + var(z2))` with population variances.
pub fn vowel_compactness(points: &[NormalizedPoint]) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::InsufficientData(format!("compactness needs 2 points, got {}", points.len())));
    }
    let z1: Vec<f64> = points.iter().map(|p| p.z1).collect();
    let z2: Vec<f64> = points.iter().map(|p| p.z2).collect();
    Ok((population_variance(&z1).unwrap_or(0.0) + population_variance(&z2).unwrap_or(0.0)).sqrt())
}

/// Component-wise median of normalized points.
pub fn median_point(points: &[NormalizedPoint]) -> Result<NormalizedPoint> {
    let z1: Vec<f64> = points.iter().map(|p| p.z1).collect();
    let z2: Vec<f64> = points.iter().map(|p| p.z2).collect();
    match (median(&z1), median(&z2)) {
        (Some(z1), Some(z2)) => Ok(NormalizedPoint { z1, z2 }),
        _ => Err(Error::EmptyList),
    }
}

/// One row per test set, compared against the anchor for its target
/// language and vowel. Anchor points sharing a (language, vowel) key are
/// pooled before taking their median.
pub fn build_metric_rows(observations: &[VowelObservationSet], inventory: &Inventory) -> Result<Vec<MetricRow>> {
    let mut anchor_points: IndexMap<(LanguageCode, &str), Vec<NormalizedPoint>> = IndexMap::new();
    for obs in observations {
        obs.validate()?;
        if obs.role == Role::Anchor {
            anchor_points
                .entry((obs.target_language.clone(), obs.vowel.as_str()))
                .or_default()
                .extend_from_slice(&obs.points);
        }
    }

    let mut missing: Vec<MissingAnchor> = Vec::new();
    for obs in observations.iter().filter(|o| o.role == Role::Test) {
        if !anchor_points.contains_key(&(obs.target_language.clone(), obs.vowel.as_str())) {
            let entry = MissingAnchor {
                system: obs.system_id.clone(),
                target_language: obs.target_language.to_string(),
                vowel: obs.vowel.clone(),
            };
            if !missing.contains(&entry) {
                missing.push(entry);
            }
        }
    }
    if !missing.is_empty() {
        return Err(Error::MissingAnchor(missing));
    }

    let anchors: IndexMap<(LanguageCode, &str), NormalizedPoint> = anchor_points
        .into_iter()
        .map(|(k, pts)| median_point(&pts).map(|m| (k, m)))
        .collect::<Result<_>>()?;

    observations
        .iter()
        .filter(|o| o.role == Role::Test)
        .map(|obs| {
            let anchor = anchors[&(obs.target_language.clone(), obs.vowel.as_str())];
            let shared = inventory.is_shared(&obs.vowel, &obs.source_language, &obs.target_language)?;
            Ok(MetricRow {
                system_id: obs.system_id.clone(),
                source_language: obs.source_language.clone(),
                target_language: obs.target_language.clone(),
                vowel: obs.vowel.clone(),
                shared,
                distance: vowel_distance(&median_point(&obs.points)?, &anchor),
                compactness_sd: vowel_compactness(&obs.points)?,
                n_points: obs.points.len(),
            })
        })
        .collect()
}

/// How rows are weighted when averaged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Weighting {
    /// Every row (vowel category) counts once.
    #[default]
    Vowel,
    /// Rows weighted by their number of realizations.
    Token,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellMeans {
    pub distance: f64,
    pub compactness: f64,
    pub rows: usize,
}

/// Mean distance and compactness for the shared and non-shared vowels of one system.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemSummary {
    pub system_id: String,
    pub shared: Option<CellMeans>,
    pub non_shared: Option<CellMeans>,
}

fn cell_means<'a>(rows: impl Iterator<Item = &'a MetricRow>, weighting: Weighting) -> Option<CellMeans> {
    let (mut wsum, mut dsum, mut csum, mut count) = (0.0, 0.0, 0.0, 0usize);
    for r in rows {
        let w = match weighting {
            Weighting::Vowel => 1.0,
            Weighting::Token => r.n_points as f64,
        };
        wsum += w;
        dsum += w * r.distance;
        csum += w * r.compactness_sd;
        count += 1;
    }
    (count > 0 && wsum > 0.0).then(|| CellMeans { distance: dsum / wsum, compactness: csum / wsum, rows: count })
}

/// Per-system means over shared and non-shared rows; systems in order of first appearance.
pub fn shared_summary(rows: &[MetricRow], weighting: Weighting) -> Vec<SystemSummary> {
    let mut systems: Vec<&str> = Vec::new();
    for r in rows {
        if !systems.contains(&r.system_id.as_str()) {
            systems.push(&r.system_id);
        }
    }
    systems
        .into_iter()
        .map(|sys| SystemSummary {
            system_id: sys.to_string(),
            shared: cell_means(rows.iter().filter(|r| r.system_id == sys && r.shared), weighting),
            non_shared: cell_means(rows.iter().filter(|r| r.system_id == sys && !r.shared), weighting),
        })
        .collect()
}

/// Which rows enter the language-pair matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairFilter {
    #[default]
    All,
    Shared,
    NonShared,
}

impl PairFilter {
    fn admits(&self, row: &MetricRow) -> bool {
        match self {
            PairFilter::All => true,
            PairFilter::Shared => row.shared,
            PairFilter::NonShared => !row.shared,
        }
    }
}

impl FromStr for PairFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "all" => Ok(PairFilter::All),
            "shared" => Ok(PairFilter::Shared),
            "non-shared" => Ok(PairFilter::NonShared),
            other => Err(Error::InvalidParameter(format!("pair filter must be all, shared or non-shared, got {other:?}"))),
        }
    }
}

impl fmt::Display for PairFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairFilter::All => "all",
            PairFilter::Shared => "shared",
            PairFilter::NonShared => "non-shared",
        })
    }
}

/// Mean distance per (source, target) language pair. Rows index sources,
/// columns index targets; both axes list the same sorted languages.
#[derive(Debug, Clone, PartialEq)]
pub struct PairMatrix {
    pub languages: Vec<LanguageCode>,
    pub cells: Vec<Vec<Option<f64>>>,
    pub counts: Vec<Vec<usize>>,
}

impl PairMatrix {
    pub fn get(&self, source: &LanguageCode, target: &LanguageCode) -> Option<f64> {
        let i = self.languages.iter().position(|l| l == source)?;
        let j = self.languages.iter().position(|l| l == target)?;
        self.cells[i][j]
    }

    pub fn populated(&self) -> usize {
        self.cells.iter().flatten().filter(|c| c.is_some()).count()
    }
}

pub fn pair_matrix(rows: &[MetricRow], filter: PairFilter) -> PairMatrix {
    let mut languages: Vec<LanguageCode> = rows
        .iter()
        .flat_map(|r| [r.source_language.clone(), r.target_language.clone()])
        .collect();
    languages.sort();
    languages.dedup();
    let n = languages.len();
    let index = |l: &LanguageCode| languages.binary_search(l).unwrap_or_default();

    let mut sums = vec![vec![0.0; n]; n];
    let mut counts = vec![vec![0usize; n]; n];
    for r in rows.iter().filter(|r| filter.admits(r)) {
        let (i, j) = (index(&r.source_language), index(&r.target_language));
        sums[i][j] += r.distance;
        counts[i][j] += 1;
    }
    let cells = sums
        .iter()
        .zip(&counts)
        .map(|(srow, crow)| srow.iter().zip(crow).map(|(&s, &c)| (c > 0).then(|| s / c as f64)).collect())
        .collect();
    PairMatrix { languages, cells, counts }
}

/// One matrix per system, systems in order of first appearance.
pub fn pair_matrices_by_system(rows: &[MetricRow], filter: PairFilter) -> IndexMap<String, PairMatrix> {
    let mut grouped: IndexMap<String, Vec<MetricRow>> = IndexMap::new();
    for r in rows {
        grouped.entry(r.system_id.clone()).or_default().push(r.clone());
    }
    grouped.into_iter().map(|(sys, rs)| (sys, pair_matrix(&rs, filter))).collect()
}
