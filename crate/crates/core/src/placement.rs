//! Penalty-minimizing placement of file-class subsets on edge devices.
//!
//! Every device picks one of the eight class subsets that fits its capacity.
//! The objective combines three penalty tables:
//!
//! - staying time: a coefficient per whole hour of dwell at the device's
//!   location, `25 - hours` by default, so longer stays are cheaper to serve;
//! - file value: a coefficient per class (image 1, text 2, video 3);
//! - combination: a coefficient per cached subset, `2 x rank` when subsets are
//!   ranked by descending total size, 16 for caching nothing.
//!
//! The default scoring charges staying and value coefficients for every class
//! a device leaves out, plus the combination coefficient of what it keeps.
//! With eight candidates the search is exhaustive.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::records::{subset_size, FileClass, FileSet, RecordSet, VideoMode};
use crate::scenario::EdgeScenario;

/// Slack on the capacity constraint for sums such as 3 + 87 + 16.66.
pub const CAPACITY_EPS: f64 = 1e-9;

/// A place the patient spends part of the day.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "LocationRepr")]
pub struct LocationProfile {
    pub name: String,
    pub dwell_hours: u32,
    /// Share of the day spent here; `dwell_hours / 24` unless overridden.
    pub probability: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LocationRepr {
    name: String,
    dwell_hours: u32,
    probability: Option<f64>,
}

impl From<LocationRepr> for LocationProfile {
    fn from(r: LocationRepr) -> Self {
        let probability = r
            .probability
            .unwrap_or_else(|| f64::from(r.dwell_hours) / 24.0);
        LocationProfile {
            name: r.name,
            dwell_hours: r.dwell_hours,
            probability,
        }
    }
}

impl LocationProfile {
    pub fn new(name: impl Into<String>, dwell_hours: u32) -> Self {
        LocationProfile {
            name: name.into(),
            dwell_hours,
            probability: f64::from(dwell_hours) / 24.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDevice {
    pub id: String,
    pub capacity_gb: f64,
    /// Name of the [`LocationProfile`] this device serves.
    pub location: String,
}

impl EdgeDevice {
    pub fn new(id: impl Into<String>, capacity_gb: f64, location: impl Into<String>) -> Self {
        EdgeDevice {
            id: id.into(),
            capacity_gb,
            location: location.into(),
        }
    }
}

/// `25 - hours` for whole hours in `1..=24`.
pub fn staying_penalty(hours: u32) -> Result<f64> {
    if !(1..=24).contains(&hours) {
        return Err(Error::InvalidHours(hours));
    }
    Ok(f64::from(25 - hours))
}

/// Default per-class value coefficients: image 1, text 2, video 3.
pub fn value_penalty(class: FileClass) -> f64 {
    match class {
        FileClass::Image => 1.0,
        FileClass::Text => 2.0,
        FileClass::Video => 3.0,
    }
}

/// Orders subsets for the combination table: larger total size first, then
/// fewer classes, then canonical class order.
fn combo_order(a: FileSet, b: FileSet, records: &RecordSet, mode: VideoMode) -> Ordering {
    let sa = subset_size(a, records, mode);
    let sb = subset_size(b, records, mode);
    sb.total_cmp(&sa)
        .then(a.len().cmp(&b.len()))
        .then_with(|| a.classes().cmp(b.classes()))
}

/// Non-empty subsets in combination-table order.
pub fn combo_ranking(records: &RecordSet, mode: VideoMode) -> Vec<FileSet> {
    let mut subsets: Vec<FileSet> = FileSet::all().filter(|s| !s.is_empty()).collect();
    subsets.sort_by(|&a, &b| combo_order(a, b, records, mode));
    subsets
}

/// Rank-based combination coefficient: `2 x rank` (1-based) among the seven
/// non-empty subsets ordered by descending size; 16 for the empty subset.
pub fn combo_penalty(subset: FileSet, records: &RecordSet, mode: VideoMode) -> f64 {
    if subset.is_empty() {
        return 16.0;
    }
    let rank = combo_ranking(records, mode)
        .iter()
        .position(|&s| s == subset)
        .expect("non-empty subset is ranked")
        + 1;
    2.0 * rank as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ValuePenalties {
    pub text: f64,
    pub image: f64,
    pub video: f64,
}

impl Default for ValuePenalties {
    fn default() -> Self {
        ValuePenalties {
            text: value_penalty(FileClass::Text),
            image: value_penalty(FileClass::Image),
            video: value_penalty(FileClass::Video),
        }
    }
}

impl ValuePenalties {
    pub fn get(&self, class: FileClass) -> f64 {
        match class {
            FileClass::Text => self.text,
            FileClass::Image => self.image,
            FileClass::Video => self.video,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PenaltyTables {
    /// Staying-time coefficients for 1..=24 hours (index `hours - 1`).
    pub staying: Vec<f64>,
    pub value: ValuePenalties,
    /// Explicit combination coefficients; subsets missing here use the rank rule.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub combo: BTreeMap<FileSet, f64>,
}

impl Default for PenaltyTables {
    fn default() -> Self {
        PenaltyTables {
            staying: (1..=24).map(|h| f64::from(25 - h)).collect(),
            value: ValuePenalties::default(),
            combo: BTreeMap::new(),
        }
    }
}

impl PenaltyTables {
    pub fn staying_for(&self, hours: u32) -> Result<f64> {
        if !(1..=24).contains(&hours) {
            return Err(Error::InvalidHours(hours));
        }
        self.staying
            .get(hours as usize - 1)
            .copied()
            .ok_or(Error::InvalidHours(hours))
    }

    pub fn value_for(&self, class: FileClass) -> f64 {
        self.value.get(class)
    }

    pub fn combo_for(&self, subset: FileSet, records: &RecordSet, mode: VideoMode) -> f64 {
        self.combo
            .get(&subset)
            .copied()
            .unwrap_or_else(|| combo_penalty(subset, records, mode))
    }

    pub(crate) fn problems(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        if self.staying.len() != 24 {
            out.push((
                "tables.staying".to_string(),
                format!("must list 24 coefficients (1..=24 hours), got {}", self.staying.len()),
            ));
        }
        if self.staying.iter().any(|v| !v.is_finite()) {
            out.push(("tables.staying".to_string(), "coefficients must be finite".to_string()));
        }
        for class in FileClass::ALL {
            if !self.value.get(class).is_finite() {
                out.push((format!("tables.value.{class}"), "must be finite".to_string()));
            }
        }
        for (subset, v) in &self.combo {
            if !v.is_finite() {
                out.push((format!("tables.combo.{subset}"), "must be finite".to_string()));
            }
        }
        out
    }
}

/// Relative weights of the staying, value and combination terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveWeights {
    pub staying: f64,
    pub value: f64,
    pub combo: f64,
}

impl ObjectiveWeights {
    pub fn problem(&self) -> Option<String> {
        [self.staying, self.value, self.combo]
            .iter()
            .any(|w| !(w.is_finite() && *w >= 0.0))
            .then(|| {
                format!(
                    "weights must be finite and >= 0, got {},{},{}",
                    self.staying, self.value, self.combo
                )
            })
    }
}

impl Default for ObjectiveWeights {
    fn default() -> Self {
        ObjectiveWeights {
            staying: 1.0,
            value: 1.0,
            combo: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlacementMode {
    /// Charge staying + value for each omitted class, plus the combination term.
    OmissionPenalty,
    /// Smallest combination coefficient among the subsets that fit.
    MinComboFeasible,
    /// The published allocation, only for the built-in scenario.
    PaperFixture,
    CustomWeights(ObjectiveWeights),
}

impl PlacementMode {
    pub fn label(&self) -> &'static str {
        match self {
            PlacementMode::OmissionPenalty => "omission",
            PlacementMode::MinComboFeasible => "min-combo",
            PlacementMode::PaperFixture => "paper",
            PlacementMode::CustomWeights(_) => "custom",
        }
    }

    fn weights(&self) -> Option<ObjectiveWeights> {
        match *self {
            PlacementMode::OmissionPenalty => Some(ObjectiveWeights::default()),
            PlacementMode::MinComboFeasible => Some(ObjectiveWeights {
                staying: 0.0,
                value: 0.0,
                combo: 1.0,
            }),
            PlacementMode::CustomWeights(w) => Some(w),
            PlacementMode::PaperFixture => None,
        }
    }
}

impl fmt::Display for PlacementMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for PlacementMode {
    type Err = String;

    /// Parses a mode name; `custom` gets unit weights.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "omission" => Ok(PlacementMode::OmissionPenalty),
            "min-combo" => Ok(PlacementMode::MinComboFeasible),
            "paper" => Ok(PlacementMode::PaperFixture),
            "custom" => Ok(PlacementMode::CustomWeights(ObjectiveWeights::default())),
            other => Err(format!(
                "unknown placement mode `{other}` (expected omission, min-combo, paper or custom)"
            )),
        }
    }
}

/// Subsets of the device that fit in its capacity, empty set included.
pub fn enumerate_feasible(device: &EdgeDevice, records: &RecordSet, mode: VideoMode) -> Vec<FileSet> {
    FileSet::all()
        .filter(|&s| subset_size(s, records, mode) <= device.capacity_gb + CAPACITY_EPS)
        .collect()
}

/// Weighted objective for caching `subset` at a location with staying
/// coefficient `alpha`. Staying and value terms count omitted classes.
pub fn objective(
    subset: FileSet,
    alpha: f64,
    tables: &PenaltyTables,
    records: &RecordSet,
    video: VideoMode,
    weights: ObjectiveWeights,
) -> f64 {
    let omitted = subset.complement();
    let staying = alpha * omitted.len() as f64;
    let value: f64 = omitted.classes().map(|c| tables.value_for(c)).sum();
    let combo = tables.combo_for(subset, records, video);
    weights.staying * staying + weights.value * value + weights.combo * combo
}

/// Published allocation for the built-in scenario.
pub const PAPER_FIXTURE: [(&str, FileSet); 5] = [
    ("EA", FileSet::from_bits_truncate(0b011)),
    ("EB", FileSet::FULL),
    ("EC", FileSet::FULL),
    ("ED", FileSet::from_bits_truncate(0b001)),
    ("EE", FileSet::from_bits_truncate(0b001)),
];

fn fixture_row(
    device: &EdgeDevice,
    location: &LocationProfile,
    records: &RecordSet,
    video: VideoMode,
) -> Result<FileSet> {
    if *records != RecordSet::default() || video != VideoMode::Dvs {
        return Err(Error::FixtureNotApplicable(
            "record sizes or video mode differ from the built-in scenario".into(),
        ));
    }
    let paper = EdgeScenario::paper();
    let matches = paper.devices.iter().any(|d| {
        d == device
            && paper
                .location(&d.location)
                .is_some_and(|l| l.name == location.name && l.dwell_hours == location.dwell_hours)
    });
    if !matches {
        return Err(Error::FixtureNotApplicable(format!(
            "device `{}` is not part of the built-in scenario",
            device.id
        )));
    }
    Ok(PAPER_FIXTURE
        .iter()
        .find(|(id, _)| *id == device.id)
        .map(|&(_, s)| s)
        .expect("every built-in device has a fixture row"))
}

/// Picks the subset for one device by exhaustive search.
///
/// Ties on the objective go to the smaller combination coefficient, then to
/// the lower subset bit pattern.
pub fn optimize_device(
    device: &EdgeDevice,
    location: &LocationProfile,
    records: &RecordSet,
    tables: &PenaltyTables,
    video: VideoMode,
    mode: PlacementMode,
) -> Result<FileSet> {
    let Some(weights) = mode.weights() else {
        return fixture_row(device, location, records, video);
    };
    if let Some(problem) = weights.problem() {
        return Err(Error::invalid("weights", problem));
    }
    let alpha = tables.staying_for(location.dwell_hours)?;
    let best = enumerate_feasible(device, records, video)
        .into_iter()
        .map(|s| {
            let score = objective(s, alpha, tables, records, video, weights);
            (score, tables.combo_for(s, records, video), s)
        })
        .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)).then(a.2.cmp(&b.2)))
        .map(|(_, _, s)| s)
        .unwrap_or(FileSet::EMPTY);
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanEntry {
    pub device: String,
    pub location: String,
    pub capacity_gb: f64,
    pub subset: FileSet,
    pub cached_gb: f64,
    /// Part of the full record held only by the registered hospital.
    pub residual_gb: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AllocationPlan {
    pub mode: String,
    pub video_mode: VideoMode,
    pub full_emr_gb: f64,
    pub entries: Vec<PlanEntry>,
}

impl AllocationPlan {
    /// Builds a plan from explicit subsets, in device order.
    pub fn from_subsets(
        mode: impl Into<String>,
        devices: &[EdgeDevice],
        subsets: &[FileSet],
        records: &RecordSet,
        video: VideoMode,
    ) -> AllocationPlan {
        let full = subset_size(FileSet::FULL, records, video);
        let entries = devices
            .iter()
            .zip(subsets)
            .map(|(d, &subset)| {
                let cached = subset_size(subset, records, video);
                PlanEntry {
                    device: d.id.clone(),
                    location: d.location.clone(),
                    capacity_gb: d.capacity_gb,
                    subset,
                    cached_gb: cached,
                    residual_gb: subset_size(subset.complement(), records, video),
                }
            })
            .collect();
        AllocationPlan {
            mode: mode.into(),
            video_mode: video,
            full_emr_gb: full,
            entries,
        }
    }

    pub fn entry_for_location(&self, location: &str) -> Option<&PlanEntry> {
        self.entries.iter().find(|e| e.location == location)
    }

    pub fn entry(&self, device: &str) -> Option<&PlanEntry> {
        self.entries.iter().find(|e| e.device == device)
    }
}

/// A device where two plans cache different subsets.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlanDivergence {
    pub device: String,
    pub reference: FileSet,
    pub reference_gb: f64,
    pub actual: FileSet,
    pub actual_gb: f64,
}

impl fmt::Display for PlanDivergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} ({:.2} GB) instead of published {} ({:.2} GB)",
            self.device, self.actual, self.actual_gb, self.reference, self.reference_gb
        )
    }
}

pub fn divergences(reference: &AllocationPlan, actual: &AllocationPlan) -> Vec<PlanDivergence> {
    actual
        .entries
        .iter()
        .filter_map(|a| {
            let r = reference.entry(&a.device)?;
            (r.subset != a.subset).then(|| PlanDivergence {
                device: a.device.clone(),
                reference: r.subset,
                reference_gb: r.cached_gb,
                actual: a.subset,
                actual_gb: a.cached_gb,
            })
        })
        .collect()
}

/// Returns why the published allocation does not apply, if it does not.
pub fn fixture_mismatch(scenario: &EdgeScenario) -> Option<String> {
    let paper = EdgeScenario::paper();
    if scenario.records != paper.records || scenario.video_mode != paper.video_mode {
        return Some("record sizes or video mode differ from the built-in scenario".into());
    }
    if scenario.devices != paper.devices {
        return Some("edge devices differ from the built-in scenario".into());
    }
    let same_locations = scenario.locations.len() == paper.locations.len()
        && scenario
            .locations
            .iter()
            .zip(&paper.locations)
            .all(|(a, b)| a.name == b.name && a.dwell_hours == b.dwell_hours);
    if !same_locations {
        return Some("locations differ from the built-in scenario".into());
    }
    None
}

/// Optimizes every device of `scenario` with its own video mode.
pub fn plan_scenario(scenario: &EdgeScenario, mode: PlacementMode) -> Result<AllocationPlan> {
    plan_with_video(scenario, mode, scenario.video_mode)
}

/// As [`plan_scenario`] but with an explicit video mode.
pub fn plan_with_video(
    scenario: &EdgeScenario,
    mode: PlacementMode,
    video: VideoMode,
) -> Result<AllocationPlan> {
    if mode == PlacementMode::PaperFixture {
        if let Some(reason) = fixture_mismatch(scenario) {
            return Err(Error::FixtureNotApplicable(reason));
        }
        if video != VideoMode::Dvs {
            return Err(Error::FixtureNotApplicable(
                "the published allocation assumes DVS video".into(),
            ));
        }
    }
    let subsets = scenario
        .devices
        .iter()
        .map(|d| {
            let loc = scenario
                .location(&d.location)
                .ok_or_else(|| Error::MissingDevice(d.location.clone()))?;
            optimize_device(d, loc, &scenario.records, &scenario.tables, video, mode)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AllocationPlan::from_subsets(
        mode.label(),
        &scenario.devices,
        &subsets,
        &scenario.records,
        video,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use FileClass::*;

    fn paper() -> EdgeScenario {
        EdgeScenario::paper()
    }

    fn device(s: &EdgeScenario, id: &str) -> (EdgeDevice, LocationProfile) {
        let d = s.devices.iter().find(|d| d.id == id).unwrap().clone();
        let l = s.location(&d.location).unwrap().clone();
        (d, l)
    }

    #[test]
    fn staying_examples() {
        assert_eq!(staying_penalty(1).unwrap(), 24.0);
        assert_eq!(staying_penalty(24).unwrap(), 1.0);
        assert_eq!(staying_penalty(10).unwrap(), 15.0);
        assert!(matches!(staying_penalty(0), Err(Error::InvalidHours(0))));
        assert!(staying_penalty(25).is_err());
    }

    #[test]
    fn value_examples() {
        assert_eq!(value_penalty(Image), 1.0);
        assert_eq!(value_penalty(Text), 2.0);
        assert_eq!(value_penalty(Video), 3.0);
    }

    #[test]
    fn combo_examples() {
        let r = RecordSet::default();
        assert_eq!(combo_penalty(FileSet::FULL, &r, VideoMode::Dvs), 2.0);
        assert_eq!(combo_penalty(FileSet::of(&[Text]), &r, VideoMode::Dvs), 14.0);
        assert_eq!(combo_penalty(FileSet::EMPTY, &r, VideoMode::Dvs), 16.0);
    }

    #[test]
    fn combo_ties_prefer_fewer_classes() {
        // text 0 GB ties {image} with {text, image}
        let r = RecordSet {
            text_gb: 0.0,
            ..RecordSet::default()
        };
        let image = FileSet::of(&[Image]);
        let text_image = FileSet::of(&[Text, Image]);
        assert!(
            combo_penalty(image, &r, VideoMode::Dvs) < combo_penalty(text_image, &r, VideoMode::Dvs)
        );
        let mut coeffs: Vec<f64> = FileSet::all()
            .map(|s| combo_penalty(s, &r, VideoMode::Dvs))
            .collect();
        coeffs.sort_by(f64::total_cmp);
        assert_eq!(coeffs, vec![2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0]);
    }

    #[test]
    fn combo_override_takes_precedence() {
        let mut t = PenaltyTables::default();
        t.combo.insert(FileSet::FULL, 99.0);
        let r = RecordSet::default();
        assert_eq!(t.combo_for(FileSet::FULL, &r, VideoMode::Dvs), 99.0);
        assert_eq!(t.combo_for(FileSet::of(&[Text]), &r, VideoMode::Dvs), 14.0);
    }

    #[test]
    fn feasible_examples() {
        let r = RecordSet::default();
        let small = EdgeDevice::new("x", 10.0, "other");
        assert_eq!(
            enumerate_feasible(&small, &r, VideoMode::Dvs),
            vec![FileSet::EMPTY, FileSet::of(&[Text])]
        );
        let zero = EdgeDevice::new("x", 0.0, "other");
        assert_eq!(enumerate_feasible(&zero, &r, VideoMode::Dvs), vec![FileSet::EMPTY]);
        let big = EdgeDevice::new("x", 500.0, "other");
        assert_eq!(enumerate_feasible(&big, &r, VideoMode::Dvs).len(), 8);
    }

    #[test]
    fn optimize_examples() {
        let s = paper();
        let opt = |id: &str, mode| {
            let (d, l) = device(&s, id);
            optimize_device(&d, &l, &s.records, &s.tables, VideoMode::Dvs, mode).unwrap()
        };
        assert_eq!(opt("EE", PlacementMode::OmissionPenalty), FileSet::of(&[Text]));
        assert_eq!(opt("EB", PlacementMode::OmissionPenalty), FileSet::FULL);
        assert_eq!(opt("ED", PlacementMode::OmissionPenalty), FileSet::of(&[Text, Video]));
        assert_eq!(opt("ED", PlacementMode::PaperFixture), FileSet::of(&[Text]));
    }

    #[test]
    fn omission_scores_for_friend_home() {
        let s = paper();
        let r = &s.records;
        let t = &s.tables;
        let w = ObjectiveWeights::default();
        let alpha = t.staying_for(2).unwrap();
        assert_eq!(objective(FileSet::of(&[Text, Video]), alpha, t, r, VideoMode::Dvs, w), 34.0);
        assert_eq!(objective(FileSet::of(&[Text]), alpha, t, r, VideoMode::Dvs, w), 64.0);
    }

    #[test]
    fn fixture_plan_matches_published_rows() {
        let plan = plan_scenario(&paper(), PlacementMode::PaperFixture).unwrap();
        let cached: Vec<f64> = plan.entries.iter().map(|e| e.cached_gb).collect();
        let residual: Vec<f64> = plan.entries.iter().map(|e| e.residual_gb).collect();
        for (got, want) in cached.iter().zip([90.0, 106.66, 106.66, 3.0, 3.0]) {
            assert!((got - want).abs() < 1e-9);
        }
        for (got, want) in residual.iter().zip([16.66, 0.0, 0.0, 103.66, 103.66]) {
            assert!((got - want).abs() < 1e-9);
        }
    }

    #[test]
    fn min_combo_plan_diverges_only_at_friend_home() {
        let s = paper();
        let fixture = plan_scenario(&s, PlacementMode::PaperFixture).unwrap();
        for mode in [PlacementMode::MinComboFeasible, PlacementMode::OmissionPenalty] {
            let plan = plan_scenario(&s, mode).unwrap();
            let d = divergences(&fixture, &plan);
            assert_eq!(d.len(), 1);
            assert_eq!(d[0].device, "ED");
            assert_eq!(d[0].actual, FileSet::of(&[Text, Video]));
            assert!((d[0].actual_gb - 19.66).abs() < 1e-9);
        }
    }

    #[test]
    fn zero_capacity_caches_nothing() {
        let mut s = paper();
        for d in &mut s.devices {
            d.capacity_gb = 0.0;
        }
        for mode in [PlacementMode::OmissionPenalty, PlacementMode::MinComboFeasible] {
            let plan = plan_scenario(&s, mode).unwrap();
            assert!(plan.entries.iter().all(|e| e.subset.is_empty()));
        }
    }

    #[test]
    fn fixture_rejected_off_scenario() {
        let mut s = paper();
        s.devices[0].capacity_gb = 120.0;
        assert!(matches!(
            plan_scenario(&s, PlacementMode::PaperFixture),
            Err(Error::FixtureNotApplicable(_))
        ));
        let s = EdgeScenario {
            records: RecordSet::default().scaled(2.0),
            ..paper()
        };
        assert!(plan_scenario(&s, PlacementMode::PaperFixture).is_err());
    }

    #[test]
    fn mode_names() {
        for name in ["omission", "min-combo", "paper", "custom"] {
            assert_eq!(name.parse::<PlacementMode>().unwrap().label(), name);
        }
        assert!("greedy".parse::<PlacementMode>().is_err());
    }
}
