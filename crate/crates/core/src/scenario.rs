//! The scenario aggregate and its JSON file format.
//!
//! A scenario file is one JSON object with the optional top-level keys
//! `name`, `records`, `video_mode`, `locations`, `devices`, `rates`,
//! `tables`, `demand`, `policy` and `dvs`. Omitted keys, and omitted fields
//! inside `records`, `rates`, `tables`, `policy` and `dvs`, take the built-in
//! scenario's values. Unknown keys are rejected.
//!
//! The registered hospital is not a device: it is the implicit holder of the
//! full record, reached over the macro link.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::delay::{DemandProfile, LinkRates};
use crate::dvs::DvsSettings;
use crate::error::{Error, Result};
use crate::placement::{EdgeDevice, LocationProfile, PenaltyTables};
use crate::records::{FileClass, FileSet, RecordSet, VideoMode};
use crate::sharing::SharingPolicy;

/// The built-in scenario file.
pub const PAPER_JSON: &str = include_str!("../scenarios/paper.json");

const PROBABILITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EdgeScenario {
    pub name: String,
    pub records: RecordSet,
    pub video_mode: VideoMode,
    pub locations: Vec<LocationProfile>,
    pub devices: Vec<EdgeDevice>,
    pub rates: LinkRates,
    pub tables: PenaltyTables,
    pub demand: DemandProfile,
    pub policy: SharingPolicy,
    pub dvs: DvsSettings,
}

impl Default for EdgeScenario {
    fn default() -> Self {
        EdgeScenario::paper()
    }
}

impl EdgeScenario {
    /// Home 10 h, work 8 h, family 3 h, friend 2 h, other 1 h; devices of
    /// 100/500/150/50/10 GB; DVS record sizes.
    pub fn paper() -> Self {
        use FileClass::*;
        let locations = vec![
            LocationProfile::new("home", 10),
            LocationProfile::new("work", 8),
            LocationProfile::new("family", 3),
            LocationProfile::new("friend", 2),
            LocationProfile::new("other", 1),
        ];
        let devices = vec![
            EdgeDevice::new("EA", 100.0, "home"),
            EdgeDevice::new("EB", 500.0, "work"),
            EdgeDevice::new("EC", 150.0, "family"),
            EdgeDevice::new("ED", 50.0, "friend"),
            EdgeDevice::new("EE", 10.0, "other"),
        ];
        let demand = DemandProfile(BTreeMap::from([
            ("home".to_string(), FileSet::of(&[Text, Image])),
            ("work".to_string(), FileSet::FULL),
            ("family".to_string(), FileSet::FULL),
            ("friend".to_string(), FileSet::of(&[Text])),
            ("other".to_string(), FileSet::of(&[Text])),
        ]));
        EdgeScenario {
            name: "paper".to_string(),
            records: RecordSet::default(),
            video_mode: VideoMode::Dvs,
            locations,
            devices,
            rates: LinkRates::default(),
            tables: PenaltyTables::default(),
            demand,
            policy: SharingPolicy::default(),
            dvs: DvsSettings::default(),
        }
    }

    pub fn location(&self, name: &str) -> Option<&LocationProfile> {
        self.locations.iter().find(|l| l.name == name)
    }

    pub fn from_json(text: &str, origin: &Path) -> Result<Self> {
        let scenario: EdgeScenario = serde_json::from_str(text).map_err(|source| Error::Parse {
            path: origin.to_path_buf(),
            source,
        })?;
        let violations = validate(&scenario);
        if !violations.is_empty() {
            return Err(Error::Validation(violations));
        }
        Ok(scenario)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    /// SHA-256 of the compact JSON form, hex encoded.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("scenario serializes");
        Sha256::digest(&bytes)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

pub fn load_scenario(path: &Path) -> Result<EdgeScenario> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    EdgeScenario::from_json(&text, path)
}

pub fn save_scenario(scenario: &EdgeScenario, path: &Path) -> Result<()> {
    std::fs::write(path, scenario.to_json() + "\n").map_err(|e| Error::io(path, e))
}

/// `paper` selects the built-in scenario; anything else is a file path.
pub fn resolve_scenario(arg: &str) -> Result<EdgeScenario> {
    if arg == "paper" {
        EdgeScenario::from_json(PAPER_JSON, Path::new("<built-in paper.json>"))
    } else {
        load_scenario(Path::new(arg))
    }
}

/// A broken scenario invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub field: String,
    pub rule: String,
}

impl Violation {
    fn new(field: impl Into<String>, rule: impl Into<String>) -> Self {
        Violation {
            field: field.into(),
            rule: rule.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.rule)
    }
}

/// Every broken invariant of `scenario`; empty when it is usable.
pub fn validate(scenario: &EdgeScenario) -> Vec<Violation> {
    let mut out = Vec::new();

    for (field, rule) in scenario.records.problems() {
        out.push(Violation::new(format!("records.{field}"), rule));
    }

    let locs = &scenario.locations;
    if locs.is_empty() {
        out.push(Violation::new("locations", "at least one location is required"));
    }
    let mut names = BTreeSet::new();
    for l in locs {
        if !names.insert(l.name.as_str()) {
            out.push(Violation::new(
                format!("locations.{}", l.name),
                "location names must be unique",
            ));
        }
        if !(1..=24).contains(&l.dwell_hours) {
            out.push(Violation::new(
                format!("locations.{}.dwell_hours", l.name),
                format!("must be a whole number of hours in 1..=24, got {}", l.dwell_hours),
            ));
        }
        if !(l.probability.is_finite() && (0.0..=1.0).contains(&l.probability)) {
            out.push(Violation::new(
                format!("locations.{}.probability", l.name),
                format!("must be in [0, 1], got {}", l.probability),
            ));
        }
    }
    if !locs.is_empty() {
        let dwell: u32 = locs.iter().map(|l| l.dwell_hours).sum();
        if dwell != 24 {
            out.push(Violation::new(
                "locations.dwell_hours",
                format!("dwell hours must sum to 24, got {dwell}"),
            ));
        }
        let p: f64 = locs.iter().map(|l| l.probability).sum();
        if (p - 1.0).abs() > PROBABILITY_TOLERANCE {
            out.push(Violation::new(
                "locations.probability",
                format!("probabilities must sum to 1, got {p}"),
            ));
        }
    }

    let mut ids = BTreeSet::new();
    let mut served: BTreeMap<&str, usize> = BTreeMap::new();
    for d in &scenario.devices {
        if !ids.insert(d.id.as_str()) {
            out.push(Violation::new(format!("devices.{}", d.id), "device ids must be unique"));
        }
        if !(d.capacity_gb.is_finite() && d.capacity_gb >= 0.0) {
            out.push(Violation::new(
                format!("devices.{}.capacity_gb", d.id),
                format!("must be a finite size >= 0, got {}", d.capacity_gb),
            ));
        }
        if names.contains(d.location.as_str()) {
            *served.entry(d.location.as_str()).or_default() += 1;
        } else {
            out.push(Violation::new(
                format!("devices.{}.location", d.id),
                format!("unknown location `{}`", d.location),
            ));
        }
    }
    for name in &names {
        match served.get(name).copied().unwrap_or(0) {
            1 => {}
            0 => out.push(Violation::new(
                format!("locations.{name}"),
                "every location needs exactly one edge device (none found)",
            )),
            n => out.push(Violation::new(
                format!("locations.{name}"),
                format!("every location needs exactly one edge device ({n} found)"),
            )),
        }
    }

    if scenario.rates.check().is_err() {
        out.push(Violation::new(
            "rates",
            format!(
                "edge_rate and macro_rate must be finite and > 0, got {} and {}",
                scenario.rates.edge_rate, scenario.rates.macro_rate
            ),
        ));
    }

    for (field, rule) in scenario.tables.problems() {
        out.push(Violation::new(field, rule));
    }

    for key in scenario.demand.0.keys() {
        if !names.contains(key.as_str()) {
            out.push(Violation::new(
                format!("demand.{key}"),
                format!("unknown location `{key}`"),
            ));
        }
    }
    for name in &names {
        if !scenario.demand.0.contains_key(*name) {
            out.push(Violation::new(
                format!("demand.{name}"),
                "every location needs a demand entry",
            ));
        }
    }

    for (field, rule) in scenario.policy.problems() {
        out.push(Violation::new(field, rule));
    }

    let dvs = &scenario.dvs;
    if !(dvs.frame_bitrate_bps.is_finite() && dvs.frame_bitrate_bps >= 0.0) {
        out.push(Violation::new(
            "dvs.frame_bitrate_bps",
            format!("must be finite and >= 0, got {}", dvs.frame_bitrate_bps),
        ));
    }
    if let Some(rule) = dvs.event_rates.problem() {
        out.push(Violation::new("dvs.event_rates", rule));
    }
    if !(0.0..=1.0).contains(&dvs.size_ratio) {
        out.push(Violation::new(
            "dvs.size_ratio",
            format!("must be in [0, 1], got {}", dvs.size_ratio),
        ));
    }
    if dvs
        .timeline
        .segments()
        .iter()
        .any(|s| !(s.duration_seconds.is_finite() && s.duration_seconds >= 0.0))
    {
        out.push(Violation::new(
            "dvs.timeline",
            "segment durations must be finite and >= 0",
        ));
    }

    out
}
