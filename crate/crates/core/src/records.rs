//! File classes, class subsets and per-class record sizes.
//!
//! Sizes are in GB (10^9 bytes) and real-valued. The video class has two
//! sizes: one for conventional frame-based recordings and one for the same
//! footage captured with an event camera.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// One of the three tiers of a medical record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FileClass {
    Text,
    Image,
    Video,
}

impl FileClass {
    pub const ALL: [FileClass; 3] = [FileClass::Text, FileClass::Image, FileClass::Video];

    fn bit(self) -> u8 {
        match self {
            FileClass::Text => 0b001,
            FileClass::Image => 0b010,
            FileClass::Video => 0b100,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FileClass::Text => "text",
            FileClass::Image => "image",
            FileClass::Video => "video",
        }
    }
}

impl fmt::Display for FileClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A subset of [`FileClass`]; one of eight values.
///
/// Serialized as the class names joined with `+` (`"text+image"`), with
/// `"none"` for the empty set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FileSet(u8);

impl FileSet {
    pub const EMPTY: FileSet = FileSet(0);
    pub const FULL: FileSet = FileSet(0b111);

    pub fn from_bits(bits: u8) -> Option<FileSet> {
        (bits <= 0b111).then_some(FileSet(bits))
    }

    /// Keeps only the three class bits.
    pub const fn from_bits_truncate(bits: u8) -> FileSet {
        FileSet(bits & 0b111)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    /// All eight subsets in bit order, empty first.
    pub fn all() -> impl Iterator<Item = FileSet> {
        (0..8u8).map(FileSet)
    }

    pub fn of(classes: &[FileClass]) -> FileSet {
        classes.iter().fold(FileSet::EMPTY, |s, &c| s.with(c))
    }

    pub fn with(self, class: FileClass) -> FileSet {
        FileSet(self.0 | class.bit())
    }

    pub fn without(self, class: FileClass) -> FileSet {
        FileSet(self.0 & !class.bit())
    }

    pub fn contains(self, class: FileClass) -> bool {
        self.0 & class.bit() != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset_of(self, other: FileSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: FileSet) -> FileSet {
        FileSet(self.0 | other.0)
    }

    pub fn intersection(self, other: FileSet) -> FileSet {
        FileSet(self.0 & other.0)
    }

    pub fn complement(self) -> FileSet {
        FileSet(!self.0 & 0b111)
    }

    /// Member classes in canonical order (text, image, video).
    pub fn classes(self) -> impl Iterator<Item = FileClass> {
        FileClass::ALL.into_iter().filter(move |&c| self.contains(c))
    }
}

impl fmt::Display for FileSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("none");
        }
        let names: Vec<&str> = self.classes().map(FileClass::name).collect();
        f.write_str(&names.join("+"))
    }
}

impl FromStr for FileSet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s.eq_ignore_ascii_case("none") {
            return Ok(FileSet::EMPTY);
        }
        let mut set = FileSet::EMPTY;
        for part in s.split(['+', ',']) {
            let class = match part.trim().to_ascii_lowercase().as_str() {
                "text" | "t" => FileClass::Text,
                "image" | "i" => FileClass::Image,
                "video" | "v" => FileClass::Video,
                other => return Err(format!("unknown file class `{other}`")),
            };
            if set.contains(class) {
                return Err(format!("file class `{class}` listed twice"));
            }
            set = set.with(class);
        }
        Ok(set)
    }
}

impl Serialize for FileSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FileSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Which video size a computation uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VideoMode {
    Conventional,
    #[default]
    Dvs,
}

impl fmt::Display for VideoMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VideoMode::Conventional => "conventional",
            VideoMode::Dvs => "dvs",
        })
    }
}

/// Per-class record sizes in GB.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RecordSet {
    pub text_gb: f64,
    pub image_gb: f64,
    pub video_conventional_gb: f64,
    pub video_dvs_gb: f64,
}

impl Default for RecordSet {
    /// Text 3 GB, images 87 GB, conventional video 200 GB, DVS video 16.66 GB.
    fn default() -> Self {
        RecordSet {
            text_gb: 3.0,
            image_gb: 87.0,
            video_conventional_gb: 200.0,
            video_dvs_gb: 16.66,
        }
    }
}

impl RecordSet {
    pub fn zero() -> Self {
        RecordSet {
            text_gb: 0.0,
            image_gb: 0.0,
            video_conventional_gb: 0.0,
            video_dvs_gb: 0.0,
        }
    }

    pub fn class_size(&self, class: FileClass, mode: VideoMode) -> f64 {
        match (class, mode) {
            (FileClass::Text, _) => self.text_gb,
            (FileClass::Image, _) => self.image_gb,
            (FileClass::Video, VideoMode::Conventional) => self.video_conventional_gb,
            (FileClass::Video, VideoMode::Dvs) => self.video_dvs_gb,
        }
    }

    /// Multiplies every size by `factor`.
    pub fn scaled(&self, factor: f64) -> RecordSet {
        RecordSet {
            text_gb: self.text_gb * factor,
            image_gb: self.image_gb * factor,
            video_conventional_gb: self.video_conventional_gb * factor,
            video_dvs_gb: self.video_dvs_gb * factor,
        }
    }

    /// Human-readable invariant violations; empty when the sizes are usable.
    pub fn problems(&self) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        for (field, value) in [
            ("text_gb", self.text_gb),
            ("image_gb", self.image_gb),
            ("video_conventional_gb", self.video_conventional_gb),
            ("video_dvs_gb", self.video_dvs_gb),
        ] {
            if !(value.is_finite() && value >= 0.0) {
                out.push((field, format!("must be a finite size >= 0, got {value}")));
            }
        }
        if self.video_dvs_gb > self.video_conventional_gb {
            out.push((
                "video_dvs_gb",
                format!(
                    "must not exceed video_conventional_gb ({} > {})",
                    self.video_dvs_gb, self.video_conventional_gb
                ),
            ));
        }
        out
    }
}

/// Total size of the classes in `subset`.
pub fn subset_size(subset: FileSet, records: &RecordSet, mode: VideoMode) -> f64 {
    // fold from +0.0: an empty f64 `sum()` is -0.0
    subset
        .classes()
        .fold(0.0, |acc, c| acc + records.class_size(c, mode))
}

/// Size of the complete record (all three classes).
pub fn full_emr_size(records: &RecordSet, mode: VideoMode) -> f64 {
    subset_size(FileSet::FULL, records, mode)
}
