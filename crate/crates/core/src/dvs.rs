//! Recording volume of frame-based versus event-based (DVS) cameras.
//!
//! A frame camera writes at a constant bitrate regardless of what it sees.
//! An event camera emits nothing while the scene is still and samples faster
//! as motion speeds up, so its volume depends on an activity timeline.

use std::fmt;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Seconds in the 12 hour night used for the sleep-study estimate.
pub const NIGHT_SECONDS: f64 = 12.0 * 3600.0;

/// Seconds of fast motion that make a 256 kbps event stream total 100 MB.
pub const SLEEP_ACTIVE_SECONDS: f64 = 3125.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MotionLevel {
    None,
    Slow,
    Fast,
}

impl FromStr for MotionLevel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "none" | "still" => Ok(MotionLevel::None),
            "slow" => Ok(MotionLevel::Slow),
            "fast" => Ok(MotionLevel::Fast),
            other => Err(format!("unknown motion level `{other}`")),
        }
    }
}

impl fmt::Display for MotionLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MotionLevel::None => "none",
            MotionLevel::Slow => "slow",
            MotionLevel::Fast => "fast",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Segment {
    pub duration_seconds: f64,
    pub level: MotionLevel,
}

/// Piecewise-constant motion activity.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ActivityTimeline {
    segments: Vec<Segment>,
}

impl ActivityTimeline {
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        if let Some(bad) = segments
            .iter()
            .find(|s| !(s.duration_seconds.is_finite() && s.duration_seconds >= 0.0))
        {
            return Err(Error::invalid(
                "duration_seconds",
                format!("segment durations must be finite and >= 0, got {}", bad.duration_seconds),
            ));
        }
        Ok(ActivityTimeline { segments })
    }

    /// One segment of `seconds` at `level`.
    pub fn constant(seconds: f64, level: MotionLevel) -> Result<Self> {
        Self::new(vec![Segment {
            duration_seconds: seconds,
            level,
        }])
    }

    /// A 12 hour night, still except for 3125 s of fast movement.
    pub fn sleep_night() -> Self {
        ActivityTimeline {
            segments: vec![
                Segment {
                    duration_seconds: NIGHT_SECONDS - SLEEP_ACTIVE_SECONDS,
                    level: MotionLevel::None,
                },
                Segment {
                    duration_seconds: SLEEP_ACTIVE_SECONDS,
                    level: MotionLevel::Fast,
                },
            ],
        }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn total_seconds(&self) -> f64 {
        self.segments.iter().fold(0.0, |acc, s| acc + s.duration_seconds)
    }

    pub fn concat(&self, other: &ActivityTimeline) -> ActivityTimeline {
        let mut segments = self.segments.clone();
        segments.extend_from_slice(&other.segments);
        ActivityTimeline { segments }
    }

    /// Reads `duration_seconds,level` rows (with that header line).
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers().map_err(|e| Error::Timeline(e.to_string()))?.clone();
        if headers.len() != 2 || &headers[0] != "duration_seconds" || &headers[1] != "level" {
            return Err(Error::Timeline(format!(
                "expected header `duration_seconds,level`, got `{}`",
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let mut segments = Vec::new();
        for (i, row) in rdr.records().enumerate() {
            let row = row.map_err(|e| Error::Timeline(e.to_string()))?;
            let line = i + 2;
            let duration_seconds: f64 = row[0]
                .parse()
                .map_err(|e| Error::Timeline(format!("line {line}: bad duration: {e}")))?;
            let level: MotionLevel = row[1]
                .parse()
                .map_err(|e| Error::Timeline(format!("line {line}: {e}")))?;
            segments.push(Segment {
                duration_seconds,
                level,
            });
        }
        Self::new(segments)
    }

    pub fn from_csv_path(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::from_csv_reader(file)
    }
}

/// Event-camera sampling rates (bits/s). Still scenes always cost zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventRates {
    pub slow_bps: f64,
    pub fast_bps: f64,
}

impl Default for EventRates {
    fn default() -> Self {
        EventRates {
            slow_bps: 64e3,
            fast_bps: 256e3,
        }
    }
}

impl EventRates {
    pub fn new(slow_bps: f64, fast_bps: f64) -> Result<Self> {
        let rates = EventRates { slow_bps, fast_bps };
        if let Some(problem) = rates.problem() {
            return Err(Error::invalid("event_rates", problem));
        }
        Ok(rates)
    }

    pub fn rate(&self, level: MotionLevel) -> f64 {
        match level {
            MotionLevel::None => 0.0,
            MotionLevel::Slow => self.slow_bps,
            MotionLevel::Fast => self.fast_bps,
        }
    }

    pub(crate) fn problem(&self) -> Option<String> {
        if !(self.slow_bps.is_finite() && self.slow_bps >= 0.0) {
            return Some(format!("slow rate must be finite and >= 0, got {}", self.slow_bps));
        }
        if !self.fast_bps.is_finite() {
            return Some(format!("fast rate must be finite, got {}", self.fast_bps));
        }
        if self.slow_bps > self.fast_bps {
            return Some(format!(
                "slow rate {} exceeds fast rate {}",
                self.slow_bps, self.fast_bps
            ));
        }
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SensorModel {
    FrameBased { bitrate_bps: f64 },
    EventBased(EventRates),
}

/// Bytes written by a constant-bitrate camera.
pub fn frame_volume(bitrate_bps: f64, duration_seconds: f64) -> f64 {
    bitrate_bps * duration_seconds / 8.0
}

/// Bytes written by an event camera over `timeline`.
pub fn event_volume(timeline: &ActivityTimeline, model: &SensorModel) -> Result<f64> {
    let SensorModel::EventBased(rates) = model else {
        return Err(Error::FrameModelForEvents);
    };
    Ok(timeline
        .segments
        .iter()
        .fold(0.0, |acc, s| acc + rates.rate(s.level) * s.duration_seconds / 8.0))
}

/// Scales a conventional recording size down to its event-camera size.
pub fn dvs_scale(conventional_gb: f64, ratio: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&ratio) {
        return Err(Error::invalid("ratio", format!("must be in [0, 1], got {ratio}")));
    }
    Ok(conventional_gb * ratio)
}

/// Camera settings carried by a scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DvsSettings {
    pub frame_bitrate_bps: f64,
    pub event_rates: EventRates,
    /// Event-to-frame size ratio applied to whole video records.
    pub size_ratio: f64,
    pub timeline: ActivityTimeline,
}

impl Default for DvsSettings {
    fn default() -> Self {
        DvsSettings {
            frame_bitrate_bps: 512e3,
            event_rates: EventRates::default(),
            size_ratio: 1.0 / 12.0,
            timeline: ActivityTimeline::sleep_night(),
        }
    }
}

/// Frame and event volumes over the same timeline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VolumeComparison {
    pub duration_seconds: f64,
    pub frame_bytes: f64,
    pub event_bytes: f64,
    /// event / frame; zero when the frame volume is zero.
    pub ratio: f64,
}

impl DvsSettings {
    pub fn compare(&self, timeline: &ActivityTimeline) -> Result<VolumeComparison> {
        let duration_seconds = timeline.total_seconds();
        let frame_bytes = frame_volume(self.frame_bitrate_bps, duration_seconds);
        let event_bytes = event_volume(timeline, &SensorModel::EventBased(self.event_rates))?;
        let ratio = if frame_bytes > 0.0 {
            event_bytes / frame_bytes
        } else {
            0.0
        };
        Ok(VolumeComparison {
            duration_seconds,
            frame_bytes,
            event_bytes,
            ratio,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dvs() -> SensorModel {
        SensorModel::EventBased(EventRates::default())
    }

    #[test]
    fn frame_volume_night_uses_formula() {
        assert_eq!(frame_volume(512e3, NIGHT_SECONDS), 2.7648e9);
        assert_eq!(frame_volume(512e3, 0.0), 0.0);
        assert_eq!(frame_volume(256e3, 3600.0), 1.152e8);
    }

    #[test]
    fn event_volume_examples() {
        let still = ActivityTimeline::constant(NIGHT_SECONDS, MotionLevel::None).unwrap();
        assert_eq!(event_volume(&still, &dvs()).unwrap(), 0.0);

        let night = ActivityTimeline::sleep_night();
        assert_eq!(night.total_seconds(), NIGHT_SECONDS);
        assert_eq!(event_volume(&night, &dvs()).unwrap(), 1.0e8);

        let hour = ActivityTimeline::constant(3600.0, MotionLevel::Fast).unwrap();
        assert_eq!(event_volume(&hour, &dvs()).unwrap(), 1.152e8);
    }

    #[test]
    fn event_volume_rejects_frame_model() {
        let t = ActivityTimeline::sleep_night();
        let err = event_volume(&t, &SensorModel::FrameBased { bitrate_bps: 512e3 });
        assert!(matches!(err, Err(Error::FrameModelForEvents)));
    }

    #[test]
    fn scale_examples() {
        assert!((dvs_scale(200.0, 1.0 / 12.0).unwrap() - 16.667).abs() < 0.01);
        assert_eq!(dvs_scale(0.0, 0.3).unwrap(), 0.0);
        assert_eq!(dvs_scale(200.0, 1.0).unwrap(), 200.0);
        assert!(dvs_scale(200.0, 1.5).is_err());
    }

    #[test]
    fn rates_reject_slow_above_fast() {
        assert!(EventRates::new(300e3, 256e3).is_err());
        assert!(EventRates::new(-1.0, 256e3).is_err());
        assert!(EventRates::new(0.0, 0.0).is_ok());
    }

    #[test]
    fn negative_duration_rejected() {
        assert!(ActivityTimeline::constant(-1.0, MotionLevel::Fast).is_err());
    }

    #[test]
    fn csv_timeline() {
        let data = "duration_seconds,level\n40075,none\n3125, fast\n";
        let t = ActivityTimeline::from_csv_reader(data.as_bytes()).unwrap();
        assert_eq!(t, ActivityTimeline::sleep_night());

        assert!(ActivityTimeline::from_csv_reader("secs,level\n1,none\n".as_bytes()).is_err());
        assert!(ActivityTimeline::from_csv_reader(
            "duration_seconds,level\n1,sprint\n".as_bytes()
        )
        .is_err());
        assert!(ActivityTimeline::from_csv_reader(
            "duration_seconds,level\n-5,none\n".as_bytes()
        )
        .is_err());
    }

    #[test]
    fn settings_compare() {
        let s = DvsSettings::default();
        let c = s.compare(&ActivityTimeline::sleep_night()).unwrap();
        assert_eq!(c.frame_bytes, 2.7648e9);
        assert_eq!(c.event_bytes, 1.0e8);
        assert!((c.ratio - 1.0e8 / 2.7648e9).abs() < 1e-15);
    }

    fn level() -> impl Strategy<Value = MotionLevel> {
        prop_oneof![
            Just(MotionLevel::None),
            Just(MotionLevel::Slow),
            Just(MotionLevel::Fast)
        ]
    }

    fn timeline() -> impl Strategy<Value = ActivityTimeline> {
        prop::collection::vec((0.0..10_000.0f64, level()), 0..12).prop_map(|v| {
            ActivityTimeline::new(
                v.into_iter()
                    .map(|(d, l)| Segment {
                        duration_seconds: d,
                        level: l,
                    })
                    .collect(),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn event_dominated_by_frame(t in timeline(), slow in 0.0..1e6f64, extra in 0.0..1e6f64, head in 0.0..1e6f64) {
            let fast = slow + extra;
            let frame = fast + head;
            let model = SensorModel::EventBased(EventRates::new(slow, fast).unwrap());
            let ev = event_volume(&t, &model).unwrap();
            prop_assert!(ev <= frame_volume(frame, t.total_seconds()) * (1.0 + 1e-12));
        }

        #[test]
        fn raising_motion_never_decreases(t in timeline(), idx in any::<prop::sample::Index>()) {
            prop_assume!(!t.segments().is_empty());
            let model = dvs();
            let before = event_volume(&t, &model).unwrap();
            let mut segs = t.segments().to_vec();
            let i = idx.index(segs.len());
            segs[i].level = match segs[i].level {
                MotionLevel::None => MotionLevel::Slow,
                _ => MotionLevel::Fast,
            };
            let after = event_volume(&ActivityTimeline::new(segs).unwrap(), &model).unwrap();
            prop_assert!(after >= before);
        }

        #[test]
        fn additive_over_concat(a in timeline(), b in timeline()) {
            let model = dvs();
            let joined = event_volume(&a.concat(&b), &model).unwrap();
            let split = event_volume(&a, &model).unwrap() + event_volume(&b, &model).unwrap();
            prop_assert!((joined - split).abs() <= 1e-9 * (1.0 + split));
        }
    }
}
