//! Edge caching of tiered medical records.
//!
//! The crate models a patient's electronic medical record as three file
//! classes (text, image, video), places subsets of those classes on
//! capacity-limited edge devices near the places the patient spends time,
//! and evaluates the dwell-weighted transmission delay seen by a nearby
//! hospital. It also sizes event-camera (DVS) recordings against frame-based
//! capture and counts how many patients a shared edge device can serve.
//!
//! Module map:
//! - [`records`]: file classes, subsets and record sizes.
//! - [`dvs`]: frame vs event camera volume estimates.
//! - [`placement`]: penalty tables and exhaustive placement search.
//! - [`delay`]: closed-form expected delay, calibration and Monte Carlo.
//! - [`sharing`]: host/guest patient counts on shared devices.
//! - [`scenario`]: the scenario aggregate, its JSON format and validation.
//! - [`report`]: cross-module comparisons used by the command line tool.

pub mod delay;
pub mod dvs;
pub mod error;
pub mod placement;
pub mod records;
pub mod report;
pub mod scenario;
pub mod sharing;

pub use error::{Error, Result};
pub use records::{FileClass, FileSet, RecordSet, VideoMode};
pub use scenario::EdgeScenario;
