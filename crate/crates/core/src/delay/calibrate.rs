//! Recovering link rates from reported delays.
//!
//! Every observation is linear in the inverse rates:
//! `edge_gb * (1/R1) + macro_gb * (1/R2) = 60 * minutes`, with the loads
//! already weighted by dwell probability. Two independent observations pin
//! both rates; more are fitted by least squares.

use serde::Serialize;

use super::{DelayCase, LinkRates, Load, SchemeLoads};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Observation {
    pub load: Load,
    pub minutes: f64,
}

impl Observation {
    pub fn new(loads: &SchemeLoads, case: DelayCase, minutes: f64) -> Self {
        Observation {
            load: loads.weighted(case),
            minutes,
        }
    }
}

pub fn calibrate_rates(observations: &[Observation]) -> Result<LinkRates> {
    if let Some(o) = observations
        .iter()
        .find(|o| !(o.minutes.is_finite() && o.minutes >= 0.0))
    {
        return Err(Error::DegenerateCalibration(format!(
            "observed delay must be finite and >= 0, got {}",
            o.minutes
        )));
    }
    let (mut saa, mut sab, mut sbb, mut sac, mut sbc) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for o in observations {
        let (a, b, c) = (o.load.edge_gb, o.load.macro_gb, 60.0 * o.minutes);
        saa += a * a;
        sab += a * b;
        sbb += b * b;
        sac += a * c;
        sbc += b * c;
    }
    if saa == 0.0 {
        return Err(Error::DegenerateCalibration(
            "no observation moves data over the edge link".into(),
        ));
    }
    if sbb == 0.0 {
        return Err(Error::DegenerateCalibration(
            "no observation moves data over the macro link".into(),
        ));
    }
    let det = saa * sbb - sab * sab;
    if det <= 1e-12 * saa * sbb {
        return Err(Error::DegenerateCalibration(
            "observations do not separate the edge and macro rates".into(),
        ));
    }
    let inv_edge = (sac * sbb - sbc * sab) / det;
    let inv_macro = (sbc * saa - sac * sab) / det;
    if !(inv_edge > 0.0 && inv_macro > 0.0) {
        return Err(Error::DegenerateCalibration(format!(
            "fitted inverse rates are not positive ({inv_edge}, {inv_macro})"
        )));
    }
    LinkRates::new(1.0 / inv_edge, 1.0 / inv_macro)
}
