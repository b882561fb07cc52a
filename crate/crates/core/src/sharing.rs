//! How many patients a shared edge device can serve.
//!
//! A device is shareable only once its owner's (host's) full record fits.
//! Every further `guest_requirement_gb` of space serves one more nearby
//! patient who caches only the smallest useful part of their record.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::placement::EdgeDevice;

/// Absorbs rounding in `(capacity - host) / guest` at exact multiples.
const STEP_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SharingPolicy {
    pub host_requirement_gb: f64,
    pub guest_requirement_gb: f64,
}

impl Default for SharingPolicy {
    fn default() -> Self {
        SharingPolicy {
            host_requirement_gb: 106.66,
            guest_requirement_gb: 3.0,
        }
    }
}

impl SharingPolicy {
    pub(crate) fn problems(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (field, v) in [
            ("policy.host_requirement_gb", self.host_requirement_gb),
            ("policy.guest_requirement_gb", self.guest_requirement_gb),
        ] {
            if !(v.is_finite() && v > 0.0) {
                out.push((field.to_string(), format!("must be finite and > 0, got {v}")));
            }
        }
        if self.host_requirement_gb < self.guest_requirement_gb {
            out.push((
                "policy.host_requirement_gb".to_string(),
                format!(
                    "must be >= guest_requirement_gb ({} < {})",
                    self.host_requirement_gb, self.guest_requirement_gb
                ),
            ));
        }
        out
    }
}

/// Host plus guests served by one device; 0 when the host's record does not fit.
pub fn patients_served(capacity_gb: f64, policy: &SharingPolicy) -> u64 {
    let spare = capacity_gb - policy.host_requirement_gb;
    if spare.is_nan() || spare < -STEP_EPS {
        return 0;
    }
    let guests = ((spare.max(0.0) / policy.guest_requirement_gb) + STEP_EPS).floor();
    1 + guests as u64
}

pub fn scenario_capacity(devices: &[EdgeDevice], policy: &SharingPolicy) -> u64 {
    devices
        .iter()
        .map(|d| patients_served(d.capacity_gb, policy))
        .sum()
}

/// Like [`scenario_capacity`] but also counts the host of a device too small
/// to be shared.
pub fn scenario_capacity_counting_hosts(devices: &[EdgeDevice], policy: &SharingPolicy) -> u64 {
    devices
        .iter()
        .map(|d| patients_served(d.capacity_gb, policy).max(1))
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepPoint {
    pub capacity_gb: f64,
    pub patients: u64,
}

/// Evaluates [`patients_served`] at `min_gb + i * step_gb` up to `max_gb`.
pub fn capacity_sweep(
    min_gb: f64,
    max_gb: f64,
    step_gb: f64,
    policy: &SharingPolicy,
) -> Result<Vec<SweepPoint>> {
    if !(min_gb.is_finite() && max_gb.is_finite() && min_gb >= 0.0 && min_gb <= max_gb) {
        return Err(Error::invalid(
            "range",
            format!("need 0 <= min <= max, got {min_gb}..{max_gb}"),
        ));
    }
    if !(step_gb.is_finite() && step_gb > 0.0) {
        return Err(Error::invalid("step", format!("must be > 0, got {step_gb}")));
    }
    let count = ((max_gb - min_gb) / step_gb + STEP_EPS).floor() as u64 + 1;
    Ok((0..count)
        .map(|i| {
            let capacity_gb = min_gb + i as f64 * step_gb;
            SweepPoint {
                capacity_gb,
                patients: patients_served(capacity_gb, policy),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn policy() -> SharingPolicy {
        SharingPolicy::default()
    }

    #[test]
    fn published_counts() {
        assert_eq!(patients_served(500.0, &policy()), 132);
        assert_eq!(patients_served(150.0, &policy()), 15);
        assert_eq!(patients_served(100.0, &policy()), 0);
        assert_eq!(patients_served(106.66, &policy()), 1);
    }

    #[test]
    fn scenario_totals() {
        let devices: Vec<EdgeDevice> = [100.0, 500.0, 150.0, 50.0, 10.0]
            .iter()
            .enumerate()
            .map(|(i, &c)| EdgeDevice::new(format!("E{i}"), c, format!("l{i}")))
            .collect();
        assert_eq!(scenario_capacity(&devices, &policy()), 147);
        assert_eq!(scenario_capacity_counting_hosts(&devices, &policy()), 150);
        assert_eq!(scenario_capacity(&[], &policy()), 0);
        let exact = [EdgeDevice::new("x", 106.66, "home")];
        assert_eq!(scenario_capacity(&exact, &policy()), 1);
    }

    #[test]
    fn sweep_examples() {
        let pts = capacity_sweep(0.0, 600.0, 10.0, &policy()).unwrap();
        assert_eq!(pts.len(), 61);
        let at500 = pts.iter().find(|p| p.capacity_gb == 500.0).unwrap();
        assert_eq!(at500.patients, 132);

        let low = capacity_sweep(0.0, 100.0, 0.5, &policy()).unwrap();
        assert!(low.iter().all(|p| p.patients == 0));

        assert!(capacity_sweep(10.0, 5.0, 1.0, &policy()).is_err());
        assert!(capacity_sweep(0.0, 5.0, 0.0, &policy()).is_err());
    }

    #[test]
    fn guest_steps_at_exact_multiples() {
        let p = policy();
        for k in 0..200u64 {
            let c = p.host_requirement_gb + k as f64 * p.guest_requirement_gb;
            assert_eq!(patients_served(c, &p), k + 1, "capacity {c}");
        }
    }

    proptest! {
        #[test]
        fn monotone(a in 0.0..2000.0f64, b in 0.0..2000.0f64) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(patients_served(lo, &policy()) <= patients_served(hi, &policy()));
        }

        #[test]
        fn unit_steps_above_host(c in 106.66..2000.0f64) {
            let p = policy();
            prop_assert_eq!(
                patients_served(c + p.guest_requirement_gb, &p),
                patients_served(c, &p) + 1
            );
        }

        #[test]
        fn jump_only_at_host(c in 0.0..106.6f64) {
            prop_assert_eq!(patients_served(c, &policy()), 0);
        }
    }
}
