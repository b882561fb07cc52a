//! Cross-scheme comparisons and the full run report.

use serde::Serialize;

use crate::delay::{
    baseline_delay, expected_delay, femtocache_delay, improvement_pct, DelayCase, DelayReport,
    LinkRates, Scheme,
};
use crate::dvs::VolumeComparison;
use crate::error::Result;
use crate::placement::{
    divergences, fixture_mismatch, plan_scenario, AllocationPlan, PlacementMode, PlanDivergence,
};
use crate::scenario::EdgeScenario;
use crate::sharing::{patients_served, scenario_capacity, scenario_capacity_counting_hosts};

/// The published allocation for the built-in scenario, the omission-penalty
/// search for anything else.
pub fn default_mode(scenario: &EdgeScenario) -> PlacementMode {
    if fixture_mismatch(scenario).is_none() {
        PlacementMode::PaperFixture
    } else {
        PlacementMode::OmissionPenalty
    }
}

/// Devices where `plan` departs from the published allocation. `None` when
/// the published allocation does not apply to the scenario.
pub fn published_divergence(
    scenario: &EdgeScenario,
    plan: &AllocationPlan,
) -> Result<Option<Vec<PlanDivergence>>> {
    if fixture_mismatch(scenario).is_some() || plan.video_mode != scenario.video_mode {
        return Ok(None);
    }
    let fixture = plan_scenario(scenario, PlacementMode::PaperFixture)?;
    Ok(Some(divergences(&fixture, plan)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchemeDelay {
    pub scheme: Scheme,
    pub case: DelayCase,
    pub minutes: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Improvement {
    pub reference: Scheme,
    pub candidate: Scheme,
    pub case: DelayCase,
    pub reference_minutes: f64,
    pub candidate_minutes: f64,
    pub percent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub rates: LinkRates,
    pub reports: Vec<DelayReport>,
    pub delays: Vec<SchemeDelay>,
    pub improvements: Vec<Improvement>,
}

impl Comparison {
    pub fn minutes(&self, scheme: Scheme, case: DelayCase) -> f64 {
        self.delays
            .iter()
            .find(|d| d.scheme == scheme && d.case == case)
            .map(|d| d.minutes)
            .expect("every scheme and case is evaluated")
    }

    pub fn improvement(&self, reference: Scheme, candidate: Scheme, case: DelayCase) -> Option<f64> {
        self.improvements
            .iter()
            .find(|i| i.reference == reference && i.candidate == candidate && i.case == case)
            .map(|i| i.percent)
    }
}

/// Evaluates the edge plan, the femtocache-only plan and the no-cache
/// baseline at the scenario's rates.
pub fn compare(scenario: &EdgeScenario, plan: &AllocationPlan) -> Result<Comparison> {
    compare_at(scenario, plan, &scenario.rates)
}

pub fn compare_at(
    scenario: &EdgeScenario,
    plan: &AllocationPlan,
    rates: &LinkRates,
) -> Result<Comparison> {
    let mut edge = expected_delay(plan, &scenario.locations, rates)?;
    edge.scheme = Scheme::EdgeDvs.label().into();
    let femto = femtocache_delay(scenario, rates)?;
    let base = baseline_delay(&scenario.demand, &scenario.records, &scenario.locations, rates)?;
    let reports = vec![edge, femto, base];

    let delays: Vec<SchemeDelay> = Scheme::ALL
        .iter()
        .zip(&reports)
        .flat_map(|(&scheme, r)| {
            DelayCase::BOTH.map(|case| SchemeDelay {
                scheme,
                case,
                minutes: r.minutes(case),
            })
        })
        .collect();

    let pairs = [
        (Scheme::Femtocache, Scheme::EdgeDvs),
        (Scheme::Baseline, Scheme::EdgeDvs),
        (Scheme::Baseline, Scheme::Femtocache),
    ];
    let lookup = |s: Scheme, c: DelayCase| {
        delays
            .iter()
            .find(|d| d.scheme == s && d.case == c)
            .map(|d| d.minutes)
            .unwrap_or_default()
    };
    let mut improvements = Vec::new();
    for (reference, candidate) in pairs {
        for case in DelayCase::BOTH {
            let r = lookup(reference, case);
            let c = lookup(candidate, case);
            // a zero reference has nothing to improve on
            if let Ok(percent) = improvement_pct(r, c) {
                improvements.push(Improvement {
                    reference,
                    candidate,
                    case,
                    reference_minutes: r,
                    candidate_minutes: c,
                    percent,
                });
            }
        }
    }
    Ok(Comparison {
        rates: *rates,
        reports,
        delays,
        improvements,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeviceShare {
    pub device: String,
    pub capacity_gb: f64,
    pub patients: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharingSummary {
    pub devices: Vec<DeviceShare>,
    pub total: u64,
    /// Also counting the host of every device too small to share.
    pub total_counting_hosts: u64,
}

pub fn sharing_summary(scenario: &EdgeScenario) -> SharingSummary {
    let policy = &scenario.policy;
    SharingSummary {
        devices: scenario
            .devices
            .iter()
            .map(|d| DeviceShare {
                device: d.id.clone(),
                capacity_gb: d.capacity_gb,
                patients: patients_served(d.capacity_gb, policy),
            })
            .collect(),
        total: scenario_capacity(&scenario.devices, policy),
        total_counting_hosts: scenario_capacity_counting_hosts(&scenario.devices, policy),
    }
}

/// Everything the tool computes for one scenario.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub scenario: String,
    pub scenario_digest: String,
    pub mode: String,
    pub plan: AllocationPlan,
    pub published_divergence: Option<Vec<PlanDivergence>>,
    pub comparison: Comparison,
    pub sharing: SharingSummary,
    pub dvs: VolumeComparison,
    pub emitted: Vec<String>,
}

pub fn run_report(scenario: &EdgeScenario, mode: PlacementMode) -> Result<RunReport> {
    let plan = plan_scenario(scenario, mode)?;
    Ok(RunReport {
        scenario: scenario.name.clone(),
        scenario_digest: scenario.digest(),
        mode: mode.label().into(),
        published_divergence: published_divergence(scenario, &plan)?,
        comparison: compare(scenario, &plan)?,
        sharing: sharing_summary(scenario),
        dvs: scenario.dvs.compare(&scenario.dvs.timeline)?,
        plan,
        emitted: Vec::new(),
    })
}
