//! Expected transmission delay of a medical record request.
//!
//! Each location contributes a term weighted by the share of the day the
//! patient spends there. A term is the time to pull the locally cached part
//! of the record over the edge link plus, in the worst case, the time to
//! pull the remainder from the registered hospital over the macro cell:
//!
//! ```text
//! D = sum_loc P_loc * (N1_loc / R1 + N2_loc / R2)
//! ```
//!
//! Loads (`N1`, `N2`) do not depend on the rates, so they are computed once
//! as [`SchemeLoads`] and evaluated against any [`LinkRates`]. That split is
//! what makes [`calibrate_rates`] a linear solve.

mod calibrate;
mod monte_carlo;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use calibrate::{calibrate_rates, Observation};
pub use monte_carlo::{monte_carlo_delay, poisson_mass, MonteCarloConfig, MonteCarloEstimate};

use crate::error::{Error, Result};
use crate::placement::{plan_with_video, AllocationPlan, LocationProfile, PlacementMode};
use crate::records::{subset_size, FileSet, RecordSet, VideoMode};
use crate::scenario::EdgeScenario;

/// Edge and macro-cell throughput in GB/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LinkRates {
    pub edge_rate: f64,
    pub macro_rate: f64,
}

impl Default for LinkRates {
    /// Rates recovered from the published delays (ratio 7.5).
    fn default() -> Self {
        LinkRates {
            edge_rate: 0.146484375,
            macro_rate: 0.01953125,
        }
    }
}

impl LinkRates {
    pub fn new(edge_rate: f64, macro_rate: f64) -> Result<Self> {
        let rates = LinkRates {
            edge_rate,
            macro_rate,
        };
        rates.check()?;
        Ok(rates)
    }

    pub fn check(&self) -> Result<()> {
        for r in [self.edge_rate, self.macro_rate] {
            if !(r.is_finite() && r > 0.0) {
                return Err(Error::NonPositiveRate(r));
            }
        }
        Ok(())
    }

    pub fn scaled(&self, factor: f64) -> LinkRates {
        LinkRates {
            edge_rate: self.edge_rate * factor,
            macro_rate: self.macro_rate * factor,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DelayCase {
    /// The edge cache alone satisfies the request.
    Best,
    /// The remainder of the record also comes from the registered hospital.
    Worst,
}

impl DelayCase {
    pub const BOTH: [DelayCase; 2] = [DelayCase::Best, DelayCase::Worst];
}

impl fmt::Display for DelayCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DelayCase::Best => "best",
            DelayCase::Worst => "worst",
        })
    }
}

impl FromStr for DelayCase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "best" => Ok(DelayCase::Best),
            "worst" => Ok(DelayCase::Worst),
            other => Err(format!("unknown case `{other}` (expected best or worst)")),
        }
    }
}

/// What the nearest hospital needs at each location, by location name.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DemandProfile(pub BTreeMap<String, FileSet>);

impl DemandProfile {
    pub fn get(&self, location: &str) -> Option<FileSet> {
        self.0.get(location).copied()
    }

    pub fn uniform(locations: &[LocationProfile], subset: FileSet) -> Self {
        DemandProfile(locations.iter().map(|l| (l.name.clone(), subset)).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    /// Edge caching of DVS-sized records.
    EdgeDvs,
    /// Caching of conventional-video records, no DVS.
    Femtocache,
    /// Everything from the registered hospital over the macro cell.
    Baseline,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::EdgeDvs, Scheme::Femtocache, Scheme::Baseline];

    pub fn label(self) -> &'static str {
        match self {
            Scheme::EdgeDvs => "edge-dvs",
            Scheme::Femtocache => "femtocache",
            Scheme::Baseline => "baseline",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scheme::ALL
            .into_iter()
            .find(|sc| sc.label() == s)
            .ok_or_else(|| format!("unknown scheme `{s}` (expected edge-dvs, femtocache or baseline)"))
    }
}

/// GB moved over each link.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Load {
    pub edge_gb: f64,
    pub macro_gb: f64,
}

impl Load {
    pub fn minutes(&self, rates: &LinkRates) -> f64 {
        (self.edge_gb / rates.edge_rate + self.macro_gb / rates.macro_rate) / 60.0
    }

    fn weighted(&self, p: f64) -> Load {
        Load {
            edge_gb: p * self.edge_gb,
            macro_gb: p * self.macro_gb,
        }
    }
}

impl std::ops::Add for Load {
    type Output = Load;

    fn add(self, o: Load) -> Load {
        Load {
            edge_gb: self.edge_gb + o.edge_gb,
            macro_gb: self.macro_gb + o.macro_gb,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocationLoad {
    pub location: String,
    pub probability: f64,
    pub best: Load,
    pub worst: Load,
}

impl LocationLoad {
    pub fn load(&self, case: DelayCase) -> Load {
        match case {
            DelayCase::Best => self.best,
            DelayCase::Worst => self.worst,
        }
    }
}

/// Rate-independent per-location loads of one scheme.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchemeLoads {
    pub scheme: String,
    pub locations: Vec<LocationLoad>,
}

impl SchemeLoads {
    /// Loads of a caching plan: `N1` over the edge link, plus `N2` over the
    /// macro cell in the worst case.
    pub fn from_plan(plan: &AllocationPlan, locations: &[LocationProfile]) -> Result<Self> {
        let locations = locations
            .iter()
            .map(|l| {
                let e = plan
                    .entry_for_location(&l.name)
                    .ok_or_else(|| Error::MissingDevice(l.name.clone()))?;
                let best = Load {
                    edge_gb: e.cached_gb,
                    macro_gb: 0.0,
                };
                let worst = Load {
                    edge_gb: e.cached_gb,
                    macro_gb: e.residual_gb,
                };
                Ok(LocationLoad {
                    location: l.name.clone(),
                    probability: l.probability,
                    best,
                    worst,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SchemeLoads {
            scheme: plan.mode.clone(),
            locations,
        })
    }

    /// Loads without edge caching: the best case fetches only what the
    /// location needs, the worst case the full conventional record.
    pub fn baseline(
        demand: &DemandProfile,
        records: &RecordSet,
        locations: &[LocationProfile],
    ) -> Result<Self> {
        let full = subset_size(FileSet::FULL, records, VideoMode::Conventional);
        let locations = locations
            .iter()
            .map(|l| {
                let need = demand
                    .get(&l.name)
                    .ok_or_else(|| Error::MissingDemand(l.name.clone()))?;
                Ok(LocationLoad {
                    location: l.name.clone(),
                    probability: l.probability,
                    best: Load {
                        edge_gb: 0.0,
                        macro_gb: subset_size(need, records, VideoMode::Conventional),
                    },
                    worst: Load {
                        edge_gb: 0.0,
                        macro_gb: full,
                    },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SchemeLoads {
            scheme: Scheme::Baseline.label().into(),
            locations,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.scheme = label.into();
        self
    }

    /// Dwell-weighted total load.
    pub fn weighted(&self, case: DelayCase) -> Load {
        self.locations
            .iter()
            .map(|l| l.load(case).weighted(l.probability))
            .fold(Load::default(), |a, b| a + b)
    }

    pub fn evaluate(&self, rates: &LinkRates) -> Result<DelayReport> {
        rates.check()?;
        let terms: Vec<LocationTerm> = self
            .locations
            .iter()
            .map(|l| LocationTerm {
                location: l.location.clone(),
                probability: l.probability,
                best_minutes: l.best.minutes(rates),
                worst_minutes: l.worst.minutes(rates),
            })
            .collect();
        let best = terms.iter().map(|t| t.probability * t.best_minutes).sum();
        let worst = terms.iter().map(|t| t.probability * t.worst_minutes).sum();
        Ok(DelayReport {
            scheme: self.scheme.clone(),
            best_minutes: best,
            worst_minutes: worst,
            terms,
        })
    }
}

/// Unweighted delay of one location's requests.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocationTerm {
    pub location: String,
    pub probability: f64,
    pub best_minutes: f64,
    pub worst_minutes: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DelayReport {
    pub scheme: String,
    pub best_minutes: f64,
    pub worst_minutes: f64,
    pub terms: Vec<LocationTerm>,
}

impl DelayReport {
    pub fn minutes(&self, case: DelayCase) -> f64 {
        match case {
            DelayCase::Best => self.best_minutes,
            DelayCase::Worst => self.worst_minutes,
        }
    }
}

/// Minutes to move `size_gb` at `rate_gb_per_s`.
pub fn transfer_minutes(size_gb: f64, rate_gb_per_s: f64) -> Result<f64> {
    if !(rate_gb_per_s.is_finite() && rate_gb_per_s > 0.0) {
        return Err(Error::NonPositiveRate(rate_gb_per_s));
    }
    if !(size_gb.is_finite() && size_gb >= 0.0) {
        return Err(Error::invalid("size_gb", format!("must be finite and >= 0, got {size_gb}")));
    }
    Ok(size_gb / rate_gb_per_s / 60.0)
}

/// Dwell-weighted delay of a caching plan.
pub fn expected_delay(
    plan: &AllocationPlan,
    locations: &[LocationProfile],
    rates: &LinkRates,
) -> Result<DelayReport> {
    SchemeLoads::from_plan(plan, locations)?.evaluate(rates)
}

/// The caching plan without DVS: conventional video sizes placed by the
/// smallest feasible combination coefficient.
pub fn femtocache_plan(scenario: &EdgeScenario) -> Result<AllocationPlan> {
    let mut plan = plan_with_video(
        scenario,
        PlacementMode::MinComboFeasible,
        VideoMode::Conventional,
    )?;
    plan.mode = Scheme::Femtocache.label().into();
    Ok(plan)
}

pub fn femtocache_delay(scenario: &EdgeScenario, rates: &LinkRates) -> Result<DelayReport> {
    let plan = femtocache_plan(scenario)?;
    expected_delay(&plan, &scenario.locations, rates)
}

pub fn baseline_delay(
    demand: &DemandProfile,
    records: &RecordSet,
    locations: &[LocationProfile],
    rates: &LinkRates,
) -> Result<DelayReport> {
    SchemeLoads::baseline(demand, records, locations)?.evaluate(rates)
}

/// Percentage reduction from `reference` to `new`.
pub fn improvement_pct(reference: f64, new: f64) -> Result<f64> {
    if !(reference.is_finite() && reference > 0.0) {
        return Err(Error::invalid(
            "reference",
            format!("must be positive, got {reference}"),
        ));
    }
    Ok((reference - new) / reference * 100.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::placement::plan_scenario;
    use crate::records::FileClass::*;

    fn paper() -> EdgeScenario {
        EdgeScenario::paper()
    }

    fn fixture_report(s: &EdgeScenario) -> DelayReport {
        let plan = plan_scenario(s, PlacementMode::PaperFixture).unwrap();
        expected_delay(&plan, &s.locations, &s.rates).unwrap()
    }

    #[test]
    fn transfer_examples() {
        assert!((transfer_minutes(290.0, 0.01953125).unwrap() - 247.467).abs() < 1e-3);
        assert_eq!(transfer_minutes(0.0, 3.0).unwrap(), 0.0);
        assert!((transfer_minutes(86.7608, 0.146484375).unwrap() - 9.871).abs() < 1e-3);
        assert!(matches!(transfer_minutes(1.0, 0.0), Err(Error::NonPositiveRate(_))));
        assert!(transfer_minutes(1.0, -2.0).is_err());
    }

    #[test]
    fn fixture_delays() {
        let r = fixture_report(&paper());
        assert!((r.best_minutes - 9.872).abs() <= 0.01, "{}", r.best_minutes);
        assert!((r.worst_minutes - 26.855).abs() <= 0.02, "{}", r.worst_minutes);
        assert_eq!(r.terms.len(), 5);
    }

    #[test]
    fn empty_plan_best_is_zero() {
        let s = paper();
        let plan = AllocationPlan::from_subsets(
            "empty",
            &s.devices,
            &[FileSet::EMPTY; 5],
            &s.records,
            VideoMode::Dvs,
        );
        let r = expected_delay(&plan, &s.locations, &s.rates).unwrap();
        assert_eq!(r.best_minutes, 0.0);
        assert!(r.worst_minutes > 0.0);
    }

    #[test]
    fn missing_device_rejected() {
        let s = paper();
        let mut plan = plan_scenario(&s, PlacementMode::PaperFixture).unwrap();
        plan.entries.pop();
        assert!(matches!(
            expected_delay(&plan, &s.locations, &s.rates),
            Err(Error::MissingDevice(l)) if l == "other"
        ));
    }

    #[test]
    fn femtocache_examples() {
        let s = paper();
        let plan = femtocache_plan(&s).unwrap();
        let subsets: Vec<FileSet> = plan.entries.iter().map(|e| e.subset).collect();
        let ti = FileSet::of(&[Text, Image]);
        let t = FileSet::of(&[Text]);
        assert_eq!(subsets, vec![ti, FileSet::FULL, ti, t, t]);

        let r = femtocache_delay(&s, &s.rates).unwrap();
        assert!((r.best_minutes - 16.59).abs() <= 0.05, "{}", r.best_minutes);
        assert!((r.worst_minutes - 139.652).abs() <= 0.05, "{}", r.worst_minutes);

        let doubled = femtocache_delay(&s, &s.rates.scaled(2.0)).unwrap();
        assert!((doubled.best_minutes * 2.0 - r.best_minutes).abs() < 1e-9);
        assert!((doubled.worst_minutes * 2.0 - r.worst_minutes).abs() < 1e-9);
    }

    #[test]
    fn baseline_examples() {
        let s = paper();
        let r = baseline_delay(&s.demand, &s.records, &s.locations, &s.rates).unwrap();
        assert!((r.best_minutes - 145.73).abs() <= 0.05, "{}", r.best_minutes);
        assert!((r.worst_minutes - 247.467).abs() <= 0.01, "{}", r.worst_minutes);

        let none = DemandProfile::uniform(&s.locations, FileSet::EMPTY);
        let r = baseline_delay(&none, &s.records, &s.locations, &s.rates).unwrap();
        assert_eq!(r.best_minutes, 0.0);

        let mut partial = s.demand.clone();
        partial.0.remove("home");
        assert!(matches!(
            baseline_delay(&partial, &s.records, &s.locations, &s.rates),
            Err(Error::MissingDemand(_))
        ));
    }

    #[test]
    fn improvement_examples() {
        assert!((improvement_pct(145.73, 9.872).unwrap() - 93.23).abs() <= 0.05);
        assert_eq!(improvement_pct(7.0, 7.0).unwrap(), 0.0);
        assert!((improvement_pct(139.652, 26.855).unwrap() - 80.77).abs() <= 0.05);
        assert!(improvement_pct(0.0, 1.0).is_err());
    }

    #[test]
    fn parse_labels() {
        for s in Scheme::ALL {
            assert_eq!(s.label().parse::<Scheme>().unwrap(), s);
        }
        assert_eq!("worst".parse::<DelayCase>().unwrap(), DelayCase::Worst);
        assert!("median".parse::<DelayCase>().is_err());
    }
}
