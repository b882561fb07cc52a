//! `emr-edge`: placement, delay and sharing analysis for edge-cached
//! medical records.
//!
//! Every subcommand prints a table (or CSV/JSON with `--format`) and, with
//! `--out <dir>`, writes its CSV series and a JSON report there.
//!
//! Exit codes: 0 success, 2 invalid input or scenario, 3 I/O failure.

mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use emr_edge::delay::{
    calibrate_rates, femtocache_plan, monte_carlo_delay, DelayCase, MonteCarloConfig,
    MonteCarloEstimate, Observation, Scheme, SchemeLoads,
};
use emr_edge::dvs::{dvs_scale, ActivityTimeline, VolumeComparison};
use emr_edge::placement::{plan_scenario, AllocationPlan, ObjectiveWeights, PlacementMode};
use emr_edge::report::{
    compare, compare_at, default_mode, published_divergence, run_report, sharing_summary,
    Comparison, SharingSummary,
};
use emr_edge::scenario::resolve_scenario;
use emr_edge::sharing::capacity_sweep;
use emr_edge::{EdgeScenario, Error};

use output::{csv_doc, gb, minutes, pct, text_table, Artifacts, Format};

#[derive(Parser)]
#[command(name = "emr-edge", version, about = "Edge caching of tiered medical records")]
struct Cli {
    /// Scenario JSON file, or `paper` for the built-in scenario.
    #[arg(long, global = true, default_value = "paper")]
    scenario: String,

    /// Directory for CSV and JSON outputs.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// What to print on standard output.
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ModeArgs {
    /// Placement mode: omission, min-combo, paper or custom. Defaults to
    /// paper for the built-in scenario and omission otherwise.
    #[arg(long)]
    mode: Option<PlacementMode>,

    /// Staying,value,combo weights for `--mode custom`.
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<f64>>,
}

impl ModeArgs {
    fn resolve(&self, scenario: &EdgeScenario) -> Result<PlacementMode, Error> {
        let mode = self.mode.unwrap_or_else(|| default_mode(scenario));
        match (mode, &self.weights) {
            (PlacementMode::CustomWeights(_), Some(w)) => match w[..] {
                [staying, value, combo] => {
                    let w = ObjectiveWeights {
                        staying,
                        value,
                        combo,
                    };
                    if let Some(problem) = w.problem() {
                        return Err(Error::InvalidArgument { name: "weights", reason: problem });
                    }
                    Ok(PlacementMode::CustomWeights(w))
                }
                _ => Err(Error::InvalidArgument {
                    name: "weights",
                    reason: format!("expected 3 comma-separated values, got {}", w.len()),
                }),
            },
            (_, Some(_)) => Err(Error::InvalidArgument {
                name: "weights",
                reason: "only valid with --mode custom".into(),
            }),
            (mode, None) => Ok(mode),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Place file classes on every edge device.
    Allocate(ModeArgs),
    /// Expected delay of one scheme, optionally with a Monte Carlo check.
    Delay {
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long, default_value = "edge-dvs")]
        scheme: Scheme,
        /// Restrict to one case; both when omitted.
        #[arg(long)]
        case: Option<DelayCase>,
        /// Monte Carlo draws; no sampling when omitted.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Independent random streams the draws are split over.
        #[arg(long, default_value_t = 8)]
        streams: usize,
    },
    /// All schemes side by side with improvement percentages.
    Compare(ModeArgs),
    /// Patients served when edge devices are shared.
    Share {
        /// Also count hosts of devices too small to share.
        #[arg(long)]
        count_hosts: bool,
    },
    /// Patients served over a range of shared capacities.
    Sweep {
        #[arg(long, default_value_t = 0.0)]
        min: f64,
        #[arg(long, default_value_t = 600.0)]
        max: f64,
        #[arg(long, default_value_t = 1.0)]
        step: f64,
    },
    /// Frame vs event camera recording volume.
    DvsSize {
        /// CSV timeline (`duration_seconds,level`); the scenario's when omitted.
        #[arg(long)]
        timeline: Option<PathBuf>,
    },
    /// Fit edge and macro rates to observed delays.
    Calibrate {
        #[command(flatten)]
        mode: ModeArgs,
        /// `scheme:case:minutes`, repeatable. Defaults to the published
        /// edge-dvs best and baseline worst delays.
        #[arg(long = "observe")]
        observations: Vec<String>,
    },
    /// Allocation, delays, sharing and DVS sizing in one report.
    Report(ModeArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_io() { 3 } else { 2 })
        }
    }
}

fn run(cli: &Cli) -> Result<(), Error> {
    let scenario = resolve_scenario(&cli.scenario)?;
    let artifacts = match &cli.command {
        Command::Allocate(m) => allocate(&scenario, m.resolve(&scenario)?)?,
        Command::Delay {
            mode,
            scheme,
            case,
            samples,
            seed,
            streams,
        } => {
            let mc = samples.map(|samples| MonteCarloConfig {
                samples,
                seed: *seed,
                streams: *streams,
                ..Default::default()
            });
            delay(&scenario, mode.resolve(&scenario)?, *scheme, *case, mc)?
        }
        Command::Compare(m) => compare_cmd(&scenario, m.resolve(&scenario)?)?,
        Command::Share { count_hosts } => share(&scenario, *count_hosts),
        Command::Sweep { min, max, step } => sweep(&scenario, *min, *max, *step)?,
        Command::DvsSize { timeline } => dvs_size(&scenario, timeline.as_deref())?,
        Command::Calibrate { mode, observations } => {
            calibrate(&scenario, mode.resolve(&scenario)?, observations)?
        }
        Command::Report(m) => report(&scenario, m.resolve(&scenario)?, cli.out.as_deref())?,
    };
    print!("{}", artifacts.render(cli.format));
    if let Some(dir) = &cli.out {
        for path in artifacts.write_to(dir)? {
            eprintln!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn plan_rows(plan: &AllocationPlan) -> Vec<Vec<String>> {
    plan.entries
        .iter()
        .map(|e| {
            vec![
                e.device.clone(),
                e.location.clone(),
                gb(e.capacity_gb),
                e.subset.to_string(),
                gb(e.cached_gb),
                gb(e.residual_gb),
            ]
        })
        .collect()
}

const PLAN_HEADER: [&str; 6] = [
    "device",
    "location",
    "capacity_gb",
    "subset",
    "cached_gb",
    "residual_gb",
];

#[derive(Serialize)]
struct AllocateJson<'a> {
    scenario_digest: String,
    plan: &'a AllocationPlan,
    published_divergence: Option<Vec<emr_edge::placement::PlanDivergence>>,
}

fn allocate(scenario: &EdgeScenario, mode: PlacementMode) -> Result<Artifacts, Error> {
    let plan = plan_scenario(scenario, mode)?;
    let divergence = published_divergence(scenario, &plan)?;
    let rows = plan_rows(&plan);
    let mut table = format!("allocation ({} mode, {} video)\n", plan.mode, plan.video_mode);
    table.push_str(&text_table(&PLAN_HEADER, &rows));
    match &divergence {
        Some(d) if d.is_empty() => table.push_str("matches the published allocation\n"),
        Some(d) => {
            table.push_str("differs from the published allocation:\n");
            for x in d {
                table.push_str(&format!("  {x}\n"));
            }
        }
        None => {}
    }
    let json = AllocateJson {
        scenario_digest: scenario.digest(),
        plan: &plan,
        published_divergence: divergence,
    };
    Ok(Artifacts::new("allocate", &json)
        .csv("allocation", csv_doc(&PLAN_HEADER, rows))
        .table(table))
}

#[derive(Serialize)]
struct DelayJson {
    scheme: Scheme,
    mode: String,
    report: emr_edge::delay::DelayReport,
    monte_carlo: Vec<MonteCarloEstimate>,
}

fn scheme_loads(
    scenario: &EdgeScenario,
    mode: PlacementMode,
    scheme: Scheme,
) -> Result<SchemeLoads, Error> {
    let loads = match scheme {
        Scheme::EdgeDvs => {
            SchemeLoads::from_plan(&plan_scenario(scenario, mode)?, &scenario.locations)?
        }
        Scheme::Femtocache => {
            SchemeLoads::from_plan(&femtocache_plan(scenario)?, &scenario.locations)?
        }
        Scheme::Baseline => {
            SchemeLoads::baseline(&scenario.demand, &scenario.records, &scenario.locations)?
        }
    };
    Ok(loads.with_label(scheme.label()))
}

fn delay(
    scenario: &EdgeScenario,
    mode: PlacementMode,
    scheme: Scheme,
    case: Option<DelayCase>,
    mc: Option<MonteCarloConfig>,
) -> Result<Artifacts, Error> {
    let loads = scheme_loads(scenario, mode, scheme)?;
    let report = loads.evaluate(&scenario.rates)?;
    let cases: Vec<DelayCase> = case.map_or(DelayCase::BOTH.to_vec(), |c| vec![c]);

    let mut header = vec!["location", "probability"];
    for c in &cases {
        header.push(match c {
            DelayCase::Best => "best_minutes",
            DelayCase::Worst => "worst_minutes",
        });
    }
    let mut rows: Vec<Vec<String>> = report
        .terms
        .iter()
        .map(|t| {
            let mut row = vec![t.location.clone(), format!("{:.4}", t.probability)];
            row.extend(cases.iter().map(|&c| {
                minutes(match c {
                    DelayCase::Best => t.best_minutes,
                    DelayCase::Worst => t.worst_minutes,
                })
            }));
            row
        })
        .collect();
    let mut total = vec!["expected".to_string(), "1.0000".to_string()];
    total.extend(cases.iter().map(|&c| minutes(report.minutes(c))));
    rows.push(total);

    let mut table = format!("{} delay (minutes)\n", scheme);
    table.push_str(&text_table(&header, &rows));

    let mut estimates = Vec::new();
    if let Some(cfg) = mc {
        for &c in &cases {
            let est = monte_carlo_delay(&loads, &cfg, &scenario.rates, c)?;
            table.push_str(&format!(
                "monte carlo {c}: {} +/- {:.4} (n={}, seed={}, closed form {})\n",
                minutes(est.mean_minutes),
                est.std_error,
                est.samples,
                cfg.seed,
                minutes(report.minutes(c)),
            ));
            estimates.push(est);
        }
    }

    let json = DelayJson {
        scheme,
        mode: mode.label().into(),
        report,
        monte_carlo: estimates,
    };
    Ok(Artifacts::new("delay", &json)
        .csv("delay_terms", csv_doc(&header, rows))
        .table(table))
}

fn comparison_tables(c: &Comparison) -> (String, String, String) {
    let delay_rows: Vec<Vec<String>> = Scheme::ALL
        .iter()
        .map(|&s| {
            vec![
                s.label().to_string(),
                minutes(c.minutes(s, DelayCase::Best)),
                minutes(c.minutes(s, DelayCase::Worst)),
            ]
        })
        .collect();
    let imp_rows: Vec<Vec<String>> = c
        .improvements
        .iter()
        .map(|i| {
            vec![
                i.reference.label().to_string(),
                i.candidate.label().to_string(),
                i.case.to_string(),
                minutes(i.reference_minutes),
                minutes(i.candidate_minutes),
                pct(i.percent),
            ]
        })
        .collect();
    let imp_header = [
        "reference",
        "candidate",
        "case",
        "reference_minutes",
        "candidate_minutes",
        "improvement_pct",
    ];
    let mut table = text_table(&["scheme", "best_minutes", "worst_minutes"], &delay_rows);
    table.push('\n');
    table.push_str(&text_table(&imp_header, &imp_rows));

    let bars = csv_doc(
        &["scheme", "case", "minutes"],
        c.delays
            .iter()
            .map(|d| vec![d.scheme.label().to_string(), d.case.to_string(), minutes(d.minutes)]),
    );
    let improvements = csv_doc(&imp_header, imp_rows);
    (table, bars, improvements)
}

#[derive(Serialize)]
struct CompareJson<'a> {
    scenario_digest: String,
    mode: String,
    comparison: &'a Comparison,
}

fn compare_cmd(scenario: &EdgeScenario, mode: PlacementMode) -> Result<Artifacts, Error> {
    let plan = plan_scenario(scenario, mode)?;
    let c = compare(scenario, &plan)?;
    let (table, bars, improvements) = comparison_tables(&c);
    let table = format!(
        "delay comparison ({} placement, R1={} GB/s, R2={} GB/s)\n{table}",
        mode, scenario.rates.edge_rate, scenario.rates.macro_rate
    );
    let json = CompareJson {
        scenario_digest: scenario.digest(),
        mode: mode.label().into(),
        comparison: &c,
    };
    Ok(Artifacts::new("compare", &json)
        .csv("delay_bars", bars)
        .csv("improvements", improvements)
        .table(table))
}

fn share_tables(summary: &SharingSummary, count_hosts: bool) -> (String, String) {
    let rows: Vec<Vec<String>> = summary
        .devices
        .iter()
        .map(|d| vec![d.device.clone(), gb(d.capacity_gb), d.patients.to_string()])
        .collect();
    let header = ["device", "capacity_gb", "patients"];
    let mut table = text_table(&header, &rows);
    table.push_str(&format!("total shared capacity: {} patients\n", summary.total));
    if count_hosts {
        table.push_str(&format!(
            "counting hosts of unshared devices: {} patients\n",
            summary.total_counting_hosts
        ));
    }
    (table, csv_doc(&header, rows))
}

fn share(scenario: &EdgeScenario, count_hosts: bool) -> Artifacts {
    let summary = sharing_summary(scenario);
    let (table, csv) = share_tables(&summary, count_hosts);
    Artifacts::new("share", &summary).csv("sharing", csv).table(table)
}

fn sweep(scenario: &EdgeScenario, min: f64, max: f64, step: f64) -> Result<Artifacts, Error> {
    let points = capacity_sweep(min, max, step, &scenario.policy)?;
    let rows: Vec<Vec<String>> = points
        .iter()
        .map(|p| vec![gb(p.capacity_gb), p.patients.to_string()])
        .collect();
    let header = ["capacity_gb", "patients"];
    Ok(Artifacts::new("sweep", &points)
        .csv("capacity_sweep", csv_doc(&header, rows.clone()))
        .table(text_table(&header, &rows)))
}

#[derive(Serialize)]
struct DvsJson {
    volumes: VolumeComparison,
    size_ratio: f64,
    video_conventional_gb: f64,
    video_dvs_estimate_gb: f64,
}

fn dvs_size(scenario: &EdgeScenario, timeline: Option<&Path>) -> Result<Artifacts, Error> {
    let timeline = match timeline {
        Some(p) => ActivityTimeline::from_csv_path(p)?,
        None => scenario.dvs.timeline.clone(),
    };
    let v = scenario.dvs.compare(&timeline)?;
    let conventional = scenario.records.video_conventional_gb;
    let estimate = dvs_scale(conventional, scenario.dvs.size_ratio)?;
    let rows = vec![
        vec!["duration_seconds".to_string(), format!("{}", v.duration_seconds)],
        vec!["frame_bytes".to_string(), format!("{}", v.frame_bytes)],
        vec!["event_bytes".to_string(), format!("{}", v.event_bytes)],
        vec!["event_to_frame_ratio".to_string(), format!("{:.6}", v.ratio)],
        vec!["video_conventional_gb".to_string(), gb(conventional)],
        vec!["video_dvs_estimate_gb".to_string(), format!("{estimate:.3}")],
    ];
    let header = ["quantity", "value"];
    let json = DvsJson {
        volumes: v,
        size_ratio: scenario.dvs.size_ratio,
        video_conventional_gb: conventional,
        video_dvs_estimate_gb: estimate,
    };
    Ok(Artifacts::new("dvs_size", &json)
        .csv("dvs_size", csv_doc(&header, rows.clone()))
        .table(text_table(&header, &rows)))
}

struct ObservedDelay {
    scheme: Scheme,
    case: DelayCase,
    minutes: f64,
}

fn parse_observation(s: &str) -> Result<ObservedDelay, Error> {
    let bad = |reason: String| Error::InvalidArgument {
        name: "observe",
        reason,
    };
    let parts: Vec<&str> = s.split(':').collect();
    let [scheme, case, value] = parts[..] else {
        return Err(bad(format!("expected scheme:case:minutes, got `{s}`")));
    };
    Ok(ObservedDelay {
        scheme: scheme.parse().map_err(bad)?,
        case: case.parse().map_err(bad)?,
        minutes: value
            .parse()
            .map_err(|e| bad(format!("bad minutes `{value}`: {e}")))?,
    })
}

#[derive(Serialize)]
struct CalibrateJson<'a> {
    observations: Vec<(String, String, f64)>,
    rates: emr_edge::delay::LinkRates,
    reproduced: &'a Comparison,
}

fn calibrate(
    scenario: &EdgeScenario,
    mode: PlacementMode,
    raw: &[String],
) -> Result<Artifacts, Error> {
    let observed: Vec<ObservedDelay> = if raw.is_empty() {
        vec![
            ObservedDelay {
                scheme: Scheme::EdgeDvs,
                case: DelayCase::Best,
                minutes: 9.872,
            },
            ObservedDelay {
                scheme: Scheme::Baseline,
                case: DelayCase::Worst,
                minutes: 247.467,
            },
        ]
    } else {
        raw.iter()
            .map(|s| parse_observation(s))
            .collect::<Result<_, _>>()?
    };
    let observations = observed
        .iter()
        .map(|o| {
            let loads = scheme_loads(scenario, mode, o.scheme)?;
            Ok(Observation::new(&loads, o.case, o.minutes))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let rates = calibrate_rates(&observations)?;
    let plan = plan_scenario(scenario, mode)?;
    let c = compare_at(scenario, &plan, &rates)?;
    let (cmp_table, bars, improvements) = comparison_tables(&c);

    let mut table = String::from("observed delays\n");
    let obs_rows: Vec<Vec<String>> = observed
        .iter()
        .map(|o| vec![o.scheme.to_string(), o.case.to_string(), minutes(o.minutes)])
        .collect();
    table.push_str(&text_table(&["scheme", "case", "minutes"], &obs_rows));
    table.push_str(&format!(
        "\nfitted rates: edge {:.9} GB/s, macro {:.9} GB/s (ratio {:.3})\n\n",
        rates.edge_rate,
        rates.macro_rate,
        rates.edge_rate / rates.macro_rate
    ));
    table.push_str(&cmp_table);

    let rates_csv = csv_doc(
        &["edge_rate", "macro_rate"],
        [vec![
            format!("{:.9}", rates.edge_rate),
            format!("{:.9}", rates.macro_rate),
        ]],
    );
    let json = CalibrateJson {
        observations: observed
            .iter()
            .map(|o| (o.scheme.to_string(), o.case.to_string(), o.minutes))
            .collect(),
        rates,
        reproduced: &c,
    };
    Ok(Artifacts::new("calibrate", &json)
        .csv("rates", rates_csv)
        .csv("delay_bars", bars)
        .csv("improvements", improvements)
        .table(table))
}

fn report(
    scenario: &EdgeScenario,
    mode: PlacementMode,
    out: Option<&Path>,
) -> Result<Artifacts, Error> {
    let mut r = run_report(scenario, mode)?;
    let allocation = allocate(scenario, mode)?;
    let (cmp_table, bars, improvements) = comparison_tables(&r.comparison);
    let (share_table, share_csv) = share_tables(&r.sharing, true);
    let sweep_points = capacity_sweep(0.0, 600.0, 1.0, &scenario.policy)?;
    let sweep_csv = csv_doc(
        &["capacity_gb", "patients"],
        sweep_points
            .iter()
            .map(|p| vec![gb(p.capacity_gb), p.patients.to_string()]),
    );

    let mut artifacts = Artifacts::new("report", &())
        .csv("allocation", allocation.csv[0].1.clone())
        .csv("delay_bars", bars)
        .csv("improvements", improvements)
        .csv("sharing", share_csv)
        .csv("capacity_sweep", sweep_csv);
    if let Some(dir) = out {
        r.emitted = artifacts
            .file_names()
            .iter()
            .map(|n| dir.join(n).display().to_string())
            .collect();
    }
    artifacts.json = serde_json::to_value(&r).expect("report serializes");

    let table = format!(
        "scenario {} (sha256 {})\n\n{}\n{}\n{}\ndvs: {:.0} bytes frame-based vs {:.0} bytes event-based over {} s (ratio {:.4})\n",
        r.scenario,
        r.scenario_digest,
        allocation.table,
        cmp_table,
        share_table,
        r.dvs.frame_bytes,
        r.dvs.event_bytes,
        r.dvs.duration_seconds,
        r.dvs.ratio,
    );
    Ok(artifacts.table(table))
}
