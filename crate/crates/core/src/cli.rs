//! Command implementations behind the `ris-highway` binary.
//!
//! Each command resolves a scenario, runs one experiment and writes its
//! machine-readable output next to a run manifest. Numbers in CSV files use
//! nine significant digits so repeated runs are byte-identical.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::analysis::{
    gain_over_los, los_profile, power_profile, size_sweep_with, PowerProfile, ProfileSummary,
    SizeSweepGrid, SizeSweepOptions, SweepPlacement,
};
use crate::error::{Error, Result};
use crate::placement::{equidistant_place, place_ris_with, PlacementOptions, PlacementResult};
use crate::propagation::Mode;
use crate::scene::{load_scenario, RoadScenario};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Options shared by every command.
#[derive(Clone, Debug, Default)]
pub struct CommonOptions {
    /// Scenario document; built-in defaults when absent.
    pub scenario: Option<PathBuf>,
    pub wavelength: Option<f64>,
    /// Candidate stride for placement searches, in meters.
    pub step: Option<u64>,
    pub out: Option<PathBuf>,
}

impl CommonOptions {
    pub fn resolve_scenario(&self) -> Result<RoadScenario> {
        let scenario = match &self.scenario {
            Some(path) => load_scenario(&fs::read_to_string(path)?)?,
            None => RoadScenario::default(),
        };
        match self.wavelength {
            Some(w) => scenario.with_wavelength(w),
            None => Ok(scenario),
        }
    }

    fn placement_options(&self) -> Result<PlacementOptions> {
        let stride = self.step.unwrap_or(1);
        if stride == 0 {
            return Err(Error::Usage("--step must be at least 1".into()));
        }
        Ok(PlacementOptions {
            stride,
            ..PlacementOptions::default()
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub scenario_fingerprint: String,
    pub tool_version: String,
    pub parameters: BTreeMap<String, String>,
    pub resolved_scenario: RoadScenario,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(
        command: &str,
        scenario: &RoadScenario,
        parameters: BTreeMap<String, String>,
    ) -> Self {
        Self {
            command: command.to_string(),
            scenario_fingerprint: scenario.fingerprint(),
            tool_version: TOOL_VERSION.to_string(),
            parameters,
            resolved_scenario: scenario.clone(),
            outputs: Vec::new(),
        }
    }
}

/// Path of the manifest written alongside `output`.
pub fn manifest_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

fn write_with_manifest(out: &Path, contents: &str, mut manifest: RunManifest) -> Result<()> {
    fs::write(out, contents)?;
    manifest.outputs.push(out.display().to_string());
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    fs::write(manifest_path(out), json + "\n")?;
    Ok(())
}

/// `%.9g`-style formatting; infinities print as `inf` / `-inf`.
pub fn format_sig9(value: f64) -> String {
    if value.is_nan() {
        return "nan".into();
    }
    if value.is_infinite() {
        return if value > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if value == 0.0 {
        return "0".into();
    }
    let sci = format!("{value:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim_fraction(&format!("{value:.decimals$}")).to_string()
    } else {
        format!("{}e{exp}", trim_fraction(mantissa))
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn parse_count(spec: &str) -> Result<usize> {
    let n: usize = spec
        .trim()
        .parse()
        .map_err(|_| Error::Usage(format!("'{spec}' is not a count")))?;
    if n == 0 {
        return Err(Error::Usage("number of units must be at least 1".into()));
    }
    Ok(n)
}

/// Which surfaces a `sweep` evaluates.
#[derive(Clone, Debug, PartialEq)]
pub enum PlacementSpec {
    Optimize(usize),
    Equidistant(usize),
    Explicit(Vec<f64>),
}

impl FromStr for PlacementSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(n) = s.strip_prefix("optimize:") {
            return Ok(PlacementSpec::Optimize(parse_count(n)?));
        }
        if let Some(n) = s.strip_prefix("equidistant:") {
            return Ok(PlacementSpec::Equidistant(parse_count(n)?));
        }
        if s.is_empty() {
            return Ok(PlacementSpec::Explicit(Vec::new()));
        }
        s.split(',')
            .map(|x| {
                x.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Usage(format!("malformed placement '{s}'")))
            })
            .collect::<Result<_>>()
            .map(PlacementSpec::Explicit)
    }
}

/// Parses a comma-separated list of side lengths.
pub fn parse_lengths(s: &str) -> Result<Vec<f64>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Usage("side length list is empty".into()));
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| Error::Usage(format!("malformed side length '{x}'")))
        })
        .collect()
}

#[derive(Serialize)]
struct PlacementFile<'a> {
    mode: Mode,
    positions: &'a [u64],
    objective_values: &'a [f64],
    avg_power_db: f64,
}

pub fn cmd_optimize(common: &CommonOptions, mode: Mode, n_units: usize) -> Result<PlacementResult> {
    if n_units == 0 {
        return Err(Error::Usage("--n must be at least 1".into()));
    }
    let scenario = common.resolve_scenario()?;
    let options = common.placement_options()?;
    let result = place_ris_with(&scenario, n_units, mode, scenario.ris().area(), &options)?;
    if let Some(out) = &common.out {
        let file = PlacementFile {
            mode,
            positions: &result.positions,
            objective_values: &result.objective_values,
            avg_power_db: result.avg_power_db(),
        };
        let json = serde_json::to_string_pretty(&file).expect("placement serializes") + "\n";
        let params = BTreeMap::from([
            ("mode".to_string(), mode.to_string()),
            ("n".to_string(), n_units.to_string()),
            ("stride".to_string(), options.stride.to_string()),
        ]);
        write_with_manifest(out, &json, RunManifest::new("optimize", &scenario, params))?;
    }
    Ok(result)
}

fn resolve_placement(
    scenario: &RoadScenario,
    mode: Mode,
    spec: &PlacementSpec,
    options: &PlacementOptions,
) -> Result<Vec<f64>> {
    Ok(match spec {
        PlacementSpec::Optimize(n) => {
            place_ris_with(scenario, *n, mode, scenario.ris().area(), options)?.positions_m()
        }
        PlacementSpec::Equidistant(n) => equidistant_place(scenario.length(), *n)
            .into_iter()
            .map(|x| x as f64)
            .collect(),
        PlacementSpec::Explicit(xs) => xs.clone(),
    })
}

pub fn profile_csv(profile: &PowerProfile) -> String {
    let mut csv = String::from("vehicle_x_m,power_linear,power_db,capped\n");
    for s in &profile.samples {
        let _ = writeln!(
            csv,
            "{},{},{},{}",
            format_sig9(s.vehicle_x),
            format_sig9(s.power.linear),
            format_sig9(s.power.db),
            s.capped
        );
    }
    csv
}

/// Power profile for a placement spec; CSV goes to `--out` or is returned.
pub fn cmd_sweep(
    common: &CommonOptions,
    mode: Mode,
    spec: &PlacementSpec,
) -> Result<(PowerProfile, String)> {
    let scenario = common.resolve_scenario()?;
    let options = common.placement_options()?;
    let placement = resolve_placement(&scenario, mode, spec, &options)?;
    let profile = power_profile(&scenario, &placement, mode)?;
    let csv = profile_csv(&profile);
    if let Some(out) = &common.out {
        let params = BTreeMap::from([
            ("mode".to_string(), mode.to_string()),
            (
                "placement".to_string(),
                placement
                    .iter()
                    .map(|&x| format_sig9(x))
                    .collect::<Vec<_>>()
                    .join(","),
            ),
        ]);
        write_with_manifest(out, &csv, RunManifest::new("sweep", &scenario, params))?;
    }
    Ok((profile, csv))
}

pub fn size_sweep_csv(grid: &SizeSweepGrid) -> String {
    let mut csv = String::from("side_length_m,vehicle_x_m,power_db,capped\n");
    for (i, side) in grid.side_lengths.iter().enumerate() {
        for (j, x) in grid.vehicle_xs.iter().enumerate() {
            let _ = writeln!(
                csv,
                "{},{},{},{}",
                format_sig9(*side),
                format_sig9(*x),
                format_sig9(grid.power_db[i][j]),
                grid.cap_flags[i][j]
            );
        }
    }
    csv
}

pub fn cmd_size_sweep(
    common: &CommonOptions,
    mode: Mode,
    side_lengths: &[f64],
    n_units: usize,
    frozen: Option<Vec<f64>>,
    couple_bs_height: bool,
) -> Result<(SizeSweepGrid, String)> {
    if side_lengths.is_empty() {
        return Err(Error::Usage("side length list is empty".into()));
    }
    if n_units == 0 {
        return Err(Error::Usage("--n must be at least 1".into()));
    }
    let scenario = common.resolve_scenario()?;
    let options = SizeSweepOptions {
        placement: frozen.map_or(SweepPlacement::Reoptimize, SweepPlacement::Frozen),
        couple_bs_height,
        search: common.placement_options()?,
    };
    let grid = size_sweep_with(&scenario, mode, side_lengths, n_units, &options)?;
    let csv = size_sweep_csv(&grid);
    if let Some(out) = &common.out {
        let params = BTreeMap::from([
            ("mode".to_string(), mode.to_string()),
            ("n".to_string(), n_units.to_string()),
            (
                "side_lengths".to_string(),
                side_lengths
                    .iter()
                    .map(|&x| format_sig9(x))
                    .collect::<Vec<_>>()
                    .join(","),
            ),
            ("couple_bs_height".to_string(), couple_bs_height.to_string()),
        ]);
        write_with_manifest(out, &csv, RunManifest::new("size-sweep", &scenario, params))?;
    }
    Ok((grid, csv))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub n_units: usize,
    pub los_baseline: ProfileSummary,
    pub equidistant_focusing: ProfileSummary,
    pub equidistant_beamforming: ProfileSummary,
    pub optimized_focusing: ProfileSummary,
    pub optimized_beamforming: ProfileSummary,
}

pub fn cmd_compare(common: &CommonOptions, n_units: usize) -> Result<ComparisonReport> {
    if n_units == 0 {
        return Err(Error::Usage("--n must be at least 1".into()));
    }
    let scenario = common.resolve_scenario()?;
    let options = common.placement_options()?;
    let baseline = los_profile(&scenario);
    let summarize = |placement: &[f64], mode: Mode| -> Result<ProfileSummary> {
        let profile = power_profile(&scenario, placement, mode)?;
        Ok(ProfileSummary::new(
            &profile,
            &gain_over_los(&profile, &baseline)?,
        ))
    };
    let equidistant: Vec<f64> = equidistant_place(scenario.length(), n_units)
        .into_iter()
        .map(|x| x as f64)
        .collect();
    let optimized = |mode| -> Result<Vec<f64>> {
        Ok(
            place_ris_with(&scenario, n_units, mode, scenario.ris().area(), &options)?
                .positions_m(),
        )
    };
    let report = ComparisonReport {
        n_units,
        los_baseline: summarize(&[], Mode::Focusing)?,
        equidistant_focusing: summarize(&equidistant, Mode::Focusing)?,
        equidistant_beamforming: summarize(&equidistant, Mode::Beamforming)?,
        optimized_focusing: summarize(&optimized(Mode::Focusing)?, Mode::Focusing)?,
        optimized_beamforming: summarize(&optimized(Mode::Beamforming)?, Mode::Beamforming)?,
    };
    if let Some(out) = &common.out {
        let json = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
        let params = BTreeMap::from([("n".to_string(), n_units.to_string())]);
        write_with_manifest(out, &json, RunManifest::new("compare", &scenario, params))?;
    }
    Ok(report)
}
