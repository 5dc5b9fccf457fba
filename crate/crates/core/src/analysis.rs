//! Power profiles along the road, gains over the direct-path baseline and
//! surface-size sweeps.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::placement::{place_ris_with, PlacementOptions};
use crate::propagation::{power_cap_check, total_power, Mode, ReceivedPower};
use crate::scene::{RisUnit, RoadScenario};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProfileSample {
    pub vehicle_x: f64,
    pub power: ReceivedPower,
    /// Raw power exceeds the unit transmit power.
    pub capped: bool,
}

/// Received power at every vehicle grid point for one placement.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PowerProfile {
    pub samples: Vec<ProfileSample>,
    pub scenario_fingerprint: String,
    pub placement: Vec<f64>,
    pub mode: Mode,
    pub road_length: f64,
}

impl PowerProfile {
    pub fn vehicle_xs(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.vehicle_x).collect()
    }

    /// Index of the sample nearest the road midpoint (lower x on ties).
    pub fn midpoint_index(&self) -> usize {
        let mid = self.road_length / 2.0;
        let mut best = 0;
        for (i, s) in self.samples.iter().enumerate() {
            if (s.vehicle_x - mid).abs() < (self.samples[best].vehicle_x - mid).abs() {
                best = i;
            }
        }
        best
    }

    pub fn any_capped(&self) -> bool {
        self.samples.iter().any(|s| s.capped)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GainSummary {
    pub gains_db: Vec<f64>,
    pub midpoint_gain_db: f64,
    pub mean_gain_db: f64,
    pub min_gain_db: f64,
}

/// Compact report of one profile against its baseline.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProfileSummary {
    pub mode: Mode,
    pub placement: Vec<f64>,
    pub midpoint_gain_db: f64,
    pub mean_gain_db: f64,
    pub min_gain_db: f64,
    pub capped: bool,
}

impl ProfileSummary {
    pub fn new(profile: &PowerProfile, gains: &GainSummary) -> Self {
        Self {
            mode: profile.mode,
            placement: profile.placement.clone(),
            midpoint_gain_db: gains.midpoint_gain_db,
            mean_gain_db: gains.mean_gain_db,
            min_gain_db: gains.min_gain_db,
            capped: profile.any_capped(),
        }
    }
}

fn check_placement(scenario: &RoadScenario, placement: &[f64]) -> Result<Vec<RisUnit>> {
    for (i, &a) in placement.iter().enumerate() {
        if !(0.0..=scenario.length()).contains(&a) {
            return Err(Error::InvalidPlacement(format!(
                "x = {a} outside [0, {}]",
                scenario.length()
            )));
        }
        for &b in &placement[i + 1..] {
            if (a - b).abs() < scenario.min_spacing() {
                return Err(Error::InvalidPlacement(format!(
                    "{a} and {b} closer than min_spacing {}",
                    scenario.min_spacing()
                )));
            }
        }
    }
    placement.iter().map(|&x| scenario.ris_unit(x)).collect()
}

pub fn power_profile(
    scenario: &RoadScenario,
    placement: &[f64],
    mode: Mode,
) -> Result<PowerProfile> {
    let units = check_placement(scenario, placement)?;
    let samples = scenario
        .vehicle_grid()
        .par_iter()
        .map(|&v| {
            let check = power_cap_check(total_power(scenario, &units, mode, v));
            ProfileSample {
                vehicle_x: v,
                power: check.raw,
                capped: check.capped,
            }
        })
        .collect();
    Ok(PowerProfile {
        samples,
        scenario_fingerprint: scenario.fingerprint(),
        placement: placement.to_vec(),
        mode,
        road_length: scenario.length(),
    })
}

/// Direct-path-only profile.
pub fn los_profile(scenario: &RoadScenario) -> PowerProfile {
    power_profile(scenario, &[], Mode::Focusing).expect("empty placement is valid")
}

pub fn gain_over_los(profile: &PowerProfile, baseline: &PowerProfile) -> Result<GainSummary> {
    if profile.samples.len() != baseline.samples.len()
        || profile
            .samples
            .iter()
            .zip(&baseline.samples)
            .any(|(a, b)| a.vehicle_x != b.vehicle_x)
    {
        return Err(Error::GridMismatch);
    }
    if profile.samples.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let gains_db: Vec<f64> = profile
        .samples
        .iter()
        .zip(&baseline.samples)
        .map(|(a, b)| a.power.db - b.power.db)
        .collect();
    Ok(GainSummary {
        midpoint_gain_db: gains_db[profile.midpoint_index()],
        mean_gain_db: gains_db.iter().sum::<f64>() / gains_db.len() as f64,
        min_gain_db: gains_db.iter().copied().fold(f64::INFINITY, f64::min),
        gains_db,
    })
}

#[derive(Clone, Debug, Default, PartialEq)]
pub enum SweepPlacement {
    /// Re-run the greedy placement for every side length.
    #[default]
    Reoptimize,
    /// Keep these coordinates for every side length.
    Frozen(Vec<f64>),
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SizeSweepOptions {
    pub placement: SweepPlacement,
    /// Base station heights follow `side_length / 2`.
    pub couple_bs_height: bool,
    pub search: PlacementOptions,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SizeSweepGrid {
    pub side_lengths: Vec<f64>,
    pub vehicle_xs: Vec<f64>,
    /// Indexed `[side_length][vehicle_x]`.
    pub power_db: Vec<Vec<f64>>,
    pub cap_flags: Vec<Vec<bool>>,
    /// Placement used for each side length.
    pub placements: Vec<Vec<f64>>,
}

pub fn size_sweep(
    scenario: &RoadScenario,
    mode: Mode,
    side_lengths: &[f64],
    n_units: usize,
) -> Result<SizeSweepGrid> {
    size_sweep_with(
        scenario,
        mode,
        side_lengths,
        n_units,
        &SizeSweepOptions::default(),
    )
}

pub fn size_sweep_with(
    scenario: &RoadScenario,
    mode: Mode,
    side_lengths: &[f64],
    n_units: usize,
    options: &SizeSweepOptions,
) -> Result<SizeSweepGrid> {
    if side_lengths.is_empty() {
        return Err(Error::Usage("side length list is empty".into()));
    }
    if side_lengths.iter().any(|&l| !(l.is_finite() && l > 0.0)) {
        return Err(Error::Invariant("side lengths > 0".into()));
    }
    if side_lengths.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invariant("side lengths increasing".into()));
    }
    let rows: Vec<(Vec<f64>, PowerProfile)> = side_lengths
        .par_iter()
        .map(|&side| {
            let sized = scenario.with_ris_side_length(side, options.couple_bs_height)?;
            let placement = match &options.placement {
                SweepPlacement::Frozen(xs) => xs.clone(),
                SweepPlacement::Reoptimize => {
                    let area = sized.ris().area();
                    place_ris_with(&sized, n_units, mode, area, &options.search)?.positions_m()
                }
            };
            let profile = power_profile(&sized, &placement, mode)?;
            Ok((placement, profile))
        })
        .collect::<Result<_>>()?;
    let vehicle_xs = rows[0].1.vehicle_xs();
    Ok(SizeSweepGrid {
        side_lengths: side_lengths.to_vec(),
        vehicle_xs,
        power_db: rows
            .iter()
            .map(|(_, p)| p.samples.iter().map(|s| s.power.db).collect())
            .collect(),
        cap_flags: rows
            .iter()
            .map(|(_, p)| p.samples.iter().map(|s| s.capped).collect())
            .collect(),
        placements: rows.into_iter().map(|(x, _)| x).collect(),
    })
}
