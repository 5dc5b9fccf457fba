//! Field amplitudes and received power for the direct path and the
//! surface-assisted paths.
//!
//! All amplitudes are relative to a unit transmit amplitude per base station
//! and every path phase factor is fixed to 1, so contributions add as
//! nonnegative reals before squaring.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scene::{RisUnit, RoadScenario, Vec3};

const FOUR_PI: f64 = 4.0 * PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Surfaces focus onto the vehicle position: every link is diffuse-type
    /// and scales with area.
    Focusing,
    /// Surfaces steer toward the vehicle direction: a link is specular when
    /// the area reaches its critical size, diffuse otherwise.
    Beamforming,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "focusing" => Ok(Mode::Focusing),
            "beamforming" => Ok(Mode::Beamforming),
            _ => Err(Error::UnknownMode(s.to_string())),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Focusing => "focusing",
            Mode::Beamforming => "beamforming",
        })
    }
}

/// Power relative to unit transmit power, with its dB value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ReceivedPower {
    pub linear: f64,
    pub db: f64,
}

impl ReceivedPower {
    pub fn from_linear(linear: f64) -> Self {
        Self {
            linear,
            db: to_db(linear),
        }
    }

    pub fn from_amplitude(amplitude: f64) -> Self {
        Self::from_linear(amplitude * amplitude)
    }
}

/// `10 log10(p)`, with zero mapping to negative infinity.
pub fn to_db(linear: f64) -> f64 {
    if linear == 0.0 {
        f64::NEG_INFINITY
    } else {
        10.0 * linear.log10()
    }
}

/// Contribution of one (base station, surface) link.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LinkTerm {
    pub amplitude: f64,
    /// True when the link is resolved as specular.
    pub beta: bool,
    pub a_min: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AmplitudeBreakdown {
    pub los_amp: f64,
    /// Indexed `[base_station][surface]`.
    pub ris_terms: Vec<Vec<LinkTerm>>,
}

impl AmplitudeBreakdown {
    pub fn total_amplitude(&self) -> f64 {
        self.los_amp
            + self
                .ris_terms
                .iter()
                .flatten()
                .map(|t| t.amplitude)
                .sum::<f64>()
    }
}

/// Specular amplitude of one link: path loss over the unfolded length.
pub fn specular_link(incident: f64, reflected: f64, wavelength: f64) -> f64 {
    wavelength / (FOUR_PI * (incident + reflected))
}

/// Diffuse amplitude of one link: product path loss scaled by area.
pub fn diffuse_link(incident: f64, reflected: f64, area: f64) -> f64 {
    area / (FOUR_PI * incident * reflected)
}

/// Critical area at which the specular and diffuse link amplitudes coincide.
pub fn a_min(incident: f64, reflected: f64, wavelength: f64) -> Result<f64> {
    for d in [incident, reflected] {
        if !(d.is_finite() && d > 0.0) {
            return Err(Error::NonPositiveDistance(d));
        }
    }
    Ok(critical_area(incident, reflected, wavelength))
}

#[inline]
fn critical_area(incident: f64, reflected: f64, wavelength: f64) -> f64 {
    incident * reflected / (incident + reflected) * wavelength
}

/// Specular selector: the surface is large enough for this link.
pub fn link_beta(area: f64, threshold: f64) -> bool {
    area >= threshold
}

pub fn los_amplitude(scenario: &RoadScenario, vehicle_x: f64) -> f64 {
    let vehicle = scenario.vehicle_at(vehicle_x);
    los_at(scenario, &vehicle)
}

fn los_at(scenario: &RoadScenario, vehicle: &Vec3) -> f64 {
    let gv = scenario.vehicle_gain();
    scenario
        .base_stations()
        .iter()
        .map(|bs| {
            (bs.gain * gv).sqrt() * scenario.wavelength()
                / (FOUR_PI * bs.position.distance(vehicle))
        })
        .sum()
}

pub fn specular_amplitude(scenario: &RoadScenario, units: &[RisUnit], vehicle_x: f64) -> f64 {
    let vehicle = scenario.vehicle_at(vehicle_x);
    let gv = scenario.vehicle_gain();
    let mut sum = 0.0;
    for unit in units {
        let reflected = unit.center().distance(&vehicle);
        for bs in scenario.base_stations() {
            let incident = bs.position.distance(&unit.center());
            sum += (bs.gain * gv).sqrt()
                * unit.element_gain()
                * specular_link(incident, reflected, scenario.wavelength());
        }
    }
    sum
}

pub fn diffuse_amplitude(scenario: &RoadScenario, units: &[RisUnit], vehicle_x: f64) -> f64 {
    let vehicle = scenario.vehicle_at(vehicle_x);
    let gv = scenario.vehicle_gain();
    let mut sum = 0.0;
    for unit in units {
        let reflected = unit.center().distance(&vehicle);
        for bs in scenario.base_stations() {
            let incident = bs.position.distance(&unit.center());
            sum += (bs.gain * gv).sqrt()
                * unit.element_gain()
                * diffuse_link(incident, reflected, unit.area());
        }
    }
    sum
}

fn link_term(
    scenario: &RoadScenario,
    gain: f64,
    unit: &RisUnit,
    incident: f64,
    reflected: f64,
    mode: Mode,
) -> LinkTerm {
    let scale = (gain * scenario.vehicle_gain()).sqrt() * unit.element_gain();
    let threshold = critical_area(incident, reflected, scenario.wavelength());
    let beta = match mode {
        Mode::Focusing => false,
        Mode::Beamforming => link_beta(unit.area(), threshold),
    };
    let amplitude = if beta {
        specular_link(incident, reflected, scenario.wavelength())
    } else {
        diffuse_link(incident, reflected, unit.area())
    };
    LinkTerm {
        amplitude: scale * amplitude,
        beta,
        a_min: threshold,
    }
}

/// Amplitude added by one surface at `vehicle_x`, summed over base stations.
pub fn unit_amplitude(scenario: &RoadScenario, unit: &RisUnit, mode: Mode, vehicle_x: f64) -> f64 {
    let vehicle = scenario.vehicle_at(vehicle_x);
    let reflected = unit.center().distance(&vehicle);
    scenario
        .base_stations()
        .iter()
        .map(|bs| {
            let incident = bs.position.distance(&unit.center());
            link_term(scenario, bs.gain, unit, incident, reflected, mode).amplitude
        })
        .sum()
}

/// Received power with the per-link breakdown.
pub fn power_breakdown(
    scenario: &RoadScenario,
    units: &[RisUnit],
    mode: Mode,
    vehicle_x: f64,
) -> (ReceivedPower, AmplitudeBreakdown) {
    let vehicle = scenario.vehicle_at(vehicle_x);
    let reflected: Vec<f64> = units
        .iter()
        .map(|u| u.center().distance(&vehicle))
        .collect();
    let ris_terms = scenario
        .base_stations()
        .iter()
        .map(|bs| {
            units
                .iter()
                .zip(&reflected)
                .map(|(unit, &r)| {
                    let incident = bs.position.distance(&unit.center());
                    link_term(scenario, bs.gain, unit, incident, r, mode)
                })
                .collect()
        })
        .collect();
    let breakdown = AmplitudeBreakdown {
        los_amp: los_at(scenario, &vehicle),
        ris_terms,
    };
    (
        ReceivedPower::from_amplitude(breakdown.total_amplitude()),
        breakdown,
    )
}

pub fn total_power(
    scenario: &RoadScenario,
    units: &[RisUnit],
    mode: Mode,
    vehicle_x: f64,
) -> ReceivedPower {
    let amplitude = los_amplitude(scenario, vehicle_x)
        + units
            .iter()
            .map(|u| unit_amplitude(scenario, u, mode, vehicle_x))
            .sum::<f64>();
    ReceivedPower::from_amplitude(amplitude)
}

/// Mean linear received power over the vehicle grid.
pub fn avg_power(scenario: &RoadScenario, units: &[RisUnit], mode: Mode) -> Result<f64> {
    let grid = scenario.vehicle_grid();
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let sum: f64 = grid
        .iter()
        .map(|&x| total_power(scenario, units, mode, x).linear)
        .sum();
    Ok(sum / grid.len() as f64)
}

/// Result of comparing a received power with the unit transmit power.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CapCheck {
    pub raw: ReceivedPower,
    pub clamped: ReceivedPower,
    /// Raised when the raw value exceeds the transmit power.
    pub capped: bool,
}

pub fn power_cap_check(power: ReceivedPower) -> CapCheck {
    let capped = power.linear > 1.0;
    CapCheck {
        raw: power,
        clamped: if capped {
            ReceivedPower::from_linear(1.0)
        } else {
            power
        },
        capped,
    }
}
