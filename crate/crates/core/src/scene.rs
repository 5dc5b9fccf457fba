//! Highway geometry: base stations, roadside surfaces and the vehicle track.
//!
//! The road runs along x from 0 to `length_D`. Base stations, surface centers
//! and the vehicle each sit on their own fixed (y, z) track, so every distance
//! used by the propagation kernels is a function of x coordinates only.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// A point in meters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn distance(&self, other: &Vec3) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        (dx * dx + dy * dy + dz * dz).sqrt()
    }
}

/// Euclidean distance between two points.
pub fn distance(p: Vec3, q: Vec3) -> f64 {
    p.distance(&q)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BaseStation {
    #[serde(flatten)]
    pub position: Vec3,
    pub gain: f64,
}

/// Shape parameters shared by every surface deployed in a scenario.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RisSpec {
    pub side_length: f64,
    pub element_gain: f64,
}

impl RisSpec {
    pub fn area(&self) -> f64 {
        self.side_length * self.side_length
    }
}

/// One square surface placed beside the road.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RisUnit {
    center: Vec3,
    side_length: f64,
    area: f64,
    element_gain: f64,
}

impl RisUnit {
    pub fn new(center: Vec3, side_length: f64, element_gain: f64) -> Result<Self> {
        if !center.is_finite() {
            return Err(Error::Invariant("RIS center finite".into()));
        }
        if !(side_length > 0.0 && side_length.is_finite()) {
            return Err(Error::Invariant("ris.side_length > 0".into()));
        }
        if !(element_gain > 0.0 && element_gain.is_finite()) {
            return Err(Error::Invariant("ris.element_gain > 0".into()));
        }
        if center.z < side_length / 2.0 {
            return Err(Error::Invariant("ris_height >= ris.side_length / 2".into()));
        }
        Ok(Self {
            center,
            side_length,
            area: side_length * side_length,
            element_gain,
        })
    }

    pub fn center(&self) -> Vec3 {
        self.center
    }

    pub fn side_length(&self) -> f64 {
        self.side_length
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn element_gain(&self) -> f64 {
        self.element_gain
    }
}

/// Complete, validated experiment configuration.
///
/// Built through [`load_scenario`] or [`RoadScenario::default`]; the
/// `with_*` methods return re-validated copies.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RoadScenario {
    #[serde(rename = "length_D")]
    length: f64,
    #[serde(rename = "width_W")]
    width: f64,
    wavelength: f64,
    vehicle_step: f64,
    min_spacing: f64,
    ris_height: f64,
    ris_y: f64,
    vehicle_height: f64,
    vehicle_y: f64,
    vehicle_gain: f64,
    ris: RisSpec,
    base_stations: Vec<BaseStation>,
}

/// Per-link distances for one surface and one vehicle position.
#[derive(Clone, Debug, PartialEq)]
pub struct LinkGeometry {
    /// Base station to surface, one per base station.
    pub incident: Vec<f64>,
    /// Surface to vehicle.
    pub reflected: f64,
    /// Base station to vehicle, one per base station.
    pub los: Vec<f64>,
}

pub const DEFAULT_LENGTH: f64 = 30_000.0;
pub const DEFAULT_WIDTH: f64 = 10.0;
pub const DEFAULT_WAVELENGTH: f64 = 0.0107;
pub const DEFAULT_VEHICLE_STEP: f64 = 10.0;
pub const DEFAULT_MIN_SPACING: f64 = 10.0;
pub const DEFAULT_RIS_HEIGHT: f64 = 12.0;
pub const DEFAULT_BS_HEIGHT: f64 = 1.5;
pub const DEFAULT_VEHICLE_HEIGHT: f64 = 1.0;
pub const DEFAULT_SIDE_LENGTH: f64 = 3.0;

// Input document. Every key is optional; absent keys resolve to defaults,
// some of which depend on length_D and width_W.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioDocument {
    #[serde(rename = "length_D")]
    length: Option<f64>,
    #[serde(rename = "width_W")]
    width: Option<f64>,
    wavelength: Option<f64>,
    vehicle_step: Option<f64>,
    min_spacing: Option<f64>,
    ris_height: Option<f64>,
    ris_y: Option<f64>,
    vehicle_height: Option<f64>,
    vehicle_y: Option<f64>,
    vehicle_gain: Option<f64>,
    ris: Option<RisDocument>,
    base_stations: Option<Vec<BaseStationDocument>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RisDocument {
    side_length: Option<f64>,
    element_gain: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BaseStationDocument {
    x: Option<f64>,
    y: Option<f64>,
    z: Option<f64>,
    gain: Option<f64>,
}

/// Parses and validates a JSON scenario document.
pub fn load_scenario(document: &str) -> Result<RoadScenario> {
    let doc: ScenarioDocument =
        serde_json::from_str(document).map_err(|e| Error::Parse(e.to_string()))?;
    RoadScenario::from_document(doc)
}

impl Default for RoadScenario {
    /// The two-base-station 30 km highway with 3 m x 3 m surfaces at 28 GHz.
    fn default() -> Self {
        RoadScenario::from_document(ScenarioDocument::default())
            .expect("built-in defaults are valid")
    }
}

impl RoadScenario {
    fn from_document(doc: ScenarioDocument) -> Result<Self> {
        let length = doc.length.unwrap_or(DEFAULT_LENGTH);
        let width = doc.width.unwrap_or(DEFAULT_WIDTH);
        let ris = doc.ris.unwrap_or_default();
        let base_stations = match doc.base_stations {
            None => vec![
                BaseStation {
                    position: Vec3::new(0.0, width / 2.0, DEFAULT_BS_HEIGHT),
                    gain: 1.0,
                },
                BaseStation {
                    position: Vec3::new(length, width / 2.0, DEFAULT_BS_HEIGHT),
                    gain: 1.0,
                },
            ],
            Some(list) => list
                .into_iter()
                .enumerate()
                .map(|(i, bs)| {
                    let x =
                        bs.x.ok_or_else(|| Error::MissingKey(format!("base_stations[{i}].x")))?;
                    Ok(BaseStation {
                        position: Vec3::new(
                            x,
                            bs.y.unwrap_or(width / 2.0),
                            bs.z.unwrap_or(DEFAULT_BS_HEIGHT),
                        ),
                        gain: bs.gain.unwrap_or(1.0),
                    })
                })
                .collect::<Result<Vec<_>>>()?,
        };
        let scenario = RoadScenario {
            length,
            width,
            wavelength: doc.wavelength.unwrap_or(DEFAULT_WAVELENGTH),
            vehicle_step: doc.vehicle_step.unwrap_or(DEFAULT_VEHICLE_STEP),
            min_spacing: doc.min_spacing.unwrap_or(DEFAULT_MIN_SPACING),
            ris_height: doc.ris_height.unwrap_or(DEFAULT_RIS_HEIGHT),
            ris_y: doc.ris_y.unwrap_or(-width / 2.0),
            vehicle_height: doc.vehicle_height.unwrap_or(DEFAULT_VEHICLE_HEIGHT),
            vehicle_y: doc.vehicle_y.unwrap_or(0.0),
            vehicle_gain: doc.vehicle_gain.unwrap_or(1.0),
            ris: RisSpec {
                side_length: ris.side_length.unwrap_or(DEFAULT_SIDE_LENGTH),
                element_gain: ris.element_gain.unwrap_or(1.0),
            },
            base_stations,
        };
        scenario.validate()?;
        Ok(scenario)
    }

    /// Default highway of a different length, base stations at both ends.
    pub fn highway(length: f64) -> Result<Self> {
        RoadScenario::from_document(ScenarioDocument {
            length: Some(length),
            ..ScenarioDocument::default()
        })
    }

    fn validate(&self) -> Result<()> {
        let finite = [
            ("length_D", self.length),
            ("width_W", self.width),
            ("wavelength", self.wavelength),
            ("vehicle_step", self.vehicle_step),
            ("min_spacing", self.min_spacing),
            ("ris_height", self.ris_height),
            ("ris_y", self.ris_y),
            ("vehicle_height", self.vehicle_height),
            ("vehicle_y", self.vehicle_y),
            ("vehicle_gain", self.vehicle_gain),
            ("ris.side_length", self.ris.side_length),
            ("ris.element_gain", self.ris.element_gain),
        ];
        for (key, value) in finite {
            if !value.is_finite() {
                return Err(Error::Invariant(format!("{key} finite")));
            }
        }
        let positive = [
            ("length_D", self.length),
            ("wavelength", self.wavelength),
            ("vehicle_step", self.vehicle_step),
            ("vehicle_gain", self.vehicle_gain),
            ("ris.side_length", self.ris.side_length),
            ("ris.element_gain", self.ris.element_gain),
        ];
        for (key, value) in positive {
            if value <= 0.0 {
                return Err(Error::Invariant(format!("{key} > 0")));
            }
        }
        if self.width < 0.0 {
            return Err(Error::Invariant("width_W >= 0".into()));
        }
        if self.min_spacing < self.ris.side_length {
            return Err(Error::Invariant("min_spacing >= ris.side_length".into()));
        }
        if self.ris_height < self.ris.side_length / 2.0 {
            return Err(Error::Invariant("ris_height >= ris.side_length / 2".into()));
        }
        if self.base_stations.is_empty() {
            return Err(Error::Invariant("base_stations non-empty".into()));
        }
        let on_track = |y: f64, z: f64, ty: f64, tz: f64| y == ty && z == tz;
        if on_track(
            self.ris_y,
            self.ris_height,
            self.vehicle_y,
            self.vehicle_height,
        ) {
            return Err(Error::Invariant(
                "RIS track (ris_y, ris_height) differs from vehicle track".into(),
            ));
        }
        for (i, bs) in self.base_stations.iter().enumerate() {
            let p = bs.position;
            if !p.is_finite() || !bs.gain.is_finite() {
                return Err(Error::Invariant(format!("base_stations[{i}] finite")));
            }
            if !(0.0..=self.length).contains(&p.x) {
                return Err(Error::Invariant(format!(
                    "base_stations[{i}].x within [0, length_D]"
                )));
            }
            if bs.gain <= 0.0 {
                return Err(Error::Invariant(format!("base_stations[{i}].gain > 0")));
            }
            if on_track(p.y, p.z, self.vehicle_y, self.vehicle_height) {
                return Err(Error::Invariant(format!(
                    "base_stations[{i}] off the vehicle track"
                )));
            }
            if on_track(p.y, p.z, self.ris_y, self.ris_height) {
                return Err(Error::Invariant(format!(
                    "base_stations[{i}] off the RIS track"
                )));
            }
        }
        Ok(())
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    pub fn vehicle_step(&self) -> f64 {
        self.vehicle_step
    }

    pub fn min_spacing(&self) -> f64 {
        self.min_spacing
    }

    pub fn ris_height(&self) -> f64 {
        self.ris_height
    }

    pub fn ris_y(&self) -> f64 {
        self.ris_y
    }

    pub fn vehicle_height(&self) -> f64 {
        self.vehicle_height
    }

    pub fn vehicle_y(&self) -> f64 {
        self.vehicle_y
    }

    pub fn vehicle_gain(&self) -> f64 {
        self.vehicle_gain
    }

    pub fn ris(&self) -> RisSpec {
        self.ris
    }

    pub fn base_stations(&self) -> &[BaseStation] {
        &self.base_stations
    }

    pub fn with_wavelength(&self, wavelength: f64) -> Result<Self> {
        let mut next = self.clone();
        next.wavelength = wavelength;
        next.validate()?;
        Ok(next)
    }

    pub fn with_length(&self, length: f64) -> Result<Self> {
        let mut next = self.clone();
        next.length = length;
        next.validate()?;
        Ok(next)
    }

    pub fn with_base_stations(&self, base_stations: Vec<BaseStation>) -> Result<Self> {
        let mut next = self.clone();
        next.base_stations = base_stations;
        next.validate()?;
        Ok(next)
    }

    pub fn with_ris_height(&self, ris_height: f64) -> Result<Self> {
        let mut next = self.clone();
        next.ris_height = ris_height;
        next.validate()?;
        Ok(next)
    }

    /// Resizes the deployed surfaces.
    ///
    /// `min_spacing` is raised to the new side length when it would otherwise
    /// let neighbouring surfaces overlap. With `couple_bs_height` every base
    /// station height follows `side_length / 2`.
    pub fn with_ris_side_length(&self, side_length: f64, couple_bs_height: bool) -> Result<Self> {
        let mut next = self.clone();
        next.ris.side_length = side_length;
        next.min_spacing = next.min_spacing.max(side_length);
        if couple_bs_height {
            for bs in &mut next.base_stations {
                bs.position.z = side_length / 2.0;
            }
        }
        next.validate()?;
        Ok(next)
    }

    pub fn ris_center(&self, x: f64) -> Vec3 {
        Vec3::new(x, self.ris_y, self.ris_height)
    }

    pub fn vehicle_at(&self, x: f64) -> Vec3 {
        Vec3::new(x, self.vehicle_y, self.vehicle_height)
    }

    /// A surface of the scenario's shape centred at road coordinate `x`.
    pub fn ris_unit(&self, x: f64) -> Result<RisUnit> {
        self.check_on_road("ris_x", x)?;
        RisUnit::new(
            self.ris_center(x),
            self.ris.side_length,
            self.ris.element_gain,
        )
    }

    pub(crate) fn check_on_road(&self, what: &'static str, x: f64) -> Result<()> {
        if (0.0..=self.length).contains(&x) {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                what,
                value: x,
                lo: 0.0,
                hi: self.length,
            })
        }
    }

    /// Vehicle sample positions `δ, 2δ, …` up to and including the last
    /// multiple not beyond `length_D`.
    pub fn vehicle_grid(&self) -> Vec<f64> {
        let count = (self.length / self.vehicle_step).floor() as usize;
        (1..=count)
            .map(|j| (j as f64 * self.vehicle_step).min(self.length))
            .collect()
    }

    /// Content hash of the resolved configuration.
    pub fn fingerprint(&self) -> String {
        let canonical = serde_json::to_string(self).expect("scenario serializes");
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }
}

/// Incident, reflected and direct distances for a surface at `ris_x` and a
/// vehicle at `vehicle_x`.
pub fn link_geometry(scenario: &RoadScenario, ris_x: f64, vehicle_x: f64) -> Result<LinkGeometry> {
    scenario.check_on_road("ris_x", ris_x)?;
    scenario.check_on_road("vehicle_x", vehicle_x)?;
    let ris = scenario.ris_center(ris_x);
    let vehicle = scenario.vehicle_at(vehicle_x);
    let stations = scenario.base_stations();
    Ok(LinkGeometry {
        incident: stations
            .iter()
            .map(|bs| bs.position.distance(&ris))
            .collect(),
        reflected: ris.distance(&vehicle),
        los: stations
            .iter()
            .map(|bs| bs.position.distance(&vehicle))
            .collect(),
    })
}
