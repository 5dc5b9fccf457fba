//! Received-power simulation and placement optimization for reconfigurable
//! intelligent surfaces (RIS) mounted beside a highway served by cell-free
//! base stations.
//!
//! - [`scene`]: scenario configuration, geometry and the vehicle grid.
//! - [`propagation`]: direct, specular and diffuse path amplitudes and the
//!   received power in focusing or beamforming mode.
//! - [`placement`]: greedy surface placement and an exhaustive oracle.
//! - [`analysis`]: power profiles, gains over the direct path, size sweeps.
//! - [`cli`]: the commands behind the `ris-highway` binary.
//!
//! ```
//! use ris_highway::{place_ris, Mode, RoadScenario};
//!
//! let highway = RoadScenario::default();
//! let placement = place_ris(&highway, 2, Mode::Focusing, highway.ris().area()).unwrap();
//! assert_eq!(placement.positions, vec![0, 30_000]);
//! ```

pub mod analysis;
pub mod cli;
pub mod error;
pub mod placement;
pub mod propagation;
pub mod scene;

pub use analysis::{
    gain_over_los, los_profile, power_profile, size_sweep, size_sweep_with, GainSummary,
    PowerProfile, ProfileSummary, SizeSweepGrid, SizeSweepOptions, SweepPlacement,
};
pub use error::{Error, Result};
pub use placement::{
    beamforming_score, brute_force_place, equidistant_place, focusing_score, place_ris,
    place_ris_with, PlacementOptions, PlacementResult, ReflectedDistance, SearchStrategy,
};
pub use propagation::{a_min, avg_power, power_cap_check, total_power, Mode, ReceivedPower};
pub use scene::{distance, link_geometry, load_scenario, RisUnit, RoadScenario, Vec3};
