//! Greedy placement of surfaces along the road, plus the exhaustive search
//! used to check it.
//!
//! Each greedy step scores every still-feasible integer coordinate with the
//! mode's reduced objective, keeps the best (smallest x among ties) and
//! removes the open Δ-neighbourhood around it. Neither reduced objective
//! depends on the vehicle, so a step only looks at incident distances.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::propagation::{avg_power, los_amplitude, to_db, unit_amplitude, Mode};
use crate::scene::{RisUnit, RoadScenario};

/// Relative tolerance under which two scores are treated as tied.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Default cap on joint candidates for [`brute_force_place`].
pub const DEFAULT_BRUTE_FORCE_BUDGET: f64 = 1e8;

/// Integer road coordinates still available for a surface.
#[derive(Clone, Debug)]
pub struct FeasibleSet {
    allowed: Vec<bool>,
    chosen: Vec<u64>,
    min_spacing: f64,
}

impl FeasibleSet {
    /// All integers in `[0, length_D]`.
    pub fn new(scenario: &RoadScenario) -> Self {
        let upper = scenario.length().floor() as usize;
        Self {
            allowed: vec![true; upper + 1],
            chosen: Vec::new(),
            min_spacing: scenario.min_spacing(),
        }
    }

    pub fn contains(&self, x: u64) -> bool {
        self.allowed.get(x as usize).copied().unwrap_or(false)
    }

    /// Records a placement and drops every `x` with `|x - center| < Δ`.
    pub fn exclude_around(&mut self, center: u64) {
        let reach = self.min_spacing.ceil() as u64;
        let lo = center.saturating_sub(reach);
        let hi = (center + reach).min(self.allowed.len() as u64 - 1);
        for x in lo..=hi {
            if (x as f64 - center as f64).abs() < self.min_spacing {
                self.allowed[x as usize] = false;
            }
        }
        self.chosen.push(center);
    }

    /// Members that are multiples of `stride`, ascending.
    pub fn members(&self, stride: u64) -> impl Iterator<Item = u64> + '_ {
        let stride = stride.max(1) as usize;
        self.allowed
            .iter()
            .enumerate()
            .step_by(stride)
            .filter(|(_, &ok)| ok)
            .map(|(x, _)| x as u64)
    }

    pub fn is_empty(&self) -> bool {
        !self.allowed.iter().any(|&ok| ok)
    }

    pub fn chosen(&self) -> &[u64] {
        &self.chosen
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlacementResult {
    pub mode: Mode,
    /// Integer x coordinates in placement order.
    pub positions: Vec<u64>,
    /// Score of each position when it was selected.
    pub objective_values: Vec<f64>,
    /// Mean linear power over the vehicle grid with all surfaces in place.
    pub avg_power_achieved: f64,
}

impl PlacementResult {
    pub fn positions_m(&self) -> Vec<f64> {
        self.positions.iter().map(|&x| x as f64).collect()
    }

    pub fn sorted_positions(&self) -> Vec<u64> {
        let mut p = self.positions.clone();
        p.sort_unstable();
        p
    }

    pub fn avg_power_db(&self) -> f64 {
        to_db(self.avg_power_achieved)
    }
}

/// How the reflected distance enters the beamforming score.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ReflectedDistance {
    /// Limit of the reflected distance growing without bound relative to the
    /// incident one; the critical area becomes `r_i λ` and the score reduces
    /// to `Π_k |1 - r_i^k λ / A|`.
    #[default]
    FarField,
    /// Grid-mean surface-to-vehicle distance.
    GridMean,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SearchStrategy {
    /// Score every feasible candidate.
    #[default]
    Full,
    /// Score every `coarse`-th candidate, then rescan `±window` around the
    /// coarse winner at the base stride.
    CoarseRefine { coarse: u64, window: u64 },
}

impl SearchStrategy {
    pub const ACCELERATED: SearchStrategy = SearchStrategy::CoarseRefine {
        coarse: 100,
        window: 200,
    };
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlacementOptions {
    /// Candidate coordinates are the multiples of `stride`.
    pub stride: u64,
    pub search: SearchStrategy,
    pub reflected: ReflectedDistance,
}

impl Default for PlacementOptions {
    fn default() -> Self {
        Self {
            stride: 1,
            search: SearchStrategy::Full,
            reflected: ReflectedDistance::FarField,
        }
    }
}

fn incident_distances(scenario: &RoadScenario, x: f64) -> impl Iterator<Item = f64> + '_ {
    let center = scenario.ris_center(x);
    scenario
        .base_stations()
        .iter()
        .map(move |bs| bs.position.distance(&center))
}

/// Focusing score to maximize: `Σ_k 1/r_i^k`.
///
/// This is the per-surface sum of `1/(r_i r_r)` with the common vehicle
/// factor `1/r_r` removed.
pub fn focusing_score(scenario: &RoadScenario, x: f64) -> Result<f64> {
    scenario.check_on_road("ris_x", x)?;
    Ok(incident_distances(scenario, x).map(|r| 1.0 / r).sum())
}

/// Product form `Π_k r_i^k` (to minimize); shares its optimum with
/// [`focusing_score`] on two-station roads.
pub fn focusing_product(scenario: &RoadScenario, x: f64) -> Result<f64> {
    scenario.check_on_road("ris_x", x)?;
    Ok(incident_distances(scenario, x).product())
}

/// Literal grid sum `Σ_j Σ_k 1/(r_i^k r_r(j))` of one surface's diffuse
/// path-loss factors.
///
/// Kept for diagnostics. Its maximum is pulled toward vehicle grid points,
/// so it is not the objective the greedy search uses.
pub fn focusing_grid_score(scenario: &RoadScenario, x: f64) -> Result<f64> {
    scenario.check_on_road("ris_x", x)?;
    let center = scenario.ris_center(x);
    let inv_incident: f64 = incident_distances(scenario, x).map(|r| 1.0 / r).sum();
    Ok(scenario
        .vehicle_grid()
        .iter()
        .map(|&v| inv_incident / center.distance(&scenario.vehicle_at(v)))
        .sum())
}

/// Mean surface-to-vehicle distance over the vehicle grid.
pub fn mean_reflected_distance(scenario: &RoadScenario, x: f64) -> f64 {
    let center = scenario.ris_center(x);
    let grid = scenario.vehicle_grid();
    grid.iter()
        .map(|&v| center.distance(&scenario.vehicle_at(v)))
        .sum::<f64>()
        / grid.len() as f64
}

/// Beamforming score to minimize, in the far-field reading.
pub fn beamforming_score(scenario: &RoadScenario, area: f64, x: f64) -> Result<f64> {
    beamforming_score_with(scenario, area, x, ReflectedDistance::FarField)
}

/// `Π_k |(r_i^k + r_r) - r_i^k r_r λ / A|`, zero where the area equals the
/// critical area of a link.
pub fn beamforming_score_with(
    scenario: &RoadScenario,
    area: f64,
    x: f64,
    reflected: ReflectedDistance,
) -> Result<f64> {
    scenario.check_on_road("ris_x", x)?;
    if !(area.is_finite() && area > 0.0) {
        return Err(Error::Invariant("area > 0".into()));
    }
    let lambda = scenario.wavelength();
    Ok(match reflected {
        ReflectedDistance::FarField => incident_distances(scenario, x)
            .map(|ri| (1.0 - ri * lambda / area).abs())
            .product(),
        ReflectedDistance::GridMean => {
            let rr = mean_reflected_distance(scenario, x);
            incident_distances(scenario, x)
                .map(|ri| ((ri + rr) - ri * rr * lambda / area).abs())
                .product()
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sense {
    Maximize,
    Minimize,
}

fn ties(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= TIE_TOLERANCE * a.abs().max(b.abs())
}

/// Best candidate, smallest x among (tolerance-)ties. `candidates` ascending.
fn select(
    candidates: &[u64],
    score: &(dyn Fn(u64) -> f64 + Sync),
    sense: Sense,
) -> Option<(u64, f64)> {
    let scores: Vec<f64> = candidates.par_iter().map(|&x| score(x)).collect();
    let better = |a: f64, b: f64| match sense {
        Sense::Maximize => a > b,
        Sense::Minimize => a < b,
    };
    let best = scores
        .iter()
        .copied()
        .reduce(|acc, s| if better(s, acc) { s } else { acc })?;
    candidates
        .iter()
        .zip(&scores)
        .find(|(_, &s)| ties(s, best))
        .map(|(&x, &s)| (x, s))
}

fn search(
    set: &FeasibleSet,
    options: &PlacementOptions,
    score: &(dyn Fn(u64) -> f64 + Sync),
    sense: Sense,
) -> Option<(u64, f64)> {
    let stride = options.stride.max(1);
    match options.search {
        SearchStrategy::Full => {
            let candidates: Vec<u64> = set.members(stride).collect();
            select(&candidates, score, sense)
        }
        SearchStrategy::CoarseRefine { coarse, window } => {
            let coarse_stride = coarse.max(stride);
            let coarse_candidates: Vec<u64> = set
                .members(stride)
                .filter(|x| x % coarse_stride == 0)
                .collect();
            let coarse_scores: Vec<f64> = coarse_candidates.par_iter().map(|&x| score(x)).collect();
            let Some((_, best)) = select(&coarse_candidates, score, sense) else {
                let candidates: Vec<u64> = set.members(stride).collect();
                return select(&candidates, score, sense);
            };
            // refine around every coarse winner, mirrored ties included
            let centres: Vec<u64> = coarse_candidates
                .iter()
                .zip(&coarse_scores)
                .filter(|(_, &s)| ties(s, best))
                .map(|(&x, _)| x)
                .collect();
            let candidates: Vec<u64> = set
                .members(stride)
                .filter(|&x| centres.iter().any(|&c| x.abs_diff(c) <= window))
                .collect();
            select(&candidates, score, sense)
        }
    }
}

/// Greedy placement of `n_units` surfaces of area `area` with default options.
pub fn place_ris(
    scenario: &RoadScenario,
    n_units: usize,
    mode: Mode,
    area: f64,
) -> Result<PlacementResult> {
    place_ris_with(scenario, n_units, mode, area, &PlacementOptions::default())
}

pub fn place_ris_with(
    scenario: &RoadScenario,
    n_units: usize,
    mode: Mode,
    area: f64,
    options: &PlacementOptions,
) -> Result<PlacementResult> {
    if n_units == 0 {
        return Err(Error::Usage("number of units must be at least 1".into()));
    }
    if !(area.is_finite() && area > 0.0) {
        return Err(Error::Invariant("area > 0".into()));
    }
    let lambda = scenario.wavelength();
    let stations: Vec<_> = scenario.base_stations().to_vec();
    let incident = |x: u64| {
        let center = scenario.ris_center(x as f64);
        stations.iter().map(move |bs| bs.position.distance(&center))
    };
    let (score, sense): (Box<dyn Fn(u64) -> f64 + Sync + '_>, Sense) =
        match (mode, options.reflected) {
            (Mode::Focusing, _) => (
                Box::new(|x| incident(x).map(|r| 1.0 / r).sum()),
                Sense::Maximize,
            ),
            (Mode::Beamforming, ReflectedDistance::FarField) => (
                Box::new(move |x| {
                    incident(x)
                        .map(|ri| (1.0 - ri * lambda / area).abs())
                        .product()
                }),
                Sense::Minimize,
            ),
            (Mode::Beamforming, ReflectedDistance::GridMean) => (
                Box::new(move |x| {
                    beamforming_score_with(scenario, area, x as f64, ReflectedDistance::GridMean)
                        .expect("candidate lies on the road")
                }),
                Sense::Minimize,
            ),
        };

    let mut set = FeasibleSet::new(scenario);
    let mut positions = Vec::with_capacity(n_units);
    let mut objective_values = Vec::with_capacity(n_units);
    for placed in 0..n_units {
        let (x, value) = search(&set, options, &*score, sense).ok_or(Error::Infeasible {
            placed,
            requested: n_units,
        })?;
        set.exclude_around(x);
        positions.push(x);
        objective_values.push(value);
    }

    let units = units_with_area(scenario, &positions, area)?;
    Ok(PlacementResult {
        mode,
        positions,
        objective_values,
        avg_power_achieved: avg_power(scenario, &units, mode)?,
    })
}

pub(crate) fn units_with_area(
    scenario: &RoadScenario,
    xs: &[u64],
    area: f64,
) -> Result<Vec<RisUnit>> {
    let side = area.sqrt();
    let element_gain = scenario.ris().element_gain;
    xs.iter()
        .map(|&x| {
            scenario.check_on_road("ris_x", x as f64)?;
            RisUnit::new(scenario.ris_center(x as f64), side, element_gain)
        })
        .collect()
}

/// Exhaustive joint search over multiples of `step`, maximizing the mean
/// received power directly.
pub fn brute_force_place(
    scenario: &RoadScenario,
    n_units: usize,
    mode: Mode,
    area: f64,
    step: u64,
) -> Result<PlacementResult> {
    brute_force_place_with_budget(
        scenario,
        n_units,
        mode,
        area,
        step,
        DEFAULT_BRUTE_FORCE_BUDGET,
    )
}

pub fn brute_force_place_with_budget(
    scenario: &RoadScenario,
    n_units: usize,
    mode: Mode,
    area: f64,
    step: u64,
    budget: f64,
) -> Result<PlacementResult> {
    if n_units == 0 || step == 0 {
        return Err(Error::Usage("n_units and step must be at least 1".into()));
    }
    let joint = (scenario.length() / step as f64).powi(n_units as i32);
    if joint > budget {
        return Err(Error::BudgetExceeded {
            candidates: joint,
            budget,
        });
    }
    let grid = scenario.vehicle_grid();
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let candidates: Vec<u64> = FeasibleSet::new(scenario).members(step).collect();
    let side = area.sqrt();
    let element_gain = scenario.ris().element_gain;

    // amplitude each candidate adds at each grid point; the total amplitude
    // at a grid point is the LoS amplitude plus the sum over chosen surfaces
    let los: Vec<f64> = grid.iter().map(|&v| los_amplitude(scenario, v)).collect();
    let table: Vec<Vec<f64>> = candidates
        .par_iter()
        .map(|&x| {
            let unit = RisUnit::new(scenario.ris_center(x as f64), side, element_gain)?;
            Ok(grid
                .iter()
                .map(|&v| unit_amplitude(scenario, &unit, mode, v))
                .collect())
        })
        .collect::<Result<_>>()?;

    let spacing = scenario.min_spacing();
    let objective = |chosen: &[usize]| -> f64 {
        let mut sum = 0.0;
        for (j, &base) in los.iter().enumerate() {
            let amp = base + chosen.iter().map(|&c| table[c][j]).sum::<f64>();
            sum += amp * amp;
        }
        sum / los.len() as f64
    };

    // best over all increasing index tuples starting with `first`
    let search_from = |first: usize| -> Option<(f64, Vec<usize>)> {
        let mut best: Option<(f64, Vec<usize>)> = None;
        let mut stack = vec![first];
        enumerate(&candidates, spacing, n_units, &mut stack, &mut |chosen| {
            let value = objective(chosen);
            if best
                .as_ref()
                .is_none_or(|(b, _)| value > *b && !ties(value, *b))
            {
                best = Some((value, chosen.to_vec()));
            }
        });
        best
    };
    let per_first: Vec<Option<(f64, Vec<usize>)>> = (0..candidates.len())
        .into_par_iter()
        .map(search_from)
        .collect();
    let mut best: Option<(f64, Vec<usize>)> = None;
    for candidate in per_first.into_iter().flatten() {
        if best
            .as_ref()
            .is_none_or(|(b, _)| candidate.0 > *b && !ties(candidate.0, *b))
        {
            best = Some(candidate);
        }
    }
    let (value, chosen) = best.ok_or(Error::Infeasible {
        placed: 0,
        requested: n_units,
    })?;
    Ok(PlacementResult {
        mode,
        positions: chosen.iter().map(|&c| candidates[c]).collect(),
        objective_values: vec![value],
        avg_power_achieved: value,
    })
}

// Depth-first walk over increasing index tuples whose coordinates respect the
// spacing constraint, in lexicographic order.
fn enumerate(
    candidates: &[u64],
    spacing: f64,
    n_units: usize,
    stack: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if stack.len() == n_units {
        visit(stack);
        return;
    }
    let last = *stack.last().expect("stack starts non-empty");
    for next in last + 1..candidates.len() {
        let x = candidates[next] as f64;
        if stack
            .iter()
            .all(|&c| (x - candidates[c] as f64).abs() >= spacing)
        {
            stack.push(next);
            enumerate(candidates, spacing, n_units, stack, visit);
            stack.pop();
        }
    }
}

/// `j·D/(N+1)` for `j = 1..=N`, rounded to whole meters.
pub fn equidistant_place(length: f64, n_units: usize) -> Vec<u64> {
    (1..=n_units)
        .map(|j| (j as f64 * length / (n_units + 1) as f64).round() as u64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn default_area() -> f64 {
        RoadScenario::default().ris().area()
    }

    #[test]
    fn feasible_set_uses_open_exclusion() {
        let s = RoadScenario::default();
        let mut set = FeasibleSet::new(&s);
        assert!(set.contains(0) && set.contains(30_000) && !set.contains(30_001));
        set.exclude_around(839);
        assert!(!set.contains(839));
        assert!(!set.contains(830) && !set.contains(848));
        assert!(set.contains(829) && set.contains(849));
        assert_eq!(set.chosen(), &[839]);
        assert_eq!(set.members(1000).take(2).collect::<Vec<_>>(), vec![0, 1000]);
    }

    #[test]
    fn focusing_score_prefers_the_road_ends() {
        let s = RoadScenario::default();
        let at = |x: f64| focusing_score(&s, x).unwrap();
        assert_eq!(at(0.0), at(30_000.0));
        for x in [1.0, 10.0, 500.0, 14_999.0] {
            assert!(ties(at(x), at(30_000.0 - x)), "{x}");
        }
        let mut prev = at(0.0);
        for x in 1..=100 {
            let cur = at(x as f64);
            assert!(cur < prev, "not decreasing at {x}");
            prev = cur;
        }
        assert!(focusing_score(&s, -1.0).is_err());
    }

    #[test]
    fn focusing_argmax_is_zero_and_matches_product_argmin() {
        let s = RoadScenario::default();
        let xs: Vec<u64> = (0..=30_000).collect();
        let (best, _) = select(
            &xs,
            &|x| focusing_score(&s, x as f64).unwrap(),
            Sense::Maximize,
        )
        .unwrap();
        let (prod, _) = select(
            &xs,
            &|x| focusing_product(&s, x as f64).unwrap(),
            Sense::Minimize,
        )
        .unwrap();
        assert_eq!(best, 0);
        assert_eq!(prod, best);
    }

    #[test]
    fn grid_score_is_pulled_onto_vehicle_points() {
        let s = RoadScenario::default();
        let xs: Vec<u64> = (0..=30_000).collect();
        let (best, _) = select(
            &xs,
            &|x| focusing_grid_score(&s, x as f64).unwrap(),
            Sense::Maximize,
        )
        .unwrap();
        assert_ne!(best, 0);
        assert!(best > 29_990);
    }

    /// Root of `sqrt(x² + h²) = A/λ` for the near station, h² the squared
    /// lateral-plus-vertical offset between station and surface tracks.
    fn far_field_root(s: &RoadScenario, area: f64) -> f64 {
        let bs = s.base_stations()[0].position;
        let c = s.ris_center(0.0);
        let h2 = (bs.y - c.y).powi(2) + (bs.z - c.z).powi(2);
        ((area / s.wavelength()).powi(2) - h2).sqrt()
    }

    #[test]
    fn beamforming_argmin_sits_at_the_critical_distance() {
        let s = RoadScenario::default();
        let xs: Vec<u64> = (0..=30_000).collect();
        let (x, _) = select(
            &xs,
            &|x| beamforming_score(&s, 9.0, x as f64).unwrap(),
            Sense::Minimize,
        )
        .unwrap();
        assert!((x as f64 - 839.0).abs() <= 15.0, "{x}");
        assert!((x as f64 - far_field_root(&s, 9.0)).abs() <= 1.0);
        // critical area at the chosen point in the far-field limit
        let ri = incident_distances(&s, x as f64).next().unwrap();
        assert!((ri * s.wavelength() - 9.0).abs() / 9.0 < 0.02);

        let (x18, _) = select(
            &xs,
            &|x| beamforming_score(&s, 18.0, x as f64).unwrap(),
            Sense::Minimize,
        )
        .unwrap();
        assert!((x18 as f64 - far_field_root(&s, 18.0)).abs() <= 1.0);
        assert!((x18 as f64 - 1681.0).abs() <= 2.0, "{x18}");

        assert!(beamforming_score(&s, 0.0, 10.0).is_err());
        assert!(beamforming_score(&s, 9.0, 30_000.5).is_err());
    }

    #[test]
    fn beamforming_scores_are_mirror_symmetric() {
        let s = RoadScenario::default();
        for x in [0.0, 841.0, 5_000.0, 14_000.0] {
            let a = beamforming_score(&s, 9.0, x).unwrap();
            let b = beamforming_score(&s, 9.0, 30_000.0 - x).unwrap();
            assert!(ties(a, b) || (a - b).abs() / a.max(b) < 1e-9, "{x}");
        }
    }

    #[test]
    fn grid_mean_reading_lands_further_out() {
        let s = RoadScenario::default();
        let xs: Vec<u64> = (0..=3_000).collect();
        let (x, _) = select(
            &xs,
            &|x| beamforming_score_with(&s, 9.0, x as f64, ReflectedDistance::GridMean).unwrap(),
            Sense::Minimize,
        )
        .unwrap();
        assert!(x > 880 && x < 910, "{x}");
    }

    #[test]
    fn focusing_greedy_placements() {
        let s = RoadScenario::default();
        let a = default_area();
        let two = place_ris(&s, 2, Mode::Focusing, a).unwrap();
        assert_eq!(two.positions, vec![0, 30_000]);
        let three = place_ris(&s, 3, Mode::Focusing, a).unwrap();
        assert_eq!(three.sorted_positions(), vec![0, 10, 30_000]);
        let four = place_ris(&s, 4, Mode::Focusing, a).unwrap();
        assert_eq!(four.sorted_positions(), vec![0, 10, 29_990, 30_000]);
        assert_eq!(four.objective_values.len(), 4);
        assert!(four.avg_power_achieved > two.avg_power_achieved);
    }

    #[test]
    fn beamforming_greedy_placements() {
        let s = RoadScenario::default();
        let four = place_ris(&s, 4, Mode::Beamforming, 9.0).unwrap();
        let p = four.sorted_positions();
        let expected = [829.0, 839.0, 29_161.0, 29_171.0];
        for (got, want) in p.iter().zip(expected) {
            assert!((*got as f64 - want).abs() <= 15.0, "{p:?}");
        }
        assert_eq!(p[1] - p[0], 10);
        assert_eq!(p[3] - p[2], 10);
        let two = place_ris(&s, 2, Mode::Beamforming, 9.0).unwrap();
        assert_eq!(two.positions.iter().sum::<u64>(), 30_000);
    }

    #[test]
    fn coarse_refine_matches_full_scan() {
        let s = RoadScenario::default();
        let accelerated = PlacementOptions {
            search: SearchStrategy::ACCELERATED,
            ..PlacementOptions::default()
        };
        for mode in [Mode::Focusing, Mode::Beamforming] {
            for n in [2, 4] {
                let full = place_ris(&s, n, mode, 9.0).unwrap();
                let fast = place_ris_with(&s, n, mode, 9.0, &accelerated).unwrap();
                assert_eq!(full, fast, "{mode} {n}");
            }
        }
    }

    #[test]
    fn placement_is_deterministic() {
        let s = RoadScenario::default();
        let a = place_ris(&s, 3, Mode::Beamforming, 9.0).unwrap();
        let b = place_ris(&s, 3, Mode::Beamforming, 9.0).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn exhausted_feasible_set() {
        let s = RoadScenario::highway(15.0).unwrap();
        let err = place_ris(&s, 3, Mode::Focusing, 9.0).unwrap_err();
        assert!(
            matches!(err, Error::Infeasible { placed, requested: 3 } if placed < 3),
            "{err}"
        );
        assert!(place_ris(&s, 0, Mode::Focusing, 9.0).is_err());
    }

    #[test]
    fn equidistant_examples() {
        assert_eq!(equidistant_place(30_000.0, 2), vec![10_000, 20_000]);
        assert_eq!(equidistant_place(30_000.0, 1), vec![15_000]);
        assert_eq!(equidistant_place(30_000.0, 3), vec![7_500, 15_000, 22_500]);
    }

    #[test]
    fn brute_force_degenerate_grid() {
        let s = RoadScenario::highway(1000.0).unwrap();
        let r = brute_force_place(&s, 1, Mode::Focusing, 9.0, 1000).unwrap();
        assert!(r.positions == vec![0] || r.positions == vec![1000]);
    }

    #[test]
    fn brute_force_budget() {
        let s = RoadScenario::default();
        let err = brute_force_place(&s, 3, Mode::Focusing, 9.0, 10).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn brute_force_objective_is_avg_power() {
        let s = RoadScenario::highway(1000.0).unwrap();
        for mode in [Mode::Focusing, Mode::Beamforming] {
            let r = brute_force_place(&s, 2, mode, 9.0, 50).unwrap();
            let units = units_with_area(&s, &r.positions, 9.0).unwrap();
            let direct = avg_power(&s, &units, mode).unwrap();
            assert!((direct - r.avg_power_achieved).abs() / direct < 1e-12);
            assert!(r.positions[0] < r.positions[1]);
        }
    }

    #[test]
    fn brute_force_single_unit_is_argmax_of_avg_power() {
        // independent single-unit sweep through the public power path
        let s = RoadScenario::highway(1000.0).unwrap();
        for mode in [Mode::Focusing, Mode::Beamforming] {
            let mut best = (f64::MIN, 0);
            for x in (0..=1000).step_by(10) {
                let unit = s.ris_unit(x as f64).unwrap();
                let p = avg_power(&s, &[unit], mode).unwrap();
                if p > best.0 {
                    best = (p, x);
                }
            }
            let r = brute_force_place(&s, 1, mode, 9.0, 10).unwrap();
            assert_eq!(r.positions, vec![best.1]);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn greedy_respects_spacing(n in 1usize..6, spacing in 3.0..40.0f64, beam in any::<bool>()) {
            let s = crate::scene::load_scenario(&format!(
                r#"{{"length_D": 2000, "min_spacing": {spacing}}}"#
            )).unwrap();
            let mode = if beam { Mode::Beamforming } else { Mode::Focusing };
            let r = place_ris(&s, n, mode, 9.0).unwrap();
            prop_assert_eq!(r.positions.len(), n);
            for (i, a) in r.positions.iter().enumerate() {
                prop_assert!(*a <= 2000);
                for b in &r.positions[i + 1..] {
                    prop_assert!((*a as f64 - *b as f64).abs() >= spacing);
                }
            }
        }
    }
}
