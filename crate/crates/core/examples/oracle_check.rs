//! Greedy placement against exhaustive search on a short road.

use std::time::Instant;

use ris_highway::{brute_force_place, place_ris, Mode, RoadScenario};

fn main() -> ris_highway::Result<()> {
    let road = RoadScenario::highway(2_000.0)?;
    let area = road.ris().area();
    for mode in [Mode::Focusing, Mode::Beamforming] {
        for n in [1, 2] {
            let start = Instant::now();
            let greedy = place_ris(&road, n, mode, area)?;
            let oracle = brute_force_place(&road, n, mode, area, 10)?;
            println!(
                "{mode:<11} N={n}  greedy {:?} {:.2} dB  oracle {:?} {:.2} dB  ({:.1?})",
                greedy.sorted_positions(),
                greedy.avg_power_db(),
                oracle.sorted_positions(),
                oracle.avg_power_db(),
                start.elapsed()
            );
        }
    }
    Ok(())
}
