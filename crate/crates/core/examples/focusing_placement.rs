//! Greedy placement of focusing surfaces on the default 30 km highway.

use ris_highway::{gain_over_los, los_profile, place_ris, power_profile, Mode, RoadScenario};

fn main() -> ris_highway::Result<()> {
    let highway = RoadScenario::default();
    let baseline = los_profile(&highway);
    for n in 1..=4 {
        let result = place_ris(&highway, n, Mode::Focusing, highway.ris().area())?;
        let profile = power_profile(&highway, &result.positions_m(), Mode::Focusing)?;
        let gains = gain_over_los(&profile, &baseline)?;
        println!(
            "N={n}: {:?}  avg {:.2} dB  mid-road gain {:.2} dB  worst gain {:.2} dB",
            result.sorted_positions(),
            result.avg_power_db(),
            gains.midpoint_gain_db,
            gains.min_gain_db
        );
    }
    Ok(())
}
