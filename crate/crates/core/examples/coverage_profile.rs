//! Received power along the road for the direct path, equidistant and
//! optimized placements.

use ris_highway::{equidistant_place, los_profile, place_ris, power_profile, Mode, RoadScenario};

fn main() -> ris_highway::Result<()> {
    let highway = RoadScenario::default();
    let area = highway.ris().area();
    let equidistant: Vec<f64> = equidistant_place(highway.length(), 2)
        .into_iter()
        .map(|x| x as f64)
        .collect();

    let mut columns = vec![("direct", los_profile(&highway))];
    for mode in [Mode::Focusing, Mode::Beamforming] {
        let optimized = place_ris(&highway, 2, mode, area)?.positions_m();
        columns.push((
            if mode == Mode::Focusing {
                "eq foc"
            } else {
                "eq beam"
            },
            power_profile(&highway, &equidistant, mode)?,
        ));
        columns.push((
            if mode == Mode::Focusing {
                "opt foc"
            } else {
                "opt beam"
            },
            power_profile(&highway, &optimized, mode)?,
        ));
    }

    print!("{:>8}", "x [m]");
    for (name, _) in &columns {
        print!("{name:>10}");
    }
    println!();
    for i in (149..3000).step_by(150) {
        print!("{:>8}", columns[0].1.samples[i].vehicle_x);
        for (_, profile) in &columns {
            print!("{:>10.2}", profile.samples[i].power.db);
        }
        println!();
    }
    Ok(())
}
