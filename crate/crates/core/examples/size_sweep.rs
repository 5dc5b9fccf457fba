//! Surface size against received power: focusing keeps growing, beamforming
//! flattens once every link is specular.

use ris_highway::{
    size_sweep, size_sweep_with, Mode, RoadScenario, SizeSweepOptions, SweepPlacement,
};

fn main() -> ris_highway::Result<()> {
    let highway = RoadScenario::default();
    let lengths = [1.0, 2.0, 3.0, 6.0, 11.0, 16.0, 22.0];
    let mid = highway.length() / 2.0;

    let focusing = size_sweep(&highway, Mode::Focusing, &lengths, 2)?;
    let frozen = SizeSweepOptions {
        placement: SweepPlacement::Frozen(vec![841.0, 29_159.0]),
        ..SizeSweepOptions::default()
    };
    let beamforming = size_sweep_with(&highway, Mode::Beamforming, &lengths, 2, &frozen)?;

    let j = focusing.vehicle_xs.iter().position(|&x| x == mid).unwrap();
    println!("{:>6} {:>12} {:>12}", "L [m]", "focusing", "beamforming");
    for (i, side) in lengths.iter().enumerate() {
        println!(
            "{side:>6} {:>12.2} {:>12.2}",
            focusing.power_db[i][j], beamforming.power_db[i][j]
        );
    }
    Ok(())
}
