//! Beamforming surfaces sit where the critical area matches the surface area.

use ris_highway::{beamforming_score, place_ris, Mode, RoadScenario};

fn main() -> ris_highway::Result<()> {
    let highway = RoadScenario::default();
    let area = highway.ris().area();
    println!(
        "critical distance A/λ = {:.1} m",
        area / highway.wavelength()
    );

    for x in (700..=1000).step_by(50) {
        println!(
            "  score({x:>4}) = {:.4e}",
            beamforming_score(&highway, area, x as f64)?
        );
    }

    for n in [2, 4] {
        let result = place_ris(&highway, n, Mode::Beamforming, area)?;
        println!("N={n}: {:?}", result.sorted_positions());
    }

    // a larger surface moves the sweet spot away from the base stations
    let wide = highway.with_ris_side_length(18f64.sqrt(), false)?;
    let result = place_ris(&wide, 1, Mode::Beamforming, wide.ris().area())?;
    println!("A=18 m²: {:?}", result.positions);
    Ok(())
}
