//! Specular against diffuse reflection around the critical area.

use ris_highway::a_min;
use ris_highway::propagation::{diffuse_link, specular_link, to_db};

fn main() -> ris_highway::Result<()> {
    let lambda = 0.0107;
    for (ri, rr) in [(100.0, 100.0), (841.0, 14_159.0), (5_000.0, 12.0)] {
        let critical = a_min(ri, rr, lambda)?;
        println!("r_i={ri} r_r={rr}: a_min = {critical:.4} m²");
        let specular = specular_link(ri, rr, lambda);
        for scale in [0.25, 1.0, 4.0] {
            let area = critical * scale;
            let diffuse = diffuse_link(ri, rr, area);
            println!(
                "  A={area:>10.4}  specular {:>8.2} dB  diffuse {:>8.2} dB",
                to_db(specular * specular),
                to_db(diffuse * diffuse)
            );
        }
    }
    Ok(())
}
