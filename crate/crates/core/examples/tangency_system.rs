//! The normalized tangency system of each family: every candidate built
//! from the root choices, and the eight that survive the residual filter.

use malfatti::{system, Family, Triangle};

fn main() -> malfatti::Result<()> {
    let t = Triangle::from_sides(2.0, 3.0, 4.0)?;
    let q = t.derive();
    for family in Family::ALL {
        let spec = system::build_system(&q, family);
        let candidates = system::enumerate_candidates(&spec);
        let survivors = system::filter_solutions(&spec, &candidates)?;
        println!(
            "{} system, p = {:.6?}, constraint defect {:.1e}",
            family.name(),
            spec.p,
            spec.constraint_defect()
        );
        println!("  {} candidates, {} survive", candidates.len(), survivors.len());
        for sol in &survivors {
            let radii = system::to_radii(&spec, sol);
            println!(
                "  {:>3}  u v w = {:>10.6} {:>10.6} {:>10.6}  residual {:.1e}  radii {:.6?}",
                radii.variant.label(),
                sol.u,
                sol.v,
                sol.w,
                system::residual(&spec, sol),
                radii.radii()
            );
        }
    }
    Ok(())
}
