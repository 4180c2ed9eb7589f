//! Checks every closed form against roots found numerically from the
//! tangency conditions alone.

use std::time::Instant;

use malfatti::oracle::{self, VerifyOptions};
use malfatti::report::Summary;
use malfatti::Triangle;

fn main() -> malfatti::Result<()> {
    let t = Triangle::from_sides(2.3, 3.1, 4.4)?;
    let start = Instant::now();
    let reports = oracle::verify_all(&t, &VerifyOptions::default())?;
    for r in &reports {
        println!(
            "{:>3}  case {}  {:<9}  rel error {:.1e}  geometric residual {:.1e}",
            r.variant.label(),
            r.case.id(),
            format!("{:?}", r.status),
            r.max_radius_rel_error,
            r.max_geometric_residual
        );
    }
    println!("{} in {:.2?}", Summary::of(&reports).line(), start.elapsed());
    Ok(())
}
