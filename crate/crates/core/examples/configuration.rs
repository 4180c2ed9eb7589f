//! Places one triplet in the plane: centers, the nine tangent points, the
//! region of each center and the kind of each circle-circle contact.
//!
//! ```text
//! cargo run --example configuration -- b6
//! ```

use malfatti::construct::{self, Frame};
use malfatti::{closed_form, Triangle, TripletVariant, Vertex};

fn main() -> malfatti::Result<()> {
    let label = std::env::args().nth(1).unwrap_or_else(|| "a5".to_string());
    let v = TripletVariant::parse(&label)?;
    let t = Triangle::from_angles_deg(45.0, 54.0, 1.0)?;
    let q = t.derive();
    let frame = Frame::canonical(&t);
    let config = construct::construct_configuration(&frame, &closed_form::radii_for_variant(&q, &q.auxiliary_angles(), v))?;

    for v in Vertex::ALL {
        let p = frame.vertex(v);
        println!("{}  ({:.9}, {:.9})", v.name(), p.x, p.y);
    }
    println!();
    println!("{v}: {} with regions {}", config.case, config.regions);
    for (k, c) in config.circles.iter().enumerate() {
        println!("  circle {}  r = {:.9}  center ({:.9}, {:.9})", k + 1, c.radius, c.center.x, c.center.y);
    }
    for ((i, j), kind) in construct::PAIRS.iter().zip(config.tangency_types) {
        println!("  circles {} and {} touch {:?}", i + 1, j + 1, kind);
    }
    for (name, p) in config.tangent_points.labeled() {
        println!("  {name:>3}  ({:.9}, {:.9})", p.x, p.y);
    }
    println!("largest residual {:.2e}, near degenerate: {}", config.max_residual, config.near_degenerate);
    Ok(())
}
