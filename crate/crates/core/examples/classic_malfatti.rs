//! The Malfatti circles (triplet `i1`) of a few triangles, checked against
//! a direct geometric construction.

use malfatti::construct::{self, Frame};
use malfatti::{closed_form, Triangle, TripletVariant};

fn main() -> malfatti::Result<()> {
    let i1 = TripletVariant::from_index(1)?;
    for sides in [[1.0, 1.0, 1.0], [3.0, 4.0, 5.0], [2.0, 3.0, 4.0]] {
        let t = Triangle::from_sides(sides[0], sides[1], sides[2])?;
        let q = t.derive();
        let radii = closed_form::radii_for_variant(&q, &q.auxiliary_angles(), i1);
        let config = construct::construct_configuration(&Frame::canonical(&t), &radii)?;
        println!("sides {sides:?}  s = {:.6}  r = {:.6}", q.s, q.r);
        println!("  r1 = {:.12}  r2 = {:.12}  r3 = {:.12}", radii.r1, radii.r2, radii.r3);
        for (k, c) in config.circles.iter().enumerate() {
            println!("  circle {}: center ({:.9}, {:.9})", k + 1, c.center.x, c.center.y);
        }
        println!("  largest tangency residual {:.2e}", config.max_residual);
    }
    Ok(())
}
