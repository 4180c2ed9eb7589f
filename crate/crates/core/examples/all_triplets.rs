//! Radii of all 32 triplets.
//!
//! ```text
//! cargo run --example all_triplets -- 3 4 5
//! ```

use malfatti::{closed_form, FormulaMode, Triangle};

fn main() -> malfatti::Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).map(|a| a.parse().expect("side length")).collect();
    let [a, b, c] = match args[..] {
        [a, b, c] => [a, b, c],
        [] => [3.0, 4.0, 5.0],
        _ => panic!("expected three side lengths"),
    };
    let t = Triangle::from_sides(a, b, c)?;
    let q = t.derive();
    println!("a = {a}  b = {b}  c = {c}");
    println!("s = {:.9}  r = {:.9}  rA = {:.9}  rB = {:.9}  rC = {:.9}", q.s, q.r, q.ra(), q.rb(), q.rc());
    println!();
    println!("{:>5} {:>18} {:>18} {:>18}", "", "r1", "r2", "r3");
    for triplet in closed_form::all_triplets_with(&q, &q.auxiliary_angles(), FormulaMode::Corrected) {
        let mark = if triplet.variant.has_published_typo() { " *" } else { "" };
        println!(
            "{:>5} {:>18.12} {:>18.12} {:>18.12}{mark}",
            triplet.variant.label(),
            triplet.r1,
            triplet.r2,
            triplet.r3
        );
    }
    println!();
    println!("* printed with the corrected formula");
    Ok(())
}
