//! Writes the 32 figures for the triangle with angles 45 and 54 degrees.
//!
//! ```text
//! cargo run --example render_figures -- /tmp/figures
//! ```

use std::path::PathBuf;

use malfatti::report::configurations;
use malfatti::{render, Frame, FormulaMode, Triangle, TripletVariant};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("figures"));
    let t = Triangle::from_angles_deg(45.0, 54.0, 1.0)?;
    let variants: Vec<TripletVariant> = TripletVariant::all().collect();
    let configs = configurations(&t, &variants, FormulaMode::Corrected);
    let paths = render::write_figures(&dir, &Frame::canonical(&t), &configs, FormulaMode::Corrected)?;
    println!("wrote {} figures to {}", paths.len(), dir.display());
    Ok(())
}
