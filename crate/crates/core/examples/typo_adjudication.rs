//! Decides between the printed and the corrected formula for `b6` and `c7`
//! by asking the numerical oracle which one is a real solution.

use malfatti::oracle::{self, VerifyOptions};
use malfatti::{closed_form, FormulaMode, Triangle};

fn main() -> malfatti::Result<()> {
    for v in ["b6", "c7"] {
        let v = malfatti::TripletVariant::parse(v)?;
        println!("{v} printed:   {}", closed_form::formula_text(v, FormulaMode::PaperVerbatim).join("  "));
        println!("{v} corrected: {}", closed_form::formula_text(v, FormulaMode::Corrected).join("  "));
    }
    println!();
    for sides in [[3.0, 4.0, 5.0], [2.0, 3.0, 4.0], [5.0, 6.0, 7.5]] {
        let t = Triangle::from_sides(sides[0], sides[1], sides[2])?;
        for (v, a) in oracle::adjudicate(&t, &VerifyOptions::default())? {
            println!(
                "{sides:?} {v}: printed {}, corrected {}",
                if a.verbatim_passes { "passes" } else { "fails" },
                if a.corrected_passes { "passes" } else { "fails" }
            );
        }
    }
    Ok(())
}
