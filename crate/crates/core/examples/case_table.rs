//! Region assignments of the three centers. Of the 64 combinations only
//! seven let the circles touch pairwise; these are the cases, and each
//! belongs to one family.

use malfatti::construct::{classify_case, Case, RegionAssignment};

fn main() {
    println!("regions: I interior, V vertical angle, F/S the two adjacent exterior angles");
    println!();
    for case in Case::all() {
        let family = case.family();
        println!("{case}: {}  ({} family)", case.regions(), family.name());
    }
    let inconsistent = RegionAssignment::all().filter(|r| classify_case(*r).is_none()).count();
    println!();
    println!("{inconsistent} of 64 assignments belong to no case");
}
