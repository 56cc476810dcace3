//! Classifying filling records by their Alexander polynomial residues.

use constrained_knots::census::{classify_filling, record_from_knot, FillingRecord};
use constrained_knots::knots::validate_constrained;

fn main() {
    let fig8 = FillingRecord::from_json(
        r#"{"name":"m004","p":1,"q":0,"alexander":[[-1,1],[0,-3],[1,1]],"meridian_exponent":1}"#,
    )
    .unwrap();
    let c = classify_filling(&fig8);
    println!("{}: {} form(s), {:?}", c.name, c.n_forms, c.verdict);
    let record = record_from_knot("C(5,3,2,3,1)", validate_constrained(5, 3, 2, 3, 1).unwrap()).unwrap();
    println!("{}", serde_json::to_string(&classify_filling(&record)).unwrap());
}
