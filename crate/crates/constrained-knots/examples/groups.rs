//! Group presentations, word rewriting certificates and Fox calculus.

use constrained_knots::groups::{abelianization, fox_alexander_one, standard_relation, verify_isomorphism};
use constrained_knots::knots::validate_constrained;

fn main() {
    let figure_eight = standard_relation(validate_constrained(1, 0, 1, 5, 2).unwrap());
    let (a, b) = abelianization(&figure_eight).unwrap();
    println!(
        "relator {figure_eight}, Fox Alexander {}",
        fox_alexander_one(&figure_eight, a, b).unwrap()
    );
    println!(
        "C(5,3,2,3,1) relator {}",
        standard_relation(validate_constrained(5, 3, 2, 3, 1).unwrap())
    );
    let cert = verify_isomorphism(7, 2, 2, 3, 1).unwrap();
    println!("C(7,2,2,3,1) = C(7,4,2,3,1) via {}: holds {}", cert.map, cert.holds());
}
