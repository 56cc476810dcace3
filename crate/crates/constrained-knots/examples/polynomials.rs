//! Laurent polynomials in one and two variables and exact division.

use constrained_knots::polynomials::{LaurentPoly1, LaurentPoly2};

fn main() {
    let trefoil = LaurentPoly1::from_terms([(-1, 1), (0, -1), (1, 1)]);
    println!(
        "trefoil = {trefoil}, symmetric {}, at -1 {}",
        trefoil.is_symmetric(),
        trefoil.evaluate_at_minus_one()
    );
    let product = &LaurentPoly1::from_terms([(0, -1), (1, 1)]) * &trefoil;
    let quotient = product.div_exact(&LaurentPoly1::from_terms([(0, -1), (1, 1)])).unwrap();
    println!("(t-1)*trefoil / (t-1) = {quotient}");
    let two = LaurentPoly2::from_terms([((1, 0), 1), ((0, 1), -1)]);
    println!("s - t specialized at (1, 2): {}", two.specialize(1, 2));
}
