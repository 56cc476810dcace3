//! Continued fractions, Farey sequences and modular inverses.

use constrained_knots::arith::{bezout, continued_fraction, farey_sequence, mod_inverse, Fraction};

fn main() {
    let x = Fraction::new(7, 17).unwrap();
    let cf = continued_fraction(x);
    println!("{x} = {cf:?} -> {}", cf.evaluate());
    for n in 1..=4 {
        let terms: Vec<String> = farey_sequence(n).iter().map(|f| f.to_string()).collect();
        println!("F_{n} = ({})", terms.join(", "));
    }
    println!("3^-1 mod 5 = {}", mod_inverse(3, 5).unwrap());
    println!("bezout(9, 7) = {:?}", bezout(9, 7));
}
