//! Alexander polynomials and signatures of two-bridge knots.

use constrained_knots::twobridge::{two_bridge_equivalent, TwoBridge};

fn main() {
    for (u, v) in [(3, 1), (5, 2), (7, 2), (7, 3), (9, 2)] {
        let k = TwoBridge::new(u, v).unwrap();
        println!("b({u},{v}): Alexander {}, signature {}", k.alexander(), k.signature());
    }
    let (a, b) = (TwoBridge::new(7, 2).unwrap(), TwoBridge::new(7, 4).unwrap());
    println!("b(7,2) ~ b(7,4): {}", two_bridge_equivalent(a, b));
}
