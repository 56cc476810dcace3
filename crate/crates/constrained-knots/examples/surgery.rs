//! Magic-link surgeries and 1-bridge braids in the solid torus.

use constrained_knots::arith::Fraction;
use constrained_knots::knots::validate_constrained;
use constrained_knots::surgery::{
    braid_fill, braid_normalize, constrained_to_braid, magic_classify, simple_interval, MagicSurgery,
};

fn main() {
    for (u, v, s1, s2) in [(3, 1, "3/-2", "1/3"), (3, 1, "1/2", "1/3"), (5, 2, "7/3", "1/0")] {
        let m = MagicSurgery::new(u, v, s1.parse().unwrap(), s2.parse().unwrap()).unwrap();
        println!("{m}: {:?}", magic_classify(&m).unwrap().outcome);
    }
    let b = braid_normalize(4, Fraction::new(3, 10).unwrap()).unwrap();
    let interval = simple_interval(&b);
    println!(
        "{b}: simple interval [{}, {}] {:?}",
        interval.f_minus, interval.f_plus, interval.class
    );
    println!("fill 7/2: {:?}", braid_fill(&b, 7, 2).unwrap());
    let r = constrained_to_braid(validate_constrained(5, 3, 2, 3, 1).unwrap(), None).unwrap();
    println!("C(5,3,2,3,1) as braid {} with w = {}", r.braid, r.w);
}
