//! Constrained knot parameters, (1,1) diagrams, special classes and equivalence.

use constrained_knots::knots::{
    classify_special, constrained_to_11, decide_equivalence, is_lspace_knot, spinc_blocks, validate_constrained,
};

fn main() {
    let k = validate_constrained(5, 3, 2, 3, 1).unwrap();
    println!(
        "{k}: q' = {}, k = {}, total rank {}",
        k.q_prime(),
        k.k(),
        k.total_rank()
    );
    println!("(1,1) diagram {}", constrained_to_11(k));
    println!("spin^c blocks {:?}", spinc_blocks(k));
    println!("class {:?}, L-space knot {}", classify_special(k), is_lspace_knot(k));
    let a = validate_constrained(7, 2, 2, 3, 1).unwrap();
    let b = validate_constrained(7, 4, 2, 3, 1).unwrap();
    println!("{a} vs {b}: {:?}", decide_equivalence(a, b).unwrap());
}
