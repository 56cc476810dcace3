//! Knot Floer Euler characteristic, ranks, genus and fibredness.

use constrained_knots::floer::{hfk_dimensions, hfk_euler, homology_presentation, width_genus_fibred};
use constrained_knots::knots::validate_constrained;

fn main() {
    for t in [(5, 3, 2, 3, 1), (1, 0, 1, 5, 2), (7, 2, 1, 1, 0)] {
        let k = validate_constrained(t.0, t.1, t.2, t.3, t.4).unwrap();
        let h1 = homology_presentation(k);
        let data = hfk_euler(k);
        let rank: i64 = hfk_dimensions(k).values().sum();
        println!("{k}: H1 = Z + Z/{}, {} classes, rank {rank}", h1.d, data.classes.len());
        match width_genus_fibred(k) {
            Ok(g) => println!("  genus {}, top rank {}, fibred {}", g.genus, g.top_rank, g.fibred),
            Err(e) => println!("  {e}"),
        }
    }
}
