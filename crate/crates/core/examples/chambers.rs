//! Walls, sign vectors and lattice search in the resonance arrangement.
//!
//!     cargo run --example chambers

use dhurwitz::chambers::{
    adjacent_chamber, sample_chamber, signature_of, walls, ChamberWitness, DEFAULT_SEARCH_BUDGET,
};

fn main() {
    let x = vec![7, 1, -2, -3, -3];
    let witness = ChamberWitness::from_entries(x.clone()).expect("off every wall");
    println!("walls for n = 5 (signature order):");
    for w in walls(5) {
        let s = if witness.signature().sign_at(&w) {
            '+'
        } else {
            '-'
        };
        println!("  {s} {:<12} sum = {}", w.to_string(), w.subset_sum(&x));
    }

    println!("nearest points of the same chamber:");
    for p in sample_chamber(&witness, 6, DEFAULT_SEARCH_BUDGET).expect("chamber is open") {
        println!("  {p}");
    }

    println!("neighbouring chambers:");
    for w in walls(5) {
        match adjacent_chamber(&witness, &w, 20_000) {
            Ok(adj) => println!("  across {:<12} {}", w.to_string(), adj.point()),
            Err(_) => println!("  across {:<12} none within budget", w.to_string()),
        }
    }

    match signature_of(&[4, 1, -1, -1, -3]) {
        Ok(s) => println!("{s}"),
        Err(e) => println!("(4,1,-1,-1,-3): {e}"),
    }
}
