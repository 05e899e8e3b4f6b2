//! Character table of S_d (default d = 5) by the Murnaghan–Nakayama rule.
//!
//!     cargo run --example characters [d]

use dhurwitz::symgroup::{dimension, mn_character, Partition};

fn main() {
    let d: u32 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("degree must be a small integer"))
        .unwrap_or(5);
    let classes = Partition::all(d);

    print!("{:>14}", "");
    for mu in &classes {
        print!("{:>12}", mu.to_string());
    }
    println!();
    for lambda in &classes {
        print!("{:>14}", lambda.to_string());
        for mu in &classes {
            let chi = mn_character(lambda, mu).expect("same size");
            print!("{chi:>12}");
        }
        println!("   dim {}", dimension(lambda));
    }

    let z: Vec<String> = classes.iter().map(|mu| mu.z().to_string()).collect();
    println!("centralizer orders: {}", z.join(" "));
}
