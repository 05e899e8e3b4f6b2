//! The alternating binomial sum and the beta integral both equal
//! (-1)^(r1 - 1).
//!
//!     cargo run --example identities [r_max]

use dhurwitz::identities::{alternating_sum, beta_integral_exact, verify_identities};

fn main() {
    let r_max: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("r_max must be an integer"))
        .unwrap_or(30);

    for r in 2..=6 {
        let row: Vec<String> = (1..r)
            .map(|r2| {
                let a = alternating_sum(r, r2).expect("in range");
                let b = beta_integral_exact(r - r2, r2).expect("in range");
                format!("{a}/{b}")
            })
            .collect();
        println!("r = {r}: {}", row.join("  "));
    }

    let report = verify_identities(r_max).expect("r_max >= 2");
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("serializes")
    );
}
