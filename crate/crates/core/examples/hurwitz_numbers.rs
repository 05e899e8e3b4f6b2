//! Double Hurwitz numbers by monodromy enumeration and by characters.
//!
//!     cargo run --release --example hurwitz_numbers

use dhurwitz::hurwitz::{frobenius_connected, oracle_count, RamificationProfile};

fn main() {
    let cases: &[(&[i64], u32)] = &[
        (&[7, 1, -2, -3, -3], 0),
        (&[9, 4, -5, -5, -3], 0),
        (&[3, -3], 1),
        (&[2, 2, -1, -3], 1),
        (&[3, 2, -1, -4], 1),
    ];
    println!(
        "{:<22} {:>2} {:>10} {:>10} {:>12}",
        "x", "g", "oracle", "characters", "tuples"
    );
    for &(x, g) in cases {
        let p = RamificationProfile::new(x.to_vec()).expect("valid profile");
        let o = oracle_count(&p, g).expect("within budget");
        let f = frobenius_connected(&p, g).expect("valid profile");
        assert_eq!(o.value, f.value);
        println!(
            "{:<22} {g:>2} {:>10} {:>10} {:>12}",
            p.to_string(),
            o.value.to_string(),
            f.value.to_string(),
            o.stats.tuples_examined
        );
    }

    // Genus grows the count quickly; only the character formula keeps up.
    let p = RamificationProfile::new(vec![6, 3, -4, -5]).expect("valid profile");
    for g in 0..=4 {
        let h = frobenius_connected(&p, g).expect("valid profile");
        println!("H_{g}{p} = {}", h.value);
    }
}
