//! Exact interpolation on the zero-sum hyperplane.
//!
//!     cargo run --example interpolation

use dhurwitz::exact::{interpolate, rational_from_int, MultiPoly};

fn main() {
    // p = x1 * x2 - 1/3 * x3^2 on x1 + x2 + x3 + x4 = 0.
    let x = |i| MultiPoly::var(4, i);
    let p = &(&x(1) * &x(2)) - &x(3).pow(2).scale(&"1/3".parse().expect("rational"));
    println!("p canonical: {p}");
    println!("p display:   {}", p.display_form());

    let mut points = Vec::new();
    for a in -2i64..=2 {
        for b in -2i64..=2 {
            for c in -1i64..=1 {
                points.push(vec![a, b, c, -a - b - c]);
            }
        }
    }
    let values: Vec<_> = points
        .iter()
        .map(|v| p.eval(v).expect("zero-sum"))
        .collect();
    let q = interpolate(&points, &values, 2).expect("unisolvent");
    assert_eq!(p, q);
    println!("recovered from {} points", points.len());

    let bumped: Vec<_> = values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            if i == 7 {
                v + rational_from_int(1)
            } else {
                v.clone()
            }
        })
        .collect();
    println!(
        "perturbed: {}",
        interpolate(&points, &bumped, 2).unwrap_err()
    );
}
