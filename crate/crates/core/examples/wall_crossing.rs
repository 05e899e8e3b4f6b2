//! Crosses the wall x2 + x5 = 0 and compares the crossing polynomial with
//! the genus-0 product formula under each candidate normalization.
//!
//!     cargo run --release --example wall_crossing

use dhurwitz::chambers::{adjacent_chamber, ChamberWitness, Wall, DEFAULT_SEARCH_BUDGET};
use dhurwitz::piecewise::{fit_chamber, product_formula_terms, wall_crossing, ProductConvention};

fn main() {
    let start = ChamberWitness::from_entries(vec![7, 1, -2, -3, -3]).expect("off every wall");
    let (wall, _) = Wall::new(5, &[2, 5]).expect("valid wall");
    let across = adjacent_chamber(&start, &wall, DEFAULT_SEARCH_BUDGET).expect("neighbour exists");
    println!("{} -> {} across {wall}", start.point(), across.point());

    let c1 = fit_chamber(&start, 0, 5).expect("fit");
    let c2 = fit_chamber(&across, 0, 5).expect("fit");
    let wc = wall_crossing(&c1, &c2, &wall).expect("adjacent");
    println!("P1 = {}", c1.polynomial.display_form());
    println!("P2 = {}", c2.polynomial.display_form());
    println!("WC = {}", wc.polynomial.display_form());
    let q = wc.quotient_by_wall_form().expect("divisible");
    println!(
        "WC / ({}) = {}",
        wall.form().display_form(),
        q.display_form()
    );

    for x in [
        vec![9, 4, -5, -5, -3],
        vec![5, 2, -3, -3, -1],
        vec![12, 6, -7, -7, -4],
    ] {
        let p = ChamberWitness::from_entries(x).expect("off every wall");
        assert_eq!(p.signature(), c2.witness.signature());
        let terms = product_formula_terms(&wall, p.point()).expect("off the wall");
        let target = wc.polynomial.eval(p.point().entries()).expect("zero-sum");
        println!(
            "at {}: WC = {target}, H0{} = {}, H0{} = {}",
            p.point(),
            terms.block_i,
            terms.h_block_i,
            terms.block_complement,
            terms.h_block_complement
        );
        for c in ProductConvention::all() {
            let v = terms.evaluate(c);
            let mark = if v == target { " <-" } else { "" };
            println!("    {:<24} {:>6}{mark}", c.to_string(), v.to_string());
        }
    }
}
