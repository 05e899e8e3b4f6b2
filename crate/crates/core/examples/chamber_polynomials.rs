//! Fits the polynomial of H_g on a chamber of the resonance arrangement.
//!
//!     cargo run --release --example chamber_polynomials

use dhurwitz::chambers::ChamberWitness;
use dhurwitz::piecewise::fit_chamber;

fn main() {
    let cases: &[(&[i64], u32)] = &[
        (&[7, 1, -2, -3, -3], 0),
        (&[9, 4, -5, -5, -3], 0),
        (&[3, 1, -2, -2], 0),
        (&[1, -1], 1),
        (&[2, 1, -3], 1),
    ];
    for &(x, g) in cases {
        let witness = ChamberWitness::from_entries(x.to_vec()).expect("off every wall");
        let fit = fit_chamber(&witness, g, 5).expect("fit succeeds");
        println!("g = {g}, chamber of {}", witness.point());
        println!("  signature  {}", witness.signature());
        println!("  canonical  {}", fit.polynomial);
        println!("  display    {}", fit.polynomial.display_form());
        println!(
            "  {} nodes, {} held-out checks, degree {:?} (bound {})",
            fit.nodes.len(),
            fit.validation.len(),
            fit.polynomial.total_degree(),
            fit.degree_bound
        );
    }
}
