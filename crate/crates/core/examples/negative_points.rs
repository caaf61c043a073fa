//! Negative Rayleigh values for two matroids without the half-plane
//! property, and transport of reference points across relabelings.

use std::time::Instant;

use matroid_hpp::catalog;
use matroid_hpp::negsearch::{self, SearchBudget};
use matroid_hpp::poly::Poly;
use matroid_hpp::rational::{self, rat};

fn main() {
    let reference: [(&str, [i64; 6]); 2] =
        [("CoExtP7", [80, 19, -31, -31, -17, -4]), ("M431", [60, 27, -90, -22, 27, 5])];
    for (name, coords) in reference {
        let m = catalog::builtin(name).unwrap().matroid;
        let h = Poly::basis_polynomial(&m);
        let start = Instant::now();
        match negsearch::search_all_pairs(&h, &SearchBudget::default()) {
            Some(c) => {
                let x: Vec<String> = c.point.iter().map(rational::to_string).collect();
                println!(
                    "{name}: Δ_{},{} = {} at ({}) [{:.1?}]",
                    c.i + 1,
                    c.j + 1,
                    rational::to_string(&c.value),
                    x.join(", "),
                    start.elapsed()
                );
            }
            None => println!("{name}: no negative point found"),
        }
        let start = Instant::now();
        let coords: Vec<_> = coords.iter().map(|&v| rat(v)).collect();
        match negsearch::find_relabeling(&h, 5, 6, &coords).unwrap() {
            Some(r) => println!(
                "  reference point negative under relabeling {:?}: value {} [{:.1?}]",
                r.relabeling.iter().map(|e| e + 1).collect::<Vec<_>>(),
                rational::to_string(&r.certificate.value),
                start.elapsed()
            ),
            None => println!("  reference point is nonnegative under every relabeling"),
        }
    }
}
