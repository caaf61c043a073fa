//! Rayleigh differences of the Vámos matroid: which pairs are sums of
//! squares, which carry a dual certificate, and which stay open.

use std::time::Instant;

use matroid_hpp::catalog;
use matroid_hpp::poly::Poly;
use matroid_hpp::sos::{self, GramSystem, PairOutcome, SosOptions};

fn main() {
    let h = Poly::basis_polynomial(&catalog::vamos());
    let start = Instant::now();
    let outcomes = sos::certify_all_pairs(&h, &SosOptions::default());
    for ((i, j), outcome) in &outcomes {
        let delta = h.rayleigh_difference(*i, *j).unwrap();
        let status = match outcome {
            PairOutcome::Sos(c) => {
                sos::verify_sos(c, &delta).expect("certificate verifies");
                format!("SOS, rank {}", c.ldl.pivots.iter().filter(|p| **p != matroid_hpp::rational::rat(0)).count())
            }
            PairOutcome::NotSos(c) => {
                let sys = GramSystem::new(&delta, *i, *j).unwrap();
                sos::verify_dual(c, &sys).expect("dual certificate verifies");
                format!("not SOS, dual matrix of size {}", c.a.len())
            }
            PairOutcome::NumericOnly { min_eigenvalue } => format!("numeric only ({min_eigenvalue:.2e})"),
            PairOutcome::Inconclusive { reason } => format!("inconclusive: {reason}"),
        };
        println!("Δ_{},{}: {status}", i + 1, j + 1);
    }
    println!("elapsed {:.1?}", start.elapsed());
}
