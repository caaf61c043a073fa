//! Exact sum-of-squares certificates for Rayleigh differences of small
//! matroids, with the split along each variable.

use matroid_hpp::catalog;
use matroid_hpp::poly::Poly;
use matroid_hpp::rational;
use matroid_hpp::sos::{self, PairOutcome, SosOptions};

fn main() {
    let opts = SosOptions::default();
    for name in ["U24", "U35", "K4", "P7"] {
        let m = catalog::builtin(name).unwrap().matroid;
        let h = Poly::basis_polynomial(&m);
        let outcomes = sos::certify_all_pairs(&h, &opts);
        let certified = outcomes.iter().filter(|(_, o)| matches!(o, PairOutcome::Sos(_))).count();
        println!("{name}: {certified} of {} Rayleigh differences certified SOS", outcomes.len());
        if let Some(((i, j), PairOutcome::Sos(c))) = outcomes.first() {
            println!("  Δ_{},{} = {}", i + 1, j + 1, h.rayleigh_difference(*i, *j).unwrap());
            for (d, s) in c.squares() {
                println!("      {} * ({s})^2", rational::to_string(&d));
            }
            let others: Vec<usize> = (0..m.n()).filter(|k| k != i && k != j).collect();
            let splits = others.iter().filter(|&&k| sos::splitting_holds(c, &h, k).unwrap()).count();
            println!("  splitting identity holds along {splits} of the {} other variables", others.len());
        }
    }
}
