//! Counts the {0,1} line pairs (e, v) along which the basis polynomial has
//! non-real roots, for the P8 family and the dual of CoExt(P7).

use std::time::Instant;

use matroid_hpp::catalog;
use matroid_hpp::poly::Poly;
use matroid_hpp::realroot::{scan_pairs, PairConvention};

fn main() {
    for name in ["P8", "P8'", "P8''", "P8'''", "CoExtP7*", "V8", "U36"] {
        let m = catalog::builtin(name).expect("builtin").matroid;
        let h = Poly::basis_polynomial(&m);
        for convention in [PairConvention::NonvanishingDirection, PairConvention::NonzeroDirection] {
            let start = Instant::now();
            let (count, first) = scan_pairs(&h, convention);
            print!("{name:10} {convention:?}: {count} failing pairs ({:.2?})", start.elapsed());
            match first {
                Some(w) => println!("  first e={:?} v={:?}", w.e, w.v),
                None => println!(),
            }
        }
    }
}
