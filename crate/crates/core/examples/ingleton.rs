//! Ingleton's inequality as a quick obstruction to representability, and
//! detection of the Vámos-like pattern of four circuit-hyperplanes.

use matroid_hpp::catalog;
use matroid_hpp::matroid::IngletonSearch;
use matroid_hpp::subset;

fn main() {
    for name in ["V8", "F7", "P8", "Pappus", "NonPappus", "M431"] {
        let m = catalog::builtin(name).unwrap().matroid;
        match m.ingleton_search(IngletonSearch::default()) {
            Some((p, r)) => {
                let sets: Vec<String> = p.iter().map(|&s| subset::display(s)).collect();
                println!("{name}: Ingleton fails for {} ({} < {})", sets.join(" "), r.lhs, r.rhs);
            }
            None => println!("{name}: Ingleton holds on all small disjoint quadruples"),
        }
        if let Some(w) = m.is_vamos_like() {
            let pairs: Vec<String> = w.pairs.iter().map(|&s| subset::display(s)).collect();
            println!("  Vámos-like with pairs {}", pairs.join(" "));
        }
    }
}
