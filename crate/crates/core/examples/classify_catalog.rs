//! Classifies every builtin matroid and prints one line per verdict, then
//! the status counts.

use std::time::Instant;

use matroid_hpp::catalog;
use matroid_hpp::pipeline::{self, Config};

fn main() {
    let entries = catalog::all_builtins();
    let start = Instant::now();
    let report = pipeline::classify_catalog(&entries, &Config::default());
    for (e, v) in entries.iter().zip(&report.verdicts) {
        let proof = v.all_certificates().iter().map(|c| c.kind()).collect::<Vec<_>>().join(", ");
        println!(
            "{:<14} n={} r={}  {:?} via {:?} [{proof}]",
            e.name,
            e.matroid.n(),
            e.matroid.rank(),
            v.status,
            v.decided_by
        );
        let checked = v.verify_certificates(&e.matroid).expect("certificates verify");
        assert!(checked > 0 || v.status != pipeline::Status::NotHpp);
    }
    println!("{:?}", report.counts);
    println!("elapsed {:.1?}", start.elapsed());
}
