//! Reading and writing matroid catalogs in both text formats, with
//! canonical forms to spot isomorphic entries.

use matroid_hpp::catalog;
use matroid_hpp::matroid::{canonical_form, is_isomorphic};

fn main() {
    let entries: Vec<_> = ["F7", "F7*", "V8", "K4", "U24"].iter().map(|n| catalog::builtin(n).unwrap()).collect();
    let block = catalog::write_catalog(&entries);
    let compact = catalog::write_compact(&entries);
    println!("{compact}");
    let from_block = catalog::parse_catalog(&block).unwrap();
    let from_compact = catalog::parse_catalog(&compact).unwrap();
    for ((a, b), c) in entries.iter().zip(&from_block).zip(&from_compact) {
        assert_eq!(a.matroid, b.matroid);
        assert_eq!(a.matroid, c.matroid);
    }
    println!("{} entries survive both formats", entries.len());

    let k4 = catalog::k4();
    let shuffled = k4.permute(&[3, 0, 5, 1, 4, 2]);
    println!(
        "relabelled K4 isomorphic: {}, same canonical form: {}",
        is_isomorphic(&k4, &shuffled),
        canonical_form(&k4) == canonical_form(&shuffled)
    );
}
