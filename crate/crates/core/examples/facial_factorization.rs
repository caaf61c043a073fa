//! Restricting the basis polynomial to a face of the matroid polytope.
//! For each flat S the restriction factors as h(M|S) · h(M/S).

use matroid_hpp::catalog;
use matroid_hpp::poly::{self, Poly, SupportPolytopeFace};
use matroid_hpp::subset;

fn main() {
    for name in ["F7", "V8"] {
        let m = catalog::builtin(name).unwrap().matroid;
        let h = Poly::basis_polynomial(&m);
        let mut checked = 0;
        for s in m.flats() {
            if s == 0 || s == m.ground_set() {
                continue;
            }
            let face = h.facial_restriction(&SupportPolytopeFace::of_flat(&m, s)).unwrap();
            let rest = m.restrict(s).unwrap();
            let contr = m.contract(s).unwrap();
            let left = lift(&Poly::basis_polynomial(&rest), s, m.n());
            let right = lift(&Poly::basis_polynomial(&contr), m.ground_set() & !s, m.n());
            let product = left.mul(&right).unwrap();
            assert_eq!(product, face, "{name}: flat {}", subset::display(s));
            checked += 1;
        }
        println!("{name}: {checked} proper flats, every face restriction factors");
    }
    let f7 = catalog::fano();
    let line = f7.flats().into_iter().find(|&s| subset::size(s) == 3).unwrap();
    let face = Poly::basis_polynomial(&f7).facial_restriction(&SupportPolytopeFace::of_flat(&f7, line)).unwrap();
    println!("F7 on the face of {}: {face}", subset::display(line));
}

/// Moves variable `i` of a minor's polynomial to the `i`-th element of `s`.
fn lift(p: &Poly, s: subset::Subset, n: usize) -> Poly {
    let positions: Vec<usize> = subset::bits(s).collect();
    Poly::from_terms(
        n,
        p.terms().map(|(&k, c)| {
            let mut e = vec![0u8; n];
            for (i, &pos) in positions.iter().enumerate() {
                e[pos] = poly::exponent(k, i);
            }
            (poly::pack(&e), c.clone())
        }),
    )
}
