//! The cycle matroid of K4 is regular, so its basis polynomial is
//! det(Σ x_e a_e a_eᵀ) for the signed incidence vectors a_e.

use matroid_hpp::catalog;
use matroid_hpp::poly::Poly;
use matroid_hpp::rational::rat;

fn main() {
    let h = Poly::basis_polynomial(&catalog::k4());
    let vectors = catalog::k4_incidence_vectors();
    println!("h(K4) = {h}");
    println!("determinantal with incidence vectors: {}", h.det_rank1_check(&vectors).unwrap());
    let mut scaled = vectors.clone();
    scaled[0] = scaled[0].iter().map(|x| x * rat(2)).collect();
    println!("after doubling one vector: {}", h.det_rank1_check(&scaled).unwrap());
}
