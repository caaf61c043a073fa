//! Randomized invariants shared by the property and acceptance targets.

#![allow(dead_code)]

use matroid_hpp::matroid::{canonical_form, is_isomorphic, IngletonSearch, Matroid};
use matroid_hpp::poly::{self, Poly};
use matroid_hpp::rational::{rat, Rat};
use matroid_hpp::realroot::UniPoly;
use matroid_hpp::sos::{self, PairOutcome, SosOptions};
use matroid_hpp::subset::{self, Subset};
use proptest::prelude::*;
use proptest::sample::subsequence;
use proptest::test_runner::{RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub const CASES: u32 = 256;

/// Runs `check` on `CASES` accepted instances with a fixed seed.
fn run<S: Strategy>(strategy: &S, check: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let config = ProptestConfig { cases: CASES, failure_persistence: None, ..ProptestConfig::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(strategy, check).map_err(|e| e.to_string())
}

/// Column matroid of a random GF(3) matrix with `r` rows and `n` columns.
fn ternary(max_n: usize) -> impl Strategy<Value = Matroid> {
    (2..=max_n, 1..=3usize)
        .prop_flat_map(|(n, r)| proptest::collection::vec(proptest::collection::vec(0..3i64, n), r))
        .prop_filter_map("zero matrix", |rows| Matroid::from_matrix_mod_p(&rows, 3).ok())
}

/// Sparse paving matroid: greedily keep random `r`-sets meeting each other
/// in at most `r - 2` elements.
fn sparse_paving() -> impl Strategy<Value = Matroid> {
    (5..=8usize, 3..=4usize)
        .prop_flat_map(|(n, r)| {
            (Just(n), Just(r), proptest::collection::vec(subsequence((0..n).collect::<Vec<_>>(), r), 0..8))
        })
        .prop_map(|(n, r, sets)| {
            let mut chosen: Vec<Subset> = Vec::new();
            for s in sets {
                let mask = s.iter().fold(0, |m, &e| m | 1 << e);
                if chosen.iter().all(|&c| subset::size(c & mask) + 2 <= r) && !chosen.contains(&mask) {
                    chosen.push(mask);
                }
            }
            Matroid::from_nonbases(n, r, &chosen).expect("sparse paving families are matroids")
        })
}

fn any_matroid() -> impl Strategy<Value = Matroid> {
    prop_oneof![ternary(7), sparse_paving()]
}

/// Brute-force basis exchange, written against the raw basis list.
fn exchange_holds(n: usize, bases: &[Subset]) -> bool {
    if bases.is_empty() {
        return false;
    }
    let r = bases[0].count_ones();
    if bases.iter().any(|b| b.count_ones() != r || *b >> n != 0) {
        return false;
    }
    bases.iter().all(|&b1| {
        bases.iter().all(|&b2| {
            (0..n).filter(|&x| b1 >> x & 1 == 1 && b2 >> x & 1 == 0).all(|x| {
                (0..n)
                    .filter(|&y| b2 >> y & 1 == 1 && b1 >> y & 1 == 0)
                    .any(|y| bases.contains(&(b1 & !(1 << x) | 1 << y)))
            })
        })
    })
}

fn assert_valid(m: &Matroid) -> Result<(), TestCaseError> {
    prop_assert!(exchange_holds(m.n(), m.bases()), "exchange fails for {:?}", m.bases());
    Ok(())
}

/// Embeds a polynomial in the variables of `s` (in increasing order) into `n` variables.
fn lift(p: &Poly, s: Subset, n: usize) -> Poly {
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

fn from_roots(roots: &[i64]) -> UniPoly {
    roots.iter().fold(UniPoly::from_integers(&[1]), |acc, &a| acc.mul(&UniPoly::from_integers(&[-a, 1])))
}

pub fn construction_paths_satisfy_exchange() -> Result<(), String> {
    run(&(any_matroid(), ternary(4), any::<prop::sample::Index>()), |(m, other, pick)| {
        assert_valid(&m)?;
        assert_valid(&m.dual())?;
        let e = 1 << pick.index(m.n());
        if m.n() > 1 {
            assert_valid(&m.delete(e).unwrap())?;
            assert_valid(&m.contract(e).unwrap())?;
        }
        if m.n() + other.n() <= subset::MAX_ELEMENTS {
            assert_valid(&m.direct_sum(&other).unwrap())?;
        }
        if m.n() < subset::MAX_ELEMENTS {
            assert_valid(&m.free_extension().unwrap())?;
            assert_valid(&m.free_coextension().unwrap())?;
        }
        let chs = m.circuit_hyperplanes();
        if !chs.is_empty() {
            let h = chs[pick.index(chs.len())];
            let relaxed = m.relax(h).unwrap();
            assert_valid(&relaxed)?;
            prop_assert_eq!(relaxed.bases().len(), m.bases().len() + 1);
            prop_assert_eq!(relaxed.is_sparse_paving(), m.is_sparse_paving());
        }
        Ok(())
    })
}

pub fn from_bases_agrees_with_exchange_oracle() -> Result<(), String> {
    run(&(ternary(6), any::<prop::sample::Index>()), |(m, drop)| {
        let mut bases = m.bases().to_vec();
        bases.remove(drop.index(bases.len()));
        let expected = exchange_holds(m.n(), &bases);
        prop_assert_eq!(Matroid::from_bases(m.n(), m.rank(), bases).is_ok(), expected);
        Ok(())
    })
}

pub fn dual_is_an_involution_and_swaps_minors() -> Result<(), String> {
    run(&(any_matroid(), any::<u16>()), |(m, s)| {
        prop_assert_eq!(m.dual().dual(), m.clone());
        let s = (s as Subset) & m.ground_set();
        prop_assume!(s != m.ground_set());
        prop_assert_eq!(m.delete(s).unwrap().dual(), m.dual().contract(s).unwrap());
        prop_assert_eq!(m.contract(s).unwrap().dual(), m.dual().delete(s).unwrap());
        Ok(())
    })
}

pub fn rank_is_monotone_and_submodular() -> Result<(), String> {
    run(&(any_matroid(), any::<u16>(), any::<u16>()), |(m, a, b)| {
        let (a, b) = ((a as Subset) & m.ground_set(), (b as Subset) & m.ground_set());
        prop_assert!(m.rank_of(a) + m.rank_of(b) >= m.rank_of(a | b) + m.rank_of(a & b));
        prop_assert!(m.rank_of(a & b) <= m.rank_of(a));
        prop_assert!(m.rank_of(a) <= subset::size(a));
        Ok(())
    })
}

pub fn canonical_form_ignores_labels() -> Result<(), String> {
    run(&(any_matroid(), any::<u64>()), |(m, seed)| {
        let mut perm: Vec<usize> = (0..m.n()).collect();
        // Fisher–Yates driven by the seed
        let mut x = seed | 1;
        for i in (1..perm.len()).rev() {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            perm.swap(i, (x % (i as u64 + 1)) as usize);
        }
        let shuffled = m.permute(&perm);
        prop_assert_eq!(canonical_form(&shuffled), canonical_form(&m));
        Ok(())
    })
}

pub fn coextension_contracts_back() -> Result<(), String> {
    run(&any_matroid(), |m| {
        let co = m.free_coextension().unwrap();
        let back = co.contract(1 << m.n()).unwrap();
        prop_assert!(is_isomorphic(&back, &m));
        Ok(())
    })
}

pub fn specialization_gives_minors_up_to_constants() -> Result<(), String> {
    run(&(any_matroid(), any::<u16>()), |(m, s)| {
        let s = (s as Subset) & m.ground_set();
        prop_assume!(s != 0 && s != m.ground_set());
        let n = m.n();
        let rest = m.ground_set() & !s;
        let f = Poly::basis_polynomial(&m).substitute_set(s, &rat(1)).unwrap();
        let c_low = Rat::from_integer(m.restrict(s).unwrap().bases().len().into());
        let c_high = Rat::from_integer(m.contract(rest).unwrap().bases().len().into());
        let contracted = lift(&Poly::basis_polynomial(&m.contract(s).unwrap()), rest, n);
        let deleted = lift(&Poly::basis_polynomial(&m.delete(s).unwrap()), rest, n);
        prop_assert_eq!(f.initial_form(), contracted.scale(&c_low));
        prop_assert_eq!(f.leading_form(), deleted.scale(&c_high));
        Ok(())
    })
}

pub fn rayleigh_difference_product_rule() -> Result<(), String> {
    run(&(ternary(4), ternary(4), any::<prop::sample::Index>(), any::<prop::sample::Index>()), |(a, b, i, j)| {
        // disjoint supports keep f·g multiaffine
        let n = a.n() + b.n();
        let (i, j) = (i.index(n), j.index(n));
        prop_assume!(i != j);
        let f = Poly::basis_polynomial(&a).shift(n, 0);
        let g = Poly::basis_polynomial(&b).shift(n, a.n());
        let lhs = f.mul(&g).unwrap().rayleigh_difference(i, j).unwrap();
        let rhs = f
            .mul(&f)
            .unwrap()
            .mul(&g.rayleigh_difference(i, j).unwrap())
            .unwrap()
            .add(&g.mul(&g).unwrap().mul(&f.rayleigh_difference(i, j).unwrap()).unwrap())
            .unwrap();
        prop_assert_eq!(lhs.clone(), rhs);
        prop_assert_eq!(lhs, Poly::basis_polynomial(&a.direct_sum(&b).unwrap()).rayleigh_difference(i, j).unwrap());
        Ok(())
    })
}

pub fn rayleigh_difference_is_bc_minus_ad() -> Result<(), String> {
    run(&(any_matroid(), any::<prop::sample::Index>(), any::<prop::sample::Index>()), |(m, i, j)| {
        let (i, j) = (i.index(m.n()), j.index(m.n()));
        prop_assume!(i != j);
        let h = Poly::basis_polynomial(&m);
        prop_assert!(h.is_multiaffine() && h.is_homogeneous());
        let d = h.rayleigh_difference(i, j).unwrap();
        prop_assert_eq!(d.degree_in(i), 0);
        prop_assert_eq!(d.degree_in(j), 0);
        // F_i F_j - F F_ij from partial derivatives
        let fi = h.partial(i).unwrap();
        let fj = h.partial(j).unwrap();
        let fij = fi.partial(j).unwrap();
        prop_assert_eq!(d, fi.mul(&fj).unwrap().sub(&h.mul(&fij).unwrap()).unwrap());
        Ok(())
    })
}

pub fn sturm_count_is_additive() -> Result<(), String> {
    run(&(proptest::collection::btree_set(-20i64..20, 0..7), any::<u8>(), 1i64..9, 1i64..9), |(roots, split, c, d)| {
        prop_assume!(c != d);
        let roots: Vec<i64> = roots.into_iter().collect();
        let k = split as usize % (roots.len() + 1);
        let (left, right) = roots.split_at(k);
        // coprime factors: disjoint linear roots, distinct quadratics t^2 + c
        let p = from_roots(left).mul(&UniPoly::from_integers(&[c, 0, 1]));
        let q = from_roots(right).mul(&UniPoly::from_integers(&[d, 0, 1]));
        let pq = p.mul(&q);
        prop_assert_eq!(p.sturm_real_root_count().unwrap(), left.len());
        prop_assert_eq!(q.sturm_real_root_count().unwrap(), right.len());
        prop_assert_eq!(pq.sturm_real_root_count().unwrap(), roots.len());
        Ok(())
    })
}

pub fn sos_certificates_split_along_every_variable() -> Result<(), String> {
    run(&(ternary(5), any::<prop::sample::Index>(), any::<prop::sample::Index>()), |(m, i, j)| {
        let (i, j) = (i.index(m.n()), j.index(m.n()));
        prop_assume!(i != j);
        let h = Poly::basis_polynomial(&m);
        let delta = h.rayleigh_difference(i, j).unwrap();
        prop_assume!(!delta.is_zero());
        let opts = SosOptions { dual: false, ..SosOptions::default() };
        match sos::certify_pair(&h, i, j, &opts).unwrap() {
            PairOutcome::Sos(cert) => {
                prop_assert_eq!(sos::verify_sos(&cert, &delta), Ok(()));
                let mut total = Poly::zero(m.n());
                for (d, s) in cert.squares() {
                    total = total.add(&s.mul(&s).unwrap().scale(&d)).unwrap();
                }
                prop_assert_eq!(total, delta);
                for k in (0..m.n()).filter(|&k| k != i && k != j) {
                    prop_assert!(sos::splitting_holds(&cert, &h, k).unwrap());
                }
                // Δ is symmetric in i and j
                prop_assert!(matches!(sos::certify_pair(&h, j, i, &opts).unwrap(), PairOutcome::Sos(_)));
            }
            other => prop_assert!(false, "small matroid not certified: {other:?}"),
        }
        Ok(())
    })
}

pub fn rayleigh_values_ignore_own_coordinates() -> Result<(), String> {
    let points = proptest::collection::vec(-9i64..10, 8);
    run(
        &(any_matroid(), any::<prop::sample::Index>(), any::<prop::sample::Index>(), points, -50i64..50, -50i64..50),
        |(m, i, j, x, u, v)| {
            let (i, j) = (i.index(m.n()), j.index(m.n()));
            prop_assume!(i != j);
            let d = Poly::basis_polynomial(&m).rayleigh_difference(i, j).unwrap();
            let mut x: Vec<Rat> = x.into_iter().take(m.n()).map(rat).collect();
            x.resize(m.n(), rat(0));
            let before = d.evaluate(&x).unwrap();
            x[i] = rat(u);
            x[j] = rat(v);
            prop_assert_eq!(d.evaluate(&x).unwrap(), before);
            Ok(())
        },
    )
}

/// Four-pair sparse paving matroids of rank 4 on 8 elements, some of them
/// Vámos-like.
pub fn vamos_like_violates_ingleton() -> Result<(), String> {
    let pairings = subsequence((0..8usize).collect::<Vec<_>>(), 8).prop_shuffle();
    run(&(pairings, proptest::collection::vec(any::<bool>(), 6)), |(order, keep)| {
        let pairs: Vec<Subset> = order.chunks(2).map(|c| 1 << c[0] | 1 << c[1]).collect();
        let mut nonbases = Vec::new();
        let mut k = 0;
        for a in 0..4 {
            for b in a + 1..4 {
                if keep[k] {
                    nonbases.push(pairs[a] | pairs[b]);
                }
                k += 1;
            }
        }
        let m = Matroid::from_nonbases(8, 4, &nonbases).unwrap();
        if m.is_vamos_like().is_some() {
            prop_assert!(m.ingleton_search(IngletonSearch::default()).is_some());
        }
        Ok(())
    })
}

pub const SUITES: [(&str, fn() -> Result<(), String>); 13] = [
    ("construction_paths_satisfy_exchange", construction_paths_satisfy_exchange),
    ("from_bases_agrees_with_exchange_oracle", from_bases_agrees_with_exchange_oracle),
    ("dual_is_an_involution_and_swaps_minors", dual_is_an_involution_and_swaps_minors),
    ("rank_is_monotone_and_submodular", rank_is_monotone_and_submodular),
    ("canonical_form_ignores_labels", canonical_form_ignores_labels),
    ("coextension_contracts_back", coextension_contracts_back),
    ("specialization_gives_minors_up_to_constants", specialization_gives_minors_up_to_constants),
    ("rayleigh_difference_product_rule", rayleigh_difference_product_rule),
    ("rayleigh_difference_is_bc_minus_ad", rayleigh_difference_is_bc_minus_ad),
    ("sturm_count_is_additive", sturm_count_is_additive),
    ("sos_certificates_split_along_every_variable", sos_certificates_split_along_every_variable),
    ("rayleigh_values_ignore_own_coordinates", rayleigh_values_ignore_own_coordinates),
    ("vamos_like_violates_ingleton", vamos_like_violates_ingleton),
];
