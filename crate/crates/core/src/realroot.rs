//! Exact real-root counting for univariate rational polynomials, and the
//! sampled hyperbolicity test along `{0,1}` lines.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::poly::{exponent, Poly, PolyError};
use crate::rational::Rat;
use crate::subset::{self, Subset};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("zero polynomial has no root count")]
    ZeroPolynomial,
}

/// Dense polynomial in `t`, constant term first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> UniPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> UniPoly {
        UniPoly::new(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    pub fn zero() -> UniPoly {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> &Rat {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * Rat::from_integer(BigInt::from(k))).collect(),
        )
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        let inv = divisor.lead().recip();
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    fn monic(&self) -> UniPoly {
        let inv = self.lead().recip();
        UniPoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// `p / gcd(p, p')`.
    pub fn squarefree_part(&self) -> UniPoly {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    /// The Sturm sequence `p, p', -rem(p, p'), ...`.
    pub fn sturm_chain(&self) -> Vec<UniPoly> {
        let mut chain = vec![self.clone()];
        let mut next = self.derivative();
        while !next.is_zero() {
            let (_, r) = chain.last().unwrap().div_rem(&next);
            chain.push(next);
            next = UniPoly::new(r.coeffs.into_iter().map(|c| -c).collect());
        }
        chain
    }

    /// Number of distinct real roots.
    pub fn sturm_real_root_count(&self) -> Result<usize, RootError> {
        if self.is_zero() {
            return Err(RootError::ZeroPolynomial);
        }
        let chain = self.sturm_chain();
        let at_pos: Vec<i8> = chain.iter().map(|p| sign(p.lead())).collect();
        let at_neg: Vec<i8> =
            chain.iter().map(|p| if p.degree().unwrap() % 2 == 0 { sign(p.lead()) } else { -sign(p.lead()) }).collect();
        Ok(variations(&at_neg) - variations(&at_pos))
    }

    /// Real roots counted with multiplicity: the roots of multiplicity
    /// greater than `k` are the distinct roots of the `k`-th iterated
    /// `gcd(g, g')`.
    pub fn real_roots_with_multiplicity(&self) -> Result<usize, RootError> {
        if self.is_zero() {
            return Err(RootError::ZeroPolynomial);
        }
        let mut total = 0;
        let mut g = self.clone();
        while g.degree().unwrap() > 0 {
            total += g.sturm_real_root_count()?;
            g = g.gcd(&g.derivative());
        }
        Ok(total)
    }

    /// All roots real: the squarefree part has as many distinct real roots
    /// as its degree.
    pub fn is_real_rooted(&self) -> Result<bool, RootError> {
        if self.is_zero() {
            return Err(RootError::ZeroPolynomial);
        }
        let q = self.squarefree_part();
        Ok(q.sturm_real_root_count()? == q.degree().unwrap())
    }
}

fn sign(x: &Rat) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn variations(signs: &[i8]) -> usize {
    let nonzero: Vec<i8> = signs.iter().copied().filter(|&s| s != 0).collect();
    nonzero.windows(2).filter(|w| w[0] != w[1]).count()
}

/// `t ↦ h(e t − v)`.
pub fn restrict_line(h: &Poly, e: &[Rat], v: &[Rat]) -> Result<UniPoly, PolyError> {
    let n = h.nvars();
    for len in [e.len(), v.len()] {
        if len != n {
            return Err(PolyError::DimensionMismatch { expected: n, found: len });
        }
    }
    let linear: Vec<UniPoly> = (0..n).map(|k| UniPoly::new(vec![-v[k].clone(), e[k].clone()])).collect();
    let mut total = vec![Rat::zero(); h.degree().unwrap_or(0) as usize + 1];
    for (&key, c) in h.terms() {
        let mut term = UniPoly::new(vec![c.clone()]);
        for (k, lin) in linear.iter().enumerate() {
            for _ in 0..exponent(key, k) {
                term = term.mul(lin);
            }
        }
        for (i, x) in term.coeffs.into_iter().enumerate() {
            total[i] += x;
        }
    }
    Ok(UniPoly::new(total))
}

/// A `{0,1}` line along which `h` has non-real roots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonRealWitness {
    pub e: Vec<u8>,
    pub v: Vec<u8>,
    /// Degree of `h(e t − v)`.
    pub degree: usize,
    /// Real roots of `h(e t − v)`, counted with multiplicity.
    pub real_roots: usize,
}

impl NonRealWitness {
    /// Recomputes the restriction exactly and checks the stored counts.
    pub fn verify(&self, h: &Poly) -> bool {
        if self.e.len() != h.nvars() || self.v.len() != h.nvars() {
            return false;
        }
        let to_rat = |x: &[u8]| x.iter().map(|&b| Rat::from_integer(b.into())).collect::<Vec<_>>();
        let Ok(p) = restrict_line(h, &to_rat(&self.e), &to_rat(&self.v)) else {
            return false;
        };
        match (p.degree(), p.real_roots_with_multiplicity()) {
            (Some(d), Ok(k)) => d == self.degree && k == self.real_roots && k < d,
            _ => false,
        }
    }
}

/// Which directions `e ∈ {0,1}^n` are sampled; `v` always ranges over all
/// of `{0,1}^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum PairConvention {
    /// `h(e) ≠ 0`, so that every restriction has full degree.
    #[default]
    NonvanishingDirection,
    /// Every `e ≠ 0`.
    NonzeroDirection,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HyperbolicityOutcome {
    Pass { tested: u64 },
    Fail(NonRealWitness),
}

/// Integer restriction of a multiaffine integer polynomial to `e t − v`
/// with `e, v` 0/1 masks; `None` when the fast path does not apply.
struct FastRestrict {
    terms: Vec<(Subset, i128)>,
    degree: usize,
}

impl FastRestrict {
    fn new(h: &Poly) -> Option<FastRestrict> {
        if !h.is_multiaffine() {
            return None;
        }
        let mut terms = Vec::with_capacity(h.len());
        for (&key, c) in h.terms() {
            if !c.is_integer() {
                return None;
            }
            let c: i128 = c.to_integer().try_into().ok()?;
            let mask = (0..h.nvars()).filter(|&i| exponent(key, i) == 1).fold(0, |m, i| m | 1 << i);
            terms.push((mask, c));
        }
        Some(FastRestrict { terms, degree: h.degree().unwrap_or(0) as usize })
    }

    // Each variable becomes 0, t, -1 or t-1 depending on (e_k, v_k).
    fn coeffs(&self, e: Subset, v: Subset) -> Vec<i128> {
        let mut total = vec![0i128; self.degree + 1];
        for &(mask, c) in &self.terms {
            if mask & !(e | v) != 0 {
                continue;
            }
            let t_only = subset::size(mask & e & !v);
            let minus_one = subset::size(mask & v & !e);
            let shifted = subset::size(mask & e & v);
            let sign = if minus_one % 2 == 0 { c } else { -c };
            // t^t_only * (t-1)^shifted
            let mut binom = 1i128;
            for k in 0..=shifted {
                let s = if (shifted - k) % 2 == 0 { sign } else { -sign };
                total[t_only + k] += s * binom;
                binom = binom * (shifted - k) as i128 / (k + 1) as i128;
            }
        }
        while total.last() == Some(&0) {
            total.pop();
        }
        total
    }
}

fn mask_to_bits(s: Subset, n: usize) -> Vec<u8> {
    (0..n).map(|i| subset::contains(s, i) as u8).collect()
}

fn ints_to_uni(c: &[i128]) -> UniPoly {
    UniPoly::new(c.iter().map(|&x| Rat::from_integer(BigInt::from(x))).collect())
}

/// Decides one pair; `None` if it passes, `Some((degree, real_roots))`
/// otherwise. The zero restriction counts as passing.
fn check_pair(h: &Poly, fast: Option<&FastRestrict>, e: Subset, v: Subset) -> Option<(usize, usize)> {
    let p = match fast {
        Some(f) => ints_to_uni(&f.coeffs(e, v)),
        None => {
            let n = h.nvars();
            let to_rat = |s: Subset| {
                (0..n).map(|i| Rat::from_integer((subset::contains(s, i) as i64).into())).collect::<Vec<_>>()
            };
            restrict_line(h, &to_rat(e), &to_rat(v)).expect("dimensions agree")
        }
    };
    if p.is_zero() || p.is_real_rooted().expect("nonzero") {
        None
    } else {
        Some((p.degree().unwrap(), p.real_roots_with_multiplicity().expect("nonzero")))
    }
}

fn direction_allowed(h: &Poly, e: Subset, convention: PairConvention) -> bool {
    match convention {
        PairConvention::NonzeroDirection => e != 0,
        PairConvention::NonvanishingDirection => {
            let point: Vec<Rat> =
                (0..h.nvars()).map(|i| Rat::from_integer((subset::contains(e, i) as i64).into())).collect();
            !h.evaluate(&point).expect("dimensions agree").is_zero()
        }
    }
}

/// Tests the given `(e, v)` mask pairs in order and returns the first
/// failing one.
pub fn hyperbolicity_sample_test(h: &Poly, pairs: impl IntoIterator<Item = (Subset, Subset)>) -> HyperbolicityOutcome {
    let fast = FastRestrict::new(h);
    let mut tested = 0;
    for (e, v) in pairs {
        tested += 1;
        if let Some((degree, real_roots)) = check_pair(h, fast.as_ref(), e, v) {
            return HyperbolicityOutcome::Fail(NonRealWitness {
                e: mask_to_bits(e, h.nvars()),
                v: mask_to_bits(v, h.nvars()),
                degree,
                real_roots,
            });
        }
    }
    HyperbolicityOutcome::Pass { tested }
}

/// Runs the default pair set exhaustively and in parallel. Returns the
/// number of failing pairs and the first failing pair in the order
/// `(e, v)` ascending by mask.
pub fn scan_pairs(h: &Poly, convention: PairConvention) -> (u64, Option<NonRealWitness>) {
    let n = h.nvars();
    let fast = FastRestrict::new(h);
    let per_direction: Vec<(u64, Option<NonRealWitness>)> = (0..1u32 << n)
        .into_par_iter()
        .map(|e| {
            if !direction_allowed(h, e, convention) {
                return (0, None);
            }
            let mut cache: HashMap<Vec<i128>, Option<(usize, usize)>> = HashMap::new();
            let mut count = 0;
            let mut first = None;
            for v in 0..1u32 << n {
                let outcome = match &fast {
                    Some(f) => {
                        let c = f.coeffs(e, v);
                        *cache.entry(c.clone()).or_insert_with(|| {
                            let p = ints_to_uni(&c);
                            if p.is_zero() || p.is_real_rooted().expect("nonzero") {
                                None
                            } else {
                                Some((p.degree().unwrap(), p.real_roots_with_multiplicity().expect("nonzero")))
                            }
                        })
                    }
                    None => check_pair(h, None, e, v),
                };
                if let Some((degree, real_roots)) = outcome {
                    count += 1;
                    if first.is_none() {
                        first =
                            Some(NonRealWitness { e: mask_to_bits(e, n), v: mask_to_bits(v, n), degree, real_roots });
                    }
                }
            }
            (count, first)
        })
        .collect();
    let total = per_direction.iter().map(|(c, _)| c).sum();
    let first = per_direction.into_iter().find_map(|(_, w)| w);
    (total, first)
}

pub fn count_failing_pairs(h: &Poly, convention: PairConvention) -> u64 {
    scan_pairs(h, convention).0
}

/// Default sampled test: the first failing pair under `convention`.
pub fn hyperbolicity_test(h: &Poly, convention: PairConvention) -> HyperbolicityOutcome {
    let n = h.nvars();
    let directions: Vec<Subset> = (0..1u32 << n).filter(|&e| direction_allowed(h, e, convention)).collect();
    let tested = directions.len() as u64 * (1u64 << n);
    let fast = FastRestrict::new(h);
    let found = directions.par_iter().find_map_first(|&e| {
        (0..1u32 << n).find_map(|v| {
            check_pair(h, fast.as_ref(), e, v).map(|(degree, real_roots)| NonRealWitness {
                e: mask_to_bits(e, n),
                v: mask_to_bits(v, n),
                degree,
                real_roots,
            })
        })
    });
    match found {
        Some(w) => HyperbolicityOutcome::Fail(w),
        None => HyperbolicityOutcome::Pass { tested },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::Matroid;
    use crate::rational::rat;

    #[test]
    fn simple_counts() {
        let p = UniPoly::from_integers(&[1, 0, 1]);
        assert_eq!(p.sturm_real_root_count().unwrap(), 0);
        assert!(!p.is_real_rooted().unwrap());
        // (t-1)^2 (t-2) = t^3 - 4t^2 + 5t - 2
        let q = UniPoly::from_integers(&[-2, 5, -4, 1]);
        assert_eq!(q.squarefree_part(), UniPoly::from_integers(&[2, -3, 1]));
        assert_eq!(q.sturm_real_root_count().unwrap(), 2);
        assert_eq!(q.real_roots_with_multiplicity().unwrap(), 3);
        assert!(q.is_real_rooted().unwrap());
        assert!(UniPoly::from_integers(&[1, -6, 6]).is_real_rooted().unwrap());
        assert_eq!(UniPoly::zero().is_real_rooted(), Err(RootError::ZeroPolynomial));
        assert!(UniPoly::from_integers(&[3]).is_real_rooted().unwrap());
    }

    #[test]
    fn line_restriction_of_u24() {
        let h = Poly::basis_polynomial(&Matroid::uniform(2, 4));
        let ones = vec![rat(1); 4];
        let v = vec![rat(1), rat(1), rat(0), rat(0)];
        assert_eq!(restrict_line(&h, &ones, &v).unwrap(), UniPoly::from_integers(&[1, -6, 6]));
        let zero = vec![rat(0); 4];
        assert_eq!(restrict_line(&h, &ones, &zero).unwrap(), UniPoly::from_integers(&[0, 0, 6]));
    }

    #[test]
    fn fast_path_agrees_with_exact_restriction() {
        let m = Matroid::from_basis_lists(4, 2, &[&[1, 2], &[2, 3], &[1, 4], &[2, 4], &[3, 4]]).unwrap();
        let h = Poly::basis_polynomial(&m).add(&Poly::parse("3*x1*x3", 4).unwrap()).unwrap();
        let fast = FastRestrict::new(&h).unwrap();
        for e in 0..16u32 {
            for v in 0..16u32 {
                let to_rat = |s: Subset| (0..4).map(|i| rat(subset::contains(s, i) as i64)).collect::<Vec<_>>();
                let exact = restrict_line(&h, &to_rat(e), &to_rat(v)).unwrap();
                assert_eq!(ints_to_uni(&fast.coeffs(e, v)), exact, "e={e} v={v}");
            }
        }
    }

    #[test]
    fn uniform_passes() {
        let h = Poly::basis_polynomial(&Matroid::uniform(2, 4));
        assert_eq!(count_failing_pairs(&h, PairConvention::NonvanishingDirection), 0);
        assert_eq!(count_failing_pairs(&h, PairConvention::NonzeroDirection), 0);
        assert!(matches!(hyperbolicity_test(&h, PairConvention::default()), HyperbolicityOutcome::Pass { .. }));
    }

    #[test]
    fn nonreal_witness_verifies() {
        // x1^2 + x2^2 is not hyperbolic in direction (1,0) through v = (0,1)
        let h = Poly::parse("x1^2 + x2^2", 2).unwrap();
        match hyperbolicity_sample_test(&h, [(0b01, 0b10)]) {
            HyperbolicityOutcome::Fail(w) => {
                assert_eq!((w.degree, w.real_roots), (2, 0));
                assert!(w.verify(&h));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
