//! Sum-of-squares certificates for Rayleigh differences.
//!
//! A Rayleigh difference of a homogeneous multiaffine polynomial of degree
//! `r` can only be a sum of squares of multiaffine forms of degree `r − 1`
//! avoiding `x_i, x_j`, so every Gram matrix lives over that fixed monomial
//! basis. Entries of a Gram matrix group into classes by the product
//! monomial `m_a m_b`; the affine constraint `mᵀ G m = Δ` fixes the weighted
//! sum over each class and nothing else.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::linalg::{self, Ldl, RatMatrix};
use crate::poly::{self, ExpKey, Poly, PolyError};
use crate::rational::{self, Rat};
use crate::sdp::{self, SdpOptions, SparseSym};
use crate::subset;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SosError {
    #[error("monomial {0} of the target is not a product of two basis monomials")]
    NotRepresentable(String),
    #[error("square coefficient of basis monomial {0} is negative")]
    NegativeDiagonal(String),
    #[error("numeric search stalled with smallest eigenvalue {min_eigenvalue:e}")]
    IterationLimit { min_eigenvalue: f64 },
    #[error("no rational Gram matrix found up to denominator {max_denom}")]
    RationalizationFailed { max_denom: u64 },
    #[error("no positive definite dual matrix found")]
    NotFound,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Why a stored certificate was rejected.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Rejection {
    #[error("matrix size does not match the monomial list")]
    Shape,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("mᵀ G m differs from the target polynomial")]
    IdentityFails,
    #[error("stored factorization does not reproduce the matrix")]
    BadFactorization,
    #[error("factorization has a pivot of the wrong sign")]
    BadPivot,
    #[error("monomial list is not part of the admissible basis")]
    ForeignMonomial,
    #[error("an omitted basis monomial has a nonzero square coefficient")]
    OmittedMonomial,
    #[error("trace pairing with a Gram system matrix is nonzero")]
    TraceNonzero,
    #[error("index pair does not match")]
    IndexMismatch,
}

/// Multiaffine monomials of degree `deg(delta)/2` in the variables other
/// than `i` and `j`. Empty for the zero polynomial.
pub fn monomial_basis(delta: &Poly, i: usize, j: usize) -> Vec<ExpKey> {
    let Some(deg) = delta.degree() else { return Vec::new() };
    let n = delta.nvars();
    let mut allowed = subset::full(n);
    allowed &= !(1 << i) & !(1 << j);
    subset::k_subsets_of(allowed, deg as usize / 2).map(poly::key_of_subset).collect()
}

fn show_key(key: ExpKey, nvars: usize) -> String {
    Poly::from_terms(nvars, [(key, Rat::one())]).to_string()
}

/// Symmetric matrix stored as its upper-triangle entries.
pub type SparseRat = Vec<(usize, usize, Rat)>;

fn dense(size: usize, entries: &SparseRat) -> RatMatrix {
    let mut m = linalg::zeros(size, size);
    for (a, b, v) in entries {
        m[*a][*b] = v.clone();
        m[*b][*a] = v.clone();
    }
    m
}

fn to_f64_sym(entries: &SparseRat) -> SparseSym {
    let mut out = Vec::with_capacity(2 * entries.len());
    for (a, b, v) in entries {
        let x = rational::to_f64(v);
        out.push((*a, *b, x));
        if a != b {
            out.push((*b, *a, x));
        }
    }
    out
}

fn to_dmatrix(m: &RatMatrix) -> DMatrix<f64> {
    let n = m.len();
    DMatrix::from_fn(n, n, |a, b| rational::to_f64(&m[a][b]))
}

/// Trace pairing `tr(A S)` with a sparse symmetric `S`.
fn pair_sparse(a: &RatMatrix, s: &SparseRat) -> Rat {
    let mut acc = Rat::zero();
    for (r, c, v) in s {
        let term = &a[*r][*c] * v;
        if r == c {
            acc += term;
        } else {
            acc += &term + &term;
        }
    }
    acc
}

/// `mᵀ G m` as a polynomial.
pub fn gram_polynomial(nvars: usize, monomials: &[ExpKey], gram: &RatMatrix) -> Poly {
    let mut p = Poly::zero(nvars);
    for (a, &ma) in monomials.iter().enumerate() {
        for (b, &mb) in monomials.iter().enumerate() {
            if !gram[a][b].is_zero() {
                p.add_term(ma + mb, gram[a][b].clone());
            }
        }
    }
    p
}

/// Affine description `{G0 + Σ λ_l G_l}` of all Gram matrices of a target.
#[derive(Debug, Clone)]
pub struct GramSystem {
    pub i: usize,
    pub j: usize,
    pub target: Poly,
    pub monomials: Vec<ExpKey>,
    pub g0: RatMatrix,
    kernel: Vec<SparseRat>,
    /// Entry classes `(product monomial, positions a ≤ b)`.
    classes: Vec<(ExpKey, Vec<(usize, usize)>)>,
}

impl GramSystem {
    /// Gram system over an explicit monomial list.
    pub fn with_monomials(target: &Poly, i: usize, j: usize, monomials: Vec<ExpKey>) -> Result<GramSystem, SosError> {
        let nvars = target.nvars();
        let mut by_key: BTreeMap<ExpKey, Vec<(usize, usize)>> = BTreeMap::new();
        for a in 0..monomials.len() {
            for b in a..monomials.len() {
                by_key.entry(monomials[a] + monomials[b]).or_default().push((a, b));
            }
        }
        for (key, _) in target.terms() {
            if !by_key.contains_key(key) {
                return Err(SosError::NotRepresentable(show_key(*key, nvars)));
            }
        }
        let m = monomials.len();
        let mut g0 = linalg::zeros(m, m);
        let mut kernel = Vec::new();
        for (key, pairs) in &by_key {
            let weight: i64 = pairs.iter().map(|(a, b)| if a == b { 1 } else { 2 }).sum();
            let value = target.coeff(*key) / rational::rat(weight);
            for &(a, b) in pairs {
                g0[a][b] = value.clone();
                g0[b][a] = value.clone();
            }
            // squares of distinct multiaffine monomials differ, so a class with
            // more than one position consists of off-diagonal entries only
            let (a0, b0) = pairs[0];
            for &(a, b) in &pairs[1..] {
                kernel.push(vec![(a, b, Rat::one()), (a0, b0, -Rat::one())]);
            }
        }
        Ok(GramSystem { i, j, target: target.clone(), monomials, g0, kernel, classes: by_key.into_iter().collect() })
    }

    /// Gram system over the full admissible basis.
    pub fn new(delta: &Poly, i: usize, j: usize) -> Result<GramSystem, SosError> {
        GramSystem::with_monomials(delta, i, j, monomial_basis(delta, i, j))
    }

    pub fn size(&self) -> usize {
        self.monomials.len()
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel.len()
    }

    pub fn kernel_matrix(&self, l: usize) -> RatMatrix {
        dense(self.size(), &self.kernel[l])
    }

    pub fn kernel_matrices(&self) -> Vec<RatMatrix> {
        (0..self.kernel.len()).map(|l| self.kernel_matrix(l)).collect()
    }

    /// Drops basis monomials whose square does not occur in the target; the
    /// matching row of any PSD Gram matrix must vanish.
    pub fn reduced(&self) -> Result<GramSystem, SosError> {
        let nvars = self.target.nvars();
        let mut keep = Vec::new();
        for &m in &self.monomials {
            let c = self.target.coeff(m + m);
            if c.is_negative() {
                return Err(SosError::NegativeDiagonal(show_key(m, nvars)));
            }
            if c.is_positive() {
                keep.push(m);
            }
        }
        if keep.len() == self.monomials.len() {
            return Ok(self.clone());
        }
        GramSystem::with_monomials(&self.target, self.i, self.j, keep)
    }

    /// Projects a symmetric matrix onto the affine Gram set, exactly and in
    /// the Frobenius norm: within each class the same shift is added to
    /// every entry.
    pub fn project(&self, g: &mut RatMatrix) {
        for (key, pairs) in &self.classes {
            let mut sum = Rat::zero();
            let mut weight = 0i64;
            for &(a, b) in pairs {
                if a == b {
                    sum += &g[a][b];
                    weight += 1;
                } else {
                    sum += &g[a][b] * rational::rat(2);
                    weight += 2;
                }
            }
            let shift = (self.target.coeff(*key) - sum) / rational::rat(weight);
            if shift.is_zero() {
                continue;
            }
            for &(a, b) in pairs {
                let v = &g[a][b] + &shift;
                g[a][b] = v.clone();
                g[b][a] = v;
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct NumericGram {
    pub gram: DMatrix<f64>,
    pub min_eigenvalue: f64,
}

/// Numeric search for a PSD member of the Gram set, maximizing its smallest
/// eigenvalue.
pub fn sdp_feasible(system: &GramSystem, tol: f64) -> Result<NumericGram, SosError> {
    let a0 = to_dmatrix(&system.g0);
    let dirs: Vec<SparseSym> = system.kernel.iter().map(to_f64_sym).collect();
    let sol = sdp::maximize_min_eigenvalue(&a0, &dirs, &SdpOptions::default());
    if sol.t >= -tol {
        Ok(NumericGram { gram: sol.matrix, min_eigenvalue: sol.t })
    } else {
        Err(SosError::IterationLimit { min_eigenvalue: sol.t })
    }
}

/// Exact Gram certificate: `Δ_ij = mᵀ G m` with `G` PSD.
#[derive(Debug, Clone, PartialEq)]
pub struct SosCertificate {
    pub i: usize,
    pub j: usize,
    pub nvars: usize,
    pub monomials: Vec<ExpKey>,
    pub gram: RatMatrix,
    pub ldl: Ldl,
}

impl SosCertificate {
    /// Weighted squares `(d_k, s_k)` with `Σ d_k s_k² = mᵀ G m`, read off the
    /// factorization.
    pub fn squares(&self) -> Vec<(Rat, Poly)> {
        let n = self.monomials.len();
        let mut out = Vec::new();
        for k in 0..n {
            if self.ldl.pivots[k].is_zero() {
                continue;
            }
            let mut s = Poly::zero(self.nvars);
            for i in k..n {
                if !self.ldl.lower[i][k].is_zero() {
                    s.add_term(self.monomials[self.ldl.perm[i]], self.ldl.lower[i][k].clone());
                }
            }
            out.push((self.ldl.pivots[k].clone(), s));
        }
        out
    }

    /// Pads the certificate with zero rows for extra basis monomials.
    fn embed(self, monomials: &[ExpKey]) -> SosCertificate {
        if monomials == self.monomials.as_slice() {
            return self;
        }
        let pos: Vec<usize> =
            self.monomials.iter().map(|m| monomials.iter().position(|x| x == m).expect("sub-basis")).collect();
        let mut gram = linalg::zeros(monomials.len(), monomials.len());
        for (a, &pa) in pos.iter().enumerate() {
            for (b, &pb) in pos.iter().enumerate() {
                gram[pa][pb] = self.gram[a][b].clone();
            }
        }
        let ldl = Ldl::factor_psd(&gram).expect("padding keeps a PSD matrix PSD");
        SosCertificate { gram, ldl, monomials: monomials.to_vec(), ..self }
    }
}

fn denominator_schedule(denom_bound: u64) -> impl Iterator<Item = u64> {
    std::iter::successors(Some(denom_bound.max(1)), |d| d.checked_mul(100)).take_while(|&d| d <= 1_000_000_000_000)
}

/// Rounds a numeric Gram matrix, projects it exactly onto the Gram set and
/// checks positive semidefiniteness by exact factorization, escalating the
/// denominator bound by factors of 100 up to `10^12`.
pub fn rationalize_and_verify(
    system: &GramSystem,
    approx: &DMatrix<f64>,
    denom_bound: u64,
) -> Result<SosCertificate, SosError> {
    let m = system.size();
    let mut last = denom_bound;
    for d in denominator_schedule(denom_bound) {
        last = d;
        let mut g = linalg::zeros(m, m);
        for a in 0..m {
            for b in a..m {
                let v = rational::approximate((approx[(a, b)] + approx[(b, a)]) / 2.0, d);
                g[a][b] = v.clone();
                g[b][a] = v;
            }
        }
        system.project(&mut g);
        if let Ok(ldl) = Ldl::factor_psd(&g) {
            return Ok(SosCertificate {
                i: system.i,
                j: system.j,
                nvars: system.target.nvars(),
                monomials: system.monomials.clone(),
                gram: g,
                ldl,
            });
        }
    }
    Err(SosError::RationalizationFailed { max_denom: last })
}

/// Exact re-check of an SOS certificate against the target polynomial.
pub fn verify_sos(cert: &SosCertificate, delta: &Poly) -> Result<(), Rejection> {
    let m = cert.monomials.len();
    if cert.gram.len() != m || cert.gram.iter().any(|r| r.len() != m) {
        return Err(Rejection::Shape);
    }
    if !linalg::is_symmetric(&cert.gram) {
        return Err(Rejection::NotSymmetric);
    }
    if cert.nvars != delta.nvars() || gram_polynomial(cert.nvars, &cert.monomials, &cert.gram) != *delta {
        return Err(Rejection::IdentityFails);
    }
    if !cert.ldl.verifies(&cert.gram) {
        return Err(Rejection::BadFactorization);
    }
    if cert.ldl.pivots.iter().any(|p| p.is_negative()) {
        return Err(Rejection::BadPivot);
    }
    Ok(())
}

/// Exact splitting of a certified `Δ_ij(f) = Σ d_l s_l²` along a variable
/// `x_k`: writing `s_l = a_l x_k + b_l`, checks
/// `Δ_ij(∂_k f) = Σ d_l a_l²` and `Δ_ij(f|_{x_k=0}) = Σ d_l b_l²`.
pub fn splitting_holds(cert: &SosCertificate, f: &Poly, k: usize) -> Result<bool, PolyError> {
    let (i, j) = (cert.i, cert.j);
    let lhs_a = f.partial(k)?.rayleigh_difference(i, j)?;
    let lhs_b = f.substitute(k, &Rat::zero())?.rayleigh_difference(i, j)?;
    let mut sum_a = Poly::zero(f.nvars());
    let mut sum_b = Poly::zero(f.nvars());
    for (d, s) in cert.squares() {
        let a = s.partial(k)?;
        let b = s.substitute(k, &Rat::zero())?;
        sum_a = sum_a.add(&a.mul(&a)?.scale(&d))?;
        sum_b = sum_b.add(&b.mul(&b)?.scale(&d))?;
    }
    Ok(sum_a == lhs_a && sum_b == lhs_b)
}

/// Positive definite matrix orthogonal to a Gram system, proving that the
/// system has no PSD member.
#[derive(Debug, Clone, PartialEq)]
pub struct DualPsdCertificate {
    pub i: usize,
    pub j: usize,
    pub nvars: usize,
    /// Basis the matrix is indexed by; monomials of the full basis missing
    /// here have zero square coefficient in the target.
    pub monomials: Vec<ExpKey>,
    pub a: RatMatrix,
    pub ldl: Ldl,
}

/// Searches the trace-orthogonal complement of `span(mats)` inside the
/// symmetric matrices for a positive definite element.
pub fn find_orthogonal_pd(mats: &[RatMatrix]) -> Option<(RatMatrix, Ldl)> {
    let size = mats.first().map_or(0, |m| m.len());
    let positions: Vec<(usize, usize)> = (0..size).flat_map(|a| (a..size).map(move |b| (a, b))).collect();
    let rows: RatMatrix = mats
        .iter()
        .map(|g| {
            positions.iter().map(|&(a, b)| if a == b { g[a][b].clone() } else { &g[a][b] * rational::rat(2) }).collect()
        })
        .collect();
    let basis: Vec<SparseRat> = linalg::nullspace(&rows, positions.len())
        .into_iter()
        .map(|v| v.into_iter().zip(&positions).filter(|(x, _)| !x.is_zero()).map(|(x, &(a, b))| (a, b, x)).collect())
        .collect();
    orthogonal_pd_from_basis(size, &basis)
}

fn sparse_trace(s: &SparseRat) -> Rat {
    s.iter().filter(|(a, b, _)| a == b).map(|(_, _, v)| v.clone()).sum()
}

fn orthogonal_pd_from_basis(size: usize, basis: &[SparseRat]) -> Option<(RatMatrix, Ldl)> {
    if size == 0 {
        return None;
    }
    // unit-trace slice: pin the coordinate of an element with nonzero trace
    let pivot = basis.iter().position(|b| !sparse_trace(b).is_zero())?;
    let tp = sparse_trace(&basis[pivot]);
    let mut a0 = dense(size, &basis[pivot]);
    for row in a0.iter_mut() {
        for x in row.iter_mut() {
            *x /= &tp;
        }
    }
    let dirs: Vec<SparseRat> = basis
        .iter()
        .enumerate()
        .filter(|&(l, _)| l != pivot)
        .map(|(_, b)| {
            let ratio = sparse_trace(b) / &tp;
            let mut acc: BTreeMap<(usize, usize), Rat> = BTreeMap::new();
            for (r, c, v) in b {
                *acc.entry((*r, *c)).or_insert_with(Rat::zero) += v;
            }
            if !ratio.is_zero() {
                for (r, c, v) in &basis[pivot] {
                    *acc.entry((*r, *c)).or_insert_with(Rat::zero) -= &ratio * v;
                }
            }
            acc.into_iter().filter(|(_, v)| !v.is_zero()).map(|((r, c), v)| (r, c, v)).collect()
        })
        .collect();
    let fdirs: Vec<SparseSym> = dirs.iter().map(to_f64_sym).collect();
    let sol = sdp::maximize_min_eigenvalue(&to_dmatrix(&a0), &fdirs, &SdpOptions::default());
    if !(sol.t > 1e-12) {
        return None;
    }
    for d in denominator_schedule(1_000_000) {
        let mut a = a0.clone();
        for (z, dir) in sol.z.iter().zip(&dirs) {
            let q = rational::approximate(*z, d);
            if q.is_zero() {
                continue;
            }
            for (r, c, v) in dir {
                let t = &q * v;
                a[*r][*c] += &t;
                if r != c {
                    a[*c][*r] += t;
                }
            }
        }
        if let Ok(ldl) = Ldl::factor_pd(&a) {
            return Some((a, ldl));
        }
    }
    None
}

/// Dual certificate for a Gram system: after dropping basis monomials with
/// zero square coefficient, a positive definite `A` with `tr(A G) = 0` for
/// `G0` and every kernel element.
pub fn dual_psd_certificate(system: &GramSystem) -> Result<DualPsdCertificate, SosError> {
    let reduced = system.reduced()?;
    let mut mats = vec![reduced.g0.clone()];
    mats.extend(reduced.kernel_matrices());
    let (a, ldl) = find_orthogonal_pd(&mats).ok_or(SosError::NotFound)?;
    Ok(DualPsdCertificate {
        i: system.i,
        j: system.j,
        nvars: system.target.nvars(),
        monomials: reduced.monomials,
        a,
        ldl,
    })
}

/// Exact re-check of a dual certificate against the full Gram system of the
/// same target.
pub fn verify_dual(cert: &DualPsdCertificate, system: &GramSystem) -> Result<(), Rejection> {
    if (cert.i, cert.j) != (system.i, system.j) && (cert.j, cert.i) != (system.i, system.j) {
        return Err(Rejection::IndexMismatch);
    }
    if cert.monomials.iter().any(|m| !system.monomials.contains(m)) {
        return Err(Rejection::ForeignMonomial);
    }
    let mut sorted = cert.monomials.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != cert.monomials.len() {
        return Err(Rejection::ForeignMonomial);
    }
    for m in &system.monomials {
        if !cert.monomials.contains(m) && !system.target.coeff(m + m).is_zero() {
            return Err(Rejection::OmittedMonomial);
        }
    }
    let size = cert.monomials.len();
    if cert.a.len() != size || cert.a.iter().any(|r| r.len() != size) {
        return Err(Rejection::Shape);
    }
    if !linalg::is_symmetric(&cert.a) {
        return Err(Rejection::NotSymmetric);
    }
    if !cert.ldl.verifies(&cert.a) {
        return Err(Rejection::BadFactorization);
    }
    if size == 0 || cert.ldl.pivots.iter().any(|p| !p.is_positive()) {
        return Err(Rejection::BadPivot);
    }
    let sub = GramSystem::with_monomials(&system.target, system.i, system.j, cert.monomials.clone())
        .map_err(|_| Rejection::OmittedMonomial)?;
    if !linalg::trace_product(&cert.a, &sub.g0).is_zero()
        || sub.kernel.iter().any(|k| !pair_sparse(&cert.a, k).is_zero())
    {
        return Err(Rejection::TraceNonzero);
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SosOptions {
    /// Numeric feasibility tolerance on the smallest eigenvalue.
    pub tol: f64,
    /// First denominator bound of the rounding schedule.
    pub denom_bound: u64,
    /// Look for a dual certificate when no exact Gram matrix is found.
    pub dual: bool,
}

impl Default for SosOptions {
    fn default() -> Self {
        SosOptions { tol: 1e-9, denom_bound: 1_000_000, dual: true }
    }
}

/// Result of certifying one Rayleigh difference.
#[derive(Debug, Clone)]
pub enum PairOutcome {
    Sos(SosCertificate),
    NotSos(DualPsdCertificate),
    /// A numerically PSD Gram matrix exists but no exact one was found.
    NumericOnly {
        min_eigenvalue: f64,
    },
    Inconclusive {
        reason: String,
    },
}

impl PairOutcome {
    pub fn is_sos(&self) -> bool {
        matches!(self, PairOutcome::Sos(_))
    }

    pub fn is_not_sos(&self) -> bool {
        matches!(self, PairOutcome::NotSos(_))
    }
}

/// Tries to certify `delta = Δ_ij` as SOS, and failing that, as not SOS.
pub fn certify_delta(delta: &Poly, i: usize, j: usize, opts: &SosOptions) -> PairOutcome {
    let full = match GramSystem::new(delta, i, j) {
        Ok(s) => s,
        Err(e) => return PairOutcome::Inconclusive { reason: e.to_string() },
    };
    let reduced = match full.reduced() {
        Ok(s) => s,
        Err(e) => return PairOutcome::Inconclusive { reason: e.to_string() },
    };
    let mut numeric = None;
    match sdp_feasible(&reduced, opts.tol) {
        Ok(ng) => {
            if let Ok(cert) = rationalize_and_verify(&reduced, &ng.gram, opts.denom_bound) {
                return PairOutcome::Sos(cert.embed(&full.monomials));
            }
            numeric = Some(ng.min_eigenvalue);
        }
        Err(SosError::IterationLimit { .. }) => {}
        Err(e) => return PairOutcome::Inconclusive { reason: e.to_string() },
    }
    if opts.dual {
        if let Ok(cert) = dual_psd_certificate(&full) {
            return PairOutcome::NotSos(cert);
        }
    }
    match numeric {
        Some(min_eigenvalue) => PairOutcome::NumericOnly { min_eigenvalue },
        None => PairOutcome::Inconclusive { reason: "no Gram matrix and no dual certificate found".into() },
    }
}

pub fn certify_pair(h: &Poly, i: usize, j: usize, opts: &SosOptions) -> Result<PairOutcome, PolyError> {
    Ok(certify_delta(&h.rayleigh_difference(i, j)?, i, j, opts))
}

/// Certification of every unordered pair, in parallel, ordered by pair.
pub fn certify_all_pairs(h: &Poly, opts: &SosOptions) -> Vec<((usize, usize), PairOutcome)> {
    let n = h.nvars();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    pairs
        .into_par_iter()
        .map(|(i, j)| ((i, j), certify_pair(h, i, j, opts).expect("indices in range and distinct")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::Matroid;
    use crate::rational::ratio;

    fn u24_delta() -> Poly {
        Poly::basis_polynomial(&Matroid::uniform(2, 4)).rayleigh_difference(0, 1).unwrap()
    }

    #[test]
    fn u24_unique_gram() {
        let d = u24_delta();
        let sys = GramSystem::new(&d, 0, 1).unwrap();
        assert_eq!(sys.size(), 2);
        assert_eq!(sys.kernel_dim(), 0);
        assert_eq!(sys.g0, vec![vec![rational::rat(1), ratio(1, 2)], vec![ratio(1, 2), rational::rat(1)]]);
        let ng = sdp_feasible(&sys, 1e-9).unwrap();
        assert!((ng.min_eigenvalue - 0.5).abs() < 1e-9);
        let cert = rationalize_and_verify(&sys, &ng.gram, 1_000_000).unwrap();
        assert_eq!(cert.ldl.pivots, vec![rational::rat(1), ratio(3, 4)]);
        assert_eq!(verify_sos(&cert, &d), Ok(()));
    }

    #[test]
    fn square_of_one_variable_pads_basis() {
        let d = Poly::parse("x3^2", 4).unwrap();
        let sys = GramSystem::new(&d, 0, 1).unwrap();
        assert_eq!(sys.g0, vec![vec![rational::rat(1), rational::rat(0)], vec![rational::rat(0), rational::rat(0)]]);
        match certify_delta(&d, 0, 1, &SosOptions::default()) {
            PairOutcome::Sos(c) => {
                assert_eq!(c.gram, sys.g0);
                assert_eq!(c.ldl.pivots, vec![rational::rat(1), rational::rat(0)]);
                assert_eq!(verify_sos(&c, &d), Ok(()));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn toy_dual() {
        let g0 = vec![vec![rational::rat(0), rational::rat(1)], vec![rational::rat(1), rational::rat(0)]];
        let (a, ldl) = find_orthogonal_pd(&[g0.clone()]).unwrap();
        assert!(linalg::trace_product(&a, &g0).is_zero());
        assert!(ldl.pivots.iter().all(|p| p.is_positive()));
        // a full span leaves nothing
        let e = |a: usize, b: usize| {
            let mut m = linalg::zeros(2, 2);
            m[a][b] = rational::rat(1);
            m[b][a] = rational::rat(1);
            m
        };
        assert!(find_orthogonal_pd(&[e(0, 0), e(0, 1), e(1, 1)]).is_none());
    }

    #[test]
    fn perturbed_gram_is_rejected() {
        let d = u24_delta();
        let PairOutcome::Sos(mut c) = certify_delta(&d, 0, 1, &SosOptions::default()) else { panic!() };
        c.gram[0][1] += ratio(1, 1_000_000);
        c.gram[1][0] = c.gram[0][1].clone();
        assert_eq!(verify_sos(&c, &d), Err(Rejection::IdentityFails));
    }

    #[test]
    fn kernel_matches_exact_nullspace() {
        let h = Poly::basis_polynomial(&crate::catalog::vamos());
        let d = h.rayleigh_difference(5, 6).unwrap();
        let sys = GramSystem::new(&d, 5, 6).unwrap();
        assert_eq!(sys.size(), 20);
        let m = sys.size();
        // linear map Sym(m) -> coefficients, one row per product monomial
        let positions: Vec<(usize, usize)> = (0..m).flat_map(|a| (a..m).map(move |b| (a, b))).collect();
        let mut keys: Vec<ExpKey> = positions.iter().map(|&(a, b)| sys.monomials[a] + sys.monomials[b]).collect();
        keys.sort_unstable();
        keys.dedup();
        let rows: RatMatrix = keys
            .iter()
            .map(|&k| {
                positions
                    .iter()
                    .map(|&(a, b)| {
                        if sys.monomials[a] + sys.monomials[b] != k {
                            rational::rat(0)
                        } else if a == b {
                            rational::rat(1)
                        } else {
                            rational::rat(2)
                        }
                    })
                    .collect()
            })
            .collect();
        let null = linalg::nullspace(&rows, positions.len());
        assert_eq!(null.len(), sys.kernel_dim());
        for k in sys.kernel_matrices() {
            assert!(gram_polynomial(8, &sys.monomials, &k).is_zero());
        }
        assert!(gram_polynomial(8, &sys.monomials, &sys.g0) == d);
    }
}
