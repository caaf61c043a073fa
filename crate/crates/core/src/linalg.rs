//! Exact dense linear algebra over the rationals and over prime fields.
//!
//! Everything here is small (matrices of a few hundred entries at most), so a
//! plain `Vec<Vec<Rat>>` row-major layout is used throughout.

use num_traits::{One, Signed, Zero};

use crate::rational::Rat;

pub type RatMatrix = Vec<Vec<Rat>>;

pub fn zeros(rows: usize, cols: usize) -> RatMatrix {
    vec![vec![Rat::zero(); cols]; rows]
}

pub fn identity(n: usize) -> RatMatrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rat::one();
    }
    m
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut RatMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (pivot_row, row) = if i < r {
                    let (a, b) = m.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = m.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &RatMatrix) -> usize {
    let mut work = m.clone();
    rref(&mut work).len()
}

/// Basis of the right nullspace `{x : m x = 0}`.
pub fn nullspace(m: &RatMatrix, cols: usize) -> Vec<Vec<Rat>> {
    let mut work = m.clone();
    let pivots = rref(&mut work);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); cols];
            v[f] = Rat::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -work[row][f].clone();
            }
            v
        })
        .collect()
}

/// Determinant by Gaussian elimination.
pub fn det(m: &RatMatrix) -> Rat {
    let n = m.len();
    let mut a = m.clone();
    let mut d = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    d
}

/// Rank of an integer matrix reduced modulo the prime `p`.
pub fn rank_mod_p(m: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = m.iter().map(|row| row.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = mod_inverse(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = (*x * inv).rem_euclid(p);
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = (a[i][j] - f * a[r][j]).rem_euclid(p);
                }
            }
        }
        r += 1;
    }
    r
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    // Fermat; p is prime and small.
    let mut result = 1i64;
    let mut base = a.rem_euclid(p);
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

pub fn is_symmetric(m: &RatMatrix) -> bool {
    let n = m.len();
    m.iter().all(|row| row.len() == n) && (0..n).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}

pub fn trace_product(a: &RatMatrix, b: &RatMatrix) -> Rat {
    let mut acc = Rat::zero();
    for (ra, rb) in a.iter().zip(b.iter()) {
        for (x, y) in ra.iter().zip(rb.iter()) {
            if !x.is_zero() && !y.is_zero() {
                acc += x * y;
            }
        }
    }
    acc
}

/// Exact symmetric-pivoted `LDLᵀ` factorization, `Pᵀ A P = L D Lᵀ`.
///
/// `perm[k]` is the original index placed at position `k`; `lower` is unit
/// lower triangular in the permuted order.
#[derive(Debug, Clone, PartialEq)]
pub struct Ldl {
    pub perm: Vec<usize>,
    pub lower: RatMatrix,
    pub pivots: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LdlFailure {
    #[error("negative pivot at elimination step {step}")]
    NegativePivot { step: usize },
    #[error("zero pivot with nonzero off-diagonal entry at elimination step {step}")]
    ZeroPivotNonzeroRow { step: usize },
    #[error("matrix is not square and symmetric")]
    NotSymmetric,
}

impl Ldl {
    /// Factors a symmetric matrix, succeeding exactly when it is positive
    /// semidefinite. The largest remaining diagonal entry is pivoted first.
    pub fn factor_psd(a: &RatMatrix) -> Result<Ldl, LdlFailure> {
        if !is_symmetric(a) {
            return Err(LdlFailure::NotSymmetric);
        }
        let n = a.len();
        let mut work = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut lower = zeros(n, n);
        let mut pivots = Vec::with_capacity(n);
        for k in 0..n {
            // choose the largest diagonal among k..n
            let (best, _) = (k..n)
                .map(|i| (i, &work[i][i]))
                .max_by(|x, y| x.1.cmp(y.1).then(y.0.cmp(&x.0)))
                .expect("nonempty range");
            if best != k {
                work.swap(best, k);
                for row in work.iter_mut() {
                    row.swap(best, k);
                }
                perm.swap(best, k);
                lower.swap(best, k);
            }
            let d = work[k][k].clone();
            if d.is_negative() {
                return Err(LdlFailure::NegativePivot { step: k });
            }
            lower[k][k] = Rat::one();
            if d.is_zero() {
                // all remaining diagonals are <= 0 here, hence == 0;
                // the trailing block must vanish entirely
                for i in k..n {
                    for j in k..n {
                        if !work[i][j].is_zero() {
                            return Err(LdlFailure::ZeroPivotNonzeroRow { step: k });
                        }
                    }
                }
                for i in k + 1..n {
                    lower[i][i] = Rat::one();
                }
                pivots.extend(std::iter::repeat_n(Rat::zero(), n - k));
                return Ok(Ldl { perm, lower, pivots });
            }
            let inv = d.recip();
            for i in k + 1..n {
                lower[i][k] = &work[i][k] * &inv;
            }
            for i in k + 1..n {
                if work[i][k].is_zero() {
                    continue;
                }
                for j in k + 1..=i {
                    if work[j][k].is_zero() {
                        continue;
                    }
                    let t = &lower[i][k] * &work[j][k];
                    work[i][j] -= &t;
                    if i != j {
                        work[j][i] -= t;
                    }
                }
            }
            pivots.push(d);
        }
        Ok(Ldl { perm, lower, pivots })
    }

    /// Like [`Ldl::factor_psd`] but also demands strictly positive pivots.
    pub fn factor_pd(a: &RatMatrix) -> Result<Ldl, LdlFailure> {
        let f = Ldl::factor_psd(a)?;
        match f.pivots.iter().position(|p| !p.is_positive()) {
            Some(step) => Err(LdlFailure::ZeroPivotNonzeroRow { step }),
            None => Ok(f),
        }
    }

    /// Reassembles `P L D Lᵀ Pᵀ` in the original index order.
    pub fn reconstruct(&self) -> RatMatrix {
        let n = self.pivots.len();
        let mut permuted = zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let mut acc = Rat::zero();
                for k in 0..=j {
                    if self.pivots[k].is_zero() || self.lower[i][k].is_zero() || self.lower[j][k].is_zero() {
                        continue;
                    }
                    acc += &self.lower[i][k] * &self.pivots[k] * &self.lower[j][k];
                }
                permuted[i][j] = acc.clone();
                permuted[j][i] = acc;
            }
        }
        let mut out = zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[self.perm[i]][self.perm[j]] = permuted[i][j].clone();
            }
        }
        out
    }

    /// Checks the stored factors: unit lower triangular, pivots nonnegative,
    /// `perm` a permutation, and exact reconstruction of `a`.
    pub fn verifies(&self, a: &RatMatrix) -> bool {
        let n = a.len();
        if self.pivots.len() != n || self.perm.len() != n || self.lower.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &p in &self.perm {
            if p >= n || seen[p] {
                return false;
            }
            seen[p] = true;
        }
        for i in 0..n {
            if self.lower[i].len() != n || !self.lower[i][i].is_one() {
                return false;
            }
            if self.lower[i][i + 1..].iter().any(|x| !x.is_zero()) {
                return false;
            }
        }
        if self.pivots.iter().any(Signed::is_negative) {
            return false;
        }
        self.reconstruct() == *a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        for row in &a {
            let dot: Rat = row.iter().zip(&ns[0]).map(|(x, y)| x * y).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn determinant() {
        assert_eq!(det(&m(&[&[2, 1], &[1, 2]])), rat(3));
        assert_eq!(det(&m(&[&[0, 1], &[1, 0]])), rat(-1));
        assert_eq!(det(&m(&[&[1, 2], &[2, 4]])), rat(0));
    }

    #[test]
    fn rank_over_gf3() {
        // rank 1 over GF(3), rank 2 over Q
        let a = vec![vec![1, 2], vec![2, 1]];
        assert_eq!(rank_mod_p(&a, 3), 1);
        assert_eq!(rank_mod_p(&a, 5), 2);
    }

    #[test]
    fn ldl_half_matrix() {
        let g = vec![vec![rat(1), ratio(1, 2)], vec![ratio(1, 2), rat(1)]];
        let f = Ldl::factor_psd(&g).unwrap();
        assert_eq!(f.pivots, vec![rat(1), ratio(3, 4)]);
        assert!(f.verifies(&g));
    }

    #[test]
    fn ldl_semidefinite_and_indefinite() {
        let g = m(&[&[1, 0], &[0, 0]]);
        let f = Ldl::factor_psd(&g).unwrap();
        assert_eq!(f.pivots, vec![rat(1), rat(0)]);
        assert!(f.verifies(&g));
        assert!(Ldl::factor_pd(&g).is_err());

        assert!(matches!(Ldl::factor_psd(&m(&[&[0, 1], &[1, 0]])), Err(LdlFailure::ZeroPivotNonzeroRow { .. })));
        assert!(matches!(Ldl::factor_psd(&m(&[&[1, 2], &[2, 1]])), Err(LdlFailure::NegativePivot { .. })));
    }

    #[test]
    fn ldl_pivoting_rank_deficient() {
        // [[0,0,0],[0,4,2],[0,2,1]] is PSD of rank 1; needs pivoting past the zero
        let g = m(&[&[0, 0, 0], &[0, 4, 2], &[0, 2, 1]]);
        let f = Ldl::factor_psd(&g).unwrap();
        assert!(f.verifies(&g));
        assert_eq!(f.pivots.iter().filter(|p| !p.is_zero()).count(), 1);
    }
}
