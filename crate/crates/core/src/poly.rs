//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Exponent vectors are packed four bits per variable into a `u64`, so at
//! most 16 variables and per-variable degree at most 15. Variables are
//! 0-based in the API and printed 1-based (`x1`, `x2`, ...).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::linalg;
use crate::matroid::Matroid;
use crate::rational::{self, Rat};
use crate::subset;

pub const MAX_VARS: usize = 16;
pub const MAX_DEGREE: u8 = 15;

pub type ExpKey = u64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polynomial is not multiaffine")]
    NotMultiaffine,
    #[error("indices must differ, got {0} twice")]
    EqualIndices(usize),
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("face is empty: no term attains the value")]
    EmptyFace,
    #[error("functional is not minimized at the given value on the support")]
    NotSupporting,
    #[error("parse error: {0}")]
    Parse(String),
}

pub fn exponent(key: ExpKey, var: usize) -> u8 {
    (key >> (4 * var) & 0xf) as u8
}

pub fn pack(exps: &[u8]) -> ExpKey {
    exps.iter().enumerate().fold(0, |k, (i, &e)| {
        assert!(e <= MAX_DEGREE, "exponent {e} exceeds {MAX_DEGREE}");
        k | (e as u64) << (4 * i)
    })
}

pub fn unpack(key: ExpKey, nvars: usize) -> Vec<u8> {
    (0..nvars).map(|i| exponent(key, i)).collect()
}

pub fn total_degree(key: ExpKey) -> u32 {
    (0..MAX_VARS).map(|i| exponent(key, i) as u32).sum()
}

/// Squarefree monomial of a subset mask.
pub fn key_of_subset(s: subset::Subset) -> ExpKey {
    subset::bits(s).fold(0, |k, i| k | 1 << (4 * i))
}

fn add_keys(a: ExpKey, b: ExpKey) -> ExpKey {
    for i in 0..MAX_VARS {
        assert!(exponent(a, i) + exponent(b, i) <= MAX_DEGREE, "degree overflow in variable x{}", i + 1);
    }
    a + b
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<ExpKey, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Poly {
        let mut p = Poly::zero(nvars);
        p.add_term(0, c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Poly {
        assert!(i < nvars, "variable out of range");
        let mut p = Poly::zero(nvars);
        p.add_term(1 << (4 * i), Rat::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (ExpKey, Rat)>) -> Poly {
        let mut p = Poly::zero(nvars);
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    /// `h_M = Σ_B Π_{i∈B} x_i`.
    pub fn basis_polynomial(m: &Matroid) -> Poly {
        Poly::from_terms(m.n(), m.bases().iter().map(|&b| (key_of_subset(b), Rat::one())))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpKey, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: ExpKey) -> Rat {
        self.terms.get(&key).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, key: ExpKey, c: Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert!(key >> (4 * self.nvars) == 0, "term uses a variable beyond nvars");
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dims(&self, other: &Poly) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            Err(PolyError::DimensionMismatch { expected: self.nvars, found: other.nvars })
        } else {
            Ok(())
        }
    }

    fn check_var(&self, i: usize) -> Result<(), PolyError> {
        if i >= self.nvars {
            Err(PolyError::VariableOutOfRange { index: i, nvars: self.nvars })
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.add_term(k, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Rat::one())
    }

    /// Panics if some variable's degree would exceed 15.
    pub fn mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_dims(other)?;
        let mut out = Poly::zero(self.nvars);
        for (&ka, ca) in &self.terms {
            for (&kb, cb) in &other.terms {
                out.add_term(add_keys(ka, kb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect() }
    }

    pub fn evaluate(&self, point: &[Rat]) -> Result<Rat, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::DimensionMismatch { expected: self.nvars, found: point.len() });
        }
        let mut powers: Vec<Vec<Rat>> = point.iter().map(|x| vec![Rat::one(), x.clone()]).collect();
        let mut total = Rat::zero();
        for (&k, c) in &self.terms {
            let mut t = c.clone();
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = exponent(k, i) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() <= e {
                    let next = pw.last().unwrap() * &pw[1];
                    pw.push(next);
                }
                t *= &pw[e];
            }
            total += t;
        }
        Ok(total)
    }

    pub fn evaluate_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.nvars, "dimension mismatch");
        self.terms
            .iter()
            .map(|(&k, c)| {
                let mut t = rational::to_f64(c);
                for (i, &x) in point.iter().enumerate() {
                    let e = exponent(k, i);
                    if e > 0 {
                        t *= x.powi(e as i32);
                    }
                }
                t
            })
            .sum()
    }

    /// `∂/∂x_i`.
    pub fn partial(&self, i: usize) -> Result<Poly, PolyError> {
        self.check_var(i)?;
        let mut out = Poly::zero(self.nvars);
        for (&k, c) in &self.terms {
            let e = exponent(k, i);
            if e > 0 {
                out.add_term(k - (1 << (4 * i)), c * Rat::from_integer(e.into()));
            }
        }
        Ok(out)
    }

    /// Sets `x_i = value`; the variable stays in the index space but no
    /// longer occurs.
    pub fn substitute(&self, i: usize, value: &Rat) -> Result<Poly, PolyError> {
        self.check_var(i)?;
        let mut out = Poly::zero(self.nvars);
        for (&k, c) in &self.terms {
            let e = exponent(k, i);
            let base = k & !(0xf << (4 * i));
            if e == 0 {
                out.add_term(base, c.clone());
            } else if !value.is_zero() {
                out.add_term(base, c * num_traits::pow(value.clone(), e as usize));
            }
        }
        Ok(out)
    }

    /// Sets `x_i = value` for every `i` in the mask `s`.
    pub fn substitute_set(&self, s: subset::Subset, value: &Rat) -> Result<Poly, PolyError> {
        let mut out = self.clone();
        for i in subset::bits(s) {
            out = out.substitute(i, value)?;
        }
        Ok(out)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&k| total_degree(k)).max()
    }

    pub fn degree_in(&self, i: usize) -> u8 {
        self.terms.keys().map(|&k| exponent(k, i)).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|&k| total_degree(k));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn is_multiaffine(&self) -> bool {
        self.terms.keys().all(|&k| (0..self.nvars).all(|i| exponent(k, i) <= 1))
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Variables that occur in some term, as a mask.
    pub fn support_variables(&self) -> subset::Subset {
        self.terms
            .keys()
            .fold(0, |m, &k| m | (0..self.nvars).filter(|&i| exponent(k, i) > 0).fold(0, |a, i| a | 1 << i))
    }

    /// Renames variable `i` to `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Poly {
        assert_eq!(perm.len(), self.nvars, "permutation length");
        Poly::from_terms(
            self.nvars,
            self.terms.iter().map(|(&k, c)| {
                let key = (0..self.nvars).fold(0u64, |acc, i| acc | (exponent(k, i) as u64) << (4 * perm[i]));
                (key, c.clone())
            }),
        )
    }

    /// Embeds into `nvars` variables, shifting variable `i` to `i + offset`.
    pub fn shift(&self, nvars: usize, offset: usize) -> Poly {
        assert!(self.nvars + offset <= nvars && nvars <= MAX_VARS, "shift out of range");
        Poly { nvars, terms: self.terms.iter().map(|(&k, c)| (k << (4 * offset), c.clone())).collect() }
    }

    /// Terms of least total degree.
    pub fn initial_form(&self) -> Poly {
        let Some(d) = self.terms.keys().map(|&k| total_degree(k)).min() else {
            return self.clone();
        };
        self.filter_terms(|k| total_degree(k) == d)
    }

    /// Terms of greatest total degree.
    pub fn leading_form(&self) -> Poly {
        let Some(d) = self.degree() else {
            return self.clone();
        };
        self.filter_terms(|k| total_degree(k) == d)
    }

    fn filter_terms(&self, keep: impl Fn(ExpKey) -> bool) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(&k, _)| keep(k)).map(|(&k, c)| (k, c.clone())).collect(),
        }
    }

    /// Terms on the face `{α : <a, α> = c}` of the Newton polytope, where
    /// `<a, α> ≥ c` must hold on the whole support.
    pub fn facial_restriction(&self, face: &SupportPolytopeFace) -> Result<Poly, PolyError> {
        if face.functional.len() != self.nvars {
            return Err(PolyError::DimensionMismatch { expected: self.nvars, found: face.functional.len() });
        }
        let mut out = Poly::zero(self.nvars);
        for (&k, c) in &self.terms {
            let val = face.evaluate(k);
            if val < face.value {
                return Err(PolyError::NotSupporting);
            }
            if val == face.value {
                out.add_term(k, c.clone());
            }
        }
        if out.is_zero() {
            return Err(PolyError::EmptyFace);
        }
        Ok(out)
    }

    /// `(a, b, c, d)` with `h = a x_i x_j + b x_i + c x_j + d`, none of them
    /// involving `x_i` or `x_j`.
    pub fn abcd_decompose(&self, i: usize, j: usize) -> Result<[Poly; 4], PolyError> {
        self.check_var(i)?;
        self.check_var(j)?;
        if i == j {
            return Err(PolyError::EqualIndices(i));
        }
        if self.degree_in(i) > 1 || self.degree_in(j) > 1 {
            return Err(PolyError::NotMultiaffine);
        }
        let mut parts =
            [Poly::zero(self.nvars), Poly::zero(self.nvars), Poly::zero(self.nvars), Poly::zero(self.nvars)];
        let (bi, bj) = (1u64 << (4 * i), 1u64 << (4 * j));
        for (&k, c) in &self.terms {
            let (ei, ej) = (k & bi != 0, k & bj != 0);
            let slot = match (ei, ej) {
                (true, true) => 0,
                (true, false) => 1,
                (false, true) => 2,
                (false, false) => 3,
            };
            parts[slot].add_term(k & !bi & !bj, c.clone());
        }
        Ok(parts)
    }

    /// `Δ_ij(h) = ∂_i h · ∂_j h − ∂_i ∂_j h · h`.
    pub fn rayleigh_difference(&self, i: usize, j: usize) -> Result<Poly, PolyError> {
        if !self.is_multiaffine() {
            return Err(PolyError::NotMultiaffine);
        }
        let [a, b, c, d] = self.abcd_decompose(i, j)?;
        // With h = a x_i x_j + b x_i + c x_j + d the definition reduces to bc - ad.
        b.mul(&c)?.sub(&a.mul(&d)?)
    }

    /// Checks `det(Σ x_i a_i a_iᵀ) = h` via Cauchy–Binet: the coefficient of
    /// `x^B` must be `det(a_B)²` for every `r`-subset `B`, and `h` must have
    /// no other terms.
    pub fn det_rank1_check(&self, vectors: &[Vec<Rat>]) -> Result<bool, PolyError> {
        if vectors.len() != self.nvars {
            return Err(PolyError::DimensionMismatch { expected: self.nvars, found: vectors.len() });
        }
        let r = vectors.first().map_or(0, Vec::len);
        if let Some(bad) = vectors.iter().find(|v| v.len() != r) {
            return Err(PolyError::DimensionMismatch { expected: r, found: bad.len() });
        }
        let mut expected = Poly::zero(self.nvars);
        for b in subset::k_subsets(self.nvars, r) {
            // columns a_i for i in B form an r×r matrix
            let cols: Vec<usize> = subset::bits(b).collect();
            let m: linalg::RatMatrix =
                (0..r).map(|row| cols.iter().map(|&c| vectors[c][row].clone()).collect()).collect();
            let d = linalg::det(&m);
            expected.add_term(key_of_subset(b), &d * &d);
        }
        Ok(expected == *self)
    }

    /// Parses the `coeff*x1^e1*x2` text form; terms are separated by `+`,
    /// a coefficient may be negative (`-3/2*x1`), and a bare monomial has
    /// coefficient one.
    pub fn parse(text: &str, nvars: usize) -> Result<Poly, PolyError> {
        let perr = |m: String| PolyError::Parse(m);
        let mut p = Poly::zero(nvars);
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(p);
        }
        if compact.is_empty() {
            return Err(perr("empty polynomial".into()));
        }
        for term in split_terms(&compact) {
            if term.is_empty() {
                return Err(perr("empty term".into()));
            }
            let mut coeff = Rat::one();
            let mut key = 0u64;
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) if rest.starts_with('x') => (-Rat::one(), rest),
                _ => (Rat::one(), term),
            };
            for factor in body.split('*') {
                if let Some(var) = factor.strip_prefix('x') {
                    let (idx, e) = match var.split_once('^') {
                        Some((a, b)) => (a, b.parse::<u8>().map_err(|_| perr(format!("bad exponent in `{factor}`")))?),
                        None => (var, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| perr(format!("bad variable `{factor}`")))?;
                    if idx == 0 || idx > nvars {
                        return Err(PolyError::VariableOutOfRange { index: idx, nvars });
                    }
                    let cur = exponent(key, idx - 1);
                    if cur + e > MAX_DEGREE {
                        return Err(perr(format!("degree of x{idx} exceeds {MAX_DEGREE}")));
                    }
                    key += (e as u64) << (4 * (idx - 1));
                } else {
                    coeff *= rational::parse(factor).map_err(|e| perr(e.to_string()))?;
                }
            }
            p.add_term(key, coeff * sign);
        }
        Ok(p)
    }
}

// Splits on `+` and on `-` that starts a new term, keeping the sign.
fn split_terms(s: &str) -> Vec<&str> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut start = 0;
    for i in 0..bytes.len() {
        match bytes[i] {
            b'+' => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            b'-' if i > start && !matches!(bytes[i - 1], b'*' | b'/' | b'^') => {
                out.push(&s[start..i]);
                start = i;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&k, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            f.write_str(&rational::to_string(c))?;
            for i in 0..self.nvars {
                match exponent(k, i) {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    e => write!(f, "*x{}^{}", i + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

/// The face of a Newton polytope where the linear functional `a` attains
/// its minimum `value` over the support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportPolytopeFace {
    pub functional: Vec<i64>,
    pub value: i64,
}

impl SupportPolytopeFace {
    /// The face where `<a, α>` attains its maximum `value`.
    pub fn maximizing(functional: Vec<i64>, value: i64) -> SupportPolytopeFace {
        SupportPolytopeFace { functional: functional.iter().map(|x| -x).collect(), value: -value }
    }

    /// Face `{Σ_{i∈S} x_i = rk(S)}` of the matroid polytope for a flat `S`.
    pub fn of_flat(m: &Matroid, s: subset::Subset) -> SupportPolytopeFace {
        let functional = (0..m.n()).map(|i| subset::contains(s, i) as i64).collect();
        SupportPolytopeFace::maximizing(functional, m.rank_of(s) as i64)
    }

    fn evaluate(&self, key: ExpKey) -> i64 {
        self.functional.iter().enumerate().map(|(i, &a)| a * exponent(key, i) as i64).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn example() -> Matroid {
        Matroid::from_basis_lists(4, 2, &[&[1, 2], &[2, 3], &[1, 4], &[2, 4], &[3, 4]]).unwrap()
    }

    #[test]
    fn basis_polynomial_prints() {
        let h = Poly::basis_polynomial(&example());
        assert_eq!(h.to_string(), "1*x1*x2 + 1*x2*x3 + 1*x1*x4 + 1*x2*x4 + 1*x3*x4");
        assert_eq!(Poly::parse(&h.to_string(), 4).unwrap(), h);
    }

    #[test]
    fn parse_accepts_signs_and_fractions() {
        let p = Poly::parse("x1^2 - 3/2*x2*x3 + -1 + 2*x3", 3).unwrap();
        assert_eq!(p.coeff(pack(&[2, 0, 0])), rat(1));
        assert_eq!(p.coeff(pack(&[0, 1, 1])), ratio(-3, 2));
        assert_eq!(p.coeff(0), rat(-1));
        assert_eq!(Poly::parse(&p.to_string(), 3).unwrap(), p);
        assert!(Poly::parse("x4", 3).is_err());
        assert!(Poly::parse("2*y1", 3).is_err());
    }

    #[test]
    fn product_of_linear_forms() {
        let x = |i| Poly::var(4, i);
        let p = x(0).add(&x(2)).unwrap().mul(&x(1).add(&x(3)).unwrap()).unwrap();
        let m = Matroid::from_basis_lists(4, 2, &[&[1, 2], &[1, 4], &[3, 2], &[3, 4]]).unwrap();
        assert_eq!(p, Poly::basis_polynomial(&m));
    }

    #[test]
    fn rayleigh_difference_of_u24() {
        let h = Poly::basis_polynomial(&Matroid::uniform(2, 4));
        let d = h.rayleigh_difference(0, 1).unwrap();
        assert_eq!(d, Poly::parse("x3^2 + x3*x4 + x4^2", 4).unwrap());
        let [a, b, c, dd] = h.abcd_decompose(0, 1).unwrap();
        assert_eq!(a, Poly::constant(4, rat(1)));
        assert_eq!(b, Poly::parse("x3 + x4", 4).unwrap());
        assert_eq!(c, b);
        assert_eq!(dd, Poly::parse("x3*x4", 4).unwrap());
        assert_eq!(h.evaluate(&[rat(1), rat(1), rat(1), rat(1)]).unwrap(), rat(6));
    }

    #[test]
    fn rayleigh_difference_matches_definition() {
        let h = Poly::basis_polynomial(&example());
        let (i, j) = (0, 2);
        let di = h.partial(i).unwrap();
        let dj = h.partial(j).unwrap();
        let dij = di.partial(j).unwrap();
        let direct = di.mul(&dj).unwrap().sub(&dij.mul(&h).unwrap()).unwrap();
        assert_eq!(h.rayleigh_difference(i, j).unwrap(), direct);
        assert!(h.rayleigh_difference(1, 1).is_err());
        let sq = Poly::parse("x1^2", 2).unwrap();
        assert_eq!(sq.rayleigh_difference(0, 1), Err(PolyError::NotMultiaffine));
    }

    #[test]
    fn trivial_cases() {
        let x1x2 = Poly::parse("x1*x2", 2).unwrap();
        assert!(x1x2.rayleigh_difference(0, 1).unwrap().is_zero());
        assert!(x1x2.substitute(0, &rat(0)).unwrap().is_zero());
        let f = Poly::parse("x1*x2 + x1", 2).unwrap();
        assert_eq!(f.initial_form(), Poly::parse("x1", 2).unwrap());
        assert_eq!(f.leading_form(), x1x2);
    }

    #[test]
    fn facial_restriction_of_flat() {
        let m = example();
        let h = Poly::basis_polynomial(&m);
        let face = SupportPolytopeFace::of_flat(&m, 0b0101);
        let hf = h.facial_restriction(&face).unwrap();
        assert_eq!(hf, Poly::parse("x1*x2 + x1*x4 + x2*x3 + x3*x4", 4).unwrap());
        let bad = SupportPolytopeFace { functional: vec![1, 0, 1, 0], value: 1 };
        assert_eq!(h.facial_restriction(&bad), Err(PolyError::NotSupporting));
        let empty = SupportPolytopeFace { functional: vec![1, 1, 1, 1], value: -3 };
        assert_eq!(h.facial_restriction(&empty), Err(PolyError::EmptyFace));
    }

    #[test]
    fn derivative_of_u24() {
        let h = Poly::basis_polynomial(&Matroid::uniform(2, 4));
        assert_eq!(h.partial(0).unwrap(), Poly::parse("x2 + x3 + x4", 4).unwrap());
    }

    #[test]
    fn single_vector_determinant() {
        let h = Poly::var(1, 0);
        assert!(h.det_rank1_check(&[vec![rat(1)]]).unwrap());
        assert!(!h.det_rank1_check(&[vec![rat(2)]]).unwrap());
    }

    #[test]
    fn permute_and_shift() {
        let p = Poly::parse("2*x1*x2^2", 3).unwrap();
        assert_eq!(p.permute(&[2, 0, 1]), Poly::parse("2*x3*x1^2", 3).unwrap());
        assert_eq!(p.shift(5, 2), Poly::parse("2*x3*x4^2", 5).unwrap());
    }
}
