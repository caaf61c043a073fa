//! Finite matroids on at most sixteen elements, stored by their bases.

mod format;
mod iso;
mod minor;
mod structure;

pub(crate) use format::parse_subset as parse_subset_text;
pub use format::{parse_matroid_text, write_matroid_text, NamedMatroid};
pub use iso::{canonical_form, is_isomorphic, isomorphism};
pub use minor::{has_minor, MinorWitness};
pub use structure::{IngletonResult, IngletonSearch, VamosWitness};

use crate::rational::Rat;
use crate::subset::{self, Subset, MAX_ELEMENTS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatroidError {
    #[error("basis exchange fails for B1={b1}, B2={b2}, x={x}", b1 = subset::display(*.b1), b2 = subset::display(*.b2))]
    ExchangeAxiomViolation { b1: Subset, b2: Subset, x: usize },
    #[error("basis family is empty")]
    EmptyBases,
    #[error("basis {basis} has {found} elements, expected rank {rank}", basis = subset::display(*.basis))]
    SizeMismatch { basis: Subset, found: usize, rank: usize },
    #[error("ground set of {0} elements exceeds the supported maximum of 16")]
    TooManyElements(usize),
    #[error("subset {subset} is not contained in the ground set of size {n}", subset = subset::display(*.subset))]
    ElementOutOfRange { subset: Subset, n: usize },
    #[error("matrix has rank zero")]
    ZeroMatrix,
    #[error("operation would leave an empty ground set")]
    EmptyGroundSet,
    #[error("{} is not a circuit hyperplane", subset::display(*.0))]
    NotACircuitHyperplane(Subset),
    #[error("{} is not a flat", subset::display(*.0))]
    NotAFlat(Subset),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A matroid on the ground set `{1..n}` given by its bases.
///
/// Bases are kept sorted and deduplicated; every constructor validates the
/// basis exchange axiom, so a `Matroid` value is always a matroid.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matroid {
    n: usize,
    rank: usize,
    bases: Vec<Subset>,
}

impl Matroid {
    pub fn from_bases(n: usize, rank: usize, bases: Vec<Subset>) -> Result<Matroid, MatroidError> {
        if n > MAX_ELEMENTS {
            return Err(MatroidError::TooManyElements(n));
        }
        let mut bases = bases;
        bases.sort_unstable();
        bases.dedup();
        if bases.is_empty() {
            return Err(MatroidError::EmptyBases);
        }
        let ground = subset::full(n);
        for &b in &bases {
            if b & !ground != 0 {
                return Err(MatroidError::ElementOutOfRange { subset: b, n });
            }
            if subset::size(b) != rank {
                return Err(MatroidError::SizeMismatch { basis: b, found: subset::size(b), rank });
            }
        }
        let m = Matroid { n, rank, bases };
        m.check_exchange()?;
        Ok(m)
    }

    /// Bases given as lists of 1-based elements.
    pub fn from_basis_lists(n: usize, rank: usize, bases: &[&[usize]]) -> Result<Matroid, MatroidError> {
        Matroid::from_bases(n, rank, bases.iter().map(|b| subset::from_elements(b)).collect())
    }

    /// All `rank`-subsets except the listed non-bases.
    pub fn from_nonbases(n: usize, rank: usize, nonbases: &[Subset]) -> Result<Matroid, MatroidError> {
        if n > MAX_ELEMENTS {
            return Err(MatroidError::TooManyElements(n));
        }
        for &nb in nonbases {
            if nb & !subset::full(n) != 0 {
                return Err(MatroidError::ElementOutOfRange { subset: nb, n });
            }
            if subset::size(nb) != rank {
                return Err(MatroidError::SizeMismatch { basis: nb, found: subset::size(nb), rank });
            }
        }
        let bases = subset::k_subsets(n, rank).filter(|s| !nonbases.contains(s)).collect();
        Matroid::from_bases(n, rank, bases)
    }

    pub fn uniform(rank: usize, n: usize) -> Matroid {
        assert!(rank <= n && n <= MAX_ELEMENTS, "invalid uniform matroid U({rank},{n})");
        Matroid { n, rank, bases: subset::k_subsets(n, rank).collect() }
    }

    pub fn free(n: usize) -> Matroid {
        Matroid::uniform(n, n)
    }

    /// Column matroid of a matrix over the rationals, given row by row.
    pub fn from_rational_matrix(rows: &[Vec<Rat>]) -> Result<Matroid, MatroidError> {
        let cols = rows.first().map_or(0, Vec::len);
        let rank = crate::linalg::rank(&rows.to_vec());
        if rank == 0 {
            return Err(MatroidError::ZeroMatrix);
        }
        let bases = subset::k_subsets(cols, rank)
            .filter(|&s| {
                let sub: Vec<Vec<Rat>> =
                    rows.iter().map(|row| subset::bits(s).map(|c| row[c].clone()).collect()).collect();
                crate::linalg::rank(&sub) == rank
            })
            .collect();
        Matroid::from_bases(cols, rank, bases)
    }

    /// Column matroid of an integer matrix reduced modulo a prime.
    pub fn from_matrix_mod_p(rows: &[Vec<i64>], p: i64) -> Result<Matroid, MatroidError> {
        let cols = rows.first().map_or(0, Vec::len);
        let rank = crate::linalg::rank_mod_p(rows, p);
        if rank == 0 {
            return Err(MatroidError::ZeroMatrix);
        }
        let bases = subset::k_subsets(cols, rank)
            .filter(|&s| {
                let sub: Vec<Vec<i64>> = rows.iter().map(|row| subset::bits(s).map(|c| row[c]).collect()).collect();
                crate::linalg::rank_mod_p(&sub, p) == rank
            })
            .collect();
        Matroid::from_bases(cols, rank, bases)
    }

    fn check_exchange(&self) -> Result<(), MatroidError> {
        let table = self.basis_table();
        for &b1 in &self.bases {
            for &b2 in &self.bases {
                for x in subset::bits(b1 & !b2) {
                    let base = b1 & !(1 << x);
                    let ok = subset::bits(b2 & !b1).any(|y| table[(base | 1 << y) as usize]);
                    if !ok {
                        return Err(MatroidError::ExchangeAxiomViolation { b1, b2, x: x + 1 });
                    }
                }
            }
        }
        Ok(())
    }

    /// Dense membership table indexed by mask.
    pub(crate) fn basis_table(&self) -> Vec<bool> {
        let mut t = vec![false; 1 << self.n];
        for &b in &self.bases {
            t[b as usize] = true;
        }
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &[Subset] {
        &self.bases
    }

    pub fn ground_set(&self) -> Subset {
        subset::full(self.n)
    }

    pub fn is_basis(&self, s: Subset) -> bool {
        self.bases.binary_search(&s).is_ok()
    }

    /// `rank`-subsets that are not bases, ascending.
    pub fn nonbases(&self) -> Vec<Subset> {
        subset::k_subsets(self.n, self.rank).filter(|s| !self.is_basis(*s)).collect()
    }

    /// Rank of a subset: the largest intersection with a basis.
    pub fn rank_of(&self, s: Subset) -> usize {
        self.bases.iter().map(|&b| subset::size(b & s)).max().unwrap_or(0)
    }

    pub fn is_independent(&self, s: Subset) -> bool {
        self.rank_of(s) == subset::size(s)
    }

    pub fn closure(&self, s: Subset) -> Subset {
        let r = self.rank_of(s);
        (0..self.n).filter(|&e| subset::contains(s, e) || self.rank_of(s | 1 << e) == r).fold(0, |m, e| m | 1 << e)
    }

    /// Ranks of all `2^n` subsets.
    pub fn rank_table(&self) -> Vec<u8> {
        let size = 1usize << self.n;
        let mut independent = vec![false; size];
        for &b in &self.bases {
            independent[b as usize] = true;
        }
        for s in (0..size).rev() {
            if independent[s] {
                for e in subset::bits(s as Subset) {
                    independent[s & !(1 << e)] = true;
                }
            }
        }
        let mut rank = vec![0u8; size];
        for s in 1..size {
            rank[s] = if independent[s] {
                subset::size(s as Subset) as u8
            } else {
                subset::bits(s as Subset).map(|e| rank[s & !(1 << e)]).max().unwrap_or(0)
            };
        }
        rank
    }

    pub fn loops(&self) -> Subset {
        let covered = self.bases.iter().fold(0, |m, &b| m | b);
        self.ground_set() & !covered
    }

    pub fn coloops(&self) -> Subset {
        self.bases.iter().fold(self.ground_set(), |m, &b| m & b)
    }

    /// Pairs of non-loop elements `{a, b}` of rank one.
    pub fn parallel_pairs(&self) -> Vec<(usize, usize)> {
        let loops = self.loops();
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                if subset::contains(loops, a) || subset::contains(loops, b) {
                    continue;
                }
                if self.rank_of(1 << a | 1 << b) == 1 {
                    out.push((a + 1, b + 1));
                }
            }
        }
        out
    }

    pub fn is_simple(&self) -> bool {
        self.loops() == 0 && self.parallel_pairs().is_empty()
    }

    /// Connected iff no proper nonempty split `S | E\S` has additive rank.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let ranks = self.rank_table();
        let ground = self.ground_set();
        // splits containing element 0 on the left enumerate each bipartition once
        (0..(1u32 << (self.n - 1)))
            .map(|s| s << 1 | 1)
            .filter(|&s| s != ground)
            .all(|s| ranks[s as usize] as usize + ranks[(ground & !s) as usize] as usize != self.rank)
    }

    /// Connected components, from the basis exchange graph: `a` and `b`
    /// share a circuit iff some basis `B` has `a ∈ B`, `b ∉ B` and
    /// `B - a + b` a basis.
    pub fn components(&self) -> Vec<Subset> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let next = p[c];
                p[c] = r;
                c = next;
            }
            r
        }
        let table = self.basis_table();
        let ground = self.ground_set();
        for &b in &self.bases {
            for a in subset::bits(b) {
                for c in subset::bits(ground & !b) {
                    if table[((b & !(1 << a)) | 1 << c) as usize] {
                        let (ra, rc) = (find(&mut parent, a), find(&mut parent, c));
                        if ra != rc {
                            parent[ra] = rc;
                        }
                    }
                }
            }
        }
        let mut comps: Vec<Subset> = Vec::new();
        let mut root_of = vec![usize::MAX; self.n];
        for e in 0..self.n {
            let r = find(&mut parent, e);
            if root_of[r] == usize::MAX {
                root_of[r] = comps.len();
                comps.push(0);
            }
            comps[root_of[r]] |= 1 << e;
        }
        comps
    }

    pub fn dual(&self) -> Matroid {
        let ground = self.ground_set();
        let bases = self.bases.iter().map(|&b| ground & !b).collect();
        Matroid::from_bases(self.n, self.n - self.rank, bases).expect("dual of a matroid is a matroid")
    }

    fn check_subset(&self, s: Subset) -> Result<(), MatroidError> {
        if s & !self.ground_set() != 0 {
            Err(MatroidError::ElementOutOfRange { subset: s, n: self.n })
        } else {
            Ok(())
        }
    }

    /// `M \ S`, relabeled onto `{1..n-|S|}` preserving order.
    pub fn delete(&self, s: Subset) -> Result<Matroid, MatroidError> {
        self.check_subset(s)?;
        if s == self.ground_set() {
            return Err(MatroidError::EmptyGroundSet);
        }
        let r = self.rank_of(self.ground_set() & !s);
        let bases = self
            .bases
            .iter()
            .map(|&b| b & !s)
            .filter(|&b| subset::size(b) == r)
            .map(|b| subset::compress(b, s))
            .collect();
        Matroid::from_bases(self.n - subset::size(s), r, bases)
    }

    /// `M / S`, relabeled onto `{1..n-|S|}` preserving order.
    pub fn contract(&self, s: Subset) -> Result<Matroid, MatroidError> {
        self.check_subset(s)?;
        if s == self.ground_set() {
            return Err(MatroidError::EmptyGroundSet);
        }
        let rs = self.rank_of(s);
        let bases =
            self.bases.iter().filter(|&&b| subset::size(b & s) == rs).map(|&b| subset::compress(b & !s, s)).collect();
        Matroid::from_bases(self.n - subset::size(s), self.rank - rs, bases)
    }

    /// `M | S`, relabeled onto `{1..|S|}`.
    pub fn restrict(&self, s: Subset) -> Result<Matroid, MatroidError> {
        self.delete(self.ground_set() & !s)
    }

    /// Elements of `other` are shifted to `n+1..n+m`.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid, MatroidError> {
        let n = self.n + other.n;
        if n > MAX_ELEMENTS {
            return Err(MatroidError::TooManyElements(n));
        }
        let mut bases = Vec::with_capacity(self.bases.len() * other.bases.len());
        for &a in &self.bases {
            for &b in &other.bases {
                bases.push(a | b << self.n);
            }
        }
        Matroid::from_bases(n, self.rank + other.rank, bases)
    }

    /// Relabels element `i` (0-based) to `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Matroid {
        assert_eq!(perm.len(), self.n, "permutation length");
        let bases = self.bases.iter().map(|&b| subset::permute(b, perm)).collect();
        Matroid::from_bases(self.n, self.rank, bases).expect("relabeling preserves matroids")
    }

    /// `H` is a circuit-hyperplane: an `r`-set that is a circuit and a
    /// closed set of rank `r - 1`.
    pub fn is_circuit_hyperplane(&self, h: Subset) -> bool {
        if h & !self.ground_set() != 0 || subset::size(h) != self.rank || self.rank == 0 {
            return false;
        }
        if self.is_basis(h) || self.rank_of(h) != self.rank - 1 {
            return false;
        }
        let circuit = subset::bits(h).all(|e| self.is_independent(h & !(1 << e)));
        circuit && self.closure(h) == h
    }

    pub fn circuit_hyperplanes(&self) -> Vec<Subset> {
        self.nonbases().into_iter().filter(|&h| self.is_circuit_hyperplane(h)).collect()
    }

    /// Declares the circuit-hyperplane `h` a basis.
    pub fn relax(&self, h: Subset) -> Result<Matroid, MatroidError> {
        if !self.is_circuit_hyperplane(h) {
            return Err(MatroidError::NotACircuitHyperplane(h));
        }
        let mut bases = self.bases.clone();
        bases.push(h);
        Matroid::from_bases(self.n, self.rank, bases)
    }

    /// Adds element `n+1` in general position.
    pub fn free_extension(&self) -> Result<Matroid, MatroidError> {
        let n = self.n + 1;
        if n > MAX_ELEMENTS {
            return Err(MatroidError::TooManyElements(n));
        }
        let mut bases = self.bases.clone();
        if self.rank > 0 {
            let new = 1 << self.n;
            let mut seen = std::collections::BTreeSet::new();
            for &b in &self.bases {
                for e in subset::bits(b) {
                    seen.insert(b & !(1 << e));
                }
            }
            bases.extend(seen.into_iter().map(|i| i | new));
        }
        Matroid::from_bases(n, self.rank, bases)
    }

    /// Dual of the free extension of the dual; contracting `n+1` gives back `M`.
    pub fn free_coextension(&self) -> Result<Matroid, MatroidError> {
        Ok(self.dual().free_extension()?.dual())
    }

    /// All flats, ascending by mask.
    pub fn flats(&self) -> Vec<Subset> {
        let ranks = self.rank_table();
        (0..(1u32 << self.n))
            .filter(|&s| {
                let r = ranks[s as usize];
                (0..self.n).all(|e| subset::contains(s, e) || ranks[(s | 1 << e) as usize] > r)
            })
            .collect()
    }

    pub fn is_flat(&self, s: Subset) -> bool {
        s & !self.ground_set() == 0 && self.closure(s) == s
    }

    /// Matroid of the face of the matroid polytope cut out by
    /// `Σ_{i∈S} x_i = rk(S)`: `M|S ⊕ M/S`, kept on the original labels.
    pub fn polytope_face_matroid(&self, s: Subset) -> Result<Matroid, MatroidError> {
        if !self.is_flat(s) {
            return Err(MatroidError::NotAFlat(s));
        }
        let ground = self.ground_set();
        if s == 0 || s == ground {
            return Ok(self.clone());
        }
        let restriction = self.restrict(s)?;
        let contraction = self.contract(s)?;
        let summed = restriction.direct_sum(&contraction)?;
        // direct_sum places S first (in order) and E\S after; map back
        let mut perm = Vec::with_capacity(self.n);
        perm.extend(subset::bits(s));
        perm.extend(subset::bits(ground & !s));
        Ok(summed.permute(&perm))
    }

    /// Drops loops and all but the first element of each parallel class.
    /// Returns the simplification and the kept original elements (0-based).
    pub fn simplification(&self) -> (Matroid, Vec<usize>) {
        let loops = self.loops();
        let mut removed = loops;
        for a in 0..self.n {
            if subset::contains(removed, a) {
                continue;
            }
            for b in a + 1..self.n {
                if !subset::contains(removed, b) && self.rank_of(1 << a | 1 << b) == 1 {
                    removed |= 1 << b;
                }
            }
        }
        let kept: Vec<usize> = (0..self.n).filter(|&e| !subset::contains(removed, e)).collect();
        if kept.is_empty() {
            return (self.clone(), (0..self.n).collect());
        }
        (self.delete(removed).expect("nonempty remainder"), kept)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::from_elements as s;

    fn example4() -> Matroid {
        Matroid::from_basis_lists(4, 2, &[&[1, 2], &[2, 3], &[1, 4], &[2, 4], &[3, 4]]).unwrap()
    }

    #[test]
    fn validates_exchange() {
        assert_eq!(example4().bases().len(), 5);
        let free3 = Matroid::from_basis_lists(3, 3, &[&[1, 2, 3]]).unwrap();
        assert_eq!(free3, Matroid::free(3));
        let err = Matroid::from_basis_lists(4, 2, &[&[1, 2], &[3, 4]]).unwrap_err();
        assert!(matches!(err, MatroidError::ExchangeAxiomViolation { .. }));
        assert_eq!(Matroid::from_bases(3, 1, vec![]), Err(MatroidError::EmptyBases));
        assert!(matches!(
            Matroid::from_basis_lists(3, 2, &[&[1, 2], &[1, 2, 3]]),
            Err(MatroidError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn exchange_violation_names_the_pair() {
        // B1=12, B2=34, x=1: neither {2,3} nor {2,4} is a basis
        let err = Matroid::from_basis_lists(4, 2, &[&[1, 2], &[3, 4]]).unwrap_err();
        assert_eq!(err, MatroidError::ExchangeAxiomViolation { b1: s(&[1, 2]), b2: s(&[3, 4]), x: 1 });
    }

    #[test]
    fn rank_and_closure() {
        let m = example4();
        assert_eq!(m.rank_of(0), 0);
        assert_eq!(m.rank_of(s(&[1, 3])), 1);
        assert_eq!(m.closure(s(&[1])), s(&[1, 3]));
        let table = m.rank_table();
        for x in 0..16u32 {
            assert_eq!(table[x as usize] as usize, m.rank_of(x));
        }
    }

    #[test]
    fn flats_of_example() {
        let m = example4();
        let proper: Vec<_> = m.flats().into_iter().filter(|&f| f != 0 && f != m.ground_set()).collect();
        assert_eq!(proper, vec![s(&[2]), s(&[1, 3]), s(&[4])]);
    }

    #[test]
    fn face_matroid_of_example() {
        let m = example4();
        let face = m.polytope_face_matroid(s(&[1, 3])).unwrap();
        let expected: Vec<Subset> = vec![s(&[1, 2]), s(&[2, 3]), s(&[1, 4]), s(&[3, 4])];
        let mut expected = expected;
        expected.sort();
        assert_eq!(face.bases(), expected.as_slice());
        assert_eq!(m.polytope_face_matroid(m.ground_set()).unwrap(), m);
        assert_eq!(m.polytope_face_matroid(s(&[1])), Err(MatroidError::NotAFlat(s(&[1]))));
    }

    #[test]
    fn minors_and_duality() {
        let f3 = Matroid::free(3);
        assert_eq!(f3.contract(s(&[1])).unwrap(), Matroid::free(2));
        let u24 = Matroid::uniform(2, 4);
        assert_eq!(u24.dual(), u24);
        assert_eq!(u24.delete(s(&[4])).unwrap(), Matroid::uniform(2, 3));
        assert_eq!(u24.contract(s(&[4])).unwrap(), Matroid::uniform(1, 3));
        assert_eq!(Matroid::uniform(2, 3).free_extension().unwrap(), u24);
        assert_eq!(f3.delete(f3.ground_set()), Err(MatroidError::EmptyGroundSet));
    }

    #[test]
    fn coextension_contracts_back() {
        let u24 = Matroid::uniform(2, 4);
        let co = u24.free_coextension().unwrap();
        assert_eq!(co.rank(), 3);
        assert_eq!(co.n(), 5);
        assert_eq!(co.contract(1 << 4).unwrap(), u24);
    }

    #[test]
    fn connectivity() {
        let u24 = Matroid::uniform(2, 4);
        assert!(u24.is_connected());
        assert!(u24.is_simple());
        assert_eq!(u24.components(), vec![u24.ground_set()]);
        let u11 = Matroid::uniform(1, 1);
        let sum = u11.direct_sum(&u11).unwrap();
        assert!(!sum.is_connected());
        assert_eq!(sum.components().len(), 2);
        assert_eq!(sum.coloops(), 0b11);
    }

    #[test]
    fn relaxation_requires_circuit_hyperplane() {
        let m = example4();
        // {1,3} is a parallel pair; in rank 2 that makes it a circuit-hyperplane
        assert!(m.is_circuit_hyperplane(s(&[1, 3])));
        let relaxed = m.relax(s(&[1, 3])).unwrap();
        assert_eq!(relaxed, Matroid::uniform(2, 4));
        assert!(matches!(u24_relax_err(), Err(MatroidError::NotACircuitHyperplane(_))));
    }

    fn u24_relax_err() -> Result<Matroid, MatroidError> {
        Matroid::uniform(2, 4).relax(s(&[1, 2]))
    }

    #[test]
    fn simplification_drops_loops_and_parallels() {
        // rank 1 on 3 elements with a loop at 3: elements 1,2 parallel
        let m = Matroid::from_basis_lists(3, 1, &[&[1], &[2]]).unwrap();
        assert_eq!(m.loops(), s(&[3]));
        assert_eq!(m.parallel_pairs(), vec![(1, 2)]);
        let (simple, kept) = m.simplification();
        assert_eq!(kept, vec![0]);
        assert_eq!(simple, Matroid::free(1));
    }

    #[test]
    fn rational_and_prime_field_matrices() {
        use crate::rational::rat;
        let id: Vec<Vec<Rat>> = (0..3).map(|i| (0..3).map(|j| rat((i == j) as i64)).collect()).collect();
        assert_eq!(Matroid::from_rational_matrix(&id).unwrap(), Matroid::free(3));
        let zero = vec![vec![rat(0); 2]; 2];
        assert_eq!(Matroid::from_rational_matrix(&zero), Err(MatroidError::ZeroMatrix));
        // [1 1 1] over GF(2) with an extra row making columns 1,2 parallel
        let rows = vec![vec![1, 1, 0], vec![0, 0, 1]];
        let m = Matroid::from_matrix_mod_p(&rows, 2).unwrap();
        assert_eq!(m.parallel_pairs(), vec![(1, 2)]);
    }
}
