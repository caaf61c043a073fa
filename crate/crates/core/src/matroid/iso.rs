//! Isomorphism testing and canonical labeling.
//!
//! Elements are first split into cells by a relabeling-invariant signature
//! (basis degree, refined by pairwise co-occurrence counts). Isomorphisms are
//! then found by backtracking cell-respecting assignments, checking every
//! completed `r`-subset as soon as all its elements are placed.

use super::Matroid;
use crate::subset::{self, Subset};

/// Per-element invariant: own basis degree, then the sorted multiset of
/// `(degree of f, bases containing both e and f)` over the other elements.
fn signatures(m: &Matroid) -> Vec<Vec<u32>> {
    let n = m.n();
    let mut pair = vec![vec![0u32; n]; n];
    for &b in m.bases() {
        let elems: Vec<usize> = subset::bits(b).collect();
        for &x in &elems {
            for &y in &elems {
                pair[x][y] += 1;
            }
        }
    }
    (0..n)
        .map(|e| {
            let mut rest: Vec<(u32, u32)> = (0..n).filter(|&f| f != e).map(|f| (pair[f][f], pair[e][f])).collect();
            rest.sort_unstable();
            let mut sig = vec![pair[e][e]];
            sig.extend(rest.into_iter().flat_map(|(a, b)| [a, b]));
            sig
        })
        .collect()
}

/// An isomorphism `perm` with `perm[i]` the image of element `i` (0-based),
/// such that `perm(bases(m1)) = bases(m2)`.
pub fn isomorphism(m1: &Matroid, m2: &Matroid) -> Option<Vec<usize>> {
    if m1.n() != m2.n() || m1.rank() != m2.rank() || m1.bases().len() != m2.bases().len() {
        return None;
    }
    let n = m1.n();
    let s1 = signatures(m1);
    let s2 = signatures(m2);
    let mut sorted1 = s1.clone();
    let mut sorted2 = s2.clone();
    sorted1.sort();
    sorted2.sort();
    if sorted1 != sorted2 {
        return None;
    }
    if n == 0 {
        return Some(Vec::new());
    }
    let candidates: Vec<Vec<usize>> = (0..n).map(|e| (0..n).filter(|&f| s2[f] == s1[e]).collect()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&e| (candidates[e].len(), s1[e].clone()));

    let search = Search { table1: m1.basis_table(), table2: m2.basis_table(), rank: m1.rank(), order, candidates };
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if search.extend(0, &mut perm, &mut used) {
        Some(perm)
    } else {
        None
    }
}

struct Search {
    table1: Vec<bool>,
    table2: Vec<bool>,
    rank: usize,
    order: Vec<usize>,
    candidates: Vec<Vec<usize>>,
}

impl Search {
    fn extend(&self, depth: usize, perm: &mut [usize], used: &mut [bool]) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let a = self.order[depth];
        let placed: Subset = self.order[..depth].iter().fold(0, |m, &e| m | 1 << e);
        for &b in &self.candidates[a] {
            if used[b] {
                continue;
            }
            perm[a] = b;
            if self.consistent(a, placed, perm) {
                used[b] = true;
                if self.extend(depth + 1, perm, used) {
                    return true;
                }
                used[b] = false;
            }
        }
        perm[a] = usize::MAX;
        false
    }

    /// Every `r`-subset of the placed elements that contains `a` must have
    /// the same basis status as its image.
    fn consistent(&self, a: usize, placed: Subset, perm: &[usize]) -> bool {
        if self.rank == 0 {
            return true;
        }
        if subset::size(placed) + 1 < self.rank {
            return true;
        }
        subset::k_subsets_of(placed, self.rank - 1).all(|t| {
            let s = t | 1 << a;
            let image = subset::bits(s).fold(0u32, |m, e| m | 1 << perm[e]);
            self.table1[s as usize] == self.table2[image as usize]
        })
    }
}

pub fn is_isomorphic(m1: &Matroid, m2: &Matroid) -> bool {
    isomorphism(m1, m2).is_some()
}

/// A fixed representative of the isomorphism class of `m`.
///
/// Elements are ordered by signature cell; within cells every arrangement is
/// tried and the one whose sorted list of dependent `r`-sets (or of bases,
/// whichever family is smaller) is lexicographically least wins.
pub fn canonical_form(m: &Matroid) -> Matroid {
    let n = m.n();
    let sigs = signatures(m);
    let mut distinct: Vec<&Vec<u32>> = sigs.iter().collect();
    distinct.sort();
    distinct.dedup();
    let cells: Vec<Vec<usize>> = distinct.iter().map(|sig| (0..n).filter(|&e| &&sigs[e] == sig).collect()).collect();

    let nonbases = m.nonbases();
    let family: Vec<Subset> = if nonbases.len() <= m.bases().len() { nonbases } else { m.bases().to_vec() };
    if family.is_empty() {
        return m.clone();
    }

    let mut best: Option<(Vec<Subset>, Vec<usize>)> = None;
    let mut arrangement: Vec<Vec<usize>> = cells.clone();
    enumerate_cells(&mut arrangement, 0, &mut |arr| {
        let mut perm = vec![0usize; n];
        let mut label = 0;
        for cell in arr {
            for &e in cell {
                perm[e] = label;
                label += 1;
            }
        }
        let mut image: Vec<Subset> = family.iter().map(|&s| subset::permute(s, &perm)).collect();
        image.sort_unstable();
        let better = match &best {
            None => true,
            Some((cur, _)) => image < *cur,
        };
        if better {
            best = Some((image, perm));
        }
    });
    let (_, perm) = best.expect("at least one arrangement");
    m.permute(&perm)
}

/// Calls `visit` once for every combination of within-cell orderings.
fn enumerate_cells(cells: &mut Vec<Vec<usize>>, idx: usize, visit: &mut dyn FnMut(&[Vec<usize>])) {
    if idx == cells.len() {
        visit(cells);
        return;
    }
    let len = cells[idx].len();
    permutations(cells, idx, len, visit);
}

// Heap's algorithm on cells[idx], recursing into the next cell at each leaf.
fn permutations(cells: &mut Vec<Vec<usize>>, idx: usize, k: usize, visit: &mut dyn FnMut(&[Vec<usize>])) {
    if k <= 1 {
        enumerate_cells(cells, idx + 1, visit);
        return;
    }
    for i in 0..k - 1 {
        permutations(cells, idx, k - 1, visit);
        if k % 2 == 0 {
            cells[idx].swap(i, k - 1);
        } else {
            cells[idx].swap(0, k - 1);
        }
    }
    permutations(cells, idx, k - 1, visit);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabeled_uniform_is_isomorphic() {
        let u = Matroid::uniform(2, 4);
        let p = u.permute(&[3, 1, 0, 2]);
        assert!(is_isomorphic(&u, &p));
        assert_eq!(canonical_form(&u), canonical_form(&p));
    }

    #[test]
    fn witness_maps_bases() {
        let m = Matroid::from_basis_lists(4, 2, &[&[1, 2], &[2, 3], &[1, 4], &[2, 4], &[3, 4]]).unwrap();
        let p = m.permute(&[2, 0, 3, 1]);
        let sigma = isomorphism(&m, &p).unwrap();
        assert_eq!(m.permute(&sigma), p);
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        let a = Matroid::uniform(2, 4);
        let b = Matroid::from_basis_lists(4, 2, &[&[1, 2], &[2, 3], &[1, 4], &[2, 4], &[3, 4]]).unwrap();
        assert!(!is_isomorphic(&a, &b));
        assert_ne!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn heap_enumerates_all_arrangements() {
        let mut cells = vec![vec![0, 1, 2], vec![3, 4]];
        let mut seen = std::collections::BTreeSet::new();
        enumerate_cells(&mut cells, 0, &mut |arr| {
            seen.insert(arr.to_vec());
        });
        assert_eq!(seen.len(), 12);
    }
}
