//! Sparse paving, Vámos-like configurations and Ingleton's inequality.

use super::Matroid;
use crate::subset::{self, Subset};

/// Disjoint pairs `P1..P4` and an `(r-4)`-set `K` such that `K∪Pi∪Pj` is
/// dependent for every pair except `{3,4}`, where it is a basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VamosWitness {
    pub pairs: [Subset; 4],
    pub k: Subset,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IngletonResult {
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

/// Search space for [`Matroid::ingleton_search`]: nonempty pairwise disjoint
/// subsets of size at most `max_size`. `exhaustive` raises the size limit
/// to the rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IngletonSearch {
    pub max_size: usize,
    pub exhaustive: bool,
}

impl Default for IngletonSearch {
    fn default() -> Self {
        IngletonSearch { max_size: 2, exhaustive: false }
    }
}

fn ingleton_from_ranks(rk: &dyn Fn(Subset) -> i64, p: [Subset; 4]) -> IngletonResult {
    let [p1, p2, p3, p4] = p;
    let lhs = rk(p1 | p2) + rk(p1 | p3) + rk(p1 | p4) + rk(p2 | p3) + rk(p2 | p4);
    let rhs = rk(p1) + rk(p2) + rk(p1 | p2 | p3) + rk(p1 | p2 | p4) + rk(p3 | p4);
    IngletonResult { lhs, rhs, holds: lhs >= rhs }
}

impl Matroid {
    /// Every dependent `r`-set is a circuit-hyperplane.
    pub fn is_sparse_paving(&self) -> bool {
        self.nonbases().into_iter().all(|h| self.is_circuit_hyperplane(h))
    }

    pub fn is_vamos_like(&self) -> Option<VamosWitness> {
        let r = self.rank();
        if r < 4 || !self.is_sparse_paving() {
            return None;
        }
        let ground = self.ground_set();
        let nonbasis = |s: Subset| !self.is_basis(s);
        for k in subset::k_subsets(self.n(), r - 4) {
            let pairs: Vec<Subset> = subset::k_subsets_of(ground & !k, 2).collect();
            for (a, &p1) in pairs.iter().enumerate() {
                for &p2 in &pairs[a + 1..] {
                    if p1 & p2 != 0 || !nonbasis(k | p1 | p2) {
                        continue;
                    }
                    let thirds: Vec<Subset> = pairs
                        .iter()
                        .copied()
                        .filter(|&p| p & (p1 | p2) == 0 && nonbasis(k | p1 | p) && nonbasis(k | p2 | p))
                        .collect();
                    for (b, &p3) in thirds.iter().enumerate() {
                        for &p4 in &thirds[b + 1..] {
                            if p3 & p4 == 0 && self.is_basis(k | p3 | p4) {
                                return Some(VamosWitness { pairs: [p1, p2, p3, p4], k });
                            }
                        }
                    }
                }
            }
        }
        None
    }

    pub fn ingleton_check(&self, p: [Subset; 4]) -> IngletonResult {
        ingleton_from_ranks(&|s| self.rank_of(s) as i64, p)
    }

    /// First violated instance of Ingleton's inequality, if any.
    ///
    /// Uses the symmetries `P1 ↔ P2` and `P3 ↔ P4` to enumerate only
    /// `P1 < P2`, `P3 < P4`.
    pub fn ingleton_search(&self, opts: IngletonSearch) -> Option<([Subset; 4], IngletonResult)> {
        let table = self.rank_table();
        let rk = |s: Subset| table[s as usize] as i64;
        let limit = if opts.exhaustive { self.rank().max(opts.max_size) } else { opts.max_size };
        let candidates: Vec<Subset> =
            (1..=limit.min(self.n())).flat_map(|size| subset::k_subsets(self.n(), size)).collect();
        for (a, &p1) in candidates.iter().enumerate() {
            for &p2 in &candidates[a + 1..] {
                if p1 & p2 != 0 {
                    continue;
                }
                let used = p1 | p2;
                let rest: Vec<Subset> = candidates.iter().copied().filter(|&p| p & used == 0).collect();
                for (b, &p3) in rest.iter().enumerate() {
                    for &p4 in &rest[b + 1..] {
                        if p3 & p4 != 0 {
                            continue;
                        }
                        let res = ingleton_from_ranks(&rk, [p1, p2, p3, p4]);
                        if !res.holds {
                            return Some(([p1, p2, p3, p4], res));
                        }
                    }
                }
            }
        }
        None
    }
}
