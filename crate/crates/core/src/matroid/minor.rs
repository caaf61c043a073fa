//! Minor containment.

use super::{isomorphism, Matroid};
use crate::subset::{self, Subset};

/// Certifies `N ≅ M / contracted \ deleted`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorWitness {
    pub deleted: Subset,
    pub contracted: Subset,
    /// `relabeling[k]` is the 1-based element of `M` playing the role of
    /// element `k + 1` of `N`.
    pub relabeling: Vec<usize>,
}

impl MinorWitness {
    /// Recomputes the minor and checks that the relabeling carries `n`'s
    /// bases onto it.
    pub fn verify(&self, m: &Matroid, n: &Matroid) -> bool {
        if self.deleted & self.contracted != 0 || self.relabeling.len() != n.n() {
            return false;
        }
        let removed = self.deleted | self.contracted;
        if removed & !m.ground_set() != 0 {
            return false;
        }
        let Some(minor) = minor_of(m, self.contracted, self.deleted) else {
            return false;
        };
        let remaining: Vec<usize> = subset::bits(m.ground_set() & !removed).collect();
        // position of each surviving M element inside the minor
        let mut perm = Vec::with_capacity(n.n());
        for &e in &self.relabeling {
            match remaining.iter().position(|&x| x + 1 == e) {
                Some(p) => perm.push(p),
                None => return false,
            }
        }
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == n.n() && minor.n() == n.n() && n.permute(&perm) == minor
    }
}

fn minor_of(m: &Matroid, contracted: Subset, deleted: Subset) -> Option<Matroid> {
    let after_contract = if contracted == 0 { m.clone() } else { m.contract(contracted).ok()? };
    if deleted == 0 {
        return Some(after_contract);
    }
    after_contract.delete(subset::compress(deleted, contracted)).ok()
}

/// Searches for `N` as a minor of `M`.
///
/// Contraction sets range over independent sets of size `r(M) - r(N)`;
/// deletion sets over complements that keep the contracted matroid's rank.
pub fn has_minor(m: &Matroid, n: &Matroid) -> Option<MinorWitness> {
    if n.n() > m.n() || n.rank() > m.rank() || n.n() - n.rank() > m.n() - m.rank() || n.n() == 0 {
        return None;
    }
    let k = m.rank() - n.rank();
    let d = m.n() - n.n() - k;
    let ground = m.ground_set();
    let ranks = m.rank_table();
    for c in subset::k_subsets(m.n(), k) {
        if ranks[c as usize] as usize != k {
            continue;
        }
        for del in subset::k_subsets_of(ground & !c, d) {
            if ranks[(ground & !del) as usize] as usize != m.rank() {
                continue;
            }
            let Some(minor) = minor_of(m, c, del) else { continue };
            if minor.bases().len() != n.bases().len() {
                continue;
            }
            if let Some(perm) = isomorphism(n, &minor) {
                let remaining: Vec<usize> = subset::bits(ground & !(c | del)).collect();
                let relabeling = perm.iter().map(|&p| remaining[p] + 1).collect();
                return Some(MinorWitness { deleted: del, contracted: c, relabeling });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_matroid_is_its_own_minor() {
        let m = Matroid::from_basis_lists(4, 2, &[&[1, 2], &[2, 3], &[1, 4], &[2, 4], &[3, 4]]).unwrap();
        let w = has_minor(&m, &m).unwrap();
        assert_eq!((w.deleted, w.contracted), (0, 0));
        assert!(w.verify(&m, &m));
    }

    #[test]
    fn uniform_minors() {
        let u36 = Matroid::uniform(3, 6);
        let u24 = Matroid::uniform(2, 4);
        let w = has_minor(&u36, &u24).unwrap();
        assert!(w.verify(&u36, &u24));
        assert_eq!(subset::size(w.contracted), 1);
        assert_eq!(subset::size(w.deleted), 1);
        assert!(has_minor(&u24, &u36).is_none());
        assert!(has_minor(&Matroid::uniform(1, 4), &u24).is_none());
    }

    #[test]
    fn witness_rejects_tampering() {
        let u36 = Matroid::uniform(3, 6);
        let u24 = Matroid::uniform(2, 4);
        let mut w = has_minor(&u36, &u24).unwrap();
        w.relabeling[0] = w.relabeling[1];
        assert!(!w.verify(&u36, &u24));
    }
}
