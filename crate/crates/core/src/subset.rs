//! Subsets of a small ground set as bitmasks.
//!
//! Bit `i` stands for element `i + 1`; the public text formats and error
//! messages always use the 1-based labels.

pub type Subset = u32;

/// Largest supported ground set.
pub const MAX_ELEMENTS: usize = 16;

pub fn full(n: usize) -> Subset {
    if n == 0 {
        0
    } else {
        (1u32 << n) - 1
    }
}

pub fn size(s: Subset) -> usize {
    s.count_ones() as usize
}

pub fn contains(s: Subset, element: usize) -> bool {
    s >> element & 1 == 1
}

/// Builds a mask from 1-based element labels.
pub fn from_elements(elements: &[usize]) -> Subset {
    elements.iter().fold(0, |m, &e| {
        debug_assert!((1..=MAX_ELEMENTS).contains(&e), "element {e} out of range");
        m | 1 << (e - 1)
    })
}

/// 1-based labels of a mask, ascending.
pub fn to_elements(s: Subset) -> Vec<usize> {
    bits(s).map(|i| i + 1).collect()
}

/// 0-based bit positions of a mask, ascending.
pub fn bits(mut s: Subset) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if s == 0 {
            None
        } else {
            let i = s.trailing_zeros() as usize;
            s &= s - 1;
            Some(i)
        }
    })
}

/// All `k`-subsets of `{0..n}` in increasing numeric order (Gosper's hack).
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = Subset> {
    let limit: u64 = 1u64 << n;
    let mut cur: Option<u64> = if k > n { None } else { Some((1u64 << k) - 1) };
    std::iter::from_fn(move || {
        let c = cur?;
        if c >= limit {
            cur = None;
            return None;
        }
        cur = if c == 0 {
            None
        } else {
            let u = c & c.wrapping_neg();
            let v = c + u;
            Some(v + (((v ^ c) / u) >> 2))
        };
        Some(c as Subset)
    })
}

/// `k`-subsets of an arbitrary mask, as masks.
pub fn k_subsets_of(s: Subset, k: usize) -> impl Iterator<Item = Subset> {
    let members: Vec<usize> = bits(s).collect();
    k_subsets(members.len(), k).map(move |sel| bits(sel).fold(0, |m, i| m | 1 << members[i]))
}

/// Applies `perm` (bit `i` goes to bit `perm[i]`).
pub fn permute(s: Subset, perm: &[usize]) -> Subset {
    bits(s).fold(0, |m, i| m | 1 << perm[i])
}

/// Removes the bits in `removed` and shifts the survivors down so that the
/// result lives on `{0..n-|removed|}`.
pub fn compress(s: Subset, removed: Subset) -> Subset {
    let mut out = 0;
    let mut j = 0;
    for i in 0..32 {
        if contains(removed, i) {
            continue;
        }
        if contains(s, i) {
            out |= 1 << j;
        }
        j += 1;
    }
    out
}

/// Human-readable `{1,2,3}`.
pub fn display(s: Subset) -> String {
    let parts: Vec<String> = to_elements(s).iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_subset_counts() {
        assert_eq!(k_subsets(6, 3).count(), 20);
        assert_eq!(k_subsets(4, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(k_subsets(3, 3).collect::<Vec<_>>(), vec![0b111]);
        assert_eq!(k_subsets(2, 3).count(), 0);
        assert_eq!(k_subsets(16, 8).count(), 12870);
        assert!(k_subsets(5, 2).all(|s| size(s) == 2));
    }

    #[test]
    fn subsets_of_mask() {
        let s = from_elements(&[2, 4, 7]);
        let subs: Vec<_> = k_subsets_of(s, 2).collect();
        assert_eq!(subs.len(), 3);
        assert!(subs.iter().all(|&t| t & !s == 0 && size(t) == 2));
    }

    #[test]
    fn compress_and_labels() {
        assert_eq!(compress(0b1011, 0b0010), 0b101);
        assert_eq!(to_elements(from_elements(&[1, 3, 8])), vec![1, 3, 8]);
        assert_eq!(display(from_elements(&[1, 3])), "{1,3}");
        assert_eq!(permute(0b011, &[2, 0, 1]), 0b101);
    }
}
