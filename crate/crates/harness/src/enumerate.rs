//! Exhaustive enumeration of simplicial complexes on few vertices up to
//! relabeling.
//!
//! A complex on vertex set `[n]` is stored as a `u128` face bitmap: bit `s`
//! is set when the subset with mask `s` is a face. Every complex on `[n]`
//! is `A + v∗B` with `v = n − 1`, `A = K − v` a complex on `[n − 1]` and
//! `B = lk(v, K) ⊆ A`, so representatives on `[n]` come from class
//! representatives `A` on `[n − 1]` and all subcomplexes `B` of `A`.

use std::collections::HashSet;

use nhdual_core::{Simplex, SimplicialComplex};

use crate::HarnessError;

/// Largest accepted vertex count.
pub const MAX_ENUMERATION_VERTICES: usize = 7;

/// Every complex on at most `max_vertices` vertices, one per isomorphism
/// class, excluding the void complex. Sorted by vertex count, then by
/// canonical bitmap.
pub fn enumerate_small(max_vertices: usize) -> Result<Vec<SimplicialComplex>, HarnessError> {
    if max_vertices > MAX_ENUMERATION_VERTICES {
        return Err(HarnessError::EnumerationLimit {
            requested: max_vertices,
            limit: MAX_ENUMERATION_VERTICES,
        });
    }
    let mut classes = vec![0u128, 1u128];
    for n in 1..=max_vertices {
        classes = extend_classes(&classes, &downsets(n - 1), n);
    }
    let mut out: Vec<SimplicialComplex> = classes.into_iter().filter(|&b| b != 0).map(to_complex).collect();
    out.sort_by_key(|k| (k.num_vertices(), k.num_faces()));
    Ok(out)
}

/// All complexes on `[m]` as face bitmaps, including the void complex.
fn downsets(m: usize) -> Vec<u128> {
    let mut sets = vec![0u128, 1u128];
    for v in 0..m {
        let shift = 1u32 << v;
        let mut next = Vec::new();
        for &a in &sets {
            for &b in &sets {
                if b & !a == 0 {
                    next.push(a | (b << shift));
                }
            }
        }
        sets = next;
    }
    sets
}

fn extend_classes(classes: &[u128], subs: &[u128], n: usize) -> Vec<u128> {
    let shift = 1u32 << (n - 1);
    let mut seen = HashSet::new();
    for &a in classes {
        for &b in subs {
            if b & !a == 0 {
                seen.insert(canonical(a | (b << shift), n));
            }
        }
    }
    let mut out: Vec<u128> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

/// Per-vertex invariant: number of faces of each size containing it.
fn vertex_key(bits: u128, v: usize, n: usize) -> u64 {
    let mut counts = [0u64; 8];
    for s in 0..(1usize << n) {
        if bits >> s & 1 == 1 && s >> v & 1 == 1 {
            counts[s.count_ones() as usize] += 1;
        }
    }
    counts.iter().fold(0u64, |acc, &c| acc << 7 | c)
}

fn apply(bits: u128, perm: &[usize], n: usize) -> u128 {
    let size = 1usize << n;
    let mut table = [0usize; 128];
    for s in 1..size {
        let low = s.trailing_zeros() as usize;
        table[s] = table[s & (s - 1)] | 1 << perm[low];
    }
    let mut out = 0u128;
    let mut rest = bits;
    while rest != 0 {
        let s = rest.trailing_zeros() as usize;
        out |= 1u128 << table[s];
        rest &= rest - 1;
    }
    out
}

/// Smallest image under relabelings that list vertices by increasing
/// invariant; only vertices with equal invariants are permuted freely.
pub(crate) fn canonical(bits: u128, n: usize) -> u128 {
    if n == 0 {
        return bits;
    }
    let mut order: Vec<(u64, usize)> = (0..n).map(|v| (vertex_key(bits, v, n), v)).collect();
    order.sort_unstable();
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for (i, &(key, v)) in order.iter().enumerate() {
        if i > 0 && order[i - 1].0 == key {
            cells.last_mut().expect("nonempty").push(v);
        } else {
            cells.push(vec![v]);
        }
    }
    let mut perm = vec![0usize; n];
    let mut best = u128::MAX;
    assign(&cells, 0, 0, &mut perm, &mut |p| {
        let image = apply(bits, p, n);
        if image < best {
            best = image;
        }
    });
    best
}

/// Enumerates all bijections sending cell `i` onto the next block of
/// labels, calling `visit` with each completed permutation.
fn assign(cells: &[Vec<usize>], cell: usize, base: usize, perm: &mut [usize], visit: &mut impl FnMut(&[usize])) {
    if cell == cells.len() {
        visit(perm);
        return;
    }
    let mut members = cells[cell].clone();
    permute(&mut members, 0, &mut |arr| {
        for (offset, &v) in arr.iter().enumerate() {
            perm[v] = base + offset;
        }
        assign(cells, cell + 1, base + arr.len(), perm, visit);
    });
}

fn permute(arr: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == arr.len() {
        visit(arr);
        return;
    }
    for i in k..arr.len() {
        arr.swap(k, i);
        permute(arr, k + 1, visit);
        arr.swap(k, i);
    }
}

fn to_complex(bits: u128) -> SimplicialComplex {
    let faces = (0..128u32).filter(|&s| bits >> s & 1 == 1).map(|s| Simplex::from_bits(s as u128));
    SimplicialComplex::from_facets(faces)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let one = enumerate_small(1).unwrap();
        assert_eq!(one.len(), 2);
        assert!(one[0].is_empty_face());
        let two = enumerate_small(2).unwrap();
        assert_eq!(two.len(), 4);
        assert!(two.contains(&SimplicialComplex::simplex(Simplex::range(2))));
        assert_eq!(enumerate_small(3).unwrap().len(), 9);
        assert_eq!(enumerate_small(4).unwrap().len(), 29);
        assert_eq!(enumerate_small(5).unwrap().len(), 209);
        assert!(matches!(enumerate_small(8), Err(HarnessError::EnumerationLimit { .. })));
    }

    #[test]
    fn downset_counts_are_dedekind_numbers() {
        let sizes: Vec<usize> = (0..=4).map(|m| downsets(m).len()).collect();
        assert_eq!(sizes, vec![2, 3, 6, 20, 168]);
    }

    #[test]
    fn canonical_form_is_relabeling_invariant() {
        // Path a-b-c labelled two ways.
        let path1 = 0b1 | 1 << 1 | 1 << 2 | 1 << 4 | 1 << 3 | 1 << 6;
        let path2 = 0b1 | 1 << 1 | 1 << 2 | 1 << 4 | 1 << 5 | 1 << 6;
        assert_eq!(canonical(path1, 3), canonical(path2, 3));
    }
}
