//! Reduced simplicial homology and cohomology over GF(2) and the integers.
//!
//! Chain groups are augmented: `C_{-1}` is generated by the empty simplex and
//! `∂_0` sends every vertex to it. All groups are therefore reduced.

mod gf2;
mod smith;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::{Error, GroundSet, Result, Simplex, SimplicialComplex};

pub use gf2::gf2_rank;
pub use smith::{smith_form, SmithForm};

/// Matrix of `∂_q : C_q → C_{q-1}` with faces in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatrix {
    /// Dimension `q` of the source faces.
    pub dim: i32,
    pub rows: Vec<Simplex>,
    pub cols: Vec<Simplex>,
    /// Sparse columns: `(row index, ±1)`.
    pub columns: Vec<Vec<(usize, i8)>>,
}

impl BoundaryMatrix {
    pub fn dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.cols.len()]; self.rows.len()];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, s) in col {
                m[i][j] = s as i64;
            }
        }
        m
    }

    pub fn dense_transposed(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.rows.len()]; self.cols.len()];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, s) in col {
                m[j][i] = s as i64;
            }
        }
        m
    }

    /// Columns as bitsets over the rows, for GF(2) elimination.
    pub fn gf2_columns(&self) -> Vec<Vec<u64>> {
        let words = self.rows.len().div_ceil(64);
        self.columns
            .iter()
            .map(|col| {
                let mut bits = vec![0u64; words];
                for &(i, _) in col {
                    bits[i / 64] |= 1 << (i % 64);
                }
                bits
            })
            .collect()
    }

    /// Product `self · other` where `other` is the next lower map.
    pub fn compose(&self, lower: &BoundaryMatrix) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0i64; self.cols.len()]; lower.rows.len()];
        for (j, col) in self.columns.iter().enumerate() {
            for &(mid, s) in col {
                for &(i, t) in &lower.columns[mid] {
                    out[i][j] += (s as i64) * (t as i64);
                }
            }
        }
        out
    }
}

/// A finitely generated abelian group `Z^rank ⊕ Z/t_1 ⊕ …`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_z(&self) -> bool {
        self.rank == 1 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Reduced Betti numbers. Index `i` of each vector is dimension `i − 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BettiProfile {
    pub mod2: Vec<usize>,
    pub integral: Vec<HomologyGroup>,
}

impl BettiProfile {
    /// Profile of the void complex.
    pub fn zero() -> Self {
        BettiProfile::default()
    }

    pub fn mod2_at(&self, dim: i32) -> usize {
        index(dim).and_then(|i| self.mod2.get(i)).copied().unwrap_or(0)
    }

    pub fn integral_at(&self, dim: i32) -> HomologyGroup {
        index(dim)
            .and_then(|i| self.integral.get(i))
            .cloned()
            .unwrap_or_default()
    }

    pub fn top_dim(&self) -> i32 {
        self.integral.len().max(self.mod2.len()) as i32 - 2
    }

    pub fn is_acyclic(&self) -> bool {
        self.integral.iter().all(HomologyGroup::is_trivial)
    }

    /// `Some(m)` when the integral groups are those of `S^m`.
    pub fn sphere_dim(&self) -> Option<i32> {
        let nontrivial: Vec<usize> = (0..self.integral.len())
            .filter(|&i| !self.integral[i].is_trivial())
            .collect();
        match nontrivial.as_slice() {
            [i] if self.integral[*i].is_z() => Some(*i as i32 - 1),
            _ => None,
        }
    }

    /// The same groups one dimension higher, as for a suspension.
    pub fn shifted_up(&self) -> BettiProfile {
        let mut mod2 = self.mod2.clone();
        let mut integral = self.integral.clone();
        if !mod2.is_empty() {
            mod2.insert(0, 0);
        }
        if !integral.is_empty() {
            integral.insert(0, HomologyGroup::default());
        }
        BettiProfile { mod2, integral }
    }

    /// Equality ignoring trailing zero entries.
    pub fn same_groups(&self, other: &BettiProfile) -> bool {
        let top = self.top_dim().max(other.top_dim());
        (-1..=top).all(|q| self.mod2_at(q) == other.mod2_at(q) && self.integral_at(q) == other.integral_at(q))
    }
}

fn index(dim: i32) -> Option<usize> {
    (dim >= -1).then(|| (dim + 1) as usize)
}

/// Faces grouped by dimension, index `i` holding dimension `i − 1`.
fn faces_by_dim(k: &SimplicialComplex) -> Vec<Vec<Simplex>> {
    let d = k.dim().unwrap_or(-2);
    let mut out: Vec<Vec<Simplex>> = vec![Vec::new(); (d + 2).max(0) as usize];
    for s in k.all_faces() {
        out[s.len()].push(s);
    }
    out
}

fn build_matrices(levels: &[Vec<Simplex>]) -> Vec<BoundaryMatrix> {
    let mut out = Vec::new();
    for q in 1..levels.len() {
        let rows = &levels[q - 1];
        let lookup: HashMap<Simplex, usize> = rows.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let columns = levels[q]
            .iter()
            .map(|s| {
                s.vertices()
                    .enumerate()
                    .map(|(pos, v)| {
                        let sign = if pos % 2 == 0 { 1 } else { -1 };
                        (lookup[&s.without(v)], sign)
                    })
                    .collect()
            })
            .collect();
        out.push(BoundaryMatrix {
            dim: q as i32 - 1,
            rows: rows.clone(),
            cols: levels[q].clone(),
            columns,
        });
    }
    out
}

/// Matrices of the augmented chain complex, `∂_0` (augmentation) first.
pub fn boundary_matrices(k: &SimplicialComplex) -> Result<Vec<BoundaryMatrix>> {
    if k.is_void() {
        return Err(Error::VoidComplex);
    }
    Ok(build_matrices(&faces_by_dim(k)))
}

/// Reduced GF(2) Betti numbers only; cheaper than [`betti`].
pub fn mod2_betti(k: &SimplicialComplex) -> Result<Vec<usize>> {
    let mats = boundary_matrices(k)?;
    let sizes = chain_sizes(k, &mats);
    let ranks: Vec<usize> = mats.iter().map(|m| gf2_rank(m.gf2_columns(), m.rows.len())).collect();
    Ok(free_parts(&sizes, &ranks))
}

fn chain_sizes(k: &SimplicialComplex, mats: &[BoundaryMatrix]) -> Vec<usize> {
    let mut sizes: Vec<usize> = mats.iter().map(|m| m.rows.len()).collect();
    match mats.last() {
        Some(m) => sizes.push(m.cols.len()),
        // Only {∅} has no maps.
        None => sizes.push(usize::from(!k.is_void())),
    }
    sizes
}

/// Free ranks `n_q − rank ∂_q − rank ∂_{q+1}`. Both slices are indexed by
/// dimension plus one; `ranks[i]` is the rank of the map out of dimension `i`.
fn free_parts(sizes: &[usize], ranks: &[usize]) -> Vec<usize> {
    (0..sizes.len())
        .map(|i| {
            let out = if i == 0 { 0 } else { ranks[i - 1] };
            let inc = ranks.get(i).copied().unwrap_or(0);
            sizes[i] - out - inc
        })
        .collect()
}

/// Reduced homology over GF(2) and over Z.
pub fn betti(k: &SimplicialComplex) -> Result<BettiProfile> {
    let mats = boundary_matrices(k)?;
    let sizes = chain_sizes(k, &mats);
    let gf2: Vec<usize> = mats.iter().map(|m| gf2_rank(m.gf2_columns(), m.rows.len())).collect();
    let forms: Vec<SmithForm> = mats.iter().map(|m| smith_form(&m.dense(), m.cols.len())).collect();
    let int_ranks: Vec<usize> = forms.iter().map(|f| f.rank).collect();
    let free = free_parts(&sizes, &int_ranks);
    let integral = free
        .iter()
        .enumerate()
        .map(|(i, &rank)| HomologyGroup {
            rank,
            // Torsion of H_q is read off the map into dimension q.
            torsion: forms.get(i).map(|f| f.torsion.clone()).unwrap_or_default(),
        })
        .collect();
    Ok(BettiProfile {
        mod2: free_parts(&sizes, &gf2),
        integral,
    })
}

/// Whether every reduced integral homology group vanishes.
pub fn is_acyclic(k: &SimplicialComplex) -> Result<bool> {
    Ok(betti(k)?.is_acyclic())
}

/// Fast necessary check: all reduced GF(2) Betti numbers vanish.
pub fn is_mod2_acyclic(k: &SimplicialComplex) -> Result<bool> {
    Ok(mod2_betti(k)?.iter().all(|&b| b == 0))
}

/// `Some(m)` if the reduced integral homology is that of `S^m`; `{∅}` gives
/// `Some(-1)`.
pub fn sphere_profile(k: &SimplicialComplex) -> Result<Option<i32>> {
    Ok(betti(k)?.sphere_dim())
}

/// Reduced integral cohomology, index `i` holding degree `i − 1`, from the
/// Smith forms of the transposed boundary matrices.
pub fn cohomology(k: &SimplicialComplex) -> Result<Vec<HomologyGroup>> {
    let mats = boundary_matrices(k)?;
    let sizes = chain_sizes(k, &mats);
    // δ^{q-1} = ∂_q^T : C^{q-1} → C^q.
    let forms: Vec<SmithForm> = mats
        .iter()
        .map(|m| smith_form(&m.dense_transposed(), m.rows.len()))
        .collect();
    let ranks: Vec<usize> = forms.iter().map(|f| f.rank).collect();
    let free = free_parts(&sizes, &ranks);
    Ok(free
        .iter()
        .enumerate()
        .map(|(i, &rank)| HomologyGroup {
            rank,
            // Torsion of H^q is the cokernel torsion of δ^{q-1}.
            torsion: if i == 0 {
                Vec::new()
            } else {
                forms[i - 1].torsion.clone()
            },
        })
        .collect())
}

/// Every subset of `ground` with at most three vertices is a face of `k`.
pub fn contains_full_2_skeleton(k: &SimplicialComplex, ground: GroundSet) -> bool {
    k.contains_full_2_skeleton(ground)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{letter_simplex as sx, letters as cx};

    fn rp2() -> SimplicialComplex {
        cx("abc acd ade aef afb bce cdf dbe efc fbd")
    }

    #[test]
    fn boundary_matrix_examples() {
        let m = boundary_matrices(&cx("ab")).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!((m[0].rows.len(), m[0].cols.len()), (1, 2));
        assert_eq!((m[1].rows.len(), m[1].cols.len()), (2, 1));
        assert!(m[1].columns[0].iter().all(|&(_, s)| s != 0));
        let m = boundary_matrices(&cx("ab bc ac")).unwrap();
        let cols = m[1].gf2_columns();
        assert_eq!(cols.len(), 3);
        let xor = cols.iter().fold(0u64, |acc, c| acc ^ c[0]);
        assert_eq!(xor, 0);
        assert!(boundary_matrices(&SimplicialComplex::empty_face()).unwrap().is_empty());
        assert!(boundary_matrices(&SimplicialComplex::void()).is_err());
    }

    #[test]
    fn boundary_squared_is_zero() {
        let m = boundary_matrices(&rp2()).unwrap();
        for w in m.windows(2) {
            assert!(w[1].compose(&w[0]).iter().flatten().all(|&x| x == 0));
        }
    }

    #[test]
    fn betti_examples() {
        let s2 = SimplicialComplex::boundary_of(sx("abcd"));
        let b = betti(&s2).unwrap();
        assert_eq!(b.mod2, vec![0, 0, 0, 1]);
        assert!(b.integral_at(2).is_z());
        let b = betti(&rp2()).unwrap();
        assert_eq!((b.mod2_at(1), b.mod2_at(2)), (1, 1));
        assert_eq!(b.integral_at(1), HomologyGroup { rank: 0, torsion: vec![2] });
        assert!(b.integral_at(2).is_trivial());
        assert!(betti(&cx("abc")).unwrap().is_acyclic());
        let e = betti(&SimplicialComplex::empty_face()).unwrap();
        assert_eq!(e.mod2, vec![1]);
    }

    #[test]
    fn acyclic_and_sphere_profiles() {
        assert!(is_acyclic(&cx("ab")).unwrap());
        assert!(!is_acyclic(&cx("ab bc ac")).unwrap());
        assert!(is_acyclic(&cx("b")).unwrap());
        assert_eq!(sphere_profile(&SimplicialComplex::boundary_of(sx("abcd"))).unwrap(), Some(2));
        assert_eq!(sphere_profile(&SimplicialComplex::empty_face()).unwrap(), Some(-1));
        assert_eq!(sphere_profile(&cx("abc")).unwrap(), None);
        assert_eq!(sphere_profile(&cx("ab t")).unwrap(), Some(0));
    }

    #[test]
    fn cohomology_examples() {
        let c = cohomology(&SimplicialComplex::boundary_of(sx("abcd"))).unwrap();
        assert!(c[3].is_z());
        let c = cohomology(&rp2()).unwrap();
        assert_eq!(c[3], HomologyGroup { rank: 0, torsion: vec![2] });
        assert!(c[2].is_trivial());
        let c = cohomology(&SimplicialComplex::empty_face()).unwrap();
        assert!(c[0].is_z());
    }

    #[test]
    fn universal_coefficients_on_rp2() {
        // b_q(GF(2)) = rank H_q + #even torsion in H_q + #even torsion in H_{q-1}.
        let b = betti(&rp2()).unwrap();
        for q in -1..=2 {
            let even = |g: &HomologyGroup| g.torsion.iter().filter(|t| *t % 2 == 0).count();
            let expected = b.integral_at(q).rank + even(&b.integral_at(q)) + even(&b.integral_at(q - 1));
            assert_eq!(b.mod2_at(q), expected, "q = {q}");
        }
    }

    #[test]
    fn full_two_skeleton_examples() {
        assert!(contains_full_2_skeleton(&cx("abcd"), GroundSet::new(sx("abcd"))));
        assert!(!contains_full_2_skeleton(&cx("ab bc ac"), GroundSet::new(sx("abc"))));
    }
}
