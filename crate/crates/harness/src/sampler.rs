//! Seeded random complexes without certificates.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nhdual_core::{Simplex, SimplicialComplex, Vertex};

/// Generator for case `case` of a suite run with `seed`.
pub fn case_rng(seed: u64, case: usize) -> ChaCha8Rng {
    let mut z = (case as u64).wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    ChaCha8Rng::seed_from_u64(seed ^ z ^ (z >> 31))
}

/// A uniformly chosen `size`-subset of `vertices`.
pub fn random_subset(rng: &mut impl Rng, vertices: Simplex, size: usize) -> Simplex {
    let pool: Vec<Vertex> = vertices.vertices().collect();
    sample(rng, pool.len(), size.min(pool.len()))
        .into_iter()
        .fold(Simplex::EMPTY, |s, i| s.with(pool[i]))
}

/// `Δ` on the `size` consecutive vertices starting at `first`.
pub fn block(first: u8, size: usize) -> Simplex {
    (first..first + size as u8).map(Vertex).fold(Simplex::EMPTY, Simplex::with)
}

/// A random nonvoid complex other than `{∅}` on at most `max_vertices`
/// vertices (numbered from 0) with facets of dimension at most `max_dim`.
pub fn random_complex(rng: &mut impl Rng, max_vertices: usize, max_dim: usize) -> SimplicialComplex {
    let n = rng.gen_range(1..=max_vertices);
    let ground = block(0, n);
    let facets = rng.gen_range(1..=6);
    let gens: Vec<Simplex> = (0..facets)
        .map(|_| {
            let size = rng.gen_range(1..=(max_dim + 1).min(n));
            random_subset(rng, ground, size)
        })
        .collect();
    SimplicialComplex::from_facets(gens)
}

/// Like [`random_complex`] but never a single simplex.
pub fn random_non_simplex(rng: &mut impl Rng, max_vertices: usize, max_dim: usize) -> SimplicialComplex {
    loop {
        let k = random_complex(rng, max_vertices.max(2), max_dim);
        if !k.is_simplex() {
            return k;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic() {
        let a = random_complex(&mut case_rng(9, 4), 8, 4);
        let b = random_complex(&mut case_rng(9, 4), 8, 4);
        assert_eq!(a, b);
        assert!(!a.is_void() && !a.is_empty_face());
        assert!(a.num_vertices() <= 8 && a.dim().unwrap() <= 4);
    }

    #[test]
    fn non_simplex_sampler() {
        for case in 0..50 {
            assert!(!random_non_simplex(&mut case_rng(1, case), 5, 3).is_simplex());
        }
    }
}
