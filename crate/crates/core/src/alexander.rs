//! Alexander duals relative to arbitrary ground sets.
//!
//! For a ground set `V ⊇ V_K` the dual is `K^{*V} = {σ ⊆ V : V − σ ∉ K}`.
//! Its facets are the complements of the minimal non-faces of `K` inside
//! `Δ(V)`, which is how they are computed here.

use crate::{Error, GroundSet, Result, Simplex, SimplicialComplex};

/// `Δ(V − V_σ)`.
pub fn complement(sigma: Simplex, ground: GroundSet) -> Result<Simplex> {
    if !sigma.is_face_of(ground.simplex()) {
        return Err(Error::OutsideGround {
            simplex: sigma,
            ground: ground.simplex(),
        });
    }
    Ok(ground.simplex().difference(sigma))
}

/// Minimal non-faces of `k` inside `Δ(ground)`.
///
/// A minimal non-face is either ∅ (only for the void complex), a vertex of
/// the ground missing from `k`, or `F + v` for a face `F` whose every
/// codimension-one face lies in `k`.
pub fn minimal_non_faces(k: &SimplicialComplex, ground: Simplex) -> Vec<Simplex> {
    if k.is_void() {
        return vec![Simplex::EMPTY];
    }
    let mut out: Vec<Simplex> = ground.difference(k.vertex_set()).vertices().map(Simplex::vertex).collect();
    let faces = k.all_faces();
    for &f in &faces {
        if f.is_empty() {
            continue;
        }
        // Extend only by vertices above max(F) so each candidate is seen once.
        let top = f.max_vertex().map(|v| v.0).unwrap_or(0);
        for v in ground.difference(f).vertices() {
            if v.0 < top {
                continue;
            }
            let cand = f.with(v);
            if faces.contains(&cand) {
                continue;
            }
            if cand.facets().all(|r| faces.contains(&r)) {
                out.push(cand);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Alexander dual of `k` over an explicit ground set.
///
/// Defined for every complex, including the void one:
/// the dual of the void complex is `Δ(V)`, the dual of `Δ(V)` is void, and
/// the dual of `{∅}` is `∂Δ(V)` (void when `V = ∅`).
pub fn dual_over(k: &SimplicialComplex, ground: GroundSet) -> Result<SimplicialComplex> {
    let v = ground.simplex();
    let vk = k.vertex_set();
    if !vk.is_face_of(v) {
        return Err(Error::OutsideGround {
            simplex: vk,
            ground: v,
        });
    }
    // (Δ(V))^* = ∅ and (∂Δ(V))^* = {∅}; the general rule agrees.
    if k.is_simplex() && k.facets()[0] == v {
        return Ok(SimplicialComplex::void());
    }
    if !v.is_empty() && *k == SimplicialComplex::boundary_of(v) {
        return Ok(SimplicialComplex::empty_face());
    }
    Ok(SimplicialComplex::from_facets(
        minimal_non_faces(k, v).into_iter().map(|n| v.difference(n)),
    ))
}

/// `K^*`, the dual over `V_K`. `(Δ^d)^* = ∅`, `(∂Δ^d)^* = {∅}` and
/// `{∅}^* = ∅`.
pub fn dual(k: &SimplicialComplex) -> Result<SimplicialComplex> {
    if k.is_void() {
        return Err(Error::VoidComplex);
    }
    dual_over(k, GroundSet::new(k.vertex_set()))
}

/// `K^τ`, the dual over `V_K ∪ V_τ` for τ disjoint from `K`.
pub fn relative_dual(k: &SimplicialComplex, tau: Simplex) -> Result<SimplicialComplex> {
    if k.is_void() {
        return Err(Error::VoidComplex);
    }
    let overlap = tau.intersection(k.vertex_set());
    if !overlap.is_empty() {
        return Err(Error::Overlap(overlap));
    }
    dual_over(k, GroundSet::new(k.vertex_set().union(tau)))
}

/// Right-hand side of the structural formula `∂τ ∗ Δ_K + τ ∗ K^*`, built
/// from joins and a union. Requires τ ≠ ∅ disjoint from `K`.
pub fn formula_a(k: &SimplicialComplex, tau: Simplex) -> Result<SimplicialComplex> {
    if tau.is_empty() {
        return Err(Error::EmptySimplex);
    }
    let overlap = tau.intersection(k.vertex_set());
    if !overlap.is_empty() {
        return Err(Error::Overlap(overlap));
    }
    let full = SimplicialComplex::simplex(k.vertex_set());
    let outer = SimplicialComplex::boundary_of(tau).join(&full)?;
    let inner = SimplicialComplex::simplex(tau).join(&dual(k)?)?;
    Ok(outer.union(&inner))
}

/// `(K^τ)^σ`. Either simplex may be empty.
pub fn double_dual(k: &SimplicialComplex, tau: Simplex, sigma: Simplex) -> Result<SimplicialComplex> {
    let first = relative_dual(k, tau)?;
    relative_dual(&first, sigma)
}

/// Exhaustive subset test `σ ∈ K^{*V} ⇔ V − σ ∉ K`. Exponential in `|V|`;
/// kept as an independent check of [`dual_over`].
pub fn dual_brute_force(k: &SimplicialComplex, ground: GroundSet) -> SimplicialComplex {
    let v = ground.simplex();
    let members: Vec<Simplex> = v.subsets().filter(|s| !k.contains(v.difference(*s))).collect();
    SimplicialComplex::from_facets(members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{letter_simplex as sx, letters as cx};

    fn g(s: &str) -> GroundSet {
        GroundSet::new(sx(s))
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement(sx("ab"), g("abct")).unwrap(), sx("ct"));
        assert_eq!(complement(Simplex::EMPTY, g("ab")).unwrap(), sx("ab"));
        assert_eq!(complement(sx("abct"), g("abct")).unwrap(), Simplex::EMPTY);
        assert!(complement(sx("az"), g("ab")).is_err());
    }

    #[test]
    fn dual_examples() {
        assert!(dual(&cx("abc")).unwrap().is_void());
        assert_eq!(dual(&cx("ab bc ac")).unwrap(), SimplicialComplex::empty_face());
        assert_eq!(dual(&cx("ab bc")).unwrap(), cx("b"));
        assert!(dual(&SimplicialComplex::empty_face()).unwrap().is_void());
        assert_eq!(dual(&SimplicialComplex::void()), Err(Error::VoidComplex));
    }

    #[test]
    fn relative_dual_examples() {
        assert_eq!(relative_dual(&cx("ab"), sx("t")).unwrap(), cx("ab"));
        assert_eq!(relative_dual(&cx("a b"), sx("t")).unwrap(), cx("ab t"));
        assert_eq!(relative_dual(&cx("ab"), sx("st")).unwrap(), cx("sab tab"));
        assert_eq!(relative_dual(&cx("ab bc"), Simplex::EMPTY).unwrap(), cx("b"));
        assert!(matches!(relative_dual(&cx("ab"), sx("b")), Err(Error::Overlap(_))));
    }

    #[test]
    fn formula_a_examples() {
        assert_eq!(formula_a(&cx("a b"), sx("t")).unwrap(), cx("ab t"));
        assert_eq!(formula_a(&cx("ab"), sx("st")).unwrap(), cx("sab tab"));
        assert_eq!(formula_a(&cx("ab bc ac"), sx("t")).unwrap(), cx("abc t"));
        assert_eq!(formula_a(&cx("ab"), Simplex::EMPTY), Err(Error::EmptySimplex));
    }

    #[test]
    fn double_dual_examples() {
        assert_eq!(double_dual(&cx("ab"), sx("st"), Simplex::EMPTY).unwrap(), cx("ab"));
        assert_eq!(
            double_dual(&cx("ab bc ac"), sx("t"), sx("s")).unwrap(),
            cx("abct sab sbc sac")
        );
        assert!(double_dual(&cx("ab bc"), Simplex::EMPTY, Simplex::EMPTY)
            .unwrap()
            .is_void());
    }

    #[test]
    fn brute_force_agrees_on_small_cases() {
        for text in ["abc cd", "a b", "ab bc ca", "abcd", "ab c de"] {
            let k = cx(text);
            let v = g("abcdefg");
            assert_eq!(dual_over(&k, v).unwrap(), dual_brute_force(&k, v), "{text}");
        }
        let v = g("ab");
        assert_eq!(dual_over(&SimplicialComplex::void(), v).unwrap(), dual_brute_force(&SimplicialComplex::void(), v));
        assert_eq!(
            dual_over(&SimplicialComplex::empty_face(), v).unwrap(),
            dual_brute_force(&SimplicialComplex::empty_face(), v)
        );
    }

    #[test]
    fn empty_face_dual_pair_is_consistent() {
        // Over the empty ground, {∅} and the void complex are exchanged.
        let e = GroundSet::default();
        assert!(dual_over(&SimplicialComplex::empty_face(), e).unwrap().is_void());
        assert_eq!(dual_over(&SimplicialComplex::void(), e).unwrap(), SimplicialComplex::empty_face());
    }
}
