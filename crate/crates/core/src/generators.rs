//! Seeded constructions of balls, spheres, NH-balls and NH-spheres, plus a
//! registry of small reference triangulations.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::alexander::double_dual;
use crate::document::parse_document;
use crate::simplex::fresh_vertices;
use crate::{Error, GroundSet, Result, Simplex, SimplicialComplex, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StandardKind {
    Simplex,
    BoundarySphere,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SourceKind {
    Ball,
    Sphere,
}

/// `Δ^d` on vertices `0..=d`, or the `d`-sphere `∂Δ^{d+1}`.
/// `Δ^{-1}` and the (−1)-sphere are both `{∅}`.
pub fn standard(kind: StandardKind, d: i32) -> Result<SimplicialComplex> {
    if d < -1 {
        return Err(Error::InvalidArgument(format!("dimension {d} is below -1")));
    }
    Ok(match kind {
        StandardKind::Simplex => SimplicialComplex::simplex(Simplex::range((d + 1) as usize)),
        StandardKind::BoundarySphere => SimplicialComplex::boundary_of(Simplex::range((d + 2) as usize)),
    })
}

/// A shelling order of a `d`-ball: every facet after the first meets the
/// union of its predecessors in a proper, nonempty union of its own
/// ridges, each of which lay on the boundary.
///
/// New vertices take the next unused index. `max_vertices` bounds the
/// total number of vertices.
pub fn shelling(d: usize, n_facets: usize, max_vertices: Option<usize>, seed: u64) -> Result<Vec<Simplex>> {
    if !(1..=3).contains(&d) || n_facets == 0 {
        return Err(Error::InvalidArgument(format!(
            "shelled balls need 1 <= d <= 3 and at least one facet, got d = {d}, {n_facets} facets"
        )));
    }
    if max_vertices.is_some_and(|m| m < d + 1) {
        return Err(Error::InvalidArgument("vertex limit below d + 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order = vec![Simplex::range(d + 1)];
    let mut complex = SimplicialComplex::simplex(order[0]);
    let mut n_vertices = d + 1;
    let mut attempts = 0usize;
    while order.len() < n_facets {
        attempts += 1;
        if attempts > 500 * n_facets {
            return Err(Error::Generation(format!(
                "no attachable facet found after {} attempts",
                attempts - 1
            )));
        }
        let degrees = complex.ridge_degrees();
        let boundary: Vec<Simplex> = degrees.iter().filter(|(_, &c)| c == 1).map(|(r, _)| *r).collect();
        let ridge = *boundary.choose(&mut rng).expect("a ball has boundary ridges");
        let may_grow = max_vertices.is_none_or(|m| n_vertices < m);
        let existing: Vec<Vertex> = (0..n_vertices as u8).map(Vertex).filter(|v| !ridge.contains(*v)).collect();
        let v = if may_grow && (existing.is_empty() || rng.gen_bool(0.5)) {
            Vertex(n_vertices as u8)
        } else if let Some(v) = existing.choose(&mut rng) {
            *v
        } else {
            continue;
        };
        let facet = ridge.with(v);
        if attachable(&complex, facet, d) {
            if v.index() == n_vertices {
                n_vertices += 1;
            }
            order.push(facet);
            complex = SimplicialComplex::from_facets(order.iter().copied());
        }
    }
    Ok(order)
}

/// Whether `facet` meets `k` in a proper nonempty union of its ridges, all
/// of them boundary ridges of `k`.
fn attachable(k: &SimplicialComplex, facet: Simplex, d: usize) -> bool {
    if k.contains(facet) {
        return false;
    }
    let degrees = k.ridge_degrees();
    let present: Vec<Simplex> = facet.facets().filter(|r| k.contains(*r)).collect();
    if present.is_empty() || present.len() > d || present.iter().any(|r| degrees.get(r) != Some(&1)) {
        return false;
    }
    SimplicialComplex::simplex(facet).intersection(k) == SimplicialComplex::from_facets(present)
}

/// Re-checks every step of a shelling order.
pub fn verify_shelling(order: &[Simplex]) -> bool {
    let Some(first) = order.first() else { return false };
    let d = first.len().saturating_sub(1);
    if d == 0 {
        return order.len() == 1;
    }
    let mut k = SimplicialComplex::simplex(*first);
    for &f in &order[1..] {
        if f.len() != d + 1 || !attachable(&k, f, d) {
            return false;
        }
        k = k.union(&SimplicialComplex::simplex(f));
    }
    true
}

/// A random combinatorial `d`-ball with `n_facets` facets.
pub fn shelled_ball(d: usize, n_facets: usize, seed: u64) -> Result<SimplicialComplex> {
    shelled_ball_with_limit(d, n_facets, None, seed)
}

pub fn shelled_ball_with_limit(
    d: usize,
    n_facets: usize,
    max_vertices: Option<usize>,
    seed: u64,
) -> Result<SimplicialComplex> {
    Ok(SimplicialComplex::from_facets(shelling(d, n_facets, max_vertices, seed)?))
}

/// The boundary of a shelled `(d+1)`-ball, a combinatorial `d`-sphere.
pub fn shelled_sphere(d: usize, n_facets: usize, seed: u64) -> Result<SimplicialComplex> {
    let ball = shelled_ball(d + 1, n_facets, seed)?;
    Ok(SimplicialComplex::from_facets(
        ball.ridge_degrees().into_iter().filter(|&(_, c)| c == 1).map(|(r, _)| r),
    ))
}

/// Stellar subdivision of `σ`: its open star is replaced by the cone from a
/// fresh vertex over `∂σ ∗ lk(σ, K)`.
pub fn stellar_subdivide(k: &SimplicialComplex, sigma: Simplex) -> Result<SimplicialComplex> {
    if !k.contains(sigma) {
        return Err(Error::NotAFace(sigma));
    }
    if sigma.len() < 2 {
        return Err(Error::InvalidArgument(format!("{sigma} has dimension below 1")));
    }
    let apex = fresh_vertices(k.vertex_set(), 1)?;
    let link = k.link_unchecked(sigma);
    let cone = SimplicialComplex::simplex(apex)
        .join(&SimplicialComplex::boundary_of(sigma))?
        .join(&link)?;
    Ok(k.remove_open_stars(&[sigma]).union(&cone))
}

/// `∂Δ^{d+1}` after `steps` stellar subdivisions of random faces.
pub fn stellar_sphere(d: usize, steps: usize, seed: u64) -> Result<SimplicialComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut k = standard(StandardKind::BoundarySphere, d as i32)?;
    if d == 0 {
        return Ok(k);
    }
    for _ in 0..steps {
        let faces: Vec<Simplex> = k.all_faces().into_iter().filter(|s| s.len() >= 2).collect();
        let sigma = *faces.choose(&mut rng).expect("spheres of dimension >= 1 have edges");
        k = stellar_subdivide(&k, sigma)?;
    }
    Ok(k)
}

/// `∂η ∗ Δ(V) + η ∗ K`.
pub fn glue_theorem36(k: &SimplicialComplex, eta: Simplex, ground: GroundSet) -> Result<SimplicialComplex> {
    if eta.is_empty() {
        return Err(Error::EmptySimplex);
    }
    let v = ground.simplex();
    if !k.vertex_set().is_face_of(v) {
        return Err(Error::OutsideGround {
            simplex: k.vertex_set(),
            ground: v,
        });
    }
    let overlap = eta.intersection(v);
    if !overlap.is_empty() {
        return Err(Error::Overlap(overlap));
    }
    let outer = SimplicialComplex::boundary_of(eta).join(&SimplicialComplex::simplex(v))?;
    let inner = SimplicialComplex::simplex(eta).join(k)?;
    Ok(outer.union(&inner))
}

/// A double dual together with the data it was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleDualSample {
    pub complex: SimplicialComplex,
    pub source: SimplicialComplex,
    pub tau: Simplex,
    pub sigma: Simplex,
}

/// `(K^τ)^σ` with τ and σ fresh simplices of the given dimensions
/// (−1 for ∅).
pub fn double_dual_sample(k: &SimplicialComplex, tau_dim: i32, sigma_dim: i32) -> Result<DoubleDualSample> {
    if tau_dim < -1 || sigma_dim < -1 {
        return Err(Error::InvalidArgument("simplex dimensions start at -1".into()));
    }
    let tau = fresh_vertices(k.vertex_set(), (tau_dim + 1) as usize)?;
    let sigma = fresh_vertices(k.vertex_set().union(tau), (sigma_dim + 1) as usize)?;
    let complex = double_dual(k, tau, sigma)?;
    if complex.is_void() {
        return Err(Error::Generation("the double dual is void".into()));
    }
    Ok(DoubleDualSample {
        complex,
        source: k.clone(),
        tau,
        sigma,
    })
}

/// A seeded ball or sphere of dimension `d`: shelled in low dimension,
/// standard otherwise.
pub fn random_source(kind: SourceKind, d: usize, seed: u64) -> Result<SimplicialComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let facets = rng.gen_range(1..=4);
    let inner = rng.gen();
    match kind {
        SourceKind::Ball if (1..=3).contains(&d) => shelled_ball(d, facets, inner),
        SourceKind::Ball => standard(StandardKind::Simplex, d as i32),
        SourceKind::Sphere if d <= 2 => shelled_sphere(d, facets, inner),
        SourceKind::Sphere => standard(StandardKind::BoundarySphere, d as i32),
    }
}

/// Double dual of a seeded ball or sphere.
pub fn nh_double_dual(kind: SourceKind, d: usize, tau_dim: i32, sigma_dim: i32, seed: u64) -> Result<DoubleDualSample> {
    double_dual_sample(&random_source(kind, d, seed)?, tau_dim, sigma_dim)
}

const REFERENCES: &[(&str, &str)] = &[
    ("rp2_6", include_str!("../data/rp2_6.json")),
    ("moebius_5", include_str!("../data/moebius_5.json")),
    ("torus_7", include_str!("../data/torus_7.json")),
    ("dunce_hat_8", include_str!("../data/dunce_hat_8.json")),
];

/// Names accepted by [`reference`], besides `boundary_sphere_<d>`.
pub fn reference_names() -> Vec<&'static str> {
    REFERENCES.iter().map(|(n, _)| *n).collect()
}

/// A named reference triangulation.
pub fn reference(name: &str) -> Result<SimplicialComplex> {
    if let Some(d) = name.strip_prefix("boundary_sphere_").and_then(|s| s.parse::<i32>().ok()) {
        return standard(StandardKind::BoundarySphere, d);
    }
    let text = REFERENCES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::UnknownReference(name.to_string()))?;
    Ok(parse_document(text)?.complex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collapse::{free_faces, is_collapsible, SearchBudget};
    use crate::complex::{letter_simplex as sx, letters as cx};
    use crate::homology::{betti, HomologyGroup};
    use crate::recognition::{classify_ball_sphere, classify_nh, is_combinatorial_manifold, Kind};

    fn budget() -> SearchBudget {
        SearchBudget::with_nodes(200_000)
    }

    #[test]
    fn standard_examples() {
        assert_eq!(standard(StandardKind::Simplex, 2).unwrap(), cx("abc"));
        assert_eq!(standard(StandardKind::BoundarySphere, -1).unwrap(), SimplicialComplex::empty_face());
        assert_eq!(standard(StandardKind::BoundarySphere, 1).unwrap(), cx("ab bc ac"));
        assert_eq!(standard(StandardKind::BoundarySphere, 2).unwrap().facets().len(), 4);
    }

    #[test]
    fn shelled_ball_examples() {
        let path = shelled_ball(1, 2, 5).unwrap();
        assert_eq!(path.facets().len(), 2);
        assert_eq!(path.num_vertices(), 3);
        for seed in 0..20 {
            let disc = shelled_ball(2, 3, seed).unwrap();
            assert!(is_combinatorial_manifold(&disc, budget()).unwrap().is_yes());
            assert!(is_collapsible(&disc, budget()).unwrap().is_yes());
            let solid = shelled_ball(3, 4, seed).unwrap();
            assert!(classify_ball_sphere(&solid, budget()).unwrap().ball.is_yes());
            assert!(verify_shelling(&shelling(3, 6, Some(8), seed).unwrap()));
        }
    }

    #[test]
    fn shelling_respects_vertex_limit_and_seed() {
        let a = shelled_ball_with_limit(3, 8, Some(7), 11).unwrap();
        assert!(a.num_vertices() <= 7);
        assert_eq!(a, shelled_ball_with_limit(3, 8, Some(7), 11).unwrap());
        assert!(shelled_ball(4, 2, 0).is_err());
    }

    #[test]
    fn stellar_examples() {
        let w = fresh_vertices(Simplex::EMPTY, 1).unwrap();
        let aw = sx("a").union(w);
        let bw = sx("b").union(w);
        assert_eq!(
            stellar_subdivide(&cx("ab"), sx("ab")).unwrap(),
            SimplicialComplex::from_facets([aw, bw])
        );
        let square = stellar_subdivide(&cx("ab bc ac"), sx("ab")).unwrap();
        assert_eq!(square.facets().len(), 4);
        assert_eq!(betti(&square).unwrap(), betti(&cx("ab bc ac")).unwrap());
        let cone = stellar_subdivide(&cx("abc"), sx("abc")).unwrap();
        assert_eq!(cone, SimplicialComplex::boundary_of(sx("abc")).cone(w).unwrap());
        assert!(stellar_subdivide(&cx("ab"), sx("c")).is_err());
    }

    #[test]
    fn stellar_spheres_stay_spheres() {
        for seed in 0..5 {
            let s = stellar_sphere(2, 4, seed).unwrap();
            assert_eq!(betti(&s).unwrap().sphere_dim(), Some(2));
            assert!(classify_ball_sphere(&s, budget()).unwrap().sphere.is_yes());
        }
    }

    #[test]
    fn glue_examples() {
        let g = GroundSet::new(sx("abct"));
        assert_eq!(
            glue_theorem36(&cx("ab bc ac"), sx("s"), g).unwrap(),
            cx("abct sab sbc sac")
        );
        assert_eq!(glue_theorem36(&cx("a"), sx("s"), GroundSet::new(sx("a"))).unwrap(), cx("as"));
        let l = glue_theorem36(&cx("a b"), sx("st"), GroundSet::new(sx("ab"))).unwrap();
        assert_eq!(l, cx("sab tab sta stb"));
        assert!(glue_theorem36(&cx("ab"), sx("a"), GroundSet::new(sx("ab"))).is_err());
    }

    #[test]
    fn double_dual_examples() {
        let s = double_dual_sample(&cx("ab bc ac"), 0, 0).unwrap();
        let c = classify_nh(&s.complex, budget()).unwrap();
        assert_eq!((c.kind, c.homotopy_dim), (Kind::NHSphere, Some(2)));
        let b = double_dual_sample(&cx("ab"), 1, -1).unwrap();
        assert_eq!(b.complex, cx("ab"));
        for seed in 0..5 {
            let b = nh_double_dual(SourceKind::Ball, 1, 0, 0, seed).unwrap();
            assert!(classify_nh(&b.complex, budget()).unwrap().kind.is_ball());
        }
    }

    #[test]
    fn reference_registry() {
        let rp2 = reference("rp2_6").unwrap();
        assert_eq!((rp2.facets().len(), rp2.num_vertices()), (10, 6));
        assert_eq!(
            betti(&rp2).unwrap().integral[2],
            HomologyGroup {
                rank: 0,
                torsion: vec![2]
            }
        );
        assert_eq!(reference("boundary_sphere_4").unwrap(), SimplicialComplex::boundary_of(Simplex::range(6)));
        assert!(matches!(reference("klein"), Err(Error::UnknownReference(_))));
        let torus = reference("torus_7").unwrap();
        assert_eq!(betti(&torus).unwrap().mod2, vec![0, 0, 2, 1]);
        let moebius = reference("moebius_5").unwrap();
        assert_eq!(betti(&moebius).unwrap().mod2, vec![0, 0, 1, 0]);
    }

    #[test]
    fn dunce_hat_is_acyclic_without_free_faces() {
        let hat = reference("dunce_hat_8").unwrap();
        assert_eq!((hat.facets().len(), hat.num_vertices()), (17, 8));
        assert!(betti(&hat).unwrap().is_acyclic());
        assert!(free_faces(&hat).is_empty());
        assert!(is_collapsible(&hat, budget()).unwrap().is_no());
    }
}
