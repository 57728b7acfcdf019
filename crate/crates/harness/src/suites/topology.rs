//! Suites about balls, spheres and their duals. Every generated input is an
//! NH-ball or NH-sphere by construction; recognition certificates are
//! checked where a suite needs them.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use nhdual_core::alexander::relative_dual;
use nhdual_core::collapse::{collapse_to_dimension, is_collapsible, SearchBudget};
use nhdual_core::generators::{
    double_dual_sample, glue_theorem36, nh_double_dual, random_source, shelled_ball, shelled_ball_with_limit,
    shelled_sphere, standard, stellar_sphere, SourceKind, StandardKind,
};
use nhdual_core::homology::betti;
use nhdual_core::recognition::{
    classify_nh, is_combinatorial_manifold, is_weak_pseudomanifold, verify_decomposition, Classification, Kind,
};
use nhdual_core::{GroundSet, Simplex, SimplicialComplex, TriState, Vertex};

use super::{compare, guarded, CLASSIFY_BUDGET, COLLAPSE_BUDGET};
use crate::enumerate_small;
use crate::sampler::{block, case_rng};
use crate::{CaseResult, HarnessError, Outcome};

const ATTEMPTS: usize = 200;

fn fits(k: &SimplicialComplex, max_dim: i32, max_vertices: usize) -> bool {
    !k.is_void() && !k.is_empty_face() && k.dim().is_some_and(|d| d <= max_dim) && k.num_vertices() <= max_vertices
}

/// Moves every vertex up by `offset` so two complexes can be joined.
fn shifted(k: &SimplicialComplex, offset: u8) -> SimplicialComplex {
    k.relabel(|v| Vertex(v.0 + offset))
}

fn small_ball(rng: &mut ChaCha8Rng) -> Option<SimplicialComplex> {
    shelled_ball(rng.gen_range(1..=2), rng.gen_range(1..=3), rng.gen()).ok()
}

fn small_sphere(rng: &mut ChaCha8Rng) -> Option<SimplicialComplex> {
    if rng.gen_bool(0.5) {
        standard(StandardKind::BoundarySphere, rng.gen_range(0..=1)).ok()
    } else {
        shelled_sphere(1, rng.gen_range(1..=3), rng.gen()).ok()
    }
}

/// `∂η ∗ Δ(V) + η ∗ K` with η fresh and `V` the vertices of `K` plus
/// `extra` fresh ones.
fn glued(k: &SimplicialComplex, eta_size: usize, extra: usize) -> Option<SimplicialComplex> {
    let ground = GroundSet::new(k.vertex_set().union(block(80, extra)));
    glue_theorem36(k, block(70, eta_size), ground).ok()
}

/// An NH-ball of dimension at most `max_dim` on at most `max_vertices`
/// vertices, with the name of the construction used.
pub(crate) fn nh_ball(rng: &mut ChaCha8Rng, max_dim: i32, max_vertices: usize) -> Option<(SimplicialComplex, &'static str)> {
    for _ in 0..ATTEMPTS {
        let made = match rng.gen_range(0..3) {
            0 => nh_double_dual(
                SourceKind::Ball,
                rng.gen_range(1..=3),
                rng.gen_range(-1..=1),
                rng.gen_range(-1..=1),
                rng.gen(),
            )
            .ok()
            .map(|s| (s.complex, "double_dual")),
            1 => small_ball(rng)
                .and_then(|k| glued(&k, rng.gen_range(1..=2), rng.gen_range(0..=1)))
                .map(|k| (k, "glue")),
            _ => {
                let a = small_ball(rng)?;
                let b = if rng.gen_bool(0.5) { small_ball(rng) } else { small_sphere(rng) }?;
                a.join(&shifted(&b, 40)).ok().map(|k| (k, "join"))
            }
        };
        if let Some((k, how)) = made {
            if fits(&k, max_dim, max_vertices) {
                return Some((k, how));
            }
        }
    }
    None
}

/// An NH-sphere of dimension at most `max_dim` on at most `max_vertices`
/// vertices.
pub(crate) fn nh_sphere(rng: &mut ChaCha8Rng, max_dim: i32, max_vertices: usize) -> Option<(SimplicialComplex, &'static str)> {
    for _ in 0..ATTEMPTS {
        let made = match rng.gen_range(0..4) {
            0 => nh_double_dual(
                SourceKind::Sphere,
                rng.gen_range(0..=2),
                rng.gen_range(-1..=1),
                rng.gen_range(-1..=1),
                rng.gen(),
            )
            .ok()
            .map(|s| (s.complex, "double_dual")),
            1 => small_sphere(rng)
                .and_then(|k| glued(&k, rng.gen_range(1..=2), rng.gen_range(0..=1)))
                .map(|k| (k, "glue")),
            2 => {
                let a = small_sphere(rng)?;
                let b = small_sphere(rng)?;
                a.join(&shifted(&b, 40)).ok().map(|k| (k, "join"))
            }
            _ => stellar_sphere(rng.gen_range(1..=2), rng.gen_range(0..=3), rng.gen())
                .ok()
                .map(|k| (k, "stellar")),
        };
        if let Some((k, how)) = made {
            if fits(&k, max_dim, max_vertices) {
                return Some((k, how));
            }
        }
    }
    None
}

/// A fresh τ of `0..=2` vertices; never empty when `k` is a simplex.
fn random_tau(rng: &mut ChaCha8Rng, k: &SimplicialComplex) -> Simplex {
    let least = usize::from(k.is_simplex());
    block(60, rng.gen_range(least..=2))
}

fn generation_failed() -> CaseResult {
    Outcome::Unknown("generator produced no admissible complex".into()).into()
}

/// Even cases dualize classical shelled balls, odd cases generated
/// NH-balls. The dual must be acyclic; collapse certificates are tallied.
pub(crate) fn ball_dual(seed: u64, case: usize) -> CaseResult {
    let mut rng = case_rng(seed, case);
    let (ball, class) = if case.is_multiple_of(2) {
        let mut found = None;
        for _ in 0..ATTEMPTS {
            let d = rng.gen_range(1..=3);
            if let Ok(b) = shelled_ball_with_limit(d, rng.gen_range(1..=6), Some(9), rng.gen()) {
                found = Some(b);
                break;
            }
        }
        match found {
            Some(b) => (b, "classical"),
            None => return generation_failed(),
        }
    } else {
        match nh_ball(&mut rng, 4, 10) {
            Some((b, _)) => (b, "nh"),
            None => return generation_failed(),
        }
    };
    let tau = random_tau(&mut rng, &ball);
    let fp = || format!("{class} B = {}; tau = {tau}", ball.fingerprint());
    guarded(fp, || {
        let dual = relative_dual(&ball, tau)?;
        let acyclic = !dual.is_void() && betti(&dual)?.is_acyclic();
        let result = CaseResult::from(compare(fp, true, acyclic)).with(class);
        if !acyclic {
            return Ok(result);
        }
        Ok(match is_collapsible(&dual, SearchBudget::with_nodes(COLLAPSE_BUDGET))? {
            TriState::Yes(seq) if seq.verify() => result.with(certified(class)),
            TriState::Yes(_) => compare(fp, "replayable certificate", "certificate fails to replay").into(),
            TriState::No(_) => result.with(not_collapsible(class)),
            TriState::Unknown(_) => result,
        })
    })
}

fn certified(class: &str) -> &'static str {
    if class == "classical" {
        "classical_certified"
    } else {
        "nh_certified"
    }
}

fn not_collapsible(class: &str) -> &'static str {
    if class == "classical" {
        "classical_not_collapsible"
    } else {
        "nh_not_collapsible"
    }
}

/// Cases 0..=5 dualize `∂Δ^{d+1}` for `d = 0..=5`. Afterwards every third
/// case dualizes a stellar subdivision of a boundary sphere and the others
/// generated NH-spheres. The dual must have a sphere homology profile.
pub(crate) fn sphere_dual(seed: u64, case: usize) -> CaseResult {
    let mut rng = case_rng(seed, case);
    let generated = if case <= 5 {
        standard(StandardKind::BoundarySphere, case as i32).ok().map(|s| (s, "boundary"))
    } else if (case - 6).is_multiple_of(3) {
        stellar_sphere(rng.gen_range(1..=3), rng.gen_range(1..=5), rng.gen())
            .ok()
            .map(|s| (s, "stellar"))
    } else {
        nh_sphere(&mut rng, 4, 10).map(|(s, _)| (s, "nh"))
    };
    let Some((sphere, class)) = generated else {
        return generation_failed();
    };
    let tau = block(60, rng.gen_range(0..=2));
    let fp = || format!("{class} S = {}; tau = {tau}", sphere.fingerprint());
    guarded(fp, || {
        let dual = relative_dual(&sphere, tau)?;
        let profile = if dual.is_void() { None } else { betti(&dual)?.sphere_dim() };
        Ok(CaseResult::from(compare(fp, true, profile.is_some())).with(class))
    })
}

fn check_classification(m: &SimplicialComplex, c: &Classification, want_ball: bool, fp: impl Fn() -> String) -> Outcome {
    if c.kind == Kind::Unknown {
        return Outcome::Unknown(format!("{:?}", c.witness));
    }
    let (kind_ok, witness_ok) = if want_ball {
        (c.kind.is_ball(), c.collapse().is_some_and(|seq| seq.verify() && seq.start == *m))
    } else {
        (c.kind.is_sphere(), c.decomposition().is_some_and(|dec| verify_decomposition(m, dec)))
    };
    let want = if want_ball { "NH-ball" } else { "NH-sphere" };
    if !kind_ok {
        return compare(fp, want.to_string(), format!("{:?}", c.kind));
    }
    compare(fp, format!("{want} with a valid witness"), format!("{want} {}", if witness_ok { "with a valid witness" } else { "with an invalid witness" }))
}

/// Double duals of certified balls (even cases) and spheres (odd cases)
/// classify the same way as their sources.
pub(crate) fn double_dual_class(seed: u64, case: usize) -> CaseResult {
    let mut rng = case_rng(seed, case);
    let want_ball = case.is_multiple_of(2);
    let (kind, d) = if want_ball {
        (SourceKind::Ball, rng.gen_range(1..=3))
    } else {
        (SourceKind::Sphere, rng.gen_range(0..=2))
    };
    let mut sample = None;
    for _ in 0..ATTEMPTS {
        let Ok(source) = random_source(kind, d, rng.gen()) else { continue };
        if let Ok(s) = double_dual_sample(&source, rng.gen_range(-1..=1), rng.gen_range(-1..=1)) {
            if s.complex.num_vertices() <= 12 {
                sample = Some(s);
                break;
            }
        }
    }
    let Some(sample) = sample else {
        return generation_failed();
    };
    let fp = || {
        format!(
            "source = {}; tau = {}; sigma = {}; M = {}",
            sample.source.fingerprint(),
            sample.tau,
            sample.sigma,
            sample.complex.fingerprint()
        )
    };
    guarded(fp, || {
        let budget = SearchBudget::with_nodes(CLASSIFY_BUDGET);
        let source = classify_nh(&sample.source, budget)?;
        let source_outcome = check_classification(&sample.source, &source, want_ball, fp);
        if source_outcome != Outcome::Pass {
            // An uncertified source is outside the claim.
            return Ok(match source_outcome {
                Outcome::Unknown(why) => Outcome::Unknown(format!("source: {why}")).into(),
                other => other.into(),
            });
        }
        let c = classify_nh(&sample.complex, budget)?;
        let tally = if want_ball { "ball" } else { "sphere" };
        Ok(CaseResult::from(check_classification(&sample.complex, &c, want_ball, fp)).with(tally))
    })
}

pub(crate) fn d_plus_2_corpus() -> Result<Vec<SimplicialComplex>, HarnessError> {
    Ok(enumerate_small(5)?
        .into_iter()
        .filter(|k| k.dim().is_some_and(|d| d >= 0 && k.num_vertices() as i32 == d + 2))
        .collect())
}

/// Enumerated complexes that are NH-manifolds must be NH-balls or
/// NH-spheres; the rest are skipped.
pub(crate) fn d_plus_2(_case: usize, m: &SimplicialComplex) -> CaseResult {
    let fp = || m.fingerprint();
    guarded(fp, || {
        let budget = SearchBudget::with_nodes(CLASSIFY_BUDGET);
        let c = classify_nh(m, budget)?;
        Ok(match c.kind {
            Kind::NotNHManifold => Outcome::Skip.into(),
            Kind::Unknown => Outcome::Unknown(format!("{:?}", c.witness)).into(),
            Kind::NHManifoldOnly => compare(fp, "NH-ball or NH-sphere".to_string(), format!("{:?}", c.kind)).into(),
            k => {
                let valid = match &c.witness {
                    nhdual_core::recognition::Witness::Collapse(seq) => seq.verify(),
                    nhdual_core::recognition::Witness::Decomposition(dec) => verify_decomposition(m, dec),
                    _ => false,
                };
                let tally = if k.is_ball() { "ball" } else { "sphere" };
                CaseResult::from(compare(fp, true, valid)).with(tally)
            }
        })
    })
}

/// An NH-ball of dimension `d` on exactly `d + 2` vertices.
fn ball_d_plus_2(rng: &mut ChaCha8Rng, d: i32) -> Option<SimplicialComplex> {
    for _ in 0..ATTEMPTS {
        let made = match rng.gen_range(0..3) {
            // Two facets sharing a ridge.
            0 if d <= 3 => shelled_ball(d as usize, 2, rng.gen()).ok(),
            1 if d >= 2 => {
                let e = rng.gen_range(1..=(d - 1).min(2)) as usize;
                shelled_ball(e, rng.gen_range(2..=4), rng.gen())
                    .ok()
                    .filter(|k| !k.is_simplex() && (k.num_vertices() as i32) < d + 2)
                    .and_then(|k| glued(&k, (d + 2) as usize - k.num_vertices(), 0))
            }
            _ => nh_double_dual(SourceKind::Ball, rng.gen_range(1..=3), rng.gen_range(-1..=1), rng.gen_range(0..=1), rng.gen())
                .ok()
                .map(|s| s.complex),
        };
        if let Some(k) = made.filter(|k| k.dim() == Some(d) && k.num_vertices() as i32 == d + 2) {
            return Some(k);
        }
    }
    None
}

/// An NH-ball of dimension `d` on exactly `d + 3` vertices.
fn ball_d_plus_3(rng: &mut ChaCha8Rng, d: i32) -> Option<SimplicialComplex> {
    let two_points = SimplicialComplex::from_facets([Simplex::vertex(Vertex(90)), Simplex::vertex(Vertex(91))]);
    let path = SimplicialComplex::from_facets([block(90, 2), block(91, 2)]);
    for _ in 0..ATTEMPTS {
        let made = match rng.gen_range(0..3) {
            0 => ball_d_plus_2(rng, d - 1).and_then(|b| b.join(&two_points).ok()),
            1 if d >= 3 => ball_d_plus_2(rng, d - 2).and_then(|b| b.join(&path).ok()),
            _ if d <= 3 => shelled_ball_with_limit(d as usize, rng.gen_range(3..=6), Some((d + 3) as usize), rng.gen()).ok(),
            _ => None,
        };
        if let Some(k) = made.filter(|k| k.dim() == Some(d) && k.num_vertices() as i32 == d + 3) {
            return Some(k);
        }
    }
    None
}

/// Even cases: NH-balls with `d + 3` vertices reach dimension `d − 2`.
/// Odd cases: NH-balls with `d + 2` vertices reach dimension `d − 3`.
pub(crate) fn spine_dims(seed: u64, case: usize) -> CaseResult {
    let mut rng = case_rng(seed, case);
    let (ball, d, target, class) = if case.is_multiple_of(2) {
        let d = rng.gen_range(2..=4);
        (ball_d_plus_3(&mut rng, d), d, d - 2, "d_plus_3")
    } else {
        let d = rng.gen_range(3..=5);
        (ball_d_plus_2(&mut rng, d), d, d - 3, "d_plus_2")
    };
    let Some(ball) = ball else {
        return generation_failed();
    };
    let fp = || format!("{class} d = {d}: B = {}", ball.fingerprint());
    guarded(fp, || {
        let c = classify_nh(&ball, SearchBudget::with_nodes(CLASSIFY_BUDGET))?;
        match check_classification(&ball, &c, true, fp) {
            Outcome::Pass => {}
            other => return Ok(other.into()),
        }
        Ok(match collapse_to_dimension(&ball, target, SearchBudget::with_nodes(COLLAPSE_BUDGET))? {
            TriState::Yes(seq) => {
                let reached = seq.verify() && seq.start == ball && seq.end.dim().is_some_and(|e| e <= target);
                CaseResult::from(compare(fp, true, reached)).with(class)
            }
            TriState::No(o) => compare(fp, format!("collapse to dimension {target}"), format!("{o:?}")).into(),
            TriState::Unknown(why) => Outcome::Unknown(why).into(),
        })
    })
}

/// `S − v` is acyclic for every vertex `v` of `L` in a decomposition
/// `S = B + L`.
pub(crate) fn sphere_deletion(seed: u64, case: usize) -> CaseResult {
    let mut rng = case_rng(seed, case);
    let Some((sphere, how)) = nh_sphere(&mut rng, 4, 9) else {
        return generation_failed();
    };
    let fp = || format!("{how} S = {}", sphere.fingerprint());
    guarded(fp, || {
        let c = classify_nh(&sphere, SearchBudget::with_nodes(CLASSIFY_BUDGET))?;
        match check_classification(&sphere, &c, false, fp) {
            Outcome::Pass => {}
            other => return Ok(other.into()),
        }
        let dec = c.decomposition().expect("checked above");
        for v in dec.l.vertices() {
            let rest = sphere.deletion(v)?;
            let acyclic = !rest.is_void() && betti(&rest)?.is_acyclic();
            if !acyclic {
                return Ok(compare(|| format!("{}; v = {}", fp(), v.0), true, false).into());
            }
        }
        Ok(CaseResult::from(Outcome::Pass).with(how))
    })
}

/// NH-spheres whose homotopy dimension equals their dimension are
/// homogeneous closed pseudomanifolds and combinatorial manifolds. Spheres
/// of lower homotopy dimension are skipped.
pub(crate) fn homogeneous_top(seed: u64, case: usize) -> CaseResult {
    let mut rng = case_rng(seed, case);
    let Some((sphere, how)) = nh_sphere(&mut rng, 3, 9) else {
        return generation_failed();
    };
    let fp = || format!("{how} S = {}", sphere.fingerprint());
    guarded(fp, || {
        let budget = SearchBudget::with_nodes(CLASSIFY_BUDGET);
        let c = classify_nh(&sphere, budget)?;
        match check_classification(&sphere, &c, false, fp) {
            Outcome::Pass => {}
            other => return Ok(other.into()),
        }
        if c.homotopy_dim != Some(c.dim) {
            return Ok(Outcome::Skip.into());
        }
        let homogeneous = sphere.is_homogeneous();
        let closed = homogeneous && is_weak_pseudomanifold(&sphere, false)?;
        let manifold = match is_combinatorial_manifold(&sphere, budget)? {
            TriState::Yes(()) => Some(true),
            TriState::No(_) => Some(false),
            TriState::Unknown(_) => None,
        };
        Ok(match manifold {
            None => Outcome::Unknown("vertex links undecided".into()).into(),
            Some(m) => CaseResult::from(compare(fp, (true, true, true), (homogeneous, closed, m))).with(how),
        })
    })
}
