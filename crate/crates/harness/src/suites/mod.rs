//! Case functions for every registered suite.

use rand::seq::SliceRandom;
use rand::Rng;

use nhdual_core::alexander::{dual, dual_brute_force, dual_over, formula_a, relative_dual};
use nhdual_core::collapse::{collapse_step, expansion_check, free_faces, is_collapsible, CollapseSequence, CollapseStep, SearchBudget};
use nhdual_core::generators::{reference, shelled_ball};
use nhdual_core::homology::{betti, cohomology, HomologyGroup};
use nhdual_core::{GroundSet, Simplex, SimplicialComplex, TriState, Vertex};

use crate::sampler::{block, case_rng, random_complex, random_non_simplex, random_subset};
use crate::{enumerate_small, CaseResult, HarnessError, Outcome};

mod topology;

pub(crate) use topology::{d_plus_2, d_plus_2_corpus};

pub(crate) type CaseFn = fn(u64, usize) -> CaseResult;

pub(crate) const COLLAPSE_BUDGET: usize = 1_000_000;
pub(crate) const CLASSIFY_BUDGET: usize = 200_000;

pub(crate) fn random_case(id: &str) -> Option<CaseFn> {
    Some(match id {
        "formula_a" => formula_a_case,
        "involution" => involution,
        "link_deletion" => link_deletion,
        "link_trick" => link_trick,
        "ball_dual" => topology::ball_dual,
        "sphere_dual" => topology::sphere_dual,
        "double_dual_class" => topology::double_dual_class,
        "collapse_duality" => collapse_duality,
        "alexander_homology" => alexander_homology,
        "suspension_lemma" => suspension_lemma,
        "spine_dims" => topology::spine_dims,
        "sphere_deletion" => topology::sphere_deletion,
        "homogeneous_top" => topology::homogeneous_top,
        _ => return None,
    })
}

pub(crate) fn compare<T: PartialEq + std::fmt::Debug>(fingerprint: impl FnOnce() -> String, expected: T, observed: T) -> Outcome {
    if expected == observed {
        Outcome::Pass
    } else {
        Outcome::Fail {
            fingerprint: fingerprint(),
            expected: format!("{expected:?}"),
            observed: format!("{observed:?}"),
        }
    }
}

pub(crate) fn error_outcome(fingerprint: String, err: impl std::fmt::Display) -> Outcome {
    Outcome::Fail {
        fingerprint,
        expected: "no error".into(),
        observed: err.to_string(),
    }
}

/// Runs a fallible case body, turning errors into failures.
pub(crate) fn guarded(fingerprint: impl Fn() -> String, body: impl FnOnce() -> nhdual_core::Result<CaseResult>) -> CaseResult {
    body().unwrap_or_else(|e| error_outcome(fingerprint(), e).into())
}

fn formula_a_case(seed: u64, case: usize) -> CaseResult {
    let mut rng = case_rng(seed, case);
    let k = random_complex(&mut rng, 8, 4);
    let tau = block(20, rng.gen_range(1..=3));
    let fp = || format!("K = {}; tau = {tau}", k.fingerprint());
    guarded(fp, || {
        let by_complements = relative_dual(&k, tau)?;
        let by_joins = formula_a(&k, tau)?;
        let by_subsets = dual_brute_force(&k, GroundSet::new(k.vertex_set().union(tau)));
        if by_complements != by_subsets {
            return Ok(compare(fp, by_subsets.fingerprint(), by_complements.fingerprint()).into());
        }
        Ok(compare(fp, by_complements.fingerprint(), by_joins.fingerprint()).into())
    })
}

fn involution(seed: u64, case: usize) -> CaseResult {
    let mut rng = case_rng(seed, case);
    let k = random_complex(&mut rng, 8, 4);
    let extra = rng.gen_range(0..=3);
    let ground = GroundSet::new(k.vertex_set().union(block(20, extra)));
    let fp = || format!("K = {}; V = {}", k.fingerprint(), ground.simplex());
    guarded(fp, || {
        let twice = dual_over(&dual_over(&k, ground)?, ground)?;
        Ok(compare(fp, k.fingerprint(), twice.fingerprint()).into())
    })
}

pub(crate) fn vertex_count_corpus(count: usize) -> Result<Vec<SimplicialComplex>, HarnessError> {
    let mut corpus: Vec<SimplicialComplex> = enumerate_small(6)?.into_iter().filter(|k| !k.is_simplex()).collect();
    if count > 0 {
        corpus.truncate(count);
    }
    Ok(corpus)
}

/// The three equivalent conditions `|V_K| = d + 2`, `V_{K*} ≠ V_K` and
/// `K ≠ K**` for a non-simplex `K`.
pub(crate) fn vertex_count(_case: usize, k: &SimplicialComplex) -> CaseResult {
    let fp = || k.fingerprint();
    guarded(fp, || {
        let d = k.dim().expect("enumerated complexes are not void");
        let few = k.num_vertices() as i32 == d + 2;
        let kd = dual(k)?;
        let shrinks = kd.vertex_set() != k.vertex_set();
        let moves = dual(&kd)? != *k;
        let outcome = compare(fp, (few, few), (shrinks, moves));
        let result = CaseResult::from(outcome);
        Ok(if few { result.with("d_plus_2_vertices") } else { result })
    })
}

fn link_deletion(seed: u64, case: usize) -> CaseResult {
    let mut rng = case_rng(seed, case);
    let k = random_non_simplex(&mut rng, 7, 4);
    let verts: Vec<Vertex> = k.vertices().collect();
    let v = *verts.choose(&mut rng).expect("nonempty");
    let fp = || format!("K = {}; v = {}", k.fingerprint(), v.0);
    guarded(fp, || {
        let kd = dual(&k)?;
        let pt = Simplex::vertex(v);
        // (1) lk(v, K*) = (K − v)* over V_K − v; a non-face has void link.
        let lhs = if kd.contains(pt) { kd.link(pt)? } else { SimplicialComplex::void() };
        let rhs = dual_over(&k.deletion(v)?, GroundSet::new(k.vertex_set().without(v)))?;
        if lhs != rhs {
            return Ok(compare(fp, format!("(1) {}", rhs.fingerprint()), format!("(1) {}", lhs.fingerprint())).into());
        }
        // (2) lk(v, K) = (K* − v)^τ with τ = Δ(V_{K−v} − V_{K*−v}).
        let kd_minus = if kd.contains(pt) { kd.deletion(v)? } else { kd.clone() };
        let tau = k.deletion(v)?.vertex_set().difference(kd_minus.vertex_set());
        let rebuilt = relative_dual(&kd_minus, tau)?;
        let link = k.link(pt)?;
        let result = CaseResult::from(compare(fp, format!("(2) {}", link.fingerprint()), format!("(2) {}", rebuilt.fingerprint())));
        Ok(if kd.contains(pt) { result } else { result.with("v_outside_dual") })
    })
}

/// `K* = lk(u, K)^τ` for `|V_K| = d + 2`, `u ∉ V_{K*}` and
/// `τ = Δ(V_K − V_{st(u, K)})`.
fn link_trick(seed: u64, case: usize) -> CaseResult {
    let mut rng = case_rng(seed, case);
    let d = rng.gen_range(0..=4usize);
    let base = block(0, d + 1);
    let apex = Vertex((d + 1) as u8);
    let mut gens = vec![base];
    for _ in 0..rng.gen_range(1..=3) {
        let size = rng.gen_range(0..=d);
        gens.push(random_subset(&mut rng, base, size).with(apex));
    }
    let k = SimplicialComplex::from_facets(gens);
    let fp = || k.fingerprint();
    guarded(fp, || {
        let kd = dual(&k)?;
        let outside: Vec<Vertex> = k.vertex_set().difference(kd.vertex_set()).vertices().collect();
        let u = *outside.choose(&mut rng).expect("the apex is never a vertex of the dual");
        let link = k.link(Simplex::vertex(u))?;
        let star = k.star(Simplex::vertex(u))?;
        let tau = k.vertex_set().difference(star.vertex_set());
        let rebuilt = relative_dual(&link, tau)?;
        Ok(compare(|| format!("K = {}; u = {}", k.fingerprint(), u.0), kd.fingerprint(), rebuilt.fingerprint()).into())
    })
}

fn collapse_duality(seed: u64, case: usize) -> CaseResult {
    let mut rng = case_rng(seed, case);
    for _ in 0..100 {
        let k = if rng.gen_bool(0.5) {
            random_non_simplex(&mut rng, 7, 3)
        } else {
            match shelled_ball(rng.gen_range(1..=3), rng.gen_range(2..=5), rng.gen()) {
                Ok(b) if !b.is_simplex() => b,
                _ => continue,
            }
        };
        let mut l = k.clone();
        for _ in 0..rng.gen_range(1..=6) {
            let Some(&(free_face, cofacet)) = free_faces(&l).choose(&mut rng) else { break };
            l = collapse_step(&l, CollapseStep { free_face, cofacet }).expect("free pairs collapse");
        }
        if l == k {
            continue;
        }
        return check_expansion(&k, &l);
    }
    Outcome::Unknown("no collapsible pair found".into()).into()
}

fn check_expansion(k: &SimplicialComplex, l: &SimplicialComplex) -> CaseResult {
    let fp = || format!("K = {}; L = {}", k.fingerprint(), l.fingerprint());
    guarded(fp, || {
        let tau = k.vertex_set().difference(l.vertex_set());
        let kd = dual(k)?;
        let lt = relative_dual(l, tau)?;
        Ok(match expansion_check(&kd, &lt, SearchBudget::with_nodes(COLLAPSE_BUDGET))? {
            TriState::Yes(expansions) => {
                // Undo the expansions as collapses from L^τ back to K*.
                let seq = CollapseSequence {
                    start: lt.clone(),
                    steps: expansions.into_iter().rev().collect(),
                    end: kd.clone(),
                    subdivided: false,
                };
                CaseResult::from(compare(fp, true, seq.verify()))
            }
            TriState::No(o) => CaseResult::from(Outcome::Fail {
                fingerprint: fp(),
                expected: "K* expands to L^tau".into(),
                observed: format!("{o:?}"),
            }),
            TriState::Unknown(why) => CaseResult::from(Outcome::Unknown(why)),
        })
    })
}

/// `H̃_i(K) ≅ H̃^{n−i−3}(K^{*V})` in every degree, torsion included.
fn alexander_homology(seed: u64, case: usize) -> CaseResult {
    let mut rng = case_rng(seed, case);
    let (name, k, n) = match case {
        0..=2 => ("rp2_6", reference("rp2_6").expect("registered"), [9, 7, 8][case]),
        _ => match case % 4 {
            0 => ("rp2_6", reference("rp2_6").expect("registered"), rng.gen_range(7..=9)),
            1 => ("torus_7", reference("torus_7").expect("registered"), rng.gen_range(8..=9)),
            2 => {
                let name = *["moebius_5", "dunce_hat_8"].choose(&mut rng).expect("nonempty");
                let k = reference(name).expect("registered");
                let n = k.num_vertices() + rng.gen_range(1..=2);
                (name, k, n)
            }
            _ => {
                let k = random_complex(&mut rng, 7, 4);
                let n = k.num_vertices() + rng.gen_range(1..=2);
                ("random", k, n)
            }
        },
    };
    let extra = n - k.num_vertices();
    let ground = GroundSet::new(k.vertex_set().union(block(40, extra)));
    let fp = || format!("{name}: K = {}; n = {n}", k.fingerprint());
    guarded(fp, || {
        let kd = dual_over(&k, ground)?;
        let h = betti(&k)?;
        let co = cohomology(&kd)?;
        let n = n as i32;
        let torsion = h.integral.iter().any(|g| !g.torsion.is_empty());
        for i in -1..=n {
            let j = n - i - 3;
            let dual_group = if j < -1 {
                HomologyGroup::default()
            } else {
                co.get((j + 1) as usize).cloned().unwrap_or_default()
            };
            if h.integral_at(i) != dual_group {
                return Ok(compare(
                    fp,
                    format!("H_{i}(K) = {}", h.integral_at(i)),
                    format!("H^{j}(K*) = {dual_group}"),
                )
                .into());
            }
        }
        let result = CaseResult::from(Outcome::Pass);
        Ok(if torsion { result.with("torsion") } else { result })
    })
}

/// `K = A + B` with `A`, `B` collapsible has the homology of `Σ(A ∩ B)`.
fn suspension_lemma(seed: u64, case: usize) -> CaseResult {
    let mut rng = case_rng(seed, case);
    let a = shelled_ball(rng.gen_range(1..=3), rng.gen_range(1..=4), rng.gen());
    let b = shelled_ball(rng.gen_range(1..=3), rng.gen_range(1..=4), rng.gen());
    let (Ok(a), Ok(b)) = (a, b) else {
        return Outcome::Unknown("ball generation failed".into()).into();
    };
    let shift = rng.gen_range(0..=a.num_vertices()) as u8;
    let b = b.relabel(|v| Vertex(v.0 + shift));
    let k = a.union(&b);
    let fp = || format!("A = {}; B = {}", a.fingerprint(), b.fingerprint());
    guarded(fp, || {
        let budget = SearchBudget::with_nodes(COLLAPSE_BUDGET);
        if !is_collapsible(&a, budget)?.is_yes() || !is_collapsible(&b, budget)?.is_yes() {
            return Ok(Outcome::Unknown("summands not certified collapsible".into()).into());
        }
        let expected = betti(&a.intersection(&b))?.shifted_up();
        let observed = betti(&k)?;
        Ok(if expected.same_groups(&observed) {
            Outcome::Pass.into()
        } else {
            compare(fp, format!("{expected:?}"), format!("{observed:?}")).into()
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_cases_pass() {
        for case in 0..30 {
            for f in [formula_a_case, involution, link_deletion, link_trick, alexander_homology] {
                let r = f(5, case);
                assert_eq!(r.outcome, Outcome::Pass, "case {case}");
            }
        }
    }

    #[test]
    fn rp2_torsion_matches_in_nine_vertices() {
        let r = alexander_homology(7, 0);
        assert_eq!(r.outcome, Outcome::Pass);
        assert!(r.tallies.contains(&"torsion"));
    }
}
