//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use nhdual_core::homology::{betti, boundary_matrices, mod2_betti};
use nhdual_core::{Simplex, SimplicialComplex, Vertex};
use nhdual_harness::{run_suite, SuiteReport, SUITES};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

const SEED: u64 = 42;
const FORMULA_A_SECONDS: f64 = 10.0;
const CLASSICAL_SECONDS: f64 = 60.0;
const CERTIFICATE_RATE: f64 = 0.90;
const PROPERTY_CASES: u32 = 256;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        ok,
        detail: detail.into(),
    }
}

fn run(id: &str, count: usize) -> SuiteReport {
    run_suite(id, SEED, count).unwrap_or_else(|e| panic!("suite {id}: {e}"))
}

fn summary(r: &SuiteReport) -> String {
    format!(
        "{}: {} cases, {} passes, {} failures, {} unknowns, {:.2}s",
        r.suite_id,
        r.cases_run,
        r.passes,
        r.failures.len(),
        r.unknowns,
        r.elapsed_seconds
    )
}

fn exact(r: &SuiteReport, cases: usize) -> bool {
    r.cases_run == cases && r.passes == cases && r.is_clean()
}

fn failures_in(r: &SuiteReport, class: &str) -> usize {
    r.failures.iter().filter(|f| f.fingerprint.starts_with(class)).count()
}

fn formula_a() -> Verdict {
    let r = run("formula_a", 500);
    verdict(exact(&r, 500) && r.elapsed_seconds < FORMULA_A_SECONDS, summary(&r))
}

fn involution() -> Verdict {
    let r = run("involution", 200);
    verdict(exact(&r, 200), summary(&r))
}

fn vertex_count() -> Verdict {
    let r = run("vertex_count", 0);
    // 16352 classes on at most 6 vertices, minus the 7 simplices {∅}, Δ^0..Δ^5.
    verdict(exact(&r, 16352 - 7), format!("{}; {} with d+2 vertices", summary(&r), r.tally("d_plus_2_vertices")))
}

fn link_identities() -> Verdict {
    let a = run("link_deletion", 300);
    let b = run("link_trick", 300);
    verdict(exact(&a, 300) && exact(&b, 300), format!("{}; {}", summary(&a), summary(&b)))
}

fn classical_duals(balls: &SuiteReport, spheres: &SuiteReport) -> Verdict {
    let classical = balls.tally("classical");
    let certified = balls.tally("classical_certified");
    let rate = certified as f64 / classical.max(1) as f64;
    let ball_ok = classical == 100 && failures_in(balls, "classical") == 0;
    let sphere_ok = spheres.tally("boundary") == 6 && spheres.tally("stellar") == 50
        && failures_in(spheres, "boundary") == 0
        && failures_in(spheres, "stellar") == 0;
    let elapsed = balls.elapsed_seconds + spheres.elapsed_seconds;
    verdict(
        ball_ok && sphere_ok && rate >= CERTIFICATE_RATE && elapsed < CLASSICAL_SECONDS,
        format!(
            "{classical} balls acyclic, {certified} collapse-certified ({:.0}%); {} boundary + {} stellar spheres; {elapsed:.2}s",
            100.0 * rate,
            spheres.tally("boundary"),
            spheres.tally("stellar")
        ),
    )
}

fn nh_duals(balls: &SuiteReport, spheres: &SuiteReport) -> Verdict {
    let ok = balls.tally("nh") == 100
        && spheres.tally("nh") == 100
        && failures_in(balls, "nh") == 0
        && failures_in(spheres, "nh") == 0
        && balls.unknowns == 0
        && spheres.unknowns == 0;
    verdict(
        ok,
        format!(
            "{} NH-ball duals acyclic ({} collapse-certified), {} NH-sphere duals with sphere profile",
            balls.tally("nh") - failures_in(balls, "nh"),
            balls.tally("nh_certified"),
            spheres.tally("nh") - failures_in(spheres, "nh")
        ),
    )
}

fn double_dual_class() -> Verdict {
    let r = run("double_dual_class", 100);
    let detail = format!(
        "{}; {} balls and {} spheres classified; unknown notes: {:?}",
        summary(&r),
        r.tally("ball"),
        r.tally("sphere"),
        r.unknown_notes
    );
    verdict(r.failures.is_empty() && r.tally("ball") + r.tally("sphere") + r.unknowns == 100, detail)
}

fn d_plus_2() -> Verdict {
    let r = run("d_plus_2", 0);
    verdict(
        r.cases_run > 0 && r.is_clean(),
        format!("{}; {} NH-balls, {} NH-spheres", summary(&r), r.tally("ball"), r.tally("sphere")),
    )
}

fn collapse_duality() -> Verdict {
    let r = run("collapse_duality", 100);
    verdict(exact(&r, 100), summary(&r))
}

fn alexander_torsion() -> Verdict {
    // Cases 0, 1, 2 embed rp2_6 in ground sets of 9, 7 and 8 vertices.
    let r = run("alexander_homology", 3);
    verdict(exact(&r, 3) && r.tally("torsion") == 3, summary(&r))
}

fn spine_dims() -> Verdict {
    let r = run("spine_dims", 60);
    let detail = format!(
        "{}; {} reached d-2 from d+3 vertices, {} reached d-3 from d+2 vertices; unknown notes: {:?}",
        summary(&r),
        r.tally("d_plus_3"),
        r.tally("d_plus_2"),
        r.unknown_notes
    );
    verdict(r.failures.is_empty() && r.cases_run == 60, detail)
}

fn complex_strategy() -> impl Strategy<Value = SimplicialComplex> {
    (1..=7usize).prop_flat_map(|n| {
        prop::collection::vec(1u128..(1u128 << n), 1..7)
            .prop_map(|masks| SimplicialComplex::from_facets(masks.into_iter().map(Simplex::from_bits)))
    })
}

fn structural_invariants() -> Verdict {
    let mut runner = TestRunner::new(Config {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..Config::default()
    });
    let outcome = runner.run(&(complex_strategy(), any::<prop::sample::Index>()), |(k, pick)| {
        let faces: Vec<Simplex> = k.all_faces().into_iter().collect();
        let sigma = faces[pick.index(faces.len())];
        let link = k.link(sigma).unwrap();
        prop_assert_eq!(k.star(sigma).unwrap(), SimplicialComplex::simplex(sigma).join(&link).unwrap());

        let verts: Vec<Vertex> = k.vertices().collect();
        let v = verts[pick.index(verts.len())];
        let del = k.deletion(v).unwrap();
        let star = k.star(Simplex::vertex(v)).unwrap();
        prop_assert_eq!(del.union(&star), k.clone());
        prop_assert_eq!(del.intersection(&star), k.link(Simplex::vertex(v)).unwrap());

        prop_assert_eq!(k.join(&SimplicialComplex::empty_face()).unwrap(), k.clone());
        prop_assert!(k.join(&SimplicialComplex::void()).unwrap().is_void());

        for pair in boundary_matrices(&k).unwrap().windows(2) {
            prop_assert!(pair[1].compose(&pair[0]).iter().flatten().all(|&x| x == 0));
        }

        let b = mod2_betti(&k).unwrap();
        let alternating: i64 = b.iter().enumerate().map(|(i, &x)| if i % 2 == 1 { x as i64 } else { -(x as i64) }).sum();
        prop_assert_eq!(k.reduced_euler_characteristic(), alternating);
        let z = betti(&k).unwrap();
        let free: i64 = z
            .integral
            .iter()
            .enumerate()
            .map(|(i, g)| if i % 2 == 1 { g.rank as i64 } else { -(g.rank as i64) })
            .sum();
        prop_assert_eq!(free, alternating);
        Ok(())
    });
    let mut failing = Vec::new();
    for id in SUITES {
        let r = run(id, 20);
        if !r.failures.is_empty() {
            failing.push(format!("{id}: {:?}", r.failures[0]));
        }
    }
    let ok = outcome.is_ok() && failing.is_empty();
    let detail = match (&outcome, failing.is_empty()) {
        (Ok(()), true) => format!("{PROPERTY_CASES} property cases, all {} suites without failures", SUITES.len()),
        (Err(e), _) => format!("property failure: {e}"),
        (Ok(()), false) => format!("suite failures: {failing:?}"),
    };
    verdict(ok, detail)
}

fn main() -> ExitCode {
    let start = Instant::now();
    let balls = run("ball_dual", 200);
    let spheres = run("sphere_dual", 156);
    let criteria: Vec<Criterion> = vec![
        ("formula (A)", Box::new(formula_a)),
        ("fixed-ground involution", Box::new(involution)),
        ("vertex count equivalence", Box::new(vertex_count)),
        ("link and deletion identities", Box::new(link_identities)),
        ("duals of classical balls and spheres", Box::new(|| classical_duals(&balls, &spheres))),
        ("duals of NH-balls and NH-spheres", Box::new(|| nh_duals(&balls, &spheres))),
        ("double dual classification", Box::new(double_dual_class)),
        ("NH-manifolds with d+2 vertices", Box::new(d_plus_2)),
        ("collapse/expansion duality", Box::new(collapse_duality)),
        ("Alexander duality with torsion", Box::new(alexander_torsion)),
        ("spine dimension bounds", Box::new(spine_dims)),
        ("structural invariants", Box::new(structural_invariants)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        println!("criterion {:>2} {:<38} {}  {}", i + 1, name, if v.ok { "PASS" } else { "FAIL" }, v.detail);
        if !v.ok {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
