//! Acceptance criteria 1–9. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. All checks are exact; time budgets are pinned below.

use std::time::{Duration, Instant};

use schober_forge::ar_engine::{ar_quiver_mor, indecomposable_reps, mor_indecomposables, Shape};
use schober_forge::clustercalc::{check_sum_identity, min_cofiber, shift_object, sigma_vertex_permutation, ClusterObject};
use schober_forge::dgpres::{check_d_squared, check_dg_map, compose_dg_maps, maps_equal, DgMap};
use schober_forge::dynkin::{minus_w0_permutation, pi2, pi2_of_quiver, positive_roots, sigma, xi_datum, DynkinType};
use schober_forge::ginzburg::{ginzburg, verify_gluing};
use schober_forge::qcore::random::{random_ice_qp, RandomShape};
use schober_forge::qcore::{export_json, import_json, necklace_sum, quiver_isomorphic, IceQuiverWP};
use schober_forge::surface::{square_check, polygon_ribbon, surface_qp, RibbonGraph, TRIANGLE_FIXTURE, SQUARE_FIXTURE};
use schober_forge::triangle::{side_matching, triangle_qp, triangle_qp_grid, SIDE_IDENTITY, SIDE_P_TO_ZERO, SIDE_ZERO_TO_P};
use schober_forge::verify::{leibniz_samples, random_flips};

use DynkinType::{A, D, E};

const BUDGET_TRIANGLE: Duration = Duration::from_secs(5);
const BUDGET_SQUARE: Duration = Duration::from_secs(10);
const BUDGET_DG: Duration = Duration::from_secs(60);
const BUDGET_SIGMA: Duration = Duration::from_secs(5);
const BUDGET_ROOTS: Duration = Duration::from_secs(30);
const BUDGET_GLUING: Duration = Duration::from_secs(60);
const BUDGET_CLUSTER: Duration = Duration::from_secs(1);
const BUDGET_AR: Duration = Duration::from_secs(120);
const BUDGET_PROPERTIES: Duration = Duration::from_secs(30);

const RANDOM_QPS: u64 = 500;
const NECKLACE_SAMPLES: u64 = 1000;
const LEIBNIZ_SAMPLES: usize = 1000;
const FLIPS: usize = 100;

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn all_types() -> Vec<DynkinType> {
    DynkinType::all_up_to(8)
}

fn census(x: &IceQuiverWP) -> (usize, usize, usize, usize) {
    (x.quiver.num_vertices(), x.quiver.num_arrows(), x.frozen_vertices.len(), x.frozen_arrows.len())
}

fn c1_triangle() -> Outcome {
    let fixture = import_json(TRIANGLE_FIXTURE.as_bytes()).map_err(e)?;
    for (name, x) in [("ar", triangle_qp(A(3)).map_err(e)?.qp), ("grid", triangle_qp_grid(3).map_err(e)?.qp)] {
        ensure(census(&x) == (12, 24, 9, 6), || format!("{name}: census {:?}", census(&x)))?;
        ensure(quiver_isomorphic(&x, &fixture, true, true).is_some(), || format!("{name}: no isomorphism with fixture"))?;
    }
    Ok("both pipelines: 12 vertices, 24 arrows, 9 frozen vertices, 6 frozen arrows, fixture-isomorphic".into())
}

fn c2_square() -> Outcome {
    let r = square_check().map_err(e)?;
    let got = (r.vertices, r.frozen_vertices, r.arrows);
    ensure(got == (21, 12, 44), || format!("census {got:?}"))?;
    ensure(r.quiver_match && r.potential_witness.is_some(), || "not isomorphic to the fixture".into())?;
    Ok("21 vertices, 12 frozen, 44 arrows, fixture-isomorphic".into())
}

fn d2(x: &IceQuiverWP, what: &str) -> Result<usize, String> {
    let r = check_d_squared(&ginzburg(x).map_err(e)?.dg).map_err(e)?;
    ensure(r.passed(), || format!("{what}: d² ≠ 0"))?;
    Ok(r.checked)
}

fn c3_dg() -> Outcome {
    let types = all_types();
    for &t in &types {
        ensure(check_d_squared(&pi2(t)).map_err(e)?.passed(), || format!("Π₂({t}): d² ≠ 0"))?;
    }
    let mut presentations = 0;
    for &t in &types {
        d2(&triangle_qp(t).map_err(e)?.qp, &format!("triangle {t}"))?;
        presentations += 1;
    }
    for n in 1..=5 {
        d2(&triangle_qp_grid(n).map_err(e)?.qp, &format!("grid A{n}"))?;
        presentations += 1;
    }
    for m in 3..=6 {
        let (g, d) = polygon_ribbon(m).map_err(e)?;
        for n in 1..=3 {
            d2(&surface_qp(&g, &d, A(n)).map_err(e)?.qp, &format!("{m}-gon A{n}"))?;
            presentations += 1;
        }
    }
    for seed in 0..RANDOM_QPS {
        d2(&random_ice_qp(seed, RandomShape::default()), &format!("random seed {seed}"))?;
    }
    Ok(format!("Π₂ for {} types, {presentations} triangle/surface QPs, {RANDOM_QPS} random ice QPs", types.len()))
}

fn c4_sigma() -> Outcome {
    for t in all_types() {
        let p = pi2(t);
        let s = sigma(t);
        ensure(check_dg_map(&s, &p, &p).map_err(e)?.passed(), || format!("{t}: σ not a dg map"))?;
        ensure(maps_equal(&compose_dg_maps(&s, &s).map_err(e)?, &DgMap::identity(&p)), || format!("{t}: σ² ≠ id"))?;
        let datum = xi_datum(t);
        let psi = datum.psi();
        ensure(check_dg_map(&psi, &p, &pi2_of_quiver(&datum.e_prime)).map_err(e)?.passed(), || format!("{t}: ψ"))?;
        let psi_only = matches!(t, D(n) if n % 2 == 0) || matches!(t, E(7) | E(8));
        if psi_only {
            ensure(maps_equal(&psi, &s), || format!("{t}: σ ≠ ψ"))?;
        } else {
            ensure(maps_equal(&compose_dg_maps(&datum.xi, &psi).map_err(e)?, &s), || format!("{t}: σ ≠ ξ∘ψ"))?;
        }
    }
    Ok("σ² = id, σ dg; σ = ξ∘ψ in A, D_odd, E₆ and σ = ψ in D_even, E₇, E₈".into())
}

fn closed_form_roots(t: DynkinType) -> usize {
    match t {
        A(n) => n * (n + 1) / 2,
        D(n) => n * (n - 1),
        E(6) => 36,
        E(7) => 63,
        E(_) => 120,
    }
}

fn c5_roots() -> Outcome {
    for t in all_types() {
        let from_sigma: Vec<usize> = sigma_vertex_permutation(t).map_err(e)?.iter().map(|i| i - 1).collect();
        ensure(from_sigma == minus_w0_permutation(t), || format!("{t}: σ permutation differs from −w₀"))?;
        let found = positive_roots(t).positive.len();
        ensure(found == closed_form_roots(t), || format!("{t}: {found} positive roots"))?;
    }
    Ok("σ vertex permutation = −w₀ and |Φ⁺| closed forms for all types".into())
}

fn c6_gluing() -> Outcome {
    let mut levels = Vec::new();
    for n in 1..=3 {
        let t = triangle_qp(A(n)).map_err(e)?;
        for (name, a, b) in [("I–I", SIDE_ZERO_TO_P, SIDE_P_TO_ZERO), ("I–I^op", SIDE_P_TO_ZERO, SIDE_IDENTITY)] {
            let m = side_matching(&t, a, &t, b, &|i| i).map_err(e)?;
            let r = verify_gluing(&t.qp, &t.qp, &m).map_err(e)?;
            ensure(r.passed(), || format!("A{n} {name}: {:?} {:?}", r.level, r.mismatches))?;
            levels.push(format!("A{n} {name} {:?}", r.level));
        }
    }
    Ok(levels.join(", "))
}

fn c7_cluster() -> Outcome {
    for n in 2..=8 {
        let r = check_sum_identity(n).map_err(e)?;
        ensure(r.passed() && r.rows.len() == n * (n - 1), || format!("n = {n}: {:?}", r.failures()))?;
    }
    let two = ClusterObject::indecomposable(2);
    ensure(min_cofiber(3, 1, 3).map_err(e)? == two, || "1 → 3 → 2 fails".into())?;
    // 2 → 1⊕3 → 2: the third term is the shift of the first.
    ensure(shift_object(A(3), &two).map_err(e)? == two, || "shift of 2 is not 2".into())?;
    ensure(shift_object(A(3), &ClusterObject::indecomposable(1)).map_err(e)? == ClusterObject::indecomposable(3), || {
        "shift of 1 is not 3".into()
    })?;
    Ok("sum identity for 2 ≤ n ≤ 8, A₃ sequences 1→3→2 and 2→1⊕3→2".into())
}

fn c8_ar() -> Outcome {
    for t in all_types() {
        let n = t.rank();
        let shape = Shape::of(t);
        if n <= 6 {
            let reps = indecomposable_reps(&shape).len();
            ensure(reps == closed_form_roots(t), || format!("{t}: {reps} indecomposable representations"))?;
        }
        let ar = ar_quiver_mor(t).map_err(e)?;
        let bad = ar.mesh_failures();
        ensure(bad.is_empty(), || format!("{t}: nonzero meshes {bad:?}"))?;
        let expected = 2 * n + closed_form_roots(t);
        let objects = mor_indecomposables(&shape).map_err(e)?.len();
        ensure(objects == expected && ar.objects.len() == expected, || format!("{t}: {objects} objects, expected {expected}"))?;
    }
    ensure(ar_quiver_mor(A(3)).map_err(e)?.objects.len() == 12, || "A₃ count".into())?;
    Ok("reps = |Φ⁺| to rank 6, all meshes zero, 2n + |Φ⁺| objects for all types including E₇, E₈".into())
}

fn c9_properties() -> Outcome {
    for seed in 0..NECKLACE_SAMPLES {
        let x = random_ice_qp(1_000_000 + seed, RandomShape { max_terms: 10, max_cycle_len: 6, ..RandomShape::default() });
        ensure(necklace_sum(&x.quiver, &x.potential).map_err(e)?.is_zero(), || format!("necklace seed {seed}"))?;
        let back = import_json(&export_json(&x).map_err(e)?).map_err(e)?;
        ensure(back == x, || format!("JSON round trip seed {seed}"))?;
    }
    leibniz_samples(2_000_000, LEIBNIZ_SAMPLES)?;
    random_flips(3_000_000, FLIPS)?;
    for text in [TRIANGLE_FIXTURE, SQUARE_FIXTURE] {
        let x = import_json(text.as_bytes()).map_err(e)?;
        ensure(export_json(&x).map_err(e)? == text.trim_end().as_bytes(), || "fixture round trip".into())?;
    }
    for m in 3..=9 {
        let (g, d) = polygon_ribbon(m).map_err(e)?;
        let (g2, d2) = RibbonGraph::from_json(&g.to_json(&d).map_err(e)?).map_err(e)?;
        ensure(g2 == g && d2 == d, || format!("ribbon round trip {m}-gon"))?;
    }
    Ok(format!(
        "{NECKLACE_SAMPLES} necklace sums, {LEIBNIZ_SAMPLES} Leibniz pairs, {FLIPS} flips, JSON round trips"
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1", "A₃ triangle reproduction", BUDGET_TRIANGLE, c1_triangle),
        ("2", "A₃ square reproduction", BUDGET_SQUARE, c2_square),
        ("3", "dg wellformedness", BUDGET_DG, c3_dg),
        ("4", "involution suite", BUDGET_SIGMA, c4_sigma),
        ("5", "root-system agreement", BUDGET_ROOTS, c5_roots),
        ("6", "gluing at desk scale", BUDGET_GLUING, c6_gluing),
        ("7", "cluster arithmetic", BUDGET_CLUSTER, c7_cluster),
        ("8", "AR-engine oracle equivalence", BUDGET_AR, c8_ar),
        ("9", "property suites", BUDGET_PROPERTIES, c9_properties),
    ];
    let mut failed = 0;
    for (id, name, budget, f) in criteria {
        let start = Instant::now();
        let result = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let verdict = match result {
            Ok(detail) if took <= budget => Ok(detail),
            Ok(_) => Err(format!("exceeded time budget of {budget:?}")),
            Err(m) => Err(m),
        };
        let timing = format!("{:.2}s / {}s", took.as_secs_f64(), budget.as_secs());
        match verdict {
            Ok(detail) => println!("PASS criterion {id} ({name}) [{timing}]: {detail}"),
            Err(m) => {
                failed += 1;
                println!("FAIL criterion {id} ({name}) [{timing}]: {m}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
