//! Verification suites shared by the CLI and the integration tests.
//!
//! Every check is a pure function. Checks run on a small thread pool and are
//! reported in registration order, so output does not depend on scheduling.

use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ar_engine::{ar_quiver_mor, indecomposable_reps, mor_indecomposables, Shape};
use crate::clustercalc::{
    check_sum_identity, min_cofiber, min_fiber, shift_object, sigma_vertex_permutation, ClusterObject,
};
use crate::dgpres::{check_d_squared, check_dg_map, compose_dg_maps, d_extend, maps_equal, DgMap, DgPresentation};
use crate::dynkin::{
    equivariance_check, minus_w0_permutation, pi2, pi2_of_quiver, positive_roots, sigma, xi_datum, DynkinType, Window,
};
use crate::error::{Error, Result};
use crate::ginzburg::{ginzburg, verify_gluing};
use crate::linalg::{qfrac, Q};
use crate::qcore::random::{random_ice_qp, RandomShape};
use crate::qcore::{export_json, import_json, necklace_sum, quiver_isomorphic, IceQuiverWP, Path, PathSum};
use crate::surface::{
    square_check, square_check_with, flip, polygon_ribbon, ribbon_invariants, surface_qp, Identification, RibbonGraph,
    TRIANGLE_FIXTURE, SQUARE_FIXTURE,
};
use crate::triangle::{
    side_matching, triangle_consistency, triangle_qp, triangle_qp_grid, SIDE_IDENTITY, SIDE_P_TO_ZERO, SIDE_ZERO_TO_P,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Dg,
    Sigma,
    Roots,
    Triangle,
    Gluing,
    Surface,
    Cluster,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Dg, Suite::Sigma, Suite::Roots, Suite::Triangle, Suite::Gluing, Suite::Surface, Suite::Cluster];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Dg => "dg",
            Suite::Sigma => "sigma",
            Suite::Roots => "roots",
            Suite::Triangle => "triangle",
            Suite::Gluing => "gluing",
            Suite::Surface => "surface",
            Suite::Cluster => "cluster",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

/// Parses a suite selector; `all` expands to every suite.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>> {
    if s == "all" {
        Ok(Suite::ALL.to_vec())
    } else {
        Ok(vec![s.parse()?])
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Include E₇/E₈ AR pipelines and the A₄ consistency check.
    pub long: bool,
    pub random_qps: usize,
    pub necklace_samples: usize,
    pub leibniz_samples: usize,
    pub flips: usize,
    pub seed: u64,
    pub threads: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            long: false,
            random_qps: 500,
            necklace_samples: 1000,
            leibniz_samples: 1000,
            flips: 100,
            seed: 0x5eed,
            threads: std::thread::available_parallelism().map_or(4, |n| n.get()).min(8),
        }
    }
}

/// One line of a failure report.
#[derive(Clone, Debug, Serialize)]
pub struct FailureRecord {
    pub suite: String,
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub suite: Suite,
    pub check: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> Vec<FailureRecord> {
        self.outcomes
            .iter()
            .filter(|o| !o.passed)
            .map(|o| FailureRecord { suite: o.suite.name().into(), check: o.check.clone(), detail: o.detail.clone() })
            .collect()
    }

    /// Line-delimited JSON records `{suite, check, detail}`.
    pub fn failure_lines(&self) -> String {
        self.failures()
            .iter()
            .map(|f| serde_json::to_string(f).expect("plain strings serialize") + "\n")
            .collect()
    }
}

type CheckFn = Box<dyn Fn() -> std::result::Result<String, String> + Send + Sync>;

struct Check {
    suite: Suite,
    id: String,
    run: CheckFn,
}

fn check(suite: Suite, id: impl Into<String>, f: impl Fn() -> std::result::Result<String, String> + Send + Sync + 'static) -> Check {
    Check { suite, id: id.into(), run: Box::new(f) }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

/// The types exercised by default: everything up to the rank cap, with E₇ and
/// E₈ AR pipelines only under `long`.
fn ar_types(long: bool) -> Vec<DynkinType> {
    DynkinType::all_up_to(8).into_iter().filter(|t| long || !matches!(t, DynkinType::E(7) | DynkinType::E(8))).collect()
}

fn dg_checks(o: &VerifyOptions) -> Vec<Check> {
    let s = Suite::Dg;
    let mut out = Vec::new();
    for t in DynkinType::all_up_to(8) {
        out.push(check(s, format!("pi2-d-squared/{t}"), move || {
            let r = check_d_squared(&pi2(t)).map_err(err)?;
            ensure(r.passed(), || format!("{} failing generators", r.failures.len()))?;
            Ok(format!("{} generators", r.checked))
        }));
    }
    for t in ar_types(o.long) {
        out.push(check(s, format!("ginzburg-d-squared/triangle/{t}"), move || {
            ginzburg_d2(&triangle_qp(t).map_err(err)?.qp)
        }));
    }
    for n in 1..=5 {
        out.push(check(s, format!("ginzburg-d-squared/grid/A{n}"), move || {
            ginzburg_d2(&triangle_qp_grid(n).map_err(err)?.qp)
        }));
    }
    for n in 3..=6 {
        for k in 1..=3 {
            out.push(check(s, format!("ginzburg-d-squared/polygon{n}/A{k}"), move || {
                let (g, d) = polygon_ribbon(n).map_err(err)?;
                ginzburg_d2(&surface_qp(&g, &d, DynkinType::A(k)).map_err(err)?.qp)
            }));
        }
    }
    let chunk = 100;
    for start in (0..o.random_qps).step_by(chunk) {
        let end = (start + chunk).min(o.random_qps);
        let seed = o.seed;
        out.push(check(s, format!("ginzburg-d-squared/random/{start:04}-{:04}", end - 1), move || {
            for k in start..end {
                let x = random_ice_qp(seed.wrapping_add(k as u64), RandomShape::default());
                ginzburg_d2(&x).map_err(|e| format!("sample {k}: {e}"))?;
            }
            Ok(format!("{} samples", end - start))
        }));
    }
    for start in (0..o.necklace_samples).step_by(250) {
        let end = (start + 250).min(o.necklace_samples);
        let seed = o.seed;
        out.push(check(s, format!("necklace/random/{start:04}-{:04}", end - 1), move || {
            for k in start..end {
                let x = random_ice_qp(seed.wrapping_add(10_000 + k as u64), RandomShape::default());
                let r = necklace_sum(&x.quiver, &x.potential).map_err(err)?;
                ensure(r.is_zero(), || format!("sample {k}: {} surviving terms", r.len()))?;
            }
            Ok(format!("{} samples", end - start))
        }));
    }
    for start in (0..o.leibniz_samples).step_by(250) {
        let end = (start + 250).min(o.leibniz_samples);
        let seed = o.seed;
        out.push(check(s, format!("leibniz/random/{start:04}-{:04}", end - 1), move || {
            leibniz_samples(seed.wrapping_add(20_000 + start as u64), end - start)
        }));
    }
    out
}

fn ginzburg_d2(x: &IceQuiverWP) -> std::result::Result<String, String> {
    let g = ginzburg(x).map_err(err)?;
    let r = check_d_squared(&g.dg).map_err(err)?;
    ensure(r.passed(), || format!("d² ≠ 0 on {:?}", r.failures.iter().map(|f| &f.0).collect::<Vec<_>>()))?;
    Ok(format!("{} generators", r.checked))
}

/// A random walk in application order, returned as a path in function order.
fn random_walk(rng: &mut ChaCha8Rng, q: &crate::qcore::Quiver, start: &str, len: usize) -> Option<Path> {
    let mut ids: Vec<String> = Vec::new();
    let mut here = start.to_string();
    for _ in 0..len {
        let next: Vec<_> = q.arrows_out(&here).collect();
        let a = next.choose(rng)?;
        ids.push(a.id.clone());
        here = a.target.clone();
    }
    ids.reverse();
    Path::from_arrows(q, &ids).ok()
}

fn random_coefficient(rng: &mut ChaCha8Rng) -> Q {
    let n = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
    qfrac(n, rng.gen_range(1..=3))
}

/// Homogeneous element starting at `start`: one walk, plus a second with the
/// same endpoints and degree when one turns up.
fn random_homogeneous(rng: &mut ChaCha8Rng, dg: &DgPresentation, start: &str) -> Option<PathSum> {
    let q = dg.graded();
    let len = rng.gen_range(1..=3);
    let p = random_walk(rng, q, start, len)?;
    let deg = dg.path_degree(&p).ok()?;
    let mut x = PathSum::term(p.clone(), random_coefficient(rng));
    for _ in 0..4 {
        let len2 = rng.gen_range(1..=3);
        if let Some(p2) = random_walk(rng, q, start, len2) {
            if p2 != p && p2.target() == p.target() && dg.path_degree(&p2).ok()? == deg {
                x.add_term(p2, random_coefficient(rng));
                break;
            }
        }
    }
    Some(x)
}

/// Checks the graded Leibniz rule on `count` random composable homogeneous pairs.
pub fn leibniz_samples(seed: u64, count: usize) -> std::result::Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    let mut attempts = 0;
    while done < count {
        attempts += 1;
        if attempts > 50 * count {
            return Err(format!("only {done} composable pairs found"));
        }
        let x = random_ice_qp(rng.gen(), RandomShape::default());
        let dg = ginzburg(&x).map_err(err)?.dg;
        let objects: Vec<String> = dg.graded().vertex_ids().cloned().collect();
        let start = objects.choose(&mut rng).expect("nonempty").clone();
        // `y` acts first, then `x`.
        let Some(y) = random_homogeneous(&mut rng, &dg, &start) else { continue };
        let mid = y.endpoints().expect("nonzero").1.to_string();
        let Some(xx) = random_homogeneous(&mut rng, &dg, &mid) else { continue };
        let deg_x = dg.sum_degree(&xx).map_err(err)?.expect("homogeneous");
        let lhs = d_extend(&dg, &xx.compose(&y).map_err(err)?).map_err(err)?;
        let sign = if deg_x % 2 == 0 { Q::one() } else { -Q::one() };
        let mut rhs = d_extend(&dg, &xx).map_err(err)?.compose(&y).map_err(err)?;
        rhs.add_scaled(&xx.compose(&d_extend(&dg, &y).map_err(err)?).map_err(err)?, &sign);
        ensure(lhs == rhs, || format!("Leibniz rule fails for x = {xx:?}, y = {y:?}"))?;
        done += 1;
    }
    Ok(format!("{done} pairs"))
}

fn sigma_checks(_: &VerifyOptions) -> Vec<Check> {
    let s = Suite::Sigma;
    let mut out = Vec::new();
    for t in DynkinType::all_up_to(8) {
        out.push(check(s, format!("involution/{t}"), move || {
            let p = pi2(t);
            let sg = sigma(t);
            let r = check_dg_map(&sg, &p, &p).map_err(err)?;
            ensure(r.passed(), || format!("σ is not a dg map: {r:?}"))?;
            let sq = compose_dg_maps(&sg, &sg).map_err(err)?;
            ensure(maps_equal(&sq, &DgMap::identity(&p)), || "σ² ≠ id".into())?;
            Ok(String::new())
        }));
        out.push(check(s, format!("factorization/{t}"), move || {
            let p = pi2(t);
            let datum = xi_datum(t);
            let psi = datum.psi();
            let p2 = pi2_of_quiver(&datum.e_prime);
            ensure(check_dg_map(&psi, &p, &p2).map_err(err)?.passed(), || "ψ is not a dg map".into())?;
            ensure(check_dg_map(&datum.xi, &p2, &p).map_err(err)?.passed(), || "ξ is not a dg map".into())?;
            let trivial_xi = matches!(t, DynkinType::D(n) if n % 2 == 0) || matches!(t, DynkinType::E(7) | DynkinType::E(8));
            if trivial_xi {
                ensure(datum.e_prime == datum.e, || "E′ should equal E".into())?;
                ensure(maps_equal(&psi, &sigma(t)), || "σ ≠ ψ".into())?;
                Ok("σ = ψ".into())
            } else {
                ensure(maps_equal(&compose_dg_maps(&datum.xi, &psi).map_err(err)?, &sigma(t)), || "σ ≠ ξ∘ψ".into())?;
                Ok("σ = ξ∘ψ".into())
            }
        }));
        out.push(check(s, format!("equivariance/{t}"), move || {
            let r = equivariance_check(t, Window::new(-1, 2).map_err(err)?).map_err(err)?;
            ensure(r.passed(), || format!("{:?}", r.failures))?;
            Ok(String::new())
        }));
    }
    out
}

fn roots_checks(_: &VerifyOptions) -> Vec<Check> {
    let s = Suite::Roots;
    let mut out = Vec::new();
    for t in DynkinType::all_up_to(8) {
        out.push(check(s, format!("minus-w0/{t}"), move || {
            let from_sigma: Vec<usize> = sigma_vertex_permutation(t).map_err(err)?.iter().map(|i| i - 1).collect();
            let brute = minus_w0_permutation(t);
            ensure(from_sigma == brute, || format!("σ gives {from_sigma:?}, −w₀ gives {brute:?}"))?;
            Ok(String::new())
        }));
        out.push(check(s, format!("positive-roots/{t}"), move || {
            let found = positive_roots(t).positive.len();
            ensure(found == t.num_positive_roots(), || format!("closure found {found}, closed form {}", t.num_positive_roots()))?;
            Ok(format!("|Φ⁺| = {found}"))
        }));
        if t.rank() <= 6 {
            out.push(check(s, format!("indecomposable-reps/{t}"), move || {
                let found = indecomposable_reps(&Shape::of(t)).len();
                ensure(found == t.num_positive_roots(), || format!("{found} indecomposables, |Φ⁺| = {}", t.num_positive_roots()))?;
                Ok(format!("{found}"))
            }));
        }
    }
    out
}

/// Expected census of the basic triangle: vertices, frozen vertices, frozen arrows.
fn triangle_census(t: DynkinType) -> (usize, usize, usize) {
    let n = t.rank();
    (2 * n + t.num_positive_roots(), 3 * n, 3 * (n - 1))
}

fn triangle_checks(o: &VerifyOptions) -> Vec<Check> {
    let s = Suite::Triangle;
    let mut out = Vec::new();
    out.push(check(s, "a3-triangle/ar", || triangle_fixture_against(&triangle_qp(DynkinType::A(3)).map_err(err)?.qp)));
    out.push(check(s, "a3-triangle/grid", || triangle_fixture_against(&triangle_qp_grid(3).map_err(err)?.qp)));
    for t in ar_types(o.long) {
        out.push(check(s, format!("ar-meshes/{t}"), move || {
            let ar = ar_quiver_mor(t).map_err(err)?;
            let bad = ar.mesh_failures();
            ensure(bad.is_empty(), || format!("nonzero meshes: {bad:?}"))?;
            let expected = 2 * t.rank() + t.num_positive_roots();
            ensure(ar.objects.len() == expected, || format!("{} objects, expected {expected}", ar.objects.len()))?;
            let direct = mor_indecomposables(&Shape::of(t)).map_err(err)?.len();
            ensure(direct == expected, || format!("mor_indecomposables gives {direct}, expected {expected}"))?;
            Ok(format!("{} objects, {} meshes", expected, ar.meshes.len()))
        }));
        out.push(check(s, format!("census/{t}"), move || {
            let tq = triangle_qp(t).map_err(err)?;
            let got = (tq.qp.quiver.num_vertices(), tq.qp.frozen_vertices.len(), tq.qp.frozen_arrows.len());
            ensure(got == triangle_census(t), || format!("got {got:?}, expected {:?}", triangle_census(t)))?;
            Ok(format!("{} arrows", tq.qp.quiver.num_arrows()))
        }));
    }
    let top = if o.long { 4 } else { 3 };
    for n in 1..=top {
        out.push(check(s, format!("consistency/A{n}"), move || {
            let r = triangle_consistency(DynkinType::A(n)).map_err(err)?;
            ensure(r.passed(), || "AR and grid pipelines disagree".into())?;
            Ok(String::new())
        }));
    }
    out
}

fn triangle_fixture_against(x: &IceQuiverWP) -> std::result::Result<String, String> {
    let got = (x.quiver.num_vertices(), x.quiver.num_arrows(), x.frozen_vertices.len(), x.frozen_arrows.len());
    ensure(got == (12, 24, 9, 6), || format!("census {got:?}, expected (12, 24, 9, 6)"))?;
    let fixture = import_json(TRIANGLE_FIXTURE.as_bytes()).map_err(err)?;
    let w = quiver_isomorphic(x, &fixture, true, true).ok_or("no isomorphism with the A₃ triangle fixture")?;
    Ok(format!("{} dual arrows rescaled", w.negated_arrows.len()))
}

fn gluing_checks(_: &VerifyOptions) -> Vec<Check> {
    let s = Suite::Gluing;
    let mut out = Vec::new();
    for n in 1..=3 {
        // Sides 1 and 2 are copies of I^op, side 3 a copy of I.
        for (name, a, b) in [("I-I", SIDE_ZERO_TO_P, SIDE_P_TO_ZERO), ("I-Iop", SIDE_P_TO_ZERO, SIDE_IDENTITY)] {
            out.push(check(s, format!("verify-gluing/A{n}/{name}"), move || {
                let t = triangle_qp(DynkinType::A(n)).map_err(err)?;
                let m = side_matching(&t, a, &t, b, &|i| i).map_err(err)?;
                let r = verify_gluing(&t.qp, &t.qp, &m).map_err(err)?;
                ensure(r.passed(), || format!("{:?}: {:?}", r.level, r.mismatches))?;
                Ok(format!("{:?}", r.level))
            }));
        }
    }
    out
}

/// Applies `count` random flips to the fan of a 9-gon, checking invariants after each.
pub fn random_flips(seed: u64, count: usize) -> std::result::Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut g, _) = polygon_ribbon(9).map_err(err)?;
    let before = ribbon_invariants(&g).map_err(err)?;
    for k in 0..count {
        let internal: Vec<String> = g.internal_edges().into_iter().map(|e| e.1).collect();
        let h = internal.choose(&mut rng).ok_or("no internal edge")?.clone();
        g = flip(&g, &h).map_err(|e| format!("flip {k}: {e}"))?;
        let after = ribbon_invariants(&g).map_err(err)?;
        ensure(after == before, || format!("flip {k} at {h}: {before:?} became {after:?}"))?;
    }
    Ok(format!("{count} flips"))
}

fn ribbon_round_trip(g: &RibbonGraph, d: &crate::surface::Direction) -> std::result::Result<(), String> {
    let text = g.to_json(d).map_err(err)?;
    let (g2, d2) = RibbonGraph::from_json(&text).map_err(err)?;
    ensure(&g2 == g && &d2 == d, || "ribbon graph JSON round trip changed the data".into())
}

fn surface_checks(o: &VerifyOptions) -> Vec<Check> {
    let s = Suite::Surface;
    let mut out = Vec::new();
    out.push(check(s, "a3-square", || {
        let r = square_check().map_err(err)?;
        let got = (r.vertices, r.frozen_vertices, r.arrows);
        ensure(got == (21, 12, 44), || format!("census {got:?}, expected (21, 12, 44)"))?;
        ensure(r.quiver_match, || "quiver differs from the A₃ square fixture".into())?;
        ensure(r.potential_witness.is_some(), || "potential differs from the A₃ square fixture".into())?;
        Ok(String::new())
    }));
    out.push(check(s, "a3-square/swapped-identification-rejected", || {
        let r = square_check_with(Identification::Swapped).map_err(err)?;
        ensure(!r.passed(), || "the swapped identification also matches the fixture".into())?;
        Ok(format!("{} arrows", r.arrows))
    }));
    for n in 3..=9 {
        out.push(check(s, format!("polygon-invariants/{n}"), move || {
            let (g, d) = polygon_ribbon(n).map_err(err)?;
            let r = ribbon_invariants(&g).map_err(err)?;
            ensure(r.genus == 0 && r.boundary_components == 1 && r.marked_points == n && r.trivalent && r.boundary_marked, || {
                format!("{r:?}")
            })?;
            ribbon_round_trip(&g, &d)?;
            Ok(String::new())
        }));
    }
    let (seed, flips) = (o.seed, o.flips);
    out.push(check(s, "flip-invariants/random", move || random_flips(seed.wrapping_add(30_000), flips)));
    out.push(check(s, "qp-json/fixtures", || {
        for (name, text) in [("a3-triangle", TRIANGLE_FIXTURE), ("a3-square", SQUARE_FIXTURE)] {
            let x = import_json(text.as_bytes()).map_err(err)?;
            let bytes = export_json(&x).map_err(err)?;
            ensure(bytes == text.trim_end().as_bytes(), || format!("{name}: export differs from the fixture text"))?;
            ensure(import_json(&bytes).map_err(err)? == x, || format!("{name}: import after export differs"))?;
        }
        Ok(String::new())
    }));
    let seed = o.seed;
    out.push(check(s, "qp-json/random", move || {
        for k in 0..200u64 {
            let x = random_ice_qp(seed.wrapping_add(40_000 + k), RandomShape::default());
            let back = import_json(&export_json(&x).map_err(err)?).map_err(err)?;
            ensure(back == x, || format!("sample {k} changed on round trip"))?;
        }
        Ok("200 samples".into())
    }));
    out
}

fn cluster_checks(_: &VerifyOptions) -> Vec<Check> {
    let s = Suite::Cluster;
    let mut out = Vec::new();
    for n in 2..=8 {
        out.push(check(s, format!("sum-identity/A{n}"), move || {
            let r = check_sum_identity(n).map_err(err)?;
            ensure(r.rows.len() == n * (n - 1), || format!("{} pairs", r.rows.len()))?;
            ensure(r.passed(), || format!("{:?}", r.failures()))?;
            Ok(format!("{} pairs", r.rows.len()))
        }));
        out.push(check(s, format!("fiber-is-shifted-cofiber/A{n}"), move || {
            for i in 1..=n {
                for j in (1..=n).filter(|&j| j != i) {
                    let fib = min_fiber(n, i, j).map_err(err)?;
                    let cof = min_cofiber(n, i, j).map_err(err)?;
                    ensure(shift_object(DynkinType::A(n), &fib).map_err(err)? == cof, || format!("({i},{j})"))?;
                }
            }
            Ok(String::new())
        }));
    }
    for t in DynkinType::all_up_to(8) {
        out.push(check(s, format!("shift-involution/{t}"), move || {
            for l in 1..=t.rank() {
                let x = ClusterObject::indecomposable(l);
                let back = shift_object(t, &shift_object(t, &x).map_err(err)?).map_err(err)?;
                ensure(back == x, || format!("[2]({l}) = {back}"))?;
            }
            Ok(String::new())
        }));
    }
    out.push(check(s, "a3-sequences", || {
        let t = DynkinType::A(3);
        let two = ClusterObject::indecomposable(2);
        ensure(min_cofiber(3, 1, 3).map_err(err)? == two, || "cofiber of 1 → 3 is not 2".into())?;
        // 2 → 1⊕3 → 2: the third term is the shift of the first.
        ensure(shift_object(t, &two).map_err(err)? == two, || "2[1] ≠ 2".into())?;
        let middle = ClusterObject::from_labels([1, 3]);
        ensure(shift_object(t, &middle).map_err(err)? == middle, || "(1⊕3)[1] ≠ 1⊕3".into())?;
        Ok(String::new())
    }));
    out
}

fn checks_for(suite: Suite, o: &VerifyOptions) -> Vec<Check> {
    match suite {
        Suite::Dg => dg_checks(o),
        Suite::Sigma => sigma_checks(o),
        Suite::Roots => roots_checks(o),
        Suite::Triangle => triangle_checks(o),
        Suite::Gluing => gluing_checks(o),
        Suite::Surface => surface_checks(o),
        Suite::Cluster => cluster_checks(o),
    }
}

/// Check ids of a suite, in report order.
pub fn list_checks(suite: Suite, o: &VerifyOptions) -> Vec<String> {
    checks_for(suite, o).into_iter().map(|c| c.id).collect()
}

fn run_one(c: &Check) -> CheckOutcome {
    let start = Instant::now();
    let (passed, detail) = match catch_unwind(AssertUnwindSafe(|| (c.run)())) {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(p) => {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            (false, format!("panic: {}", msg.unwrap_or_default()))
        }
    };
    CheckOutcome { suite: c.suite, check: c.id.clone(), passed, detail, elapsed: start.elapsed() }
}

pub fn run_suites(suites: &[Suite], o: &VerifyOptions) -> VerifyReport {
    let checks: Vec<Check> = suites.iter().flat_map(|&s| checks_for(s, o)).collect();
    let results: Mutex<Vec<Option<CheckOutcome>>> = Mutex::new(vec![None; checks.len()]);
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..o.threads.max(1) {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(c) = checks.get(k) else { break };
                let r = run_one(c);
                results.lock().expect("no poisoned lock")[k] = Some(r);
            });
        }
    });
    let outcomes = results.into_inner().expect("no poisoned lock").into_iter().map(|r| r.expect("every check ran")).collect();
    VerifyReport { outcomes }
}

pub fn run_suite(suite: Suite, o: &VerifyOptions) -> VerifyReport {
    run_suites(&[suite], o)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!(parse_suites("all").unwrap().len(), 7);
        assert!(parse_suites("nope").is_err());
    }

    #[test]
    fn cluster_suite_passes_in_order() {
        let o = VerifyOptions::default();
        let r = run_suite(Suite::Cluster, &o);
        assert!(r.passed(), "{}", r.failure_lines());
        let ids: Vec<_> = r.outcomes.iter().map(|x| x.check.clone()).collect();
        assert_eq!(ids, list_checks(Suite::Cluster, &o));
    }

    #[test]
    fn failure_lines_are_json() {
        let c = check(Suite::Dg, "always-fails", || Err("boom".into()));
        let r = VerifyReport { outcomes: vec![run_one(&c)] };
        assert_eq!(r.failure_lines(), "{\"suite\":\"dg\",\"check\":\"always-fails\",\"detail\":\"boom\"}\n");
        let p = check(Suite::Dg, "panics", || panic!("bad"));
        assert!(run_one(&p).detail.contains("bad"));
    }
}
