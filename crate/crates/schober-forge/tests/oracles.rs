//! Values checked against independent oracles: literal tables and
//! combinatorial counts that do not go through the library's own formulas.

use schober_forge::ar_engine::{ar_quiver_mor, indecomposable_reps, mor_indecomposables, Shape};
use schober_forge::clustercalc::sigma_vertex_permutation;
use schober_forge::dynkin::{minus_w0_permutation, pi2, positive_roots, DynkinType};
use schober_forge::surface::{polygon_ribbon, ribbon_invariants, surface_qp};
use schober_forge::triangle::{triangle_qp, triangle_qp_grid};

use DynkinType::{A, D, E};

const POSITIVE_ROOTS: [(DynkinType, usize); 16] = [
    (A(1), 1),
    (A(2), 3),
    (A(3), 6),
    (A(4), 10),
    (A(5), 15),
    (A(6), 21),
    (A(7), 28),
    (A(8), 36),
    (D(4), 12),
    (D(5), 20),
    (D(6), 30),
    (D(7), 42),
    (D(8), 56),
    (E(6), 36),
    (E(7), 63),
    (E(8), 120),
];

#[test]
fn positive_root_table() {
    for (t, count) in POSITIVE_ROOTS {
        assert_eq!(positive_roots(t).positive.len(), count, "{t}");
        assert_eq!(t.num_positive_roots(), count, "{t}");
    }
}

#[test]
fn indecomposable_reps_match_root_table() {
    for (t, count) in POSITIVE_ROOTS.into_iter().filter(|(t, _)| t.rank() <= 6) {
        assert_eq!(indecomposable_reps(&Shape::of(t)).len(), count, "{t}");
    }
}

#[test]
fn morphism_category_counts() {
    for (t, count) in POSITIVE_ROOTS.into_iter().filter(|(t, _)| t.rank() <= 6) {
        let n = t.rank();
        assert_eq!(mor_indecomposables(&Shape::of(t)).unwrap().len(), 2 * n + count, "{t}");
    }
    assert_eq!(ar_quiver_mor(A(3)).unwrap().objects.len(), 12);
}

/// `σ` on vertices, transcribed from its definition type by type (1-based).
fn sigma_table(t: DynkinType) -> Vec<usize> {
    let n = t.rank();
    match t {
        A(_) => (1..=n).map(|i| n + 1 - i).collect(),
        D(_) if n % 2 == 0 => (1..=n).collect(),
        D(_) => (1..=n).map(|i| if i == n - 1 { n } else if i == n { n - 1 } else { i }).collect(),
        E(6) => vec![5, 4, 3, 2, 1, 6],
        E(_) => (1..=n).collect(),
    }
}

#[test]
fn sigma_permutation_matches_definition_and_minus_w0() {
    for (t, _) in POSITIVE_ROOTS {
        let table = sigma_table(t);
        assert_eq!(sigma_vertex_permutation(t).unwrap(), table, "{t}");
        let w0: Vec<usize> = minus_w0_permutation(t).iter().map(|i| i + 1).collect();
        assert_eq!(w0, table, "{t}");
    }
}

#[test]
fn pi2_generator_counts() {
    for (t, _) in POSITIVE_ROOTS {
        let p = pi2(t);
        let n = t.rank();
        // a, a† for each of the n−1 arrows, one loop per vertex.
        assert_eq!((p.num_objects(), p.num_generators()), (n, 3 * n - 2), "{t}");
    }
}

/// Triangular grid of side `s = n + 1` with its corners removed.
fn grid_census(n: usize) -> (usize, usize, usize, usize, usize) {
    let s = n + 1;
    let vertices = (s + 1) * (s + 2) / 2 - 3;
    let arrows = 3 * s * (s + 1) / 2 - 6;
    let cells = s * s - 3;
    (vertices, arrows, 3 * n, 3 * (n - 1), cells)
}

#[test]
fn type_a_triangles_match_grid_census() {
    for n in 1..=6 {
        let expect = grid_census(n);
        for (name, tq) in [("ar", triangle_qp(A(n)).unwrap()), ("grid", triangle_qp_grid(n).unwrap())] {
            let x = &tq.qp;
            let got = (
                x.quiver.num_vertices(),
                x.quiver.num_arrows(),
                x.frozen_vertices.len(),
                x.frozen_arrows.len(),
                x.potential.len(),
            );
            assert_eq!(got, expect, "A{n} {name}");
        }
    }
    assert_eq!(grid_census(3), (12, 24, 9, 6, 13));
}

#[test]
fn fan_triangulation_counts() {
    for m in 3..=7 {
        let (g, d) = polygon_ribbon(m).unwrap();
        let inv = ribbon_invariants(&g).unwrap();
        assert_eq!((inv.genus, inv.boundary_components, inv.marked_points), (0, 1, m));
        let (triangles, internal) = (m - 2, m - 3);
        assert_eq!(g.vertices.len(), triangles);
        assert_eq!(g.internal_edges().len(), internal);
        for n in 1..=3 {
            let per_triangle = 2 * n + n * (n + 1) / 2;
            let s = surface_qp(&g, &d, A(n)).unwrap();
            assert_eq!(s.qp.quiver.num_vertices(), triangles * per_triangle - internal * n, "m={m} A{n}");
            assert_eq!(s.qp.frozen_vertices.len(), m * n, "m={m} A{n}");
            assert_eq!(s.qp.frozen_arrows.len(), m * (n - 1), "m={m} A{n}");
        }
        // Each gluing of two A₃ triangles removes the four arrows along the seam.
        let s = surface_qp(&g, &d, A(3)).unwrap();
        assert_eq!(s.qp.quiver.num_arrows(), 24 * triangles - 4 * internal, "m={m}");
    }
}
