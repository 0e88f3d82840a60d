use proptest::prelude::*;

use schober_forge::clustercalc::{check_sum_identity, min_cofiber, min_fiber, shift_object, ClusterObject};
use schober_forge::dgpres::{check_d_squared, d_extend};
use schober_forge::dynkin::DynkinType;
use schober_forge::ginzburg::ginzburg;
use schober_forge::linalg::q;
use schober_forge::qcore::random::{random_ice_qp, RandomShape};
use schober_forge::qcore::{export_json, import_json, necklace_sum, quiver_isomorphic, CyclicWord, Path, PathSum};
use schober_forge::surface::{flip, polygon_ribbon, ribbon_invariants, RibbonGraph};

fn any_type() -> impl Strategy<Value = DynkinType> {
    prop_oneof![
        (1usize..=8).prop_map(DynkinType::A),
        (4usize..=8).prop_map(DynkinType::D),
        (6usize..=8).prop_map(DynkinType::E),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ginzburg_differential_squares_to_zero(seed in any::<u64>()) {
        let x = random_ice_qp(seed, RandomShape::default());
        let g = ginzburg(&x).unwrap();
        let r = check_d_squared(&g.dg).unwrap();
        prop_assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn necklace_sum_vanishes(seed in any::<u64>()) {
        let x = random_ice_qp(seed, RandomShape { max_terms: 10, max_cycle_len: 6, ..RandomShape::default() });
        prop_assert!(necklace_sum(&x.quiver, &x.potential).unwrap().is_zero());
    }

    #[test]
    fn json_round_trip_is_identity(seed in any::<u64>()) {
        let x = random_ice_qp(seed, RandomShape::default());
        let bytes = export_json(&x).unwrap();
        let back = import_json(&bytes).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(export_json(&back).unwrap(), bytes);
    }

    #[test]
    fn renamed_copy_is_isomorphic(seed in any::<u64>()) {
        let x = random_ice_qp(seed, RandomShape { max_vertices: 5, max_arrows: 8, ..RandomShape::default() });
        let y = x.prefixed("copy:");
        prop_assert!(quiver_isomorphic(&x, &y, true, false).is_some());
    }

    #[test]
    fn cyclic_words_forget_rotation(word in prop::collection::vec("[a-e]", 1..7), k in 0usize..7) {
        let mut rotated = word.clone();
        rotated.rotate_left(k % word.len());
        prop_assert_eq!(CyclicWord::canonical(word), CyclicWord::canonical(rotated));
    }

    #[test]
    fn leibniz_on_generator_pairs(seed in any::<u64>(), pick in any::<prop::sample::Index>(), pick2 in any::<prop::sample::Index>()) {
        let x = random_ice_qp(seed, RandomShape::default());
        let dg = ginzburg(&x).unwrap().dg;
        let gq = dg.graded();
        let gens: Vec<_> = gq.arrows().cloned().collect();
        prop_assume!(!gens.is_empty());
        let b = pick.get(&gens);
        let follow: Vec<_> = gens.iter().filter(|a| a.source == b.target).collect();
        prop_assume!(!follow.is_empty());
        let a = pick2.get(&follow);
        // `a ∘ b`: `b` first.
        let pa = PathSum::term(Path::arrow(gq, &a.id).unwrap(), q(2));
        let pb = PathSum::term(Path::arrow(gq, &b.id).unwrap(), q(-3));
        let lhs = d_extend(&dg, &pa.compose(&pb).unwrap()).unwrap();
        let sign = if a.degree % 2 == 0 { q(1) } else { q(-1) };
        let mut rhs = d_extend(&dg, &pa).unwrap().compose(&pb).unwrap();
        rhs.add_scaled(&pa.compose(&d_extend(&dg, &pb).unwrap()).unwrap(), &sign);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn flips_preserve_surface_invariants(m in 4usize..=9, picks in prop::collection::vec(any::<prop::sample::Index>(), 1..20)) {
        let (mut g, d) = polygon_ribbon(m).unwrap();
        let before = ribbon_invariants(&g).unwrap();
        for p in picks {
            let internal: Vec<String> = g.internal_edges().into_iter().map(|e| e.1).collect();
            g = flip(&g, p.get(&internal)).unwrap();
            prop_assert_eq!(&ribbon_invariants(&g).unwrap(), &before);
        }
        let (g2, d2) = RibbonGraph::from_json(&g.to_json(&d).unwrap()).unwrap();
        prop_assert_eq!(g2, g);
        prop_assert_eq!(d2, d);
    }

    #[test]
    fn shift_is_an_involution(t in any_type(), labels in prop::collection::vec(1usize..=8, 0..5)) {
        let labels: Vec<usize> = labels.into_iter().filter(|&l| l <= t.rank()).collect();
        let x = ClusterObject::from_labels(labels);
        let once = shift_object(t, &x).unwrap();
        prop_assert_eq!(shift_object(t, &once).unwrap(), x);
    }

    #[test]
    fn fiber_is_shifted_cofiber(n in 2usize..=8, i in 1usize..=8, j in 1usize..=8) {
        prop_assume!(i <= n && j <= n && i != j);
        let cof = min_cofiber(n, i, j).unwrap();
        let fib = min_fiber(n, i, j).unwrap();
        prop_assert_eq!(shift_object(DynkinType::A(n), &fib).unwrap(), cof.clone());
        let k = cof.as_indecomposable().unwrap();
        prop_assert!((1..=n).contains(&k));
        let total = i + (n + 1 - j) + k;
        prop_assert!(total == n + 1 || total == 2 * n + 2);
    }
}

#[test]
fn sum_identity_exhaustive() {
    for n in 2..=8 {
        let r = check_sum_identity(n).unwrap();
        assert_eq!(r.rows.len(), n * (n - 1));
        assert!(r.passed(), "n = {n}");
    }
}
