//! The hand-transcribed A₃ triangle and square fixtures and their reproduction.

use schober_forge::dynkin::DynkinType;
use schober_forge::qcore::{export_json, import_json, quiver_isomorphic};
use schober_forge::surface::{square_check, square_check_with, Identification, TRIANGLE_FIXTURE, SQUARE_FIXTURE};
use schober_forge::triangle::{triangle_qp, triangle_qp_grid};

#[test]
fn fixtures_round_trip_byte_for_byte() {
    for text in [TRIANGLE_FIXTURE, SQUARE_FIXTURE] {
        let x = import_json(text.as_bytes()).unwrap();
        assert_eq!(export_json(&x).unwrap(), text.trim_end().as_bytes());
    }
}

#[test]
fn triangle_fixture_census_and_isomorphism() {
    let fixture = import_json(TRIANGLE_FIXTURE.as_bytes()).unwrap();
    assert_eq!(
        (fixture.quiver.num_vertices(), fixture.quiver.num_arrows(), fixture.frozen_vertices.len(), fixture.frozen_arrows.len()),
        (12, 24, 9, 6)
    );
    for x in [triangle_qp(DynkinType::A(3)).unwrap().qp, triangle_qp_grid(3).unwrap().qp] {
        assert!(quiver_isomorphic(&x, &fixture, false, false).is_some());
        assert!(quiver_isomorphic(&x, &fixture, true, true).is_some());
    }
}

#[test]
fn triangle_fixture_not_matched_by_other_types() {
    let fixture = import_json(TRIANGLE_FIXTURE.as_bytes()).unwrap();
    for t in [DynkinType::A(2), DynkinType::A(4), DynkinType::D(4)] {
        assert!(quiver_isomorphic(&triangle_qp(t).unwrap().qp, &fixture, false, false).is_none(), "{t}");
    }
}

#[test]
fn square_fixture_reproduction() {
    let r = square_check().unwrap();
    assert_eq!((r.vertices, r.frozen_vertices, r.arrows), (21, 12, 44));
    assert!(r.quiver_match);
    assert!(r.potential_witness.is_some());
}

#[test]
fn square_fixture_rejects_swapped_identification() {
    let r = square_check_with(Identification::Swapped).unwrap();
    assert!(!r.passed());
}
