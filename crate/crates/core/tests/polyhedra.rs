use std::collections::BTreeMap;
use std::time::Instant;

use hocalc_core::polyhedra::{build_face_polyhedron, is_permutohedron, CellComplex};
use hocalc_core::simplicial::{enumerate_classes, FaceWord};

fn poly(entries: &[usize]) -> CellComplex {
    build_face_polyhedron(&FaceWord::from_entries(entries.to_vec()).unwrap()).unwrap()
}

fn top_word(d: usize) -> Vec<usize> {
    (0..=d).rev().collect()
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[test]
fn low_f_vectors() {
    assert_eq!(poly(&[1, 0]).f_vector(), vec![2, 1]);
    assert_eq!(poly(&[2, 1, 0]).f_vector(), vec![6, 6, 1]);
    assert_eq!(poly(&[3, 2, 1, 0]).f_vector(), vec![24, 36, 14, 1]);
    assert_eq!(
        poly(&[4, 3, 2, 1, 0]).f_vector(),
        vec![120, 240, 150, 30, 1]
    );
}

#[test]
fn truncated_cuboctahedron_census() {
    let census = poly(&[3, 2, 1, 0]).facet_census();
    assert_eq!(census, BTreeMap::from([(4, 6), (6, 8)]));
}

#[test]
fn vertices_simplicity_and_homology() {
    let start = Instant::now();
    for d in 1..=4 {
        let c = poly(&top_word(d));
        assert_eq!(c.vertex_count(), factorial(d + 1), "d={d}");
        assert!(
            c.vertex_facet_degrees().iter().all(|&k| k == d),
            "simple, d={d}"
        );
        c.check_boundary_squares_to_zero().unwrap();
        let h = c.boundary_homology(d - 1).unwrap();
        for g in &h {
            assert!(g.torsion.is_empty(), "d={d} {g:?}");
            let expected = usize::from(g.degree == d - 1);
            assert_eq!(g.rank, expected, "H̃_{} for d={d}", g.degree);
        }
        let chi = c.euler_characteristic(d - 1);
        assert_eq!(chi, if d % 2 == 0 { 0 } else { 2 }, "d={d}");
    }
    assert!(start.elapsed().as_secs_f64() < 10.0);
}

#[test]
fn every_class_gives_a_permutohedron() {
    for n in 1..=4usize {
        for k in 1..=n {
            let d = n - k;
            for w in enumerate_classes(k, n).unwrap() {
                let c = build_face_polyhedron(&w).unwrap();
                assert_eq!(c.dimension(), d, "{w}");
                assert!(is_permutohedron(&c, d), "{w}");
            }
        }
    }
}

#[test]
fn equivalent_words_give_the_same_complex() {
    let a = FaceWord::new(1, vec![0, 2]).unwrap();
    let b = a.normalize();
    assert_ne!(a, b);
    assert_eq!(
        build_face_polyhedron(&a).unwrap().f_vector(),
        build_face_polyhedron(&b).unwrap().f_vector()
    );
}
