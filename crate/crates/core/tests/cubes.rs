mod support;

use hocalc_core::cubes::{
    boundary_split, euler, vertex_stats, wedge_face, wedge_identity_failures, wedge_levels,
    CubeVertex,
};
use support::binomial;

fn minus_one_pow(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[test]
fn worked_vertex() {
    let s = vertex_stats(&"11101010".parse().unwrap());
    assert_eq!(
        (s.ell, s.lambda, s.remainder.to_string()),
        (3, 5, "1010".to_string())
    );
}

#[test]
fn lambda_bookkeeping() {
    for n in 1..=9 {
        for j in CubeVertex::all(n) {
            let text = j.to_string();
            let s = vertex_stats(&j);
            let ell = text.find('0').unwrap_or(n);
            assert_eq!(s.ell, ell, "{text}");
            assert_eq!(s.lambda, text.matches('1').count());
            if ell == n {
                assert!(s.flagged && s.remainder.is_empty());
            } else {
                assert!(!s.flagged);
                assert_eq!(s.remainder.to_string(), text[ell + 1..]);
                assert_eq!(s.lambda, s.ell + s.remainder.ones(), "{text}");
            }
        }
    }
}

#[test]
fn level_counts_are_binomial() {
    for n in 3..=8usize {
        let levels = wedge_levels(n).unwrap();
        assert_eq!(levels.len(), n + 1);
        for l in &levels {
            let lambda = (n as isize - l.level - 1) as u64;
            assert_eq!(
                l.summands.len() as u64,
                binomial(n as u64, lambda),
                "n={n} k={}",
                l.level
            );
            assert!(l.summands.iter().all(|j| j.ones() as u64 == lambda));
            assert_eq!(l.cofiber, l.level == 1);
        }
    }
}

#[test]
fn faces_lower_the_level() {
    for n in 3..=6usize {
        let levels = wedge_levels(n).unwrap();
        for l in levels.iter().filter(|l| l.level >= 1) {
            let below = &levels
                .iter()
                .find(|m| m.level == l.level - 1)
                .unwrap()
                .summands;
            for j in &l.summands {
                for i in 0..=l.level as usize {
                    assert!(below.contains(&wedge_face(j, i).unwrap()));
                }
            }
        }
    }
}

#[test]
fn simplicial_identities_hold() {
    for n in 3..=6 {
        assert!(wedge_identity_failures(n).unwrap().is_empty(), "n={n}");
    }
    assert!(wedge_levels(2).is_err());
}

#[test]
fn boundary_pieces() {
    for n in 0..=5 {
        for eta in CubeVertex::all(n) {
            let r = boundary_split(&eta);
            let lambda = eta.ones();
            assert_eq!(r.dim(), lambda);
            let mut union: Vec<_> = r.minus.iter().chain(&r.plus).cloned().collect();
            union.sort();
            union.dedup();
            let mut boundary = r.boundary();
            boundary.sort();
            assert_eq!(union, boundary, "{eta}");
            if lambda == 0 {
                assert!(r.minus.is_empty() && r.plus.is_empty());
                continue;
            }
            // ∂L is a (λ−1)-sphere and each half is a ball
            assert_eq!(euler(&boundary), 1 + minus_one_pow(lambda - 1), "{eta}");
            assert_eq!(euler(&r.minus), 1);
            assert_eq!(euler(&r.plus), 1);
            assert_eq!(r.quotient_euler(), minus_one_pow(lambda - 1), "{eta}");
        }
    }
}
