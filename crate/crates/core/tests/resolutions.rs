mod support;

use hocalc_core::resolution::chains::{theta, whitehead_product_chain, ChainRegistry};
use hocalc_core::resolution::pushforward::{pushforward, MapTable};
use hocalc_core::resolution::verify::{cp2_chain, transposition_pairing, verify_gamma};
use hocalc_core::resolution::{
    cpn_resolution, gamma, gamma_terms, is_cycle, suspension_resolution, w2, w3, ChainElement,
    ResolutionRegistry,
};
use hocalc_core::whitehead::rewrite::{normalize_antisymmetry, RelationTable};
use hocalc_core::whitehead::{linear, parse_expression, Base};
use support::GAMMA_GOLDEN;

#[test]
fn gamma_matches_reference_expansions_term_for_term() {
    for (n, text) in GAMMA_GOLDEN {
        let reference = parse_expression(text).unwrap();
        let built = gamma(n).unwrap();
        assert_eq!(built.expr, reference, "γ_{n}");
        assert_eq!(built.expr.len(), 1 << (n - 2));
        assert_eq!(built.level, n - 1);
        assert_eq!(built.pi_degree(), Some(n as u32 + 2));
    }
}

#[test]
fn gamma_term_counts() {
    for n in 2..=9usize {
        assert_eq!(gamma_terms(n).unwrap().len(), 1 << (n - 2), "γ_{n}");
    }
    assert!(gamma(1).is_err());
}

#[test]
fn gammas_are_cycles() {
    for n in 2..=7 {
        let cert = verify_gamma(n).unwrap();
        assert!(cert.verified(), "γ_{n}: {:?}", cert.faces);
        assert_eq!(cert.faces.len(), n);
    }
}

#[test]
fn transposition_pairs_cancel() {
    for n in 2..=8 {
        for r in 1..n {
            let report = transposition_pairing(n, r).unwrap();
            assert!(report.ok(), "γ_{n}, face {r}: {:?}", report.unpaired);
        }
    }
}

#[test]
fn resolutions_satisfy_simplicial_identities() {
    for n in 1..=4 {
        let r = cpn_resolution(n).unwrap();
        assert!(
            r.check_simplicial_identities(6).unwrap().is_empty(),
            "cpn:{n}"
        );
    }
    for spheres in [&[2][..], &[2, 3], &[3, 3]] {
        for k in 1..=3 {
            let r = suspension_resolution(spheres, k).unwrap();
            assert!(
                r.check_simplicial_identities(6).unwrap().is_empty(),
                "{}",
                r.name()
            );
        }
    }
}

#[test]
fn suspension_cycles() {
    for (p, q) in [(2, 2), (2, 3), (3, 4), (5, 2)] {
        let r = suspension_resolution(&[p, q], 1).unwrap();
        assert!(is_cycle(&w2(p, q).unwrap(), &r).unwrap().verified());
        let r3 = suspension_resolution(&[p, q], 1).unwrap();
        let c = w3(p, q).unwrap();
        assert_eq!(c.expr.len(), 6);
        assert!(is_cycle(&c, &r3).unwrap().verified(), "w3({p},{q})");
    }
}

#[test]
fn square_chain_is_not_a_cycle() {
    let r = suspension_resolution(&[2], 1).unwrap();
    let c = ChainElement::new(2, parse_expression("[s0 i2, s1 i2]").unwrap());
    let faces: Vec<String> = c
        .faces(&r)
        .unwrap()
        .iter()
        .map(|f| f.expr.to_string())
        .collect();
    assert_eq!(faces, vec!["0", "[i2, i2]", "0"]);
    assert!(!is_cycle(&c, &r).unwrap().verified());
}

#[test]
fn product_chain_on_one_even_sphere_vanishes() {
    for k in [2, 4, 6] {
        let i = Base::iota(k);
        let c = normalize_antisymmetry(&whitehead_product_chain(&i, &i).expr);
        assert!(c.is_zero(), "k={k}: {c}");
    }
    for k in [3, 5] {
        let i = Base::iota(k);
        let c = normalize_antisymmetry(&whitehead_product_chain(&i, &i).expr);
        assert_eq!(c.terms().len(), 1, "k={k}");
        assert_eq!(c.terms()[0].coefficient, 2);
    }
}

#[test]
fn cp2_reduction_steps() {
    let table = RelationTable::default();
    let steps: Vec<String> = cp2_chain(&table)
        .unwrap()
        .into_iter()
        .map(|s| s.expr.to_string())
        .collect();
    assert_eq!(
        steps,
        vec!["[v2, i2]", "[i2, i2] o eta3", "2*v2 o eta3", "0"]
    );
}

#[test]
fn theta_faces_at_the_ends_vanish() {
    let r = suspension_resolution(&[2], 1).unwrap();
    for k in 1..=2 {
        let faces = theta(k).unwrap().faces(&r).unwrap();
        assert!(faces[0].expr.is_zero() && faces[3].expr.is_zero(), "θ_{k}");
    }
}

#[test]
fn pushforward_of_the_sigma_class() {
    let mut table = MapTable::new();
    table
        .insert(Base::iota(4), parse_expression("[i3, s0 i2]").unwrap())
        .unwrap();
    let c = ChainElement::new(2, parse_expression("[s0 i4, s1 i4] o eta^3").unwrap());
    let image = pushforward(&table, &c).unwrap();
    let reference = parse_expression(
        "[[[s1 i3, s1 s0 i2], s1 s0 i2], s0 i3] o eta^3 + [[[s1 i3, s1 s0 i2], s0 i3], s1 s0 i2] o eta^3",
    )
    .unwrap();
    // the reference right-hand side agrees up to one global sign
    assert_eq!(linear::relative_sign(&image.expr, &reference), Some(-1));
}

#[test]
fn registries_resolve_names() {
    let chains = ChainRegistry::default();
    let named = chains.build("gamma:4").unwrap();
    assert_eq!(named.resolution, "cpn:4");
    let r = ResolutionRegistry::default()
        .build(&named.resolution)
        .unwrap();
    assert!(is_cycle(&named.chain, &r).unwrap().verified());
    assert!(chains.build("nope:1").is_err());
    assert!(chains.build("w2:2").is_err());
}

#[test]
fn hall_basis_counts_follow_witt() {
    use hocalc_core::resolution::search::hilton_basis;
    for q in 1..=3usize {
        let degrees = vec![2; q];
        let basis = hilton_basis(&degrees, 6);
        for w in 1..=6 {
            let count = basis.iter().filter(|b| b.weight == w).count() as u64;
            assert_eq!(count, support::witt(q as u64, w as u64), "q={q} w={w}");
        }
    }
}
