mod support;

use hocalc_core::simplicial::{enumerate_classes, DegeneracySet, FaceWord, Pushed};
use proptest::prelude::*;
use support::*;

/// Ordinal map of `d_{i_k} ∘ ⋯ ∘ d_{i_n}`: `[k−1] → [n]`.
fn word_map(w: &[usize], k: usize) -> Vec<usize> {
    let n = k + w.len() - 1;
    let mut f = identity(n);
    for (offset, &i) in w.iter().enumerate().rev() {
        let t = k + offset;
        debug_assert_eq!(f.len(), t + 1);
        f = compose(&f, &coface(i, t));
    }
    f
}

fn sets_up_to(max: usize, bound: usize) -> Vec<DegeneracySet> {
    (0u32..(1 << bound))
        .filter(|m| m.count_ones() as usize <= max)
        .map(|m| DegeneracySet::new((0..bound).filter(|i| m >> i & 1 == 1)))
        .collect()
}

#[test]
fn push_face_agrees_with_ordinal_maps() {
    let mut checked = 0;
    for level in 0..=3usize {
        for set in sets_up_to(4, 8) {
            if !set.is_valid_on(level) {
                continue;
            }
            let top = level + set.len();
            for r in 0..=top.min(6) {
                if top == 0 {
                    continue;
                }
                let lhs = compose(&degeneracy_map(set.as_slice(), level), &face_map(r, top));
                let rhs = match set.push_face(r) {
                    Pushed::Cancelled(rest) => {
                        assert_eq!(rest.len() + 1, set.len());
                        degeneracy_map(rest.as_slice(), level)
                    }
                    Pushed::Passed(rest, r2) => {
                        assert_eq!(rest.len(), set.len());
                        assert!(level >= 1 && r2 <= level);
                        assert!(rest.is_valid_on(level - 1));
                        compose(
                            &face_map(r2, level),
                            &degeneracy_map(rest.as_slice(), level - 1),
                        )
                    }
                };
                assert_eq!(lhs, rhs, "d{r} s{set} at level {level}");
                checked += 1;
            }
        }
    }
    assert!(checked > 500);
}

#[test]
fn composition_of_degeneracies_agrees_with_ordinal_maps() {
    for level in 0..=2usize {
        for inner in sets_up_to(3, 5) {
            if !inner.is_valid_on(level) {
                continue;
            }
            let mid = level + inner.len();
            for outer in sets_up_to(2, 7) {
                if !outer.is_valid_on(mid) {
                    continue;
                }
                let both = inner.then(&outer);
                assert!(both.is_valid_on(level));
                let lhs = compose(
                    &degeneracy_map(inner.as_slice(), level),
                    &degeneracy_map(outer.as_slice(), mid),
                );
                assert_eq!(
                    lhs,
                    degeneracy_map(both.as_slice(), level),
                    "{outer} after {inner}"
                );
            }
        }
    }
}

#[test]
fn class_counts_are_binomial() {
    for n in 1..=6usize {
        for k in 1..=n {
            let classes = enumerate_classes(k, n).unwrap();
            assert_eq!(
                classes.len() as u64,
                binomial(n as u64 + 1, k as u64),
                "D({k},{n})"
            );
            assert!(classes.iter().all(FaceWord::is_weakly_decreasing));
        }
    }
}

#[test]
fn normal_form_is_confluent() {
    for n in 1..=7usize {
        for k in 1..=n {
            let classes = move_classes(k, n);
            let canonical = enumerate_classes(k, n).unwrap();
            assert_eq!(classes.len(), canonical.len(), "D({k},{n})");
            for class in &classes {
                let forms: std::collections::BTreeSet<FaceWord> = class
                    .iter()
                    .map(|w| FaceWord::new(k, w.clone()).unwrap().normalize())
                    .collect();
                assert_eq!(forms.len(), 1, "class of {:?}", class.first());
                let form = forms.into_iter().next().unwrap();
                assert!(class.contains(form.indices()));
                assert!(canonical.contains(&form));
            }
        }
    }
}

#[test]
fn normal_form_preserves_the_operator() {
    for n in 1..=6usize {
        for k in 1..=n {
            for w in all_words(k, n) {
                let form = FaceWord::new(k, w.clone()).unwrap().normalize();
                assert_eq!(word_map(&w, k), word_map(form.indices(), k), "{w:?}");
            }
        }
    }
}

#[test]
fn out_of_range_word_is_rejected() {
    assert!(FaceWord::new(1, vec![2, 0]).is_err());
    assert!(enumerate_classes(0, 3).is_err());
    assert!(enumerate_classes(4, 3).is_err());
}

fn arb_word() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (1usize..5, 1usize..6).prop_flat_map(|(k, len)| {
        let entries: Vec<_> = (0..len).map(|t| 0..=(k + t)).collect();
        (Just(k), entries)
    })
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn normalize_is_idempotent((k, w) in arb_word()) {
        let form = FaceWord::new(k, w).unwrap().normalize();
        prop_assert!(form.is_weakly_decreasing());
        prop_assert_eq!(form.normalize(), form.clone());
    }

    #[test]
    fn class_members_share_a_form((k, w) in arb_word()) {
        let word = FaceWord::new(k, w).unwrap();
        let form = word.normalize();
        for m in word.class_members() {
            prop_assert_eq!(m.normalize(), form.clone());
        }
    }

    #[test]
    fn display_round_trips((k, w) in arb_word()) {
        let word = FaceWord::new(k, w).unwrap().normalize();
        let json = serde_json::to_string(&word).unwrap();
        let back: FaceWord = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back.indices(), word.indices());
    }
}
