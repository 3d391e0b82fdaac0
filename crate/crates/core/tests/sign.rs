use hocalc_core::sign::{complement, index_family, k_subsets, sgn, IndexSet};
use proptest::prelude::*;

fn set(v: &[usize]) -> IndexSet {
    IndexSet::new(v.iter().copied())
}

/// Parity of the permutation taking the concatenation `⟨I∖J⟩⟨J∖I⟩` to sorted
/// order, by counting cycles.
fn oracle(i: &IndexSet, j: &IndexSet) -> i8 {
    let a: Vec<usize> = i
        .as_slice()
        .iter()
        .copied()
        .filter(|x| !j.contains(*x))
        .collect();
    let b: Vec<usize> = j
        .as_slice()
        .iter()
        .copied()
        .filter(|x| !i.contains(*x))
        .collect();
    let word: Vec<usize> = a.into_iter().chain(b).collect();
    let mut sorted = word.clone();
    sorted.sort();
    let perm: Vec<usize> = word
        .iter()
        .map(|x| sorted.binary_search(x).unwrap())
        .collect();
    let mut seen = vec![false; perm.len()];
    let mut even_cycles = 0;
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        if len % 2 == 0 {
            even_cycles += 1;
        }
    }
    if even_cycles % 2 == 0 {
        1
    } else {
        -1
    }
}

fn all_subsets(m: u64) -> Vec<IndexSet> {
    (0..1u64 << m).map(IndexSet::from_mask).collect()
}

#[test]
fn worked_values() {
    assert_eq!(sgn(&set(&[2, 4]), &set(&[1, 3, 5])), -1);
    assert_eq!(sgn(&set(&[1, 5]), &set(&[0, 2, 7])), -1);
    assert_eq!(sgn(&set(&[1, 3, 5, 6]), &set(&[0, 2, 3, 6, 7])), -1);
    assert_eq!(sgn(&IndexSet::empty(), &IndexSet::empty()), 1);
}

#[test]
fn agrees_with_cycle_count() {
    let subsets = all_subsets(6);
    for i in &subsets {
        for j in &subsets {
            assert_eq!(sgn(i, j), oracle(i, j), "sgn({i}, {j})");
        }
    }
}

#[test]
fn transposition_law() {
    let subsets = all_subsets(8);
    for i in &subsets {
        for j in &subsets {
            let k = i.difference(j).len();
            let l = j.difference(i).len();
            let sign = if (k * l) % 2 == 0 { 1 } else { -1 };
            assert_eq!(sgn(i, j), sign * sgn(j, i));
        }
    }
}

/// The law needs `J` disjoint from `I′ ⊔ I″`; overlaps are cancelled before
/// counting, which breaks multiplicativity.
#[test]
fn disjoint_union_law() {
    let subsets = all_subsets(8);
    let mut cases = 0;
    for a in &subsets {
        for b in subsets.iter().filter(|b| a.is_disjoint(b)) {
            let ab = a.union(b);
            for j in subsets.iter().filter(|j| ab.is_disjoint(j)) {
                assert_eq!(sgn(&ab, j), sgn(a, j) * sgn(b, j), "{a} {b} {j}");
                cases += 1;
            }
        }
    }
    assert_eq!(cases, 4usize.pow(8));
}

#[test]
fn disjoint_union_law_fails_on_overlaps() {
    let (a, b, j) = (set(&[0]), set(&[1]), set(&[0]));
    assert_eq!(sgn(&a.union(&b), &j), 1);
    assert_eq!(sgn(&a, &j) * sgn(&b, &j), -1);
}

#[test]
fn shift_adjoin_law() {
    let subsets = all_subsets(7);
    for k in &subsets {
        let k_hat = k.shifted(1).union(&set(&[0]));
        for l in &subsets {
            assert_eq!(sgn(&k_hat, &l.shifted(1)), sgn(k, l));
        }
    }
}

#[test]
fn complements_and_families() {
    assert_eq!(complement(&set(&[1]), 4).unwrap(), set(&[0, 2]));
    assert!(complement(&set(&[3]), 4).is_err());
    for n in 2..=9usize {
        for k in 0..n - 1 {
            let family = index_family(k, n).unwrap();
            let all = k_subsets(n - 1, k).len();
            let expected = if 2 * k == n - 1 { all / 2 } else { all };
            assert_eq!(family.sets.len(), expected, "k={k} n={n}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    /// Trading `a ∈ I` for `a+1 ∈ J` with their neighbours fixed flips the sign.
    #[test]
    fn adjacent_swap_law(mi in 0u64..256, mj in 0u64..256, a in 0usize..7) {
        let i = IndexSet::from_mask(mi & !(1 << a) & !(1 << (a + 1)));
        let j = IndexSet::from_mask(mj & !(1 << a) & !(1 << (a + 1)));
        let i1 = i.union(&set(&[a]));
        let j1 = j.union(&set(&[a + 1]));
        let i2 = i.union(&set(&[a + 1]));
        let j2 = j.union(&set(&[a]));
        prop_assert_eq!(sgn(&i1, &j1), -sgn(&i2, &j2));
    }
}
