//! Independent oracles for the integration tests. None of these call into
//! the library's own algorithms.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Coface `δ_i: [n−1] → [n]` as its list of values.
pub fn coface(i: usize, n: usize) -> Vec<usize> {
    (0..n).map(|x| if x < i { x } else { x + 1 }).collect()
}

/// Codegeneracy `σ_j: [n+1] → [n]`.
pub fn codegeneracy(j: usize, n: usize) -> Vec<usize> {
    (0..n + 2).map(|x| if x <= j { x } else { x - 1 }).collect()
}

/// `f ∘ g`.
pub fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x]).collect()
}

pub fn identity(n: usize) -> Vec<usize> {
    (0..=n).collect()
}

/// The ordinal map of `s_{i_m} ⋯ s_{i_1}` (ascending `I`) applied at
/// simplicial level `level`: `σ_{i_1} ∘ ⋯ ∘ σ_{i_m}: [level+m] → [level]`.
pub fn degeneracy_map(set: &[usize], level: usize) -> Vec<usize> {
    let mut f = identity(level);
    for (dim, &i) in (level..).zip(set) {
        // s_i applied at dimension `dim` contributes σ_i: [dim+1] → [dim] on the right
        f = compose(&f, &codegeneracy(i, dim));
    }
    f
}

/// The ordinal map of `d_r` applied at level `dim` (so `δ_r: [dim−1] → [dim]`).
pub fn face_map(r: usize, dim: usize) -> Vec<usize> {
    coface(r, dim)
}

/// Whether a word `(i_k, …, i_n)` lies in `D(k, n)`.
pub fn in_d(word: &[usize], k: usize) -> bool {
    word.iter().enumerate().all(|(t, &i)| i <= k + t)
}

/// All of `D(k, n)`.
pub fn all_words(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for t in k..=n {
        out = out
            .into_iter()
            .flat_map(|w: Vec<usize>| {
                (0..=t).map(move |i| {
                    let mut w = w.clone();
                    w.push(i);
                    w
                })
            })
            .collect();
    }
    out
}

/// Both directions of the move `(…, a, b, …) ∼ (…, b−1, a, …)` for `a < b`.
pub fn moves(word: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for j in 0..word.len().saturating_sub(1) {
        let (a, b) = (word[j], word[j + 1]);
        let mut w = word.to_vec();
        if a < b {
            w[j] = b - 1;
            w[j + 1] = a;
        } else {
            w[j] = b;
            w[j + 1] = a + 1;
        }
        if in_d(&w, k) {
            out.push(w);
        }
    }
    out
}

/// Equivalence classes of `D(k, n)` by breadth-first closure under moves.
pub fn move_classes(k: usize, n: usize) -> Vec<BTreeSet<Vec<usize>>> {
    let mut seen = BTreeSet::new();
    let mut classes = Vec::new();
    for w in all_words(k, n) {
        if seen.contains(&w) {
            continue;
        }
        let mut class = BTreeSet::new();
        let mut queue = VecDeque::from([w]);
        while let Some(x) = queue.pop_front() {
            if !class.insert(x.clone()) {
                continue;
            }
            for y in moves(&x, k) {
                if !class.contains(&y) {
                    queue.push_back(y);
                }
            }
        }
        seen.extend(class.iter().cloned());
        classes.push(class);
    }
    classes
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Witt's count of basic products of weight `w` on `q` letters.
pub fn witt(q: u64, w: u64) -> u64 {
    let total: i64 = (1..=w)
        .filter(|d| w.is_multiple_of(*d))
        .map(|d| mobius(d) * (q as i64).pow((w / d) as u32))
        .sum();
    (total / w as i64) as u64
}

/// Dimension in each degree of a polynomial algebra on generators of the
/// given degrees, by counting exponent vectors directly.
pub fn partition_counts(degrees: &[u32], maxdeg: u32) -> Vec<u64> {
    fn go(degrees: &[u32], remaining: u32) -> u64 {
        match degrees.split_first() {
            None => u64::from(remaining == 0),
            Some((&d, rest)) => (0..=remaining / d)
                .map(|e| go(rest, remaining - e * d))
                .sum(),
        }
    }
    (0..=maxdeg).map(|t| go(degrees, t)).collect()
}

/// Polynomials over `F₂` as sets of exponent vectors.
pub type F2Poly = BTreeSet<Vec<u32>>;

fn toggle(p: &mut F2Poly, m: Vec<u32>) {
    if !p.remove(&m) {
        p.insert(m);
    }
}

/// `Sq^i` by the Cartan formula on each monomial, with
/// `Sq^j(x^a) = binom(a, j) x^{a+j}` for degree-one `x`.
pub fn sq(i: u32, p: &F2Poly) -> F2Poly {
    let mut out = F2Poly::new();
    for m in p {
        let mut partial: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
        partial.insert(Vec::new(), 0);
        for &a in m {
            let mut next = BTreeMap::new();
            for (prefix, used) in &partial {
                for j in 0..=a.min(i - used) {
                    if binomial(u64::from(a), u64::from(j)) % 2 == 1 {
                        let mut v = prefix.clone();
                        v.push(a + j);
                        *next.entry(v).or_insert(0) = used + j;
                    }
                }
            }
            partial = next;
        }
        for (v, used) in partial {
            if used == i {
                toggle(&mut out, v);
            }
        }
    }
    out
}

/// `Sq^I(x₁ ⋯ x_n)` for `I = (i₀, …, i_s)`, applied right to left.
pub fn sq_word_on_product(word: &[u32], n: usize) -> F2Poly {
    let mut p = F2Poly::from([vec![1; n]]);
    for &i in word.iter().rev() {
        p = sq(i, &p);
    }
    p
}

/// Reference expansions of `γ₃, …, γ₆`, transcribed into expression syntax.
pub const GAMMA_GOLDEN: [(usize, &str); 4] = [
    (3, "[i4, s1 s0 i2] - [s0 i3, s1 i3]"),
    (
        4,
        "[i5, s2 s1 s0 i2] + [s0 i4, s2 s1 i3] - [s1 i4, s2 s0 i3] + [s2 i4, s1 s0 i3]",
    ),
    (
        5,
        "[i6, s3 s2 s1 s0 i2] - [s0 i5, s3 s2 s1 i3] + [s1 i5, s3 s2 s0 i3] \
         - [s2 i5, s3 s1 s0 i3] + [s3 i5, s2 s1 s0 i3] + [s1 s0 i4, s3 s2 i4] \
         - [s2 s0 i4, s3 s1 i4] + [s3 s0 i4, s2 s1 i4]",
    ),
    (
        6,
        "[i7, s4 s3 s2 s1 s0 i2] + [s0 i6, s4 s3 s2 s1 i3] - [s1 i6, s4 s3 s2 s0 i3] \
         + [s2 i6, s4 s3 s1 s0 i3] - [s3 i6, s4 s2 s1 s0 i3] + [s4 i6, s3 s2 s1 s0 i3] \
         + [s1 s0 i5, s4 s3 s2 i4] - [s2 s0 i5, s4 s3 s1 i4] + [s3 s0 i5, s4 s2 s1 i4] \
         - [s4 s0 i5, s3 s2 s1 i4] + [s2 s1 i5, s4 s3 s0 i4] - [s3 s1 i5, s4 s2 s0 i4] \
         + [s4 s1 i5, s3 s2 s0 i4] + [s3 s2 i5, s4 s1 s0 i4] - [s4 s2 i5, s3 s1 s0 i4] \
         + [s4 s3 i5, s2 s1 s0 i4]",
    ),
];
