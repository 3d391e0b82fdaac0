//! Composite face and degeneracy operators of a simplicial object.
//!
//! A [`FaceWord`] `(i_k, ..., i_n)` stands for `d_{i_k} ∘ ... ∘ d_{i_n}`, a map
//! from simplicial dimension `n` down to `k - 1`. Two words are equivalent when
//! they compose to the same operator; the canonical representative of a class
//! is its unique weakly decreasing word.
//!
//! A [`DegeneracySet`] `I = {i_1 < ... < i_m}` stands for
//! `s_{i_m} ∘ ... ∘ s_{i_1}`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A composite of face maps `d_{i_k} ∘ ... ∘ d_{i_n}`.
///
/// `start` is the position `k` of the first entry; the entry at position `t`
/// must satisfy `i_t <= t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceWord {
    start: usize,
    indices: Vec<usize>,
}

impl FaceWord {
    pub fn new(start: usize, indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::InvalidWord("face word must be non-empty".into()));
        }
        for (offset, &i) in indices.iter().enumerate() {
            let pos = start + offset;
            if i > pos {
                return Err(Error::InvalidWord(format!(
                    "entry {i} at position {pos} exceeds its bound {pos}"
                )));
            }
        }
        Ok(Self { start, indices })
    }

    /// Builds a word from its entries alone, placing it at the lowest position
    /// that keeps every entry within bounds.
    pub fn from_entries(indices: Vec<usize>) -> Result<Self> {
        let start = indices
            .iter()
            .enumerate()
            .map(|(offset, &i)| i.saturating_sub(offset))
            .max()
            .unwrap_or(0);
        Self::new(start, indices)
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Simplicial dimension of the source, `n`.
    pub fn source_dim(&self) -> usize {
        self.start + self.indices.len() - 1
    }

    /// Simplicial dimension of the target, `k - 1` (may be `-1`).
    pub fn target_dim(&self) -> isize {
        self.start as isize - 1
    }

    /// Dimension of the associated face-map polyhedron.
    pub fn polyhedron_dim(&self) -> usize {
        self.indices.len() - 1
    }

    pub fn is_weakly_decreasing(&self) -> bool {
        self.indices.windows(2).all(|w| w[0] >= w[1])
    }

    /// Applies `(.., a, b, ..) -> (.., b - 1, a, ..)` at every ascending pair
    /// until the word is weakly decreasing.
    pub fn normalize(&self) -> FaceWord {
        let mut w = self.indices.clone();
        // each move removes at least one inversion-like slack, so this halts
        while let Some(j) = (0..w.len().saturating_sub(1)).find(|&j| w[j] < w[j + 1]) {
            let (a, b) = (w[j], w[j + 1]);
            w[j] = b - 1;
            w[j + 1] = a;
        }
        FaceWord {
            start: self.start,
            indices: w,
        }
    }

    /// Words reachable from `self` by one move or one inverse move.
    pub fn neighbours(&self) -> Vec<FaceWord> {
        let mut out = Vec::new();
        for j in 0..self.indices.len().saturating_sub(1) {
            let (a, b) = (self.indices[j], self.indices[j + 1]);
            let mut w = self.indices.clone();
            if a < b {
                w[j] = b - 1;
                w[j + 1] = a;
            } else {
                // inverse of the move that produced (a, b) from (b, a + 1)
                w[j] = b;
                w[j + 1] = a + 1;
            }
            out.push(FaceWord {
                start: self.start,
                indices: w,
            });
        }
        out
    }

    /// Every word equivalent to `self`, sorted.
    pub fn class_members(&self) -> Vec<FaceWord> {
        let mut seen: HashSet<FaceWord> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(self.clone());
        queue.push_back(self.clone());
        while let Some(w) = queue.pop_front() {
            for nb in w.neighbours() {
                if seen.insert(nb.clone()) {
                    queue.push_back(nb);
                }
            }
        }
        let mut members: Vec<_> = seen.into_iter().collect();
        members.sort();
        members
    }

    /// Original indices of `[n]` deleted by the word, in the order the faces
    /// are applied (innermost `d_{i_n}` first).
    pub fn deletion_order(&self) -> Vec<usize> {
        let n = self.source_dim();
        let mut alive: Vec<usize> = (0..=n).collect();
        let mut deleted = Vec::with_capacity(self.indices.len());
        for &i in self.indices.iter().rev() {
            deleted.push(alive.remove(i));
        }
        deleted
    }

    /// Permutation of `0..=d` recording the relative order of the deleted
    /// indices; distinct words of one class get distinct labels.
    pub fn permutation_label(&self) -> Vec<usize> {
        let order = self.deletion_order();
        let mut sorted = order.clone();
        sorted.sort_unstable();
        order
            .iter()
            .map(|x| sorted.binary_search(x).expect("present"))
            .collect()
    }
}

impl fmt::Display for FaceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.indices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for FaceWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.indices.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FaceWord {
    /// Placed at the lowest valid position, as in [`FaceWord::from_entries`].
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let indices = Vec::<usize>::deserialize(d)?;
        FaceWord::from_entries(indices).map_err(serde::de::Error::custom)
    }
}

/// One canonical word per class of `D(k, n)`.
pub fn enumerate_classes(k: usize, n: usize) -> Result<Vec<FaceWord>> {
    if k == 0 || k > n {
        return Err(Error::Domain(format!(
            "D(k,n) needs 0 < k <= n, got k={k}, n={n}"
        )));
    }
    let len = n - k + 1;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    // weakly decreasing, so the first entry (bound k) bounds all the rest
    fn rec(cur: &mut Vec<usize>, len: usize, max: usize, k: usize, out: &mut Vec<FaceWord>) {
        if cur.len() == len {
            out.push(FaceWord {
                start: k,
                indices: cur.clone(),
            });
            return;
        }
        for v in (0..=max).rev() {
            cur.push(v);
            rec(cur, len, v, k, out);
            cur.pop();
        }
    }
    rec(&mut cur, len, k, k, &mut out);
    out.sort();
    Ok(out)
}

/// An iterated degeneracy `s_{i_m} ∘ ... ∘ s_{i_1}` for `I = {i_1 < ... < i_m}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegeneracySet(Vec<usize>);

impl DegeneracySet {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn new<I: IntoIterator<Item = usize>>(items: I) -> Self {
        let set: BTreeSet<usize> = items.into_iter().collect();
        Self(set.into_iter().collect())
    }

    pub fn single(i: usize) -> Self {
        Self(vec![i])
    }

    /// Ascending elements.
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// Whether `s_I` may be applied to an element of simplicial dimension
    /// `level`: the `t`-th smallest index (1-based) must be at most
    /// `level + t - 1`.
    pub fn is_valid_on(&self, level: usize) -> bool {
        self.0.iter().enumerate().all(|(t, &i)| i <= level + t)
    }

    /// The set of `s_K ∘ s_I`, where `self = I` acts first and `outer = K`
    /// acts on the result.
    pub fn then(&self, outer: &DegeneracySet) -> DegeneracySet {
        // operator word, outermost first, put into strictly decreasing order
        // using s_i s_j = s_{j+1} s_i for i <= j
        let mut word: Vec<usize> = outer.0.iter().rev().copied().collect();
        word.extend(self.0.iter().rev().copied());
        while let Some(j) = (0..word.len().saturating_sub(1)).find(|&j| word[j] <= word[j + 1]) {
            let (a, b) = (word[j], word[j + 1]);
            word[j] = b + 1;
            word[j + 1] = a;
        }
        DegeneracySet::new(word)
    }

    /// Rewrites `d_r ∘ s_I` using the simplicial identities.
    pub fn push_face(&self, r: usize) -> Pushed {
        let mut r = r;
        let mut emitted = Vec::with_capacity(self.0.len());
        for (pos, &j) in self.0.iter().enumerate().rev() {
            if r < j {
                emitted.push(j - 1);
            } else if r == j || r == j + 1 {
                emitted.extend_from_slice(&self.0[..pos]);
                return Pushed::Cancelled(DegeneracySet::new(emitted));
            } else {
                emitted.push(j);
                r -= 1;
            }
        }
        Pushed::Passed(DegeneracySet::new(emitted), r)
    }
}

impl fmt::Display for DegeneracySet {
    /// Operator notation, outermost first: `s2 s0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, i) in self.0.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "s{i}")?;
        }
        Ok(())
    }
}

impl PartialOrd for DegeneracySet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DegeneracySet {
    /// Fewer degeneracies first, then lexicographic on ascending elements.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Result of [`DegeneracySet::push_face`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pushed {
    /// `d_r s_I = s_{I'}`.
    Cancelled(DegeneracySet),
    /// `d_r s_I = s_{I''} d_{r'}`.
    Passed(DegeneracySet, usize),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(start: usize, v: &[usize]) -> FaceWord {
        FaceWord::new(start, v.to_vec()).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(w(1, &[0, 2]).normalize(), w(1, &[1, 0]));
        assert_eq!(w(1, &[1, 0]).normalize(), w(1, &[1, 0]));
        // class of (0,1,2) in D(0,2) closes onto (0,0,0)
        assert_eq!(w(0, &[0, 1, 2]).normalize(), w(0, &[0, 0, 0]));
    }

    #[test]
    fn entry_bound_is_enforced() {
        assert!(matches!(
            FaceWord::new(1, vec![2, 0]),
            Err(Error::InvalidWord(_))
        ));
        assert_eq!(FaceWord::from_entries(vec![0, 2]).unwrap().start(), 1);
    }

    #[test]
    fn d12_has_three_classes() {
        let classes = enumerate_classes(1, 2).unwrap();
        assert_eq!(classes.len(), 3);
        let raw: usize = (1..=2).map(|t| t + 1).product();
        assert_eq!(raw, 6);
        assert!(enumerate_classes(0, 2).is_err());
        assert!(enumerate_classes(3, 2).is_err());
    }

    #[test]
    fn push_examples() {
        assert_eq!(
            DegeneracySet::single(0).push_face(0),
            Pushed::Cancelled(DegeneracySet::empty())
        );
        assert_eq!(
            DegeneracySet::new([0, 1]).push_face(2),
            Pushed::Cancelled(DegeneracySet::single(0))
        );
        assert_eq!(
            DegeneracySet::single(0).push_face(3),
            Pushed::Passed(DegeneracySet::single(0), 2)
        );
    }

    #[test]
    fn degeneracy_composition() {
        // s0 s0 = s1 s0
        let s0 = DegeneracySet::single(0);
        assert_eq!(s0.then(&s0), DegeneracySet::new([0, 1]));
        assert_eq!(DegeneracySet::empty().then(&s0), s0);
        assert_eq!(format!("{}", DegeneracySet::new([0, 2])), "s2 s0");
    }

    #[test]
    fn class_of_generic_word_has_factorial_size() {
        assert_eq!(w(1, &[1, 0]).class_members().len(), 2);
        assert_eq!(w(1, &[1, 1, 0]).class_members().len(), 6);
        assert_eq!(w(1, &[1, 1, 1, 0]).class_members().len(), 24);
    }
}
