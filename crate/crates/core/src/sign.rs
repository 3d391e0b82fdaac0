//! Signs of pairs of index sets, complements `Φⁿ` and the families `𝓘ₖⁿ`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite set of non-negative integers, kept sorted ascending.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new<I: IntoIterator<Item = usize>>(items: I) -> Self {
        let mut v: Vec<usize> = items.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Elements of the bitmask `mask`.
    pub fn from_mask(mask: u64) -> Self {
        Self((0..64).filter(|i| mask >> i & 1 == 1).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn difference(&self, other: &IndexSet) -> IndexSet {
        Self(
            self.0
                .iter()
                .copied()
                .filter(|x| !other.contains(*x))
                .collect(),
        )
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        Self::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn is_disjoint(&self, other: &IndexSet) -> bool {
        self.0.iter().all(|x| !other.contains(*x))
    }

    /// `{x + by | x ∈ self}`.
    pub fn shifted(&self, by: usize) -> IndexSet {
        Self(self.0.iter().map(|x| x + by).collect())
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// `sgn(I, J)`: strip the intersection, relabel order-preservingly, and take
/// the parity of the permutation `⟨I⟩⟨J⟩`.
///
/// The parity is the number of pairs `a ∈ I∖J`, `b ∈ J∖I` with `a > b`;
/// relabelling preserves it, so no explicit relabel step is needed.
pub fn sgn(i: &IndexSet, j: &IndexSet) -> i8 {
    let a = i.difference(j);
    let b = j.difference(i);
    // two-pointer inversion count over sorted inputs
    let mut inversions = 0usize;
    let mut below = 0usize;
    let mut bi = 0usize;
    for &x in a.as_slice() {
        while bi < b.len() && b.as_slice()[bi] < x {
            below += 1;
            bi += 1;
        }
        inversions += below;
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `Φⁿ(I) = {0, ..., n-2} ∖ I`.
pub fn complement(i: &IndexSet, n: usize) -> Result<IndexSet> {
    if n < 2 {
        return Err(Error::Range(format!("complement needs n >= 2, got {n}")));
    }
    if let Some(&x) = i.as_slice().iter().find(|&&x| x > n - 2) {
        return Err(Error::Range(format!(
            "element {x} of {i} lies outside {{0,...,{}}}",
            n - 2
        )));
    }
    Ok(IndexSet((0..=n - 2).filter(|x| !i.contains(*x)).collect()))
}

/// The collection `𝓘ₖⁿ` of `k`-subsets of `{0, ..., n-2}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexFamily {
    pub n: usize,
    pub k: usize,
    pub sets: Vec<IndexSet>,
}

/// All `k`-subsets of `{0, ..., n-2}`; when `2k = n-1` only those containing
/// `0` are kept, so that `I` and `Φⁿ(I)` are not both listed.
pub fn index_family(k: usize, n: usize) -> Result<IndexFamily> {
    if n < 2 || k + 1 >= n {
        return Err(Error::Range(format!(
            "index family needs 0 <= k < n-1, got k={k}, n={n}"
        )));
    }
    let universe = n - 1;
    let mut sets: Vec<IndexSet> = k_subsets(universe, k)
        .into_iter()
        .filter(|s| 2 * k != n - 1 || s.contains(0))
        .collect();
    sets.sort_by(|a, b| a.as_slice().cmp(b.as_slice()));
    Ok(IndexFamily { n, k, sets })
}

/// `k`-subsets of `{0, ..., m-1}` in lexicographic order.
pub fn k_subsets(m: usize, k: usize) -> Vec<IndexSet> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<IndexSet>) {
        if cur.len() == k {
            out.push(IndexSet(cur.clone()));
            return;
        }
        for x in start..m {
            if m - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, m, k, cur, out);
            cur.pop();
        }
    }
    rec(0, m, k, &mut cur, &mut out);
    out
}
