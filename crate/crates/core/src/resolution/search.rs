//! Hall basic products and the search for bounding chains.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::intmat::{solve_integer, IntMatrix};
use crate::whitehead::{linear, rewrite, Expression, Leaf, Term, Tree};

use super::{ChainElement, Resolution};

/// A bracket word on letters `x0, x1, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HallWord {
    Letter(usize),
    Bracket(Box<HallWord>, Box<HallWord>),
}

impl HallWord {
    pub fn weight(&self) -> usize {
        match self {
            HallWord::Letter(_) => 1,
            HallWord::Bracket(a, b) => a.weight() + b.weight(),
        }
    }

    /// `Σ deg − (w − 1)`.
    pub fn pi_degree(&self, degrees: &[u32]) -> u32 {
        match self {
            HallWord::Letter(i) => degrees[*i],
            HallWord::Bracket(a, b) => a.pi_degree(degrees) + b.pi_degree(degrees) - 1,
        }
    }

    pub fn to_tree(&self, letters: &[Leaf]) -> Tree {
        match self {
            HallWord::Letter(i) => Tree::Leaf(letters[*i].clone()),
            HallWord::Bracket(a, b) => Tree::bracket(a.to_tree(letters), b.to_tree(letters)),
        }
    }
}

impl fmt::Display for HallWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HallWord::Letter(i) => write!(f, "x{i}"),
            HallWord::Bracket(a, b) => write!(f, "[{a}, {b}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicProduct {
    pub word: HallWord,
    pub weight: usize,
    pub pi_degree: u32,
}

/// Basic products of weight `≤ max_weight` on letters of the given π-degrees.
///
/// Products are ordered by weight, then by order of generation; `[a, b]` is
/// basic when `a < b` and, if `b = [b₁, b₂]`, also `b₁ ≤ a`.
pub fn hilton_basis(degrees: &[u32], max_weight: usize) -> Vec<BasicProduct> {
    let words = hall_words(degrees.len(), max_weight);
    words
        .into_iter()
        .map(|w| BasicProduct {
            weight: w.weight(),
            pi_degree: w.pi_degree(degrees),
            word: w,
        })
        .collect()
}

fn hall_words(letters: usize, max_weight: usize) -> Vec<HallWord> {
    let mut all: Vec<HallWord> = (0..letters).map(HallWord::Letter).collect();
    if max_weight == 0 {
        return Vec::new();
    }
    for w in 2..=max_weight {
        let mut new = Vec::new();
        for (ia, a) in all.iter().enumerate() {
            for (ib, b) in all.iter().enumerate() {
                if ia >= ib || a.weight() + b.weight() != w {
                    continue;
                }
                if let HallWord::Bracket(b1, _) = b {
                    let i1 = all
                        .iter()
                        .position(|x| x == b1.as_ref())
                        .expect("basic factor");
                    if i1 > ia {
                        continue;
                    }
                }
                new.push(HallWord::Bracket(Box::new(a.clone()), Box::new(b.clone())));
            }
        }
        all.extend(new);
    }
    all
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub witness: Option<ChainElement>,
    /// Candidate monomials of the right π-degree.
    pub monomials: usize,
    /// Words spanned by their boundaries and the target.
    pub words: usize,
}

/// Integer combination of basic products on the summands one level up whose
/// alternating face sum equals `z` in the linear model. `None` is not a
/// proof that `z` is not a boundary.
pub fn search_bounding_chain(
    z: &ChainElement,
    r: &Resolution,
    max_weight: usize,
) -> Result<SearchOutcome> {
    let level = z.level + 1;
    let target_expr = r.apply_relations(&z.expr);
    if linear::vanishes(&target_expr) {
        return Ok(SearchOutcome {
            witness: Some(ChainElement::zero(level)),
            monomials: 0,
            words: 0,
        });
    }
    let degree = z.pi_degree().expect("nonzero target");
    let letters = r.summands(level);
    let degrees: Vec<u32> = letters.iter().map(Leaf::pi_degree).collect();
    let monomials: Vec<Tree> = hilton_basis(&degrees, max_weight)
        .into_iter()
        .filter(|b| b.pi_degree == degree && b.weight >= 1)
        .map(|b| b.word.to_tree(&letters))
        .collect();

    let model = |e: &Expression| linear::expand(&rewrite::eliminate_eta_classes(e));
    let mut columns = Vec::with_capacity(monomials.len());
    for m in &monomials {
        let c = ChainElement::new(level, Expression::tree(m.clone()));
        columns.push(model(&c.alternating_boundary(r)?));
    }
    let target = model(&target_expr);

    let mut index = BTreeMap::new();
    for poly in columns.iter().chain(std::iter::once(&target)) {
        for (w, _) in poly.iter() {
            let next = index.len();
            index.entry(w.clone()).or_insert(next);
        }
    }
    let rows = index.len();
    // clear denominators row by row
    let mut lcm = vec![1i64; rows];
    for poly in columns.iter().chain(std::iter::once(&target)) {
        for (w, c) in poly.iter() {
            let i = index[w];
            lcm[i] = lcm[i].lcm(c.denom());
        }
    }
    let mut a = IntMatrix::zeros(rows, columns.len());
    for (j, poly) in columns.iter().enumerate() {
        for (w, c) in poly.iter() {
            let i = index[w];
            a.set(i, j, i128::from(c.numer() * (lcm[i] / c.denom())));
        }
    }
    let mut b = vec![0i128; rows];
    for (w, c) in target.iter() {
        let i = index[w];
        b[i] = i128::from(c.numer() * (lcm[i] / c.denom()));
    }
    let solution = solve_integer(&a, &b)?;
    let witness = solution.map(|x| {
        let terms = x
            .iter()
            .zip(&monomials)
            .filter(|(c, _)| **c != 0)
            .map(|(c, m)| Term::new(*c as i64, m.clone()))
            .collect();
        ChainElement::new(level, Expression::from_terms(terms))
    });
    Ok(SearchOutcome {
        witness,
        monomials: monomials.len(),
        words: rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_letter_counts() {
        let w1 = hilton_basis(&[2, 3], 1);
        assert_eq!(w1.len(), 2);
        let w2: Vec<String> = hilton_basis(&[2, 3], 2)
            .iter()
            .filter(|b| b.weight == 2)
            .map(|b| b.word.to_string())
            .collect();
        assert_eq!(w2, vec!["[x0, x1]"]);
        let w3: Vec<String> = hilton_basis(&[2, 3], 3)
            .iter()
            .filter(|b| b.weight == 3)
            .map(|b| b.word.to_string())
            .collect();
        assert_eq!(w3, vec!["[x0, [x0, x1]]", "[x1, [x0, x1]]"]);
        assert_eq!(hilton_basis(&[2, 3], 3)[2].pi_degree, 4);
    }

    #[test]
    fn finds_a_planted_boundary() {
        use crate::resolution::suspension_resolution;
        use crate::whitehead::parse_expression;
        let r = suspension_resolution(&[2, 3], 1).unwrap();
        let w = ChainElement::new(
            3,
            parse_expression("[s2 s0 a2, s1 s0 b3] + 2*[s2 s1 a2, s1 s0 b3]").unwrap(),
        );
        let z = ChainElement::new(2, w.alternating_boundary(&r).unwrap());
        assert!(!z.expr.is_zero());
        let found = search_bounding_chain(&z, &r, 2).unwrap().witness.unwrap();
        let back = found.alternating_boundary(&r).unwrap();
        assert!(linear::equivalent(&back, &z.expr));
    }

    #[test]
    fn zero_bounds_trivially() {
        use crate::resolution::suspension_resolution;
        let r = suspension_resolution(&[2], 1).unwrap();
        let out = search_bounding_chain(&ChainElement::zero(2), &r, 2).unwrap();
        assert_eq!(out.witness, Some(ChainElement::zero(3)));
    }
}
