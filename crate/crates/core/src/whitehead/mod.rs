//! Formal integer (or rational) combinations of iterated Whitehead brackets of
//! degenerated sphere classes.
//!
//! Equality of expressions is decided in [`linear`], a faithful model in the
//! tensor algebra over ℚ. Torsion enters only through the explicit order
//! tables of [`rewrite`].

pub mod linear;
pub mod parse;
pub mod rewrite;

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplicial::DegeneracySet;

pub use linear::{SignDictionary, TensorPoly};
pub use parse::{parse_base, parse_expression};

pub type Rational = Ratio<i64>;

/// A non-degenerate class a leaf is built from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    /// Fundamental class of a sphere summand, written `<family><dim>` (`i3`,
    /// `a2`, ...).
    Sphere { family: char, dim: u32 },
    /// The composite `ι_dim ∘ η`, written `v<dim>`; π-degree `dim + 1`.
    Eta { dim: u32 },
}

impl Base {
    pub fn iota(dim: u32) -> Self {
        Base::Sphere { family: 'i', dim }
    }

    pub fn sphere(family: char, dim: u32) -> Self {
        Base::Sphere { family, dim }
    }

    pub fn pi_degree(&self) -> u32 {
        match self {
            Base::Sphere { dim, .. } => *dim,
            Base::Eta { dim } => dim + 1,
        }
    }

    /// The sphere class an η-composite is built on, or itself.
    pub fn underlying_sphere(&self) -> Base {
        match self {
            Base::Sphere { .. } => self.clone(),
            Base::Eta { dim } => Base::iota(*dim),
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Sphere { family, dim } => write!(f, "{family}{dim}"),
            Base::Eta { dim } => write!(f, "v{dim}"),
        }
    }
}

impl Serialize for Base {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Base {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse::parse_base(&s).map_err(serde::de::Error::custom)
    }
}

/// `s_I x` for a base class `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Leaf {
    pub base: Base,
    pub degeneracies: DegeneracySet,
}

impl Leaf {
    pub fn new(base: Base, degeneracies: DegeneracySet) -> Self {
        Self { base, degeneracies }
    }

    pub fn plain(base: Base) -> Self {
        Self::new(base, DegeneracySet::empty())
    }

    pub fn pi_degree(&self) -> u32 {
        self.base.pi_degree()
    }
}

impl Ord for Leaf {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degeneracies
            .cmp(&other.degeneracies)
            .then_with(|| self.base.cmp(&other.base))
    }
}

impl PartialOrd for Leaf {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degeneracies.is_empty() {
            write!(f, "{}", self.base)
        } else {
            write!(f, "{} {}", self.degeneracies, self.base)
        }
    }
}

/// A binary bracket tree with [`Leaf`] leaves.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tree {
    Leaf(Leaf),
    Bracket(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn leaf(base: Base, degeneracies: DegeneracySet) -> Self {
        Tree::Leaf(Leaf::new(base, degeneracies))
    }

    pub fn bracket(a: Tree, b: Tree) -> Self {
        Tree::Bracket(Box::new(a), Box::new(b))
    }

    /// Whitehead convention: `deg [a, b] = deg a + deg b - 1`.
    pub fn pi_degree(&self) -> u32 {
        match self {
            Tree::Leaf(l) => l.pi_degree(),
            Tree::Bracket(a, b) => a.pi_degree() + b.pi_degree() - 1,
        }
    }

    pub fn weight(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Bracket(a, b) => a.weight() + b.weight(),
        }
    }

    pub fn leaves(&self) -> Vec<&Leaf> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a Leaf>) {
        match self {
            Tree::Leaf(l) => out.push(l),
            Tree::Bracket(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    pub fn map_leaves(&self, f: &impl Fn(&Leaf) -> Leaf) -> Tree {
        match self {
            Tree::Leaf(l) => Tree::Leaf(f(l)),
            Tree::Bracket(a, b) => Tree::bracket(a.map_leaves(f), b.map_leaves(f)),
        }
    }

    fn shape_cmp(&self, other: &Tree) -> Ordering {
        match (self, other) {
            (Tree::Leaf(_), Tree::Leaf(_)) => Ordering::Equal,
            (Tree::Leaf(_), Tree::Bracket(..)) => Ordering::Less,
            (Tree::Bracket(..), Tree::Leaf(_)) => Ordering::Greater,
            (Tree::Bracket(a, b), Tree::Bracket(c, d)) => {
                a.shape_cmp(c).then_with(|| b.shape_cmp(d))
            }
        }
    }

    fn content_cmp(&self, other: &Tree) -> Ordering {
        match (self, other) {
            (Tree::Leaf(a), Tree::Leaf(b)) => a.cmp(b),
            (Tree::Bracket(a, b), Tree::Bracket(c, d)) => {
                a.content_cmp(c).then_with(|| b.content_cmp(d))
            }
            _ => self.shape_cmp(other),
        }
    }
}

impl Ord for Tree {
    /// Tree shape first, then leaves left to right.
    fn cmp(&self, other: &Self) -> Ordering {
        self.shape_cmp(other).then_with(|| self.content_cmp(other))
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf(l) => write!(f, "{l}"),
            Tree::Bracket(a, b) => write!(f, "[{a}, {b}]"),
        }
    }
}

/// Coefficient rings used for expressions: ℤ (`i64`) and ℚ.
pub trait Coefficient: Clone + fmt::Debug + fmt::Display + PartialEq + Signed {
    fn to_rational(&self) -> Rational;
}

impl Coefficient for i64 {
    fn to_rational(&self) -> Rational {
        Rational::from_integer(*self)
    }
}

impl Coefficient for Rational {
    fn to_rational(&self) -> Rational {
        *self
    }
}

/// `coefficient · tree ∘ η^eta_post`.
///
/// `eta_post` counts iterated post-compositions with suspended Hopf maps
/// `η_d ∘ η_{d+1} ∘ ...`, where `d` is the π-degree of the tree; these are
/// opaque and enter the linear model as a trailing marker.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Term<C> {
    pub coefficient: C,
    pub tree: Tree,
    #[serde(default, skip_serializing_if = "is_zero_u32")]
    pub eta_post: u32,
}

fn is_zero_u32(x: &u32) -> bool {
    *x == 0
}

impl<C: Coefficient> Term<C> {
    pub fn new(coefficient: C, tree: Tree) -> Self {
        Self {
            coefficient,
            tree,
            eta_post: 0,
        }
    }

    pub fn pi_degree(&self) -> u32 {
        self.tree.pi_degree() + self.eta_post
    }

    fn key_cmp(&self, other: &Self) -> Ordering {
        self.tree
            .cmp(&other.tree)
            .then_with(|| self.eta_post.cmp(&other.eta_post))
    }

    fn body(&self) -> String {
        let mut s = self.tree.to_string();
        match self.eta_post {
            0 => {}
            1 => s.push_str(&format!(" o eta{}", self.tree.pi_degree())),
            c => s.push_str(&format!(" o eta^{c}")),
        }
        s
    }
}

/// A formal linear combination of terms, kept in canonical order with like
/// terms merged and zero terms dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound(
    serialize = "C: Serialize",
    deserialize = "C: Deserialize<'de> + Coefficient"
))]
pub struct Combination<C> {
    terms: Vec<Term<C>>,
}

/// Integer combination.
pub type Expression = Combination<i64>;
/// Rational combination.
pub type QExpression = Combination<Rational>;

impl<C: Coefficient> Default for Combination<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> Combination<C> {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn from_terms(terms: Vec<Term<C>>) -> Self {
        let mut e = Self { terms };
        e.canonicalize();
        e
    }

    pub fn tree(tree: Tree) -> Self {
        Self::from_terms(vec![Term::new(C::one(), tree)])
    }

    pub fn leaf(base: Base, degeneracies: DegeneracySet) -> Self {
        Self::tree(Tree::leaf(base, degeneracies))
    }

    pub fn terms(&self) -> &[Term<C>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<C>> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Literally zero (no terms); see [`linear`] for zero-testing modulo the
    /// bracket axioms.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn canonicalize(&mut self) {
        self.terms.sort_by(|a, b| a.key_cmp(b));
        let mut merged: Vec<Term<C>> = Vec::with_capacity(self.terms.len());
        for t in self.terms.drain(..) {
            match merged.last_mut() {
                Some(last) if last.key_cmp(&t) == Ordering::Equal => {
                    last.coefficient = last.coefficient.clone() + t.coefficient;
                }
                _ => merged.push(t),
            }
        }
        merged.retain(|t| !t.coefficient.is_zero());
        self.terms = merged;
    }

    /// π-degree shared by all terms, or `None` for the zero expression.
    pub fn pi_degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.pi_degree())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::from_terms(terms)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-C::one()))
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|t| Term {
                    coefficient: t.coefficient.clone() * c.clone(),
                    ..t.clone()
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        self.scale(&-C::one())
    }

    /// Bilinear bracket `[self, other]`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                if a.eta_post > 0 || b.eta_post > 0 {
                    return Err(Error::Degree(
                        "cannot bracket a class post-composed with η".into(),
                    ));
                }
                terms.push(Term::new(
                    a.coefficient.clone() * b.coefficient.clone(),
                    Tree::bracket(a.tree.clone(), b.tree.clone()),
                ));
            }
        }
        Ok(Self::from_terms(terms))
    }

    /// Post-composes every term with one more η.
    pub fn compose_eta(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|t| Term {
                    eta_post: t.eta_post + 1,
                    ..t.clone()
                })
                .collect(),
        )
    }

    /// Applies `s_I` to every leaf; degeneracies commute with brackets.
    pub fn apply_degeneracy(&self, degeneracies: &DegeneracySet) -> Self {
        if degeneracies.is_empty() {
            return self.clone();
        }
        Self::from_terms(
            self.terms
                .iter()
                .map(|t| Term {
                    tree: t.tree.map_leaves(&|l| {
                        Leaf::new(l.base.clone(), l.degeneracies.then(degeneracies))
                    }),
                    ..t.clone()
                })
                .collect(),
        )
    }

    /// Every leaf of every term.
    pub fn leaves(&self) -> impl Iterator<Item = &Leaf> {
        self.terms.iter().flat_map(|t| t.tree.leaves())
    }
}

impl Expression {
    pub fn to_rational(&self) -> QExpression {
        QExpression::from_terms(
            self.terms
                .iter()
                .map(|t| Term {
                    coefficient: Rational::from_integer(t.coefficient),
                    tree: t.tree.clone(),
                    eta_post: t.eta_post,
                })
                .collect(),
        )
    }

    pub fn coefficient_of(&self, tree: &Tree) -> i64 {
        self.terms
            .iter()
            .filter(|t| &t.tree == tree && t.eta_post == 0)
            .map(|t| t.coefficient)
            .sum()
    }
}

impl<C: Coefficient> fmt::Display for Combination<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let negative = t.coefficient.is_negative();
            let magnitude = t.coefficient.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !magnitude.is_one() {
                write!(f, "{magnitude}*")?;
            }
            write!(f, "{}", t.body())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iota(d: u32, degs: &[usize]) -> Expression {
        Expression::leaf(Base::iota(d), DegeneracySet::new(degs.iter().copied()))
    }

    #[test]
    fn printing_and_order() {
        let g3 = iota(4, &[])
            .bracket(&iota(2, &[0, 1]))
            .unwrap()
            .sub(&iota(3, &[0]).bracket(&iota(3, &[1])).unwrap());
        assert_eq!(g3.to_string(), "[i4, s1 s0 i2] - [s0 i3, s1 i3]");
        let scaled = g3.scale(&2).compose_eta();
        assert_eq!(
            scaled.to_string(),
            "2*[i4, s1 s0 i2] o eta5 - 2*[s0 i3, s1 i3] o eta5"
        );
        assert!(g3.sub(&g3).is_zero());
        assert_eq!(Expression::zero().to_string(), "0");
    }

    #[test]
    fn degeneracies_distribute() {
        let e = iota(3, &[]).bracket(&iota(2, &[0])).unwrap();
        let s1 = e.apply_degeneracy(&DegeneracySet::single(1));
        assert_eq!(s1.to_string(), "[s1 i3, s1 s0 i2]");
        assert_eq!(e.apply_degeneracy(&DegeneracySet::empty()), e);
        assert_eq!(
            iota(2, &[]).apply_degeneracy(&DegeneracySet::single(0)),
            iota(2, &[0])
        );
    }

    #[test]
    fn degrees() {
        let e = iota(3, &[]).bracket(&iota(2, &[0])).unwrap();
        assert_eq!(e.pi_degree(), Some(4));
        assert_eq!(Base::Eta { dim: 2 }.pi_degree(), 3);
        assert!(e.compose_eta().bracket(&e).is_err());
    }
}
