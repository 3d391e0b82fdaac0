//! Tensor-algebra model of Whitehead brackets over ℚ.
//!
//! A bracket of π-degrees `(p, q)` expands to `λ(p,q)·(AB − ε(p,q)·BA)`,
//! with `λ, ε ∈ {±1}` depending only on the parities of `p` and `q`. The sign
//! choices are found by exhaustive search against the antisymmetry and
//! Jacobi laws, never written down by hand.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{Base, Coefficient, Combination, Leaf, Rational, Tree};

/// A word in leaf letters followed by `eta_post` opaque η markers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub letters: Vec<Leaf>,
    pub eta_post: u32,
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, "·")?;
            }
            write!(f, "({l})")?;
        }
        for _ in 0..self.eta_post {
            write!(f, "·η")?;
        }
        Ok(())
    }
}

/// Exact rational combination of words; zero iff it has no entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorPoly {
    terms: BTreeMap<Word, Rational>,
}

impl TensorPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_word(&mut self, word: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(word).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &TensorPoly) -> TensorPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_word(w.clone(), *c);
        }
        out
    }

    pub fn scale(&self, c: Rational) -> TensorPoly {
        if c.is_zero() {
            return TensorPoly::zero();
        }
        TensorPoly {
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    pub fn sub(&self, other: &TensorPoly) -> TensorPoly {
        self.add(&other.scale(-Rational::one()))
    }
}

impl fmt::Display for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{w}")?;
        }
        Ok(())
    }
}

/// Bracket signs indexed by `[p mod 2][q mod 2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignDictionary {
    pub lambda: [[i8; 2]; 2],
    pub epsilon: [[i8; 2]; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomFailure {
    pub law: String,
    pub degrees: Vec<u32>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub instances: usize,
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn par(d: u32) -> usize {
    (d % 2) as usize
}

fn minus_one_pow(e: u32) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl SignDictionary {
    fn from_mask(mask: u32) -> Self {
        let bit = |k: u32| if mask >> k & 1 == 0 { 1 } else { -1 };
        Self {
            lambda: [[bit(0), bit(1)], [bit(2), bit(3)]],
            epsilon: [[bit(4), bit(5)], [bit(6), bit(7)]],
        }
    }

    pub fn lambda(&self, p: u32, q: u32) -> i64 {
        i64::from(self.lambda[par(p)][par(q)])
    }

    pub fn epsilon(&self, p: u32, q: u32) -> i64 {
        i64::from(self.epsilon[par(p)][par(q)])
    }

    /// The first dictionary, in a fixed enumeration of all 256 sign choices,
    /// that passes [`SignDictionary::check_axioms`].
    pub fn search() -> Result<Self> {
        (0..256u32)
            .map(Self::from_mask)
            .find(|d| d.check_axioms().is_ok())
            .ok_or_else(|| Error::Dictionary("no sign choice satisfies the axioms".into()))
    }

    /// All dictionaries passing the axiom suite.
    pub fn all_solutions() -> Vec<Self> {
        (0..256u32)
            .map(Self::from_mask)
            .filter(|d| d.check_axioms().is_ok())
            .collect()
    }

    /// The shipped dictionary (result of [`SignDictionary::search`]).
    pub fn derived() -> &'static SignDictionary {
        static CELL: OnceLock<SignDictionary> = OnceLock::new();
        CELL.get_or_init(|| Self::search().expect("sign dictionary search"))
    }

    pub fn validate(&self) -> Result<()> {
        let report = self.check_axioms();
        match report.failures.first() {
            None => Ok(()),
            Some(f) => Err(Error::Dictionary(format!(
                "{} fails at degrees {:?}",
                f.law, f.degrees
            ))),
        }
    }

    /// Antisymmetry, Jacobi and non-degeneracy over all degree triples in
    /// `2..=5`, which covers every parity class twice.
    pub fn check_axioms(&self) -> AxiomReport {
        let mut report = AxiomReport::default();
        let degrees = 2..=5u32;
        for p in degrees.clone() {
            self.check_square(p, &mut report);
            for q in degrees.clone() {
                self.check_antisymmetry(p, q, &mut report);
                for r in degrees.clone() {
                    self.check_jacobi(p, q, r, &mut report);
                }
            }
        }
        report
    }

    pub fn check_antisymmetry(&self, p: u32, q: u32, report: &mut AxiomReport) {
        report.instances += 1;
        let (a, b) = (letter('a', p), letter('b', q));
        let lhs = self.expand_tree(&Tree::bracket(a.clone(), b.clone()));
        let rhs = self
            .expand_tree(&Tree::bracket(b, a))
            .scale(Rational::from_integer(minus_one_pow(p * q)));
        if !lhs.sub(&rhs).is_zero() {
            report.failures.push(AxiomFailure {
                law: "antisymmetry".into(),
                degrees: vec![p, q],
            });
        }
    }

    pub fn check_jacobi(&self, p: u32, q: u32, r: u32, report: &mut AxiomReport) {
        report.instances += 1;
        if !self.jacobi_residue(p, q, r).is_zero() {
            report.failures.push(AxiomFailure {
                law: "jacobi".into(),
                degrees: vec![p, q, r],
            });
        }
    }

    /// `(−1)^{pr}[[a,b],c] + (−1)^{qp}[[b,c],a] + (−1)^{rq}[[c,a],b]` on
    /// distinct letters of the given degrees.
    pub fn jacobi_residue(&self, p: u32, q: u32, r: u32) -> TensorPoly {
        let (a, b, c) = (letter('a', p), letter('b', q), letter('c', r));
        let t = |x: &Tree, y: &Tree, z: &Tree| {
            Tree::bracket(Tree::bracket(x.clone(), y.clone()), z.clone())
        };
        let sa = self
            .expand_tree(&t(&a, &b, &c))
            .scale(Rational::from_integer(minus_one_pow(p * r)));
        let sb = self
            .expand_tree(&t(&b, &c, &a))
            .scale(Rational::from_integer(minus_one_pow(q * p)));
        let sc = self
            .expand_tree(&t(&c, &a, &b))
            .scale(Rational::from_integer(minus_one_pow(r * q)));
        sa.add(&sb).add(&sc)
    }

    /// `[a, a]` vanishes rationally for odd `p` and survives for even `p`.
    fn check_square(&self, p: u32, report: &mut AxiomReport) {
        report.instances += 1;
        let a = letter('a', p);
        let sq = self.expand_tree(&Tree::bracket(a.clone(), a));
        if sq.is_zero() == p.is_multiple_of(2) {
            report.failures.push(AxiomFailure {
                law: "square".into(),
                degrees: vec![p],
            });
        }
    }

    pub fn expand_tree(&self, tree: &Tree) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for (c, letters) in self.expand_words(tree) {
            out.add_word(
                Word {
                    letters,
                    eta_post: 0,
                },
                Rational::from_integer(c),
            );
        }
        out
    }

    fn expand_words(&self, tree: &Tree) -> Vec<(i64, Vec<Leaf>)> {
        match tree {
            Tree::Leaf(l) => vec![(1, vec![l.clone()])],
            Tree::Bracket(a, b) => {
                let (p, q) = (a.pi_degree(), b.pi_degree());
                let lam = self.lambda(p, q);
                let eps = self.epsilon(p, q);
                let wa = self.expand_words(a);
                let wb = self.expand_words(b);
                let mut out = Vec::with_capacity(2 * wa.len() * wb.len());
                for (ca, la) in &wa {
                    for (cb, lb) in &wb {
                        let mut ab = la.clone();
                        ab.extend(lb.iter().cloned());
                        out.push((lam * ca * cb, ab));
                        let mut ba = lb.clone();
                        ba.extend(la.iter().cloned());
                        out.push((-lam * eps * ca * cb, ba));
                    }
                }
                out
            }
        }
    }

    /// Homomorphic expansion of a combination.
    pub fn expand<C: Coefficient>(&self, e: &Combination<C>) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for t in e.terms() {
            let c = t.coefficient.to_rational();
            for (s, letters) in self.expand_words(&t.tree) {
                out.add_word(
                    Word {
                        letters,
                        eta_post: t.eta_post,
                    },
                    c * Rational::from_integer(s),
                );
            }
        }
        out
    }
}

fn letter(family: char, dim: u32) -> Tree {
    Tree::Leaf(Leaf::plain(Base::sphere(family, dim)))
}

/// Expansion with the shipped dictionary.
pub fn expand<C: Coefficient>(e: &Combination<C>) -> TensorPoly {
    SignDictionary::derived().expand(e)
}

/// Whether `e` vanishes in the linear model after η-elimination.
pub fn vanishes<C: Coefficient>(e: &Combination<C>) -> bool {
    expand(&super::rewrite::eliminate_eta_classes(e)).is_zero()
}

/// Whether `a` and `b` agree in the linear model after η-elimination.
pub fn equivalent<C: Coefficient>(a: &Combination<C>, b: &Combination<C>) -> bool {
    vanishes(&a.sub(b))
}

/// Sign `s ∈ {+1, −1}` with `a = s·b` in the linear model, if any.
pub fn relative_sign<C: Coefficient>(a: &Combination<C>, b: &Combination<C>) -> Option<i8> {
    if equivalent(a, b) {
        Some(1)
    } else if vanishes(&a.add(b)) {
        Some(-1)
    } else {
        None
    }
}
