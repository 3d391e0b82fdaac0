//! Leveled generator tables for simplicial spaces whose levels are wedges of
//! spheres, and chains in their Moore complexes.
//!
//! Level `k` of a [`Resolution`] is the wedge of all `s_I g` with `g` a
//! non-degenerate generator of level `k − |I|` and `I` valid there. Face maps
//! are fixed by the simplicial identities from the table of faces of the
//! generators, extended to brackets by naturality.

pub mod chains;
pub mod families;
pub mod pushforward;
pub mod search;
pub mod verify;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sign::k_subsets;
use crate::simplicial::{DegeneracySet, Pushed};
use crate::whitehead::{linear, rewrite, Base, Expression, Leaf, Tree};

pub use chains::{gamma, gamma_terms, w2, w3, GammaTerm};
pub use families::{cpn_resolution, suspension_resolution, ResolutionFamily, ResolutionRegistry};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub base: Base,
    pub level: usize,
}

#[derive(Clone, Debug)]
pub struct Resolution {
    name: String,
    generators: Vec<Generator>,
    rules: HashMap<(Base, usize), Expression>,
    vanishing: Vec<(Base, Base)>,
}

impl Resolution {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            generators: Vec::new(),
            rules: HashMap::new(),
            vanishing: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn add_generator(&mut self, base: Base, level: usize) {
        self.generators.push(Generator { base, level });
    }

    pub fn set_face(&mut self, base: Base, index: usize, image: Expression) {
        self.rules.insert((base, index), image);
    }

    /// Declares `[s_I a, s_I b] = 0` for all `I`.
    pub fn add_vanishing_bracket(&mut self, a: Base, b: Base) {
        self.vanishing.push((a, b));
    }

    /// Level of a base class; an η-composite lives with its sphere.
    pub fn level_of(&self, base: &Base) -> Option<usize> {
        let target = base.underlying_sphere();
        self.generators
            .iter()
            .find(|g| g.base == target)
            .map(|g| g.level)
    }

    pub fn leaf_level(&self, leaf: &Leaf) -> Result<usize> {
        let base_level = self.level_of(&leaf.base).ok_or_else(|| Error::Unknown {
            kind: "generator",
            name: leaf.base.to_string(),
        })?;
        if !leaf.degeneracies.is_valid_on(base_level) {
            return Err(Error::Dimension(format!(
                "{leaf}: degeneracies not defined on level {base_level}"
            )));
        }
        Ok(base_level + leaf.degeneracies.len())
    }

    /// Summands `s_I g` of level `level`, in leaf order.
    pub fn summands(&self, level: usize) -> Vec<Leaf> {
        let mut out = Vec::new();
        for g in &self.generators {
            if g.level > level {
                continue;
            }
            let m = level - g.level;
            for set in k_subsets(level, m) {
                let degs = DegeneracySet::new(set.as_slice().iter().copied());
                if degs.is_valid_on(g.level) {
                    out.push(Leaf::new(g.base.clone(), degs));
                }
            }
        }
        out.sort();
        out
    }

    fn rule(&self, base: &Base, index: usize) -> Result<Expression> {
        if let Some(e) = self.rules.get(&(base.clone(), index)) {
            return Ok(e.clone());
        }
        let missing = || Error::MissingRule {
            generator: base.to_string(),
            index,
        };
        match base {
            // (x∘η) faces as x
            Base::Eta { .. } => match self.rules.get(&(base.underlying_sphere(), index)) {
                Some(e) if e.is_zero() => Ok(Expression::zero()),
                _ => Err(missing()),
            },
            Base::Sphere { .. } => Err(missing()),
        }
    }

    /// `d_r` of a single leaf.
    pub fn face_of_leaf(&self, r: usize, leaf: &Leaf) -> Result<Expression> {
        let level = self.leaf_level(leaf)?;
        if r > level || level == 0 {
            return Err(Error::Dimension(format!("d{r} on {leaf} at level {level}")));
        }
        match leaf.degeneracies.push_face(r) {
            Pushed::Cancelled(rest) => Ok(Expression::leaf(leaf.base.clone(), rest)),
            Pushed::Passed(outer, r2) => Ok(self.rule(&leaf.base, r2)?.apply_degeneracy(&outer)),
        }
    }

    fn face_of_tree(&self, r: usize, tree: &Tree) -> Result<Expression> {
        match tree {
            Tree::Leaf(l) => self.face_of_leaf(r, l),
            Tree::Bracket(a, b) => {
                let fa = self.face_of_tree(r, a)?;
                if fa.is_zero() {
                    return Ok(fa);
                }
                let fb = self.face_of_tree(r, b)?;
                fa.bracket(&fb)
            }
        }
    }

    /// `d_r e`, with declared vanishing brackets removed.
    pub fn apply_face(&self, r: usize, e: &Expression) -> Result<Expression> {
        let mut out = Expression::zero();
        for t in e.terms() {
            let mut f = self.face_of_tree(r, &t.tree)?;
            f = f.scale(&t.coefficient);
            for _ in 0..t.eta_post {
                f = f.compose_eta();
            }
            out = out.add(&f);
        }
        Ok(self.apply_relations(&out))
    }

    fn tree_vanishes(&self, tree: &Tree) -> bool {
        match tree {
            Tree::Leaf(_) => false,
            Tree::Bracket(a, b) => {
                if let (Tree::Leaf(x), Tree::Leaf(y)) = (a.as_ref(), b.as_ref()) {
                    if x.degeneracies == y.degeneracies
                        && self.vanishing.iter().any(|(p, q)| {
                            (p == &x.base && q == &y.base) || (p == &y.base && q == &x.base)
                        })
                    {
                        return true;
                    }
                }
                self.tree_vanishes(a) || self.tree_vanishes(b)
            }
        }
    }

    /// Drops every term containing a declared vanishing bracket.
    pub fn apply_relations(&self, e: &Expression) -> Expression {
        if self.vanishing.is_empty() {
            return e.clone();
        }
        Expression::from_terms(
            e.terms()
                .iter()
                .filter(|t| !self.tree_vanishes(&t.tree))
                .cloned()
                .collect(),
        )
    }

    /// Checks `d_i d_j = d_{j−1} d_i` (`i < j`) on every generator up to
    /// `max_level`, comparing in the linear model.
    pub fn check_simplicial_identities(&self, max_level: usize) -> Result<Vec<IdentityFailure>> {
        let mut failures = Vec::new();
        for g in &self.generators {
            if g.level < 2 || g.level > max_level {
                continue;
            }
            let x = Expression::leaf(g.base.clone(), DegeneracySet::empty());
            for j in 1..=g.level {
                let dj = self.apply_face(j, &x)?;
                for i in 0..j {
                    let lhs = self.apply_face(i, &dj)?;
                    let rhs = self.apply_face(j - 1, &self.apply_face(i, &x)?)?;
                    if !linear::equivalent(&lhs, &rhs) {
                        failures.push(IdentityFailure {
                            generator: g.base.to_string(),
                            i,
                            j,
                        });
                    }
                }
            }
        }
        Ok(failures)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityFailure {
    pub generator: String,
    pub i: usize,
    pub j: usize,
}

/// An expression placed at a simplicial level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainElement {
    pub level: usize,
    pub expr: Expression,
}

impl ChainElement {
    pub fn new(level: usize, expr: Expression) -> Self {
        Self { level, expr }
    }

    pub fn zero(level: usize) -> Self {
        Self::new(level, Expression::zero())
    }

    pub fn pi_degree(&self) -> Option<u32> {
        self.expr.pi_degree()
    }

    /// Every leaf must live at `self.level`.
    pub fn validate(&self, r: &Resolution) -> Result<()> {
        for leaf in self.expr.leaves() {
            let l = r.leaf_level(leaf)?;
            if l != self.level {
                return Err(Error::Dimension(format!(
                    "{leaf} lives at level {l}, not {}",
                    self.level
                )));
            }
        }
        Ok(())
    }

    /// `d_0, ..., d_level`.
    pub fn faces(&self, r: &Resolution) -> Result<Vec<ChainElement>> {
        if self.level == 0 {
            return Err(Error::Dimension("a level-0 chain has no faces".into()));
        }
        self.validate(r)?;
        (0..=self.level)
            .map(|i| {
                Ok(ChainElement::new(
                    self.level - 1,
                    r.apply_face(i, &self.expr)?,
                ))
            })
            .collect()
    }

    /// `Σ (−1)^i d_i`.
    pub fn alternating_boundary(&self, r: &Resolution) -> Result<Expression> {
        let mut acc = Expression::zero();
        for (i, f) in self.faces(r)?.into_iter().enumerate() {
            let s = if i % 2 == 0 { 1 } else { -1 };
            acc = acc.add(&f.expr.scale(&s));
        }
        Ok(acc)
    }
}

impl fmt::Display for ChainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.expr)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceResidue {
    pub index: usize,
    /// `0` when the face vanishes in the linear model, otherwise the face
    /// in antisymmetry normal form.
    pub residue: String,
    pub zero: bool,
    /// Number of terms of the face before zero-testing.
    pub raw_terms: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    NotACycle,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Verified => "verified",
            Verdict::NotACycle => "not a cycle",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub chain: String,
    pub resolution: String,
    pub level: usize,
    pub pi_degree: Option<u32>,
    pub faces: Vec<FaceResidue>,
    pub verdict: Verdict,
    pub engine_version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Certificate {
    pub fn verified(&self) -> bool {
        self.verdict == Verdict::Verified
    }
}

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn face_residue(index: usize, face: &Expression) -> FaceResidue {
    let zero = linear::vanishes(face);
    FaceResidue {
        index,
        residue: if zero {
            "0".into()
        } else {
            rewrite::normalize_antisymmetry(face).to_string()
        },
        zero,
        raw_terms: face.len(),
    }
}

/// Checks that every face of `c` vanishes.
pub fn is_cycle(c: &ChainElement, r: &Resolution) -> Result<Certificate> {
    let faces = c.faces(r)?;
    let residues: Vec<FaceResidue> = faces
        .iter()
        .enumerate()
        .map(|(i, f)| face_residue(i, &f.expr))
        .collect();
    Ok(certificate(c, r, residues))
}

pub fn certificate(c: &ChainElement, r: &Resolution, faces: Vec<FaceResidue>) -> Certificate {
    let verdict = if faces.iter().all(|f| f.zero) {
        Verdict::Verified
    } else {
        Verdict::NotACycle
    };
    Certificate {
        chain: c.expr.to_string(),
        resolution: r.name().to_string(),
        level: c.level,
        pi_degree: c.pi_degree(),
        faces,
        verdict,
        engine_version: ENGINE_VERSION.to_string(),
        elapsed_ms: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::whitehead::parse_expression;

    fn ex(s: &str) -> Expression {
        parse_expression(s).unwrap()
    }

    #[test]
    fn suspension_levels() {
        let r = suspension_resolution(&[2], 1).unwrap();
        let l2: Vec<String> = r.summands(2).iter().map(ToString::to_string).collect();
        assert_eq!(l2, vec!["s0 i2", "s1 i2"]);
        let l3: Vec<String> = r.summands(3).iter().map(ToString::to_string).collect();
        assert_eq!(l3, vec!["s1 s0 i2", "s2 s0 i2", "s2 s1 i2"]);
        for k in 1..7 {
            assert_eq!(r.summands(k).len(), k);
        }
        assert!(r.summands(0).is_empty());
    }

    #[test]
    fn cp3_levels() {
        let r = cpn_resolution(3).unwrap();
        let l2: Vec<String> = r.summands(2).iter().map(ToString::to_string).collect();
        assert_eq!(l2, vec!["i4", "s0 i3", "s1 i3", "s1 s0 i2"]);
        assert_eq!(r.apply_face(0, &ex("i4")).unwrap(), ex("[i3, s0 i2]"));
        assert_eq!(r.apply_face(0, &ex("i3")).unwrap(), ex("v2"));
    }

    #[test]
    fn example_faces() {
        let s2 = suspension_resolution(&[2], 1).unwrap();
        let c = ChainElement::new(2, ex("[s0 i2, s1 i2]"));
        let f: Vec<String> = c
            .faces(&s2)
            .unwrap()
            .iter()
            .map(|f| f.to_string())
            .collect();
        assert_eq!(f, vec!["0", "[i2, i2]", "0"]);
        let cert = is_cycle(&c, &s2).unwrap();
        assert_eq!(cert.verdict, Verdict::NotACycle);
        assert_eq!(cert.faces[1].residue, "[i2, i2]");

        let cp2 = cpn_resolution(2).unwrap();
        let g2 = ChainElement::new(1, ex("[i3, s0 i2]"));
        let f = g2.faces(&cp2).unwrap();
        assert_eq!(f[0].expr, ex("[v2, i2]"));
        assert!(f[1].expr.is_zero());
    }

    #[test]
    fn missing_rule_is_reported() {
        let mut r = Resolution::new("partial");
        r.add_generator(Base::iota(2), 1);
        assert!(matches!(
            r.apply_face(0, &ex("i2")),
            Err(Error::MissingRule { index: 0, .. })
        ));
    }

    #[test]
    fn vanishing_brackets() {
        let mut r = suspension_resolution(&[3, 3], 1).unwrap();
        r.add_vanishing_bracket(Base::sphere('a', 3), Base::sphere('b', 3));
        assert!(r.apply_relations(&ex("[s0 a3, s0 b3]")).is_zero());
        assert!(!r.apply_relations(&ex("[s0 a3, s1 b3]")).is_zero());
    }
}
