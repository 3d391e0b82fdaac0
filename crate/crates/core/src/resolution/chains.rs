//! Explicit chains: the `CPⁿ` cycles `γₙ`, the Whitehead-product cycles of
//! suspension resolutions, and named chains selected by string.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sign::{complement, index_family, sgn, IndexSet};
use crate::simplicial::DegeneracySet;
use crate::whitehead::{Base, Expression, Term, Tree};

use super::families::parse_count;
use super::ChainElement;

fn leaf(base: &Base, degs: &[usize]) -> Tree {
    Tree::leaf(base.clone(), DegeneracySet::new(degs.iter().copied()))
}

fn degeneracies(set: &IndexSet) -> DegeneracySet {
    DegeneracySet::new(set.as_slice().iter().copied())
}

/// One summand `(−1)^{nj} sgn(I, Φ(I)) [s_I ι_{n−j+3}, s_{Φ(I)} ι_j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaTerm {
    pub j: usize,
    pub i: IndexSet,
    pub phi: IndexSet,
    pub coefficient: i64,
    pub tree: Tree,
}

pub fn gamma_terms(n: usize) -> Result<Vec<GammaTerm>> {
    if n < 2 {
        return Err(Error::Domain(format!("γₙ needs n >= 2, got {n}")));
    }
    let mut out = Vec::new();
    for j in 2..=(n + 3) / 2 {
        let family = index_family(j - 2, n)?;
        for i in family.sets {
            let phi = complement(&i, n)?;
            let sign = if (n * j).is_multiple_of(2) { 1 } else { -1 };
            let coefficient = sign * i64::from(sgn(&i, &phi));
            let tree = Tree::bracket(
                Tree::leaf(Base::iota((n - j + 3) as u32), degeneracies(&i)),
                Tree::leaf(Base::iota(j as u32), degeneracies(&phi)),
            );
            out.push(GammaTerm {
                j,
                i,
                phi,
                coefficient,
                tree,
            });
        }
    }
    Ok(out)
}

/// `γₙ` at level `n − 1`, of π-degree `n + 2`.
pub fn gamma(n: usize) -> Result<ChainElement> {
    let terms = gamma_terms(n)?
        .into_iter()
        .map(|t| Term::new(t.coefficient, t.tree))
        .collect();
    Ok(ChainElement::new(n - 1, Expression::from_terms(terms)))
}

/// `[s₀α, s₁β] − [s₁α, s₀β]` at level 2.
pub fn whitehead_product_chain(alpha: &Base, beta: &Base) -> ChainElement {
    let e = Expression::from_terms(vec![
        Term::new(1, Tree::bracket(leaf(alpha, &[0]), leaf(beta, &[1]))),
        Term::new(-1, Tree::bracket(leaf(alpha, &[1]), leaf(beta, &[0]))),
    ]);
    ChainElement::new(2, e)
}

fn check_degrees(p: u32, q: u32) -> Result<()> {
    if p < 2 || q < 2 {
        return Err(Error::Domain(format!(
            "sphere degrees must be >= 2, got ({p}, {q})"
        )));
    }
    Ok(())
}

/// `w₂` on the wedge summands `a_p`, `b_q`.
pub fn w2(p: u32, q: u32) -> Result<ChainElement> {
    check_degrees(p, q)?;
    Ok(whitehead_product_chain(
        &Base::sphere('a', p),
        &Base::sphere('b', q),
    ))
}

/// The six-term level-3 cycle on `a_p`, `b_q` of π-degree `2p + q − 2`.
pub fn w3(p: u32, q: u32) -> Result<ChainElement> {
    check_degrees(p, q)?;
    let a = Base::sphere('a', p);
    let b = Base::sphere('b', q);
    let t = |c: i64, x: &[usize], y: &[usize], z: &[usize]| {
        Term::new(
            c,
            Tree::bracket(leaf(&a, x), Tree::bracket(leaf(&a, y), leaf(&b, z))),
        )
    };
    let e = Expression::from_terms(vec![
        t(1, &[0, 1], &[0, 2], &[1, 2]),
        t(-1, &[0, 1], &[1, 2], &[0, 2]),
        t(1, &[0, 2], &[1, 2], &[0, 1]),
        t(-1, &[0, 2], &[0, 1], &[1, 2]),
        t(1, &[1, 2], &[0, 1], &[0, 2]),
        t(-1, &[1, 2], &[0, 2], &[0, 1]),
    ]);
    Ok(ChainElement::new(3, e))
}

fn triple(x: &[usize], y: &[usize], z: &[usize]) -> Expression {
    let i = Base::iota(2);
    Expression::tree(Tree::bracket(
        Tree::bracket(leaf(&i, x), leaf(&i, y)),
        leaf(&i, z),
    ))
}

/// `θ₁ = [[s₂s₀ι₂, s₁s₀ι₂], s₂s₁ι₂]` and `θ₂ = [[s₂s₁ι₂, s₁s₀ι₂], s₂s₀ι₂]`
/// at level 3 of `S² ⊗ S¹`.
pub fn theta(k: usize) -> Result<ChainElement> {
    match k {
        1 => Ok(ChainElement::new(3, triple(&[0, 2], &[0, 1], &[1, 2]))),
        2 => Ok(ChainElement::new(3, triple(&[1, 2], &[0, 1], &[0, 2]))),
        _ => Err(Error::Domain(format!("θ_{k} is not defined"))),
    }
}

/// `ε₁ = [[s₀ι₂, s₁ι₂], s₀ι₂]` and `ε₂ = [[s₀ι₂, s₁ι₂], s₁ι₂]` at level 2.
pub fn epsilon(k: usize) -> Result<ChainElement> {
    match k {
        1 => Ok(ChainElement::new(2, triple(&[0], &[1], &[0]))),
        2 => Ok(ChainElement::new(2, triple(&[0], &[1], &[1]))),
        _ => Err(Error::Domain(format!("ε_{k} is not defined"))),
    }
}

/// A chain with the resolution it naturally lives in.
pub struct NamedChain {
    pub chain: ChainElement,
    pub resolution: String,
}

pub trait ChainFamily: Send + Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn build(&self, argument: &str) -> Result<NamedChain>;
}

fn two_degrees(argument: &str, what: &str) -> Result<(u32, u32)> {
    let bad = || Error::Domain(format!("{what}: expected P,Q, got {argument:?}"));
    let (p, q) = argument.split_once(',').ok_or_else(bad)?;
    Ok((
        p.trim().parse().map_err(|_| bad())?,
        q.trim().parse().map_err(|_| bad())?,
    ))
}

struct GammaFamily;
struct W2Family;
struct W3Family;
struct ThetaFamily;
struct EpsilonFamily;
struct ProductFamily;

impl ChainFamily for GammaFamily {
    fn name(&self) -> &'static str {
        "gamma"
    }
    fn describe(&self) -> &'static str {
        "gamma:N  the cycle γ_N of the CP^N resolution"
    }
    fn build(&self, argument: &str) -> Result<NamedChain> {
        let n = parse_count(argument, "gamma")?;
        Ok(NamedChain {
            chain: gamma(n)?,
            resolution: format!("cpn:{n}"),
        })
    }
}

impl ChainFamily for W2Family {
    fn name(&self) -> &'static str {
        "w2"
    }
    fn describe(&self) -> &'static str {
        "w2:P,Q  [s0 aP, s1 bQ] - [s1 aP, s0 bQ]"
    }
    fn build(&self, argument: &str) -> Result<NamedChain> {
        let (p, q) = two_degrees(argument, "w2")?;
        Ok(NamedChain {
            chain: w2(p, q)?,
            resolution: format!("susp:s{p},s{q}"),
        })
    }
}

impl ChainFamily for W3Family {
    fn name(&self) -> &'static str {
        "w3"
    }
    fn describe(&self) -> &'static str {
        "w3:P,Q  the six-term level-3 cycle on aP, bQ"
    }
    fn build(&self, argument: &str) -> Result<NamedChain> {
        let (p, q) = two_degrees(argument, "w3")?;
        Ok(NamedChain {
            chain: w3(p, q)?,
            resolution: format!("susp:s{p},s{q}"),
        })
    }
}

impl ChainFamily for ThetaFamily {
    fn name(&self) -> &'static str {
        "theta"
    }
    fn describe(&self) -> &'static str {
        "theta:K  θ_1 or θ_2 in the suspension resolution of S^2"
    }
    fn build(&self, argument: &str) -> Result<NamedChain> {
        Ok(NamedChain {
            chain: theta(parse_count(argument, "theta")?)?,
            resolution: "susp:s2".into(),
        })
    }
}

impl ChainFamily for EpsilonFamily {
    fn name(&self) -> &'static str {
        "eps"
    }
    fn describe(&self) -> &'static str {
        "eps:K  ε_1 or ε_2 in the suspension resolution of S^2"
    }
    fn build(&self, argument: &str) -> Result<NamedChain> {
        Ok(NamedChain {
            chain: epsilon(parse_count(argument, "eps")?)?,
            resolution: "susp:s2".into(),
        })
    }
}

impl ChainFamily for ProductFamily {
    fn name(&self) -> &'static str {
        "whprod"
    }
    fn describe(&self) -> &'static str {
        "whprod:K  [s0 a, s1 b] - [s1 a, s0 b] for two K-spheres; whprod:K,same uses one sphere"
    }
    fn build(&self, argument: &str) -> Result<NamedChain> {
        let (k, same) = match argument.split_once(',') {
            Some((k, "same")) => (k, true),
            Some(_) => return Err(Error::Domain(format!("whprod: bad argument {argument:?}"))),
            None => (argument, false),
        };
        let k = parse_count(k, "whprod")? as u32;
        if same {
            let i = Base::iota(k);
            Ok(NamedChain {
                chain: whitehead_product_chain(&i, &i),
                resolution: format!("susp:s{k}"),
            })
        } else {
            Ok(NamedChain {
                chain: whitehead_product_chain(&Base::sphere('a', k), &Base::sphere('b', k)),
                resolution: format!("susp:s{k},s{k}"),
            })
        }
    }
}

pub struct ChainRegistry {
    families: BTreeMap<&'static str, Box<dyn ChainFamily>>,
}

impl Default for ChainRegistry {
    fn default() -> Self {
        let mut r = Self {
            families: BTreeMap::new(),
        };
        r.register(Box::new(GammaFamily));
        r.register(Box::new(W2Family));
        r.register(Box::new(W3Family));
        r.register(Box::new(ThetaFamily));
        r.register(Box::new(EpsilonFamily));
        r.register(Box::new(ProductFamily));
        r
    }
}

impl ChainRegistry {
    pub fn register(&mut self, family: Box<dyn ChainFamily>) {
        self.families.insert(family.name(), family);
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.families.keys().copied()
    }

    pub fn descriptions(&self) -> Vec<&'static str> {
        self.families.values().map(|f| f.describe()).collect()
    }

    pub fn build(&self, selector: &str) -> Result<NamedChain> {
        let (name, argument) = selector.split_once(':').unwrap_or((selector, ""));
        let family = self
            .families
            .get(name.trim())
            .ok_or_else(|| Error::Unknown {
                kind: "chain family",
                name: name.to_string(),
            })?;
        family.build(argument)
    }
}
