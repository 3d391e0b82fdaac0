//! Rewrites between brackets and η-composites, torsion bookkeeping, and
//! sign-normalizing re-expressions.

use std::env;
use std::fs;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{
    linear, Base, Coefficient, Combination, Expression, Leaf, QExpression, Rational, Term, Tree,
};

fn is_square_class(l: &Leaf) -> bool {
    l.base == Base::iota(2)
}

fn minus_one_pow(e: u32) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `[u, u] ↦ 2·(u ∘ η)` for every sub-bracket with `u = s_I ι₂`.
pub fn rewrite_whitehead_square(e: &Expression) -> Expression {
    fn go(t: &Tree) -> (i64, Tree) {
        match t {
            Tree::Leaf(_) => (1, t.clone()),
            Tree::Bracket(a, b) => {
                if let (Tree::Leaf(x), Tree::Leaf(y)) = (a.as_ref(), b.as_ref()) {
                    if x == y && is_square_class(x) {
                        let v = Leaf::new(Base::Eta { dim: 2 }, x.degeneracies.clone());
                        return (2, Tree::Leaf(v));
                    }
                }
                let (ca, ta) = go(a);
                let (cb, tb) = go(b);
                (ca * cb, Tree::bracket(ta, tb))
            }
        }
    }
    Expression::from_terms(
        e.terms()
            .iter()
            .map(|t| {
                let (c, tree) = go(&t.tree);
                Term {
                    coefficient: t.coefficient * c,
                    tree,
                    eta_post: t.eta_post,
                }
            })
            .collect(),
    )
}

/// `s_I v₂ ↦ ½·[s_I ι₂, s_I ι₂]` everywhere, over ℚ.
pub fn eliminate_eta_classes<C: Coefficient>(e: &Combination<C>) -> QExpression {
    fn go(t: &Tree) -> (u32, Tree) {
        match t {
            Tree::Leaf(l) if l.base == Base::Eta { dim: 2 } => {
                let u = Tree::leaf(Base::iota(2), l.degeneracies.clone());
                (1, Tree::bracket(u.clone(), u))
            }
            Tree::Leaf(_) => (0, t.clone()),
            Tree::Bracket(a, b) => {
                let (ha, ta) = go(a);
                let (hb, tb) = go(b);
                (ha + hb, Tree::bracket(ta, tb))
            }
        }
    }
    QExpression::from_terms(
        e.terms()
            .iter()
            .map(|t| {
                let (halves, tree) = go(&t.tree);
                let factor = Rational::new(1, 1i64 << halves);
                Term {
                    coefficient: t.coefficient.to_rational() * factor,
                    tree,
                    eta_post: t.eta_post,
                }
            })
            .collect(),
    )
}

/// `[x, y∘η] ↦ [x, y]∘η − [[x, y], y]` for `x, y` of π-degree 2, applied to
/// top-level brackets; `[y∘η, x]` is first turned around by antisymmetry
/// (sign `+1` in these degrees).
pub fn rewrite_eta_brackets(e: &Expression) -> Expression {
    let mut out = Vec::new();
    for t in e.terms() {
        match split_eta_bracket(t) {
            Some((x, y)) => {
                let xy = Tree::bracket(x, y.clone());
                out.push(Term {
                    coefficient: t.coefficient,
                    tree: xy.clone(),
                    eta_post: t.eta_post + 1,
                });
                out.push(Term {
                    coefficient: -t.coefficient,
                    tree: Tree::bracket(xy, y),
                    eta_post: t.eta_post,
                });
            }
            None => out.push(t.clone()),
        }
    }
    Expression::from_terms(out)
}

fn split_eta_bracket(t: &Term<i64>) -> Option<(Tree, Tree)> {
    let Tree::Bracket(a, b) = &t.tree else {
        return None;
    };
    let eta_leaf = |tree: &Tree| match tree {
        Tree::Leaf(l) if l.base == (Base::Eta { dim: 2 }) => {
            Some(Tree::leaf(Base::iota(2), l.degeneracies.clone()))
        }
        _ => None,
    };
    match (eta_leaf(a), eta_leaf(b)) {
        (None, Some(y)) if a.pi_degree() == 2 => Some((a.as_ref().clone(), y)),
        (Some(y), None) if b.pi_degree() == 2 => Some((b.as_ref().clone(), y)),
        _ => None,
    }
}

/// Drops terms which vanish on their own in the linear model, such as
/// `[[x, x], x]`.
pub fn drop_vanishing_terms(e: &Expression) -> Expression {
    Expression::from_terms(
        e.terms()
            .iter()
            .filter(|t| !linear::vanishes(&Expression::from_terms(vec![(*t).clone()])))
            .cloned()
            .collect(),
    )
}

/// Declared additive order of a composite class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub class: String,
    pub order: u64,
}

/// Orders of post-composed classes. Keys are `"v2∘η"` for `s_I v₂ ∘ η` and
/// the catch-all `"∘η"` for any other class post-composed with η.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RelationTable {
    pub relations: Vec<Relation>,
}

pub const RELATIONS_ENV: &str = "HF_RELATIONS";

impl Default for RelationTable {
    fn default() -> Self {
        Self {
            relations: vec![
                Relation {
                    class: "v2∘η".into(),
                    order: 2,
                },
                Relation {
                    class: "∘η".into(),
                    order: 2,
                },
            ],
        }
    }
}

impl RelationTable {
    pub fn empty() -> Self {
        Self {
            relations: Vec::new(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Domain(format!("relation table: {e}")))
    }

    /// The table named by `HF_RELATIONS`, or the default.
    pub fn from_env() -> Result<Self> {
        match env::var_os(RELATIONS_ENV) {
            None => Ok(Self::default()),
            Some(path) => {
                let text = fs::read_to_string(&path).map_err(|e| {
                    Error::Domain(format!("reading {}: {e}", path.to_string_lossy()))
                })?;
                Self::from_json(&text)
            }
        }
    }

    fn lookup(&self, class: &str) -> Option<u64> {
        self.relations
            .iter()
            .find(|r| r.class == class)
            .map(|r| r.order)
    }

    /// `None` for torsion-free terms, otherwise the declared order.
    pub fn order_of<C: Coefficient>(&self, t: &Term<C>) -> Result<Option<u64>> {
        if t.eta_post == 0 {
            return Ok(None);
        }
        let specific = match &t.tree {
            Tree::Leaf(l) if l.base == (Base::Eta { dim: 2 }) => Some("v2∘η"),
            _ => None,
        };
        if let Some(order) = specific.and_then(|k| self.lookup(k)) {
            return Ok(Some(order));
        }
        self.lookup("∘η").map(Some).ok_or_else(|| {
            let body = Combination::from_terms(vec![Term {
                coefficient: C::one(),
                ..t.clone()
            }]);
            Error::UnknownOrder(body.to_string())
        })
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn residue(c: i64, m: u64) -> i64 {
    let m = m as i64;
    c.rem_euclid(m)
}

/// Drops terms whose declared order is coprime to `p` and reduces every
/// coefficient to `0..p`.
pub fn reduce_mod_p(e: &Expression, p: u64, table: &RelationTable) -> Result<Expression> {
    if p < 2 {
        return Err(Error::Domain(format!("{p} is not a prime")));
    }
    let mut out = Vec::new();
    for t in e.terms() {
        if let Some(order) = table.order_of(t)? {
            if gcd(order, p) == 1 {
                continue;
            }
        }
        out.push(Term {
            coefficient: residue(t.coefficient, p),
            ..t.clone()
        });
    }
    Ok(Expression::from_terms(out))
}

/// Reduces the coefficient of each torsion term modulo its declared order.
pub fn reduce_by_orders(e: &Expression, table: &RelationTable) -> Result<Expression> {
    let mut out = Vec::new();
    for t in e.terms() {
        let coefficient = match table.order_of(t)? {
            Some(order) => residue(t.coefficient, order),
            None => t.coefficient,
        };
        out.push(Term {
            coefficient,
            ..t.clone()
        });
    }
    Ok(Expression::from_terms(out))
}

/// `a ≡ b (mod p)`: torsion terms of order coprime to `p` are dropped, then
/// the linear-model difference has every coefficient divisible by `p`.
pub fn congruent_mod_p(
    a: &Expression,
    b: &Expression,
    p: u64,
    table: &RelationTable,
) -> Result<bool> {
    let ra = reduce_mod_p(a, p, table)?;
    let rb = reduce_mod_p(b, p, table)?;
    let diff = linear::expand(&eliminate_eta_classes(&ra.sub(&rb)));
    let p = p as i64;
    let divisible = diff.iter().all(|(_, c)| c.numer() % p == 0);
    Ok(divisible)
}

/// Orients every bracket so that its left argument precedes its right one,
/// via `[a, b] = (−1)^{pq}[b, a]`.
pub fn normalize_antisymmetry(e: &Expression) -> Expression {
    fn go(t: &Tree) -> (i64, Tree) {
        match t {
            Tree::Leaf(_) => (1, t.clone()),
            Tree::Bracket(a, b) => {
                let (sa, ta) = go(a);
                let (sb, tb) = go(b);
                let s = sa * sb;
                if ta > tb {
                    let sign = minus_one_pow(ta.pi_degree() * tb.pi_degree());
                    (s * sign, Tree::bracket(tb, ta))
                } else {
                    (s, Tree::bracket(ta, tb))
                }
            }
        }
    }
    Expression::from_terms(
        e.terms()
            .iter()
            .map(|t| {
                let (s, tree) = go(&t.tree);
                Term {
                    coefficient: t.coefficient * s,
                    tree,
                    eta_post: t.eta_post,
                }
            })
            .collect(),
    )
}

/// Rewrites every bracket with a bracketed right argument by the Jacobi
/// identity `[X,[Y,Z]] = (−1)^{p+1}[[X,Y],Z] + (−1)^{p+1+qr}[[X,Z],Y]`
/// until all brackets are left-normed.
pub fn left_normed(e: &Expression) -> Expression {
    fn go(t: &Tree) -> Vec<(i64, Tree)> {
        match t {
            Tree::Leaf(_) => vec![(1, t.clone())],
            Tree::Bracket(a, b) => {
                let mut out = Vec::new();
                for (ca, ta) in go(a) {
                    for (cb, tb) in go(b) {
                        match &tb {
                            Tree::Leaf(_) => out.push((ca * cb, Tree::bracket(ta.clone(), tb))),
                            Tree::Bracket(y, z) => {
                                let p = ta.pi_degree();
                                let (q, r) = (y.pi_degree(), z.pi_degree());
                                let first = Tree::bracket(
                                    Tree::bracket(ta.clone(), y.as_ref().clone()),
                                    z.as_ref().clone(),
                                );
                                let second = Tree::bracket(
                                    Tree::bracket(ta.clone(), z.as_ref().clone()),
                                    y.as_ref().clone(),
                                );
                                for (s, tree) in [
                                    (minus_one_pow(p + 1), first),
                                    (minus_one_pow(p + 1 + q * r), second),
                                ] {
                                    for (c, u) in go(&tree) {
                                        out.push((ca * cb * s * c, u));
                                    }
                                }
                            }
                        }
                    }
                }
                out
            }
        }
    }
    let mut terms = Vec::new();
    for t in e.terms() {
        for (c, tree) in go(&t.tree) {
            terms.push(Term {
                coefficient: t.coefficient * c,
                tree,
                eta_post: t.eta_post,
            });
        }
    }
    Expression::from_terms(terms)
}

/// Whether a rational combination has only integer coefficients.
pub fn is_integral(e: &QExpression) -> bool {
    e.terms().iter().all(|t| t.coefficient.is_integer())
}

/// Integer combination from a rational one with integral coefficients.
pub fn to_integer(e: &QExpression) -> Option<Expression> {
    if !is_integral(e) {
        return None;
    }
    Some(Expression::from_terms(
        e.terms()
            .iter()
            .map(|t| Term {
                coefficient: t.coefficient.to_integer(),
                tree: t.tree.clone(),
                eta_post: t.eta_post,
            })
            .collect(),
    ))
}
