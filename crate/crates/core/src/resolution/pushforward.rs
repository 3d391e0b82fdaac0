//! Chain-level images under maps of resolutions given generator by generator.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::whitehead::rewrite::left_normed;
use crate::whitehead::{Base, Expression, Tree};

use super::{ChainElement, Resolution};

/// Images of non-degenerate generators; generators not listed map to
/// themselves.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MapTable {
    images: BTreeMap<Base, Expression>,
}

impl MapTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Rejects images whose π-degree differs from the generator's.
    pub fn insert(&mut self, generator: Base, image: Expression) -> Result<()> {
        if let Some(d) = image.pi_degree() {
            if d != generator.pi_degree() {
                return Err(Error::Degree(format!(
                    "{generator} has π-degree {} but its image {image} has {d}",
                    generator.pi_degree()
                )));
            }
        }
        self.images.insert(generator, image);
        Ok(())
    }

    pub fn get(&self, generator: &Base) -> Option<&Expression> {
        self.images.get(generator)
    }

    /// Level check against source and target resolutions.
    pub fn check_levels(&self, source: &Resolution, target: &Resolution) -> Result<()> {
        for (g, image) in &self.images {
            let level = source.level_of(g).ok_or_else(|| {
                Error::Structural(format!("{g} is not a generator of {}", source.name()))
            })?;
            for leaf in image.leaves() {
                let l = target.leaf_level(leaf)?;
                if l != level {
                    return Err(Error::Structural(format!(
                        "image of {g} at level {level} contains {leaf} at level {l}"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn push_tree(table: &MapTable, t: &Tree) -> Result<Expression> {
    match t {
        Tree::Leaf(leaf) => Ok(match table.get(&leaf.base) {
            Some(image) => image.apply_degeneracy(&leaf.degeneracies),
            None => Expression::tree(t.clone()),
        }),
        Tree::Bracket(a, b) => push_tree(table, a)?.bracket(&push_tree(table, b)?),
    }
}

/// Leafwise substitution; degeneracies are carried onto the image.
pub fn pushforward(table: &MapTable, c: &ChainElement) -> Result<ChainElement> {
    let mut out = Expression::zero();
    for term in c.expr.terms() {
        let mut image = push_tree(table, &term.tree)?.scale(&term.coefficient);
        for _ in 0..term.eta_post {
            image = image.compose_eta();
        }
        out = out.add(&image);
    }
    Ok(ChainElement::new(c.level, out))
}

/// The image together with its left-normed re-expression.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PushReport {
    pub image: ChainElement,
    pub left_normed: Expression,
}

pub fn pushforward_report(table: &MapTable, c: &ChainElement) -> Result<PushReport> {
    let image = pushforward(table, c)?;
    let left = left_normed(&image.expr);
    Ok(PushReport {
        image,
        left_normed: left,
    })
}
