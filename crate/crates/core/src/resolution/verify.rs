//! Verification routines for the `CPⁿ` cycles and the torsion computations
//! around them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sign::IndexSet;
use crate::whitehead::rewrite::{
    drop_vanishing_terms, normalize_antisymmetry, reduce_by_orders, reduce_mod_p,
    rewrite_eta_brackets, rewrite_whitehead_square, RelationTable,
};
use crate::whitehead::{linear, Expression, Term};

use super::chains::{gamma, gamma_terms};
use super::{
    certificate, cpn_resolution, face_residue, Certificate, ChainElement, FaceResidue, Resolution,
};

/// `is_cycle(γₙ)` in the `CPⁿ` resolution.
pub fn verify_gamma(n: usize) -> Result<Certificate> {
    let r = cpn_resolution(n)?;
    let c = gamma(n)?;
    let faces = (0..=c.level)
        .map(|i| gamma_face(&r, &c, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(certificate(&c, &r, faces))
}

/// One face residue of a chain; independent faces may be computed in
/// parallel by callers.
pub fn gamma_face(r: &Resolution, c: &ChainElement, index: usize) -> Result<FaceResidue> {
    let f = r.apply_face(index, &c.expr)?;
    Ok(face_residue(index, &f))
}

/// Outcome of the transposition-pairing argument for one face `d_r γₙ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingReport {
    pub face: usize,
    /// Terms whose image vanishes outright.
    pub killed: usize,
    /// Pairs of terms with equal images and opposite signs.
    pub pairs: Vec<(usize, usize)>,
    /// Terms that are their own partner, with image `[x, x]` killed by
    /// graded antisymmetry.
    pub self_paired: Vec<usize>,
    /// Images that could not be paired off.
    pub unpaired: Vec<String>,
}

impl PairingReport {
    pub fn ok(&self) -> bool {
        self.unpaired.is_empty()
    }
}

/// Exchanges `r − 1` and `r`, the two degeneracies that `d_r` collapses.
fn swap(set: &IndexSet, r: usize) -> IndexSet {
    IndexSet::new(set.as_slice().iter().map(|&x| {
        if x == r {
            r - 1
        } else if x + 1 == r {
            r
        } else {
            x
        }
    }))
}

/// For `r ≥ 1`, certifies `d_r γₙ = 0` syntactically: each term's image is
/// either zero or equal to the image of the term obtained by exchanging
/// `r − 1` and `r` between `I` and `Φ(I)`, with opposite coefficient.
pub fn transposition_pairing(n: usize, r: usize) -> Result<PairingReport> {
    if r == 0 || r >= n {
        return Err(Error::Domain(format!(
            "pairing needs 1 <= r <= n-1, got r={r}"
        )));
    }
    let res = cpn_resolution(n)?;
    let terms = gamma_terms(n)?;
    let mut killed = 0;
    let mut groups: BTreeMap<String, Vec<(usize, i64)>> = BTreeMap::new();
    let mut images = Vec::with_capacity(terms.len());
    let mut unpaired = Vec::new();
    for (k, t) in terms.iter().enumerate() {
        let single = Expression::from_terms(vec![Term::new(t.coefficient, t.tree.clone())]);
        let image = normalize_antisymmetry(&res.apply_face(r, &single)?);
        images.push(image.clone());
        match image.terms() {
            [] => killed += 1,
            [only] => {
                let key = format!("{}|{}", only.tree, only.eta_post);
                groups.entry(key).or_default().push((k, only.coefficient));
            }
            _ => unpaired.push(image.to_string()),
        }
    }
    let mut pairs = Vec::new();
    let mut self_paired = Vec::new();
    // with equal sphere degrees the partner may appear transposed
    let related = |a: usize, b: usize| {
        let (ta, tb) = (&terms[a], &terms[b]);
        let (i, phi) = (swap(&ta.i, r), swap(&ta.phi, r));
        (ta.j == tb.j && i == tb.i && phi == tb.phi)
            || (2 * ta.j == n + 3 && ta.j == tb.j && i == tb.phi && phi == tb.i)
    };
    for (key, members) in groups {
        match members.as_slice() {
            [(a, ca), (b, cb)] if ca + cb == 0 && related(*a, *b) => pairs.push((*a, *b)),
            [(a, _)] if related(*a, *a) && linear::vanishes(&images[*a]) => self_paired.push(*a),
            _ => unpaired.push(key),
        }
    }
    Ok(PairingReport {
        face: r,
        killed,
        pairs,
        self_paired,
        unpaired,
    })
}

/// One labelled stage of a rewriting chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub rule: String,
    pub expr: Expression,
}

/// `d₀γ₂` in the `CP²` resolution, rewritten to zero: η-bracket naturality,
/// the Whitehead square, and the declared order of `v₂∘η`.
pub fn cp2_chain(table: &RelationTable) -> Result<Vec<Step>> {
    let r = cpn_resolution(2)?;
    let g2 = gamma(2)?;
    let mut steps = Vec::new();
    let d0 = r.apply_face(0, &g2.expr)?;
    steps.push(Step {
        rule: "d0".into(),
        expr: d0.clone(),
    });
    let nat = drop_vanishing_terms(&rewrite_eta_brackets(&d0));
    steps.push(Step {
        rule: "eta-bracket".into(),
        expr: nat.clone(),
    });
    let sq = rewrite_whitehead_square(&nat);
    steps.push(Step {
        rule: "whitehead-square".into(),
        expr: sq.clone(),
    });
    steps.push(Step {
        rule: "orders".into(),
        expr: reduce_by_orders(&sq, table)?,
    });
    Ok(steps)
}

/// Faces of `c` pushed through the square rewrite and the η-bracket rule,
/// then reduced mod `p`.
pub fn faces_mod_p(
    c: &ChainElement,
    r: &Resolution,
    p: u64,
    table: &RelationTable,
) -> Result<Vec<Expression>> {
    c.faces(r)?
        .into_iter()
        .map(|f| {
            let e = rewrite_eta_brackets(&rewrite_whitehead_square(&f.expr));
            reduce_mod_p(&e, p, table)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::whitehead::parse_expression;

    #[test]
    fn small_gammas_verify() {
        for n in 2..=4 {
            let cert = verify_gamma(n).unwrap();
            assert!(cert.verified(), "{cert:?}");
            assert_eq!(cert.faces.len(), n);
        }
    }

    #[test]
    fn pairing_for_small_gammas() {
        for n in 3..=5 {
            for r in 1..n {
                let rep = transposition_pairing(n, r).unwrap();
                assert!(rep.ok(), "{rep:?}");
            }
        }
        assert_eq!(transposition_pairing(3, 1).unwrap().self_paired, vec![1]);
    }

    #[test]
    fn cp2_steps() {
        let steps = cp2_chain(&RelationTable::default()).unwrap();
        let shown: Vec<String> = steps.iter().map(|s| s.expr.to_string()).collect();
        assert_eq!(
            shown,
            vec!["[v2, i2]", "[i2, i2] o eta3", "2*v2 o eta3", "0"]
        );
        assert_eq!(steps[1].expr, parse_expression("[i2, i2] o eta3").unwrap());
    }
}
