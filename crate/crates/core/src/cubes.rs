//! Vertex statistics of the cube `{0,1}ⁿ`, boundary pieces of the subcubes
//! `L(η)`, and the wedge-level table assembled from them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vertex `J = (ε₁, …, εₙ)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubeVertex {
    bits: Vec<bool>,
}

impl CubeVertex {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// `J_k`: `k` ones followed by `n − k` zeros.
    pub fn initial(k: usize, n: usize) -> Self {
        Self::new((0..n).map(|i| i < k).collect())
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Coordinatewise order.
    pub fn le(&self, other: &Self) -> bool {
        self.len() == other.len() && self.bits.iter().zip(&other.bits).all(|(a, b)| a <= b)
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// All vertices of `{0,1}ⁿ` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = CubeVertex> {
        (0..1u64 << n)
            .map(move |m| CubeVertex::new((0..n).map(|i| m >> (n - 1 - i) & 1 == 1).collect()))
    }
}

impl fmt::Display for CubeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for CubeVertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Domain(format!(
                    "vertex {s:?} must consist of 0 and 1"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(CubeVertex::new)
    }
}

impl Serialize for CubeVertex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CubeVertex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexStats {
    pub ell: usize,
    pub lambda: usize,
    pub remainder: CubeVertex,
    /// Set for the all-ones vertex, where no zero ends the initial block and
    /// the remainder is taken to be empty.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub flagged: bool,
}

/// `(ℓ(J), λ(J), R(J))`.
pub fn vertex_stats(j: &CubeVertex) -> VertexStats {
    let ell = j.bits.iter().take_while(|&&b| b).count();
    let flagged = ell == j.len();
    let remainder = if flagged {
        CubeVertex::new(Vec::new())
    } else {
        CubeVertex::new(j.bits[ell + 1..].to_vec())
    };
    VertexStats {
        ell,
        lambda: j.ones(),
        remainder,
        flagged,
    }
}

/// One coordinate of a cube cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Interval {
    P0,
    P1,
    I,
}

/// A face of the unit cube as a product of points and intervals.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CubeCell(pub Vec<Interval>);

impl CubeCell {
    pub fn dim(&self) -> usize {
        self.0.iter().filter(|c| **c == Interval::I).count()
    }

    /// Whether `self` is a face of `other`.
    pub fn is_face_of(&self, other: &CubeCell) -> bool {
        self.0.len() == other.0.len()
            && self
                .0
                .iter()
                .zip(&other.0)
                .all(|(a, b)| a == b || *b == Interval::I)
    }

    /// All faces, including the cell itself.
    pub fn faces(&self) -> Vec<CubeCell> {
        let mut out = vec![Vec::new()];
        for c in &self.0 {
            let options: &[Interval] = match c {
                Interval::I => &[Interval::P0, Interval::P1, Interval::I],
                Interval::P0 => &[Interval::P0],
                Interval::P1 => &[Interval::P1],
            };
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<Interval>| {
                    options.iter().map(move |o| {
                        let mut p = prefix.clone();
                        p.push(*o);
                        p
                    })
                })
                .collect();
        }
        let mut cells: Vec<CubeCell> = out.into_iter().map(CubeCell).collect();
        cells.sort();
        cells
    }
}

impl fmt::Display for CubeCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("×")?;
            }
            f.write_str(match c {
                Interval::P0 => "{0}",
                Interval::P1 => "{1}",
                Interval::I => "[0,1]",
            })?;
        }
        Ok(())
    }
}

/// `L(η)` with its two boundary pieces. Each piece is stored both by its
/// maximal cells and as the full set of cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubcubeRegion {
    pub eta: CubeVertex,
    pub cube: CubeCell,
    pub minus_facets: Vec<CubeCell>,
    pub plus_facets: Vec<CubeCell>,
    pub cells: Vec<CubeCell>,
    pub minus: Vec<CubeCell>,
    pub plus: Vec<CubeCell>,
}

impl SubcubeRegion {
    pub fn dim(&self) -> usize {
        self.cube.dim()
    }

    /// `∂L`, the union of the two pieces.
    pub fn boundary(&self) -> Vec<CubeCell> {
        let mut b: Vec<CubeCell> = self.minus.iter().chain(&self.plus).cloned().collect();
        b.sort();
        b.dedup();
        b
    }

    pub fn intersection(&self) -> Vec<CubeCell> {
        self.minus
            .iter()
            .filter(|c| self.plus.binary_search(c).is_ok())
            .cloned()
            .collect()
    }

    /// Reduced Euler characteristic of `∂₊L / (∂₋L ∩ ∂₊L)`; equals that of
    /// a `(λ − 1)`-sphere when `λ ≥ 1`.
    pub fn quotient_euler(&self) -> i64 {
        euler(&self.plus) - euler(&self.intersection())
    }
}

/// Alternating cell count.
pub fn euler(cells: &[CubeCell]) -> i64 {
    cells
        .iter()
        .map(|c| if c.dim() % 2 == 0 { 1 } else { -1 })
        .sum()
}

/// The subcube `0 ≤ tᵢ ≤ εᵢ` and its boundary pieces: `∂₋` is where some
/// free coordinate sits at 0, `∂₊` where some free coordinate sits at 1.
pub fn boundary_split(eta: &CubeVertex) -> SubcubeRegion {
    let cube = CubeCell(
        eta.bits()
            .iter()
            .map(|&b| if b { Interval::I } else { Interval::P0 })
            .collect(),
    );
    let facet = |i: usize, end: Interval| {
        let mut c = cube.clone();
        c.0[i] = end;
        c
    };
    let free: Vec<usize> = (0..eta.len()).filter(|&i| eta.bits()[i]).collect();
    let minus_facets: Vec<CubeCell> = free.iter().map(|&i| facet(i, Interval::P0)).collect();
    let plus_facets: Vec<CubeCell> = free.iter().map(|&i| facet(i, Interval::P1)).collect();
    let cells = cube.faces();
    let union = |facets: &[CubeCell]| -> Vec<CubeCell> {
        cells
            .iter()
            .filter(|c| facets.iter().any(|f| c.is_face_of(f)))
            .cloned()
            .collect()
    };
    let minus = union(&minus_facets);
    let plus = union(&plus_facets);
    SubcubeRegion {
        eta: eta.clone(),
        cube,
        minus_facets,
        plus_facets,
        cells,
        minus,
        plus,
    }
}

/// One simplicial level of the wedge assembly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WedgeLevel {
    pub level: isize,
    /// Carries the extra homotopy-colimit summand `C_{n−1}`.
    pub cofiber: bool,
    pub summands: Vec<CubeVertex>,
}

/// Levels `k = n − 1, …, −1` with summands `λ(J) = n − k − 1`; the
/// cofiber summand sits at level 1.
pub fn wedge_levels(n: usize) -> Result<Vec<WedgeLevel>> {
    if n < 3 {
        return Err(Error::Domain(format!("wedge levels need n >= 3, got {n}")));
    }
    let mut out = Vec::with_capacity(n + 1);
    for k in (-1..n as isize).rev() {
        let lambda = (n as isize - k - 1) as usize;
        out.push(WedgeLevel {
            level: k,
            cofiber: k == 1,
            summands: CubeVertex::all(n).filter(|j| j.ones() == lambda).collect(),
        });
    }
    Ok(out)
}

/// `d_i` on a summand: the `(i+1)`st zero becomes a one.
pub fn wedge_face(j: &CubeVertex, i: usize) -> Result<CubeVertex> {
    let pos = j
        .bits()
        .iter()
        .enumerate()
        .filter(|(_, &b)| !b)
        .nth(i)
        .map(|(p, _)| p)
        .ok_or_else(|| Error::Range(format!("{j} has no zero number {}", i + 1)))?;
    let mut bits = j.bits().to_vec();
    bits[pos] = true;
    Ok(CubeVertex::new(bits))
}

/// `(J, i, j)` with `d_i d_j J ≠ d_{j−1} d_i J`, over every summand.
pub fn wedge_identity_failures(n: usize) -> Result<Vec<(CubeVertex, usize, usize)>> {
    let mut bad = Vec::new();
    for level in wedge_levels(n)? {
        if level.level < 1 {
            continue;
        }
        let k = level.level as usize;
        for j in &level.summands {
            for b in 1..=k {
                for a in 0..b {
                    let lhs = wedge_face(&wedge_face(j, b)?, a)?;
                    let rhs = wedge_face(&wedge_face(j, a)?, b - 1)?;
                    if lhs != rhs {
                        bad.push((j.clone(), a, b));
                    }
                }
            }
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> CubeVertex {
        s.parse().unwrap()
    }

    #[test]
    fn stats() {
        let s = vertex_stats(&v("11101010"));
        assert_eq!(
            (s.ell, s.lambda, s.remainder.to_string()),
            (3, 5, "1010".into())
        );
        let s = vertex_stats(&CubeVertex::initial(2, 5));
        assert_eq!(
            (s.ell, s.lambda, s.remainder.to_string()),
            (2, 2, "00".into())
        );
        let s = vertex_stats(&v("0000"));
        assert_eq!(
            (s.ell, s.lambda, s.remainder.to_string()),
            (0, 0, "000".into())
        );
        let s = vertex_stats(&v("111"));
        assert!(s.flagged && s.remainder.is_empty());
    }

    #[test]
    fn split_of_1010() {
        let r = boundary_split(&v("1010"));
        assert_eq!(r.cube.to_string(), "[0,1]×{0}×[0,1]×{0}");
        let show = |cs: &[CubeCell]| cs.iter().map(|c| c.to_string()).collect::<Vec<_>>();
        assert_eq!(
            show(&r.plus_facets),
            vec!["{1}×{0}×[0,1]×{0}", "[0,1]×{0}×{1}×{0}"]
        );
        assert_eq!(
            show(&r.minus_facets),
            vec!["{0}×{0}×[0,1]×{0}", "[0,1]×{0}×{0}×{0}"]
        );
        assert_eq!(r.boundary().len(), 8);
        assert_eq!(r.quotient_euler(), -1);
    }

    #[test]
    fn point_region() {
        let r = boundary_split(&v("000"));
        assert_eq!(r.dim(), 0);
        assert!(r.minus.is_empty() && r.plus.is_empty());
    }

    #[test]
    fn levels_for_three() {
        let t = wedge_levels(3).unwrap();
        let at = |k: isize| t.iter().find(|l| l.level == k).unwrap();
        assert_eq!(at(2).summands, vec![v("000")]);
        assert!(at(1).cofiber);
        assert_eq!(at(1).summands, vec![v("001"), v("010"), v("100")]);
        assert_eq!(at(-1).summands, vec![v("111")]);
        assert_eq!(wedge_face(&v("000"), 1).unwrap(), v("010"));
    }
}
