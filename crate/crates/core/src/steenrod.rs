//! Admissible monomials in the Steenrod algebra and the generator systems
//! they give for the mod `p` cohomology of integral Eilenberg–Mac Lane
//! spaces and of the associated subalgebras `E⁰(p)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `Sq^{i₀} ⋯ Sq^{i_s}`; the empty word is the identity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SqMonomial(pub Vec<u32>);

impl SqMonomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `i_j ≥ 2 i_{j+1}`, all entries positive.
    pub fn is_admissible(&self) -> bool {
        self.0.iter().all(|&i| i > 0) && self.0.windows(2).all(|w| w[0] >= 2 * w[1])
    }

    /// `i₀ − (i₁ + ⋯ + i_s)`.
    pub fn excess(&self) -> i64 {
        match self.0.split_first() {
            None => 0,
            Some((&first, rest)) => {
                i64::from(first) - rest.iter().map(|&i| i64::from(i)).sum::<i64>()
            }
        }
    }
}

impl fmt::Display for SqMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "Sq({})", parts.join(","))
    }
}

/// `β^{ε₀} P^{i₀} β^{ε₁} ⋯ P^{i_s} β^{ε_{s+1}}`.
///
/// `bocksteins` has one more entry than `powers`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PMonomial {
    pub bocksteins: Vec<u8>,
    pub powers: Vec<u32>,
}

impl PMonomial {
    pub fn new(bocksteins: Vec<u8>, powers: Vec<u32>) -> Result<Self> {
        if bocksteins.len() != powers.len() + 1 || bocksteins.iter().any(|&e| e > 1) {
            return Err(Error::Domain(format!(
                "malformed monomial: bocksteins {bocksteins:?}, powers {powers:?}"
            )));
        }
        Ok(Self { bocksteins, powers })
    }

    /// Powers only, no Bocksteins.
    pub fn plain(powers: Vec<u32>) -> Self {
        Self {
            bocksteins: vec![0; powers.len() + 1],
            powers,
        }
    }

    pub fn identity() -> Self {
        Self::plain(Vec::new())
    }

    pub fn is_identity(&self) -> bool {
        self.powers.is_empty() && self.bocksteins[0] == 0
    }

    pub fn degree(&self, p: u32) -> u32 {
        self.powers.iter().map(|&i| 2 * i * (p - 1)).sum::<u32>()
            + self.bocksteins.iter().map(|&e| u32::from(e)).sum::<u32>()
    }

    /// `i_j ≥ p i_{j+1} + ε_{j+1}`, all powers positive.
    pub fn is_admissible(&self, p: u32) -> bool {
        self.powers.iter().all(|&i| i > 0)
            && self
                .powers
                .windows(2)
                .enumerate()
                .all(|(j, w)| w[0] >= p * w[1] + u32::from(self.bocksteins[j + 1]))
    }

    /// `2i₀ + ε₀ − deg(rest)`, with `rest` the word after `β^{ε₀}P^{i₀}`.
    pub fn excess(&self, p: u32) -> i64 {
        let e0 = i64::from(self.bocksteins[0]);
        match self.powers.split_first() {
            None => e0,
            Some((&first, rest)) => {
                let tail = PMonomial {
                    bocksteins: self.bocksteins[1..].to_vec(),
                    powers: rest.to_vec(),
                };
                2 * i64::from(first) + e0 - i64::from(tail.degree(p))
            }
        }
    }

    pub fn last_bockstein(&self) -> u8 {
        *self.bocksteins.last().expect("nonempty")
    }
}

impl fmt::Display for PMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (j, e) in self.bocksteins.iter().enumerate() {
            if *e == 1 {
                parts.push("b".to_string());
            }
            if let Some(i) = self.powers.get(j) {
                parts.push(format!("P{i}"));
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "word")]
pub enum Word {
    Sq(SqMonomial),
    P(PMonomial),
    /// `ι^e` of the fundamental class.
    Power(u32),
}

/// A polynomial (even, or any degree at `p = 2`) or exterior generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub word: Word,
    pub degree: u32,
    pub exterior: bool,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.word {
            Word::Sq(m) if m.0.is_empty() => write!(f, "i ({})", self.degree),
            Word::Sq(m) => write!(f, "{m} i ({})", self.degree),
            Word::P(m) if m.is_identity() => write!(f, "i ({})", self.degree),
            Word::P(m) => write!(f, "{m} i ({})", self.degree),
            Word::Power(e) => write!(f, "i^{e} ({})", self.degree),
        }
    }
}

fn check_prime(p: u32) -> Result<()> {
    if p < 2
        || (2..p)
            .take_while(|d| d * d <= p)
            .any(|d| p.is_multiple_of(d))
    {
        return Err(Error::Domain(format!("{p} is not a prime")));
    }
    Ok(())
}

/// Admissible `Sq^I` with `|I| ≤ maxdeg`, including the empty word,
/// length-lexicographic within each degree.
pub fn admissible_sq(maxdeg: u32) -> Vec<SqMonomial> {
    // extend on the right: the new last entry is at most half the old one
    fn grow(prefix: &mut Vec<u32>, last_max: u32, budget: u32, out: &mut Vec<SqMonomial>) {
        for i in 1..=last_max.min(budget) {
            prefix.push(i);
            out.push(SqMonomial(prefix.clone()));
            grow(prefix, i / 2, budget - i, out);
            prefix.pop();
        }
    }
    let mut out = vec![SqMonomial(Vec::new())];
    grow(&mut Vec::new(), maxdeg, maxdeg, &mut out);
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.0.cmp(&b.0)));
    out
}

/// Admissible `P^I` with Bockstein bits, of degree `≤ maxdeg`.
pub fn admissible_p(p: u32, maxdeg: u32) -> Vec<PMonomial> {
    let step = 2 * (p - 1);
    // power sequences with i_j ≥ p i_{j+1}; Bockstein bits only tighten this
    fn grow(p: u32, step: u32, prefix: &mut Vec<u32>, budget: u32, out: &mut Vec<Vec<u32>>) {
        let bound = prefix
            .last()
            .map_or(budget / step, |&prev| (prev / p).min(budget / step));
        for i in 1..=bound {
            prefix.push(i);
            out.push(prefix.clone());
            grow(p, step, prefix, budget - i * step, out);
            prefix.pop();
        }
    }
    let mut sequences = vec![Vec::new()];
    grow(p, step, &mut Vec::new(), maxdeg, &mut sequences);
    let mut out = Vec::new();
    for powers in sequences {
        let slots = powers.len() + 1;
        for mask in 0u32..1 << slots {
            let bocksteins = (0..slots).map(|j| (mask >> j & 1) as u8).collect();
            let m = PMonomial {
                bocksteins,
                powers: powers.clone(),
            };
            if m.is_admissible(p) && m.degree(p) <= maxdeg {
                out.push(m);
            }
        }
    }
    out.sort_by(|a, b| {
        a.degree(p)
            .cmp(&b.degree(p))
            .then_with(|| a.powers.cmp(&b.powers))
            .then_with(|| a.bocksteins.cmp(&b.bocksteins))
    });
    out
}

fn sq_generators(k: u32, maxdeg: u32, bound: i64, nonempty: bool) -> Vec<Generator> {
    if maxdeg < k {
        return Vec::new();
    }
    admissible_sq(maxdeg - k)
        .into_iter()
        .filter(|m| !(nonempty && m.0.is_empty()))
        .filter(|m| m.0.last() != Some(&1) && m.excess() < bound)
        .map(|m| Generator {
            degree: k + m.degree(),
            word: Word::Sq(m),
            exterior: false,
        })
        .collect()
}

fn p_generators(p: u32, k: u32, maxdeg: u32, bound: i64, nonempty: bool) -> Vec<Generator> {
    if maxdeg < k {
        return Vec::new();
    }
    admissible_p(p, maxdeg - k)
        .into_iter()
        .filter(|m| !(nonempty && m.is_identity()))
        .filter(|m| m.last_bockstein() == 0 && m.excess(p) < bound)
        .map(|m| {
            let degree = k + m.degree(p);
            Generator {
                degree,
                word: Word::P(m),
                exterior: degree % 2 == 1,
            }
        })
        .collect()
}

fn sort_generators(gens: &mut [Generator]) {
    gens.sort_by(|a, b| {
        a.degree
            .cmp(&b.degree)
            .then_with(|| format!("{a}").cmp(&format!("{b}")))
    });
}

/// Generators of `H*(K(ℤ₍ₚ₎, k); F_p)` through `maxdeg`, the fundamental
/// class included.
///
/// `p = 2`: admissible `I` with `i_s ≠ 1` and `ex(I) < k`. Odd `p`:
/// admissible `I` with `ε_{s+1} = 0` and `ex(I) < k − 1`.
pub fn em_generators(p: u32, k: u32, maxdeg: u32) -> Result<Vec<Generator>> {
    check_prime(p)?;
    if k < 2 {
        return Err(Error::Domain(format!("need k >= 2, got {k}")));
    }
    let mut gens = if p == 2 {
        sq_generators(k, maxdeg, i64::from(k), false)
    } else {
        p_generators(p, k, maxdeg, i64::from(k) - 1, false)
    };
    sort_generators(&mut gens);
    Ok(gens)
}

/// Generators of `E⁰(p) ⊂ H*(K(ℤ₍ₚ₎, k−1); F_p)` through `maxdeg`.
///
/// `p = 2`: `ι²_{k−1}` and `Sq^I ι_{k−1}` for `I ≠ 0`, `i_s ≠ 1`,
/// `ex(I) < k − 1`. Odd `p`, `k` odd: `ι^p_{k−1}` and `P^I ι_{k−1}` for
/// `I ≠ 0`, `ε_{s+1} = 0`, `ex(I) < k`, where `P^{(k−1)/2} ι_{k−1}` is the
/// power itself and is listed once. Odd `p`, `k` even: `P^I ι_{k−1}` as
/// before with `ex(I) < k − 1`, and no power generator.
pub fn e0_generators(p: u32, k: u32, maxdeg: u32) -> Result<Vec<Generator>> {
    check_prime(p)?;
    if k < 3 {
        return Err(Error::Domain(format!("need k >= 3, got {k}")));
    }
    let base = k - 1;
    let mut gens = Vec::new();
    if p == 2 {
        if 2 * base <= maxdeg {
            gens.push(Generator {
                word: Word::Power(2),
                degree: 2 * base,
                exterior: false,
            });
        }
        gens.extend(sq_generators(base, maxdeg, i64::from(k) - 1, true));
    } else if k % 2 == 1 {
        if p * base <= maxdeg {
            gens.push(Generator {
                word: Word::Power(p),
                degree: p * base,
                exterior: false,
            });
        }
        let top = PMonomial::plain(vec![base / 2]);
        gens.extend(
            p_generators(p, base, maxdeg, i64::from(k), true)
                .into_iter()
                .filter(|g| g.word != Word::P(top.clone())),
        );
    } else {
        gens.extend(p_generators(p, base, maxdeg, i64::from(k) - 1, true));
    }
    sort_generators(&mut gens);
    Ok(gens)
}

/// `E⁰(2)` for `k` obtained from the generators of `K(ℤ₍₂₎, k−1)` by the
/// Wang rule: `ι_{k−1}` is hit by the differential and replaced by `ι²`,
/// every other generator survives.
pub fn wang_transform(em: &[Generator], base: u32) -> Vec<Generator> {
    let mut out: Vec<Generator> = em
        .iter()
        .map(|g| match &g.word {
            Word::Sq(m) if m.0.is_empty() => Generator {
                word: Word::Power(2),
                degree: 2 * base,
                exterior: false,
            },
            _ => g.clone(),
        })
        .collect();
    sort_generators(&mut out);
    out
}

/// Dimensions through `maxdeg` of the free graded-commutative algebra on
/// the generators: polynomial on the non-exterior ones, exterior on the rest.
pub fn poincare_series(gens: &[Generator], maxdeg: u32) -> Vec<u64> {
    let n = maxdeg as usize + 1;
    let mut series = vec![0u64; n];
    series[0] = 1;
    for g in gens {
        let d = g.degree as usize;
        if d == 0 || d >= n {
            continue;
        }
        if g.exterior {
            for t in (d..n).rev() {
                series[t] += series[t - d];
            }
        } else {
            for t in d..n {
                series[t] += series[t - d];
            }
        }
    }
    series
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility_and_excess() {
        assert!(SqMonomial(vec![4, 2]).is_admissible());
        assert!(!SqMonomial(vec![2, 2]).is_admissible());
        assert_eq!(SqMonomial(vec![4, 2]).excess(), 2);
        assert_eq!(SqMonomial(vec![2, 1]).excess(), 1);
        assert_eq!(SqMonomial(vec![5]).excess(), 5);
        assert!(PMonomial::plain(vec![3, 1]).is_admissible(3));
        assert!(PMonomial::new(vec![0, 0, 1], vec![3, 1])
            .unwrap()
            .is_admissible(3));
        assert!(!PMonomial::new(vec![0, 1, 0], vec![3, 1])
            .unwrap()
            .is_admissible(3));
        assert_eq!(PMonomial::plain(vec![2]).excess(3), 4);
        assert_eq!(PMonomial::new(vec![1, 0], vec![1]).unwrap().excess(3), 3);
    }

    #[test]
    fn k2_and_k3_at_two() {
        let g = em_generators(2, 2, 40).unwrap();
        assert_eq!(g.len(), 1);
        let d: Vec<u32> = em_generators(2, 3, 10)
            .unwrap()
            .iter()
            .map(|g| g.degree)
            .collect();
        assert_eq!(d, vec![3, 5, 9]);
    }

    #[test]
    fn e0_at_two_for_k4() {
        let g = e0_generators(2, 4, 12).unwrap();
        let shown: Vec<String> = g.iter().map(|g| g.to_string()).collect();
        assert!(shown.contains(&"i^2 (6)".to_string()));
        assert!(shown.contains(&"Sq(2) i (5)".to_string()));
        assert!(!shown.contains(&"Sq(3) i (6)".to_string()));
    }

    #[test]
    fn odd_prime_cases() {
        for k in [4, 6] {
            let g = e0_generators(3, k, 60).unwrap();
            assert!(g.iter().all(|g| !matches!(g.word, Word::Power(_))));
        }
        for k in [3, 5, 7] {
            let g = e0_generators(3, k, 80).unwrap();
            let power = g.iter().find(|g| g.word == Word::Power(3)).unwrap();
            let top = PMonomial::plain(vec![(k - 1) / 2]);
            assert_eq!(power.degree, k - 1 + top.degree(3));
        }
    }

    #[test]
    fn series_basics() {
        let even = Generator {
            word: Word::Power(1),
            degree: 2,
            exterior: false,
        };
        assert_eq!(poincare_series(&[even], 6), vec![1, 0, 1, 0, 1, 0, 1]);
        let odd = Generator {
            word: Word::Power(1),
            degree: 3,
            exterior: true,
        };
        assert_eq!(poincare_series(&[odd], 6), vec![1, 0, 0, 1, 0, 0, 0]);
    }
}
