//! Named resolution families behind a common trait, selected at runtime by
//! strings of the form `name:argument`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::whitehead::{Base, Expression};

use super::chains::gamma;
use super::Resolution;

pub trait ResolutionFamily: Send + Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn build(&self, argument: &str) -> Result<Resolution>;
}

/// Family letters for several sphere summands.
const FAMILIES: &[char] = &[
    'a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'j', 'k', 'l', 'm', 'n',
];

/// `Y ⊗ Sⁿ` for `Y` a wedge of spheres of the given dimensions.
///
/// A single sphere is named `i<dim>`, several are named `a<dim>`, `b<dim>`,
/// and so on. The generators sit at level `n` with all faces zero.
pub fn suspension_resolution(spheres: &[u32], n: usize) -> Result<Resolution> {
    if n == 0 {
        return Err(Error::Domain("suspension needs n >= 1".into()));
    }
    if spheres.is_empty() || spheres.len() > FAMILIES.len() {
        return Err(Error::Domain(format!(
            "suspension needs 1 to {} spheres, got {}",
            FAMILIES.len(),
            spheres.len()
        )));
    }
    if let Some(d) = spheres.iter().find(|&&d| d == 0) {
        return Err(Error::Domain(format!(
            "sphere dimension {d} must be positive"
        )));
    }
    let list: Vec<String> = spheres.iter().map(|d| format!("s{d}")).collect();
    let name = if n == 1 {
        format!("susp:{}", list.join(","))
    } else {
        format!("susp:{}/{n}", list.join(","))
    };
    let mut r = Resolution::new(name);
    for (k, &d) in spheres.iter().enumerate() {
        let base = if spheres.len() == 1 {
            Base::iota(d)
        } else {
            Base::sphere(FAMILIES[k], d)
        };
        r.add_generator(base.clone(), n);
        for i in 0..=n {
            r.set_face(base.clone(), i, Expression::zero());
        }
    }
    Ok(r)
}

/// Resolution of `CPⁿ`: `ι_{k+2}` at level `k < n`, with `d₀ι₃ = v₂`,
/// `d₀ι_m = γ_{m−2}` for `m ≥ 4` and all higher faces zero.
pub fn cpn_resolution(n: usize) -> Result<Resolution> {
    if n == 0 {
        return Err(Error::Domain("CPⁿ needs n >= 1".into()));
    }
    let mut r = Resolution::new(format!("cpn:{n}"));
    for k in 0..n {
        let m = (k + 2) as u32;
        let base = Base::iota(m);
        r.add_generator(base.clone(), k);
        if k == 0 {
            continue;
        }
        let d0 = if m == 3 {
            Expression::leaf(Base::Eta { dim: 2 }, Default::default())
        } else {
            gamma(k)?.expr
        };
        r.set_face(base.clone(), 0, d0);
        for i in 1..=k {
            r.set_face(base.clone(), i, Expression::zero());
        }
    }
    Ok(r)
}

struct Cpn;

impl ResolutionFamily for Cpn {
    fn name(&self) -> &'static str {
        "cpn"
    }

    fn describe(&self) -> &'static str {
        "cpn:N  resolution of complex projective N-space"
    }

    fn build(&self, argument: &str) -> Result<Resolution> {
        let n = parse_count(argument, "cpn")?;
        cpn_resolution(n)
    }
}

struct Suspension;

impl ResolutionFamily for Suspension {
    fn name(&self) -> &'static str {
        "susp"
    }

    fn describe(&self) -> &'static str {
        "susp:sP[,sQ...][/N]  N-fold suspension resolution of a wedge of spheres (N = 1 by default)"
    }

    fn build(&self, argument: &str) -> Result<Resolution> {
        let bad = || Error::Domain(format!("bad suspension argument {argument:?}"));
        let (list, n) = match argument.split_once('/') {
            Some((l, n)) => (l, n.trim().parse::<usize>().map_err(|_| bad())?),
            None => (argument, 1),
        };
        let spheres = list
            .split(',')
            .map(|s| {
                s.trim()
                    .strip_prefix('s')
                    .and_then(|d| d.parse::<u32>().ok())
                    .ok_or_else(bad)
            })
            .collect::<Result<Vec<u32>>>()?;
        suspension_resolution(&spheres, n)
    }
}

pub(crate) fn parse_count(argument: &str, what: &str) -> Result<usize> {
    argument
        .trim()
        .parse()
        .map_err(|_| Error::Domain(format!("{what}: expected an integer, got {argument:?}")))
}

pub struct ResolutionRegistry {
    families: BTreeMap<&'static str, Box<dyn ResolutionFamily>>,
}

impl Default for ResolutionRegistry {
    fn default() -> Self {
        let mut r = Self {
            families: BTreeMap::new(),
        };
        r.register(Box::new(Cpn));
        r.register(Box::new(Suspension));
        r
    }
}

impl ResolutionRegistry {
    pub fn register(&mut self, family: Box<dyn ResolutionFamily>) {
        self.families.insert(family.name(), family);
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.families.keys().copied()
    }

    pub fn descriptions(&self) -> Vec<&'static str> {
        self.families.values().map(|f| f.describe()).collect()
    }

    /// Builds from `name:argument`.
    pub fn build(&self, selector: &str) -> Result<Resolution> {
        let (name, argument) = selector.split_once(':').unwrap_or((selector, ""));
        let family = self
            .families
            .get(name.trim())
            .ok_or_else(|| Error::Unknown {
                kind: "resolution family",
                name: name.to_string(),
            })?;
        family.build(argument)
    }
}
