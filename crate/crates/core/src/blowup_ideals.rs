//! Monomial ideals for the orderly blowup: products, principality, and the
//! disorderly ideal of a list of adjusting parameters.

use std::cmp::Reverse;
use std::fmt;

use crate::error::{Error, Result};
use crate::level_graph::EnhancedLevelGraph;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub exponents: Vec<u64>,
}

impl Monomial {
    pub fn new(exponents: Vec<u64>) -> Self {
        Monomial { exponents }
    }

    pub fn one(arity: usize) -> Self {
        Monomial {
            exponents: vec![0; arity],
        }
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b)
    }

    pub fn comparable(&self, other: &Monomial) -> bool {
        self.divides(other) || other.divides(self)
    }

    /// Product, or `None` on exponent overflow.
    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        let exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<Vec<u64>>>()?;
        Some(Monomial { exponents })
    }

    /// Parses `x^2*y`, `x^2 y` or `1` over the given variables.
    pub fn parse(text: &str, vars: &[String]) -> Result<Monomial> {
        let err = || Error::MonomialParse(text.to_string());
        let mut exps = vec![0u64; vars.len()];
        let trimmed = text.trim();
        if trimmed == "1" {
            return Ok(Monomial { exponents: exps });
        }
        for factor in trimmed.split(|c: char| c == '*' || c.is_whitespace()) {
            if factor.is_empty() {
                continue;
            }
            let (name, power) = match factor.split_once('^') {
                Some((n, p)) => (n, p.parse::<u64>().map_err(|_| err())?),
                None => (factor, 1),
            };
            let i = vars.iter().position(|v| v == name).ok_or_else(err)?;
            exps[i] = exps[i].checked_add(power).ok_or_else(err)?;
        }
        Ok(Monomial { exponents: exps })
    }

    pub fn display<'a>(&'a self, vars: &'a [String]) -> impl fmt::Display + 'a {
        MonomialDisplay { m: self, vars }
    }
}

struct MonomialDisplay<'a> {
    m: &'a Monomial,
    vars: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .m
            .exponents
            .iter()
            .zip(self.vars)
            .filter(|(e, _)| **e > 0)
            .map(|(&e, v)| {
                if e == 1 {
                    v.clone()
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Monomial ideal given by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    vars: Vec<String>,
    generators: Vec<Monomial>,
}

/// Removes non-minimal generators and sorts the rest in decreasing
/// lexicographic order.
fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| Reverse(m.clone()));
    gens.dedup();
    let mut keep: Vec<Monomial> = Vec::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        let redundant = gens
            .iter()
            .enumerate()
            .any(|(j, h)| j != i && h.divides(g) && h != g);
        if !redundant {
            keep.push(g.clone());
        }
    }
    keep
}

impl MonomialIdeal {
    pub fn new(vars: Vec<String>, generators: Vec<Monomial>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        for g in &generators {
            if g.exponents.len() != vars.len() {
                return Err(Error::ArityMismatch {
                    expected: vars.len(),
                    got: g.exponents.len(),
                });
            }
        }
        Ok(MonomialIdeal {
            generators: minimalize(generators),
            vars,
        })
    }

    pub fn unit(vars: Vec<String>) -> Self {
        let n = vars.len();
        MonomialIdeal {
            vars,
            generators: vec![Monomial::one(n)],
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .generators
            .iter()
            .map(|g| g.display(&self.vars).to_string())
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub fn ideal_product(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<MonomialIdeal> {
    if i.vars != j.vars {
        return Err(Error::VariableMismatch(i.vars.clone(), j.vars.clone()));
    }
    let mut gens = Vec::with_capacity(i.generators.len() * j.generators.len());
    for a in &i.generators {
        for b in &j.generators {
            let p = a
                .checked_mul(b)
                .ok_or_else(|| Error::MonomialParse("exponent overflow".into()))?;
            gens.push(p);
        }
    }
    MonomialIdeal::new(i.vars.clone(), gens)
}

pub fn is_principal(i: &MonomialIdeal) -> Option<Monomial> {
    match i.generators.as_slice() {
        [g] => Some(g.clone()),
        _ => None,
    }
}

/// Which ideals `(h_i : i in U)` enter the disorderly product.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SubsetRange {
    /// All nonempty subsets.
    #[default]
    AllNonempty,
    /// Subsets with at least two elements.
    AtLeastTwo,
    /// Pairs `{h_i, h_j}` where neither divides the other.
    IncomparablePairs,
}

pub fn disorderly_ideal(vars: &[String], h: &[Monomial]) -> Result<MonomialIdeal> {
    disorderly_ideal_with(vars, h, SubsetRange::AllNonempty)
}

pub fn disorderly_ideal_with(
    vars: &[String],
    h: &[Monomial],
    range: SubsetRange,
) -> Result<MonomialIdeal> {
    if h.is_empty() {
        return Err(Error::EmptyParameterList);
    }
    let k = h.len();
    if k > 20 {
        return Err(Error::BoundsExceeded(format!("{k} adjusting parameters")));
    }
    let mut acc = MonomialIdeal::unit(vars.to_vec());
    for mask in 1u32..1 << k {
        let members: Vec<Monomial> = (0..k)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| h[i].clone())
            .collect();
        let take = match range {
            SubsetRange::AllNonempty => true,
            SubsetRange::AtLeastTwo => members.len() >= 2,
            SubsetRange::IncomparablePairs => {
                members.len() == 2 && !members[0].comparable(&members[1])
            }
        };
        if take {
            acc = ideal_product(&acc, &MonomialIdeal::new(vars.to_vec(), members)?)?;
        }
    }
    Ok(acc)
}

/// True iff divisibility totally orders the list.
pub fn is_orderly(h: &[Monomial]) -> bool {
    h.iter()
        .enumerate()
        .all(|(i, a)| h[i + 1..].iter().all(|b| a.comparable(b)))
}

/// Toy adjusting parameters of a graph: one variable `f<e>` per vertical
/// edge, and for every vertex below level zero the product of `f_e^kappa_e`
/// along its path to the top level. Only defined when every vertex has at
/// most one edge going up and there are no horizontal edges, so that this
/// path is unique.
pub fn toy_adjusting_parameters(
    graph: &EnhancedLevelGraph,
) -> Option<(Vec<String>, Vec<Monomial>)> {
    if graph.n_horizontal() > 0 {
        return None;
    }
    let vertical = graph.vertical_edges();
    let nv = graph.vertices().len();
    let mut up: Vec<Option<usize>> = vec![None; nv];
    for (k, &e) in vertical.iter().enumerate() {
        let b = graph.bottom(e);
        if up[b].replace(k).is_some() {
            return None;
        }
    }
    let vars: Vec<String> = vertical.iter().map(|e| format!("f{e}")).collect();
    let mut params = Vec::new();
    for v in 0..nv {
        if graph.level(v) == 0 {
            continue;
        }
        let mut m = Monomial::one(vars.len());
        let mut cur = v;
        while let Some(k) = up[cur] {
            let e = vertical[k];
            m.exponents[k] += graph.kappa(e).unwrap();
            cur = graph.top(e);
        }
        params.push(m);
    }
    Some((vars, params))
}
