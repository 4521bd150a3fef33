use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::linear_quotients::AdmissibleOrder;
use crate::monomial::{Monomial, VarSet};

/// Largest `|q(u)|` for which the closure operator is enumerated.
pub const DEFAULT_CLOSURE_BOUND: usize = 12;

/// The closure operator `c` on `q(u)`: `c(sigma)` is the largest
/// `tau ⊆ q(u)` with `g(tau; u) = g(sigma; u)`, found as the union of all
/// such `tau`.
pub fn closure(a: &AdmissibleOrder, u: &Monomial, sigma: VarSet) -> Result<VarSet> {
    let j = a.position_of(u).ok_or_else(|| Error::NotAGenerator(u.clone()))?;
    let q = a.qsets()[j];
    if !sigma.is_subset(q) {
        return Err(Error::VariableNotInSet {
            var: sigma.difference(q).iter().next().unwrap_or(0) + 1,
        });
    }
    let target = a.g_multi_position(sigma, j);
    Ok(q.subsets()
        .filter(|&t| a.g_multi_position(t, j) == target)
        .fold(VarSet::EMPTY, VarSet::union))
}

/// A failed closure or lattice axiom, with witness sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    /// `g(sigma; u) = g(tau; u)` but `g(sigma ∪ tau; u)` differs.
    UnionRule { sigma: VarSet, tau: VarSet },
    /// CO1: `sigma ⊄ c(sigma)`.
    Extensive { sigma: VarSet },
    /// CO2: `sigma ⊆ tau` but `c(sigma) ⊄ c(tau)`.
    Monotone { sigma: VarSet, tau: VarSet },
    /// CO3: `c(c(sigma)) ≠ c(sigma)`.
    Idempotent { sigma: VarSet },
    /// AE fails for `a`, `b` over `sigma`.
    AntiExchange { sigma: VarSet, a: usize, b: usize },
    /// Closed sets are not closed under intersection.
    NotLattice { x: VarSet, y: VarSet },
    /// The interval below `x` from the meet of its lower covers is not
    /// Boolean.
    NotMeetDistributive { x: VarSet },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::UnionRule { sigma, tau } => write!(f, "union rule at {sigma}, {tau}"),
            AxiomViolation::Extensive { sigma } => write!(f, "CO1 at {sigma}"),
            AxiomViolation::Monotone { sigma, tau } => write!(f, "CO2 at {sigma} ⊆ {tau}"),
            AxiomViolation::Idempotent { sigma } => write!(f, "CO3 at {sigma}"),
            AxiomViolation::AntiExchange { sigma, a, b } => {
                write!(f, "anti-exchange at {sigma} with x{}, x{}", a + 1, b + 1)
            }
            AxiomViolation::NotLattice { x, y } => write!(f, "{x} ∩ {y} is not closed"),
            AxiomViolation::NotMeetDistributive { x } => write!(f, "meet-distributivity at {x}"),
        }
    }
}

/// The closure operator on `q(u)` and its lattice of closed sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    pub ground: VarSet,
    pub closure: BTreeMap<VarSet, VarSet>,
    /// Closed sets ordered by size, then bits.
    pub closed_sets: Vec<VarSet>,
    /// Cover relations `(lower, upper)` as indices into `closed_sets`.
    pub covers: Vec<(usize, usize)>,
    /// Position of `u` in the order.
    pub position: usize,
    /// `g(sigma; u)` for each closed set, as positions in the order.
    pub images: Vec<usize>,
}

impl ClosureReport {
    /// Indices of the closed sets covering `closed_sets[k]`.
    pub fn upper_covers(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        self.covers.iter().filter(move |c| c.0 == k).map(|c| c.1)
    }

    /// All maximal chains from the bottom to the top, as index lists.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = vec![vec![0usize]];
        while let Some(chain) = stack.pop() {
            let last = *chain.last().expect("non-empty");
            let ups: Vec<usize> = self.upper_covers(last).collect();
            if ups.is_empty() {
                out.push(chain);
                continue;
            }
            for up in ups.into_iter().rev() {
                let mut next = chain.clone();
                next.push(up);
                stack.push(next);
            }
        }
        out
    }
}

/// Enumerates all subsets of `q(u)`, computes the closure operator and
/// verifies the union rule, CO1-CO3, anti-exchange, that closed sets form
/// a lattice, and meet-distributivity.
pub fn convex_geometry_report(a: &AdmissibleOrder, u: &Monomial, bound: usize) -> Result<ClosureReport> {
    let j = a.position_of(u).ok_or_else(|| Error::NotAGenerator(u.clone()))?;
    let ground = a.qsets()[j];
    if ground.len() > bound {
        return Err(Error::TooLarge {
            what: "closure ground set",
            size: ground.len(),
            bound,
        });
    }
    let violation = |v| Error::ConvexGeometry(v);

    let image: HashMap<VarSet, usize> = ground.subsets().map(|s| (s, a.g_multi_position(s, j))).collect();
    let mut by_image: HashMap<usize, VarSet> = HashMap::new();
    for (&s, &g) in &image {
        let e = by_image.entry(g).or_default();
        *e = e.union(s);
    }
    // the union of every fibre must map into the same fibre
    for (&s, &g) in &image {
        if image[&by_image[&g]] != g {
            return Err(violation(AxiomViolation::UnionRule {
                sigma: s,
                tau: by_image[&g],
            }));
        }
    }
    let closure: BTreeMap<VarSet, VarSet> = image.iter().map(|(&s, g)| (s, by_image[g])).collect();
    let c = |s: VarSet| closure[&s];

    for s in ground.subsets() {
        if !s.is_subset(c(s)) {
            return Err(violation(AxiomViolation::Extensive { sigma: s }));
        }
        if c(c(s)) != c(s) {
            return Err(violation(AxiomViolation::Idempotent { sigma: s }));
        }
        for x in ground.difference(s).iter() {
            let t = s.with(x);
            if !c(s).is_subset(c(t)) {
                return Err(violation(AxiomViolation::Monotone { sigma: s, tau: t }));
            }
        }
        let outside = ground.difference(c(s));
        for x in outside.iter() {
            for y in outside.iter() {
                if x != y && c(s.with(y)).contains(x) && c(s.with(x)).contains(y) {
                    return Err(violation(AxiomViolation::AntiExchange { sigma: s, a: x, b: y }));
                }
            }
        }
    }

    let mut closed_sets: Vec<VarSet> = ground.subsets().filter(|&s| c(s) == s).collect();
    closed_sets.sort_by_key(|s| (s.len(), s.bits()));
    for (i, &x) in closed_sets.iter().enumerate() {
        for &y in &closed_sets[i + 1..] {
            if c(x.intersection(y)) != x.intersection(y) {
                return Err(violation(AxiomViolation::NotLattice { x, y }));
            }
        }
    }
    let mut covers = Vec::new();
    for (lo, &x) in closed_sets.iter().enumerate() {
        for (hi, &y) in closed_sets.iter().enumerate() {
            if x != y
                && x.is_subset(y)
                && !closed_sets
                    .iter()
                    .any(|&z| z != x && z != y && x.is_subset(z) && z.is_subset(y))
            {
                covers.push((lo, hi));
            }
        }
    }
    for (hi, &x) in closed_sets.iter().enumerate() {
        let lower: Vec<VarSet> = covers
            .iter()
            .filter(|c| c.1 == hi)
            .map(|c| closed_sets[c.0])
            .collect();
        if lower.is_empty() {
            continue;
        }
        let meet = lower.iter().fold(x, |acc, &l| acc.intersection(l));
        let gap = x.difference(meet);
        let boolean = gap.len() == lower.len() && gap.subsets().all(|t| c(meet.union(t)) == meet.union(t));
        if !boolean {
            return Err(violation(AxiomViolation::NotMeetDistributive { x }));
        }
    }
    let images = closed_sets.iter().map(|s| image[s]).collect();
    Ok(ClosureReport {
        ground,
        closure,
        closed_sets,
        covers,
        position: j,
        images,
    })
}
