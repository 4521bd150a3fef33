//! Admissible orders, colon variable sets and decomposition functions.
//!
//! An order `u_1, ..., u_m` of the minimal generators is admissible when
//! every colon ideal `(u_1, ..., u_{j-1}) : u_j` is generated by a set of
//! variables `q(u_j)`. The decomposition function sends a monomial `v` of
//! the ideal to the first generator in the order that divides it.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{minimalize, Monomial, MonomialIdeal, VarSet};

/// The variables generating `(prefix) : u`.
///
/// `step` in a [`Error::NotLinear`] is the 1-based position `u` would take,
/// that is `prefix.len() + 1`.
pub fn colon_variable_set(prefix: &[Monomial], u: &Monomial) -> Result<VarSet> {
    if prefix.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let quotients: Vec<Monomial> = prefix
        .iter()
        .map(|p| {
            if p.n() != u.n() {
                return Err(Error::ContextMismatch {
                    left: p.n(),
                    right: u.n(),
                });
            }
            Ok(p.colon(u))
        })
        .collect::<Result<_>>()?;
    let mut q = VarSet::EMPTY;
    for g in minimalize(&quotients)? {
        match g.as_variable() {
            Some(i) => q = q.with(i),
            None => {
                return Err(Error::NotLinear {
                    step: prefix.len() + 1,
                    generator: g,
                })
            }
        }
    }
    Ok(q)
}

/// A failure of `q(g(y u_j)) ⊆ q(u_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityWitness {
    /// 1-based position of `u_j`.
    pub step: usize,
    /// 0-based index of the variable `y` in `q(u_j)`.
    pub y: usize,
    /// 0-based index of a variable in `q(g(y u_j))` missing from `q(u_j)`.
    pub offending: usize,
}

impl fmt::Display for RegularityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "step {}: y = x{}, x{} lies in q(g(y*u)) but not in q(u)",
            self.step,
            self.y + 1,
            self.offending + 1
        )
    }
}

/// A degree-increasing admissible order together with its colon sets.
///
/// The decomposition function is determined by the order and is exposed
/// through [`AdmissibleOrder::decompose`] and [`AdmissibleOrder::g_multi`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleOrder {
    ideal: MonomialIdeal,
    /// `positions[j]` indexes `ideal.gens()`.
    positions: Vec<usize>,
    order: Vec<Monomial>,
    qsets: Vec<VarSet>,
}

/// `{"order": [gen indices], "q": [[var numbers], ...]}`
///
/// Generator indices are 0-based into the ideal's canonical generator list;
/// variables are given by their 1-based number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderJson {
    pub order: Vec<usize>,
    pub q: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Default)]
pub struct SearchOptions {
    pub require_regular: bool,
    /// Shuffles candidates of equal degree before trying them.
    pub seed: Option<u64>,
}

impl AdmissibleOrder {
    /// Validates `order` (indices into `ideal.gens()`) and fills in the
    /// colon sets.
    pub fn is_admissible(ideal: &MonomialIdeal, order: &[usize]) -> Result<AdmissibleOrder> {
        let m = ideal.len();
        let mut seen = vec![false; m];
        for &p in order {
            if p >= m || std::mem::replace(&mut seen[p], true) {
                return Err(Error::NotPermutation(format!("{order:?}")));
            }
        }
        if order.len() != m {
            return Err(Error::NotPermutation(format!("{order:?}")));
        }
        let gens: Vec<Monomial> = order.iter().map(|&p| ideal.gens()[p].clone()).collect();
        let mut qsets = Vec::with_capacity(m);
        for j in 0..m {
            if j > 0 && gens[j].degree() < gens[j - 1].degree() {
                return Err(Error::NotDegreeIncreasing { step: j + 1 });
            }
            qsets.push(if j == 0 {
                VarSet::EMPTY
            } else {
                colon_variable_set(&gens[..j], &gens[j])?
            });
        }
        Ok(AdmissibleOrder {
            ideal: ideal.clone(),
            positions: order.to_vec(),
            order: gens,
            qsets,
        })
    }

    /// Same as [`AdmissibleOrder::is_admissible`] with the order given as
    /// monomials.
    pub fn from_monomials(ideal: &MonomialIdeal, order: &[Monomial]) -> Result<AdmissibleOrder> {
        let idx = order
            .iter()
            .map(|u| ideal.index_of(u).ok_or_else(|| Error::NotAGenerator(u.clone())))
            .collect::<Result<Vec<_>>>()?;
        Self::is_admissible(ideal, &idx)
    }

    /// Depth-first search over degree-increasing orders, extending a prefix
    /// only when the next colon ideal is linear (and, if requested, the
    /// partial decomposition function stays regular). Candidates of equal
    /// degree are tried in canonical (reverse lexicographic) order unless a
    /// seed is given.
    pub fn find(ideal: &MonomialIdeal, opts: &SearchOptions) -> Option<AdmissibleOrder> {
        if ideal.is_zero() {
            return None;
        }
        let mut rng = opts.seed.map(ChaCha8Rng::seed_from_u64);
        let mut search = Search {
            gens: ideal.gens(),
            require_regular: opts.require_regular,
            used: vec![false; ideal.len()],
            chosen: Vec::new(),
            qsets: Vec::new(),
            rng: rng.as_mut(),
        };
        if !search.extend() {
            return None;
        }
        let order: Vec<Monomial> = search.chosen.iter().map(|&p| ideal.gens()[p].clone()).collect();
        Some(AdmissibleOrder {
            ideal: ideal.clone(),
            positions: search.chosen,
            order,
            qsets: search.qsets,
        })
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn n(&self) -> usize {
        self.ideal.n()
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Generators in admissible order.
    pub fn generators(&self) -> &[Monomial] {
        &self.order
    }

    /// Indices into `ideal().gens()`, in admissible order.
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn qsets(&self) -> &[VarSet] {
        &self.qsets
    }

    /// Position of `u` in the order.
    pub fn position_of(&self, u: &Monomial) -> Option<usize> {
        self.order.iter().position(|g| g == u)
    }

    pub fn q(&self, u: &Monomial) -> Result<VarSet> {
        self.position_of(u)
            .map(|j| self.qsets[j])
            .ok_or_else(|| Error::NotAGenerator(u.clone()))
    }

    /// Position of the first generator dividing `v`.
    pub fn decompose_position(&self, v: &Monomial) -> Option<usize> {
        if v.n() != self.n() {
            return None;
        }
        self.order.iter().position(|g| g.divides_unchecked(v))
    }

    pub fn decompose(&self, v: &Monomial) -> Result<&Monomial> {
        self.decompose_position(v)
            .map(|j| &self.order[j])
            .ok_or_else(|| Error::NotInIdeal(v.clone()))
    }

    /// `g(u * prod_{y in sigma} y)` for the generator at position `j`.
    pub fn g_multi_position(&self, sigma: VarSet, j: usize) -> usize {
        let v = self.order[j]
            .mul_vars(sigma)
            .expect("product of a generator and variables stays below the degree cap");
        self.decompose_position(&v)
            .expect("multiples of a generator lie in the ideal")
    }

    pub fn g_multi(&self, sigma: VarSet, u: &Monomial) -> Result<&Monomial> {
        let v = u.mul_vars(sigma)?;
        self.decompose(&v)
    }

    /// Checks `q(g(y u_j)) ⊆ q(u_j)` for all `j` and `y` in `q(u_j)`.
    pub fn check_regular(&self) -> Result<(), RegularityWitness> {
        for (j, &q) in self.qsets.iter().enumerate() {
            for y in q.iter() {
                let g = self.g_multi_position(VarSet::singleton(y), j);
                let extra = self.qsets[g].difference(q);
                if let Some(offending) = extra.iter().next() {
                    return Err(RegularityWitness {
                        step: j + 1,
                        y,
                        offending,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_regular(&self) -> bool {
        self.check_regular().is_ok()
    }

    /// The induced order on the generators dividing `mu`, re-validated as an
    /// admissible order of the restricted ideal.
    pub fn restrict_below(&self, mu: &Monomial) -> Result<AdmissibleOrder> {
        let sub = self.ideal.restrict_below(mu);
        if sub.is_zero() {
            return Ok(AdmissibleOrder {
                ideal: sub,
                positions: Vec::new(),
                order: Vec::new(),
                qsets: Vec::new(),
            });
        }
        let induced: Vec<Monomial> = self
            .order
            .iter()
            .filter(|g| g.divides_unchecked(mu))
            .cloned()
            .collect();
        AdmissibleOrder::from_monomials(&sub, &induced)
    }

    pub fn to_json(&self) -> OrderJson {
        OrderJson {
            order: self.positions.clone(),
            q: self.qsets.iter().map(|q| q.to_numbers()).collect(),
        }
    }

    /// Rebuilds the order from JSON and checks the stored colon sets.
    pub fn from_json(ideal: &MonomialIdeal, j: &OrderJson) -> Result<AdmissibleOrder> {
        let a = AdmissibleOrder::is_admissible(ideal, &j.order)?;
        let stored: Vec<Vec<usize>> = a.qsets.iter().map(|q| q.to_numbers()).collect();
        let mut given = j.q.clone();
        for q in &mut given {
            q.sort_unstable();
        }
        if given != stored {
            return Err(Error::Json("colon sets do not match the order".into()));
        }
        Ok(a)
    }
}

struct Search<'a> {
    gens: &'a [Monomial],
    require_regular: bool,
    used: Vec<bool>,
    chosen: Vec<usize>,
    qsets: Vec<VarSet>,
    rng: Option<&'a mut ChaCha8Rng>,
}

impl Search<'_> {
    fn extend(&mut self) -> bool {
        let Some(min_deg) = (0..self.gens.len())
            .filter(|&i| !self.used[i])
            .map(|i| self.gens[i].degree())
            .min()
        else {
            return true;
        };
        let mut candidates: Vec<usize> = (0..self.gens.len())
            .filter(|&i| !self.used[i] && self.gens[i].degree() == min_deg)
            .collect();
        if let Some(rng) = self.rng.as_deref_mut() {
            candidates.shuffle(rng);
        }
        for c in candidates {
            let Some(q) = self.colon(c) else { continue };
            if self.require_regular && !self.partial_regular(c, q) {
                continue;
            }
            self.used[c] = true;
            self.chosen.push(c);
            self.qsets.push(q);
            if self.extend() {
                return true;
            }
            self.used[c] = false;
            self.chosen.pop();
            self.qsets.pop();
        }
        false
    }

    fn colon(&self, c: usize) -> Option<VarSet> {
        if self.chosen.is_empty() {
            return Some(VarSet::EMPTY);
        }
        let prefix: Vec<Monomial> = self.chosen.iter().map(|&p| self.gens[p].clone()).collect();
        colon_variable_set(&prefix, &self.gens[c]).ok()
    }

    fn partial_regular(&self, c: usize, q: VarSet) -> bool {
        let u = &self.gens[c];
        q.iter().all(|y| {
            let v = u.mul_vars(VarSet::singleton(y)).expect("degree cap");
            match self
                .chosen
                .iter()
                .position(|&p| self.gens[p].divides_unchecked(&v))
            {
                Some(k) => self.qsets[k].is_subset(q),
                None => false,
            }
        })
    }
}
