//! Generators for stable, squarefree stable and matroidal ideals.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal, VarSet};

/// Default cap on the number of minimal generators produced.
pub const DEFAULT_MAX_GENERATORS: usize = 64;

/// Cap on intermediate closure sets, independent of the output cap.
const CLOSURE_LIMIT: usize = 100_000;

/// The smallest stable ideal containing `seeds`: closed under
/// `m -> x_i * m / x_max(m)` for every `i < max(m)`.
pub fn gen_stable(n: usize, seeds: &[Monomial], max_gens: usize) -> Result<MonomialIdeal> {
    close(n, seeds, max_gens, |m| {
        let Some(top) = m.max_var() else { return Vec::new() };
        let mut e = m.exponents().to_vec();
        e[top] -= 1;
        (0..top)
            .map(|i| {
                let mut f = e.clone();
                f[i] += 1;
                Monomial::from_exponents(f).expect("same degree")
            })
            .collect()
    })
}

/// The smallest squarefree strongly stable ideal containing the squarefree
/// `seeds`: closed under `m -> x_i * m / x_j` for `j` in the support and
/// `i < j` outside it.
pub fn gen_squarefree_stable(n: usize, seeds: &[Monomial], max_gens: usize) -> Result<MonomialIdeal> {
    if let Some(s) = seeds.iter().find(|s| !s.is_squarefree()) {
        return Err(Error::InvalidInput(format!("seed {s} is not squarefree")));
    }
    close(n, seeds, max_gens, |m| {
        let support = m.support();
        let mut out = Vec::new();
        for j in support.iter() {
            for i in (0..j).filter(|&i| !support.contains(i)) {
                out.push(Monomial::from_varset(m.n(), support.without(j).with(i)));
            }
        }
        out
    })
}

fn close(
    n: usize,
    seeds: &[Monomial],
    max_gens: usize,
    moves: impl Fn(&Monomial) -> Vec<Monomial>,
) -> Result<MonomialIdeal> {
    if seeds.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    if let Some(s) = seeds.iter().find(|s| s.n() != n) {
        return Err(Error::ContextMismatch {
            left: n,
            right: s.n(),
        });
    }
    let mut seen: BTreeSet<Monomial> = seeds.iter().cloned().collect();
    let mut stack: Vec<Monomial> = seeds.to_vec();
    while let Some(m) = stack.pop() {
        for next in moves(&m) {
            if seen.insert(next.clone()) {
                if seen.len() > CLOSURE_LIMIT {
                    return Err(Error::TooLarge {
                        what: "stable closure",
                        size: seen.len(),
                        bound: CLOSURE_LIMIT,
                    });
                }
                stack.push(next);
            }
        }
    }
    let all: Vec<Monomial> = seen.into_iter().collect();
    let ideal = MonomialIdeal::new(n, &all)?;
    check_cap(ideal, max_gens)
}

fn check_cap(ideal: MonomialIdeal, max_gens: usize) -> Result<MonomialIdeal> {
    if ideal.len() > max_gens {
        return Err(Error::TooLarge {
            what: "generator count",
            size: ideal.len(),
            bound: max_gens,
        });
    }
    Ok(ideal)
}

/// The matroidal ideal of the uniform matroid `U(k, n)`: all squarefree
/// monomials of degree `k` in `n` variables.
pub fn gen_uniform(k: usize, n: usize, max_gens: usize) -> Result<MonomialIdeal> {
    if k == 0 || k > n {
        return Err(Error::InvalidInput(format!(
            "uniform({k}, {n}) needs 1 <= k <= n"
        )));
    }
    if n > crate::monomial::MAX_VARS {
        return Err(Error::TooManyVariables {
            n,
            max: crate::monomial::MAX_VARS,
        });
    }
    let count = binomial(n, k);
    if count > max_gens {
        return Err(Error::TooLarge {
            what: "generator count",
            size: count,
            bound: max_gens,
        });
    }
    let gens: Vec<Monomial> = (0u64..1 << n)
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| Monomial::from_varset(n, VarSet::from_bits(mask as u32)))
        .collect();
    MonomialIdeal::new(n, &gens)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// The matroidal ideal of the graphic matroid of a connected multigraph:
/// one variable per edge, one generator per spanning tree. Vertices are
/// arbitrary labels; edge `e` is variable `x_{e+1}`.
pub fn gen_graphic(edges: &[(usize, usize)], max_gens: usize) -> Result<MonomialIdeal> {
    let n = edges.len();
    if n == 0 {
        return Err(Error::InvalidInput("graph has no edges".into()));
    }
    if n > crate::monomial::MAX_VARS {
        return Err(Error::TooManyVariables {
            n,
            max: crate::monomial::MAX_VARS,
        });
    }
    let vertices: BTreeSet<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    let index: Vec<usize> = vertices.iter().copied().collect();
    let local = |v: usize| index.binary_search(&v).expect("collected above");
    let nv = vertices.len();
    let all_edges = VarSet::from_bits(((1u64 << n) - 1) as u32);
    if components(nv, edges, all_edges, &local) != 1 {
        return Err(Error::InvalidInput("graph is disconnected".into()));
    }
    let mut gens = Vec::new();
    for mask in 0u64..1 << n {
        if mask.count_ones() as usize != nv - 1 {
            continue;
        }
        let set = VarSet::from_bits(mask as u32);
        if components(nv, edges, set, &local) == 1 {
            gens.push(Monomial::from_varset(n, set));
            if gens.len() > max_gens {
                return Err(Error::TooLarge {
                    what: "generator count",
                    size: gens.len(),
                    bound: max_gens,
                });
            }
        }
    }
    if gens.is_empty() {
        return Err(Error::InvalidInput("graphic matroid has rank 0".into()));
    }
    MonomialIdeal::new(n, &gens)
}

fn components(nv: usize, edges: &[(usize, usize)], set: VarSet, local: &impl Fn(usize) -> usize) -> usize {
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    let mut count = nv;
    for e in set.iter() {
        let (a, b) = edges[e];
        let (ra, rb) = (find(&mut parent, local(a)), find(&mut parent, local(b)));
        if ra != rb {
            parent[ra] = rb;
            count -= 1;
        }
    }
    count
}
