//! Exact homology over the rationals and the Taylor-complex Betti oracle.
//!
//! Ranks are computed by fraction-free Gaussian elimination on integer
//! matrices. The Taylor complex is built on all subsets of the generators
//! and tensored with the residue field one multidegree at a time.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cell_complex::CellComplex;
use crate::error::{Error, Result};
use crate::monomial::{canonical_cmp, Monomial, MonomialIdeal};
use crate::resolution::{BasisElement, BasisKey, Entry, FreeComplex};

/// Default cap on the number of generators fed to the Taylor oracle.
pub const DEFAULT_TAYLOR_BOUND: usize = 14;

/// Rank over the rationals of a sparse integer matrix.
pub fn rank<I>(rows: usize, cols: usize, entries: I) -> Result<usize>
where
    I: IntoIterator<Item = (usize, usize, i64)>,
{
    if rows == 0 || cols == 0 {
        return Ok(0);
    }
    let mut m = vec![vec![0i128; cols]; rows];
    for (r, c, v) in entries {
        m[r][c] += v as i128;
    }
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows)
            .filter(|&r| m[r][col] != 0)
            .min_by_key(|&r| m[r][col].unsigned_abs())
        else {
            continue;
        };
        m.swap(rank, pivot);
        let (top, rest) = m.split_at_mut(rank + 1);
        let prow = &top[rank];
        let p = prow[col];
        for row in rest.iter_mut() {
            let b = row[col];
            if b == 0 {
                continue;
            }
            let mut g = 0i128;
            for k in col..cols {
                let v = p
                    .checked_mul(row[k])
                    .zip(b.checked_mul(prow[k]))
                    .and_then(|(x, y)| x.checked_sub(y))
                    .ok_or(Error::ArithmeticOverflow)?;
                row[k] = v;
                g = gcd(g, v);
            }
            if g > 1 {
                for v in row[col..].iter_mut() {
                    *v /= g;
                }
            }
        }
        rank += 1;
    }
    Ok(rank)
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A finite chain complex of free abelian groups.
///
/// `boundary(k)` maps degree `k + 1` to degree `k`; entries are
/// `(source, target, coefficient)`.
#[derive(Debug, Clone, Default)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<Vec<(usize, usize, i64)>>,
}

impl ChainComplex {
    pub fn new(ranks: Vec<usize>) -> Self {
        let nb = ranks.len().saturating_sub(1);
        ChainComplex {
            ranks,
            boundaries: vec![Vec::new(); nb],
        }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn push_entry(&mut self, k: usize, source: usize, target: usize, coeff: i64) {
        debug_assert!(source < self.ranks[k + 1] && target < self.ranks[k]);
        self.boundaries[k].push((source, target, coeff));
    }

    pub fn boundary(&self, k: usize) -> &[(usize, usize, i64)] {
        &self.boundaries[k]
    }

    /// Checks that consecutive boundaries compose to zero.
    pub fn check_square_zero(&self) -> Result<()> {
        for k in 1..self.boundaries.len() {
            let mut lower: HashMap<usize, Vec<(usize, i64)>> = HashMap::new();
            for &(s, t, c) in &self.boundaries[k - 1] {
                lower.entry(s).or_default().push((t, c));
            }
            let mut acc: HashMap<(usize, usize), i64> = HashMap::new();
            for &(s, t, c) in &self.boundaries[k] {
                for &(t2, c2) in lower.get(&t).into_iter().flatten() {
                    *acc.entry((s, t2)).or_default() += c * c2;
                }
            }
            if acc.values().any(|&v| v != 0) {
                return Err(Error::BoundaryNotComplex { degree: k + 1 });
            }
        }
        Ok(())
    }

    /// Betti numbers over the rationals, one per degree.
    pub fn homology_ranks(&self) -> Result<Vec<usize>> {
        self.check_square_zero()?;
        let brank = self
            .boundaries
            .iter()
            .enumerate()
            .map(|(k, b)| rank(self.ranks[k + 1], self.ranks[k], b.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Ok((0..self.ranks.len())
            .map(|k| {
                let out = if k > 0 { brank[k - 1] } else { 0 };
                let inc = brank.get(k).copied().unwrap_or(0);
                self.ranks[k] - out - inc
            })
            .collect())
    }

    /// Alternating sum of ranks, starting with sign `+` in degree 0.
    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(k, &r)| if k % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }
}

/// Complexes whose augmented cellular chain complex can be formed.
///
/// Degree `0` of the returned chain complex is dimension `-1` (the empty
/// face), degree `d + 1` is dimension `d`.
pub trait AugmentedComplex {
    fn augmented_chain_complex(&self) -> ChainComplex;

    /// True when there are no cells at all, not even vertices.
    fn is_void(&self) -> bool;
}

/// Reduced homology ranks; `rank(d)` is defined for every `d >= -1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedHomology {
    /// `by_degree[k]` is the rank of reduced homology in dimension `k - 1`.
    by_degree: Vec<usize>,
}

impl ReducedHomology {
    pub fn rank(&self, dim: isize) -> usize {
        usize::try_from(dim + 1)
            .ok()
            .and_then(|k| self.by_degree.get(k).copied())
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.by_degree.iter().all(|&r| r == 0)
    }

    /// True when this is the reduced homology of a `dim`-sphere (with the
    /// empty complex as the `(-1)`-sphere).
    pub fn is_sphere(&self, dim: isize) -> bool {
        (-1..self.by_degree.len() as isize - 1).all(|d| self.rank(d) == usize::from(d == dim))
            && self.rank(dim) == 1
    }
}

pub fn reduced_homology<K: AugmentedComplex + ?Sized>(k: &K) -> Result<ReducedHomology> {
    Ok(ReducedHomology {
        by_degree: k.augmented_chain_complex().homology_ranks()?,
    })
}

/// Reduced homology ranks in dimensions `0..=dim K`; empty for a void complex.
pub fn reduced_homology_ranks<K: AugmentedComplex + ?Sized>(k: &K) -> Result<Vec<usize>> {
    if k.is_void() {
        return Ok(Vec::new());
    }
    let full = k.augmented_chain_complex().homology_ranks()?;
    Ok(full[1..].to_vec())
}

/// All reduced homology vanishes. The void complex counts as acyclic.
pub fn is_acyclic<K: AugmentedComplex + ?Sized>(k: &K) -> Result<bool> {
    if k.is_void() {
        return Ok(true);
    }
    Ok(reduced_homology(k)?.is_zero())
}

/// Multigraded Betti numbers `beta_{i,b}`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, Monomial), usize>,
}

/// `{"entries":[{"i":k,"deg":[e...],"beta":v}]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiJson {
    pub entries: Vec<BettiEntryJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntryJson {
    pub i: usize,
    pub deg: Vec<u32>,
    pub beta: usize,
}

impl BettiTable {
    pub fn add(&mut self, i: usize, b: Monomial, count: usize) {
        if count > 0 {
            *self.entries.entry((i, b)).or_default() += count;
        }
    }

    pub fn get(&self, i: usize, b: &Monomial) -> usize {
        self.entries.get(&(i, b.clone())).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Monomial, usize)> {
        self.entries.iter().map(|((i, b), &v)| (*i, b, v))
    }

    /// Total Betti numbers `beta_0, beta_1, ...`.
    pub fn totals(&self) -> Vec<usize> {
        let top = self.entries.keys().map(|(i, _)| *i).max();
        let mut out = vec![0; top.map_or(0, |t| t + 1)];
        for ((i, _), v) in &self.entries {
            out[*i] += v;
        }
        out
    }

    pub fn to_json(&self) -> BettiJson {
        let mut entries: Vec<_> = self.entries.iter().collect();
        entries.sort_by(|((i, a), _), ((j, b), _)| i.cmp(j).then_with(|| canonical_cmp(a, b)));
        BettiJson {
            entries: entries
                .into_iter()
                .map(|((i, b), &beta)| BettiEntryJson {
                    i: *i,
                    deg: b.exponents().to_vec(),
                    beta,
                })
                .collect(),
        }
    }

    /// Rows are homological degrees, columns total degrees of the
    /// multidegree, last column the row total.
    pub fn render_text(&self) -> String {
        let totals = self.totals();
        let degs: Vec<u64> = self.entries.keys().map(|(_, b)| b.degree()).collect();
        let (lo, hi) = match (degs.iter().min(), degs.iter().max()) {
            (Some(&lo), Some(&hi)) => (lo, hi),
            _ => return "(empty)\n".to_string(),
        };
        let mut grid = vec![vec![0usize; (hi - lo + 1) as usize]; totals.len()];
        for ((i, b), v) in &self.entries {
            grid[*i][(b.degree() - lo) as usize] += v;
        }
        let width = grid
            .iter()
            .flatten()
            .chain(&totals)
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1)
            .max(hi.to_string().len())
            .max(1);
        let mut out = String::new();
        let _ = write!(out, "{:>4} ", "");
        for d in lo..=hi {
            let _ = write!(out, " {:>width$}", d);
        }
        let _ = writeln!(out, "  total");
        for (i, row) in grid.iter().enumerate() {
            let _ = write!(out, "{:>4}:", i);
            for v in row {
                if *v == 0 {
                    let _ = write!(out, " {:>width$}", ".");
                } else {
                    let _ = write!(out, " {:>width$}", v);
                }
            }
            let _ = writeln!(out, "  {}", totals[i]);
        }
        out
    }
}

/// The Taylor complex of `gens` (not required to be minimal): basis indexed
/// by subsets, labelled by their lcm, with the simplicial boundary scaled
/// by lcm ratios.
pub fn taylor_complex(n: usize, gens: &[Monomial]) -> Result<FreeComplex> {
    let m = gens.len();
    if m >= usize::BITS as usize - 1 {
        return Err(Error::TooLarge {
            what: "Taylor complex",
            size: m,
            bound: usize::BITS as usize - 2,
        });
    }
    if let Some(g) = gens.iter().find(|g| g.n() != n) {
        return Err(Error::ContextMismatch {
            left: n,
            right: g.n(),
        });
    }
    let mut bases: Vec<Vec<BasisElement>> = vec![Vec::new(); m + 1];
    let mut labels = vec![Monomial::one(n); 1 << m];
    let mut index = vec![0usize; 1 << m];
    for mask in 0usize..1 << m {
        if mask != 0 {
            let low = mask.trailing_zeros() as usize;
            labels[mask] = labels[mask & (mask - 1)].lcm_unchecked(&gens[low]);
        }
        let size = mask.count_ones() as usize;
        index[mask] = bases[size].len();
        bases[size].push(BasisElement {
            key: BasisKey::Subset((0..m).filter(|&k| mask >> k & 1 == 1).collect()),
            multidegree: labels[mask].clone(),
        });
    }
    let mut maps: Vec<BTreeMap<(usize, usize), Entry>> = vec![BTreeMap::new(); m];
    for mask in 1usize..1 << m {
        let size = mask.count_ones() as usize;
        for (pos, k) in (0..m).filter(|&k| mask >> k & 1 == 1).enumerate() {
            let face = mask & !(1 << k);
            let mono = labels[mask]
                .div(&labels[face])
                .expect("lcm of a subset divides the lcm of the superset");
            let coeff = if pos % 2 == 0 { 1 } else { -1 };
            maps[size - 1].insert((index[mask], index[face]), Entry { coeff, mono });
        }
    }
    FreeComplex::new(n, bases, maps)
}

/// Multigraded Betti numbers of `S/I` via the Taylor resolution.
pub fn taylor_betti(ideal: &MonomialIdeal, bound: usize) -> Result<BettiTable> {
    if ideal.len() > bound {
        return Err(Error::TooLarge {
            what: "Taylor oracle generator count",
            size: ideal.len(),
            bound,
        });
    }
    taylor_complex(ideal.n(), ideal.gens())?.tor_table()
}

/// Checks that `x` supports a resolution of `S/I`: for every multidegree
/// `b` in the lcm closure of `G(I)` (and every cell label) the subcomplex
/// of cells with label dividing `b` is acyclic.
///
/// Returns `Ok(None)` when all restrictions are acyclic, otherwise the first
/// failing multidegree in canonical order.
pub fn supports_resolution(x: &CellComplex, ideal: &MonomialIdeal) -> Result<Option<Monomial>> {
    let mut degrees = ideal.lcm_closure();
    degrees.extend(x.cells().iter().map(|c| c.label.clone()));
    let mut degrees: Vec<Monomial> = degrees.into_iter().collect();
    degrees.sort_by(canonical_cmp);
    for b in degrees {
        if !is_acyclic(&x.restrict_cells(&b))? {
            return Ok(Some(b));
        }
    }
    Ok(None)
}
