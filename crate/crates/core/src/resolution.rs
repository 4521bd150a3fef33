//! Multigraded free complexes and the explicit minimal resolution of an
//! ideal with a regular decomposition function.
//!
//! The basis of `F_I` is `{1}` together with `f(sigma; u)` for every
//! generator `u` and `sigma ⊆ q(u)`, in homological degree `|sigma| + 1`
//! and multidegree `u * prod(sigma)`. For `sigma` non-empty,
//!
//! ```text
//! d f(sigma; u) = sum_{y in sigma} (-1)^alpha(sigma; y) * (
//!                     (y u / g(y u)) f(sigma - y; g(y u))   [if sigma - y ⊆ q(g(y u))]
//!                   - y f(sigma - y; u) )
//! ```
//!
//! and `d f(∅; u) = u * 1`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{BettiTable, ChainComplex};
use crate::linear_quotients::AdmissibleOrder;
use crate::monomial::{Monomial, VarSet};

/// Identifies a basis element independently of its position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisKey {
    /// The generator of `S` in homological degree 0.
    Unit,
    /// `f(sigma; u)`.
    Pair { sigma: VarSet, u: Monomial },
    /// A Taylor basis element: positions of the generators in the subset.
    Subset(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    pub key: BasisKey,
    pub multidegree: Monomial,
}

/// One term `coeff * mono` of a differential matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub coeff: i64,
    pub mono: Monomial,
}

/// A complex of free multigraded modules with monomial-term differentials.
///
/// `map(i)` is the differential `d_i` from degree `i` to degree `i - 1`,
/// keyed by `(row, col)` = (source index, target index).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeComplex {
    n: usize,
    bases: Vec<Vec<BasisElement>>,
    maps: Vec<BTreeMap<(usize, usize), Entry>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DefectKind {
    /// `multidegree(source) != multidegree(target) * coeff`.
    Inhomogeneous,
    /// `d_{i-1} d_i` has a nonzero entry.
    NonzeroComposite,
}

/// Where [`FreeComplex::verify`] failed. For a composite defect, `row` is
/// in degree `degree` and `col` in degree `degree - 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexDefect {
    pub degree: usize,
    pub row: usize,
    pub col: usize,
    pub kind: DefectKind,
}

impl fmt::Display for ComplexDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            DefectKind::Inhomogeneous => write!(
                f,
                "d_{} entry ({}, {}) is not homogeneous",
                self.degree, self.row, self.col
            ),
            DefectKind::NonzeroComposite => write!(
                f,
                "d_{} * d_{} is nonzero at ({}, {})",
                self.degree - 1,
                self.degree,
                self.row,
                self.col
            ),
        }
    }
}

/// `{"ranks":[...],"maps":[{"i":k,"entries":[{"row":r,"col":c,"sign":s,"mono":[e...]}]}]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeComplexJson {
    pub ranks: Vec<usize>,
    pub maps: Vec<MapJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub i: usize,
    pub entries: Vec<EntryJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub row: usize,
    pub col: usize,
    pub sign: i64,
    pub mono: Vec<u32>,
}

impl FreeComplex {
    pub fn new(
        n: usize,
        bases: Vec<Vec<BasisElement>>,
        maps: Vec<BTreeMap<(usize, usize), Entry>>,
    ) -> Result<Self> {
        if maps.len() + 1 != bases.len().max(1) {
            return Err(Error::IndexOutOfRange {
                index: maps.len(),
                len: bases.len(),
            });
        }
        for (k, map) in maps.iter().enumerate() {
            for &(r, c) in map.keys() {
                if r >= bases[k + 1].len() || c >= bases[k].len() {
                    return Err(Error::IndexOutOfRange {
                        index: r.max(c),
                        len: bases[k + 1].len().max(bases[k].len()),
                    });
                }
            }
        }
        Ok(FreeComplex { n, bases, maps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    /// Number of homological degrees (top degree + 1).
    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn basis(&self, i: usize) -> &[BasisElement] {
        &self.bases[i]
    }

    /// The differential `d_i`, for `1 <= i < len()`.
    pub fn map(&self, i: usize) -> &BTreeMap<(usize, usize), Entry> {
        &self.maps[i - 1]
    }

    pub fn entry_count(&self) -> usize {
        self.maps.iter().map(BTreeMap::len).sum()
    }

    /// Position of a basis element by key, with its homological degree.
    pub fn find(&self, key: &BasisKey) -> Option<(usize, usize)> {
        self.bases
            .iter()
            .enumerate()
            .find_map(|(i, b)| b.iter().position(|e| &e.key == key).map(|p| (i, p)))
    }

    /// Negates the `k`-th stored entry, counting through `d_1, d_2, ...` in
    /// row-major order. Returns `(i, row, col)` of the flipped entry.
    pub fn flip_entry(&mut self, k: usize) -> Result<(usize, usize, usize)> {
        let total = self.entry_count();
        let mut left = k;
        for (idx, map) in self.maps.iter_mut().enumerate() {
            if left < map.len() {
                let (&key, entry) = map.iter_mut().nth(left).expect("in range");
                entry.coeff = -entry.coeff;
                return Ok((idx + 1, key.0, key.1));
            }
            left -= map.len();
        }
        Err(Error::IndexOutOfRange { index: k, len: total })
    }

    /// Negates the entry between two basis elements given by key.
    pub fn flip_entry_by_key(&mut self, source: &BasisKey, target: &BasisKey) -> Result<()> {
        let (i, r) = self
            .find(source)
            .ok_or(Error::IndexOutOfRange { index: 0, len: 0 })?;
        let (_, c) = self
            .find(target)
            .ok_or(Error::IndexOutOfRange { index: 0, len: 0 })?;
        let e = self
            .maps
            .get_mut(i.wrapping_sub(1))
            .and_then(|m| m.get_mut(&(r, c)))
            .ok_or(Error::IndexOutOfRange { index: c, len: 0 })?;
        e.coeff = -e.coeff;
        Ok(())
    }

    /// Counts basis elements by homological degree and multidegree.
    pub fn betti_table(&self) -> BettiTable {
        let mut t = BettiTable::default();
        for (i, basis) in self.bases.iter().enumerate() {
            for e in basis {
                t.add(i, e.multidegree.clone(), 1);
            }
        }
        t
    }

    /// Checks homogeneity of every entry and `d_{i-1} d_i = 0` over the
    /// polynomial ring.
    pub fn verify(&self) -> Result<(), ComplexDefect> {
        for (k, map) in self.maps.iter().enumerate() {
            let i = k + 1;
            for (&(r, c), e) in map {
                let target = &self.bases[i - 1][c].multidegree;
                let ok = target
                    .mul(&e.mono)
                    .map(|p| p == self.bases[i][r].multidegree)
                    .unwrap_or(false);
                if !ok {
                    return Err(ComplexDefect {
                        degree: i,
                        row: r,
                        col: c,
                        kind: DefectKind::Inhomogeneous,
                    });
                }
            }
        }
        for i in 2..self.bases.len() {
            let mut lower: HashMap<usize, Vec<(usize, &Entry)>> = HashMap::new();
            for (&(r, c), e) in &self.maps[i - 2] {
                lower.entry(r).or_default().push((c, e));
            }
            let mut acc: BTreeMap<(usize, usize), BTreeMap<Monomial, i64>> = BTreeMap::new();
            for (&(r, mid), e) in &self.maps[i - 1] {
                for &(c, e2) in lower.get(&mid).into_iter().flatten() {
                    let mono = e.mono.mul(&e2.mono).expect("degrees bounded by the source");
                    *acc.entry((r, c)).or_default().entry(mono).or_default() += e.coeff * e2.coeff;
                }
            }
            if let Some((&(row, col), _)) = acc.iter().find(|(_, poly)| poly.values().any(|&v| v != 0)) {
                return Err(ComplexDefect {
                    degree: i,
                    row,
                    col,
                    kind: DefectKind::NonzeroComposite,
                });
            }
        }
        Ok(())
    }

    /// Position `(i, row, col)` of an entry with a unit coefficient, if any.
    pub fn first_unit_entry(&self) -> Option<(usize, usize, usize)> {
        self.maps.iter().enumerate().find_map(|(k, map)| {
            map.iter()
                .find(|(_, e)| e.coeff != 0 && e.mono.is_one())
                .map(|(&(r, c), _)| (k + 1, r, c))
        })
    }

    /// No differential entry is a unit, i.e. the complex is minimal.
    pub fn is_minimal(&self) -> bool {
        self.first_unit_entry().is_none()
    }

    /// Homology of `F ⊗ k`, computed strand by strand: for each multidegree
    /// only the basis elements of exactly that multidegree and the entries
    /// with unit monomial survive.
    pub fn tor_table(&self) -> Result<BettiTable> {
        let mut strands: BTreeMap<&Monomial, Vec<Vec<usize>>> = BTreeMap::new();
        for (i, basis) in self.bases.iter().enumerate() {
            for (p, e) in basis.iter().enumerate() {
                let s = strands
                    .entry(&e.multidegree)
                    .or_insert_with(|| vec![Vec::new(); self.bases.len()]);
                s[i].push(p);
            }
        }
        let mut table = BettiTable::default();
        for (b, members) in strands {
            let local: Vec<HashMap<usize, usize>> = members
                .iter()
                .map(|ps| ps.iter().enumerate().map(|(k, &p)| (p, k)).collect())
                .collect();
            let mut cc = ChainComplex::new(members.iter().map(Vec::len).collect());
            for i in 1..self.bases.len() {
                for &r in &members[i] {
                    for (&(_, c), e) in self.maps[i - 1].range((r, 0)..=(r, usize::MAX)) {
                        if e.mono.is_one() && e.coeff != 0 {
                            if let Some(&lc) = local[i - 1].get(&c) {
                                cc.push_entry(i - 1, local[i][&r], lc, e.coeff);
                            }
                        }
                    }
                }
            }
            for (i, h) in cc.homology_ranks()?.into_iter().enumerate() {
                table.add(i, b.clone(), h);
            }
        }
        Ok(table)
    }

    /// Compares two complexes entry by entry after matching basis elements
    /// by key. Returns a description of the first difference.
    pub fn first_difference(&self, other: &FreeComplex) -> Option<String> {
        if self.ranks() != other.ranks() {
            return Some(format!("ranks {:?} vs {:?}", self.ranks(), other.ranks()));
        }
        for (i, basis) in self.bases.iter().enumerate() {
            let theirs: HashMap<&BasisKey, &Monomial> =
                other.bases[i].iter().map(|e| (&e.key, &e.multidegree)).collect();
            for e in basis {
                match theirs.get(&e.key) {
                    Some(&md) if md == &e.multidegree => {}
                    Some(md) => return Some(format!("{:?}: multidegree {} vs {}", e.key, e.multidegree, md)),
                    None => return Some(format!("{:?} missing in degree {i}", e.key)),
                }
            }
        }
        for i in 1..self.bases.len() {
            let keyed = |fc: &FreeComplex| -> BTreeMap<(BasisKey, BasisKey), (i64, Monomial)> {
                fc.maps[i - 1]
                    .iter()
                    .map(|(&(r, c), e)| {
                        (
                            (fc.bases[i][r].key.clone(), fc.bases[i - 1][c].key.clone()),
                            (e.coeff, e.mono.clone()),
                        )
                    })
                    .collect()
            };
            let (a, b) = (keyed(self), keyed(other));
            if a != b {
                let diff = a
                    .iter()
                    .find(|(k, v)| b.get(k) != Some(v))
                    .map(|(k, _)| k.clone())
                    .or_else(|| b.keys().find(|k| !a.contains_key(k)).cloned());
                return Some(format!("d_{i} differs at {diff:?}"));
            }
        }
        None
    }

    pub fn to_json(&self) -> FreeComplexJson {
        FreeComplexJson {
            ranks: self.ranks(),
            maps: self
                .maps
                .iter()
                .enumerate()
                .map(|(k, map)| MapJson {
                    i: k + 1,
                    entries: map
                        .iter()
                        .map(|(&(row, col), e)| EntryJson {
                            row,
                            col,
                            sign: e.coeff,
                            mono: e.mono.exponents().to_vec(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

/// Number of variables of `sigma` strictly smaller than `y` (0-based index).
pub fn alpha(sigma: VarSet, y: usize) -> Result<usize> {
    if !sigma.contains(y) {
        return Err(Error::VariableNotInSet { var: y + 1 });
    }
    Ok(sigma.iter().take_while(|&z| z < y).count())
}

/// Builds `F_I`, refusing orders whose decomposition function is not
/// regular.
pub fn build_resolution(a: &AdmissibleOrder) -> Result<FreeComplex> {
    a.check_regular().map_err(Error::NotRegular)?;
    Ok(build_resolution_unchecked(a))
}

/// The same formulas applied to any admissible order. For a non-regular
/// order the result need not be a complex.
pub fn build_resolution_unchecked(a: &AdmissibleOrder) -> FreeComplex {
    let n = a.n();
    let gens = a.generators();
    let top = a.qsets().iter().map(|q| q.len() + 1).max().unwrap_or(0);
    let mut bases: Vec<Vec<BasisElement>> = vec![Vec::new(); top + 1];
    let mut index: Vec<HashMap<(VarSet, usize), usize>> = vec![HashMap::new(); top + 1];
    bases[0].push(BasisElement {
        key: BasisKey::Unit,
        multidegree: Monomial::one(n),
    });
    for (j, (u, &q)) in gens.iter().zip(a.qsets()).enumerate() {
        for sigma in q.subsets() {
            let i = sigma.len() + 1;
            index[i].insert((sigma, j), bases[i].len());
            bases[i].push(BasisElement {
                key: BasisKey::Pair { sigma, u: u.clone() },
                multidegree: u.mul_vars(sigma).expect("degree cap"),
            });
        }
    }

    let mut maps: Vec<BTreeMap<(usize, usize), Entry>> = vec![BTreeMap::new(); top];
    if top == 0 {
        return FreeComplex { n, bases, maps };
    }
    for (j, u) in gens.iter().enumerate() {
        maps[0].insert(
            (index[1][&(VarSet::EMPTY, j)], 0),
            Entry {
                coeff: 1,
                mono: u.clone(),
            },
        );
    }
    for i in 2..=top {
        let mut map = BTreeMap::new();
        for (&(sigma, j), &row) in &index[i] {
            let u = &gens[j];
            for (a_y, y) in sigma.iter().enumerate() {
                let sign = if a_y % 2 == 0 { 1 } else { -1 };
                let face = sigma.without(y);
                // mu part
                add_term(
                    &mut map,
                    row,
                    index[i - 1][&(face, j)],
                    -sign,
                    Monomial::var(n, y),
                );
                // delta part
                let g = a.g_multi_position(VarSet::singleton(y), j);
                if face.is_subset(a.qsets()[g]) {
                    let yu = u.mul_vars(VarSet::singleton(y)).expect("degree cap");
                    let mono = yu.div(&gens[g]).expect("g(yu) divides yu");
                    add_term(&mut map, row, index[i - 1][&(face, g)], sign, mono);
                }
            }
        }
        maps[i - 1] = map;
    }
    FreeComplex { n, bases, maps }
}

fn add_term(map: &mut BTreeMap<(usize, usize), Entry>, row: usize, col: usize, coeff: i64, mono: Monomial) {
    use std::collections::btree_map::Entry as Slot;
    match map.entry((row, col)) {
        Slot::Vacant(v) => {
            v.insert(Entry { coeff, mono });
        }
        Slot::Occupied(mut o) => {
            debug_assert_eq!(o.get().mono, mono, "coalesced terms must share a monomial");
            o.get_mut().coeff += coeff;
            if o.get().coeff == 0 {
                o.remove();
            }
        }
    }
}
