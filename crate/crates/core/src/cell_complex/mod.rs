//! The labelled regular cell complex `X_I` supporting the resolution, its
//! simplicial subdivision `Λ_I`, and the closure operators on `q(u)`.
//!
//! `X_I` is kept purely combinatorial: a cell `B(sigma, u)` for every
//! generator `u` and `sigma ⊆ q(u)`, with codimension-one faces
//! `B(sigma - y, u)` and `B(sigma - y, g(y u))` (the latter only when
//! `sigma - y ⊆ q(g(y u))`). Incidence signs are those of the resolution
//! differential, and [`CellComplex::check_regular_cw`] confirms they form a
//! regular CW incidence.

mod convex;
mod simplicial;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

pub use convex::{closure, convex_geometry_report, AxiomViolation, ClosureReport, DEFAULT_CLOSURE_BOUND};
pub use simplicial::{
    build_lambda, find_shelling, lambda_u, lambda_u_induced, SimplicialComplex, SimplicialJson,
    DEFAULT_SHELLING_BOUND,
};

use crate::error::{Error, Result};
use crate::homology::{reduced_homology, AugmentedComplex, ChainComplex};
use crate::linear_quotients::AdmissibleOrder;
use crate::monomial::{Monomial, VarSet};
use crate::resolution::{BasisElement, BasisKey, Entry, FreeComplex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub sigma: VarSet,
    /// Index into [`CellComplex::generators`].
    pub u: usize,
    pub dim: usize,
    pub label: Monomial,
    /// Indices into [`CellComplex::generators`], sorted.
    pub vertices: Vec<usize>,
    /// Codimension-one faces as `(cell id, incidence sign)`.
    pub faces: Vec<(usize, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellComplex {
    n: usize,
    generators: Vec<Monomial>,
    cells: Vec<Cell>,
}

/// Why [`CellComplex::check_regular_cw`] rejected a complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CwDefect {
    /// `∂∂ ≠ 0` at `cell`, towards `face` (`None` is the empty cell).
    BoundarySquare {
        cell: usize,
        face: Option<usize>,
        sum: i64,
    },
    /// The interval from `face` to `cell` does not have exactly two
    /// intermediate cells.
    Diamond {
        cell: usize,
        face: Option<usize>,
        count: usize,
    },
    /// The boundary of `cell` does not have the homology of a sphere.
    BoundaryNotSphere {
        cell: usize,
        ranks: Vec<usize>,
    },
    /// Stored vertex set differs from the 0-cells below `cell`.
    VertexSet {
        cell: usize,
    },
    /// A face has the wrong dimension or a bad id.
    Malformed {
        cell: usize,
    },
    Homology(Error),
}

impl fmt::Display for CwDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |x: &Option<usize>| x.map_or("∅".to_string(), |v| v.to_string());
        match self {
            CwDefect::BoundarySquare { cell, face, sum } => {
                write!(
                    f,
                    "boundary of boundary of cell {cell} has coefficient {sum} on {}",
                    show(face)
                )
            }
            CwDefect::Diamond { cell, face, count } => write!(
                f,
                "interval [{}, {cell}] has {count} intermediate cells instead of 2",
                show(face)
            ),
            CwDefect::BoundaryNotSphere { cell, ranks } => {
                write!(f, "boundary of cell {cell} has reduced homology {ranks:?}")
            }
            CwDefect::VertexSet { cell } => write!(f, "vertex set of cell {cell} is inconsistent"),
            CwDefect::Malformed { cell } => write!(f, "cell {cell} has malformed faces"),
            CwDefect::Homology(e) => write!(f, "{e}"),
        }
    }
}

/// `{"cells":[{"id":k,"dim":d,"u":pos,"sigma":[vars],"label":[e...],"faces":[{"id":j,"sign":s}]}]}`
///
/// `u` is the position of the generator in the admissible order and
/// variables are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellComplexJson {
    pub cells: Vec<CellJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    pub id: usize,
    pub dim: usize,
    pub u: usize,
    pub sigma: Vec<usize>,
    pub label: Vec<u32>,
    pub faces: Vec<FaceJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceJson {
    pub id: usize,
    pub sign: i64,
}

/// A cell described only by labels, for comparing complexes built from
/// different generator lists.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LabeledCell {
    pub sigma: VarSet,
    pub u: Monomial,
    pub label: Monomial,
    pub vertices: BTreeSet<Monomial>,
    pub faces: BTreeSet<(VarSet, Monomial, i64)>,
}

impl CellComplex {
    /// Assembles a complex from explicit cells, checking ids and face
    /// dimensions.
    pub fn from_cells(n: usize, generators: Vec<Monomial>, cells: Vec<Cell>) -> Result<Self> {
        for (id, c) in cells.iter().enumerate() {
            if c.u >= generators.len() || c.vertices.iter().any(|&v| v >= generators.len()) {
                return Err(Error::IndexOutOfRange {
                    index: id,
                    len: generators.len(),
                });
            }
            for &(f, _) in &c.faces {
                if f >= cells.len() || cells[f].dim + 1 != c.dim {
                    return Err(Error::IndexOutOfRange {
                        index: f,
                        len: cells.len(),
                    });
                }
            }
        }
        Ok(CellComplex { n, generators, cells })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn dim(&self) -> Option<usize> {
        self.cells.iter().map(|c| c.dim).max()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim().map_or(0, |d| d + 1)];
        for c in &self.cells {
            f[c.dim] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &k)| if d % 2 == 0 { k as i64 } else { -(k as i64) })
            .sum()
    }

    /// Cell id of `B(sigma, u)`.
    pub fn find(&self, sigma: VarSet, u: &Monomial) -> Option<usize> {
        self.cells
            .iter()
            .position(|c| c.sigma == sigma && &self.generators[c.u] == u)
    }

    /// Number of stored incidences.
    pub fn incidence_count(&self) -> usize {
        self.cells.iter().map(|c| c.faces.len()).sum()
    }

    /// Negates the `k`-th stored incidence, counting faces cell by cell.
    /// Returns `(cell, face)`.
    pub fn flip_incidence(&mut self, k: usize) -> Result<(usize, usize)> {
        let total = self.incidence_count();
        let mut left = k;
        for (id, c) in self.cells.iter_mut().enumerate() {
            if left < c.faces.len() {
                c.faces[left].1 = -c.faces[left].1;
                return Ok((id, c.faces[left].0));
            }
            left -= c.faces.len();
        }
        Err(Error::IndexOutOfRange { index: k, len: total })
    }

    /// The subcomplex of cells whose label divides `mu`, renumbered.
    pub fn restrict_cells(&self, mu: &Monomial) -> CellComplex {
        self.subcomplex(|c| c.label.n() == mu.n() && c.label.divides_unchecked(mu))
    }

    fn subcomplex(&self, keep: impl Fn(&Cell) -> bool) -> CellComplex {
        let mut remap = HashMap::new();
        for (id, c) in self.cells.iter().enumerate() {
            if keep(c) {
                remap.insert(id, remap.len());
            }
        }
        let cells = self
            .cells
            .iter()
            .enumerate()
            .filter(|(id, _)| remap.contains_key(id))
            .map(|(_, c)| Cell {
                faces: c
                    .faces
                    .iter()
                    .filter_map(|&(f, s)| remap.get(&f).map(|&g| (g, s)))
                    .collect(),
                ..c.clone()
            })
            .collect();
        CellComplex {
            n: self.n,
            generators: self.generators.clone(),
            cells,
        }
    }

    /// Ids of all faces of `id` of every codimension, excluding `id`.
    fn proper_faces(&self, id: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let mut stack: Vec<usize> = self.cells[id].faces.iter().map(|&(f, _)| f).collect();
        while let Some(f) = stack.pop() {
            if out.insert(f) {
                stack.extend(self.cells[f].faces.iter().map(|&(g, _)| g));
            }
        }
        out
    }

    /// Checks that the stored incidences describe a regular CW complex:
    /// `∂∂ = 0` (with the augmentation), every interval of length two is a
    /// diamond, every cell boundary has the homology of a sphere, and every
    /// stored vertex set equals the 0-cells below the cell.
    pub fn check_regular_cw(&self) -> Result<(), CwDefect> {
        for (id, c) in self.cells.iter().enumerate() {
            if c.faces
                .iter()
                .any(|&(f, _)| f >= self.cells.len() || self.cells[f].dim + 1 != c.dim)
                || (c.dim == 0 && !c.faces.is_empty())
            {
                return Err(CwDefect::Malformed { cell: id });
            }
        }
        let two_step: Vec<BTreeMap<Option<usize>, (usize, i64)>> =
            (0..self.cells.len()).map(|id| self.two_step(id)).collect();
        for (id, paths) in two_step.iter().enumerate() {
            if let Some((&face, &(_, sum))) = paths.iter().find(|(_, &(_, s))| s != 0) {
                return Err(CwDefect::BoundarySquare { cell: id, face, sum });
            }
        }
        for (id, paths) in two_step.iter().enumerate() {
            if let Some((&face, &(count, _))) = paths.iter().find(|(_, &(k, _))| k != 2) {
                return Err(CwDefect::Diamond {
                    cell: id,
                    face,
                    count,
                });
            }
        }
        for (id, c) in self.cells.iter().enumerate() {
            let below = self.proper_faces(id);
            let boundary = self.subcomplex_ids(&below);
            let h = reduced_homology(&boundary).map_err(CwDefect::Homology)?;
            if !h.is_sphere(c.dim as isize - 1) {
                let ranks = (-1..c.dim as isize).map(|d| h.rank(d)).collect();
                return Err(CwDefect::BoundaryNotSphere { cell: id, ranks });
            }
            let mut verts: Vec<usize> = below
                .iter()
                .chain(std::iter::once(&id))
                .filter(|&&f| self.cells[f].dim == 0)
                .map(|&f| self.cells[f].u)
                .collect();
            verts.sort_unstable();
            if verts != c.vertices {
                return Err(CwDefect::VertexSet { cell: id });
            }
        }
        Ok(())
    }

    /// For each face two steps below `id` (`None` = the empty cell), the
    /// number of intermediate cells and the summed sign products.
    fn two_step(&self, id: usize) -> BTreeMap<Option<usize>, (usize, i64)> {
        let mut out: BTreeMap<Option<usize>, (usize, i64)> = BTreeMap::new();
        for &(f, s) in &self.cells[id].faces {
            if self.cells[f].dim == 0 {
                let e = out.entry(None).or_default();
                e.0 += 1;
                e.1 += s;
            }
            for &(g, t) in &self.cells[f].faces {
                let e = out.entry(Some(g)).or_default();
                e.0 += 1;
                e.1 += s * t;
            }
        }
        out
    }

    fn subcomplex_ids(&self, ids: &BTreeSet<usize>) -> CellComplex {
        let mut remap = HashMap::new();
        for &id in ids {
            remap.insert(id, remap.len());
        }
        let cells = ids
            .iter()
            .map(|&id| {
                let c = &self.cells[id];
                Cell {
                    faces: c
                        .faces
                        .iter()
                        .filter_map(|&(f, s)| remap.get(&f).map(|&g| (g, s)))
                        .collect(),
                    ..c.clone()
                }
            })
            .collect();
        CellComplex {
            n: self.n,
            generators: self.generators.clone(),
            cells,
        }
    }

    /// First pair of distinct cells sharing a vertex set.
    pub fn repeated_vertex_set(&self) -> Option<(usize, usize)> {
        let mut seen: HashMap<&[usize], usize> = HashMap::new();
        for (id, c) in self.cells.iter().enumerate() {
            if let Some(&other) = seen.get(c.vertices.as_slice()) {
                return Some((other, id));
            }
            seen.insert(&c.vertices, id);
        }
        None
    }

    /// First cell with a codimension-one face of equal label.
    pub fn non_strict_face_label(&self) -> Option<(usize, usize)> {
        self.cells.iter().enumerate().find_map(|(id, c)| {
            c.faces
                .iter()
                .find(|&&(f, _)| self.cells[f].label == c.label)
                .map(|&(f, _)| (id, f))
        })
    }

    /// The cellular free complex: one basis element per cell (shifted up by
    /// one degree) plus the unit, with entries `sign * label(c)/label(f)`.
    pub fn cellular_resolution(&self) -> Result<FreeComplex> {
        let top = self.dim().map_or(0, |d| d + 1);
        let mut bases: Vec<Vec<BasisElement>> = vec![Vec::new(); top + 1];
        let mut pos = vec![0usize; self.cells.len()];
        bases[0].push(BasisElement {
            key: BasisKey::Unit,
            multidegree: Monomial::one(self.n),
        });
        for (id, c) in self.cells.iter().enumerate() {
            pos[id] = bases[c.dim + 1].len();
            bases[c.dim + 1].push(BasisElement {
                key: BasisKey::Pair {
                    sigma: c.sigma,
                    u: self.generators[c.u].clone(),
                },
                multidegree: c.label.clone(),
            });
        }
        let mut maps: Vec<BTreeMap<(usize, usize), Entry>> = vec![BTreeMap::new(); top];
        for (id, c) in self.cells.iter().enumerate() {
            if c.dim == 0 {
                maps[0].insert(
                    (pos[id], 0),
                    Entry {
                        coeff: 1,
                        mono: c.label.clone(),
                    },
                );
            }
            for &(f, s) in &c.faces {
                let mono = c
                    .label
                    .div(&self.cells[f].label)
                    .ok_or_else(|| Error::NotInIdeal(c.label.clone()))?;
                maps[c.dim].insert((pos[id], pos[f]), Entry { coeff: s, mono });
            }
        }
        FreeComplex::new(self.n, bases, maps)
    }

    /// Label-level description, independent of ids and generator indexing.
    pub fn labeled_form(&self) -> BTreeSet<LabeledCell> {
        self.cells
            .iter()
            .map(|c| LabeledCell {
                sigma: c.sigma,
                u: self.generators[c.u].clone(),
                label: c.label.clone(),
                vertices: c.vertices.iter().map(|&v| self.generators[v].clone()).collect(),
                faces: c
                    .faces
                    .iter()
                    .map(|&(f, s)| (self.cells[f].sigma, self.generators[self.cells[f].u].clone(), s))
                    .collect(),
            })
            .collect()
    }

    pub fn same_labeled_complex(&self, other: &CellComplex) -> bool {
        self.labeled_form() == other.labeled_form()
    }

    pub fn to_json(&self) -> CellComplexJson {
        CellComplexJson {
            cells: self
                .cells
                .iter()
                .enumerate()
                .map(|(id, c)| CellJson {
                    id,
                    dim: c.dim,
                    u: c.u,
                    sigma: c.sigma.to_numbers(),
                    label: c.label.exponents().to_vec(),
                    faces: c.faces.iter().map(|&(id, sign)| FaceJson { id, sign }).collect(),
                })
                .collect(),
        }
    }

    /// Flat text dump of the face poset, one cell per line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for (id, c) in self.cells.iter().enumerate() {
            let faces: Vec<String> = c
                .faces
                .iter()
                .map(|&(f, s)| format!("{}{}", if s > 0 { "+" } else { "-" }, f))
                .collect();
            out.push_str(&format!(
                "{id}: dim {} B({}; {}) label {} faces [{}]\n",
                c.dim,
                c.sigma,
                self.generators[c.u],
                c.label,
                faces.join(" ")
            ));
        }
        out
    }
}

impl AugmentedComplex for CellComplex {
    fn augmented_chain_complex(&self) -> ChainComplex {
        let top = self.dim().map_or(0, |d| d + 1);
        let mut ranks = vec![0usize; top + 1];
        ranks[0] = 1;
        let mut pos = vec![0usize; self.cells.len()];
        for (id, c) in self.cells.iter().enumerate() {
            pos[id] = ranks[c.dim + 1];
            ranks[c.dim + 1] += 1;
        }
        let mut cc = ChainComplex::new(ranks);
        for (id, c) in self.cells.iter().enumerate() {
            if c.dim == 0 {
                cc.push_entry(0, pos[id], 0, 1);
            }
            for &(f, s) in &c.faces {
                cc.push_entry(c.dim, pos[id], pos[f], s);
            }
        }
        cc
    }

    fn is_void(&self) -> bool {
        self.cells.is_empty()
    }
}

/// Builds `X_I`, refusing non-regular orders.
pub fn build_x(a: &AdmissibleOrder) -> Result<CellComplex> {
    a.check_regular().map_err(Error::NotRegular)?;
    Ok(build_x_unchecked(a))
}

pub(crate) fn build_x_unchecked(a: &AdmissibleOrder) -> CellComplex {
    let gens = a.generators();
    let qsets = a.qsets();
    let top = qsets.iter().map(|q| q.len()).max();
    let mut ids: HashMap<(VarSet, usize), usize> = HashMap::new();
    let mut cells = Vec::new();
    for dim in 0..=top.unwrap_or(0) {
        if top.is_none() {
            break;
        }
        for (j, &q) in qsets.iter().enumerate() {
            for sigma in q.subsets().filter(|s| s.len() == dim) {
                let mut vertices: Vec<usize> = sigma.subsets().map(|t| a.g_multi_position(t, j)).collect();
                vertices.sort_unstable();
                vertices.dedup();
                let mut faces = Vec::new();
                for (k, y) in sigma.iter().enumerate() {
                    let sign = if k % 2 == 0 { 1 } else { -1 };
                    let face = sigma.without(y);
                    faces.push((ids[&(face, j)], -sign));
                    let g = a.g_multi_position(VarSet::singleton(y), j);
                    if face.is_subset(qsets[g]) {
                        faces.push((ids[&(face, g)], sign));
                    }
                }
                faces.sort_unstable();
                ids.insert((sigma, j), cells.len());
                cells.push(Cell {
                    sigma,
                    u: j,
                    dim,
                    label: gens[j].mul_vars(sigma).expect("degree cap"),
                    vertices,
                    faces,
                });
            }
        }
    }
    CellComplex {
        n: a.n(),
        generators: gens.to_vec(),
        cells,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{is_acyclic, reduced_homology_ranks, supports_resolution};
    use crate::monomial::MonomialIdeal;
    use crate::resolution::build_resolution;

    fn m(s: &str, n: usize) -> Monomial {
        Monomial::parse(s, n).unwrap()
    }

    pub(super) fn order_of(text: &str, n: usize) -> AdmissibleOrder {
        let ideal = MonomialIdeal::parse(text, n).unwrap();
        let gens: Vec<Monomial> = text.split(',').map(|s| m(s.trim(), n)).collect();
        AdmissibleOrder::from_monomials(&ideal, &gens).unwrap()
    }

    fn vs(idx: &[usize]) -> VarSet {
        VarSet::from_indices(idx.iter().map(|i| i - 1))
    }

    const M3: &str = "x1*x2, x1*x3, x2*x3";
    const MAX2: &str = "x1^2, x1*x2, x2^2, x1*x3, x2*x3, x3^2";

    #[test]
    fn three_quadrics_is_a_path() {
        let x = build_x(&order_of(M3, 3)).unwrap();
        assert_eq!(x.f_vector(), vec![3, 2]);
        assert_eq!(x.euler_characteristic(), 1);
        for (sigma, u) in [(vs(&[2]), "x1*x3"), (vs(&[1]), "x2*x3")] {
            let e = &x.cells()[x.find(sigma, &m(u, 3)).unwrap()];
            let verts: Vec<&Monomial> = e.vertices.iter().map(|&v| &x.generators()[v]).collect();
            assert!(verts.contains(&&m("x1*x2", 3)));
            assert!(verts.contains(&&m(u, 3)));
        }
        assert!(x.check_regular_cw().is_ok());
        assert!(is_acyclic(&x).unwrap());
    }

    #[test]
    fn principal_ideal_is_a_point() {
        let x = build_x(&order_of("x1^2", 1)).unwrap();
        assert_eq!(x.f_vector(), vec![1]);
        assert!(x.check_regular_cw().is_ok());
    }

    #[test]
    fn square_of_maximal_ideal() {
        let x = build_x(&order_of(MAX2, 3)).unwrap();
        assert_eq!(x.f_vector(), vec![6, 8, 3]);
        assert_eq!(x.euler_characteristic(), 1);
        assert!(x.check_regular_cw().is_ok());
        // each 2-cell is a square u, g(x1 u), g(x2 u), g(x1 x2 u)
        let sq = &x.cells()[x.find(vs(&[1, 2]), &m("x3^2", 3)).unwrap()];
        let verts: BTreeSet<Monomial> = sq.vertices.iter().map(|&v| x.generators()[v].clone()).collect();
        let want: BTreeSet<Monomial> = ["x3^2", "x1*x3", "x2*x3", "x1*x2"]
            .iter()
            .map(|s| m(s, 3))
            .collect();
        assert_eq!(verts, want);
        assert_eq!(sq.faces.len(), 4);
        // B({x1,x2}; x1x3) and B({x1,x2}; x2x3) collapse to triangles since
        // g(x1x2 u) coincides with g(x1 u) or g(x2 u)
        let mut shapes: Vec<(usize, usize)> = x
            .cells()
            .iter()
            .filter(|c| c.dim == 2)
            .map(|c| (c.vertices.len(), c.faces.len()))
            .collect();
        shapes.sort();
        assert_eq!(shapes, vec![(3, 3), (3, 3), (4, 4)]);
        assert_eq!(reduced_homology_ranks(&x).unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn flipped_incidence_fails_regular_cw() {
        let mut x = build_x(&order_of(MAX2, 3)).unwrap();
        let k = x.incidence_count() - 1;
        x.flip_incidence(k).unwrap();
        assert!(matches!(
            x.check_regular_cw(),
            Err(CwDefect::BoundarySquare { .. })
        ));
        let mut y = build_x(&order_of(M3, 3)).unwrap();
        y.flip_incidence(0).unwrap();
        assert!(matches!(
            y.check_regular_cw(),
            Err(CwDefect::BoundarySquare { face: None, .. })
        ));
    }

    #[test]
    fn cellular_complex_equals_resolution() {
        for (t, n) in [(M3, 3), (MAX2, 3), ("x1^2", 1)] {
            let a = order_of(t, n);
            let f = build_resolution(&a).unwrap();
            let c = build_x(&a).unwrap().cellular_resolution().unwrap();
            assert_eq!(f.first_difference(&c), None);
        }
    }

    #[test]
    fn restriction_examples() {
        let x = build_x(&order_of(M3, 3)).unwrap();
        assert_eq!(x.restrict_cells(&m("x1*x2*x3", 3)).f_vector(), vec![3, 2]);
        let r = x.restrict_cells(&m("x1*x2", 3));
        assert_eq!(r.f_vector(), vec![1]);
        assert_eq!(r.generators()[r.cells()[0].u], m("x1*x2", 3));

        let x = build_x(&order_of(MAX2, 3)).unwrap();
        let r = x.restrict_cells(&m("x1*x2*x3^2", 3));
        assert_eq!(r.f_vector(), vec![4, 4, 1]);
        assert_eq!(r.cells().iter().find(|c| c.dim == 2).unwrap().sigma, vs(&[1, 2]));
    }

    #[test]
    fn restriction_matches_restricted_order() {
        let a = order_of(MAX2, 3);
        let x = build_x(&a).unwrap();
        for mu in a.ideal().lcm_closure() {
            let sub = a.restrict_below(&mu).unwrap();
            let y = build_x(&sub).unwrap();
            assert!(x.restrict_cells(&mu).same_labeled_complex(&y), "mu = {mu}");
        }
    }

    #[test]
    fn supports_resolution_examples() {
        let a = order_of(M3, 3);
        assert_eq!(
            supports_resolution(&build_x(&a).unwrap(), a.ideal()).unwrap(),
            None
        );
        let a = order_of(MAX2, 3);
        assert_eq!(
            supports_resolution(&build_x(&a).unwrap(), a.ideal()).unwrap(),
            None
        );

        let ideal = MonomialIdeal::parse("x1*x2, x2*x3", 3).unwrap();
        let gens = ideal.gens().to_vec();
        let cells = (0..2)
            .map(|k| Cell {
                sigma: VarSet::EMPTY,
                u: k,
                dim: 0,
                label: gens[k].clone(),
                vertices: vec![k],
                faces: vec![],
            })
            .collect();
        let two_points = CellComplex::from_cells(3, gens, cells).unwrap();
        assert_eq!(
            supports_resolution(&two_points, &ideal).unwrap(),
            Some(m("x1*x2*x3", 3))
        );
    }

    #[test]
    fn distinct_vertex_sets_and_strict_labels() {
        let x = build_x(&order_of(MAX2, 3)).unwrap();
        assert_eq!(x.repeated_vertex_set(), None);
        assert_eq!(x.non_strict_face_label(), None);
    }

    #[test]
    fn json_shape() {
        let x = build_x(&order_of(M3, 3)).unwrap();
        let j = serde_json::to_value(x.to_json()).unwrap();
        let cells = j["cells"].as_array().unwrap();
        assert_eq!(cells.len(), 5);
        assert_eq!(cells[3]["dim"], 1);
        assert_eq!(cells[3]["sigma"], serde_json::json!([2]));
        assert_eq!(cells[3]["label"], serde_json::json!([1, 1, 1]));
        assert_eq!(cells[3]["faces"].as_array().unwrap().len(), 2);
        assert!(x.render_text().contains("B({x2}; x1*x3)"));
    }

    #[test]
    fn non_regular_order_refused() {
        // linear quotients, but x2 ∈ q(g(x1 * x3^2)) = q(x1x3) while x2 ∉ q(x3^2)
        let a = order_of("x1^2, x1*x2, x1*x3, x3^2, x2*x3, x2^2", 3);
        let w = a.check_regular().unwrap_err();
        assert_eq!((w.step, w.y), (4, 0));
        assert!(matches!(build_x(&a), Err(Error::NotRegular(_))));
        assert!(matches!(build_lambda(&a), Err(Error::NotRegular(_))));
        assert!(build_x_unchecked(&a).check_regular_cw().is_err());
    }
}
