use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::convex::{convex_geometry_report, DEFAULT_CLOSURE_BOUND};
use crate::error::{Error, Result};
use crate::homology::{AugmentedComplex, ChainComplex};
use crate::linear_quotients::AdmissibleOrder;
use crate::monomial::Monomial;

/// Default cap on the number of facets tried by [`find_shelling`].
pub const DEFAULT_SHELLING_BOUND: usize = 12;

/// A simplicial complex on labelled vertices, stored by its facets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<Monomial>,
    facets: Vec<Vec<usize>>,
}

/// `{"vertices":[[e...],...],"facets":[[v...],...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialJson {
    pub vertices: Vec<Vec<u32>>,
    pub facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Normalizes `faces` to the sorted list of maximal faces.
    pub fn new(vertices: Vec<Monomial>, faces: Vec<Vec<usize>>) -> Self {
        let sets: BTreeSet<Vec<usize>> = faces
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .filter(|f| !f.is_empty())
            .collect();
        let mut facets: Vec<Vec<usize>> = sets
            .iter()
            .filter(|f| !sets.iter().any(|g| g.len() > f.len() && is_subset(f, g)))
            .cloned()
            .collect();
        facets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        SimplicialComplex { vertices, facets }
    }

    pub fn vertices(&self) -> &[Monomial] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// Every non-empty face.
    pub fn faces(&self) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            for mask in 1u64..1 << f.len() {
                out.insert(
                    f.iter()
                        .enumerate()
                        .filter(|(k, _)| mask >> k & 1 == 1)
                        .map(|(_, &v)| v)
                        .collect(),
                );
            }
        }
        out
    }

    /// Vertex indices that occur in some face.
    pub fn used_vertices(&self) -> BTreeSet<usize> {
        self.facets.iter().flatten().copied().collect()
    }

    /// `-1` for the void complex.
    pub fn dim(&self) -> isize {
        self.facets
            .iter()
            .map(|f| f.len() as isize - 1)
            .max()
            .unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        self.facets.iter().all(|f| f.len() as isize - 1 == self.dim())
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; (self.dim() + 1) as usize];
        for face in self.faces() {
            f[face.len() - 1] += 1;
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

    /// The subcomplex of faces whose vertices all lie in `keep`.
    pub fn induced(&self, keep: &BTreeSet<usize>) -> SimplicialComplex {
        let faces = self
            .faces()
            .into_iter()
            .filter(|f| f.iter().all(|v| keep.contains(v)))
            .collect();
        SimplicialComplex::new(self.vertices.clone(), faces)
    }

    /// The cone with apex `apex` over `self`, the apex included even when
    /// `self` is void.
    pub fn cone(&self, apex: usize) -> SimplicialComplex {
        let mut faces: Vec<Vec<usize>> = self
            .facets
            .iter()
            .map(|f| {
                let mut g = f.clone();
                g.push(apex);
                g
            })
            .collect();
        faces.push(vec![apex]);
        SimplicialComplex::new(self.vertices.clone(), faces)
    }

    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        SimplicialComplex::new(
            self.vertices.clone(),
            self.facets.iter().chain(&other.facets).cloned().collect(),
        )
    }

    pub fn to_json(&self) -> SimplicialJson {
        SimplicialJson {
            vertices: self.vertices.iter().map(|v| v.exponents().to_vec()).collect(),
            facets: self.facets.clone(),
        }
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

impl AugmentedComplex for SimplicialComplex {
    fn augmented_chain_complex(&self) -> ChainComplex {
        let top = (self.dim() + 1) as usize;
        let mut by_size: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top + 1];
        by_size[0].push(Vec::new());
        for f in self.faces() {
            by_size[f.len()].push(f);
        }
        let index: Vec<HashMap<&Vec<usize>, usize>> = by_size
            .iter()
            .map(|fs| fs.iter().enumerate().map(|(k, f)| (f, k)).collect())
            .collect();
        let mut cc = ChainComplex::new(by_size.iter().map(Vec::len).collect());
        for size in 1..=top {
            for (s, f) in by_size[size].iter().enumerate() {
                for k in 0..f.len() {
                    let mut g = f.clone();
                    g.remove(k);
                    let sign = if k % 2 == 0 { 1 } else { -1 };
                    cc.push_entry(size - 1, s, index[size - 1][&g], sign);
                }
            }
        }
        cc
    }

    fn is_void(&self) -> bool {
        self.facets.is_empty()
    }
}

/// `Λ_1, ..., Λ_m`: `Λ_j` cones over the subcomplex of `Λ_{j-1}` induced on
/// `{g(sigma; u_j) : sigma ⊆ q(u_j)}`. Returns the list of partial
/// complexes, last one being `Λ_I`.
fn lambda_steps(a: &AdmissibleOrder) -> Vec<SimplicialComplex> {
    let verts = a.generators().to_vec();
    let mut steps: Vec<SimplicialComplex> = Vec::with_capacity(a.len());
    let mut current = SimplicialComplex::new(verts.clone(), Vec::new());
    for j in 0..a.len() {
        let keep = lambda_vertex_set(a, j);
        let link = current.induced(&keep);
        current = current.union(&link.cone(j));
        steps.push(current.clone());
    }
    steps
}

fn lambda_vertex_set(a: &AdmissibleOrder, j: usize) -> BTreeSet<usize> {
    a.qsets()[j]
        .subsets()
        .filter(|s| !s.is_empty())
        .map(|s| a.g_multi_position(s, j))
        .collect()
}

/// The simplicial subdivision `Λ_I` of `X_I`; vertex `k` is the `k`-th
/// generator of the order.
pub fn build_lambda(a: &AdmissibleOrder) -> Result<SimplicialComplex> {
    a.check_regular().map_err(Error::NotRegular)?;
    Ok(lambda_steps(a)
        .pop()
        .unwrap_or_else(|| SimplicialComplex::new(Vec::new(), Vec::new())))
}

/// `Λ(u)` as the order complex of the non-empty closed subsets of `q(u)`,
/// each closed set `sigma` drawn as the vertex `g(sigma; u)`.
pub fn lambda_u(a: &AdmissibleOrder, u: &Monomial) -> Result<SimplicialComplex> {
    a.check_regular().map_err(Error::NotRegular)?;
    let report = convex_geometry_report(a, u, DEFAULT_CLOSURE_BOUND)?;
    let facets = report
        .maximal_chains()
        .into_iter()
        .map(|chain| chain.into_iter().skip(1).map(|k| report.images[k]).collect())
        .collect();
    Ok(SimplicialComplex::new(a.generators().to_vec(), facets))
}

/// `Λ(u)` as the subcomplex of `Λ_{j-1}` induced on
/// `{g(sigma; u) : ∅ ≠ sigma ⊆ q(u)}`.
pub fn lambda_u_induced(a: &AdmissibleOrder, u: &Monomial) -> Result<SimplicialComplex> {
    a.check_regular().map_err(Error::NotRegular)?;
    let j = a.position_of(u).ok_or_else(|| Error::NotAGenerator(u.clone()))?;
    let verts = a.generators().to_vec();
    if j == 0 {
        return Ok(SimplicialComplex::new(verts, Vec::new()));
    }
    let mut prefix = lambda_steps(a);
    prefix.truncate(j);
    let previous = prefix.pop().expect("j >= 1");
    Ok(previous.induced(&lambda_vertex_set(a, j)))
}

/// Searches for a shelling order of a pure complex: each facet after the
/// first meets the union of the earlier ones in a non-empty union of its
/// codimension-one faces. Returns facet indices.
pub fn find_shelling(k: &SimplicialComplex, bound: usize) -> Result<Option<Vec<usize>>> {
    if !k.is_pure() {
        return Err(Error::NotPure);
    }
    let t = k.facets.len();
    if t > bound {
        return Err(Error::TooLarge {
            what: "facet count",
            size: t,
            bound,
        });
    }
    if t == 0 {
        return Ok(Some(Vec::new()));
    }
    let mut order = Vec::with_capacity(t);
    let mut used = vec![false; t];
    for first in 0..t {
        order.push(first);
        used[first] = true;
        if shell_from(k, &mut order, &mut used) {
            return Ok(Some(order));
        }
        order.pop();
        used[first] = false;
    }
    Ok(None)
}

fn shell_from(k: &SimplicialComplex, order: &mut Vec<usize>, used: &mut [bool]) -> bool {
    if order.len() == k.facets.len() {
        return true;
    }
    for c in 0..k.facets.len() {
        if used[c] || !attaches_along_ridges(k, order, c) {
            continue;
        }
        order.push(c);
        used[c] = true;
        if shell_from(k, order, used) {
            return true;
        }
        order.pop();
        used[c] = false;
    }
    false
}

fn attaches_along_ridges(k: &SimplicialComplex, previous: &[usize], c: usize) -> bool {
    let f = &k.facets[c];
    let ridge = f.len() - 1;
    let meets: Vec<Vec<usize>> = previous
        .iter()
        .map(|&p| {
            f.iter()
                .copied()
                .filter(|v| k.facets[p].binary_search(v).is_ok())
                .collect()
        })
        .collect();
    let ridges: Vec<&Vec<usize>> = meets.iter().filter(|m| m.len() == ridge).collect();
    !ridges.is_empty() && meets.iter().all(|m| ridges.iter().any(|r| is_subset(m, r)))
}

#[cfg(test)]
mod tests {
    use super::super::tests::order_of;
    use super::*;
    use crate::homology::{is_acyclic, reduced_homology_ranks};

    fn m(s: &str, n: usize) -> Monomial {
        Monomial::parse(s, n).unwrap()
    }

    fn complex(facets: &[&[usize]]) -> SimplicialComplex {
        let nv = facets.iter().flat_map(|f| f.iter()).max().map_or(0, |v| v + 1);
        SimplicialComplex::new(
            (0..nv).map(|i| Monomial::var(nv, i)).collect(),
            facets.iter().map(|f| f.to_vec()).collect(),
        )
    }

    const M3: &str = "x1*x2, x1*x3, x2*x3";
    const MAX2: &str = "x1^2, x1*x2, x2^2, x1*x3, x2*x3, x3^2";

    #[test]
    fn normalization_keeps_maximal_faces() {
        let k = complex(&[&[0, 1, 2], &[1, 0], &[3]]);
        assert_eq!(k.facets(), &[vec![0, 1, 2], vec![3]]);
        assert_eq!(k.f_vector(), vec![4, 3, 1]);
        assert!(!k.is_pure());
    }

    #[test]
    fn shelling_examples() {
        let path = complex(&[&[0, 1], &[1, 2]]);
        assert!(find_shelling(&path, DEFAULT_SHELLING_BOUND).unwrap().is_some());
        let two_triangles = complex(&[&[0, 1, 2], &[1, 2, 3]]);
        assert_eq!(
            find_shelling(&two_triangles, DEFAULT_SHELLING_BOUND)
                .unwrap()
                .map(|o| o.len()),
            Some(2)
        );
        let disjoint = complex(&[&[0, 1], &[2, 3]]);
        assert_eq!(find_shelling(&disjoint, DEFAULT_SHELLING_BOUND).unwrap(), None);
        // bowtie: two triangles meeting at a vertex
        let bowtie = complex(&[&[0, 1, 2], &[2, 3, 4]]);
        assert_eq!(find_shelling(&bowtie, DEFAULT_SHELLING_BOUND).unwrap(), None);
        let impure = complex(&[&[0, 1, 2], &[3]]);
        assert_eq!(
            find_shelling(&impure, DEFAULT_SHELLING_BOUND),
            Err(Error::NotPure)
        );
        assert!(matches!(find_shelling(&path, 1), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn shelling_order_needs_backtracking() {
        // a path of three edges listed so that facet 0 and facet 1 are disjoint
        let k = complex(&[&[0, 1], &[2, 3], &[1, 2]]);
        let order = find_shelling(&k, DEFAULT_SHELLING_BOUND).unwrap().unwrap();
        assert_eq!(order.len(), 3);
    }

    #[test]
    fn lambda_of_three_quadrics_is_the_path() {
        let a = order_of(M3, 3);
        let l = build_lambda(&a).unwrap();
        assert_eq!(l.f_vector(), vec![3, 2]);
        assert!(is_acyclic(&l).unwrap());
    }

    #[test]
    fn lambda_of_principal_ideal_is_a_point() {
        let l = build_lambda(&order_of("x1^2", 1)).unwrap();
        assert_eq!(l.f_vector(), vec![1]);
    }

    #[test]
    fn lambda_of_square_of_maximal_ideal() {
        let a = order_of(MAX2, 3);
        let l = build_lambda(&a).unwrap();
        // two triangles kept, the square over x3^2 split by the edge x3^2 - x1x2
        assert_eq!(l.f_vector(), vec![6, 9, 4]);
        assert_eq!(l.euler_characteristic(), 1);
        assert_eq!(reduced_homology_ranks(&l).unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn lambda_u_examples() {
        let a = order_of(MAX2, 3);
        let u = m("x3^2", 3);
        let l = lambda_u(&a, &u).unwrap();
        // path x1x3 - x1x2 - x2x3
        let pos = |s: &str| a.position_of(&m(s, 3)).unwrap();
        let mut want = vec![vec![pos("x1*x3"), pos("x1*x2")], vec![pos("x2*x3"), pos("x1*x2")]];
        for f in &mut want {
            f.sort_unstable();
        }
        want.sort();
        let mut got = l.facets().to_vec();
        got.sort();
        assert_eq!(got, want);
        assert_eq!(l, lambda_u_induced(&a, &u).unwrap());

        let b = order_of(M3, 3);
        let l = lambda_u(&b, &m("x2*x3", 3)).unwrap();
        assert_eq!(l.facets(), &[vec![b.position_of(&m("x1*x2", 3)).unwrap()]]);
        assert_eq!(l, lambda_u_induced(&b, &m("x2*x3", 3)).unwrap());

        let empty = lambda_u(&b, &m("x1*x2", 3)).unwrap();
        assert_eq!(empty.dim(), -1);
        assert_eq!(empty, lambda_u_induced(&b, &m("x1*x2", 3)).unwrap());
    }

    #[test]
    fn json_shape() {
        let l = build_lambda(&order_of(M3, 3)).unwrap();
        let j = serde_json::to_string(&l.to_json()).unwrap();
        assert!(j.starts_with(r#"{"vertices":[[1,1,0],[1,0,1],[0,1,1]],"facets":["#));
    }
}
