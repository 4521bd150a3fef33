//! The full battery of checks run by `cellres verify`, collected into one
//! report with a witness for every failure.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::cell_complex::{
    build_lambda, build_x, convex_geometry_report, find_shelling, lambda_u, lambda_u_induced, CellComplex,
    DEFAULT_CLOSURE_BOUND, DEFAULT_SHELLING_BOUND,
};
use crate::error::{Error, Result};
use crate::homology::{is_acyclic, supports_resolution, taylor_betti, DEFAULT_TAYLOR_BOUND};
use crate::linear_quotients::AdmissibleOrder;
use crate::monomial::VarSet;
use crate::resolution::{build_resolution_unchecked, BasisKey, FreeComplex};

/// Cap on the lcm-closure size walked by the restriction check.
pub const DEFAULT_RESTRICTION_BOUND: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Facet cap for the shelling search on each `Λ(u)`.
    pub shelling_bound: usize,
    /// Generator cap for the Taylor oracle.
    pub taylor_bound: usize,
    /// Cap on `|q(u)|` for the closure enumeration.
    pub closure_bound: usize,
    /// Cap on the lcm-closure size for the restriction check.
    pub restriction_bound: usize,
    /// Negate the `k`-th incidence of `X_I` and the matching entry of the
    /// resolution before checking.
    pub flip_sign: Option<usize>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            shelling_bound: DEFAULT_SHELLING_BOUND,
            taylor_bound: DEFAULT_TAYLOR_BOUND,
            closure_bound: DEFAULT_CLOSURE_BOUND,
            restriction_bound: DEFAULT_RESTRICTION_BOUND,
            flip_sign: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail(String),
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    #[serde(flatten)]
    pub outcome: Outcome,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    /// No check failed. Skipped checks do not count against.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| !matches!(c.outcome, Outcome::Fail(_)))
    }

    pub fn get(&self, name: &str) -> Option<&Outcome> {
        self.checks.iter().find(|c| c.name == name).map(|c| &c.outcome)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks
            .iter()
            .filter(|c| matches!(c.outcome, Outcome::Fail(_)))
    }

    fn push(&mut self, name: &'static str, outcome: Outcome) {
        self.checks.push(Check { name, outcome });
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.outcome {
                Outcome::Pass => writeln!(f, "PASS  {}", c.name)?,
                Outcome::Fail(w) => writeln!(f, "FAIL  {}: {w}", c.name)?,
                Outcome::Skipped(why) => writeln!(f, "SKIP  {}: {why}", c.name)?,
            }
        }
        Ok(())
    }
}

fn outcome<E: fmt::Display>(r: std::result::Result<(), E>) -> Outcome {
    match r {
        Ok(()) => Outcome::Pass,
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

fn fail_or_skip(e: Error) -> Outcome {
    match e {
        Error::TooLarge { .. } => Outcome::Skipped(e.to_string()),
        e => Outcome::Fail(e.to_string()),
    }
}

/// Runs every check on `a`. A non-regular order is reported as a failure of
/// `regular-order`; the remaining checks then run on the unchecked
/// constructions so that their own witnesses are visible too.
pub fn run_suite(a: &AdmissibleOrder, opts: &SuiteOptions) -> Result<Report> {
    let mut report = Report::default();
    report.push("regular-order", outcome(a.check_regular()));
    let regular = a.is_regular();

    let mut f = build_resolution_unchecked(a);
    let mut x = build_x_any(a)?;
    if let Some(k) = opts.flip_sign {
        inject_fault(&mut x, &mut f, k)?;
    }

    report.push("square-zero", outcome(f.verify()));
    report.push(
        "minimal",
        match f.first_unit_entry() {
            None => Outcome::Pass,
            Some((i, r, c)) => Outcome::Fail(format!("d_{i} entry ({r}, {c}) is a unit")),
        },
    );
    report.push("taylor-oracle", taylor_check(a, &f, opts.taylor_bound));
    report.push(
        "cellular-equality",
        match x.cellular_resolution() {
            Ok(c) => match f.first_difference(&c) {
                None => Outcome::Pass,
                Some(d) => Outcome::Fail(d),
            },
            Err(e) => Outcome::Fail(e.to_string()),
        },
    );
    report.push("regular-cw", outcome(x.check_regular_cw()));
    report.push(
        "distinct-vertex-sets",
        match x.repeated_vertex_set() {
            None => Outcome::Pass,
            Some((p, q)) => Outcome::Fail(format!("cells {p} and {q} share a vertex set")),
        },
    );
    report.push(
        "strict-face-labels",
        match x.non_strict_face_label() {
            None => Outcome::Pass,
            Some((c, g)) => Outcome::Fail(format!("cell {c} and its face {g} have the same label")),
        },
    );
    report.push(
        "supports-resolution",
        match supports_resolution(&x, a.ideal()) {
            Ok(None) => Outcome::Pass,
            Ok(Some(b)) => Outcome::Fail(format!("restriction to {b} is not acyclic")),
            Err(e) => Outcome::Fail(e.to_string()),
        },
    );

    if !regular {
        for name in [
            "convex-geometry",
            "shellable-links",
            "restriction",
            "contractible",
            "commutation",
        ] {
            report.push(name, Outcome::Skipped("order is not regular".into()));
        }
        return Ok(report);
    }
    report.push("convex-geometry", convex_check(a, opts.closure_bound));
    report.push("shellable-links", shelling_check(a, opts));
    report.push("restriction", restriction_check(a, &x, opts.restriction_bound));
    report.push("contractible", contractible_check(a, &x));
    report.push("commutation", outcome(check_commutation(a)));
    Ok(report)
}

/// `X_I` without the regularity gate.
fn build_x_any(a: &AdmissibleOrder) -> Result<CellComplex> {
    match build_x(a) {
        Err(Error::NotRegular(_)) => Ok(crate::cell_complex::build_x_unchecked(a)),
        r => r,
    }
}

/// Flips incidence `k` of `x` and the entry of `f` between the same pair of
/// basis elements.
fn inject_fault(x: &mut CellComplex, f: &mut FreeComplex, k: usize) -> Result<()> {
    let (cell, face) = x.flip_incidence(k)?;
    let key = |id: usize| {
        let c = &x.cells()[id];
        BasisKey::Pair {
            sigma: c.sigma,
            u: x.generators()[c.u].clone(),
        }
    };
    f.flip_entry_by_key(&key(cell), &key(face))
}

fn taylor_check(a: &AdmissibleOrder, f: &FreeComplex, bound: usize) -> Outcome {
    match taylor_betti(a.ideal(), bound) {
        Ok(t) => {
            let b = f.betti_table();
            if b == t {
                Outcome::Pass
            } else {
                let diff = b
                    .iter()
                    .map(|(i, d, k)| (i, d.clone(), k))
                    .chain(t.iter().map(|(i, d, k)| (i, d.clone(), k)))
                    .find(|(i, d, _)| b.get(*i, d) != t.get(*i, d))
                    .expect("tables differ");
                Outcome::Fail(format!(
                    "beta_{},{} is {} but the Taylor oracle gives {}",
                    diff.0,
                    diff.1,
                    b.get(diff.0, &diff.1),
                    t.get(diff.0, &diff.1)
                ))
            }
        }
        Err(e) => fail_or_skip(e),
    }
}

fn convex_check(a: &AdmissibleOrder, bound: usize) -> Outcome {
    for u in a.generators() {
        if let Err(e) = convex_geometry_report(a, u, bound) {
            return match e {
                Error::ConvexGeometry(v) => Outcome::Fail(format!("at {u}: {v}")),
                e => fail_or_skip(e),
            };
        }
    }
    Outcome::Pass
}

fn shelling_check(a: &AdmissibleOrder, opts: &SuiteOptions) -> Outcome {
    let mut skipped = Vec::new();
    for (j, u) in a.generators().iter().enumerate() {
        let q = a.qsets()[j];
        if q.is_empty() {
            continue;
        }
        if q.len() > opts.closure_bound {
            skipped.push(u.to_string());
            continue;
        }
        let r = (|| -> Result<std::result::Result<(), String>> {
            let l = lambda_u(a, u)?;
            let induced = lambda_u_induced(a, u)?;
            if l != induced {
                return Ok(Err("order complex differs from the induced subcomplex".into()));
            }
            if !l.is_pure() || l.dim() != q.len() as isize - 1 {
                return Ok(Err(format!("not pure of dimension {}", q.len() - 1)));
            }
            if !is_acyclic(&l)? {
                return Ok(Err("reduced homology does not vanish".into()));
            }
            match find_shelling(&l, opts.shelling_bound)? {
                Some(_) => Ok(Ok(())),
                None => Ok(Err("no shelling order".into())),
            }
        })();
        match r {
            Ok(Ok(())) => {}
            Ok(Err(w)) => return Outcome::Fail(format!("Λ({u}): {w}")),
            Err(Error::TooLarge { .. }) => skipped.push(u.to_string()),
            Err(e) => return Outcome::Fail(format!("Λ({u}): {e}")),
        }
    }
    if skipped.is_empty() {
        Outcome::Pass
    } else {
        Outcome::Skipped(format!("too large at {}", skipped.join(", ")))
    }
}

fn restriction_check(a: &AdmissibleOrder, x: &CellComplex, bound: usize) -> Outcome {
    let closure = a.ideal().lcm_closure();
    if closure.len() > bound {
        return Outcome::Skipped(format!(
            "lcm closure has {} elements, above {bound}",
            closure.len()
        ));
    }
    for mu in &closure {
        let r = (|| -> Result<std::result::Result<(), String>> {
            let sub = a.restrict_below(mu)?;
            let rx = x.restrict_cells(mu);
            if !sub.is_regular() {
                return Ok(Err("restricted order is not regular".into()));
            }
            if !rx.same_labeled_complex(&build_x(&sub)?) {
                return Ok(Err(
                    "restricted complex differs from the complex of the restricted order".into(),
                ));
            }
            if !is_acyclic(&rx)? {
                return Ok(Err("restricted complex is not acyclic".into()));
            }
            Ok(Ok(()))
        })();
        match r {
            Ok(Ok(())) => {}
            Ok(Err(w)) => return Outcome::Fail(format!("at {mu}: {w}")),
            Err(e) => return Outcome::Fail(format!("at {mu}: {e}")),
        }
    }
    Outcome::Pass
}

/// `Λ_I` acyclic, `χ(X_I) = 1`, and `Λ_I` sits inside `X_I`: every facet
/// of `Λ_I` spans a subset of the vertices of exactly one maximal cell of
/// the same dimension.
fn contractible_check(a: &AdmissibleOrder, x: &CellComplex) -> Outcome {
    let lambda = match build_lambda(a) {
        Ok(l) => l,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    match is_acyclic(&lambda) {
        Ok(true) => {}
        Ok(false) => return Outcome::Fail("Λ_I has nonzero reduced homology".into()),
        Err(e) => return Outcome::Fail(e.to_string()),
    }
    if x.euler_characteristic() != 1 {
        return Outcome::Fail(format!("χ(X_I) = {}", x.euler_characteristic()));
    }
    if lambda.euler_characteristic() != 1 {
        return Outcome::Fail(format!("χ(Λ_I) = {}", lambda.euler_characteristic()));
    }
    let is_face: BTreeSet<usize> = x
        .cells()
        .iter()
        .flat_map(|c| c.faces.iter().map(|&(f, _)| f))
        .collect();
    let maximal: Vec<usize> = (0..x.cells().len()).filter(|id| !is_face.contains(id)).collect();
    for facet in lambda.facets() {
        let holders: Vec<usize> = maximal
            .iter()
            .copied()
            .filter(|&id| {
                let vs = &x.cells()[id].vertices;
                facet.iter().all(|v| vs.binary_search(v).is_ok())
            })
            .collect();
        let ok = holders.len() == 1 && x.cells()[holders[0]].dim + 1 == facet.len();
        if !ok {
            return Outcome::Fail(format!(
                "facet {:?} of Λ_I lies in {} maximal cells",
                facet,
                holders.len()
            ));
        }
    }
    Outcome::Pass
}

/// A pair `y, z ∈ q(u)` with `g(y g(z u)) ≠ g(z g(y u))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutationWitness {
    pub u: usize,
    pub y: usize,
    pub z: usize,
}

impl fmt::Display for CommutationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "g(x{y} g(x{z} u)) != g(x{z} g(x{y} u)) for generator {u}",
            y = self.y + 1,
            z = self.z + 1,
            u = self.u
        )
    }
}

/// Checks `g(y g(z u)) = g(z g(y u))` for every generator `u` and all
/// `y, z ∈ q(u)`.
pub fn check_commutation(a: &AdmissibleOrder) -> std::result::Result<(), CommutationWitness> {
    let g1 = |v: usize, j: usize| a.g_multi_position(VarSet::singleton(v), j);
    for (j, &q) in a.qsets().iter().enumerate() {
        for y in q.iter() {
            for z in q.iter().filter(|&z| z > y) {
                if g1(y, g1(z, j)) != g1(z, g1(y, j)) {
                    return Err(CommutationWitness { u: j, y, z });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{Monomial, MonomialIdeal};

    fn order_of(text: &str, n: usize) -> AdmissibleOrder {
        let ideal = MonomialIdeal::parse(text, n).unwrap();
        let gens: Vec<Monomial> = text
            .split(',')
            .map(|s| Monomial::parse(s.trim(), n).unwrap())
            .collect();
        AdmissibleOrder::from_monomials(&ideal, &gens).unwrap()
    }

    #[test]
    fn examples_pass() {
        for (t, n) in [
            ("x1*x2, x1*x3, x2*x3", 3),
            ("x1^2, x1*x2, x2^2, x1*x3, x2*x3, x3^2", 3),
            ("x1^2*x2", 2),
        ] {
            let r = run_suite(&order_of(t, n), &SuiteOptions::default()).unwrap();
            assert!(r.passed(), "{t}:\n{r}");
            assert!(r.checks.iter().all(|c| c.outcome == Outcome::Pass), "{t}:\n{r}");
        }
    }

    #[test]
    fn flipped_sign_fails_square_zero() {
        let a = order_of("x1*x2, x1*x3, x2*x3", 3);
        let opts = SuiteOptions {
            flip_sign: Some(0),
            ..SuiteOptions::default()
        };
        let r = run_suite(&a, &opts).unwrap();
        assert!(!r.passed());
        assert!(matches!(r.get("square-zero"), Some(Outcome::Fail(_))));
        assert!(matches!(r.get("regular-cw"), Some(Outcome::Fail(_))));
        // the same entry is flipped on both sides
        assert_eq!(r.get("cellular-equality"), Some(&Outcome::Pass));
        assert!(run_suite(
            &a,
            &SuiteOptions {
                flip_sign: Some(99),
                ..opts
            }
        )
        .is_err());
    }

    #[test]
    fn non_regular_reported() {
        let a = order_of("x1^2, x1*x2, x1*x3, x3^2, x2*x3, x2^2", 3);
        let r = run_suite(&a, &SuiteOptions::default()).unwrap();
        assert!(matches!(r.get("regular-order"), Some(Outcome::Fail(_))));
        assert!(matches!(r.get("square-zero"), Some(Outcome::Fail(_))));
        assert!(matches!(r.get("commutation"), Some(Outcome::Skipped(_))));
    }

    #[test]
    fn commutation_on_regular_orders() {
        assert!(check_commutation(&order_of("x1^2, x1*x2, x2^2, x1*x3, x2*x3, x3^2", 3)).is_ok());
    }

    #[test]
    fn json_shape() {
        let r = Report {
            checks: vec![
                Check {
                    name: "a",
                    outcome: Outcome::Pass,
                },
                Check {
                    name: "b",
                    outcome: Outcome::Fail("w".into()),
                },
            ],
        };
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"checks":[{"name":"a","status":"pass"},{"name":"b","status":"fail","detail":"w"}]}"#
        );
    }
}
