//! Browser bindings. Each export takes the ideal as text and returns a JSON
//! string for `www/index.html` to draw; errors come back as plain strings.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use cellres::cell_complex::{build_lambda, build_x, convex_geometry_report, DEFAULT_CLOSURE_BOUND};
use cellres::homology::{taylor_betti, DEFAULT_TAYLOR_BOUND};
use cellres::{build_resolution, AdmissibleOrder, Monomial, MonomialIdeal, SearchOptions};

/// Generator cap for anything the page asks for.
const MAX_GENERATORS: usize = 24;

#[derive(Serialize)]
struct ResolveView {
    order: Vec<String>,
    q: Vec<String>,
    betti: Vec<usize>,
    table: String,
    taylor_agrees: Option<bool>,
}

#[derive(Serialize)]
struct CellView {
    dim: usize,
    name: String,
    label: String,
    vertices: Vec<usize>,
}

#[derive(Serialize)]
struct ComplexView {
    vertices: Vec<String>,
    /// Planar positions of the generators, in `[0, 1]^2`.
    points: Vec<[f64; 2]>,
    cells: Vec<CellView>,
    /// Edges of the subdivision as vertex pairs.
    lambda_edges: Vec<[usize; 2]>,
    lambda_triangles: Vec<[usize; 3]>,
    f_x: Vec<usize>,
    f_lambda: Vec<usize>,
    euler: i64,
}

#[derive(Serialize)]
struct LatticeView {
    generator: String,
    ground: String,
    /// Closed sets, bottom first.
    sets: Vec<String>,
    /// `g(sigma; u)` for each closed set.
    images: Vec<String>,
    rank: Vec<usize>,
    covers: Vec<[usize; 2]>,
}

fn regular_order(text: &str) -> Result<AdmissibleOrder, String> {
    let n = MonomialIdeal::max_variable_in(text).ok_or("no variables found")?;
    let ideal = MonomialIdeal::parse(text, n).map_err(|e| e.to_string())?;
    if ideal.len() > MAX_GENERATORS {
        return Err(format!("at most {MAX_GENERATORS} generators"));
    }
    let opts = SearchOptions {
        require_regular: true,
        seed: None,
    };
    AdmissibleOrder::find(&ideal, &opts).ok_or_else(|| "no regular admissible order".to_string())
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

/// Order, colon sets and Betti table of the resolution.
pub fn resolve_view(text: &str) -> Result<String, String> {
    let a = regular_order(text)?;
    let f = build_resolution(&a).map_err(|e| e.to_string())?;
    let t = f.betti_table();
    let taylor_agrees = taylor_betti(a.ideal(), DEFAULT_TAYLOR_BOUND).ok().map(|o| o == t);
    to_json(&ResolveView {
        order: a.generators().iter().map(Monomial::to_string).collect(),
        q: a.qsets().iter().map(|q| q.to_string()).collect(),
        betti: t.totals(),
        table: t.render_text(),
        taylor_agrees,
    })
}

/// Projects exponent vectors onto the plane, variable `i` pulling towards
/// the `i`-th corner of a regular polygon.
fn layout(gens: &[Monomial]) -> Vec<[f64; 2]> {
    let n = gens.first().map_or(1, Monomial::n);
    let corners: Vec<[f64; 2]> = (0..n)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / n as f64 - std::f64::consts::FRAC_PI_2;
            [t.cos(), t.sin()]
        })
        .collect();
    let raw: Vec<[f64; 2]> = gens
        .iter()
        .map(|g| {
            let d = g.degree().max(1) as f64;
            g.exponents().iter().zip(&corners).fold([0.0, 0.0], |p, (&e, c)| {
                [p[0] + e as f64 * c[0] / d, p[1] + e as f64 * c[1] / d]
            })
        })
        .collect();
    let (lo, hi) = raw.iter().fold(([f64::MAX; 2], [f64::MIN; 2]), |(lo, hi), p| {
        (
            [lo[0].min(p[0]), lo[1].min(p[1])],
            [hi[0].max(p[0]), hi[1].max(p[1])],
        )
    });
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
    raw.iter()
        .map(|p| {
            [
                0.5 + (p[0] - (lo[0] + hi[0]) / 2.0) / span,
                0.5 + (p[1] - (lo[1] + hi[1]) / 2.0) / span,
            ]
        })
        .collect()
}

/// The cell complex and its subdivision with a planar layout.
pub fn complex_view(text: &str) -> Result<String, String> {
    let a = regular_order(text)?;
    let x = build_x(&a).map_err(|e| e.to_string())?;
    let l = build_lambda(&a).map_err(|e| e.to_string())?;
    let gens = a.generators();
    let cells = x
        .cells()
        .iter()
        .map(|c| CellView {
            dim: c.dim,
            name: format!("B({}; {})", c.sigma, gens[c.u]),
            label: c.label.to_string(),
            vertices: c.vertices.clone(),
        })
        .collect();
    let faces = l.faces();
    to_json(&ComplexView {
        vertices: gens.iter().map(Monomial::to_string).collect(),
        points: layout(gens),
        cells,
        lambda_edges: faces
            .iter()
            .filter(|f| f.len() == 2)
            .map(|f| [f[0], f[1]])
            .collect(),
        lambda_triangles: faces
            .iter()
            .filter(|f| f.len() == 3)
            .map(|f| [f[0], f[1], f[2]])
            .collect(),
        f_x: x.f_vector(),
        f_lambda: l.f_vector(),
        euler: x.euler_characteristic(),
    })
}

/// The lattice of closed subsets of `q(u)` for the `index`-th generator of
/// the order.
pub fn lattice_view(text: &str, index: usize) -> Result<String, String> {
    let a = regular_order(text)?;
    let u = a
        .generators()
        .get(index)
        .ok_or_else(|| format!("generator index {index} out of range"))?;
    let r = convex_geometry_report(&a, u, DEFAULT_CLOSURE_BOUND).map_err(|e| e.to_string())?;
    to_json(&LatticeView {
        generator: u.to_string(),
        ground: r.ground.to_string(),
        sets: r.closed_sets.iter().map(|s| s.to_string()).collect(),
        images: r.images.iter().map(|&k| a.generators()[k].to_string()).collect(),
        rank: r.closed_sets.iter().map(|s| s.len()).collect(),
        covers: r.covers.iter().map(|&(lo, hi)| [lo, hi]).collect(),
    })
}

#[wasm_bindgen]
pub fn resolve(text: &str) -> Result<String, JsValue> {
    resolve_view(text).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn complex(text: &str) -> Result<String, JsValue> {
    complex_view(text).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn lattice(text: &str, index: usize) -> Result<String, JsValue> {
    lattice_view(text, index).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: Result<String, String>) -> Value {
        serde_json::from_str(&s.unwrap()).unwrap()
    }

    #[test]
    fn resolve_three_quadrics() {
        let v = parse(resolve_view("x1*x2, x1*x3, x2*x3"));
        assert_eq!(v["betti"], serde_json::json!([1, 3, 2]));
        assert_eq!(v["q"], serde_json::json!(["{}", "{x2}", "{x1}"]));
        assert_eq!(v["taylor_agrees"], true);
    }

    #[test]
    fn complex_of_square() {
        let v = parse(complex_view("x1^2, x1*x2, x2^2, x1*x3, x2*x3, x3^2"));
        assert_eq!(v["f_x"], serde_json::json!([6, 8, 3]));
        assert_eq!(v["f_lambda"], serde_json::json!([6, 9, 4]));
        assert_eq!(v["lambda_triangles"].as_array().unwrap().len(), 4);
        for p in v["points"].as_array().unwrap() {
            for c in p.as_array().unwrap() {
                let c = c.as_f64().unwrap();
                assert!((0.0..=1.0).contains(&c));
            }
        }
    }

    #[test]
    fn lattice_of_last_generator() {
        let v = parse(lattice_view("x1^2, x1*x2, x2^2, x1*x3, x2*x3, x3^2", 5));
        assert_eq!(v["generator"], "x3^2");
        // q(x3^2) = {x1,x2}; every subset is closed
        assert_eq!(v["sets"].as_array().unwrap().len(), 4);
        assert_eq!(v["covers"].as_array().unwrap().len(), 4);
        assert!(lattice_view("x1", 3).is_err());
    }

    #[test]
    fn errors_are_messages() {
        assert_eq!(
            resolve_view("x1*x2, x3*x4").unwrap_err(),
            "no regular admissible order"
        );
        assert!(resolve_view("x1 +").is_err());
        assert!(complex_view("").is_err());
    }
}
