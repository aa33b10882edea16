//! Browser bindings: check a presentation, draw a projective's tree, count
//! graph maps. Every entry point takes the presentation text and returns a
//! string; failures come back as `{"error": ...}`.

use std::fmt::Write as _;

use quivinj::oracle::{hom_space, representation_of_projective, simple_representation};
use quivinj::{
    build_projective_tree, build_simple_tree, decide_self_injective, enumerate_graph_maps, parse, path_basis,
    Error, TreeModule, VertexId,
};
use serde_json::json;
use wasm_bindgen::prelude::wasm_bindgen;

fn error_json(e: impl std::fmt::Display) -> String {
    json!({ "error": e.to_string() }).to_string()
}

/// Verdict JSON for all four conditions, oracle included.
#[wasm_bindgen]
pub fn check(text: &str) -> String {
    let run = || -> Result<String, Error> {
        let p = parse(text)?;
        let verdict = match decide_self_injective(&p, true) {
            Ok(v) => v,
            Err(Error::Disagreement(v)) => *v,
            Err(e) => return Err(e),
        };
        let mut report = verdict.to_json(&p);
        report["dimension"] = json!(path_basis(&p)?.dimension());
        Ok(report.to_string())
    };
    run().unwrap_or_else(error_json)
}

/// SVG drawing of the tree of `P(vertex)`.
#[wasm_bindgen]
pub fn projective_tree_svg(text: &str, vertex: usize) -> String {
    let run = || -> Result<String, Error> {
        let p = parse(text)?;
        let v = VertexId(vertex);
        p.check_vertex(v)?;
        let tree = build_projective_tree(&p, v)?;
        Ok(tree_svg(&tree))
    };
    run().unwrap_or_else(error_json)
}

/// Graph maps from `P(i)` (or `S(i)` when `from_simple`) to `P(j)`, with
/// the oracle's Hom dimension alongside.
#[wasm_bindgen]
pub fn hom(text: &str, from_simple: bool, i: usize, j: usize) -> String {
    let run = || -> Result<String, Error> {
        let p = parse(text)?;
        let (i, j) = (VertexId(i), VertexId(j));
        p.check_vertex(i)?;
        p.check_vertex(j)?;
        let source = if from_simple {
            build_simple_tree(&p, i)?
        } else {
            build_projective_tree(&p, i)?
        };
        let target = build_projective_tree(&p, j)?;
        let maps = enumerate_graph_maps(&source, &target)?;
        let x = if from_simple {
            simple_representation(&p, i)?
        } else {
            representation_of_projective(&p, i)?
        };
        let y = representation_of_projective(&p, j)?;
        let described: Vec<Vec<String>> = maps
            .maps
            .iter()
            .map(|g| {
                g.sigma
                    .iter()
                    .map(|&(a, b)| format!("{} -> {}", source.tree().name(a), target.tree().name(b)))
                    .collect()
            })
            .collect();
        Ok(json!({
            "hom": format!("Hom({}({i}), P({j}))", if from_simple { "S" } else { "P" }),
            "dimension": maps.dimension(),
            "oracle_dimension": hom_space(p.quiver(), &x, &y).dimension(),
            "maps": described,
        })
        .to_string())
    };
    run().unwrap_or_else(error_json)
}

const DX: f64 = 110.0;
const DY: f64 = 80.0;
const PAD: f64 = 40.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Layered drawing: leaves spaced evenly left to right, parents centred
/// over their children.
pub fn tree_svg(t: &TreeModule<'_>) -> String {
    let tree = t.tree();
    let q = t.presentation().quiver();
    let n = tree.vertex_count();
    let mut x = vec![0.0; n];
    let mut depth = vec![0usize; n];
    let mut next_leaf = 0.0;

    fn place(t: &TreeModule<'_>, v: usize, d: usize, x: &mut [f64], depth: &mut [usize], next_leaf: &mut f64) {
        depth[v] = d;
        let children: Vec<usize> = t.tree().children(v).map(|(_, w)| w).collect();
        if children.is_empty() {
            x[v] = *next_leaf;
            *next_leaf += 1.0;
            return;
        }
        for &w in &children {
            place(t, w, d + 1, x, depth, next_leaf);
        }
        x[v] = children.iter().map(|&w| x[w]).sum::<f64>() / children.len() as f64;
    }
    place(t, tree.root(), 0, &mut x, &mut depth, &mut next_leaf);

    let width = PAD * 2.0 + DX * (next_leaf - 1.0).max(0.0);
    let height = PAD * 2.0 + DY * depth.iter().copied().max().unwrap_or(0) as f64;
    let pos = |v: usize| (PAD + DX * x[v], PAD + DY * depth[v] as f64);

    let mut svg = String::new();
    let _ = write!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">"#
    );
    let _ = write!(svg, "<title>{}</title>", escape(t.title()));
    for (k, a) in tree.arrows().iter().enumerate() {
        let ((x1, y1), (x2, y2)) = (pos(a.source), pos(a.target));
        let _ = write!(
            svg,
            r##"<line x1="{x1}" y1="{}" x2="{x2}" y2="{}" stroke="#555"/>"##,
            y1 + 10.0,
            y2 - 14.0
        );
        let label = escape(&q.arrow(t.arrow_image(k)).name);
        let _ = write!(
            svg,
            r##"<text x="{}" y="{}" fill="#a33" text-anchor="middle">{label}</text>"##,
            (x1 + x2) / 2.0 + 8.0,
            (y1 + y2) / 2.0
        );
    }
    for v in 0..n {
        let (cx, cy) = pos(v);
        let label = escape(&format!("{} / {}", tree.name(v), t.vertex_image(v)));
        let _ = write!(
            svg,
            r#"<text x="{cx}" y="{cy}" text-anchor="middle" dominant-baseline="middle">{label}</text>"#
        );
    }
    svg.push_str("</svg>");
    svg
}
