//! Browser bindings. Every export takes plain values and returns a JSON
//! string, `{"error": ...}` on failure.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use cycmod::counterexamples::build_counterexample;
use cycmod::families::{
    circular_ladder, complete, complete_bipartite, cube, dodecahedron, heawood, mobius_ladder,
    petersen,
};
use cycmod::graph::Graph;
use cycmod::graph6::{emit_graph6, parse_graph6};
use cycmod::necklaces::{random_wiggly_necklace, realize_residue_wiggly};
use cycmod::oracle::residue_spectrum;

fn render(v: Result<Value, String>) -> String {
    match v {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn named(name: &str) -> Option<Graph> {
    Some(match name {
        "k4" => complete(4),
        "k33" => complete_bipartite(3, 3),
        "cube" => cube(),
        "petersen" => petersen(),
        "heawood" => heawood(),
        "dodecahedron" => dodecahedron(),
        "prism6" => circular_ladder(6),
        "mobius8" => mobius_ladder(8),
        _ => return None,
    })
}

/// Accepts a family name or a graph6 string.
fn read(input: &str) -> Result<Graph, String> {
    let t = input.trim();
    named(t)
        .map(Ok)
        .unwrap_or_else(|| parse_graph6(t).map_err(|e| e.to_string()))
}

/// Residues of cycle lengths modulo `k`, with one witness cycle each.
#[wasm_bindgen]
pub fn spectrum(graph: &str, k: usize) -> String {
    render((|| {
        if k == 0 {
            return Err("k must be positive".to_string());
        }
        let g = read(graph)?;
        let s = residue_spectrum(&g, k);
        let missing: Vec<usize> = (0..k).filter(|r| !s.residues.contains(r)).collect();
        Ok(json!({
            "n": g.vertex_count(),
            "edges": g.edge_count(),
            "graph6": emit_graph6(&g),
            "residues": s.residues,
            "missing": missing,
            "witnesses": s.witnesses,
        }))
    })())
}

/// A cubic 2-connected graph with no cycle of length ≡ `m` (mod `k`).
#[wasm_bindgen]
pub fn counterexample(m: usize, k: usize, min_n: usize) -> String {
    render(
        build_counterexample(m, k, min_n)
            .map_err(|e| e.to_string())
            .map(|r| {
                json!({
                    "m": r.m,
                    "k": r.k,
                    "case": r.case,
                    "n_prime": r.n_prime,
                    "n": r.graph.vertex_count(),
                    "graph6": emit_graph6(&r.graph),
                    "edges": r.graph.edges(),
                    "residues": r.residues,
                    "verdict": r.verdict,
                })
            }),
    )
}

/// Builds a random necklace with `wiggly` wiggly blocks from `seed` and
/// picks a cycle of length ≡ `m` (mod `k`) through it.
#[wasm_bindgen]
pub fn wiggly_cycle(wiggly: usize, k: usize, m: usize, seed: u32) -> String {
    render((|| {
        if k == 0 || wiggly == 0 {
            return Err("k and the block count must be positive".to_string());
        }
        let (g, neck) =
            random_wiggly_necklace(wiggly, 1, &mut ChaCha8Rng::seed_from_u64(seed.into()));
        let r = realize_residue_wiggly(&neck, m % k, k).map_err(|e| e.to_string())?;
        Ok(json!({
            "n": g.vertex_count(),
            "edges": g.edges(),
            "cycle": r.cycle,
            "length": r.cycle.len(),
            "residue": r.cycle.len() % k,
        }))
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn spectrum_of_k4() {
        let v = parse(spectrum("k4", 3));
        assert_eq!(v["residues"], json!([0, 1]));
        assert_eq!(v["missing"], json!([2]));
        assert_eq!(
            parse(spectrum(&emit_graph6(&petersen()), 5))["residues"],
            json!([0, 1, 3, 4])
        );
        assert!(parse(spectrum("not a graph!", 3))["error"].is_string());
    }

    #[test]
    fn counterexample_is_certified() {
        let v = parse(counterexample(6, 12, 1));
        assert_eq!(v["verdict"], "certified");
        assert!(!v["residues"].as_array().unwrap().contains(&json!(6)));
        assert!(parse(counterexample(1, 12, 1))["error"].is_string());
    }

    #[test]
    fn wiggly_cycles_hit_every_residue() {
        for m in 0..5 {
            let v = parse(wiggly_cycle(10, 5, m, 1));
            assert_eq!(v["residue"], m);
        }
    }
}
