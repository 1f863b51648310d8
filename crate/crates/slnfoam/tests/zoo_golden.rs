//! The catalog foams, stored in the foam file format together with their
//! evaluations. Set `SLNFOAM_UPDATE_GOLDEN=1` to rewrite the files.

use std::path::PathBuf;

use serde_json::{json, Value};
use slnfoam::foamcore::{foam_from_json, foam_to_json};
use slnfoam::foameval::eval;
use slnfoam::foamzoo::zoo;
use slnfoam::MultiPoly;

fn golden_path(n: usize) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("tests/golden/zoo_n{n}.json"))
}

fn render(n: usize) -> String {
    let entries: Vec<Value> = zoo(n)
        .unwrap()
        .into_iter()
        .map(|z| {
            let foam: Value = serde_json::from_str(&foam_to_json(&z.foam)).unwrap();
            json!({ "name": z.name, "eval": eval(&z.foam).unwrap().to_string(), "foam": foam })
        })
        .collect();
    serde_json::to_string_pretty(&Value::Array(entries)).unwrap() + "\n"
}

#[test]
fn zoo_matches_golden_files() {
    let update = std::env::var_os("SLNFOAM_UPDATE_GOLDEN").is_some();
    for n in 1..=4 {
        let path = golden_path(n);
        let fresh = render(n);
        if update {
            std::fs::write(&path, &fresh).unwrap();
            continue;
        }
        let stored = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(stored, fresh, "zoo at N={n} differs from {}", path.display());
    }
}

#[test]
fn golden_files_evaluate_to_pinned_values() {
    if std::env::var_os("SLNFOAM_UPDATE_GOLDEN").is_some() {
        return;
    }
    for n in 1..=4 {
        let stored: Value = serde_json::from_str(&std::fs::read_to_string(golden_path(n)).unwrap()).unwrap();
        let entries = stored.as_array().unwrap();
        assert!(!entries.is_empty());
        for e in entries {
            let name = e["name"].as_str().unwrap();
            let foam = foam_from_json(&e["foam"].to_string()).unwrap_or_else(|m| panic!("{name}: {m}"));
            let pinned = MultiPoly::parse(n, e["eval"].as_str().unwrap()).unwrap();
            assert_eq!(eval(&foam).unwrap(), pinned, "{name} at N={n}");
        }
    }
}

#[test]
fn graph_times_circle_values_are_coloring_counts() {
    use num_traits::Signed;
    use slnfoam::foamzoo::build_graph_times_circle;
    use slnfoam::moyflag::{moy_coloring_count, MoyGraph};
    for n in 1..=4 {
        let mut graphs: Vec<MoyGraph> = (1..=n).map(|k| MoyGraph::circle(n, k)).collect();
        for a in 1..n {
            graphs.push(MoyGraph::theta(&[a, n - a]));
        }
        if n >= 3 {
            graphs.push(MoyGraph::theta(&[1, 1, n - 2]));
        }
        for g in graphs {
            let v = eval(&build_graph_times_circle(&g, None).unwrap()).unwrap().as_constant().unwrap();
            assert!(!v.is_negative());
            assert_eq!(v, moy_coloring_count(&g).unwrap());
        }
    }
}
