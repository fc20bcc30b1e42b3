//! Exhaustive search for a small model whose two chain heads are
//! Path-bisimilar but not CoPa-bisimilar.
//!
//! The search space is all models made of two disjoint undirected chains
//! (every edge in both directions) of 2..=5 points each, with every
//! assignment of the labels {r, g, b} to the points — a family that is
//! exhaustively enumerable and known to be rich enough to separate the two
//! equivalences. The first witness in enumeration order is printed as a
//! model file; `fixtures/fig8.json` is that output, committed.
//!
//! Run with: `cargo run -p qdcm-core --example fig8_search`

use qdcm_core::io::save_model;
use qdcm_core::{copa_bisimilarity, path_bisimilarity, QdModel};

const LABELS: [&str; 3] = ["r", "g", "b"];

fn build(len1: usize, len2: usize, labels: &[usize]) -> QdModel {
    let mut points: Vec<(String, Vec<String>)> = Vec::new();
    for i in 0..len1 {
        points.push((format!("t1{}", i + 1), vec![LABELS[labels[i]].to_string()]));
    }
    for j in 0..len2 {
        points.push((
            format!("t2{}", j + 1),
            vec![LABELS[labels[len1 + j]].to_string()],
        ));
    }
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut chain = |prefix: &str, len: usize| {
        for i in 1..len {
            edges.push((format!("{prefix}{i}"), format!("{prefix}{}", i + 1)));
            edges.push((format!("{prefix}{}", i + 1), format!("{prefix}{i}")));
        }
    };
    chain("t1", len1);
    chain("t2", len2);
    let point_refs: Vec<(&str, Vec<&str>)> = points
        .iter()
        .map(|(id, props)| (id.as_str(), props.iter().map(|s| s.as_str()).collect()))
        .collect();
    let edge_refs: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    QdModel::new(&point_refs, &edge_refs).expect("chain models are valid")
}

fn main() {
    let mut tested = 0usize;
    for n in 4..=10 {
        for len1 in 2..=n.min(5) {
            let len2 = n - len1;
            if !(2..=5).contains(&len2) {
                continue;
            }
            let mut labels = vec![0usize; n];
            loop {
                tested += 1;
                let model = build(len1, len2, &labels);
                let (h1, h2) = (
                    model.point("t11").unwrap(),
                    model.point("t21").unwrap(),
                );
                let path = path_bisimilarity(&model);
                if path.same_class(h1, h2) {
                    let copa = copa_bisimilarity(&model);
                    if !copa.same_class(h1, h2) {
                        eprintln!(
                            "witness after {tested} candidates: chains {len1}+{len2}, \
                             t11 and t21 are Path- but not CoPa-bisimilar"
                        );
                        println!("{}", save_model(&model));
                        return;
                    }
                }
                // next labeling, odometer-style
                let mut pos = 0;
                while pos < n {
                    labels[pos] += 1;
                    if labels[pos] < LABELS.len() {
                        break;
                    }
                    labels[pos] = 0;
                    pos += 1;
                }
                if pos == n {
                    break;
                }
            }
        }
    }
    eprintln!("no witness found in the family ({tested} candidates)");
    std::process::exit(1);
}
