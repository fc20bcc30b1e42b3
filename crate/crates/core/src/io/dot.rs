//! Graphviz DOT export.

use crate::model::QdModel;
use crate::partition::Partition;

use super::grid::class_color;
use super::palette::format_color;

/// Render the model as a DOT digraph. Nodes show the point name and its
/// label; with a partition, same-class nodes share a fill color.
pub fn export_dot(model: &QdModel, partition: Option<&Partition>) -> String {
    let mut out = String::from("digraph model {\n");
    out.push_str("  node [shape=ellipse];\n");
    for x in 0..model.len() {
        let label = format!("{}\\n{{{}}}", escape(model.name(x)), model.label(x).join(","));
        match partition {
            Some(p) => {
                let color = format_color(class_color(p.class_of(x)));
                out.push_str(&format!(
                    "  \"{}\" [label=\"{label}\", style=filled, fillcolor=\"{color}\"];\n",
                    escape(model.name(x))
                ));
            }
            None => {
                out.push_str(&format!(
                    "  \"{}\" [label=\"{label}\"];\n",
                    escape(model.name(x))
                ));
            }
        }
    }
    for (s, d) in model.edges() {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\";\n",
            escape(model.name(s)),
            escape(model.name(d))
        ));
    }
    out.push_str("}\n");
    out
}

fn escape(name: &str) -> String {
    name.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_and_edge_counts() {
        let m = QdModel::new(
            &[
                ("v11", vec!["r"]),
                ("v12", vec!["b"]),
                ("v21", vec!["g"]),
                ("v22", vec!["b"]),
            ],
            &[("v11", "v12"), ("v21", "v22")],
        )
        .unwrap();
        let dot = export_dot(&m, None);
        assert_eq!(dot.matches("label=").count(), 4);
        assert_eq!(dot.matches("->").count(), 2);
        assert!(!dot.contains("fillcolor"));

        let p = crate::equiv::ap_equivalence(&m);
        let dot2 = export_dot(&m, Some(&p));
        assert_eq!(dot2.matches("fillcolor").count(), 4);
        // same class, same color
        let color_of = |name: &str| {
            dot2.lines()
                .find(|l| l.contains(&format!("\"{name}\" [")))
                .and_then(|l| l.split("fillcolor=\"").nth(1))
                .map(|s| s[..7].to_string())
                .unwrap()
        };
        assert_eq!(color_of("v12"), color_of("v22"));
        assert_ne!(color_of("v11"), color_of("v21"));
    }
}
