//! DOT export of finite windows of ZΔ.

use crate::error::{Error, Result};
use crate::quiver::{QuiverSpec, Window, ZVertex};

/// Windows beyond this size render unreadably; exporting them is an error.
pub const MAX_DOT_VERTICES: usize = 500;

fn node_id(q: &QuiverSpec, v: ZVertex) -> String {
    format!("\"{}_{}\"", q.label(v.base), v.level)
}

/// Render the window as a DOT digraph. Node labels are `base:level` or
/// `base:level=value` when a value function is supplied. Arrows inside the
/// window carry their multiplicity when above 1.
pub fn export_dot(
    q: &QuiverSpec,
    window: &Window,
    values: Option<&dyn Fn(ZVertex) -> i64>,
) -> Result<String> {
    let vertices = window.vertices();
    if vertices.len() > MAX_DOT_VERTICES {
        return Err(Error::WindowTooLarge(vertices.len(), MAX_DOT_VERTICES));
    }
    let mut out = String::from("digraph zquiver {\n  rankdir=LR;\n  node [shape=box];\n");
    for &v in &vertices {
        let label = match values {
            Some(f) => format!("{}={}", q.format_vertex(v), f(v)),
            None => q.format_vertex(v),
        };
        out.push_str(&format!("  {} [label=\"{}\"];\n", node_id(q, v), label));
    }
    for &v in &vertices {
        for (target, mult) in q.successors(v) {
            if window.contains(target) {
                if mult > 1 {
                    out.push_str(&format!(
                        "  {} -> {} [label=\"{}\"];\n",
                        node_id(q, v),
                        node_id(q, target),
                        mult
                    ));
                } else {
                    out.push_str(&format!("  {} -> {};\n", node_id(q, v), node_id(q, target)));
                }
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_labels_and_edges() {
        let q = QuiverSpec::preset("A2").unwrap();
        let w = Window::levels(&q, 0, 1);
        let f = |v: ZVertex| (v.level + v.base as i32) as i64;
        let dot = export_dot(&q, &w, Some(&f)).unwrap();
        assert!(dot.contains("\"1_0\" [label=\"1:0=0\"]"));
        assert!(dot.contains("\"1_0\" -> \"2_0\""));
        assert!(dot.ends_with("}\n"));
    }

    #[test]
    fn weighted_arrows_are_labeled() {
        let q = QuiverSpec::parse("v a\nv b\na a b 2\n").unwrap();
        let w = Window::levels(&q, 0, 0);
        let dot = export_dot(&q, &w, None).unwrap();
        assert!(dot.contains("[label=\"2\"]"));
    }

    #[test]
    fn oversized_window_rejected() {
        let q = QuiverSpec::preset("A4").unwrap();
        let w = Window::levels(&q, 0, 500);
        assert!(matches!(
            export_dot(&q, &w, None),
            Err(Error::WindowTooLarge(_, _))
        ));
    }
}
