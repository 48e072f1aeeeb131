//! Sums of cluster-additive functions stay cluster-additive exactly when the
//! summands are compatible (never opposite signs at a vertex). This example
//! builds an incompatible pair and watches the sum break a mesh.
//!
//! ```bash
//! cargo run -p cluster-quiver --example sum_compatibility
//! ```

use std::sync::Arc;

use cluster_quiver::cluster::{check_cluster_additive, compatible, sum, ClusterFunction};
use cluster_quiver::quiver::{QuiverSpec, Window};

fn main() {
    let q = Arc::new(QuiverSpec::preset("A2").unwrap());
    let window = Window::levels(&q, 0, 3);

    let f = ClusterFunction::from_standard(Arc::clone(&q), 1, vec![0, 1]).unwrap();
    let g = ClusterFunction::from_standard(Arc::clone(&q), 1, vec![0, -1]).unwrap();

    println!("f and g on levels 0..=3 (f, g, f+g):");
    for v in window.vertices() {
        println!(
            "  {:>4}  f={:>2}  g={:>2}  f+g={:>2}",
            q.format_vertex(v),
            f.evaluate(v),
            g.evaluate(v),
            f.evaluate(v) + g.evaluate(v),
        );
    }

    let compat = compatible(&f, &g, &window).unwrap();
    println!("\ncompatible(f, g) on the window: {compat}");

    let (values, clean) = sum(&[&f, &g], &window).unwrap();
    println!("sum mesh-checks clean: {clean}");
    for violation in check_cluster_additive(&values, &window, &q).unwrap() {
        println!("  {}", violation.describe(&q));
    }

    // compatible summands keep the sum cluster-additive
    let (_, clean) = sum(&[&f, &f], &window).unwrap();
    println!("\nsum of f with itself mesh-checks clean: {clean}");
}
