//! Randomized checks of the rectangle rules and the wing lemma on ZA_4:
//! every applicable instance must agree with direct evaluation.
//!
//! ```bash
//! cargo run -p cluster-quiver --example laws_spotcheck
//! ```

use std::sync::Arc;

use cluster_quiver::cluster::ClusterFunction;
use cluster_quiver::laws::{rectangle_check, run_rectangle_trials, run_wing_trials, RectVariant};
use cluster_quiver::quiver::{QuiverSpec, ZVertex};

fn main() {
    let q = Arc::new(QuiverSpec::preset("A4").unwrap());

    // one concrete instance: the s = t = 1 rectangle is the mesh identity
    let f = ClusterFunction::from_standard(Arc::clone(&q), 0, vec![1, -2, 0, 3]).unwrap();
    let report = rectangle_check(&f, ZVertex::new(1, 0), 1, 1, RectVariant::Basic).unwrap();
    println!(
        "basic rectangle at 2:0 -> {}: expected {}, observed {}, pass {}",
        q.format_vertex(report.target),
        report.expected,
        report.observed,
        report.pass
    );

    let rect = run_rectangle_trials(&q, 200, 42, -3, 3).unwrap();
    println!("rectangle trials: {}", rect.summary());

    let wing = run_wing_trials(&q, 200, 42, -3, 3).unwrap();
    println!("wing trials:      {}", wing.summary());
}
