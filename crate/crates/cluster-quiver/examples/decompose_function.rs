//! Decompose a cluster-additive function into a non-negative combination of
//! cluster-hammock functions and read the coefficients back off the negative
//! values.
//!
//! ```bash
//! cargo run -p cluster-quiver --example decompose_function
//! ```

use std::sync::Arc;

use cluster_quiver::cluster::ClusterFunction;
use cluster_quiver::decompose::{conjecture_properties, decompose};
use cluster_quiver::quiver::{QuiverSpec, ZVertex};
use cluster_quiver::tilting::d_t;

fn main() {
    let q = Arc::new(QuiverSpec::preset("A3").unwrap());

    // build 2·h_{1:0} + 3·h_{3:0} and take it apart again
    let members = [ZVertex::new(0, 0), ZVertex::new(2, 0)];
    let f = d_t(&q, &members, &[2, 3]).unwrap();
    println!("input: 2*h_{{1:0}} + 3*h_{{3:0}}");
    println!("  f(1:0) = {}", f.evaluate(members[0]));
    println!("  f(3:0) = {}", f.evaluate(members[1]));

    let d = decompose(&f, 3).unwrap();
    println!("\ndecomposition status: {:?}", d.status);
    for (v, c) in &d.terms {
        println!("  {c} * h_{{{}}}", q.format_vertex(*v));
    }
    println!("residual norm: {}", d.residual_norm);

    // an arbitrary anchor decomposes too (type A guarantees it)
    let g = ClusterFunction::from_standard(Arc::clone(&q), 0, vec![3, -2, 1]).unwrap();
    let d = decompose(&g, 3).unwrap();
    println!(
        "\nanchor (3, -2, 1): status {:?}, {} terms",
        d.status,
        d.terms.len()
    );

    let report = conjecture_properties(&g, 2).unwrap();
    println!("F-invariant: {}", report.f_invariant);
    println!(
        "negative locus is a partial tilting set: {}",
        report.negative_locus_partial_tilting
    );
    println!(
        "f = sum of f(x)⁻ h_x over it: {}",
        report.combination_matches
    );
}
