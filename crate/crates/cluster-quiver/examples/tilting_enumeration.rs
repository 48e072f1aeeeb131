//! Enumerate tilting sets inside one fundamental domain. The counts follow
//! the cluster pattern: 2, 5, 14, 42 for A_1..A_4 and 50 for D_4.
//!
//! ```bash
//! cargo run -p cluster-quiver --example tilting_enumeration
//! ```

use std::sync::Arc;

use cluster_quiver::quiver::QuiverSpec;
use cluster_quiver::tilting::{enumerate_tilting_sets, is_partial_tilting};

fn main() {
    for preset in ["A1", "A2", "A3", "A4", "D4"] {
        let q = Arc::new(QuiverSpec::preset(preset).unwrap());
        let sets = enumerate_tilting_sets(&q).unwrap();
        println!("{preset}: {} tilting sets", sets.len());
    }

    let q = Arc::new(QuiverSpec::preset("A2").unwrap());
    println!("\nall tilting sets of A2:");
    for set in enumerate_tilting_sets(&q).unwrap() {
        println!("  {{{}}}", set.format(&q));
    }

    // the literal partial-tilting test needs confinement as well
    let slice = [
        cluster_quiver::ZVertex::new(0, 0),
        cluster_quiver::ZVertex::new(1, 0),
    ];
    let stacked = [
        cluster_quiver::ZVertex::new(0, 0),
        cluster_quiver::ZVertex::new(0, 1),
    ];
    println!(
        "\n{{1:0, 2:0}} partial tilting: {}",
        is_partial_tilting(&q, &slice).unwrap()
    );
    println!(
        "{{1:0, 1:1}} partial tilting: {}",
        is_partial_tilting(&q, &stacked).unwrap()
    );
}
