//! Walk the exchange graph: removing one member of a tilting set leaves
//! exactly one other orbit that can replace it. On A_2 the walk closes into
//! a pentagon.
//!
//! ```bash
//! cargo run -p cluster-quiver --example mutation_walk
//! ```

use std::sync::Arc;

use cluster_quiver::quiver::QuiverSpec;
use cluster_quiver::tilting::{enumerate_tilting_sets, mutate, mutation_graph};

fn main() {
    let q = Arc::new(QuiverSpec::preset("A2").unwrap());
    let start = enumerate_tilting_sets(&q).unwrap().swap_remove(1);

    println!("pentagon walk on A2, never undoing the previous exchange:");
    let mut set = start.clone();
    let mut last_inserted = None;
    println!("  {{{}}}", set.format(&q));
    for _ in 0..5 {
        let at = set
            .members()
            .iter()
            .copied()
            .find(|&m| Some(m) != last_inserted)
            .unwrap();
        let result = mutate(&q, &set, at).unwrap();
        println!(
            "  - {} + {} -> {{{}}}",
            q.format_vertex(result.removed),
            q.format_vertex(result.inserted),
            result.new_set.format(&q)
        );
        last_inserted = Some(result.inserted);
        set = result.new_set;
    }
    assert_eq!(set.members(), start.members(), "five steps close the cycle");

    let graph = mutation_graph(&q).unwrap();
    println!("\nexchange graph ({} nodes):", graph.len());
    for (node, neighbors) in &graph {
        let node_s: Vec<String> = node.iter().map(|&v| q.format_vertex(v)).collect();
        let nbr_s: Vec<String> = neighbors
            .iter()
            .map(|n| {
                n.iter()
                    .map(|&v| q.format_vertex(v))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        println!("  {{{}}} -- {}", node_s.join(","), nbr_s.join(" | "));
    }
}
