//! Load a quiver from the text format, inspect meshes, and export a window
//! as DOT. Includes the valued B3 preset, whose arrows carry different
//! multiplicities in the two ZΔ directions (experimental).
//!
//! ```bash
//! cargo run -p cluster-quiver --example custom_quiver
//! ```

use std::sync::Arc;

use cluster_quiver::cluster::ClusterFunction;
use cluster_quiver::dot::export_dot;
use cluster_quiver::quiver::{QuiverSpec, Window, ZVertex};

const STAR: &str = "
# a 4-star: three leaves feeding a center
v c
v l1
v l2
v l3
a l1 c
a l2 c
a l3 c
";

fn main() {
    let q = Arc::new(QuiverSpec::parse(STAR).unwrap());
    println!(
        "parsed {} vertices, Dynkin type {:?}",
        q.vertex_count(),
        q.dynkin_type()
    );

    let center = ZVertex::new(0, 1);
    println!("mesh ending in {}:", q.format_vertex(center));
    for (y, m) in q.mesh(center) {
        println!("  {} (multiplicity {m})", q.format_vertex(y));
    }

    let f = ClusterFunction::from_standard(Arc::clone(&q), 0, vec![-1, 0, 1, 0]).unwrap();
    let window = Window::levels(&q, 0, 2);
    let lookup = |v: ZVertex| f.evaluate(v);
    println!("\nDOT view of levels 0..=2:");
    print!("{}", export_dot(&q, &window, Some(&lookup)).unwrap());

    // the valued preset: weight 2 one way, weight 1 back
    let b3 = QuiverSpec::preset("B3").unwrap();
    let m = b3.mesh(ZVertex::new(1, 0));
    println!("\nZB_3 mesh ending in 2:0:");
    for (y, mult) in m {
        println!("  {} (multiplicity {mult})", b3.format_vertex(y));
    }
    let back = b3.mesh(ZVertex::new(0, 1));
    println!("ZB_3 mesh ending in 1:1:");
    for (y, mult) in back {
        println!("  {} (multiplicity {mult})", b3.format_vertex(y));
    }
}
