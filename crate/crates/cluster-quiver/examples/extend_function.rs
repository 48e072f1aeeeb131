//! Extend integer values on a slice to the unique cluster-additive function
//! and read values anywhere on the translation quiver.
//!
//! ```bash
//! cargo run -p cluster-quiver --example extend_function
//! ```

use std::sync::Arc;

use cluster_quiver::cluster::ClusterFunction;
use cluster_quiver::quiver::{QuiverSpec, Window, ZVertex};
use cluster_quiver::tsv;

fn main() {
    let q = Arc::new(QuiverSpec::preset("A2").unwrap());

    // anchor the function on the slice at level 0
    let f = ClusterFunction::from_standard(Arc::clone(&q), 0, vec![-1, 0]).unwrap();

    println!("values over levels 0..=3:");
    let window = Window::levels(&q, 0, 3);
    print!("{}", tsv::write_values(&q, f.values_on(&window)));

    // single evaluations are memoized level by level, in both directions
    println!("\nf(2:2)  = {}", f.evaluate(ZVertex::new(1, 2)));
    println!("f(1:-4) = {}", f.evaluate(ZVertex::new(0, -4)));

    // on ZA_1 the extension alternates: f(x_i) = (-1)^i a
    let a1 = Arc::new(QuiverSpec::preset("A1").unwrap());
    let g = ClusterFunction::from_standard(Arc::clone(&a1), 0, vec![2]).unwrap();
    let alternating: Vec<i64> = (0..6).map(|i| g.evaluate(ZVertex::new(0, i))).collect();
    println!("\nZA_1 with a = 2: {alternating:?}");
}
