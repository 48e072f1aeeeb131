//! Cluster-hammock functions: anchored at −1 on one vertex, zero on the rest
//! of its slice. On Dynkin quivers they are F-invariant, take the value −1
//! exactly on one F-orbit, and repeat a plain hammock on the positive side.
//!
//! ```bash
//! cargo run -p cluster-quiver --example cluster_hammocks
//! ```

use std::sync::Arc;

use cluster_quiver::hammock::{check_f_invariance, cluster_hammock};
use cluster_quiver::quiver::{QuiverSpec, Window, ZVertex};

fn main() {
    let q = Arc::new(QuiverSpec::preset("A2").unwrap());
    let x = ZVertex::new(0, 0);
    let h = cluster_hammock(&q, x).unwrap();

    println!("h_{} over levels 0..=5:", q.format_vertex(x));
    for v in Window::levels(&q, 0, 5).vertices() {
        let value = h.evaluate(v);
        if value != 0 {
            println!("  {} = {value}", q.format_vertex(v));
        }
    }

    println!(
        "\nF-invariant over 3 periods: {}",
        check_f_invariance(&h, 3).unwrap()
    );

    let maps = q.shift_maps().unwrap();
    let orbit: Vec<String> = (0..3)
        .scan(x, |cur, _| {
            let here = *cur;
            *cur = maps.shift_f(*cur);
            Some(q.format_vertex(here))
        })
        .collect();
    println!(
        "F-orbit of {} starts: {}",
        q.format_vertex(x),
        orbit.join(" -> ")
    );

    // h_x(x) = -1 on every Dynkin preset
    for preset in ["A3", "D4", "E6"] {
        let q = Arc::new(QuiverSpec::preset(preset).unwrap());
        let x = ZVertex::new(0, 0);
        let h = cluster_hammock(&q, x).unwrap();
        println!("{preset}: h_x(x) = {}", h.evaluate(x));
    }
}
