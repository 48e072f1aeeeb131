//! Exhaustively decompose every anchor in a value range and verify each
//! decomposition. Anything that fails to decompose would be a counterexample
//! candidate; these runs find none.
//!
//! ```bash
//! cargo run --release -p cluster-quiver --example conjecture_scan
//! ```

use std::sync::Arc;
use std::time::Instant;

use cluster_quiver::decompose::conjecture_scan;
use cluster_quiver::quiver::QuiverSpec;

fn main() {
    for (preset, lo, hi) in [("A2", -3, 3), ("A3", -2, 2), ("A4", -2, 2), ("D4", -2, 2)] {
        let q = Arc::new(QuiverSpec::preset(preset).unwrap());
        let started = Instant::now();
        let outcome = conjecture_scan(&q, lo, hi, 3).unwrap();
        println!(
            "{preset} range [{lo},{hi}]: {} ({:.2?})",
            outcome.summary(),
            started.elapsed()
        );
        for anchor in &outcome.anomaly_anchors {
            println!("  anomaly at anchor {anchor:?}");
        }
    }
}
