//! Left hammock functions, the Nakayama shift ν and the shifts [1], F.
//!
//! ```bash
//! cargo run -p cluster-quiver --example hammocks_and_shifts
//! ```

use std::sync::Arc;

use cluster_quiver::hammock::{left_hammock, nakayama};
use cluster_quiver::quiver::{QuiverSpec, ZVertex};

fn main() {
    let q = Arc::new(QuiverSpec::preset("A3").unwrap());

    for base in 0..3 {
        let p = ZVertex::new(base, 0);
        let table = left_hammock(&q, p, 1000).unwrap();
        let entries: Vec<String> = table
            .entries()
            .map(|(v, x)| format!("{}={x}", q.format_vertex(v)))
            .collect();
        println!("h'_{}: {}", q.format_vertex(p), entries.join(" "));
        println!(
            "  nu({}) = {}",
            q.format_vertex(p),
            q.format_vertex(nakayama(&q, p).unwrap())
        );
    }

    let maps = q.shift_maps().unwrap();
    let p = ZVertex::new(0, 0);
    println!("\nshifts of {}:", q.format_vertex(p));
    println!("  [1] -> {}", q.format_vertex(maps.shift_one(p)));
    println!("  F   -> {}", q.format_vertex(maps.shift_f(p)));
    println!("  F⁻¹ -> {}", q.format_vertex(maps.shift_f_inv(p)));

    let domain = maps.fundamental_domain(0);
    println!(
        "\nfundamental domain of F ({} vertices): {}",
        domain.len(),
        domain
            .iter()
            .map(|&v| q.format_vertex(v))
            .collect::<Vec<_>>()
            .join(" ")
    );

    // infinite supports fail fast outside the Dynkin diagrams
    let kronecker = Arc::new(QuiverSpec::parse("v a\nv b\na a b 2\n").unwrap());
    match left_hammock(&kronecker, ZVertex::new(0, 0), 24) {
        Err(e) => println!("\nweight-2 Kronecker quiver: {e}"),
        Ok(_) => unreachable!("support is infinite"),
    }
}
