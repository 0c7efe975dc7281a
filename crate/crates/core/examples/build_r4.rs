//! Codes without a 2-basis still embed in R^4.
//!
//! cargo run --example build_r4

use georep::builder::{build_r4, verify_representation};
use georep::code::{find_two_basis, LinearCode};
use georep::geom::validate_embedding;
use georep::graph::{cycle_space, MultiGraph};

fn main() {
    for (name, code) in [
        ("Hamming [7,4]", LinearCode::hamming_7_4()),
        ("cycle space of K3,3", cycle_space(&MultiGraph::complete_bipartite(3, 3))),
    ] {
        assert!(!find_two_basis(&code).found);
        let rep = build_r4(&code, code.basis()).unwrap();
        let algebra = verify_representation(&code, &rep);
        let geometry = validate_embedding(&rep.complex, &rep.embedding);
        println!(
            "{name}: {} triangles in R^{}, algebra {}, geometry {} ({} pairs)",
            rep.complex.num_triangles(),
            rep.dim(),
            if algebra.passed() { "OK" } else { "FAILED" },
            if geometry.passed() { "OK" } else { "FAILED" },
            geometry.pairs_checked
        );
    }
}
