//! Decide the 2-basis question for a few codes and print the minimal
//! representation dimension.
//!
//! cargo run --example analyze_code

use georep::code::{find_two_basis, min_representation_dim, LinearCode};
use georep::graph::{cycle_space, graph_from_two_basis, MultiGraph};

fn main() {
    let codes = [
        ("even weight, length 3", LinearCode::parse_text("110\n011\n").unwrap()),
        ("Hamming [7,4]", LinearCode::hamming_7_4()),
        ("cycle space of K4", cycle_space(&MultiGraph::complete(4))),
        ("cycle space of K5", cycle_space(&MultiGraph::complete(5))),
        ("cycle space of K3,3", cycle_space(&MultiGraph::complete_bipartite(3, 3))),
    ];
    for (name, code) in codes {
        let report = find_two_basis(&code);
        println!("{name}: n={} dim={} min-dim={}", code.len(), code.dim(), min_representation_dim(&code));
        if let Some(w) = &report.basis {
            let words: Vec<String> = w.iter().map(ToString::to_string).collect();
            println!("  2-basis {}", words.join(" "));
            let g = graph_from_two_basis(w, code.len()).unwrap();
            println!("  realised by a graph with {} vertices and {} edges", g.num_vertices(), g.num_edges());
        } else {
            println!("  no 2-basis");
        }
    }
}
