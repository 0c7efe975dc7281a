//! Graph -> cut space -> 2-basis -> graph, and check that the cut space is
//! unchanged.
//!
//! cargo run --example cut_space_roundtrip

use georep::code::find_two_basis;
use georep::gf2::span_equal;
use georep::graph::{cut_space, graph_from_two_basis, MultiGraph};

fn main() {
    // a triangle with a doubled edge, a loop and a pendant vertex
    let g = MultiGraph::parse_text("V a b c d\na b\na b\nb c\nc a\nc c\nc d\n").unwrap();
    let (cut, stars) = cut_space(&g).unwrap();
    println!("cut space: length {}, dimension {}", cut.len(), cut.dim());
    for (v, s) in stars.iter().enumerate() {
        println!("  star of {}: {s}", g.labels()[v]);
    }

    let witness = find_two_basis(&cut).basis.expect("cut spaces always have a 2-basis");
    let h = graph_from_two_basis(&witness, cut.len()).unwrap();
    print!("graph from the 2-basis:\n{}", h.to_text());

    let (back, _) = cut_space(&h).unwrap();
    println!("same code: {}", span_equal(back.basis(), cut.basis()).unwrap());
}
