//! Build a representation in R^3 from a 2-basis and check it.
//!
//! cargo run --example build_r3

use georep::builder::{build_r3, encode_f, verify_representation};
use georep::code::{find_two_basis, LinearCode};
use georep::geom::validate_embedding;
use georep::gf2::puncture;

fn main() {
    let code = LinearCode::even_weight(4);
    let witness = find_two_basis(&code).basis.unwrap();
    let rep = build_r3(&code, &witness).unwrap();
    println!(
        "even weight, length 4: {} vertices, {} triangles",
        rep.complex.num_vertices(),
        rep.complex.num_triangles()
    );

    let algebra = verify_representation(&code, &rep);
    println!("kernel dim {} for a code of dim {}: {}", algebra.kernel_dim, algebra.code_dim, algebra.passed());
    let geometry = validate_embedding(&rep.complex, &rep.embedding);
    println!("{} candidate pairs, {} violations", geometry.pairs_checked, geometry.violations.len());

    let kept = rep.kept_columns().unwrap();
    for c in code.codewords() {
        let f = encode_f(&rep, &c).unwrap();
        let read = &puncture(std::slice::from_ref(&f), &kept).unwrap()[0];
        println!("  f({c}) has {} triangles and reads back {read}", f.weight());
    }
}
