//! Write a built representation as OFF. R^4 results are projected and the
//! file says so.
//!
//! cargo run --example export_off -- [output-dir]

use std::path::PathBuf;

use georep::builder::{build_r3, build_r4};
use georep::code::{find_two_basis, LinearCode};
use georep::geom::{export_off, export_off_with_comment, project_r4, LinearMap};

fn main() {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);

    let code = LinearCode::repetition(4);
    let rep = build_r3(&code, &find_two_basis(&code).basis.unwrap()).unwrap();
    let off = export_off(&rep.complex, &rep.embedding).unwrap();
    let path = dir.join("repetition4.off");
    std::fs::write(&path, &off).unwrap();
    println!("{}: {}", path.display(), off.lines().nth(1).unwrap());

    let code = LinearCode::hamming_7_4();
    let rep = build_r4(&code, code.basis()).unwrap();
    let flat = project_r4(&rep.embedding, &LinearMap::drop_w()).unwrap();
    let off = export_off_with_comment(&rep.complex, &flat, Some("non-certified projection (drop-w)")).unwrap();
    let path = dir.join("hamming.off");
    std::fs::write(&path, &off).unwrap();
    println!("{}: {}", path.display(), off.lines().nth(2).unwrap());
}
