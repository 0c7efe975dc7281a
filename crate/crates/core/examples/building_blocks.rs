//! Kernel dimensions of the building blocks: octahedron, tunnel, and the
//! subdivided spheres with designated triangles.
//!
//! cargo run --example building_blocks

use georep::blocks::{octahedron, sphere_sn, subdivision_order, tunnel};
use georep::complex::{cycle_space_of_complex, Complex};

fn main() {
    println!("octahedron: kernel dim {}", cycle_space_of_complex(&octahedron().complex).len());

    let mut c = Complex::new();
    for _ in 0..6 {
        c.add_vertex();
    }
    tunnel(&mut c, [0, 1, 2], [3, 4, 5]).unwrap();
    println!("tunnel: {} triangles, kernel dim {}", c.num_triangles(), cycle_space_of_complex(&c).len());

    for n in [1, 3, 7, 10] {
        let mut s = sphere_sn(n);
        let k = subdivision_order(n);
        let whole = cycle_space_of_complex(&s.complex).len();
        let t = s.complex.designated_triangle(1).unwrap();
        s.complex.remove_triangle(t).unwrap();
        let punctured = cycle_space_of_complex(&s.complex).len();
        println!(
            "S_{n}: order {k}, {} triangles, kernel dim {whole}, {punctured} without a designated triangle",
            s.complex.num_triangles() + 1
        );
    }
}
