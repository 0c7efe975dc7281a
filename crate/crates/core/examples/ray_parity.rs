//! Inside/outside by ray parity, on the octahedron and on a chain of a
//! built representation.
//!
//! cargo run --example ray_parity

use georep::blocks::octahedron;
use georep::builder::build_r3;
use georep::code::{find_two_basis, LinearCode};
use georep::complex::Complex;
use georep::geom::{ray_parity_any, RationalPoint};

fn directions() -> Vec<RationalPoint> {
    [[3, 7, 11], [-5, 2, 13], [1, -9, 4], [8, 3, -2]]
        .iter()
        .map(|d| RationalPoint::from_ints(d))
        .collect()
}

fn main() {
    let (c, e) = octahedron().into_parts();
    let centre = RationalPoint::centroid(&e.points().iter().collect::<Vec<_>>());
    for x in [centre.clone(), &centre + &RationalPoint::from_ints(&[3, 0, 0])] {
        let probe = ray_parity_any(&c, &e, &x, directions()).unwrap();
        println!("octahedron, {x}: parity {} ({} face, {} edge crossings)", probe.parity, probe.i_t, probe.i_e);
    }

    // the triangles of one chain form a closed surface
    let code = LinearCode::repetition(3);
    let rep = build_r3(&code, &find_two_basis(&code).basis.unwrap()).unwrap();
    let mut chain = Complex::new();
    for _ in 0..rep.complex.num_vertices() {
        chain.add_vertex();
    }
    for &t in rep.chains[0].iter() {
        chain.add_triangle(rep.complex.triangle(t).unwrap()).unwrap();
    }
    let inside = RationalPoint::new(
        rep.embedding
            .point(rep.complex.triangle(rep.coordinate_map[0]).unwrap()[0])
            .coords()
            .iter()
            .map(|c| c - georep::geom::rat(1, 10))
            .collect(),
    );
    match ray_parity_any(&chain, &rep.embedding, &inside, directions()) {
        Ok(p) => println!("chain of a repetition code, {inside}: parity {}", p.parity),
        Err(e) => println!("chain of a repetition code, {inside}: {e}"),
    }
}
