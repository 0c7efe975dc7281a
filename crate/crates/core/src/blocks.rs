//! Building blocks: the octahedral sphere with designated faces, tunnels
//! between triangle boundaries, and tunnel bridges.

use num_traits::{Signed, Zero};

use crate::complex::{Complex, Mesh, TriId, VertexId};
use crate::error::ComplexError;
use crate::geom::{int, rat, Rational, RationalPoint};

/// Corners of the octahedron. The first three span the face in the plane
/// `y = 0`; the body lies in `y <= 0`.
fn octahedron_corners() -> [RationalPoint; 6] {
    let p = |x: Rational, y: Rational, z: Rational| RationalPoint::new(vec![x, y, z]);
    [
        p(int(0), int(0), int(0)),
        p(int(2), int(0), int(0)),
        p(int(1), int(0), int(1)),
        p(int(2), int(-1), rat(2, 3)),
        p(int(0), int(-1), rat(2, 3)),
        p(int(1), int(-1), rat(-1, 3)),
    ]
}

/// Faces as corner indices; face 0 is the distinguished one.
const OCTAHEDRON_FACES: [[usize; 3]; 8] = [
    [0, 1, 2],
    [3, 4, 5],
    [0, 1, 5],
    [1, 2, 3],
    [2, 0, 4],
    [3, 4, 2],
    [4, 5, 0],
    [5, 3, 1],
];

pub fn octahedron() -> Mesh {
    sphere_with_k(1)
}

/// Smallest subdivision order with room for `n` designated triangles.
pub fn subdivision_order(n: usize) -> usize {
    let mut m = 1;
    while m * (m + 1) / 2 < n {
        m += 1;
    }
    2 * m - 1
}

/// Lattice positions `(a, b)` of the designated upward triangles on the
/// distinguished face: even rows from the top down, even positions left to
/// right.
pub fn designated_positions(k: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let top = if (k - 1) % 2 == 0 { k - 1 } else { k - 2 };
    for b in (0..=top).rev().step_by(2) {
        for a in (0..k - b).step_by(2) {
            out.push((a, b));
        }
    }
    out
}

fn lattice_point(corners: [&RationalPoint; 3], k: usize, a: usize, b: usize) -> RationalPoint {
    let k = k as i64;
    let (a, b) = (a as i64, b as i64);
    let w = [rat(k - a - b, k), rat(a, k), rat(b, k)];
    RationalPoint::combination(&corners, &w)
}

fn sphere_with_k(k: usize) -> Mesh {
    let corners = octahedron_corners();
    let mut mesh = Mesh::new(3);
    for face in OCTAHEDRON_FACES {
        let c = face.map(|i| &corners[i]);
        for b in 0..k {
            for a in 0..k - b {
                let up = [(a, b), (a + 1, b), (a, b + 1)];
                mesh.add_triangle_at(up.map(|(a, b)| lattice_point(c, k, a, b)));
                if a + b + 2 <= k {
                    let down = [(a + 1, b), (a + 1, b + 1), (a, b + 1)];
                    mesh.add_triangle_at(down.map(|(a, b)| lattice_point(c, k, a, b)));
                }
            }
        }
    }
    mesh
}

/// The octahedron with every face cut into `k^2` congruent triangles and
/// `n` pairwise vertex-disjoint triangles of the face `y = 0` designated as
/// coordinates `1..=n`.
pub fn sphere_sn(n: usize) -> Mesh {
    let k = subdivision_order(n);
    let mut mesh = sphere_with_k(k);
    let corners = octahedron_corners();
    let face = [&corners[0], &corners[1], &corners[2]];
    for (i, &(a, b)) in designated_positions(k).iter().take(n).enumerate() {
        let pts = [(a, b), (a + 1, b), (a, b + 1)].map(|(a, b)| lattice_point(face, k, a, b));
        let verts = pts.map(|p| mesh.vertex_of(&p).expect("lattice vertex"));
        let t = mesh.complex.find_triangle(verts).expect("lattice triangle");
        mesh.complex.designate(i + 1, t);
    }
    mesh
}

/// Adds the six side triangles of the prism between two vertex-disjoint
/// triangle boundaries, matching `a[i]` with `b[i]`. Each side quad is cut
/// along the diagonal from `a[i]` to `b[i + 1]`.
pub fn tunnel(
    complex: &mut Complex,
    a: [VertexId; 3],
    b: [VertexId; 3],
) -> Result<[TriId; 6], ComplexError> {
    for v in a.iter().chain(&b) {
        if *v >= complex.num_vertices() {
            return Err(ComplexError::InvalidVertex(*v));
        }
    }
    if let Some(v) = a.iter().find(|v| b.contains(v)) {
        return Err(ComplexError::SharedVertex(*v));
    }
    let mut out = [0; 6];
    for i in 0..3 {
        let j = (i + 1) % 3;
        out[2 * i] = complex.add_triangle([a[i], a[j], b[j]])?;
        out[2 * i + 1] = complex.add_triangle([a[i], b[j], b[i]])?;
    }
    Ok(out)
}

fn precondition(msg: impl Into<String>) -> ComplexError {
    ComplexError::Precondition(msg.into())
}

/// Routes the boundary of `src` to the boundary of `dst` through five
/// tunnels: out along `+y` to depth `depth`, up, across along `+x`, down,
/// and back along `-y`. Consecutive legs meet in mitre planes, so every
/// side quad is planar.
///
/// `src` and `dst` must lie in the plane `y = 0`, `src` must be mirror
/// symmetric in `x`, and `dst` must be a translate of `src` along `+x` by
/// more than its width. The crossing leg runs at height `rise` above the
/// centre of `src`. Returns the 30 new triangles.
pub fn tunnel_bridge(
    mesh: &mut Mesh,
    src: TriId,
    dst: TriId,
    depth: &Rational,
    rise: &Rational,
) -> Result<Vec<TriId>, ComplexError> {
    if mesh.embedding.dim() != 3 {
        return Err(precondition("bridges live in three dimensions"));
    }
    let src_verts = mesh.complex.triangle(src)?;
    let dst_verts = mesh.complex.triangle(dst)?;
    let sp: Vec<RationalPoint> = src_verts.iter().map(|&v| mesh.embedding.point(v).clone()).collect();
    let dp: Vec<RationalPoint> = dst_verts.iter().map(|&v| mesh.embedding.point(v).clone()).collect();
    if sp.iter().chain(&dp).any(|p| !p.coord(1).is_zero()) {
        return Err(precondition("bridge ends must lie in the plane y = 0"));
    }
    let xs = || sp.iter().map(|p| p.coord(0));
    let (x_min, x_max) = (xs().min().unwrap().clone(), xs().max().unwrap().clone());
    let x_c = (&x_min + &x_max) / int(2);
    let width = &x_max - &x_min;
    let mirrored = |p: &RationalPoint, c: &Rational| {
        RationalPoint::new(vec![c - p.coord(0), int(0), p.coord(2).clone()])
    };
    let two_xc = &x_c * int(2);
    if !sp.iter().all(|p| sp.contains(&mirrored(p, &two_xc))) {
        return Err(precondition("source triangle is not mirror symmetric"));
    }
    let shift = dp.iter().map(|p| p.coord(0)).min().unwrap() - &x_min;
    if shift <= width {
        return Err(precondition("destination must lie beyond the source along +x"));
    }
    let c = &two_xc + &shift;
    let c2 = &x_c + rise;
    for p in &sp {
        let z = p.coord(2);
        if !(depth - z).is_positive() {
            return Err(precondition("depth must exceed the height of the source"));
        }
        if !(&c2 - p.coord(0) - z).is_positive() {
            return Err(precondition("rise too small to clear the source"));
        }
    }

    let p3 = |x: Rational, y: Rational, z: Rational| RationalPoint::new(vec![x, y, z]);
    let mut stages: Vec<[VertexId; 3]> = vec![src_verts];
    let legs: [&dyn Fn(&RationalPoint) -> RationalPoint; 4] = [
        &|p| p3(p.coord(0).clone(), depth - p.coord(2), p.coord(2).clone()),
        &|p| p3(p.coord(0).clone(), depth - p.coord(2), &c2 - p.coord(0)),
        &|p| p3(&c - p.coord(0), depth - p.coord(2), &c2 - p.coord(0)),
        &|p| p3(&c - p.coord(0), depth - p.coord(2), p.coord(2).clone()),
    ];
    for leg in legs {
        stages.push([0, 1, 2].map(|i| mesh.vertex_at(leg(&sp[i]))));
    }
    let mut last = [0; 3];
    for i in 0..3 {
        let end = mirrored(&sp[i], &c);
        last[i] = mesh
            .vertex_of(&end)
            .filter(|v| dst_verts.contains(v))
            .ok_or_else(|| precondition("destination is not a translate of the source"))?;
    }
    stages.push(last);

    let mut out = Vec::with_capacity(30);
    for pair in stages.windows(2) {
        out.extend(tunnel(&mut mesh.complex, pair[0], pair[1])?);
    }
    Ok(out)
}
