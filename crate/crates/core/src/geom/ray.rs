use std::collections::HashMap;

use num_traits::{Signed, Zero};

use super::linsys::simplex_intersection;
use super::{cross, det3, Rational, RationalPoint};
use crate::complex::{Complex, Embedding, VertexId};
use crate::error::{GeomError, RayError};

/// Outcome of casting the half-line `base + t * direction`, `t > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayProbe {
    pub base: RationalPoint,
    pub direction: RationalPoint,
    /// Crossings through triangle interiors.
    pub i_t: usize,
    /// Sum over crossed edges of the smaller side count.
    pub i_e: usize,
    pub parity: u8,
}

/// Parity of the number of times a ray from `x` crosses the complex.
///
/// Interior crossings count once each. A ray through the relative interior
/// of an edge `e` counts `min(n_e, m_e)`, where `n_e` and `m_e` are the
/// numbers of triangles at `e` on either side of the plane spanned by `e`
/// and the ray. Directions that hit a vertex or run parallel to a triangle
/// or an edge are rejected with a retryable error.
pub fn ray_parity(
    complex: &Complex,
    embedding: &Embedding,
    x: &RationalPoint,
    r: &RationalPoint,
) -> Result<RayProbe, RayError> {
    if embedding.dim() != 3 || x.dim() != 3 || r.dim() != 3 {
        return Err(GeomError::Dimension {
            expected: 3,
            found: if embedding.dim() != 3 { embedding.dim() } else { x.dim().min(r.dim()) },
        }
        .into());
    }
    if r.is_zero() {
        return Err(RayError::ZeroDirection);
    }

    // the base point must avoid the complex
    for (_, verts) in complex.triangles() {
        let tri = embedding.triangle(verts);
        if !simplex_intersection(&[x], &tri).is_empty() {
            return Err(RayError::PointOnComplex);
        }
    }
    for [a, b] in complex.segments() {
        if !simplex_intersection(&[x], &[embedding.point(*a), embedding.point(*b)]).is_empty() {
            return Err(RayError::PointOnComplex);
        }
    }

    let edges = complex.edges();
    for &[a, b] in &edges {
        let e = embedding.point(b) - embedding.point(a);
        if cross(&e, r).is_zero() {
            return Err(RayError::ParallelToEdge(a, b));
        }
    }
    let mut used = vec![false; embedding.len()];
    for &[a, b] in &edges {
        used[a] = true;
        used[b] = true;
    }
    for (v, p) in embedding.points().iter().enumerate() {
        if !used[v] {
            continue;
        }
        let d = p - x;
        if cross(&d, r).is_zero() && d.dot(r).is_positive() {
            return Err(RayError::HitsVertex(v));
        }
    }

    let mut i_t = 0;
    let mut third: HashMap<[VertexId; 2], Vec<VertexId>> = HashMap::new();
    for (t, [a, b, c]) in complex.triangles() {
        for (e, w) in [([a, b], c), ([a, c], b), ([b, c], a)] {
            third.entry(e).or_default().push(w);
        }
        let [p0, p1, p2] = embedding.triangle([a, b, c]);
        let n = cross(&(p1 - p0), &(p2 - p0));
        let nr = n.dot(r);
        if nr.is_zero() {
            return Err(RayError::ParallelToTriangle(t));
        }
        let t_hit = n.dot(&(p0 - x)) / &nr;
        if !t_hit.is_positive() {
            continue;
        }
        let y = x + &r.scale(&t_hit);
        // signed sub-areas against the normal; all positive means interior
        let l0 = n.dot(&cross(&(p1 - &y), &(p2 - &y)));
        let l1 = n.dot(&cross(&(p2 - &y), &(p0 - &y)));
        let l2 = n.dot(&cross(&(p0 - &y), &(p1 - &y)));
        if l0.is_positive() && l1.is_positive() && l2.is_positive() {
            i_t += 1;
        }
    }

    let mut i_e = 0;
    for &[a, b] in &edges {
        let pa = embedding.point(a);
        let e = embedding.point(b) - pa;
        let xa = x - pa;
        if !det3(&e, r, &xa).is_zero() {
            continue;
        }
        let exr = cross(&e, r);
        let norm = exr.dot(&exr);
        let s: Rational = cross(&xa, r).dot(&exr) / &norm;
        let t: Rational = cross(&(pa - x), &e).dot(&cross(r, &e)) / &norm;
        if !s.is_positive() || s >= Rational::from_integer(1.into()) || !t.is_positive() {
            continue;
        }
        let (mut n_e, mut m_e) = (0, 0);
        for &w in third.get(&[a, b]).map(Vec::as_slice).unwrap_or(&[]) {
            let side = det3(&e, r, &(embedding.point(w) - pa));
            if side.is_positive() {
                n_e += 1;
            } else if side.is_negative() {
                m_e += 1;
            } else {
                let t = complex.find_triangle([a, b, w]).unwrap_or_default();
                return Err(RayError::ParallelToTriangle(t));
            }
        }
        i_e += n_e.min(m_e);
    }

    Ok(RayProbe {
        base: x.clone(),
        direction: r.clone(),
        i_t,
        i_e,
        parity: ((i_t + i_e) % 2) as u8,
    })
}

/// Tries `directions` in order and returns the first admissible probe.
/// Non-retryable errors are returned immediately.
pub fn ray_parity_any<I>(
    complex: &Complex,
    embedding: &Embedding,
    x: &RationalPoint,
    directions: I,
) -> Result<RayProbe, RayError>
where
    I: IntoIterator<Item = RationalPoint>,
{
    let mut last = RayError::ZeroDirection;
    for r in directions {
        match ray_parity(complex, embedding, x, &r) {
            Ok(p) => return Ok(p),
            Err(e) if e.is_retryable() => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}
