use num_traits::Zero;
use serde::Serialize;

use super::linsys::simplex_intersection;
use super::{affinely_independent, RationalPoint};
use crate::error::GeomError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntersectionKind {
    Disjoint,
    SharedVertex,
    SharedEdge,
    Identical,
    /// Nonempty and not a common face.
    Improper,
}

impl IntersectionKind {
    /// The proper verdict for two triangles with `shared` common vertices.
    pub fn for_shared(shared: usize) -> Self {
        match shared {
            0 => IntersectionKind::Disjoint,
            1 => IntersectionKind::SharedVertex,
            2 => IntersectionKind::SharedEdge,
            _ => IntersectionKind::Identical,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionVerdict {
    pub kind: IntersectionKind,
    /// Common vertices for proper verdicts; a common point outside the
    /// shared face for improper ones.
    pub witness: Vec<RationalPoint>,
}

/// Classifies how two triangles of `Q^D` meet.
///
/// The verdict is proper exactly when the intersection equals the convex
/// hull of the vertices the triangles have in common. A shared vertex or
/// edge must coincide vertex for vertex; collinear overlap is improper.
pub fn classify_intersection(
    t1: [&RationalPoint; 3],
    t2: [&RationalPoint; 3],
) -> Result<IntersectionVerdict, GeomError> {
    let dim = t1[0].dim();
    if let Some(p) = t1.iter().chain(&t2).find(|p| p.dim() != dim) {
        return Err(GeomError::Dimension {
            expected: dim,
            found: p.dim(),
        });
    }
    if !affinely_independent(&t1) || !affinely_independent(&t2) {
        return Err(GeomError::Degenerate);
    }
    let shared: Vec<usize> = (0..3).filter(|&i| t2.contains(&t1[i])).collect();
    let vertices = simplex_intersection(&t1, &t2);
    if vertices.is_empty() {
        return Ok(IntersectionVerdict {
            kind: IntersectionKind::Disjoint,
            witness: Vec::new(),
        });
    }
    // Every point of the intersection is a convex combination of these
    // vertices, so it suffices that each one is supported on shared corners.
    for v in &vertices {
        let outside = (0..3).any(|i| !shared.contains(&i) && !v.bary_p[i].is_zero());
        if outside {
            let point = RationalPoint::combination(&t1, &v.bary_p);
            return Ok(IntersectionVerdict {
                kind: IntersectionKind::Improper,
                witness: vec![point],
            });
        }
    }
    Ok(IntersectionVerdict {
        kind: IntersectionKind::for_shared(shared.len()),
        witness: shared.iter().map(|&i| t1[i].clone()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[i64]) -> RationalPoint {
        RationalPoint::from_ints(c)
    }

    fn classify(a: &[RationalPoint; 3], b: &[RationalPoint; 3]) -> IntersectionKind {
        let k1 = classify_intersection([&a[0], &a[1], &a[2]], [&b[0], &b[1], &b[2]])
            .unwrap()
            .kind;
        let k2 = classify_intersection([&b[0], &b[1], &b[2]], [&a[0], &a[1], &a[2]])
            .unwrap()
            .kind;
        assert_eq!(k1, k2, "verdict must be symmetric");
        k1
    }

    #[test]
    fn shared_vertex_only() {
        let a = [pt(&[0, 0, 0]), pt(&[2, 0, 0]), pt(&[0, 2, 0])];
        let b = [pt(&[0, 0, 0]), pt(&[-2, 0, 1]), pt(&[0, -2, 1])];
        assert_eq!(classify(&a, &b), IntersectionKind::SharedVertex);
    }

    #[test]
    fn coplanar_overlap_is_improper() {
        let a = [pt(&[0, 0, 0]), pt(&[4, 0, 0]), pt(&[0, 4, 0])];
        let b = [pt(&[1, 1, 0]), pt(&[5, 1, 0]), pt(&[1, 5, 0])];
        assert_eq!(classify(&a, &b), IntersectionKind::Improper);
    }

    #[test]
    fn far_translates_are_disjoint() {
        let a = [pt(&[0, 0, 0]), pt(&[2, 0, 0]), pt(&[0, 2, 0])];
        let b = [pt(&[10, 0, 0]), pt(&[12, 0, 0]), pt(&[10, 2, 0])];
        assert_eq!(classify(&a, &b), IntersectionKind::Disjoint);
    }

    #[test]
    fn coplanar_neighbours_share_an_edge() {
        let a = [pt(&[0, 0, 0]), pt(&[2, 0, 0]), pt(&[0, 2, 0])];
        let b = [pt(&[2, 0, 0]), pt(&[0, 2, 0]), pt(&[2, 2, 0])];
        assert_eq!(classify(&a, &b), IntersectionKind::SharedEdge);
    }

    #[test]
    fn shared_vertex_with_overlapping_cones_is_improper() {
        let a = [pt(&[0, 0, 0]), pt(&[4, 0, 0]), pt(&[0, 4, 0])];
        let b = [pt(&[0, 0, 0]), pt(&[4, 1, 0]), pt(&[1, 4, 0])];
        assert_eq!(classify(&a, &b), IntersectionKind::Improper);
    }

    #[test]
    fn edge_touching_interior_is_improper() {
        // b's vertex pokes through a's interior
        let a = [pt(&[0, 0, 0]), pt(&[4, 0, 0]), pt(&[0, 4, 0])];
        let b = [pt(&[1, 1, -1]), pt(&[1, 1, 1]), pt(&[5, 5, 5])];
        assert_eq!(classify(&a, &b), IntersectionKind::Improper);
    }

    #[test]
    fn collinear_partial_edge_overlap_is_improper() {
        let a = [pt(&[0, 0, 0]), pt(&[2, 0, 0]), pt(&[0, 2, 0])];
        let b = [pt(&[1, 0, 0]), pt(&[3, 0, 0]), pt(&[1, 0, 2])];
        assert_eq!(classify(&a, &b), IntersectionKind::Improper);
    }

    #[test]
    fn four_dimensional_point_crossing_is_improper() {
        let a = [pt(&[0, 0, 0, 0]), pt(&[2, 0, 0, 0]), pt(&[0, 2, 0, 0])];
        let b = [pt(&[1, 1, -1, -1]), pt(&[0, 0, 2, -1]), pt(&[0, 0, -1, 2])];
        assert_eq!(classify(&a, &b), IntersectionKind::Improper);
        let lifted = [pt(&[1, 1, 1, -1]), pt(&[0, 0, 3, -1]), pt(&[0, 0, 1, 2])];
        assert_eq!(classify(&a, &lifted), IntersectionKind::Disjoint);
    }

    #[test]
    fn degenerate_and_mixed_dimension_inputs() {
        let a = [pt(&[0, 0, 0]), pt(&[1, 0, 0]), pt(&[2, 0, 0])];
        let b = [pt(&[0, 0, 1]), pt(&[1, 0, 1]), pt(&[0, 1, 1])];
        assert_eq!(
            classify_intersection([&a[0], &a[1], &a[2]], [&b[0], &b[1], &b[2]]),
            Err(GeomError::Degenerate)
        );
        let c = [pt(&[0, 0, 0, 0]), pt(&[1, 0, 0, 0]), pt(&[0, 1, 0, 0])];
        assert!(matches!(
            classify_intersection([&b[0], &b[1], &b[2]], [&c[0], &c[1], &c[2]]),
            Err(GeomError::Dimension { .. })
        ));
    }
}
