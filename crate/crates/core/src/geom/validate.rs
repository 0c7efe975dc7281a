use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use super::{affinely_independent, classify_intersection, IntersectionKind, Rational, RationalPoint};
use crate::complex::{Complex, Embedding, TriId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    MissingPoint { vertex: usize },
    WrongDimension { vertex: usize, found: usize },
    DuplicatePoint { first: usize, second: usize },
    Degenerate { triangle: TriId },
    Improper {
        first: TriId,
        second: TriId,
        expected: IntersectionKind,
        found: IntersectionKind,
        witness: Vec<String>,
    },
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub triangles: usize,
    /// Pairs whose bounding boxes overlap and were classified exactly.
    pub pairs_checked: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Integer predicates on a scaled copy of the embedding. Every operation is
/// checked; `None` means "undecided here", never "false".
mod fast {
    type V = Vec<i128>;

    pub fn sub(a: &[i64], b: &[i64]) -> V {
        a.iter().zip(b).map(|(x, y)| *x as i128 - *y as i128).collect()
    }

    fn mul(a: i128, b: i128) -> Option<i128> {
        a.checked_mul(b)
    }

    fn det2(a: i128, b: i128, c: i128, d: i128) -> Option<i128> {
        mul(a, d)?.checked_sub(mul(b, c)?)
    }

    fn cross(u: &V, v: &V) -> Option<[i128; 3]> {
        Some([
            det2(u[1], u[2], v[1], v[2])?,
            det2(u[2], u[0], v[2], v[0])?,
            det2(u[0], u[1], v[0], v[1])?,
        ])
    }

    fn dot3(n: &[i128; 3], v: &V) -> Option<i128> {
        mul(n[0], v[0])?.checked_add(mul(n[1], v[1])?)?.checked_add(mul(n[2], v[2])?)
    }

    /// In three dimensions, whether the plane of one triangle strictly
    /// separates the other.
    pub fn separated_by_plane(a: [&[i64]; 3], b: [&[i64]; 3]) -> Option<bool> {
        if a[0].len() != 3 {
            return Some(false);
        }
        let one_side = |t: [&[i64]; 3], u: [&[i64]; 3]| -> Option<bool> {
            let n = cross(&sub(t[1], t[0]), &sub(t[2], t[0]))?;
            let mut signs = [0i32; 3];
            for (s, p) in signs.iter_mut().zip(u) {
                *s = dot3(&n, &sub(p, t[0]))?.signum() as i32;
            }
            Some(signs.iter().all(|&s| s > 0) || signs.iter().all(|&s| s < 0))
        };
        Some(one_side(a, b)? || one_side(b, a)?)
    }

    /// Plane coordinates relative to a triangle, scaled by a positive
    /// factor common to all points.
    struct Frame {
        origin: Vec<i64>,
        u: V,
        v: V,
        axes: (usize, usize),
        sign: i128,
        scale: i128,
    }

    impl Frame {
        fn new(t: [&[i64]; 3]) -> Option<Frame> {
            let u = sub(t[1], t[0]);
            let v = sub(t[2], t[0]);
            for i in 0..u.len() {
                for j in i + 1..u.len() {
                    let m = det2(u[i], u[j], v[i], v[j])?;
                    if m != 0 {
                        return Some(Frame {
                            origin: t[0].to_vec(),
                            u,
                            v,
                            axes: (i, j),
                            sign: m.signum(),
                            scale: m.abs(),
                        });
                    }
                }
            }
            None
        }

        /// `Some(None)` when the point is off the plane.
        fn coords(&self, x: &[i64]) -> Option<Option<(i128, i128)>> {
            let d = sub(x, &self.origin);
            let (i, j) = self.axes;
            let alpha = self.sign * det2(d[i], d[j], self.v[i], self.v[j])?;
            let beta = self.sign * det2(self.u[i], self.u[j], d[i], d[j])?;
            for k in 0..d.len() {
                let back = mul(alpha, self.u[k])?.checked_add(mul(beta, self.v[k])?)?;
                if back != mul(self.scale, d[k])? {
                    return Some(None);
                }
            }
            Some(Some((alpha, beta)))
        }
    }

    fn orient(o: (i128, i128), a: (i128, i128), b: (i128, i128)) -> Option<i128> {
        det2(
            a.0.checked_sub(o.0)?,
            a.1.checked_sub(o.1)?,
            b.0.checked_sub(o.0)?,
            b.1.checked_sub(o.1)?,
        )
    }

    fn separated_2d(t: [(i128, i128); 3], u: [(i128, i128); 3]) -> Option<bool> {
        let by_edges_of = |t: [(i128, i128); 3], u: [(i128, i128); 3]| -> Option<bool> {
            for i in 0..3 {
                let (p, q, r) = (t[i], t[(i + 1) % 3], t[(i + 2) % 3]);
                let own = orient(p, q, r)?.signum();
                let mut all = true;
                for x in u {
                    if orient(p, q, x)?.signum() * own >= 0 {
                        all = false;
                        break;
                    }
                }
                if all {
                    return Some(true);
                }
            }
            Some(false)
        };
        Some(by_edges_of(t, u)? || by_edges_of(u, t)?)
    }

    /// Properness of a pair whose shared vertices come first in both
    /// triangles. Answers only for common configurations: a shared edge,
    /// a shared vertex within one plane, or disjoint coplanar triangles.
    pub fn proper(a: [&[i64]; 3], b: [&[i64]; 3], shared: usize) -> Option<bool> {
        let frame = Frame::new(a)?;
        match shared {
            2 => match frame.coords(b[2])? {
                // the planes meet only in the line of the shared edge
                None => Some(true),
                Some((_, beta)) if beta < 0 => Some(true),
                Some((_, beta)) if beta > 0 => Some(false),
                Some(_) => None,
            },
            1 => {
                let (a1, b1) = frame.coords(b[1])??;
                let (a2, b2) = frame.coords(b[2])??;
                // in the frame, the corner at the shared vertex is the closed
                // first quadrant
                if (a1 >= 0 && b1 >= 0) || (a2 >= 0 && b2 >= 0) {
                    return Some(false);
                }
                let det = det2(a1, b1, a2, b2)?.signum();
                let nonneg = |x: i128| x.signum() * det >= 0;
                let first_axis_inside = nonneg(b2) && nonneg(-b1);
                let second_axis_inside = nonneg(-a2) && nonneg(a1);
                Some(!(first_axis_inside || second_axis_inside))
            }
            0 => {
                let mut pts = [(0, 0); 3];
                for (slot, p) in pts.iter_mut().zip(b) {
                    *slot = frame.coords(p)??;
                }
                let m = frame.scale;
                separated_2d([(0, 0), (m, 0), (0, m)], pts)
            }
            _ => None,
        }
    }
}

/// The embedding scaled by a common denominator, if it fits in `i64`.
fn integer_coordinates(embedding: &Embedding) -> Option<Vec<Vec<i64>>> {
    let mut lcm = BigInt::one();
    for p in embedding.points() {
        for c in p.coords() {
            lcm = lcm.lcm(c.denom());
        }
    }
    let scale = Rational::from_integer(lcm);
    embedding
        .points()
        .iter()
        .map(|p| {
            p.coords()
                .iter()
                .map(|c| {
                    let v = (c * &scale).to_integer().to_i64()?;
                    (v.unsigned_abs() < 1 << 40).then_some(v)
                })
                .collect()
        })
        .collect()
}

/// Reorders both triangles so shared vertices come first, in matching order.
fn shared_first(a: [usize; 3], b: [usize; 3]) -> ([usize; 3], [usize; 3], usize) {
    let mut sa: Vec<usize> = a.iter().copied().filter(|v| b.contains(v)).collect();
    let shared = sa.len();
    let mut sb = sa.clone();
    sa.extend(a.iter().filter(|v| !b.contains(v)));
    sb.extend(b.iter().filter(|v| !a.contains(v)));
    ([sa[0], sa[1], sa[2]], [sb[0], sb[1], sb[2]], shared)
}

/// Checks that the embedding realises the complex: every triangle is
/// nondegenerate, vertices sit at distinct points, and any two triangles
/// meet exactly in the face spanned by their common vertices.
pub fn validate_embedding(complex: &Complex, embedding: &Embedding) -> ValidationReport {
    let mut report = ValidationReport {
        triangles: complex.num_triangles(),
        ..Default::default()
    };
    let dim = embedding.dim();
    for v in 0..complex.num_vertices() {
        if v >= embedding.len() {
            report.violations.push(Violation::MissingPoint { vertex: v });
        } else if embedding.point(v).dim() != dim {
            report.violations.push(Violation::WrongDimension {
                vertex: v,
                found: embedding.point(v).dim(),
            });
        }
    }
    if !report.violations.is_empty() {
        return report;
    }
    let mut seen: HashMap<&RationalPoint, usize> = HashMap::new();
    for v in 0..complex.num_vertices() {
        if let Some(&first) = seen.get(embedding.point(v)) {
            report.violations.push(Violation::DuplicatePoint { first, second: v });
        } else {
            seen.insert(embedding.point(v), v);
        }
    }

    let mut tris = Vec::with_capacity(complex.num_triangles());
    for (id, verts) in complex.triangles() {
        if !affinely_independent(&embedding.triangle(verts)) {
            report.violations.push(Violation::Degenerate { triangle: id });
            continue;
        }
        tris.push((id, verts));
    }
    if !report.violations.is_empty() {
        return report;
    }

    let ints = integer_coordinates(embedding);
    let candidates = match &ints {
        Some(pts) => overlapping_pairs(&tris, dim, |v| pts[v].as_slice()),
        None => overlapping_pairs(&tris, dim, |v| embedding.point(v).coords()),
    };
    report.pairs_checked = candidates.len();

    let mut violations: Vec<Violation> = candidates
        .par_iter()
        .filter_map(|&(i, j)| {
            let ((ida, a), (idb, b)) = (tris[i], tris[j]);
            let (va, vb, shared) = shared_first(a, b);
            if let Some(pts) = &ints {
                let pa = va.map(|v| pts[v].as_slice());
                let pb = vb.map(|v| pts[v].as_slice());
                if shared == 0 && fast::separated_by_plane(pa, pb) == Some(true) {
                    return None;
                }
                if fast::proper(pa, pb, shared) == Some(true) {
                    return None;
                }
            }
            let expected = IntersectionKind::for_shared(shared);
            let verdict = classify_intersection(embedding.triangle(va), embedding.triangle(vb)).ok()?;
            (verdict.kind != expected).then(|| Violation::Improper {
                first: ida,
                second: idb,
                expected,
                found: verdict.kind,
                witness: verdict.witness.iter().map(ToString::to_string).collect(),
            })
        })
        .collect();
    violations.sort_by_key(|v| match v {
        Violation::Improper { first, second, .. } => (*first, *second),
        _ => (0, 0),
    });
    report.violations.extend(violations);
    report
}

/// Pairs of triangles (as indices into `tris`, smaller id first) whose
/// bounding boxes meet. Sweeps along the axis with the widest spread of
/// box centres.
fn overlapping_pairs<'a, K, F>(tris: &[(TriId, [usize; 3])], dim: usize, coords: F) -> Vec<(usize, usize)>
where
    K: Ord + Clone + 'a,
    F: Fn(usize) -> &'a [K],
{
    let boxes: Vec<(Vec<K>, Vec<K>)> = tris
        .iter()
        .map(|(_, verts)| {
            let mut lo = coords(verts[0]).to_vec();
            let mut hi = lo.clone();
            for &v in &verts[1..] {
                for (k, x) in coords(v).iter().enumerate() {
                    if *x < lo[k] {
                        lo[k] = x.clone();
                    }
                    if *x > hi[k] {
                        hi[k] = x.clone();
                    }
                }
            }
            (lo, hi)
        })
        .collect();
    if boxes.is_empty() {
        return Vec::new();
    }
    // the axis whose sorted lower corners have the most distinct values
    let axis = (0..dim)
        .max_by_key(|&k| {
            let mut lows: Vec<&K> = boxes.iter().map(|b| &b.0[k]).collect();
            lows.sort();
            lows.dedup();
            (lows.len(), std::cmp::Reverse(k))
        })
        .unwrap_or(0);
    let mut order: Vec<usize> = (0..boxes.len()).collect();
    order.sort_by(|&a, &b| boxes[a].0[axis].cmp(&boxes[b].0[axis]).then(a.cmp(&b)));
    let mut pairs = Vec::new();
    for (n, &i) in order.iter().enumerate() {
        for &j in &order[n + 1..] {
            if boxes[j].0[axis] > boxes[i].1[axis] {
                break;
            }
            let overlap = (0..dim).all(|k| boxes[j].0[k] <= boxes[i].1[k] && boxes[i].0[k] <= boxes[j].1[k]);
            if overlap {
                let (a, b) = if tris[i].0 < tris[j].0 { (i, j) } else { (j, i) };
                pairs.push((a, b));
            }
        }
    }
    pairs
}
