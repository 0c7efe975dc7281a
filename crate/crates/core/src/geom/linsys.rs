//! Intersection of two simplices by exact linear algebra.
//!
//! For simplices `P = conv(p_0..p_m)` and `Q = conv(q_0..q_l)` the common
//! points are the solutions of
//!
//! ```text
//! sum_i s_i (p_i - p_0) - sum_j t_j (q_j - q_0) = q_0 - p_0
//! s >= 0, sum s <= 1, t >= 0, sum t <= 1
//! ```
//!
//! The equality part is put in reduced echelon form, the inequalities are
//! rewritten over the free variables, and the vertices of the resulting
//! bounded polytope are enumerated by making `k` constraints tight at a time
//! (`k` = number of free variables, never more than `m + l`). The
//! intersection is the convex hull of the images of those vertices.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use super::{Rational, RationalPoint};

/// Exact field arithmetic that may give up on overflow.
trait Field: Clone + PartialEq + Ord {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn div(&self, o: &Self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// Fixed-width rationals; every operation is checked.
type Small = Ratio<i128>;

impl Field for Small {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        self.checked_div(o)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

fn to_small(r: &Rational) -> Option<Small> {
    // keep well inside i128 so products of a few entries cannot wrap
    let n = r.numer().to_i64()?;
    let d = r.denom().to_i64()?;
    Some(Small::new_raw(n as i128, d as i128))
}

fn to_big(r: &Small) -> Rational {
    Rational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Reduces `rows` in place; returns the pivot column of each nonzero row.
fn rref<F: Field>(rows: &mut [Vec<F>], cols: usize) -> Option<Vec<usize>> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..cols {
        if next == rows.len() {
            break;
        }
        let Some(p) = (next..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(next, p);
        let lead = rows[next][c].clone();
        for v in rows[next].iter_mut().skip(c) {
            *v = v.div(&lead)?;
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                *v = v.sub(&f.mul(pv)?)?;
            }
        }
        pivots.push(c);
        next += 1;
    }
    Some(pivots)
}

pub(crate) fn matrix_rank(rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let small: Option<Vec<Vec<Small>>> = rows
        .iter()
        .map(|r| r.iter().map(to_small).collect())
        .collect();
    if let Some(mut small) = small {
        if let Some(p) = rref(&mut small, cols) {
            return p.len();
        }
    }
    let mut rows = rows;
    rref(&mut rows, cols).expect("exact arithmetic").len()
}

/// Solves the square system `a x = b`; `Some(None)` if singular, `None` on
/// overflow.
fn solve_square<F: Field>(a: Vec<Vec<F>>, b: Vec<F>) -> Option<Option<Vec<F>>> {
    let k = b.len();
    let mut aug: Vec<Vec<F>> = a
        .into_iter()
        .zip(b)
        .map(|(mut row, rhs)| {
            row.push(rhs);
            row
        })
        .collect();
    let pivots = rref(&mut aug, k)?;
    if pivots.len() < k {
        return Some(None);
    }
    Some(Some(aug.into_iter().map(|row| row[k].clone()).collect()))
}

/// An affine form `constant + sum coeffs[f] * mu_f`.
struct Affine<F> {
    constant: F,
    coeffs: Vec<F>,
}

impl<F: Field> Affine<F> {
    fn eval(&self, mu: &[F]) -> Option<F> {
        let mut acc = self.constant.clone();
        for (c, m) in self.coeffs.iter().zip(mu) {
            acc = acc.add(&c.mul(m)?)?;
        }
        Some(acc)
    }
}

/// One vertex of the intersection, as barycentric coordinates on both inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionVertex {
    pub bary_p: Vec<Rational>,
    pub bary_q: Vec<Rational>,
}

fn barycentric<F: Field>(params: &[F]) -> Option<Vec<F>> {
    let mut rest = F::one();
    for s in params {
        rest = rest.sub(s)?;
    }
    Some(std::iter::once(rest).chain(params.iter().cloned()).collect())
}

type Vertex<F> = (Vec<F>, Vec<F>);

fn intersection_in<F: Field>(p: &[Vec<F>], q: &[Vec<F>]) -> Option<Vec<Vertex<F>>> {
    let m = p.len() - 1;
    let l = q.len() - 1;
    let n = m + l;
    let dim = p[0].len();
    let mut rows: Vec<Vec<F>> = Vec::with_capacity(dim);
    for d in 0..dim {
        let mut row = Vec::with_capacity(n + 1);
        for pi in &p[1..] {
            row.push(pi[d].sub(&p[0][d])?);
        }
        for qj in &q[1..] {
            row.push(q[0][d].sub(&qj[d])?);
        }
        row.push(q[0][d].sub(&p[0][d])?);
        rows.push(row);
    }
    let pivots = rref(&mut rows, n + 1)?;
    if pivots.last() == Some(&n) {
        return Some(Vec::new());
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let k = free.len();

    // Each unknown as an affine function of the free variables.
    let mut unknowns: Vec<Affine<F>> = (0..n)
        .map(|_| Affine {
            constant: F::zero(),
            coeffs: vec![F::zero(); k],
        })
        .collect();
    for (fi, &f) in free.iter().enumerate() {
        unknowns[f].coeffs[fi] = F::one();
    }
    for (r, &pc) in pivots.iter().enumerate() {
        unknowns[pc].constant = rows[r][n].clone();
        for (fi, &f) in free.iter().enumerate() {
            unknowns[pc].coeffs[fi] = F::zero().sub(&rows[r][f])?;
        }
    }

    // Constraints g >= 0.
    let mut constraints: Vec<Affine<F>> = Vec::with_capacity(n + 2);
    for (lo, hi) in [(0, m), (m, n)] {
        let mut sum = Affine {
            constant: F::one(),
            coeffs: vec![F::zero(); k],
        };
        for u in &unknowns[lo..hi] {
            constraints.push(Affine {
                constant: u.constant.clone(),
                coeffs: u.coeffs.clone(),
            });
            sum.constant = sum.constant.sub(&u.constant)?;
            for (s, c) in sum.coeffs.iter_mut().zip(&u.coeffs) {
                *s = s.sub(c)?;
            }
        }
        constraints.push(sum);
    }

    let feasible = |mu: &[F]| -> Option<bool> {
        for g in &constraints {
            if g.eval(mu)?.is_negative() {
                return Some(false);
            }
        }
        Some(true)
    };
    let mut vertices: Vec<Vec<F>> = Vec::new();
    if k == 0 {
        if feasible(&[])? {
            vertices.push(Vec::new());
        }
    } else {
        for tight in (0..constraints.len()).combinations(k) {
            let a = tight.iter().map(|&i| constraints[i].coeffs.clone()).collect();
            let b = tight
                .iter()
                .map(|&i| F::zero().sub(&constraints[i].constant))
                .collect::<Option<Vec<F>>>()?;
            if let Some(mu) = solve_square(a, b)? {
                if !vertices.contains(&mu) && feasible(&mu)? {
                    vertices.push(mu);
                }
            }
        }
    }

    vertices
        .into_iter()
        .map(|mu| {
            let x = unknowns.iter().map(|u| u.eval(&mu)).collect::<Option<Vec<F>>>()?;
            Some((barycentric(&x[..m])?, barycentric(&x[m..])?))
        })
        .collect()
}

/// Vertices of `conv(p) ∩ conv(q)`; empty iff the simplices are disjoint.
///
/// All points must share one dimension. Duplicate vertices are removed.
/// Small inputs run in checked fixed-width arithmetic and fall back to
/// arbitrary precision on overflow; both are exact.
pub fn simplex_intersection(p: &[&RationalPoint], q: &[&RationalPoint]) -> Vec<IntersectionVertex> {
    let small = |pts: &[&RationalPoint]| -> Option<Vec<Vec<Small>>> {
        pts.iter().map(|p| p.coords().iter().map(to_small).collect()).collect()
    };
    if let (Some(ps), Some(qs)) = (small(p), small(q)) {
        if let Some(vs) = intersection_in(&ps, &qs) {
            return vs
                .into_iter()
                .map(|(a, b)| IntersectionVertex {
                    bary_p: a.iter().map(to_big).collect(),
                    bary_q: b.iter().map(to_big).collect(),
                })
                .collect();
        }
    }
    let big = |pts: &[&RationalPoint]| -> Vec<Vec<Rational>> {
        pts.iter().map(|p| p.coords().to_vec()).collect()
    };
    intersection_in(&big(p), &big(q))
        .expect("exact arithmetic")
        .into_iter()
        .map(|(bary_p, bary_q)| IntersectionVertex { bary_p, bary_q })
        .collect()
}

/// Same as [`simplex_intersection`] but always in arbitrary precision.
#[cfg(test)]
pub(crate) fn simplex_intersection_big(p: &[&RationalPoint], q: &[&RationalPoint]) -> Vec<IntersectionVertex> {
    let big = |pts: &[&RationalPoint]| -> Vec<Vec<Rational>> {
        pts.iter().map(|p| p.coords().to_vec()).collect()
    };
    intersection_in(&big(p), &big(q))
        .expect("exact arithmetic")
        .into_iter()
        .map(|(bary_p, bary_q)| IntersectionVertex { bary_p, bary_q })
        .collect()
}

/// Whether the closed segment `ab` meets the closed triangle `tri`.
pub fn segment_meets_triangle(a: &RationalPoint, b: &RationalPoint, tri: [&RationalPoint; 3]) -> bool {
    !simplex_intersection(&[a, b], &tri).is_empty()
}

/// Whether `x` lies in the closed triangle `tri`.
pub fn point_in_triangle(x: &RationalPoint, tri: [&RationalPoint; 3]) -> bool {
    !simplex_intersection(&[x], &tri).is_empty()
}
