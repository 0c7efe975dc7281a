//! Assembling a complex whose cycle space is a given binary code, in three
//! dimensions from a 2-basis and in four dimensions from any basis.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::blocks::{sphere_sn, tunnel, tunnel_bridge};
use crate::code::{check_two_basis, LinearCode};
use crate::complex::{cycle_space_of_complex, is_even_subset, Chain, Complex, Embedding, Mesh, TriId};
use crate::error::{BuildError, CodeError, ComplexError};
use crate::geom::{int, Rational, RationalPoint};
use crate::gf2::{self, BitVec};

/// Spacing between consecutive spheres along the first axis.
pub const SPHERE_SPACING: i64 = 5;
/// Height of the crossing leg of a bridge above its source triangle.
pub const BRIDGE_RISE: i64 = 5;
/// Position of the row of isolated triangles along the second axis.
pub const ISOLATED_ROW: i64 = -5;
/// Spacing of isolated triangles along the first axis.
pub const ISOLATED_SPACING: i64 = 3;

#[derive(Clone, Debug)]
pub struct Representation {
    pub complex: Complex,
    pub embedding: Embedding,
    /// The basis `b_1..b_d` the chains stand for.
    pub basis: Vec<BitVec>,
    /// One triangle set per basis vector.
    pub chains: Vec<Chain>,
    /// Triangle carrying coordinate `i`, at index `i - 1`.
    pub coordinate_map: Vec<TriId>,
}

impl Representation {
    pub fn dim(&self) -> usize {
        self.embedding.dim()
    }

    pub fn code_len(&self) -> usize {
        self.coordinate_map.len()
    }

    /// Incidence-matrix columns of the coordinate triangles, in coordinate
    /// order.
    pub fn kept_columns(&self) -> Result<Vec<usize>, ComplexError> {
        let cols = self.complex.columns();
        self.coordinate_map
            .iter()
            .map(|t| cols.get(t).copied().ok_or(ComplexError::InvalidTriangle(*t)))
            .collect()
    }

    pub fn chain_vectors(&self) -> Result<Vec<BitVec>, ComplexError> {
        self.chains.iter().map(|c| self.complex.characteristic(c)).collect()
    }
}

/// Copies `base` into `mesh` through `map`, leaving out `skip`. Returns the
/// new id of every copied triangle.
fn copy_mesh(
    mesh: &mut Mesh,
    base: &Mesh,
    map: impl Fn(&RationalPoint) -> RationalPoint,
    skip: &BTreeSet<TriId>,
) -> HashMap<TriId, TriId> {
    let mut ids = HashMap::new();
    for (t, verts) in base.complex.triangles() {
        if skip.contains(&t) {
            continue;
        }
        let pts = base.embedding.triangle(verts).map(&map);
        ids.insert(t, mesh.add_triangle_at(pts));
    }
    ids
}

fn base_designated(base: &Mesh, coord: usize) -> TriId {
    base.complex
        .designated_triangle(coord)
        .expect("sphere carries a triangle per coordinate")
}

/// Builds the three-dimensional representation from a 2-basis.
///
/// Sphere `i` is a copy of the designated sphere shifted by `5i` along the
/// first axis. A coordinate in no basis vector gets an isolated triangle;
/// one in a single vector `b_k` is carried by sphere `k`'s designated
/// triangle; one in `b_k` and `b_l` (`k < l`) gets a tunnel bridge of depth
/// `5i` from sphere `k` to the slot of sphere `l`'s designated triangle,
/// which is removed. The chain of `b_l` then holds the bridge and the
/// triangle of sphere `k` that caps it.
pub fn build_r3(code: &LinearCode, witness: &[BitVec]) -> Result<Representation, BuildError> {
    check_two_basis(code, witness)?;
    let n = code.len();
    let d = witness.len();
    let base = sphere_sn(n);
    let mut mesh = Mesh::new(3);
    let mut copies = Vec::with_capacity(d);
    let mut chains = Vec::with_capacity(d);
    for i in 1..=d {
        let shift = RationalPoint::from_ints(&[SPHERE_SPACING * i as i64, 0, 0]);
        let ids = copy_mesh(&mut mesh, &base, |p| p + &shift, &BTreeSet::new());
        chains.push(ids.values().copied().collect::<Chain>());
        copies.push(ids);
    }
    let slot = |k: usize, j: usize| copies[k][&base_designated(&base, j)];

    let mut coordinate_map = Vec::with_capacity(n);
    for j in 1..=n {
        let owners: Vec<usize> = (0..d).filter(|&i| witness[i].get(j)).collect();
        let carrier = match owners[..] {
            [] => {
                let x = ISOLATED_SPACING * j as i64;
                let y = ISOLATED_ROW;
                mesh.add_triangle_at([
                    RationalPoint::from_ints(&[x, y, 0]),
                    RationalPoint::from_ints(&[x + 2, y, 0]),
                    RationalPoint::from_ints(&[x + 1, y, 1]),
                ])
            }
            [k] => slot(k, j),
            [k, l] => {
                let (src, dst) = (slot(k, j), slot(l, j));
                let depth = int(SPHERE_SPACING * j as i64);
                let bridge = tunnel_bridge(&mut mesh, src, dst, &depth, &int(BRIDGE_RISE))?;
                mesh.complex.remove_triangle(dst)?;
                let chain = &mut chains[l];
                chain.remove(dst);
                chain.0.extend(bridge);
                chain.insert(src);
                src
            }
            _ => unreachable!("load checked above"),
        };
        mesh.complex.designate(j, carrier);
        coordinate_map.push(carrier);
    }
    let (complex, embedding) = mesh.into_parts();
    Ok(Representation {
        complex,
        embedding,
        basis: witness.to_vec(),
        chains,
        coordinate_map,
    })
}

/// Direction of block `i` (1-based) away from the shared facet.
pub fn block_direction(i: usize) -> RationalPoint {
    RationalPoint::from_ints(&[0, 0, 1, i as i64 - 1])
}

/// Sends the sphere frame into block `i`: `(x, y, z)` goes to
/// `(x, z, 0, 0) + (1 - y) v_i`, so the designated face lands at distance
/// one from the facet `x3 = x4 = 0` and the body behind it.
fn into_block(i: usize, p: &RationalPoint) -> RationalPoint {
    let s: Rational = int(1) - p.coord(1);
    let v = block_direction(i);
    RationalPoint::new(vec![
        p.coord(0).clone(),
        p.coord(2).clone(),
        &s * v.coord(2),
        &s * v.coord(3),
    ])
}

fn onto_facet(p: &RationalPoint) -> RationalPoint {
    RationalPoint::new(vec![p.coord(0).clone(), p.coord(2).clone(), int(0), int(0)])
}

/// Builds the four-dimensional representation from any basis.
///
/// The facet `x3 = x4 = 0` carries one triangle per coordinate, placed
/// where the designated triangles project. Block `i` is a sphere in the
/// 3-flat spanned by `e1, e2, v_i`; for every coordinate `k` of `b_i` its
/// designated triangle is removed and joined to the facet triangle by a
/// straight tunnel.
pub fn build_r4(code: &LinearCode, basis: &[BitVec]) -> Result<Representation, BuildError> {
    if basis.iter().any(|b| b.len() != code.len()) {
        return Err(CodeError::NotTwoBasis("length mismatch".into()).into());
    }
    if basis.len() != code.dim() || !code.is_spanned_by(basis) {
        return Err(BuildError::BasisMismatch);
    }
    let n = code.len();
    let base = sphere_sn(n);
    let mut mesh = Mesh::new(4);

    let mut coordinate_map = Vec::with_capacity(n);
    for j in 1..=n {
        let verts = base.complex.triangle(base_designated(&base, j))?;
        let pts = base.embedding.triangle(verts).map(onto_facet);
        let t = mesh.add_triangle_at(pts);
        mesh.complex.designate(j, t);
        coordinate_map.push(t);
    }

    let mut chains = Vec::with_capacity(basis.len());
    for (idx, b) in basis.iter().enumerate() {
        let i = idx + 1;
        let removed: BTreeSet<TriId> = b.support().map(|j| base_designated(&base, j)).collect();
        let ids = copy_mesh(&mut mesh, &base, |p| into_block(i, p), &removed);
        let mut chain: Chain = ids.values().copied().collect();
        for j in b.support() {
            let verts = base.complex.triangle(base_designated(&base, j))?;
            let pts = base.embedding.triangle(verts);
            let near = pts.map(|p| mesh.vertex_at(into_block(i, p)));
            let far = pts.map(|p| mesh.vertex_at(onto_facet(p)));
            chain.0.extend(tunnel(&mut mesh.complex, near, far)?);
            chain.insert(coordinate_map[j - 1]);
        }
        chains.push(chain);
    }
    let (complex, embedding) = mesh.into_parts();
    Ok(Representation {
        complex,
        embedding,
        basis: basis.to_vec(),
        chains,
        coordinate_map,
    })
}

/// The cycle `f(c)`: the sum of the chains of the basis vectors that add
/// up to `c`, as a vector over the live triangles.
pub fn encode_f(rep: &Representation, c: &BitVec) -> Result<BitVec, BuildError> {
    let indicator = gf2::express(c, &rep.basis)?
        .ok_or_else(|| CodeError::NotInCode(c.to_string()))?;
    let mut out = BitVec::zeros(rep.complex.num_triangles());
    for i in indicator.support() {
        out.xor_assign(&rep.complex.characteristic(&rep.chains[i - 1])?);
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerificationReport {
    pub code_dim: usize,
    pub kernel_dim: usize,
    /// The kernel has the dimension of the code.
    pub kernel_dim_ok: bool,
    /// Restricting the kernel to the coordinate triangles gives the code.
    pub puncture_ok: bool,
    /// Each basis chain reads back its basis vector on the coordinate
    /// triangles.
    pub column_identity_ok: bool,
    pub chains_even_ok: bool,
    pub chains_independent_ok: bool,
    /// Human-readable reasons for failed checks.
    pub details: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.kernel_dim_ok
            && self.puncture_ok
            && self.column_identity_ok
            && self.chains_even_ok
            && self.chains_independent_ok
    }
}

/// Checks the algebra of a representation against `code`.
pub fn verify_representation(code: &LinearCode, rep: &Representation) -> VerificationReport {
    let mut r = VerificationReport {
        code_dim: code.dim(),
        ..Default::default()
    };
    let kernel = cycle_space_of_complex(&rep.complex);
    r.kernel_dim = kernel.len();
    r.kernel_dim_ok = r.kernel_dim == r.code_dim;
    if !r.kernel_dim_ok {
        r.details.push(format!(
            "kernel has dimension {} but the code has dimension {}",
            r.kernel_dim, r.code_dim
        ));
    }

    let kept = match rep.kept_columns() {
        Ok(k) if k.len() == code.len() => Some(k),
        Ok(k) => {
            r.details.push(format!(
                "{} coordinate triangles for a code of length {}",
                k.len(),
                code.len()
            ));
            None
        }
        Err(e) => {
            r.details.push(format!("coordinate map: {e}"));
            None
        }
    };

    if let Some(kept) = &kept {
        r.puncture_ok = gf2::puncture(&kernel, kept)
            .ok()
            .and_then(|p| gf2::span_equal(&p, code.basis()).ok())
            .unwrap_or(false);
        if !r.puncture_ok {
            r.details
                .push("kernel restricted to the coordinate triangles differs from the code".into());
        }
    }

    let spans = rep.basis.len() == code.dim()
        && rep.basis.iter().all(|b| b.len() == code.len())
        && code.is_spanned_by(&rep.basis);
    if !spans {
        r.details.push("stored basis is not a basis of the code".into());
    }
    if rep.chains.len() != rep.basis.len() {
        r.details.push(format!(
            "{} chains for {} basis vectors",
            rep.chains.len(),
            rep.basis.len()
        ));
    }
    let vectors = rep.chain_vectors();
    if let Err(e) = &vectors {
        r.details.push(format!("chain: {e}"));
    }

    if let (Some(kept), Ok(vectors), true, true) =
        (&kept, &vectors, spans, rep.chains.len() == rep.basis.len())
    {
        r.column_identity_ok = true;
        for (i, (v, b)) in vectors.iter().zip(&rep.basis).enumerate() {
            let read = gf2::puncture(std::slice::from_ref(v), kept).ok();
            if read.as_deref() != Some(std::slice::from_ref(b)) {
                r.column_identity_ok = false;
                r.details
                    .push(format!("chain {} does not read back basis vector {}", i + 1, b));
            }
        }
    }

    r.chains_even_ok = true;
    for (i, chain) in rep.chains.iter().enumerate() {
        match is_even_subset(&rep.complex, chain) {
            Ok(true) => {}
            Ok(false) => {
                r.chains_even_ok = false;
                r.details.push(format!("chain {} has an edge of odd degree", i + 1));
            }
            Err(e) => {
                r.chains_even_ok = false;
                r.details.push(format!("chain {}: {e}", i + 1));
            }
        }
    }

    if let Ok(vectors) = &vectors {
        r.chains_independent_ok = gf2::rank_of(vectors) == rep.chains.len();
        if !r.chains_independent_ok {
            r.details.push("chains are linearly dependent".into());
        }
    }
    r
}
