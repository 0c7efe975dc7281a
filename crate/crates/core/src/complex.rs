//! Triangular configurations: abstract complexes, their embeddings, and the
//! GF(2) cycle space of the edge/triangle incidence matrix.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::error::ComplexError;
use crate::geom::{format_rational, parse_rational, RationalPoint};
use crate::gf2::{self, BitMat, BitVec};

pub type VertexId = usize;
pub type TriId = usize;

/// A 2-dimensional complex given by its triangles (and optional isolated
/// segments). Triangle ids are stable: removing a triangle leaves a hole in
/// the id space instead of renumbering.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Complex {
    num_vertices: usize,
    triangles: Vec<Option<[VertexId; 3]>>,
    segments: Vec<[VertexId; 2]>,
    designated: BTreeMap<usize, TriId>,
    index: HashMap<[VertexId; 3], TriId>,
}

fn sorted3(mut t: [VertexId; 3]) -> [VertexId; 3] {
    t.sort_unstable();
    t
}

impl Complex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.num_vertices += 1;
        self.num_vertices - 1
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    /// Adds a triangle and returns its id. Re-adding a live triangle
    /// returns the existing id.
    pub fn add_triangle(&mut self, verts: [VertexId; 3]) -> Result<TriId, ComplexError> {
        if let Some(&v) = verts.iter().find(|&&v| v >= self.num_vertices) {
            return Err(ComplexError::InvalidVertex(v));
        }
        let key = sorted3(verts);
        if key[0] == key[1] || key[1] == key[2] {
            return Err(ComplexError::Precondition(format!(
                "triangle {verts:?} repeats a vertex"
            )));
        }
        if let Some(&t) = self.index.get(&key) {
            return Ok(t);
        }
        self.triangles.push(Some(key));
        let id = self.triangles.len() - 1;
        self.index.insert(key, id);
        Ok(id)
    }

    /// Places a triangle at a specific id; used when reading files.
    fn insert_triangle_at(&mut self, id: TriId, verts: [VertexId; 3]) -> Result<(), String> {
        let key = sorted3(verts);
        if key[0] == key[1] || key[1] == key[2] {
            return Err(format!("triangle {id} repeats a vertex"));
        }
        if self.index.contains_key(&key) {
            return Err(format!("triangle {id} duplicates another triangle"));
        }
        if id >= self.triangles.len() {
            self.triangles.resize(id + 1, None);
        }
        if self.triangles[id].is_some() {
            return Err(format!("triangle id {id} used twice"));
        }
        self.triangles[id] = Some(key);
        self.index.insert(key, id);
        Ok(())
    }

    pub fn add_segment(&mut self, a: VertexId, b: VertexId) -> Result<(), ComplexError> {
        for v in [a, b] {
            if v >= self.num_vertices {
                return Err(ComplexError::InvalidVertex(v));
            }
        }
        if a == b {
            return Err(ComplexError::Precondition("degenerate segment".into()));
        }
        self.segments.push([a.min(b), a.max(b)]);
        Ok(())
    }

    pub fn remove_triangle(&mut self, t: TriId) -> Result<[VertexId; 3], ComplexError> {
        let verts = self.triangle(t)?;
        self.triangles[t] = None;
        self.index.remove(&verts);
        Ok(verts)
    }

    /// Vertices of live triangle `t`, ascending.
    pub fn triangle(&self, t: TriId) -> Result<[VertexId; 3], ComplexError> {
        self.triangles
            .get(t)
            .copied()
            .flatten()
            .ok_or(ComplexError::InvalidTriangle(t))
    }

    pub fn is_live(&self, t: TriId) -> bool {
        matches!(self.triangles.get(t), Some(Some(_)))
    }

    pub fn find_triangle(&self, verts: [VertexId; 3]) -> Option<TriId> {
        self.index.get(&sorted3(verts)).copied()
    }

    /// Upper bound on triangle ids (live or removed).
    pub fn id_bound(&self) -> usize {
        self.triangles.len()
    }

    /// Live triangles in id order.
    pub fn triangles(&self) -> impl Iterator<Item = (TriId, [VertexId; 3])> + '_ {
        self.triangles
            .iter()
            .enumerate()
            .filter_map(|(t, v)| v.map(|v| (t, v)))
    }

    pub fn num_triangles(&self) -> usize {
        self.index.len()
    }

    pub fn segments(&self) -> &[[VertexId; 2]] {
        &self.segments
    }

    pub fn designate(&mut self, coord: usize, t: TriId) {
        self.designated.insert(coord, t);
    }

    /// Designated triangle per coordinate. Entries may point at removed
    /// triangles, which callers can detect with [`Complex::is_live`].
    pub fn designated(&self) -> &BTreeMap<usize, TriId> {
        &self.designated
    }

    pub fn designated_triangle(&self, coord: usize) -> Option<TriId> {
        self.designated.get(&coord).copied()
    }

    /// All edges (triangle sides and explicit segments), sorted.
    pub fn edges(&self) -> Vec<[VertexId; 2]> {
        let mut set: BTreeSet<[VertexId; 2]> = self.segments.iter().copied().collect();
        for (_, [a, b, c]) in self.triangles() {
            set.insert([a, b]);
            set.insert([a, c]);
            set.insert([b, c]);
        }
        set.into_iter().collect()
    }

    /// 1-based incidence-matrix column of each live triangle.
    pub fn columns(&self) -> HashMap<TriId, usize> {
        self.triangles()
            .enumerate()
            .map(|(k, (t, _))| (t, k + 1))
            .collect()
    }

    /// Live triangle id of every 1-based column.
    pub fn column_triangles(&self) -> Vec<TriId> {
        self.triangles().map(|(t, _)| t).collect()
    }

    /// Characteristic vector of a triangle set over the live columns.
    pub fn characteristic(&self, chain: &Chain) -> Result<BitVec, ComplexError> {
        let cols = self.columns();
        let mut v = BitVec::zeros(self.num_triangles());
        for &t in chain.iter() {
            let c = cols.get(&t).ok_or(ComplexError::InvalidTriangle(t))?;
            v.set(*c, true);
        }
        Ok(v)
    }

    /// Triangle set of a vector over the live columns.
    pub fn chain_of(&self, v: &BitVec) -> Chain {
        let ids = self.column_triangles();
        Chain(v.support().map(|c| ids[c - 1]).collect())
    }

    /// Checks internal consistency.
    pub fn check(&self) -> Result<(), ComplexError> {
        for (&coord, &t) in &self.designated {
            if t >= self.triangles.len() {
                return Err(ComplexError::Precondition(format!(
                    "coordinate {coord} designates unknown triangle {t}"
                )));
            }
        }
        Ok(())
    }
}

/// Edge x triangle incidence over GF(2): rows are the sorted edges, columns
/// the live triangles in id order.
pub fn incidence_matrix(complex: &Complex) -> BitMat {
    let edges = complex.edges();
    let row_of: HashMap<[VertexId; 2], usize> =
        edges.iter().enumerate().map(|(r, e)| (*e, r + 1)).collect();
    let mut m = BitMat::zeros(edges.len(), complex.num_triangles());
    for (c, (_, [a, b, cc])) in complex.triangles().enumerate() {
        for e in [[a, b], [a, cc], [b, cc]] {
            m.set(row_of[&e], c + 1, true);
        }
    }
    m
}

/// Basis of the cycle space (kernel of the incidence matrix).
pub fn cycle_space_of_complex(complex: &Complex) -> Vec<BitVec> {
    gf2::nullspace(&incidence_matrix(complex))
}

/// Whether every edge of the set has even degree within the set.
pub fn is_even_subset(complex: &Complex, chain: &Chain) -> Result<bool, ComplexError> {
    let mut degree: HashMap<[VertexId; 2], usize> = HashMap::new();
    for &t in chain.iter() {
        let [a, b, c] = complex.triangle(t)?;
        for e in [[a, b], [a, c], [b, c]] {
            *degree.entry(e).or_default() += 1;
        }
    }
    Ok(degree.values().all(|d| d % 2 == 0))
}

/// A set of triangle ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Chain(pub BTreeSet<TriId>);

impl Chain {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn iter(&self) -> impl Iterator<Item = &TriId> {
        self.0.iter()
    }

    pub fn insert(&mut self, t: TriId) -> bool {
        self.0.insert(t)
    }

    pub fn remove(&mut self, t: TriId) -> bool {
        self.0.remove(&t)
    }

    pub fn contains(&self, t: TriId) -> bool {
        self.0.contains(&t)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symmetric_difference(&self, other: &Chain) -> Chain {
        Chain(self.0.symmetric_difference(&other.0).copied().collect())
    }
}

impl FromIterator<TriId> for Chain {
    fn from_iter<I: IntoIterator<Item = TriId>>(iter: I) -> Self {
        Chain(iter.into_iter().collect())
    }
}

/// Vertex coordinates in `Q^3` or `Q^4`, indexed by vertex id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    dim: usize,
    points: Vec<RationalPoint>,
}

impl Embedding {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            points: Vec::new(),
        }
    }

    pub fn from_points(dim: usize, points: Vec<RationalPoint>) -> Self {
        Self { dim, points }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, v: VertexId) -> &RationalPoint {
        &self.points[v]
    }

    pub fn points(&self) -> &[RationalPoint] {
        &self.points
    }

    pub fn set_point(&mut self, v: VertexId, p: RationalPoint) {
        self.points[v] = p;
    }

    pub fn push(&mut self, p: RationalPoint) -> VertexId {
        self.points.push(p);
        self.points.len() - 1
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn triangle(&self, verts: [VertexId; 3]) -> [&RationalPoint; 3] {
        verts.map(|v| &self.points[v])
    }

    /// Applies `f` to every point.
    pub fn map(&self, dim: usize, f: impl Fn(&RationalPoint) -> RationalPoint) -> Embedding {
        Embedding {
            dim,
            points: self.points.iter().map(f).collect(),
        }
    }
}

/// A complex together with its embedding, with vertices looked up by point.
#[derive(Clone, Debug)]
pub struct Mesh {
    pub complex: Complex,
    pub embedding: Embedding,
    lookup: HashMap<RationalPoint, VertexId>,
}

impl Mesh {
    pub fn new(dim: usize) -> Self {
        Self {
            complex: Complex::new(),
            embedding: Embedding::new(dim),
            lookup: HashMap::new(),
        }
    }

    /// Vertex at `p`, created on first use.
    pub fn vertex_at(&mut self, p: RationalPoint) -> VertexId {
        assert_eq!(p.dim(), self.embedding.dim(), "point dimension");
        if let Some(&v) = self.lookup.get(&p) {
            return v;
        }
        let v = self.complex.add_vertex();
        let w = self.embedding.push(p.clone());
        debug_assert_eq!(v, w);
        self.lookup.insert(p, v);
        v
    }

    pub fn vertex_of(&self, p: &RationalPoint) -> Option<VertexId> {
        self.lookup.get(p).copied()
    }

    pub fn add_triangle_at(&mut self, pts: [RationalPoint; 3]) -> TriId {
        let verts = pts.map(|p| self.vertex_at(p));
        self.complex
            .add_triangle(verts)
            .expect("distinct points give distinct vertices")
    }

    pub fn triangle_points(&self, t: TriId) -> Result<[&RationalPoint; 3], ComplexError> {
        Ok(self.embedding.triangle(self.complex.triangle(t)?))
    }

    pub fn into_parts(self) -> (Complex, Embedding) {
        (self.complex, self.embedding)
    }

    pub fn from_parts(complex: Complex, embedding: Embedding) -> Self {
        let lookup = embedding
            .points()
            .iter()
            .enumerate()
            .map(|(v, p)| (p.clone(), v))
            .collect();
        Self {
            complex,
            embedding,
            lookup,
        }
    }
}

/// Writes the complex text format (`v`, `t`, `s`, `designate` lines).
pub fn write_complex_text(complex: &Complex, embedding: &Embedding) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# {} vertices, {} triangles, dimension {}",
        complex.num_vertices(),
        complex.num_triangles(),
        embedding.dim()
    );
    for (v, p) in embedding.points().iter().enumerate() {
        let _ = write!(out, "v {v}");
        for c in p.coords() {
            let _ = write!(out, " {}", format_rational(c));
        }
        out.push('\n');
    }
    for (t, [a, b, c]) in complex.triangles() {
        let _ = writeln!(out, "t {t} {a} {b} {c}");
    }
    for [a, b] in complex.segments() {
        let _ = writeln!(out, "s {a} {b}");
    }
    for (coord, t) in complex.designated() {
        let _ = writeln!(out, "designate {coord} {t}");
    }
    out
}

/// Parses the complex text format. Vertex ids must be `0..V` (any order);
/// triangle ids may have gaps, which read as removed triangles.
pub fn parse_complex_text(text: &str) -> Result<(Complex, Embedding), ComplexError> {
    let mut points: BTreeMap<usize, RationalPoint> = BTreeMap::new();
    let mut tris: Vec<(usize, usize, [usize; 3])> = Vec::new();
    let mut segs: Vec<(usize, [usize; 2])> = Vec::new();
    let mut designations: Vec<(usize, usize, usize)> = Vec::new();
    let mut dim = None;
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let err = |msg: String| ComplexError::Parse { line: line_no, msg };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| -> Result<usize, ComplexError> {
            s.parse().map_err(|_| err(format!("bad integer {s:?}")))
        };
        match tokens[0] {
            "v" => {
                if !(5..=6).contains(&tokens.len()) {
                    return Err(err("vertex line needs an id and 3 or 4 coordinates".into()));
                }
                let id = num(tokens[1])?;
                let coords = tokens[2..]
                    .iter()
                    .map(|s| parse_rational(s).map_err(|e| err(e.to_string())))
                    .collect::<Result<Vec<_>, _>>()?;
                match dim {
                    None => dim = Some(coords.len()),
                    Some(d) if d != coords.len() => {
                        return Err(err(format!("expected {d} coordinates")))
                    }
                    _ => {}
                }
                if points.insert(id, RationalPoint::new(coords)).is_some() {
                    return Err(err(format!("vertex id {id} used twice")));
                }
            }
            "t" => {
                if tokens.len() != 5 {
                    return Err(err("triangle line needs an id and 3 vertices".into()));
                }
                tris.push((
                    line_no,
                    num(tokens[1])?,
                    [num(tokens[2])?, num(tokens[3])?, num(tokens[4])?],
                ));
            }
            "s" => {
                if tokens.len() != 3 {
                    return Err(err("segment line needs 2 vertices".into()));
                }
                segs.push((line_no, [num(tokens[1])?, num(tokens[2])?]));
            }
            "designate" => {
                if tokens.len() != 3 {
                    return Err(err("designate line needs a coordinate and a triangle".into()));
                }
                designations.push((line_no, num(tokens[1])?, num(tokens[2])?));
            }
            other => return Err(err(format!("unknown record {other:?}"))),
        }
    }
    let nv = points.len();
    if let Some((&id, _)) = points.iter().next_back() {
        if id + 1 != nv {
            return Err(ComplexError::Parse {
                line: 0,
                msg: "vertex ids must be 0..V without gaps".into(),
            });
        }
    }
    let mut complex = Complex::new();
    for _ in 0..nv {
        complex.add_vertex();
    }
    for (line, id, verts) in tris {
        if let Some(&v) = verts.iter().find(|&&v| v >= nv) {
            return Err(ComplexError::Parse {
                line,
                msg: format!("unknown vertex {v}"),
            });
        }
        complex
            .insert_triangle_at(id, verts)
            .map_err(|msg| ComplexError::Parse { line, msg })?;
    }
    for (line, [a, b]) in segs {
        complex
            .add_segment(a, b)
            .map_err(|e| ComplexError::Parse {
                line,
                msg: e.to_string(),
            })?;
    }
    for (_, coord, t) in designations {
        complex.designate(coord, t);
    }
    let embedding = Embedding::from_points(dim.unwrap_or(3), points.into_values().collect());
    Ok((complex, embedding))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::octahedron;

    #[test]
    fn single_triangle_incidence() {
        let mut c = Complex::new();
        for _ in 0..3 {
            c.add_vertex();
        }
        c.add_triangle([0, 1, 2]).unwrap();
        let m = incidence_matrix(&c);
        assert_eq!((m.num_rows(), m.num_cols()), (3, 1));
        assert_eq!(m.column(1).weight(), 3);
        assert!(cycle_space_of_complex(&c).is_empty());
    }

    #[test]
    fn two_triangles_sharing_an_edge() {
        let mut c = Complex::new();
        for _ in 0..4 {
            c.add_vertex();
        }
        c.add_triangle([0, 1, 2]).unwrap();
        c.add_triangle([1, 2, 3]).unwrap();
        let m = incidence_matrix(&c);
        assert_eq!((m.num_rows(), m.num_cols()), (5, 2));
        let full_rows = m.rows().iter().filter(|r| r.weight() == 2).count();
        assert_eq!(full_rows, 1);
    }

    #[test]
    fn octahedron_every_edge_in_two_faces() {
        let (c, _) = octahedron().into_parts();
        let m = incidence_matrix(&c);
        assert_eq!((m.num_rows(), m.num_cols()), (12, 8));
        assert!(m.rows().iter().all(|r| r.weight() == 2));
        let all: Chain = c.triangles().map(|(t, _)| t).collect();
        assert!(is_even_subset(&c, &all).unwrap());
        assert!(is_even_subset(&c, &Chain::new()).unwrap());
        assert!(!is_even_subset(&c, &[0].into_iter().collect()).unwrap());
        assert!(is_even_subset(&c, &[99].into_iter().collect()).is_err());
    }

    #[test]
    fn disjoint_octahedra_have_two_cycles() {
        let (a, ea) = octahedron().into_parts();
        let mut mesh = Mesh::new(3);
        for shift in [0, 10] {
            for (_, verts) in a.triangles() {
                let pts = ea.triangle(verts).map(|p| {
                    let mut q = p.clone();
                    q = &q + &RationalPoint::from_ints(&[shift, 0, 0]);
                    q
                });
                mesh.add_triangle_at(pts);
            }
        }
        assert_eq!(cycle_space_of_complex(&mesh.complex).len(), 2);
    }

    #[test]
    fn removal_keeps_ids_stable() {
        let (mut c, _) = octahedron().into_parts();
        c.remove_triangle(3).unwrap();
        assert!(!c.is_live(3));
        assert_eq!(c.num_triangles(), 7);
        assert_eq!(c.column_triangles()[3], 4);
        assert!(c.triangle(3).is_err());
        assert!(cycle_space_of_complex(&c).is_empty());
    }

    #[test]
    fn text_round_trip() {
        let (mut c, e) = octahedron().into_parts();
        c.designate(1, 0);
        c.remove_triangle(5).unwrap();
        let text = write_complex_text(&c, &e);
        let (c2, e2) = parse_complex_text(&text).unwrap();
        assert_eq!(e2, e);
        assert_eq!(c2.triangles().collect::<Vec<_>>(), c.triangles().collect::<Vec<_>>());
        assert_eq!(c2.designated(), c.designated());
        assert!(!c2.is_live(5));
    }

    #[test]
    fn text_errors() {
        assert!(parse_complex_text("v 0 1 2\n").is_err());
        assert!(parse_complex_text("v 0 0 0 0\nv 2 1 0 0\n").is_err());
        assert!(parse_complex_text("v 0 0 0 0\nt 0 0 0 1\n").is_err());
        assert!(parse_complex_text("q 1\n").is_err());
        assert!(parse_complex_text("v 0 1/0 0 0\n").is_err());
    }
}
