//! Multigraphs, their cut and cycle spaces, and graph realization of 2-bases.
//!
//! Edge `i` of a graph corresponds to coordinate `i` of its codes.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::code::{coordinate_load, LinearCode};
use crate::error::GraphError;
use crate::gf2::{self, BitVec};

/// Label of the extra vertex added by [`graph_from_two_basis`].
pub const APEX_LABEL: &str = "u";

/// An undirected multigraph; loops and parallel edges are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph {
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    pub fn new(labels: Vec<String>) -> Self {
        Self {
            labels,
            edges: Vec::new(),
        }
    }

    /// Graph on vertices labelled `0..n`.
    pub fn with_vertices(n: usize) -> Self {
        Self::new((0..n).map(|v| v.to_string()).collect())
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::with_vertices(n);
        for a in 0..n {
            for b in (a + 1)..n {
                g.add_edge(a, b);
            }
        }
        g
    }

    pub fn complete_bipartite(p: usize, q: usize) -> Self {
        let mut g = Self::with_vertices(p + q);
        for a in 0..p {
            for b in 0..q {
                g.add_edge(a, p + b);
            }
        }
        g
    }

    /// Appends an edge and returns its 1-based coordinate.
    pub fn add_edge(&mut self, a: usize, b: usize) -> usize {
        assert!(a < self.labels.len() && b < self.labels.len());
        self.edges.push((a.min(b), a.max(b)));
        self.edges.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Edge endpoints by 0-based edge position (coordinate minus one).
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Incidence vector of the edges at `v`; a loop is never in a cut.
    pub fn star(&self, v: usize) -> BitVec {
        BitVec::from_support(
            self.edges.len(),
            self.edges
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| a != b && (a == v || b == v))
                .map(|(k, _)| k + 1),
        )
    }

    /// Number of connected components.
    pub fn components(&self) -> usize {
        let mut seen = vec![false; self.labels.len()];
        let adj = self.adjacency();
        let mut count = 0;
        for s in 0..self.labels.len() {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &(w, _) in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        count
    }

    /// `adj[v]` lists `(neighbour, edge position)` in edge order.
    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.labels.len()];
        for (k, &(a, b)) in self.edges.iter().enumerate() {
            if a != b {
                adj[a].push((b, k));
                adj[b].push((a, k));
            }
        }
        adj
    }

    /// Parses the graph text format: a header `V <count>` (vertices `0..count`)
    /// or `V <label> <label> ...`, then one `a b` line per edge.
    pub fn parse_text(text: &str) -> Result<Self, GraphError> {
        let mut graph: Option<MultiGraph> = None;
        let mut index: HashMap<String, usize> = HashMap::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| GraphError::Parse { line: k + 1, msg };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match &mut graph {
                None => {
                    if tokens[0] != "V" {
                        return Err(err("expected header line `V <count>`".into()));
                    }
                    let labels: Vec<String> = match tokens[1..] {
                        [] => return Err(err("missing vertex count".into())),
                        [count] => {
                            let n: usize = count
                                .parse()
                                .map_err(|_| err(format!("bad vertex count {count:?}")))?;
                            (0..n).map(|v| v.to_string()).collect()
                        }
                        ref many => many.iter().map(|s| s.to_string()).collect(),
                    };
                    for (v, l) in labels.iter().enumerate() {
                        if index.insert(l.clone(), v).is_some() {
                            return Err(err(format!("duplicate vertex label {l:?}")));
                        }
                    }
                    graph = Some(MultiGraph::new(labels));
                }
                Some(g) => {
                    let [a, b] = tokens[..] else {
                        return Err(err("edge line needs exactly two labels".into()));
                    };
                    let va = *index.get(a).ok_or_else(|| err(format!("unknown vertex {a:?}")))?;
                    let vb = *index.get(b).ok_or_else(|| err(format!("unknown vertex {b:?}")))?;
                    g.add_edge(va, vb);
                }
            }
        }
        graph.ok_or(GraphError::Parse {
            line: 0,
            msg: "missing header line".into(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("V");
        let numeric = self
            .labels
            .iter()
            .enumerate()
            .all(|(v, l)| *l == v.to_string());
        if numeric {
            let _ = write!(out, " {}", self.labels.len());
        } else {
            for l in &self.labels {
                let _ = write!(out, " {l}");
            }
        }
        out.push('\n');
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "{} {}", self.labels[a], self.labels[b]);
        }
        out
    }
}

/// Cut space of `g` with the raw vertex-star generators.
///
/// The generators are the stars of every vertex except the last one; they
/// may be dependent when `g` is disconnected, but every coordinate is
/// nonzero in at most two of them.
pub fn cut_space(g: &MultiGraph) -> Result<(LinearCode, Vec<BitVec>), GraphError> {
    let n = g.num_vertices();
    if n == 0 {
        return Err(GraphError::Empty);
    }
    let raw: Vec<BitVec> = (0..n - 1).map(|v| g.star(v)).collect();
    let code = LinearCode::from_rows(g.num_edges(), &raw).map_err(|e| match e {
        crate::error::CodeError::Gf2(e) => GraphError::Gf2(e),
        other => unreachable!("{other}"),
    })?;
    Ok((code, raw))
}

/// Cycle space from the fundamental cycles of a BFS spanning forest.
pub fn cycle_space(g: &MultiGraph) -> LinearCode {
    let m = g.num_edges();
    let nv = g.num_vertices();
    let adj = g.adjacency();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; nv];
    let mut depth = vec![usize::MAX; nv];
    let mut tree_edge = vec![false; m];
    for root in 0..nv {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in &adj[v] {
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent[w] = Some((v, e));
                    tree_edge[e] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut rows = Vec::new();
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if tree_edge[e] {
            continue;
        }
        let mut cyc = BitVec::unit(m, e + 1);
        let (mut x, mut y) = (a, b);
        while x != y {
            if depth[x] < depth[y] {
                std::mem::swap(&mut x, &mut y);
            }
            let (p, pe) = parent[x].expect("non-root has a parent");
            cyc.flip(pe + 1);
            x = p;
        }
        rows.push(cyc);
    }
    LinearCode::from_rows(m, &rows).expect("consistent lengths")
}

/// Builds a multigraph whose cut space is spanned by the 2-basis `basis`.
///
/// Vertices are `v1..vd` (one per basis vector) followed by the apex `u`.
/// Coordinate `i` becomes a loop at `u`, an edge `(v_l, u)`, or an edge
/// `(v_l, v_k)` according to how many basis vectors are nonzero there.
pub fn graph_from_two_basis(basis: &[BitVec], len: usize) -> Result<MultiGraph, GraphError> {
    if let Some(b) = basis.iter().find(|b| b.len() != len) {
        return Err(GraphError::Gf2(crate::error::Gf2Error::LengthMismatch(
            len,
            b.len(),
        )));
    }
    if gf2::rank_of(basis) != basis.len() {
        return Err(GraphError::Dependent);
    }
    let load = coordinate_load(basis, len);
    if let Some(i) = load.iter().position(|&l| l > 2) {
        return Err(GraphError::LoadExceeded(i + 1));
    }
    let d = basis.len();
    let mut labels: Vec<String> = (1..=d).map(|k| format!("v{k}")).collect();
    labels.push(APEX_LABEL.to_string());
    let mut g = MultiGraph::new(labels);
    let apex = d;
    for i in 1..=len {
        let owners: Vec<usize> = (0..d).filter(|&k| basis[k].get(i)).collect();
        match owners[..] {
            [] => g.add_edge(apex, apex),
            [l] => g.add_edge(l, apex),
            [l, k] => g.add_edge(l, k),
            _ => unreachable!("load checked above"),
        };
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::find_two_basis;

    fn bv(s: &str) -> BitVec {
        s.parse().unwrap()
    }

    #[test]
    fn triangle_cut_space() {
        let g = MultiGraph::complete(3);
        let (code, raw) = cut_space(&g).unwrap();
        assert_eq!((code.len(), code.dim()), (3, 2));
        // edges: (0,1), (0,2), (1,2)
        assert_eq!(raw, vec![bv("110"), bv("101")]);
    }

    #[test]
    fn loop_lies_in_no_cut() {
        let mut g = MultiGraph::new(vec!["u".into()]);
        g.add_edge(0, 0);
        let (code, _) = cut_space(&g).unwrap();
        assert_eq!((code.len(), code.dim()), (1, 0));
    }

    #[test]
    fn star_cut_space_is_everything() {
        // centre last, so the leaves' stars are unit vectors
        let g = MultiGraph {
            labels: vec!["a".into(), "b".into(), "c".into(), "centre".into()],
            edges: vec![(0, 3), (1, 3), (2, 3)],
        };
        let (code, raw) = cut_space(&g).unwrap();
        assert_eq!(code.dim(), 3);
        assert_eq!(raw, vec![bv("100"), bv("010"), bv("001")]);
    }

    #[test]
    fn empty_graph_is_rejected() {
        assert_eq!(cut_space(&MultiGraph::with_vertices(0)), Err(GraphError::Empty));
    }

    #[test]
    fn cycle_space_examples() {
        let k3 = cycle_space(&MultiGraph::complete(3));
        assert_eq!(k3.dim(), 1);
        assert_eq!(k3.basis()[0], bv("111"));
        let mut path = MultiGraph::with_vertices(4);
        path.add_edge(0, 1);
        path.add_edge(1, 2);
        path.add_edge(2, 3);
        assert!(cycle_space(&path).is_zero());
        let k5 = cycle_space(&MultiGraph::complete(5));
        assert_eq!((k5.len(), k5.dim()), (10, 10 - 5 + 1));
    }

    #[test]
    fn loops_and_parallel_edges_in_cycle_space() {
        let mut g = MultiGraph::with_vertices(2);
        g.add_edge(0, 0);
        g.add_edge(0, 1);
        g.add_edge(0, 1);
        let c = cycle_space(&g);
        assert_eq!(c.dim(), 2);
        assert!(c.contains(&bv("100")));
        assert!(c.contains(&bv("011")));
    }

    #[test]
    fn realization_examples() {
        let g = graph_from_two_basis(&[bv("110"), bv("011")], 3).unwrap();
        assert_eq!(g.labels(), &["v1", "v2", "u"]);
        assert_eq!(g.edges(), &[(0, 2), (0, 1), (1, 2)]);
        let (code, raw) = cut_space(&g).unwrap();
        assert_eq!(raw, vec![bv("110"), bv("011")]);
        assert_eq!(code.dim(), 2);

        let loops = graph_from_two_basis(&[], 2).unwrap();
        assert_eq!(loops.edges(), &[(0, 0), (0, 0)]);
        assert!(cut_space(&loops).unwrap().0.is_zero());

        let one = graph_from_two_basis(&[bv("1")], 1).unwrap();
        assert_eq!(one.edges(), &[(0, 1)]);
    }

    #[test]
    fn realization_errors() {
        assert_eq!(
            graph_from_two_basis(&[bv("10"), bv("11"), bv("01")], 2),
            Err(GraphError::Dependent)
        );
        assert_eq!(
            graph_from_two_basis(&[bv("100"), bv("110"), bv("111")], 3),
            Err(GraphError::LoadExceeded(1))
        );
    }

    #[test]
    fn nonplanar_cycle_spaces_have_no_two_basis() {
        assert!(!find_two_basis(&cycle_space(&MultiGraph::complete(5))).found);
        assert!(!find_two_basis(&cycle_space(&MultiGraph::complete_bipartite(3, 3))).found);
        assert!(find_two_basis(&cycle_space(&MultiGraph::complete(4))).found);
    }

    #[test]
    fn text_format() {
        let g = MultiGraph::parse_text("# K3 with a loop\nV 3\n0 1\n1 2\n0 2\n2 2\n").unwrap();
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (0, 2), (2, 2)]);
        assert_eq!(MultiGraph::parse_text(&g.to_text()).unwrap(), g);
        let named = MultiGraph::parse_text("V a b u\na u\nb a\n").unwrap();
        assert_eq!(named.edges(), &[(0, 2), (0, 1)]);
        assert_eq!(MultiGraph::parse_text(&named.to_text()).unwrap(), named);
        assert!(MultiGraph::parse_text("V 2\n0 5\n").is_err());
        assert!(MultiGraph::parse_text("0 1\n").is_err());
        assert!(MultiGraph::parse_text("").is_err());
    }
}
