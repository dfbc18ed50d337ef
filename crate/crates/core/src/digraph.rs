//! The digraph D(A) of a matrix: vertices v1..vn, an edge (vi, vj) for every
//! off-diagonal nonzero a_ij. Simple-path enumeration, reachability, and
//! irreducibility live here.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matcore::{IndexSet, RationalMatrix};

/// Default cap on the number of simple paths an enumeration may return
/// before failing with [`Error::PathExplosion`].
pub const DEFAULT_PATH_CAP: usize = 1_000_000;

/// Directed graph on vertices `0..n` with no self-loops, adjacency lists
/// ascending.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Digraph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl Digraph {
    /// D(A): an edge `(i, j)` for every `i != j` with `a_ij != 0`. Diagonal
    /// entries never create edges.
    pub fn of_matrix(a: &RationalMatrix) -> Self {
        let n = a.order();
        let adj = (0..n)
            .map(|i| (0..n).filter(|&j| j != i && !a.get(i, j).is_zero()).collect())
            .collect();
        Digraph { n, adj }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::InvalidIndex {
                    index: i.max(j),
                    order: n,
                });
            }
            if i == j {
                return Err(Error::InvalidPath { from: i, to: j });
            }
            adj[i].push(j);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Digraph { n, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&j).is_ok()
    }

    /// Edges in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(i, js)| js.iter().map(move |&j| (i, j)))
    }

    pub fn reverse(&self) -> Self {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (i, j) in self.edges() {
            adj[j].push(i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Digraph { n: self.n, adj }
    }

    /// All simple directed paths from `from` to `to`, in lexicographic order
    /// of their vertex sequences. Fails with [`Error::PathExplosion`] as soon
    /// as the true count exceeds `cap`; a partial enumeration is never
    /// returned.
    pub fn enumerate_simple_paths(&self, from: usize, to: usize, cap: usize) -> Result<Vec<Path>> {
        assert!(from < self.n && to < self.n, "vertex out of range");
        assert_ne!(from, to, "path endpoints must differ");
        let mut out = Vec::new();
        let mut current = vec![from];
        let mut on_path = vec![false; self.n];
        on_path[from] = true;
        // (vertex, cursor into its adjacency list)
        let mut stack = vec![(from, 0usize)];
        while let Some(&mut (v, ref mut cursor)) = stack.last_mut() {
            if let Some(&w) = self.adj[v].get(*cursor) {
                *cursor += 1;
                if w == to {
                    if out.len() == cap {
                        return Err(Error::PathExplosion { cap });
                    }
                    let mut vertices = current.clone();
                    vertices.push(to);
                    out.push(Path { vertices });
                } else if !on_path[w] {
                    on_path[w] = true;
                    current.push(w);
                    stack.push((w, 0));
                }
            } else {
                stack.pop();
                on_path[v] = false;
                current.pop();
            }
        }
        Ok(out)
    }

    /// True iff a directed path `from -> to` exists. Agrees with
    /// [`Self::enumerate_simple_paths`] being nonempty, in polynomial time.
    pub fn reachable(&self, from: usize, to: usize) -> bool {
        assert!(from < self.n && to < self.n, "vertex out of range");
        assert_ne!(from, to, "path endpoints must differ");
        let mut seen = vec![false; self.n];
        let mut queue = vec![from];
        seen[from] = true;
        while let Some(v) = queue.pop() {
            for &w in &self.adj[v] {
                if w == to {
                    return true;
                }
                if !seen[w] {
                    seen[w] = true;
                    queue.push(w);
                }
            }
        }
        false
    }

    pub fn is_strongly_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        full_sweep(self, 0) && full_sweep(&self.reverse(), 0)
    }

    /// DOT rendering, one line per edge (`vi -> vj;`); isolated vertices get
    /// a bare node line so every vertex appears in the figure.
    pub fn to_dot(&self) -> String {
        let mut incident = vec![false; self.n];
        for (i, j) in self.edges() {
            incident[i] = true;
            incident[j] = true;
        }
        let mut out = String::from("digraph {\n");
        for v in 0..self.n {
            if !incident[v] {
                let _ = writeln!(out, "  v{};", v + 1);
            }
        }
        for (i, j) in self.edges() {
            let _ = writeln!(out, "  v{} -> v{};", i + 1, j + 1);
        }
        out.push_str("}\n");
        out
    }
}

fn full_sweep(g: &Digraph, start: usize) -> bool {
    let mut seen = vec![false; g.n];
    let mut queue = vec![start];
    seen[start] = true;
    let mut count = 1;
    while let Some(v) = queue.pop() {
        for &w in &g.adj[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                queue.push(w);
            }
        }
    }
    count == g.n
}

/// Irreducibility via the digraph criterion: strong connectivity of D(A),
/// with the order-1 convention that only the zero matrix of order 1 is
/// reducible. The 1x1 case needs the matrix entry, which D(A) does not
/// carry, hence a matrix-level function.
pub fn is_irreducible(a: &RationalMatrix) -> bool {
    if a.order() == 1 {
        return !a.get(0, 0).is_zero();
    }
    Digraph::of_matrix(a).is_strongly_connected()
}

/// A simple directed path: distinct vertices, each consecutive pair an edge
/// of the digraph that produced it. Serialized form is a 1-based vertex
/// array.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Path {
    vertices: Vec<usize>,
}

impl Path {
    /// Validates distinctness and that consecutive pairs are edges of `g`.
    pub fn new(vertices: Vec<usize>, g: &Digraph) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        for &v in &vertices {
            if v >= g.vertex_count() {
                return Err(Error::InvalidIndex {
                    index: v,
                    order: g.vertex_count(),
                });
            }
        }
        for w in vertices.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(Error::InvalidPath {
                    from: w[0],
                    to: w[1],
                });
            }
        }
        let mut sorted = vertices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != vertices.len() {
            return Err(Error::InvalidPath {
                from: vertices[0],
                to: *vertices.last().unwrap(),
            });
        }
        Ok(Path { vertices })
    }

    /// The trivial single-vertex path.
    pub fn single(v: usize) -> Self {
        Path { vertices: vec![v] }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// l(p): the number of edges.
    pub fn len_edges(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn first(&self) -> usize {
        self.vertices[0]
    }

    pub fn last(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    /// V(p): the vertices of a digraph of order `n` NOT on this path.
    pub fn complement(&self, n: usize) -> Result<IndexSet> {
        IndexSet::new(self.vertices.clone(), n).map(|s| s.complement(n))
    }
}

impl Serialize for Path {
    fn serialize<S: Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.vertices.len()))?;
        for v in &self.vertices {
            seq.serialize_element(&(*v as u64 + 1))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Path {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> core::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let one_based = Vec::<u64>::deserialize(deserializer)?;
        if one_based.is_empty() {
            return Err(D::Error::custom("a path has at least one vertex"));
        }
        let mut vertices = Vec::with_capacity(one_based.len());
        for v in &one_based {
            if *v == 0 {
                return Err(D::Error::custom("vertices are 1-based; got 0"));
            }
            vertices.push((*v - 1) as usize);
        }
        let mut sorted = vertices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != vertices.len() {
            return Err(D::Error::custom("path vertices must be distinct"));
        }
        Ok(Path { vertices })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example1() -> RationalMatrix {
        RationalMatrix::from_rows([[1, 1, 1], [0, 1, 0], [0, 1, 1]])
    }

    fn example2() -> RationalMatrix {
        RationalMatrix::from_rows([[5, -1, -1], [0, 5, 0], [0, -1, 5]])
    }

    fn paths(g: &Digraph, from: usize, to: usize) -> Vec<Vec<usize>> {
        g.enumerate_simple_paths(from, to, DEFAULT_PATH_CAP)
            .unwrap()
            .into_iter()
            .map(|p| p.vertices().to_vec())
            .collect()
    }

    #[test]
    fn digraph_of_matrix_ignores_diagonal() {
        let g = Digraph::of_matrix(&example1());
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 2), (2, 1)]);
        // same nonzero pattern, same digraph
        assert_eq!(g, Digraph::of_matrix(&example2()));
        let d = RationalMatrix::from_rows([[3, 0], [0, 7]]);
        assert_eq!(Digraph::of_matrix(&d).edges().count(), 0);
    }

    #[test]
    fn enumerates_all_simple_paths_lexicographically() {
        let g = Digraph::of_matrix(&example1());
        assert_eq!(paths(&g, 0, 1), vec![vec![0, 1], vec![0, 2, 1]]);
        assert_eq!(paths(&g, 1, 0), Vec::<Vec<usize>>::new());

        let complete =
            Digraph::from_edges(3, &[(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]).unwrap();
        assert_eq!(paths(&complete, 0, 2), vec![vec![0, 1, 2], vec![0, 2]]);
    }

    #[test]
    fn path_cap_is_enforced_exactly() {
        let complete =
            Digraph::from_edges(3, &[(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]).unwrap();
        assert_eq!(
            complete.enumerate_simple_paths(0, 2, 1),
            Err(Error::PathExplosion { cap: 1 })
        );
        assert!(complete.enumerate_simple_paths(0, 2, 2).is_ok());
    }

    #[test]
    fn reachability() {
        let g = Digraph::of_matrix(&example1());
        assert!(g.reachable(0, 1));
        assert!(!g.reachable(1, 2));
        let chain = Digraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(chain.reachable(0, 3));
        assert!(!chain.reachable(3, 0));
    }

    #[test]
    fn irreducibility() {
        assert!(!is_irreducible(&example1()));
        let cycle = RationalMatrix::from_rows([[1, 1, 0], [0, 1, 1], [1, 0, 1]]);
        assert!(is_irreducible(&cycle));
        assert!(!is_irreducible(&RationalMatrix::from_rows([[0]])));
        assert!(is_irreducible(&RationalMatrix::from_rows([[7]])));
    }

    #[test]
    fn path_validation() {
        let g = Digraph::of_matrix(&example1());
        assert!(Path::new(vec![0, 2, 1], &g).is_ok());
        assert_eq!(
            Path::new(vec![1, 0], &g),
            Err(Error::InvalidPath { from: 1, to: 0 })
        );
        let p = Path::new(vec![0, 2], &g).unwrap();
        assert_eq!(p.len_edges(), 1);
        assert_eq!(p.complement(3).unwrap().as_slice(), &[1]);
        assert_eq!(Path::single(2).len_edges(), 0);
    }

    #[test]
    fn dot_rendering() {
        let g = Digraph::of_matrix(&example1());
        assert_eq!(
            g.to_dot(),
            "digraph {\n  v1 -> v2;\n  v1 -> v3;\n  v3 -> v2;\n}\n"
        );
        let lonely = Digraph::from_edges(2, &[]).unwrap();
        assert_eq!(lonely.to_dot(), "digraph {\n  v1;\n  v2;\n}\n");
    }
}
