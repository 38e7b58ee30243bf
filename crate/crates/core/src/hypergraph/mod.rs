//! General (non-uniform) hypergraphs.
//!
//! A [`Hypergraph`] is a vertex count plus a set of edges, each edge a set of
//! at least two distinct vertices. Edges may have different sizes; the set of
//! sizes that occur is the edge-type set `R`, its maximum the rank `k` and its
//! minimum the corank `c`. Values are immutable after construction and edges
//! are kept in canonical order (by size, then lexicographically), so every
//! reduction over edges runs in the same order for equal hypergraphs.

mod format;
mod generate;

pub use format::{parse_hypergraph, serialize_hypergraph};
pub use generate::{complete_r_graph, random_r_graph};

use std::borrow::Borrow;
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};

/// A hyperedge: sorted, distinct vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge(Vec<usize>);

impl Edge {
    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }
}

impl Borrow<[usize]> for Edge {
    fn borrow(&self) -> &[usize] {
        &self.0
    }
}

impl Ord for Edge {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Edge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Clone)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Edge>,
    lookup: HashSet<Edge>,
    incidence: Vec<Vec<usize>>,
    edge_types: BTreeSet<usize>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

impl Hypergraph {
    /// Builds a validated hypergraph. Vertex order inside an edge does not
    /// matter; edge order does not matter either (edges are canonicalized).
    pub fn new<I, E>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        if n == 0 {
            return Err(Error::NoVertices);
        }
        let mut canonical = Vec::new();
        for raw in edges {
            canonical.push(validate_edge(n, raw.as_ref())?);
        }
        canonical.sort();
        let mut lookup = HashSet::with_capacity(canonical.len());
        for e in &canonical {
            if !lookup.insert(e.clone()) {
                return Err(Error::DuplicateEdge { edge: e.0.clone() });
            }
        }

        let mut incidence = vec![Vec::new(); n];
        let mut edge_types = BTreeSet::new();
        for (idx, e) in canonical.iter().enumerate() {
            edge_types.insert(e.size());
            for &v in e.vertices() {
                incidence[v].push(idx);
            }
        }

        Ok(Self {
            n,
            edges: canonical,
            lookup,
            incidence,
            edge_types,
        })
    }

    /// `n` isolated vertices.
    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, std::iter::empty::<Vec<usize>>())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn is_edgeless(&self) -> bool {
        self.edges.is_empty()
    }

    /// Maximum edge size, `None` for an edgeless hypergraph.
    pub fn rank(&self) -> Option<usize> {
        self.edge_types.last().copied()
    }

    /// Minimum edge size, `None` for an edgeless hypergraph.
    pub fn corank(&self) -> Option<usize> {
        self.edge_types.first().copied()
    }

    /// The edge-type set `R`.
    pub fn edge_types(&self) -> &BTreeSet<usize> {
        &self.edge_types
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.incidence.iter().map(Vec::len).collect()
    }

    /// Indices (into [`Hypergraph::edges`]) of the edges containing `v`.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    /// Whether the given vertex set is an edge. The slice need not be sorted.
    pub fn contains_edge(&self, vertices: &[usize]) -> bool {
        if vertices.windows(2).all(|w| w[0] < w[1]) {
            self.lookup.contains(vertices)
        } else {
            let mut sorted = vertices.to_vec();
            sorted.sort_unstable();
            self.lookup.contains(sorted.as_slice())
        }
    }

    /// Two vertices are adjacent when some edge contains both.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        if u == v {
            return false;
        }
        let (short, other) = if self.incidence[u].len() <= self.incidence[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.incidence[short]
            .iter()
            .any(|&idx| self.edges[idx].contains(other))
    }

    /// The multiset `R(v)` of sizes of edges containing `v`, sorted ascending.
    pub fn edge_type_multiset(&self, v: usize) -> Result<Vec<usize>> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        let mut sizes: Vec<usize> = self.incidence[v]
            .iter()
            .map(|&idx| self.edges[idx].size())
            .collect();
        sizes.sort_unstable();
        Ok(sizes)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    /// Isolated vertices form singleton components.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        for e in &self.edges {
            let verts = e.vertices();
            let root = find(&mut parent, verts[0]);
            for &v in &verts[1..] {
                let r = find(&mut parent, v);
                if r != root {
                    // keep the smaller id as root so components come out ordered
                    let (lo, hi) = if r < root { (r, root) } else { (root, r) };
                    parent[hi] = lo;
                }
            }
        }
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for v in 0..self.n {
            let r = find(&mut parent, v);
            by_root[r].push(v);
        }
        let mut comps: Vec<Vec<usize>> = by_root.into_iter().filter(|c| !c.is_empty()).collect();
        comps.sort_by_key(|c| c[0]);
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// True iff the edge set is every `s`-subset of the vertex set for each
    /// `s` in `R`. An edgeless hypergraph is vacuously complete.
    pub fn is_complete_r_graph(&self) -> bool {
        let expected: Option<u128> = self
            .edge_types
            .iter()
            .try_fold(0u128, |acc, &s| acc.checked_add(binomial(self.n, s)?));
        // edges are distinct subsets with sizes in R, so counting suffices
        expected == Some(self.edges.len() as u128)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: perm.len(),
            });
        }
        let edges: Vec<Vec<usize>> = self
            .edges
            .iter()
            .map(|e| e.vertices().iter().map(|&v| perm[v]).collect())
            .collect();
        Self::new(self.n, edges)
    }

    /// Deletes `v` and every edge containing it; vertices above `v` shift down.
    pub fn without_vertex(&self, v: usize) -> Result<Self> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        if self.n == 1 {
            return Err(Error::NoVertices);
        }
        let edges: Vec<Vec<usize>> = self
            .edges
            .iter()
            .filter(|e| !e.contains(v))
            .map(|e| {
                e.vertices()
                    .iter()
                    .map(|&u| if u > v { u - 1 } else { u })
                    .collect()
            })
            .collect();
        Self::new(self.n - 1, edges)
    }

    /// Disjoint union; `other`'s vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Hypergraph) -> Self {
        let shift = self.n;
        let edges = self.edges.iter().map(|e| e.vertices().to_vec()).chain(
            other
                .edges
                .iter()
                .map(|e| e.vertices().iter().map(|&v| v + shift).collect()),
        );
        Self::new(self.n + other.n, edges.collect::<Vec<Vec<usize>>>())
            .expect("union of valid hypergraphs is valid")
    }

    /// Adds one edge, returning a new hypergraph.
    pub fn with_edge(&self, edge: &[usize]) -> Result<Self> {
        let edges = self
            .edges
            .iter()
            .map(|e| e.vertices().to_vec())
            .chain(std::iter::once(edge.to_vec()));
        Self::new(self.n, edges.collect::<Vec<Vec<usize>>>())
    }
}

fn validate_edge(n: usize, raw: &[usize]) -> Result<Edge> {
    if let Some(&v) = raw.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    let mut sorted = raw.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::RepeatedVertex { vertex: w[0] });
    }
    if sorted.len() < 2 {
        return Err(Error::EdgeTooSmall { edge: sorted });
    }
    Ok(Edge(sorted))
}

/// Exact binomial coefficient, `None` on overflow.
pub fn binomial(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}
