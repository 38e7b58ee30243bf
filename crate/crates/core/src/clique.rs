//! Cliques of R-graphs.
//!
//! A vertex set `S` is a clique when, for every edge type `s` with
//! `s <= |S|`, every `s`-subset of `S` is an edge. Sets smaller than the
//! corank are therefore cliques vacuously, and every subset of a clique is a
//! clique, which is what the branch-and-bound below relies on. An edgeless
//! hypergraph has clique number 1 by convention.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

pub const DEFAULT_NODE_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueResult {
    /// Sorted clique vertices.
    pub vertices: Vec<usize>,
    pub omega: usize,
    pub nodes_explored: u64,
    /// The search was exhausted, so no larger clique exists.
    pub optimal: bool,
}

pub fn is_clique(g: &Hypergraph, set: &[usize]) -> Result<bool> {
    if let Some(&v) = set.iter().find(|&&v| v >= g.n()) {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: g.n(),
        });
    }
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    Ok(g.edge_types()
        .iter()
        .take_while(|&&s| s <= sorted.len())
        .all(|&s| {
            sorted
                .iter()
                .copied()
                .combinations(s)
                .all(|sub| g.contains_edge(&sub))
        }))
}

/// Whether `clique + {v}` is a clique, given that `clique` (sorted) is one.
fn extends(g: &Hypergraph, clique: &[usize], v: usize) -> bool {
    let mut buf = Vec::with_capacity(clique.len() + 1);
    g.edge_types()
        .iter()
        .take_while(|&&s| s <= clique.len() + 1)
        .all(|&s| {
            clique.iter().copied().combinations(s - 1).all(|sub| {
                buf.clear();
                buf.extend(sub);
                let pos = buf.partition_point(|&u| u < v);
                buf.insert(pos, v);
                g.contains_edge(&buf)
            })
        })
}

/// Whether `clique + {v, c}` is a clique, given that both `clique + {v}` and
/// `clique + {c}` are: only subsets holding both `v` and `c` are checked.
fn extends_pair(g: &Hypergraph, clique: &[usize], v: usize, c: usize) -> bool {
    let mut buf = Vec::with_capacity(clique.len() + 2);
    g.edge_types()
        .iter()
        .take_while(|&&s| s <= clique.len() + 2)
        .all(|&s| {
            clique.iter().copied().combinations(s - 2).all(|sub| {
                buf.clear();
                buf.extend(sub);
                buf.push(v);
                buf.push(c);
                buf.sort_unstable();
                g.contains_edge(&buf)
            })
        })
}

/// Greedy extension in order of decreasing degree (ties by id).
pub fn greedy_clique(g: &Hypergraph) -> CliqueResult {
    if g.is_edgeless() {
        return CliqueResult {
            vertices: vec![0],
            omega: 1,
            nodes_explored: 0,
            optimal: false,
        };
    }
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut clique: Vec<usize> = Vec::new();
    let mut nodes = 0;
    for v in order {
        nodes += 1;
        if extends(g, &clique, v) {
            let pos = clique.partition_point(|&u| u < v);
            clique.insert(pos, v);
        }
    }
    CliqueResult {
        omega: clique.len(),
        vertices: clique,
        nodes_explored: nodes,
        optimal: false,
    }
}

/// Exact maximum clique with the default node cap.
pub fn max_clique_exact(g: &Hypergraph) -> CliqueResult {
    max_clique_with_cap(g, DEFAULT_NODE_CAP)
}

/// Branch-and-bound for a maximum clique; the lexicographically smallest one
/// among those of maximum size. Hitting `node_cap` returns the best clique
/// found with `optimal = false`.
pub fn max_clique_with_cap(g: &Hypergraph, node_cap: u64) -> CliqueResult {
    if g.is_edgeless() {
        return CliqueResult {
            vertices: vec![0],
            omega: 1,
            nodes_explored: 0,
            optimal: true,
        };
    }
    let corank = g.corank().expect("edges exist");
    let greedy = greedy_clique(g);

    let mut search = Search {
        g,
        compat: pair_compatibility(g, corank),
        corank,
        best: greedy.vertices,
        // the greedy clique is only a bound; DFS order decides the answer
        best_from_search: false,
        nodes: 0,
        cap: node_cap,
        capped: false,
    };
    let candidates: Vec<usize> = (0..g.n()).collect();
    let mut current = Vec::new();
    search.expand(&mut current, &candidates);

    let mut vertices = search.best;
    if !search.best_from_search && !search.capped {
        // The search found nothing larger than the greedy clique, so the
        // maximum size is its size; redo the search for the lexicographically
        // first clique of that size.
        vertices = first_clique_of_size(g, vertices.len());
    }
    CliqueResult {
        omega: vertices.len(),
        vertices,
        nodes_explored: search.nodes,
        optimal: !search.capped,
    }
}

/// `compat[u][v]`: some corank-size edge contains both. Any clique with at
/// least `corank` vertices has all its pairs compatible.
fn pair_compatibility(g: &Hypergraph, corank: usize) -> Vec<Vec<bool>> {
    let mut compat = vec![vec![false; g.n()]; g.n()];
    for e in g.edges().iter().filter(|e| e.size() == corank) {
        for (&u, &v) in e.vertices().iter().tuple_combinations() {
            compat[u][v] = true;
            compat[v][u] = true;
        }
    }
    compat
}

struct Search<'g> {
    g: &'g Hypergraph,
    compat: Vec<Vec<bool>>,
    corank: usize,
    best: Vec<usize>,
    best_from_search: bool,
    nodes: u64,
    cap: u64,
    capped: bool,
}

impl Search<'_> {
    /// Greedy coloring of `candidates` in the compatibility graph.
    fn color_bound(&self, candidates: &[usize]) -> usize {
        let mut colors: Vec<Vec<usize>> = Vec::new();
        for &v in candidates {
            match colors
                .iter_mut()
                .find(|class| class.iter().all(|&u| !self.compat[u][v]))
            {
                Some(class) => class.push(v),
                None => colors.push(vec![v]),
            }
        }
        colors.len()
    }

    /// `current` is a clique and every vertex in `candidates` (ascending, all
    /// above `current`'s last vertex) extends it.
    fn expand(&mut self, current: &mut Vec<usize>, candidates: &[usize]) {
        if self.capped {
            return;
        }
        self.nodes += 1;
        if self.nodes >= self.cap {
            self.capped = true;
        }
        if current.len() > self.best.len() {
            self.best = current.clone();
            self.best_from_search = true;
        }
        if self.capped || current.len() + candidates.len() <= self.best.len() {
            return;
        }
        // only cliques larger than best matter; those have >= corank vertices
        if self.best.len() + 1 >= self.corank
            && current.len() + self.color_bound(candidates) <= self.best.len()
        {
            return;
        }

        for (i, &v) in candidates.iter().enumerate() {
            let rest = &candidates[i + 1..];
            if current.len() + 1 + rest.len() <= self.best.len() {
                break;
            }
            let next: Vec<usize> = rest
                .iter()
                .copied()
                .filter(|&c| extends_pair(self.g, current, v, c))
                .collect();
            current.push(v);
            self.expand(current, &next);
            current.pop();
            if self.capped {
                return;
            }
        }
    }
}

/// Lexicographically first clique of exactly `size` vertices.
fn first_clique_of_size(g: &Hypergraph, size: usize) -> Vec<usize> {
    fn walk(g: &Hypergraph, current: &mut Vec<usize>, candidates: &[usize], size: usize) -> bool {
        if current.len() == size {
            return true;
        }
        for (i, &v) in candidates.iter().enumerate() {
            let rest = &candidates[i + 1..];
            if current.len() + 1 + rest.len() < size {
                return false;
            }
            let next: Vec<usize> = rest
                .iter()
                .copied()
                .filter(|&c| extends_pair(g, current, v, c))
                .collect();
            current.push(v);
            if walk(g, current, &next, size) {
                return true;
            }
            current.pop();
        }
        false
    }
    let candidates: Vec<usize> = (0..g.n()).collect();
    let mut current = Vec::new();
    let found = walk(g, &mut current, &candidates, size);
    debug_assert!(found);
    current
}

/// Maximal cliques (no vertex extends them), in lexicographic discovery
/// order, stopping after `limit`. Edgeless input yields each singleton.
pub fn maximal_cliques(g: &Hypergraph, limit: usize) -> Vec<Vec<usize>> {
    fn walk(
        g: &Hypergraph,
        current: &mut Vec<usize>,
        candidates: &[usize],
        excluded: &[usize],
        limit: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if out.len() >= limit {
            return;
        }
        if candidates.is_empty() {
            if excluded.is_empty() {
                out.push(current.clone());
            }
            return;
        }
        let mut excluded = excluded.to_vec();
        for (i, &v) in candidates.iter().enumerate() {
            let keep = |c: &usize| extends_pair(g, current, v, *c);
            let next_cand: Vec<usize> = candidates[i + 1..].iter().copied().filter(keep).collect();
            let next_excl: Vec<usize> = excluded.iter().copied().filter(keep).collect();
            current.push(v);
            walk(g, current, &next_cand, &next_excl, limit, out);
            current.pop();
            excluded.push(v);
            if out.len() >= limit {
                return;
            }
        }
    }
    if g.is_edgeless() {
        return (0..g.n().min(limit)).map(|v| vec![v]).collect();
    }
    let mut out = Vec::new();
    let candidates: Vec<usize> = (0..g.n()).collect();
    walk(g, &mut Vec::new(), &candidates, &[], limit, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{complete_r_graph, random_r_graph};

    fn cycle(n: usize) -> Hypergraph {
        Hypergraph::new(n, (0..n).map(|i| vec![i, (i + 1) % n])).unwrap()
    }

    #[test]
    fn is_clique_cases() {
        let g = complete_r_graph(4, &[2, 3]).unwrap();
        assert!(is_clique(&g, &[0, 1, 2, 3]).unwrap());

        let k4_minus = Hypergraph::new(
            4,
            [vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]],
        )
        .unwrap();
        assert!(!is_clique(&k4_minus, &[0, 1, 2]).unwrap());
        assert!(is_clique(&k4_minus, &[]).unwrap());
        assert!(is_clique(&k4_minus, &[1]).unwrap());
        assert!(matches!(
            is_clique(&k4_minus, &[4]),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn exact_examples() {
        let r = max_clique_exact(&complete_r_graph(6, &[2, 3]).unwrap());
        assert_eq!(r.omega, 6);
        assert!(r.optimal);

        let r = max_clique_exact(&cycle(5));
        assert_eq!((r.omega, r.vertices.clone()), (2, vec![0, 1]));

        let mut edges: Vec<Vec<usize>> = (0..4).combinations(2).collect();
        edges.extend((0..4).combinations(3));
        edges.push(vec![0, 4]);
        let g = Hypergraph::new(5, edges).unwrap();
        let r = max_clique_exact(&g);
        assert_eq!(r.vertices, vec![0, 1, 2, 3]);
    }

    #[test]
    fn edgeless_convention() {
        let g = Hypergraph::empty(3).unwrap();
        assert_eq!(max_clique_exact(&g).omega, 1);
        assert_eq!(greedy_clique(&g).omega, 1);
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(greedy_clique(&complete_r_graph(5, &[2]).unwrap()).omega, 5);
        assert_eq!(greedy_clique(&cycle(5)).omega, 2);
        assert!(!greedy_clique(&cycle(5)).optimal);
    }

    #[test]
    fn vacuous_small_sets() {
        // one triple: pairs impose nothing, so the triple is the largest clique
        let g = Hypergraph::new(5, [vec![1, 2, 4]]).unwrap();
        let r = max_clique_exact(&g);
        assert_eq!(r.vertices, vec![1, 2, 4]);
        assert!(is_clique(&g, &[0, 3]).unwrap());
    }

    #[test]
    fn lexicographic_tie_break() {
        // two disjoint triangles: the first one wins
        let tri = complete_r_graph(3, &[2]).unwrap();
        let g = Hypergraph::new(1, std::iter::empty::<Vec<usize>>())
            .unwrap()
            .disjoint_union(&tri)
            .disjoint_union(&tri);
        assert_eq!(max_clique_exact(&g).vertices, vec![1, 2, 3]);
    }

    #[test]
    fn node_cap_falls_back() {
        // greedy on a complete graph is already provably optimal, so use a
        // graph that needs real search
        let g = random_r_graph(30, &[2], 0.5, 1).unwrap();
        let r = max_clique_with_cap(&g, 2);
        assert!(!r.optimal);
        assert!(is_clique(&g, &r.vertices).unwrap());
    }

    #[test]
    fn maximal_clique_listing() {
        let cliques = maximal_cliques(&cycle(5), 100);
        assert_eq!(cliques.len(), 5);
        assert!(cliques.iter().all(|c| c.len() == 2));
        assert_eq!(maximal_cliques(&cycle(5), 2).len(), 2);
        let k = maximal_cliques(&complete_r_graph(4, &[2, 3]).unwrap(), 10);
        assert_eq!(k, vec![vec![0, 1, 2, 3]]);
    }
}
