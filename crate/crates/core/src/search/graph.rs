//! Compatibility graphs over planes and an exact maximum-clique solver.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{plane_from_spread, Plane, SpreadF2};
use crate::gf2::BinaryMatrix;
use crate::verify::is_orthogoval_pair;

/// Simple undirected graph on `0..n` with bitset adjacency.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatibilityGraph {
    pub labels: Vec<String>,
    pub predicate: String,
    adj: Vec<Vec<u64>>,
}

impl CompatibilityGraph {
    pub fn new(labels: Vec<String>, predicate: impl Into<String>) -> Self {
        let words = labels.len().div_ceil(64);
        let adj = vec![vec![0u64; words]; labels.len()];
        CompatibilityGraph { labels, predicate: predicate.into(), adj }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = CompatibilityGraph::new((0..n).map(|i| i.to_string()).collect(), "explicit");
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u][v / 64] |= 1 << (v % 64);
            self.adj[v][u / 64] |= 1 << (u % 64);
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u][v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.len()).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }
}

/// Graph on the planes with edges between orthogoval pairs.
pub fn build_plane_graph(planes: &[Plane], labels: Vec<String>) -> Result<CompatibilityGraph> {
    let mut g = CompatibilityGraph::new(labels, "is_orthogoval_pair");
    let pairs: Vec<(usize, usize)> =
        (0..planes.len()).flat_map(|i| (i + 1..planes.len()).map(move |j| (i, j))).collect();
    let verdicts: Vec<bool> = pairs
        .par_iter()
        .map(|&(i, j)| is_orthogoval_pair(&planes[i], &planes[j]).map(|r| r.orthogoval))
        .collect::<Result<_>>()?;
    for (&(i, j), ok) in pairs.iter().zip(verdicts) {
        if ok {
            g.add_edge(i, j);
        }
    }
    Ok(g)
}

/// Vertex 0 is the identity; vertex `i ≥ 1` is `mats[i − 1]`. Planes are
/// built from the images of `spread`.
pub fn build_compat_graph(mats: &[BinaryMatrix], spread: &SpreadF2) -> Result<CompatibilityGraph> {
    let identity = BinaryMatrix::identity(spread.dim());
    let all: Vec<&BinaryMatrix> = std::iter::once(&identity).chain(mats).collect();
    let planes: Vec<Plane> = all
        .par_iter()
        .map(|m| plane_from_spread(&spread.apply(m)?))
        .collect::<Result<_>>()?;
    let labels = all.iter().map(|m| m.to_text().replace('\n', "/")).collect();
    build_plane_graph(&planes, labels)
}

struct Clique<'a> {
    g: &'a CompatibilityGraph,
    best: Vec<usize>,
    target: Option<usize>,
}

impl Clique<'_> {
    fn done(&self) -> bool {
        self.target.is_some_and(|t| self.best.len() >= t)
    }

    /// Greedy coloring of `p` in order; returns vertices sorted by color with their colors.
    fn color_sort(&self, p: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &v in p {
            match classes.iter_mut().find(|c| c.iter().all(|&u| !self.g.has_edge(u, v))) {
                Some(c) => c.push(v),
                None => classes.push(vec![v]),
            }
        }
        let mut order = Vec::with_capacity(p.len());
        let mut colors = Vec::with_capacity(p.len());
        for (k, c) in classes.into_iter().enumerate() {
            for v in c {
                order.push(v);
                colors.push(k + 1);
            }
        }
        (order, colors)
    }

    fn expand(&mut self, r: &mut Vec<usize>, p: &[usize]) {
        let (order, colors) = self.color_sort(p);
        for idx in (0..order.len()).rev() {
            if self.done() || r.len() + colors[idx] <= self.best.len() {
                return;
            }
            let v = order[idx];
            r.push(v);
            let next: Vec<usize> = order[..idx].iter().copied().filter(|&u| self.g.has_edge(v, u)).collect();
            if next.is_empty() {
                if r.len() > self.best.len() {
                    self.best = r.clone();
                }
            } else {
                self.expand(r, &next);
            }
            r.pop();
        }
    }
}

/// A maximum clique by branch and bound with a greedy-coloring bound, or the
/// first clique of size at least `target` when one is given. Sorted ascending.
pub fn max_clique(g: &CompatibilityGraph, target: Option<usize>) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.len()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut c = Clique { g, best: Vec::new(), target };
    c.expand(&mut Vec::new(), &order);
    let mut best = c.best;
    best.sort_unstable();
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::m4;
    use crate::geometry::line_spread;

    #[test]
    fn five_cycle() {
        let g = CompatibilityGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(max_clique(&g, None).len(), 2);
    }

    #[test]
    fn isolated_vertices() {
        let g = CompatibilityGraph::from_edges(4, &[]);
        assert_eq!(max_clique(&g, None).len(), 1);
        assert!(max_clique(&CompatibilityGraph::from_edges(0, &[]), None).is_empty());
    }

    #[test]
    fn planted_clique_is_found() {
        let mut edges = vec![];
        for i in 0..30usize {
            for j in i + 1..30 {
                if (i * 7 + j * 3) % 5 == 0 {
                    edges.push((i, j));
                }
            }
        }
        let planted = [2usize, 5, 11, 17, 23, 29];
        for (a, &u) in planted.iter().enumerate() {
            for &v in &planted[a + 1..] {
                edges.push((u, v));
            }
        }
        let g = CompatibilityGraph::from_edges(30, &edges);
        let c = max_clique(&g, None);
        assert!(g.is_clique(&c));
        assert!(c.len() >= 6);
        assert!(max_clique(&g, Some(3)).len() >= 3);
    }

    #[test]
    fn m4_powers_form_k7() {
        let m = m4();
        let mats: Vec<BinaryMatrix> = (1..7).map(|i| m.pow(i)).collect();
        let g = build_compat_graph(&mats, &line_spread(2).unwrap()).unwrap();
        assert_eq!(g.edge_count(), 21);
        assert_eq!(max_clique(&g, Some(7)).len(), 7);
        let dup = build_compat_graph(&[m.clone(), m], &line_spread(2).unwrap()).unwrap();
        assert!(!dup.has_edge(1, 2));
        let empty = build_compat_graph(&[], &line_spread(2).unwrap()).unwrap();
        assert_eq!(empty.len(), 1);
    }
}
