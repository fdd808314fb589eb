//! Simple undirected graphs and the construction primitives the reductions
//! are assembled from.

use serde::Serialize;

use crate::error::{Error, Result};

/// Finite simple undirected graph on vertices `0..n`.
///
/// Neighbour lists are kept sorted and duplicate-free; adjacency is
/// symmetric and irreflexive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

/// Injective relabelling of one graph's vertices into another's.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexMap {
    pub source: String,
    pub target: String,
    /// `map[v]` is the image of source vertex `v`.
    pub map: Vec<usize>,
}

impl VertexMap {
    pub fn new(source: impl Into<String>, target: impl Into<String>, map: Vec<usize>) -> Self {
        VertexMap {
            source: source.into(),
            target: target.into(),
            map,
        }
    }

    /// Map `0..len` onto `offset..offset + len`.
    pub fn shifted(source: impl Into<String>, target: impl Into<String>, len: usize, offset: usize) -> Self {
        Self::new(source, target, (offset..offset + len).collect())
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.map[v]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = self.map.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    /// Injective with image inside `0..target_n`.
    pub fn is_valid_into(&self, target_n: usize) -> bool {
        self.is_injective() && self.map.iter().all(|&v| v < target_n)
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge {u}-{v} out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!("duplicate edge at vertex {v}")));
            }
        }
        Ok(Graph { adj })
    }

    /// Build from sorted neighbour lists that are already known to be valid.
    pub(crate) fn from_adjacency(adj: Vec<Vec<usize>>) -> Self {
        let g = Graph { adj };
        debug_assert!(g.check_invariants().is_ok());
        g
    }

    pub fn complete(n: usize) -> Self {
        Self::from_adjacency((0..n).map(|v| (0..n).filter(|&u| u != v).collect()).collect())
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges).expect("cycle edges are valid")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("path edges are valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                let mut list: Vec<usize> = self.adj[v]
                    .iter()
                    .filter(|&&u| index[u] != usize::MAX)
                    .map(|&u| index[u])
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        Self::from_adjacency(adj)
    }

    /// Verify symmetry, irreflexivity, range and sortedness.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.vertex_count();
        for (v, list) in self.adj.iter().enumerate() {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidGraph(format!("neighbours of {v} not strictly sorted")));
            }
            for &u in list {
                if u >= n {
                    return Err(Error::InvalidGraph(format!("neighbour {u} of {v} out of range")));
                }
                if u == v {
                    return Err(Error::InvalidGraph(format!("self-loop at {v}")));
                }
                if self.adj[u].binary_search(&v).is_err() {
                    return Err(Error::InvalidGraph(format!("edge {v}-{u} not symmetric")));
                }
            }
        }
        Ok(())
    }
}

/// Disjoint union of `parts`, laid out in order. The returned maps embed each
/// part into the union.
pub fn disjoint_union(parts: &[&Graph]) -> (Graph, Vec<VertexMap>) {
    let mut adj = Vec::with_capacity(parts.iter().map(|g| g.vertex_count()).sum());
    let mut maps = Vec::with_capacity(parts.len());
    for (i, part) in parts.iter().enumerate() {
        let offset = adj.len();
        maps.push(VertexMap::shifted(
            format!("part{i}"),
            "union",
            part.vertex_count(),
            offset,
        ));
        adj.extend(
            part.adj
                .iter()
                .map(|list| list.iter().map(|&u| u + offset).collect::<Vec<_>>()),
        );
    }
    (Graph::from_adjacency(adj), maps)
}

/// Append `t` pairwise adjacent vertices, each adjacent to every original
/// vertex. Returns the new graph and the ids of the added vertices.
pub fn add_universal_clique(g: &Graph, t: usize) -> (Graph, Vec<usize>) {
    let n = g.vertex_count();
    let new: Vec<usize> = (n..n + t).collect();
    let mut adj: Vec<Vec<usize>> = g
        .adj
        .iter()
        .map(|list| list.iter().copied().chain(new.iter().copied()).collect())
        .collect();
    for &v in &new {
        adj.push((0..n + t).filter(|&u| u != v).collect());
    }
    (Graph::from_adjacency(adj), new)
}

/// Append `t` isolated vertices.
pub fn add_isolated(g: &Graph, t: usize) -> Graph {
    let mut adj = g.adj.clone();
    adj.resize(g.vertex_count() + t, Vec::new());
    Graph::from_adjacency(adj)
}

pub fn complement(g: &Graph) -> Graph {
    let n = g.vertex_count();
    let adj = (0..n)
        .map(|v| (0..n).filter(|&u| u != v && !g.has_edge(u, v)).collect())
        .collect();
    Graph::from_adjacency(adj)
}

/// Brute-force isomorphism test: permutation search with degree pruning.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    let n = g.vertex_count();
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut dg = g.degree_sequence();
    let mut dh = h.degree_sequence();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return false;
    }
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    iso_extend(g, h, 0, &mut image, &mut used)
}

fn iso_extend(g: &Graph, h: &Graph, v: usize, image: &mut [usize], used: &mut [bool]) -> bool {
    if v == g.vertex_count() {
        return true;
    }
    for w in 0..h.vertex_count() {
        if used[w] || g.degree(v) != h.degree(w) {
            continue;
        }
        if (0..v).any(|u| g.has_edge(u, v) != h.has_edge(image[u], w)) {
            continue;
        }
        image[v] = w;
        used[w] = true;
        if iso_extend(g, h, v + 1, image, used) {
            return true;
        }
        used[w] = false;
    }
    false
}
