//! Brute-force reference implementations. Exponential and deliberately
//! naive; they share no search code with the solvers they check.

use std::collections::{HashMap, VecDeque};

use crate::colouring::Colouring;
use crate::graph::Graph;

fn proper(g: &Graph, colours: &[u32]) -> bool {
    g.edges().all(|(u, v)| colours[u] != colours[v])
}

/// Every proper `k`-colouring of `g`, in lexicographic order.
pub fn all_proper_colourings(g: &Graph, k: u32) -> Vec<Colouring> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut colours = vec![1u32; n];
    loop {
        if proper(g, &colours) {
            out.push(Colouring::new(k, colours.clone()).expect("colours in range"));
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if colours[i] < k {
                colours[i] += 1;
                break;
            }
            colours[i] = 1;
        }
    }
}

pub fn is_k_colourable(g: &Graph, k: u32) -> bool {
    let n = g.vertex_count();
    let mut colours = vec![1u32; n];
    loop {
        if proper(g, &colours) {
            return true;
        }
        let mut i = n;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if colours[i] < k {
                colours[i] += 1;
                break;
            }
            colours[i] = 1;
        }
    }
}

/// BFS over the explicitly built reconfiguration graph `R_k(G)`.
pub fn reachable(g: &Graph, k: u32, alpha: &Colouring, beta: &Colouring) -> bool {
    let nodes = all_proper_colourings(g, k);
    let index: HashMap<&[u32], usize> = nodes.iter().enumerate().map(|(i, c)| (c.colours(), i)).collect();
    let (Some(&s), Some(&t)) = (index.get(alpha.colours()), index.get(beta.colours())) else {
        return false;
    };
    let mut seen = vec![false; nodes.len()];
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(i) = queue.pop_front() {
        if i == t {
            return true;
        }
        for (j, other) in nodes.iter().enumerate() {
            if !seen[j] && nodes[i].differences(other).len() == 1 {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    false
}

/// Every colouring reachable from `start` in `R_k(G)`.
pub fn reachable_set(g: &Graph, k: u32, start: &Colouring) -> Vec<Colouring> {
    let nodes = all_proper_colourings(g, k);
    let Some(s) = nodes.iter().position(|c| c == start) else {
        return Vec::new();
    };
    let mut seen = vec![false; nodes.len()];
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    let mut out = Vec::new();
    while let Some(i) = queue.pop_front() {
        out.push(nodes[i].clone());
        for (j, other) in nodes.iter().enumerate() {
            if !seen[j] && nodes[i].differences(other).len() == 1 {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    out
}

/// Try every injective tuple of `|V(h)|` vertices of `g`.
pub fn contains_induced(g: &Graph, h: &Graph) -> bool {
    fn extend(g: &Graph, h: &Graph, tuple: &mut Vec<usize>) -> bool {
        let i = tuple.len();
        if i == h.vertex_count() {
            return true;
        }
        for v in 0..g.vertex_count() {
            if tuple.contains(&v) {
                continue;
            }
            if (0..i).all(|j| g.has_edge(tuple[j], v) == h.has_edge(j, i)) {
                tuple.push(v);
                if extend(g, h, tuple) {
                    return true;
                }
                tuple.pop();
            }
        }
        false
    }
    extend(g, h, &mut Vec::new())
}

/// Every labelled graph on `l` vertices.
pub fn labelled_graphs(l: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..l).flat_map(|i| (i + 1..l).map(move |j| (i, j))).collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::from_edges(l, &edges).expect("valid pairs")
        })
        .collect()
}

/// Is `g` free of some labelled graph on exactly `p` vertices?
pub fn free_of_some(g: &Graph, p: usize) -> bool {
    labelled_graphs(p).iter().any(|h| !contains_induced(g, h))
}

/// Colouring-or-Subgraph by brute force on both disjuncts.
pub fn cos(g: &Graph, p: usize) -> bool {
    is_k_colourable(g, p as u32) || free_of_some(g, p)
}

/// Isomorphism by trying every bijection.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if a.edges().all(|(u, v)| b.has_edge(perm[u], perm[v])) {
            return true;
        }
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            return false;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}
