//! Induced-subgraph search and the "H-free for some p-vertex H" test.

use crate::catalog::enumerate_graphs;
use crate::error::Result;
use crate::graph::{Graph, VertexMap};
use crate::par::Exec;

/// An embedding of `h` into `g` as an induced subgraph, if one exists.
///
/// Backtracking over injective assignments. Pattern vertices are placed in
/// breadth-first order so that, where possible, candidates come from the
/// neighbourhood of an already placed vertex; degree and co-degree bounds
/// prune the rest.
pub fn contains_induced(g: &Graph, h: &Graph) -> Option<VertexMap> {
    let (n, k) = (g.vertex_count(), h.vertex_count());
    if k > n {
        return None;
    }
    let (order, anchor) = placement_order(h);
    let mut search = Embed {
        g,
        h,
        order: &order,
        anchor: &anchor,
        image: vec![usize::MAX; k],
        used: vec![false; n],
    };
    search.extend(0).then(|| VertexMap::new("H", "G", search.image))
}

pub fn is_h_free(g: &Graph, h: &Graph) -> bool {
    contains_induced(g, h).is_none()
}

/// Breadth-first order over each component of `h`, each started from its
/// highest-degree vertex. `anchor[i]` is the position of an earlier neighbour
/// of `order[i]`, if any.
fn placement_order(h: &Graph) -> (Vec<usize>, Vec<Option<usize>>) {
    let k = h.vertex_count();
    let mut pos = vec![usize::MAX; k];
    let mut order = Vec::with_capacity(k);
    let mut anchor = Vec::with_capacity(k);
    while order.len() < k {
        let root = (0..k)
            .filter(|&v| pos[v] == usize::MAX)
            .max_by_key(|&v| (h.degree(v), usize::MAX - v))
            .unwrap();
        pos[root] = order.len();
        order.push(root);
        anchor.push(None);
        let mut i = pos[root];
        while i < order.len() {
            let v = order[i];
            for &u in h.neighbours(v) {
                if pos[u] == usize::MAX {
                    pos[u] = order.len();
                    order.push(u);
                    anchor.push(Some(i));
                }
            }
            i += 1;
        }
    }
    (order, anchor)
}

struct Embed<'a> {
    g: &'a Graph,
    h: &'a Graph,
    order: &'a [usize],
    anchor: &'a [Option<usize>],
    image: Vec<usize>,
    used: Vec<bool>,
}

impl Embed<'_> {
    fn fits(&self, i: usize, v: usize) -> bool {
        let u = self.order[i];
        let (n, k) = (self.g.vertex_count(), self.h.vertex_count());
        if self.used[v] || self.g.degree(v) < self.h.degree(u) || n - 1 - self.g.degree(v) < k - 1 - self.h.degree(u) {
            return false;
        }
        self.order[..i]
            .iter()
            .all(|&w| self.h.has_edge(w, u) == self.g.has_edge(self.image[w], v))
    }

    fn extend(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        let u = self.order[i];
        let candidates: Vec<usize> = match self.anchor[i] {
            Some(a) => self.g.neighbours(self.image[self.order[a]]).to_vec(),
            None => (0..self.g.vertex_count()).collect(),
        };
        for v in candidates {
            if !self.fits(i, v) {
                continue;
            }
            self.image[u] = v;
            self.used[v] = true;
            if self.extend(i + 1) {
                return true;
            }
            self.used[v] = false;
            self.image[u] = usize::MAX;
        }
        false
    }
}

/// Some `p`-vertex graph `g` is free of, checking catalog members in order.
///
/// Graphs on fewer than `p` vertices need no separate check: if `g` is
/// `F`-free for a smaller `F`, it is free of every `p`-vertex graph
/// containing `F`.
pub fn find_forbidden(g: &Graph, p: usize) -> Result<Option<Graph>> {
    Ok(find_forbidden_with(g, p, Exec::default())?.map(|(_, h)| h))
}

/// As [`find_forbidden`], also returning the catalog index. The lowest index
/// wins regardless of `exec`.
pub fn find_forbidden_with(g: &Graph, p: usize, exec: Exec) -> Result<Option<(usize, Graph)>> {
    let catalog = enumerate_graphs(p)?;
    Ok(exec.find_first(catalog.members(), |h| is_h_free(g, h).then(|| h.clone())))
}
