//! Enumeration of all graphs on exactly `p` vertices, one representative per
//! isomorphism class.
//!
//! Canonical form: the adjacency bits of the upper triangle are read in
//! column-major order, `(0,1), (0,2), (1,2), (0,3), (1,3), (2,3), ...`, with
//! the first pair as the most significant bit. A graph's canonical key is the
//! minimum of that bitstring over all vertex permutations, and its canonical
//! representative is the relabelling attaining it. Catalog members are
//! sorted by key, so the edgeless graph is always first and the complete
//! graph last.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default upper limit on `p` (1044 classes at p = 7).
pub const DEFAULT_ENUMERATION_CAP: usize = 7;

/// Largest `p` whose key fits in 64 bits.
const MAX_KEY_VERTICES: usize = 11;

#[derive(Debug, Clone)]
pub struct GraphCatalog {
    p: usize,
    members: Vec<Graph>,
    keys: Vec<u64>,
}

impl GraphCatalog {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn members(&self) -> &[Graph] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn keys(&self) -> &[u64] {
        &self.keys
    }

    /// Index of the member isomorphic to `g`, if `g` has `p` vertices.
    pub fn index_of(&self, g: &Graph) -> Option<usize> {
        if g.vertex_count() != self.p {
            return None;
        }
        let (key, _) = canonical_form(g);
        self.keys.binary_search(&key).ok()
    }

    /// Total vertex count of all members.
    pub fn total_vertices(&self) -> usize {
        self.p * self.members.len()
    }
}

fn pair_bit(i: usize, j: usize, bits: usize) -> u32 {
    // column-major position of (i, j), i < j
    let pos = j * (j - 1) / 2 + i;
    (bits - 1 - pos) as u32
}

/// Key of `g` under its own labelling.
pub fn labelled_key(g: &Graph) -> u64 {
    let n = g.vertex_count();
    let bits = n * n.saturating_sub(1) / 2;
    g.edges().fold(0u64, |acc, (i, j)| acc | 1u64 << pair_bit(i, j, bits))
}

/// Graph on `p` vertices whose labelled key is `key`.
pub fn graph_from_key(p: usize, key: u64) -> Graph {
    let bits = p * p.saturating_sub(1) / 2;
    let mut edges = Vec::new();
    for j in 1..p {
        for i in 0..j {
            if key >> pair_bit(i, j, bits) & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(p, &edges).expect("key edges are valid")
}

/// Canonical key of `g` and the permutation attaining it: position `i` of the
/// canonical labelling is vertex `perm[i]` of `g`.
///
/// Panics if `g` has more than 11 vertices.
pub fn canonical_form(g: &Graph) -> (u64, Vec<usize>) {
    let n = g.vertex_count();
    assert!(
        n <= MAX_KEY_VERTICES,
        "canonical keys support at most {MAX_KEY_VERTICES} vertices"
    );
    let bits = n * n.saturating_sub(1) / 2;
    let mut search = CanonSearch {
        g,
        bits,
        best: u64::MAX,
        best_perm: (0..n).collect(),
        perm: Vec::with_capacity(n),
        used: vec![false; n],
    };
    if n <= 1 {
        return (0, search.best_perm);
    }
    search.extend(0, 0);
    (search.best, search.best_perm)
}

struct CanonSearch<'a> {
    g: &'a Graph,
    bits: usize,
    best: u64,
    best_perm: Vec<usize>,
    perm: Vec<usize>,
    used: Vec<bool>,
}

impl CanonSearch<'_> {
    /// `prefix` holds the first `filled` bits of the key, right-aligned.
    fn extend(&mut self, prefix: u64, filled: usize) {
        let n = self.g.vertex_count();
        let j = self.perm.len();
        if j == n {
            if prefix < self.best {
                self.best = prefix;
                self.best_perm.clone_from(&self.perm);
            }
            return;
        }
        for v in 0..n {
            if self.used[v] {
                continue;
            }
            let mut next = prefix;
            for i in 0..j {
                next = next << 1 | self.g.has_edge(self.perm[i], v) as u64;
            }
            let len = filled + j;
            if self.best != u64::MAX && len > 0 && next > self.best >> (self.bits - len) {
                continue;
            }
            self.used[v] = true;
            self.perm.push(v);
            self.extend(next, len);
            self.perm.pop();
            self.used[v] = false;
        }
    }
}

/// Canonical relabelling of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    let (key, _) = canonical_form(g);
    graph_from_key(g.vertex_count(), key)
}

pub fn enumerate_graphs(p: usize) -> Result<Arc<GraphCatalog>> {
    enumerate_graphs_with_cap(p, DEFAULT_ENUMERATION_CAP)
}

/// Catalog of all graphs on `p` vertices. Results are cached per process.
pub fn enumerate_graphs_with_cap(p: usize, cap: usize) -> Result<Arc<GraphCatalog>> {
    if p == 0 {
        return Err(Error::Parameter("catalog size p must be at least 1".into()));
    }
    let cap = cap.min(MAX_KEY_VERTICES);
    if p > cap {
        return Err(Error::EnumerationCap { p, cap });
    }
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GraphCatalog>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&p) {
        return Ok(hit.clone());
    }
    let catalog = if p == 1 {
        GraphCatalog {
            p: 1,
            members: vec![Graph::empty(1)],
            keys: vec![0],
        }
    } else {
        extend_catalog(&*enumerate_graphs_with_cap(p - 1, cap)?)
    };
    let catalog = Arc::new(catalog);
    cache.lock().unwrap().insert(p, catalog.clone());
    Ok(catalog)
}

/// Every p-vertex graph is some (p-1)-vertex class plus one vertex, so
/// extending each representative by every neighbourhood reaches all classes.
fn extend_catalog(prev: &GraphCatalog) -> GraphCatalog {
    let q = prev.p;
    let mut keys = BTreeSet::new();
    for base in &prev.members {
        let base_edges: Vec<_> = base.edges().collect();
        for mask in 0u32..1 << q {
            let mut edges = base_edges.clone();
            edges.extend((0..q).filter(|i| mask >> i & 1 == 1).map(|i| (i, q)));
            let g = Graph::from_edges(q + 1, &edges).expect("extension edges are valid");
            keys.insert(canonical_form(&g).0);
        }
    }
    let keys: Vec<u64> = keys.into_iter().collect();
    let members = keys.iter().map(|&k| graph_from_key(q + 1, k)).collect();
    GraphCatalog {
        p: q + 1,
        members,
        keys,
    }
}
