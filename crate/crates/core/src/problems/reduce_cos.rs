//! 3-Colouring to Colouring-or-Subgraph.
//!
//! `G'` is `G` plus a universal clique on `p - 3` vertices, disjoint from one
//! copy of every `p`-vertex graph. `G'` contains every graph on at most `p`
//! vertices, so only the colouring disjunct can hold, and a `p`-colouring of
//! `G'` leaves colours 1..3 for `G`.

use super::{faithful_p, CoSInstance, Provenance, ReductionArtifact, ReductionMode};
use crate::catalog::{enumerate_graphs, GraphCatalog};
use crate::colouring::{ensure_proper, Colouring};
use crate::error::{Error, Result};
use crate::graph::{add_isolated, add_universal_clique, disjoint_union, Graph, VertexMap};

/// Resolve `p` for a reduction on an `n`-vertex input with the given floor.
pub(super) fn reduction_p(n: usize, mode: ReductionMode, min_p: usize) -> Result<usize> {
    match mode {
        ReductionMode::Faithful => {
            if n == 0 {
                return Err(Error::Parameter("faithful mode needs a non-empty graph".into()));
            }
            let p = faithful_p(3 * n)?;
            if p < min_p {
                return Err(Error::Parameter(format!(
                    "faithful mode needs p = ceil(sqrt(log2 3n)) >= {min_p}, got p = {p} for n = {n}"
                )));
            }
            Ok(p)
        }
        ReductionMode::Generalized { p } if p < min_p => {
            Err(Error::Parameter(format!("p must be at least {min_p}, got {p}")))
        }
        ReductionMode::Generalized { p } => Ok(p),
    }
}

/// Faithful-mode size checks: the catalog fits in `n` vertices and the whole
/// construction in `3n`. Returns the padding needed to reach `3n`.
pub(super) fn faithful_padding(n: usize, gadget: usize, catalog: &GraphCatalog) -> Result<usize> {
    let cat = catalog.total_vertices();
    if cat > n {
        return Err(Error::ConstructionTooLarge {
            inequality: format!("|V(H_1)| + ... + |V(H_r)| = {cat} <= n = {n}"),
        });
    }
    let built = n + gadget + cat;
    if built > 3 * n {
        return Err(Error::ConstructionTooLarge {
            inequality: format!("|V(G')| = {built} <= 3n = {}", 3 * n),
        });
    }
    Ok(3 * n - built)
}

/// Lay out `gstar` followed by every catalog member and `padding` isolated
/// vertices. Returns the graph, the catalog maps and the padding ids.
pub(super) fn attach_catalog(
    gstar: &Graph,
    catalog: &GraphCatalog,
    padding: usize,
) -> (Graph, Vec<VertexMap>, Vec<usize>) {
    let mut parts = vec![gstar];
    parts.extend(catalog.members());
    let (union, maps) = disjoint_union(&parts);
    let catalog_maps = maps
        .into_iter()
        .skip(1)
        .enumerate()
        .map(|(i, m)| VertexMap::new(format!("H{}", i + 1), "G'", m.map))
        .collect();
    let start = union.vertex_count();
    let graph = add_isolated(&union, padding);
    (graph, catalog_maps, (start..start + padding).collect())
}

pub fn reduce_3col(g: &Graph, mode: ReductionMode) -> Result<ReductionArtifact<CoSInstance>> {
    let n = g.vertex_count();
    let p = reduction_p(n, mode, 4)?;
    let catalog = enumerate_graphs(p)?;
    let padding = match mode {
        ReductionMode::Faithful => faithful_padding(n, p - 3, &catalog)?,
        ReductionMode::Generalized { .. } => 0,
    };
    let (gstar, clique) = add_universal_clique(g, p - 3);
    let (graph, catalog_maps, padding) = attach_catalog(&gstar, &catalog, padding);
    let provenance = Provenance {
        mode: mode.mode(),
        p,
        vertex_count: graph.vertex_count(),
        source: VertexMap::shifted("G", "G'", n, 0),
        clique,
        clique_l: Vec::new(),
        catalog: catalog_maps,
        padding,
    };
    debug_assert!(provenance.partitions_output());
    let instance = CoSInstance {
        graph,
        p,
        mode: mode.mode(),
    };
    if mode == ReductionMode::Faithful {
        debug_assert_eq!(instance.p, faithful_p(instance.graph.vertex_count())?);
    }
    Ok(ReductionArtifact { instance, provenance })
}

/// The input graph as it sits inside the output.
pub(super) fn source_graph(graph: &Graph, prov: &Provenance) -> Graph {
    graph.induced_subgraph(&prov.source.map)
}

/// Extend a proper 3-colouring of `G` to a proper `p`-colouring of `G'`:
/// clique vertex `i` gets colour `4 + i`, vertex `q` of each catalog member
/// gets colour `q + 1`, padding gets colour 1.
pub fn cos_forward_colouring(art: &ReductionArtifact<CoSInstance>, c3: &Colouring) -> Result<Colouring> {
    let prov = &art.provenance;
    let g = source_graph(&art.instance.graph, prov);
    if c3.len() != g.vertex_count() {
        return Err(Error::DomainMismatch {
            expected: g.vertex_count(),
            got: c3.len(),
        });
    }
    if let Some(&c) = c3.colours().iter().find(|&&c| c > 3) {
        return Err(Error::ColourOutOfRange { colour: c, k: 3 });
    }
    ensure_proper(&g, c3)?;
    let mut colours = vec![1u32; prov.vertex_count];
    for (v, &img) in prov.source.map.iter().enumerate() {
        colours[img] = c3.colour(v);
    }
    for (i, &v) in prov.clique.iter().enumerate() {
        colours[v] = 4 + i as u32;
    }
    for member in &prov.catalog {
        for (q, &v) in member.map.iter().enumerate() {
            colours[v] = q as u32 + 1;
        }
    }
    let out = Colouring::new(prov.p as u32, colours)?;
    ensure_proper(&art.instance.graph, &out)?;
    Ok(out)
}

/// Recover a proper 3-colouring of `G` from any proper `p`-colouring of `G'`.
///
/// The clique's colours are permuted onto `4..=p` and the remaining colours
/// onto `1..=3` in increasing order; every vertex of `G` sees the whole
/// clique, so it ends up in `1..=3`.
pub fn cos_backward_colouring(art: &ReductionArtifact<CoSInstance>, cp: &Colouring) -> Result<Colouring> {
    let prov = &art.provenance;
    let p = prov.p as u32;
    if cp.k() != p {
        return Err(Error::Parameter(format!(
            "expected a {p}-colouring, got k = {}",
            cp.k()
        )));
    }
    ensure_proper(&art.instance.graph, cp)?;
    let mut perm = vec![0u32; p as usize + 1];
    for (i, &v) in prov.clique.iter().enumerate() {
        perm[cp.colour(v) as usize] = 4 + i as u32;
    }
    let mut next = 1;
    for slot in perm.iter_mut().skip(1) {
        if *slot == 0 {
            *slot = next;
            next += 1;
        }
    }
    let colours: Vec<u32> = prov.source.map.iter().map(|&v| perm[cp.colour(v) as usize]).collect();
    if let Some(&c) = colours.iter().find(|&&c| c > 3) {
        return Err(Error::ColourOutOfRange { colour: c, k: 3 });
    }
    let out = Colouring::new(3, colours)?;
    ensure_proper(&source_graph(&art.instance.graph, prov), &out)?;
    Ok(out)
}
