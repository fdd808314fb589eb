//! 4-Colour-Path to Colour-Path-or-Subgraph.
//!
//! `G*` is `G` plus a clique `K` of `p - 4` vertices joined to all of `G`, and
//! a clique `L` of four vertices joined to all of `K` but not to `G`. Under
//! the constructed colourings `K ∪ L` is a rainbow `p`-clique, so every
//! vertex in it is frozen and `G` is left with colours 1..4.

use super::reduce_cos::{attach_catalog, faithful_padding, reduction_p, source_graph};
use super::{CPoSInstance, Provenance, ReductionArtifact, ReductionMode};
use crate::catalog::enumerate_graphs;
use crate::colouring::{ensure_proper, Colouring};
use crate::error::{Error, Result};
use crate::graph::{add_universal_clique, Graph, VertexMap};
use crate::reconfig::ReconfigPath;

pub fn reduce_4cp(
    g: &Graph,
    alpha: &Colouring,
    beta: &Colouring,
    mode: ReductionMode,
) -> Result<ReductionArtifact<CPoSInstance>> {
    for c in [alpha, beta] {
        if c.k() != 4 {
            return Err(Error::Parameter(format!("expected 4-colourings, got k = {}", c.k())));
        }
        ensure_proper(g, c)?;
    }
    let n = g.vertex_count();
    let p = reduction_p(n, mode, 5)?;
    let catalog = enumerate_graphs(p)?;
    let padding = match mode {
        ReductionMode::Faithful => faithful_padding(n, p, &catalog)?,
        ReductionMode::Generalized { .. } => 0,
    };

    let (with_k, clique_k) = add_universal_clique(g, p - 4);
    let base = with_k.vertex_count();
    let clique_l: Vec<usize> = (base..base + 4).collect();
    let mut edges: Vec<(usize, usize)> = with_k.edges().collect();
    for (i, &a) in clique_l.iter().enumerate() {
        edges.extend(clique_l[i + 1..].iter().map(|&b| (a, b)));
        edges.extend(clique_k.iter().map(|&x| (x, a)));
    }
    let gstar = Graph::from_edges(base + 4, &edges)?;
    let (graph, catalog_maps, padding) = attach_catalog(&gstar, &catalog, padding);

    let frame = |c: &Colouring| -> Result<Colouring> {
        let mut colours = vec![1u32; graph.vertex_count()];
        colours[..n].copy_from_slice(c.colours());
        for (h, &y) in clique_l.iter().enumerate() {
            colours[y] = h as u32 + 1;
        }
        for (i, &x) in clique_k.iter().enumerate() {
            colours[x] = i as u32 + 5;
        }
        for member in &catalog_maps {
            for (q, &z) in member.map.iter().enumerate() {
                colours[z] = q as u32 + 1;
            }
        }
        Colouring::new(p as u32, colours)
    };
    let alpha2 = frame(alpha)?;
    let beta2 = frame(beta)?;

    let provenance = Provenance {
        mode: mode.mode(),
        p,
        vertex_count: graph.vertex_count(),
        source: VertexMap::shifted("G", "G'", n, 0),
        clique: clique_k,
        clique_l,
        catalog: catalog_maps,
        padding,
    };
    debug_assert!(provenance.partitions_output());
    let instance = CPoSInstance::new(graph, alpha2, beta2, p, mode.mode())?;
    Ok(ReductionArtifact { instance, provenance })
}

/// Replay a walk in `R_4(G)` inside `R_p(G')`, holding every vertex outside
/// `G` at its constructed colour.
pub fn cpos_lift_path(art: &ReductionArtifact<CPoSInstance>, path: &ReconfigPath) -> Result<ReconfigPath> {
    let prov = &art.provenance;
    let g = source_graph(&art.instance.graph, prov);
    let path = ReconfigPath::new(&g, 4, path.steps().to_vec())?;
    let frame = art.instance.alpha.colours();
    let steps = path
        .steps()
        .iter()
        .map(|step| {
            let mut colours = frame.to_vec();
            for (v, &img) in prov.source.map.iter().enumerate() {
                colours[img] = step.colour(v);
            }
            Colouring::new(prov.p as u32, colours)
        })
        .collect::<Result<Vec<_>>>()?;
    ReconfigPath::new(&art.instance.graph, prov.p as u32, steps)
}

/// Restrict a walk in `R_p(G')` to `G`, dropping steps that leave `G`
/// unchanged.
pub fn cpos_restrict_path(art: &ReductionArtifact<CPoSInstance>, path: &ReconfigPath) -> Result<ReconfigPath> {
    let prov = &art.provenance;
    let path = ReconfigPath::new(&art.instance.graph, prov.p as u32, path.steps().to_vec())?;
    let mut steps: Vec<Colouring> = Vec::new();
    for step in path.steps() {
        let colours: Vec<u32> = prov.source.map.iter().map(|&v| step.colour(v)).collect();
        if let Some(&c) = colours.iter().find(|&&c| c > 4) {
            return Err(Error::InvalidPath(format!(
                "restricted colouring uses colour {c} outside 1..=4"
            )));
        }
        let restricted = Colouring::new(4, colours)?;
        if steps.last() != Some(&restricted) {
            steps.push(restricted);
        }
    }
    ReconfigPath::new(&source_graph(&art.instance.graph, prov), 4, steps)
}
