//! Colouring-or-Subgraph to its succinct version.
//!
//! The circuit is widened from `2m` to `6m` variables. Original vertices are
//! the codes that are zero beyond coordinate `m`; the universal clique and
//! every catalog member are placed longhand on one-hot codes of the new
//! coordinates, and the remaining codes stay isolated.

use serde::Serialize;

use super::SCoSInstance;
use crate::catalog::enumerate_graphs;
use crate::circuit::{
    add_longhand_graph, add_universal_adjacency_disjuncts, expand_add_vertices, one_hot_code, Circuit,
};
use crate::colouring::param_p;
use crate::error::{Error, Result};
use crate::graph::{add_universal_clique, disjoint_union, Graph};
use crate::par::Exec;

/// Coordinate layout of a reduced circuit. Coordinates are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuccinctLayout {
    /// Coordinates of the input circuit.
    pub m: usize,
    pub p: usize,
    /// Width of the universal clique, `max(p - 3, 0)`.
    pub clique_width: usize,
    /// Vertex count of each catalog member, in catalog order. Member `i`
    /// starts after coordinate `m + clique_width + p * i`.
    pub member_sizes: Vec<usize>,
    /// Coordinates of the output circuit, `3m`.
    pub total_m: usize,
}

/// What a code of the reduced circuit stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeRole {
    /// A vertex of the input graph, by its code there.
    Original(u64),
    Clique(usize),
    Member {
        index: usize,
        vertex: usize,
    },
    Isolated,
}

impl SuccinctLayout {
    pub fn member_offset(&self, index: usize) -> usize {
        self.m + self.clique_width + self.p * index
    }

    /// Role of an output code. Needs `total_m < 64`.
    pub fn role(&self, code: u64) -> CodeRole {
        let tail = self.total_m - self.m;
        if code & ((1u64 << tail) - 1) == 0 {
            return CodeRole::Original(code >> tail);
        }
        if !code.is_power_of_two() {
            return CodeRole::Isolated;
        }
        let coord = self.total_m - code.trailing_zeros() as usize;
        let rel = coord - self.m - 1;
        if rel < self.clique_width {
            return CodeRole::Clique(rel);
        }
        let rel = rel - self.clique_width;
        let (index, vertex) = (rel / self.p, rel % self.p);
        if index < self.member_sizes.len() {
            CodeRole::Member { index, vertex }
        } else {
            CodeRole::Isolated
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuccinctReduction {
    pub instance: SCoSInstance,
    pub layout: SuccinctLayout,
    pub input_size: usize,
    pub output_size: usize,
}

/// Reduce with `p = ceil(sqrt(log2 3m))`.
pub fn reduce_succinct(phi: &Circuit) -> Result<SuccinctReduction> {
    reduce_succinct_with_p(phi, param_p(3 * phi.m() as u64)?)
}

pub fn reduce_succinct_with_p(phi: &Circuit, p: usize) -> Result<SuccinctReduction> {
    let m = phi.m();
    let catalog = enumerate_graphs(p)?;
    let clique_width = p.saturating_sub(3);
    let used = m + clique_width + p * catalog.len();
    if used > 3 * m {
        return Err(Error::ConstructionTooLarge {
            inequality: format!(
                "m + (p - 3) + p * r = {m} + {clique_width} + {p} * {} = {used} <= 3m = {}",
                catalog.len(),
                3 * m
            ),
        });
    }
    let layout = SuccinctLayout {
        m,
        p,
        clique_width,
        member_sizes: catalog.members().iter().map(Graph::vertex_count).collect(),
        total_m: 3 * m,
    };
    let mut out = expand_add_vertices(phi, 2 * m)?;
    out = add_universal_adjacency_disjuncts(&out, m, clique_width)?;
    for (i, h) in catalog.members().iter().enumerate() {
        out = add_longhand_graph(&out, layout.member_offset(i), h)?;
    }
    debug_assert_eq!(out.var_count(), 6 * m);
    Ok(SuccinctReduction {
        input_size: phi.size(),
        output_size: out.size(),
        instance: SCoSInstance::new(out),
        layout,
    })
}

/// The graph the reduced circuit should define, built directly: materialize
/// `phi`, attach the universal clique, add the catalog as components, then
/// place everything on the codes given by `layout`. Independent of the
/// circuit surgery.
pub fn explicit_succinct_graph(phi: &Circuit, layout: &SuccinctLayout, cap: usize) -> Result<Graph> {
    if layout.total_m > cap {
        return Err(Error::MaterializationCap { m: layout.total_m, cap });
    }
    let g = phi.materialize_with(cap, Exec::default())?;
    let (gstar, _) = add_universal_clique(&g, layout.clique_width);
    let catalog = enumerate_graphs(layout.p)?;
    let mut parts = vec![&gstar];
    parts.extend(catalog.members());
    let (union, _) = disjoint_union(&parts);

    let tm = layout.total_m;
    let mut code_of: Vec<u64> = (0..g.vertex_count() as u64).map(|v| v << (tm - layout.m)).collect();
    code_of.extend((0..layout.clique_width).map(|i| one_hot_code(tm, layout.m + 1 + i)));
    for (i, h) in catalog.members().iter().enumerate() {
        let base = layout.member_offset(i);
        code_of.extend((0..h.vertex_count()).map(|q| one_hot_code(tm, base + q + 1)));
    }
    let edges: Vec<(usize, usize)> = union
        .edges()
        .map(|(a, b)| (code_of[a] as usize, code_of[b] as usize))
        .collect();
    Graph::from_edges(1 << tm, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{encode_longhand, DEFAULT_MATERIALIZATION_CAP};
    use crate::subgraph::contains_induced;

    #[test]
    fn m2_matches_explicit() {
        let phi = encode_longhand(&Graph::complete(2)).unwrap();
        let red = reduce_succinct(&phi).unwrap();
        let out = red.instance.circuit();
        assert_eq!(out.var_count(), 12);
        assert_eq!(red.layout.p, 2);
        assert_eq!(red.layout.clique_width, 0);
        let explicit = explicit_succinct_graph(&phi, &red.layout, DEFAULT_MATERIALIZATION_CAP).unwrap();
        assert_eq!(out.materialize().unwrap(), explicit);
        for h in enumerate_graphs(2).unwrap().members() {
            assert!(contains_induced(&explicit, h).is_some());
        }
    }

    #[test]
    fn roles() {
        let phi = Circuit::constant(3, false);
        let red = reduce_succinct(&phi).unwrap();
        let l = &red.layout;
        assert_eq!(l.total_m, 9);
        assert_eq!(l.role(0), CodeRole::Original(0));
        assert_eq!(l.role(0b101_000_000), CodeRole::Original(5));
        assert_eq!(l.role(one_hot_code(9, 4)), CodeRole::Member { index: 0, vertex: 0 });
        assert_eq!(l.role(one_hot_code(9, 7)), CodeRole::Member { index: 1, vertex: 1 });
        assert_eq!(l.role(one_hot_code(9, 8)), CodeRole::Isolated);
        assert_eq!(l.role(0b000_110_000), CodeRole::Isolated);
    }

    #[test]
    fn clique_width_positive() {
        assert!(matches!(
            reduce_succinct_with_p(&Circuit::constant(22, false), 4),
            Err(Error::ConstructionTooLarge { .. })
        ));
        let red = reduce_succinct_with_p(&Circuit::constant(23, false), 4).unwrap();
        assert_eq!(red.layout.clique_width, 1);
        let out = red.instance.circuit();
        assert_eq!(out.var_count(), 138);
        let hot = |c: usize| (1..=69).map(|l| l == c).collect::<Vec<bool>>();
        let zero = vec![false; 69];
        let mut orig = zero.clone();
        orig[4] = true;
        orig[20] = true;
        assert!(out.adjacency(&hot(24), &zero).unwrap());
        assert!(out.adjacency(&orig, &hot(24)).unwrap());
        assert!(!out.adjacency(&orig, &zero).unwrap());
        // member 10 of the p = 4 catalog is K4 on coordinates 65..=68
        assert!(out.adjacency(&hot(65), &hot(68)).unwrap());
        assert!(!out.adjacency(&hot(24), &hot(65)).unwrap());
        assert!(!out.adjacency(&hot(69), &zero).unwrap());
    }

    #[test]
    fn budget_error_for_m1() {
        assert!(matches!(
            reduce_succinct(&Circuit::constant(1, false)),
            Err(Error::ConstructionTooLarge { .. })
        ));
    }
}
