//! The three decision problems and the reductions that build their hard
//! instances.
//!
//! * Colouring-or-Subgraph (CoS): is `G` `p`-colourable, or free of some
//!   graph on at most `p` vertices?
//! * Colour-Path-or-Subgraph (CPoS): is `beta` reachable from `alpha` by
//!   single-vertex recolourings within `p` colours, or is `G` free of some
//!   graph on at most `p` vertices?
//! * Succinct CoS: CoS on the graph of a circuit over `2m` variables, with
//!   `p` derived from `m`.
//!
//! In faithful mode `p` is `ceil(sqrt(log2 n))` (for the succinct problem,
//! `ceil(sqrt(log2 m))`). Generalized mode carries an explicit `p`.

mod hereditary;
mod reduce_cos;
mod reduce_cpos;
mod sigma2;
mod succinct;

use serde::Serialize;

pub use hereditary::{hereditary_fast_decide, threshold, FastDecision, HereditaryOptions, InstanceRef, Route};
pub use reduce_cos::{cos_backward_colouring, cos_forward_colouring, reduce_3col};
pub use reduce_cpos::{cpos_lift_path, cpos_restrict_path, reduce_4cp};
pub use sigma2::{sigma2_decide, sigma2_verify, Certificate, SIGMA2_WORK_LIMIT};
pub use succinct::{
    explicit_succinct_graph, reduce_succinct, reduce_succinct_with_p, CodeRole, SuccinctLayout, SuccinctReduction,
};

use crate::circuit::{Circuit, DEFAULT_MATERIALIZATION_CAP};
use crate::colouring::{ensure_proper, find_k_colouring, param_p, Colouring};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexMap};
use crate::par::Exec;
use crate::reconfig::{find_path, ReconfigOptions, ReconfigPath};
use crate::subgraph::find_forbidden_with;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Faithful,
    Generalized,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Faithful => "faithful",
            Mode::Generalized => "generalized",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "faithful" => Ok(Mode::Faithful),
            "generalized" => Ok(Mode::Generalized),
            other => Err(Error::Parameter(format!("unknown mode `{other}`"))),
        }
    }
}

/// How a reduction chooses `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionMode {
    /// `p = ceil(sqrt(log2 3n))`, output padded to exactly `3n` vertices.
    Faithful,
    /// Explicit `p`, no padding.
    Generalized { p: usize },
}

impl ReductionMode {
    pub fn mode(self) -> Mode {
        match self {
            ReductionMode::Faithful => Mode::Faithful,
            ReductionMode::Generalized { .. } => Mode::Generalized,
        }
    }
}

fn faithful_p(n: usize) -> Result<usize> {
    param_p(n as u64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoSInstance {
    graph: Graph,
    p: usize,
    mode: Mode,
}

impl CoSInstance {
    pub fn faithful(graph: Graph) -> Result<Self> {
        let p = faithful_p(graph.vertex_count())?;
        Ok(CoSInstance {
            graph,
            p,
            mode: Mode::Faithful,
        })
    }

    pub fn generalized(graph: Graph, p: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::Parameter("p must be at least 1".into()));
        }
        Ok(CoSInstance {
            graph,
            p,
            mode: Mode::Generalized,
        })
    }

    pub fn new(graph: Graph, p: usize, mode: Mode) -> Result<Self> {
        let inst = match mode {
            Mode::Faithful => Self::faithful(graph)?,
            Mode::Generalized => Self::generalized(graph, p)?,
        };
        if inst.p != p {
            return Err(Error::Parameter(format!(
                "faithful mode requires p = {}, got {p}",
                inst.p
            )));
        }
        Ok(inst)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CPoSInstance {
    graph: Graph,
    alpha: Colouring,
    beta: Colouring,
    p: usize,
    mode: Mode,
}

impl CPoSInstance {
    pub fn new(graph: Graph, alpha: Colouring, beta: Colouring, p: usize, mode: Mode) -> Result<Self> {
        if p == 0 {
            return Err(Error::Parameter("p must be at least 1".into()));
        }
        if mode == Mode::Faithful {
            let want = faithful_p(graph.vertex_count())?;
            if want != p {
                return Err(Error::Parameter(format!("faithful mode requires p = {want}, got {p}")));
            }
        }
        for c in [&alpha, &beta] {
            if c.k() as usize != p {
                return Err(Error::Parameter(format!(
                    "endpoint colourings must use k = p = {p}, got k = {}",
                    c.k()
                )));
            }
            ensure_proper(&graph, c)?;
        }
        Ok(CPoSInstance {
            graph,
            alpha,
            beta,
            p,
            mode,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn alpha(&self) -> &Colouring {
        &self.alpha
    }

    pub fn beta(&self) -> &Colouring {
        &self.beta
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }
}

/// Succinct instance; `p` is derived from the circuit's `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SCoSInstance {
    circuit: Circuit,
}

impl SCoSInstance {
    pub fn new(circuit: Circuit) -> Self {
        SCoSInstance { circuit }
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    pub fn m(&self) -> usize {
        self.circuit.m()
    }

    /// `ceil(sqrt(log2 m))`; undefined for `m = 1`.
    pub fn p(&self) -> Result<usize> {
        param_p(self.circuit.m() as u64)
    }
}

/// Where the reduction put each part of its output graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub mode: Mode,
    pub p: usize,
    pub vertex_count: usize,
    /// Input graph into the output graph.
    pub source: VertexMap,
    /// The universal clique (CoS) or the clique `K` (CPoS).
    pub clique: Vec<usize>,
    /// The clique `L` (CPoS only).
    pub clique_l: Vec<usize>,
    /// One map per catalog member, in catalog order.
    pub catalog: Vec<VertexMap>,
    pub padding: Vec<usize>,
}

impl Provenance {
    /// The parts are disjoint and together cover every output vertex.
    pub fn partitions_output(&self) -> bool {
        let mut hits = vec![0u32; self.vertex_count];
        let maps = std::iter::once(&self.source).chain(&self.catalog);
        let lists = maps.map(|m| m.map.as_slice()).chain([
            self.clique.as_slice(),
            self.clique_l.as_slice(),
            self.padding.as_slice(),
        ]);
        for list in lists {
            for &v in list {
                match hits.get_mut(v) {
                    Some(h) => *h += 1,
                    None => return false,
                }
            }
        }
        hits.iter().all(|&h| h == 1)
    }
}

#[derive(Debug, Clone)]
pub struct ReductionArtifact<I> {
    pub instance: I,
    pub provenance: Provenance,
}

/// Witness for a CoS yes-answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CosWitness {
    Colouring(Colouring),
    /// Catalog index and the member the graph is free of.
    Forbidden {
        index: usize,
        graph: Graph,
    },
}

/// Witness for a CPoS yes-answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CposWitness {
    Path(ReconfigPath),
    Forbidden { index: usize, graph: Graph },
}

fn solve_cos_graph(g: &Graph, p: usize, exec: Exec) -> Result<Option<CosWitness>> {
    if let Some(c) = find_k_colouring(g, p as u32) {
        return Ok(Some(CosWitness::Colouring(c)));
    }
    Ok(find_forbidden_with(g, p, exec)?.map(|(index, graph)| CosWitness::Forbidden { index, graph }))
}

pub fn solve_cos(inst: &CoSInstance) -> Result<Option<CosWitness>> {
    solve_cos_graph(&inst.graph, inst.p, Exec::default())
}

pub fn decide_cos(inst: &CoSInstance) -> Result<bool> {
    Ok(solve_cos(inst)?.is_some())
}

/// The subgraph disjunct is tried first: it needs no search budget.
pub fn solve_cpos(inst: &CPoSInstance, opts: &ReconfigOptions) -> Result<Option<CposWitness>> {
    if inst.alpha == inst.beta {
        let path = ReconfigPath::new(&inst.graph, inst.p as u32, vec![inst.alpha.clone()])?;
        return Ok(Some(CposWitness::Path(path)));
    }
    if let Some((index, graph)) = find_forbidden_with(&inst.graph, inst.p, opts.exec)? {
        return Ok(Some(CposWitness::Forbidden { index, graph }));
    }
    Ok(find_path(&inst.graph, &inst.alpha, &inst.beta, opts)?.map(CposWitness::Path))
}

pub fn decide_cpos(inst: &CPoSInstance, opts: &ReconfigOptions) -> Result<bool> {
    Ok(solve_cpos(inst, opts)?.is_some())
}

pub fn solve_scos(inst: &SCoSInstance) -> Result<Option<CosWitness>> {
    solve_scos_with(inst, DEFAULT_MATERIALIZATION_CAP)
}

/// Decide by materializing the circuit's graph.
pub fn solve_scos_with(inst: &SCoSInstance, cap: usize) -> Result<Option<CosWitness>> {
    let p = inst.p()?;
    let exec = Exec::default();
    let g = inst.circuit.materialize_with(cap, exec)?;
    solve_cos_graph(&g, p, exec)
}

pub fn decide_scos(inst: &SCoSInstance) -> Result<bool> {
    Ok(solve_scos(inst)?.is_some())
}
