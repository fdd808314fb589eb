//! Oracle-equivalence suites: run a reduction, decide the output, and
//! compare with a brute-force answer on the input.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::enumerate_graphs;
use crate::circuit::{encode_longhand, Circuit, CircuitBuilder, NodeId, DEFAULT_MATERIALIZATION_CAP};
use crate::colouring::Colouring;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle;
use crate::par::Exec;
use crate::problems::{
    decide_cos, decide_cpos, explicit_succinct_graph, reduce_3col, reduce_4cp, reduce_succinct, ReductionMode,
};
use crate::reconfig::{path_exists_with, ReconfigOptions};

/// Random graphs in the 3-colouring suite have `1..=SAMPLE_MAX_N` vertices.
pub const SAMPLE_MAX_N: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Mismatch(String),
    /// A cap or search budget ran out; neither pass nor mismatch.
    ResourceLimit(String),
    Error(String),
}

#[derive(Debug, Clone)]
pub struct Case {
    pub label: String,
    pub outcome: Outcome,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub suite: &'static str,
    pub cases: Vec<Case>,
}

impl Report {
    fn count(&self, f: impl Fn(&Outcome) -> bool) -> usize {
        self.cases.iter().filter(|c| f(&c.outcome)).count()
    }

    pub fn passed(&self) -> usize {
        self.count(|o| *o == Outcome::Pass)
    }

    pub fn mismatches(&self) -> usize {
        self.count(|o| matches!(o, Outcome::Mismatch(_)))
    }

    pub fn resource_limited(&self) -> usize {
        self.count(|o| matches!(o, Outcome::ResourceLimit(_)))
    }

    pub fn errors(&self) -> usize {
        self.count(|o| matches!(o, Outcome::Error(_)))
    }

    pub fn all_pass(&self) -> bool {
        !self.cases.is_empty() && self.passed() == self.cases.len()
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {} cases, {} passed, {} mismatched, {} over budget, {} errors",
            self.suite,
            self.cases.len(),
            self.passed(),
            self.mismatches(),
            self.resource_limited(),
            self.errors()
        )
    }
}

fn outcome(result: Result<Option<String>>) -> Outcome {
    match result {
        Ok(None) => Outcome::Pass,
        Ok(Some(msg)) => Outcome::Mismatch(msg),
        Err(e) if e.is_resource_limit() => Outcome::ResourceLimit(e.to_string()),
        Err(e) => Outcome::Error(e.to_string()),
    }
}

fn compare(expected: bool, got: bool) -> Option<String> {
    (expected != got).then(|| format!("oracle says {expected}, reduction says {got}"))
}

/// Each unordered pair becomes an edge with probability 1/2.
pub fn random_graph<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    Graph::from_edges(n, &edges).expect("pairs are valid")
}

/// Random circuit over `2m` variables with nesting at most `depth`.
pub fn random_circuit<R: Rng + ?Sized>(m: usize, depth: usize, rng: &mut R) -> Circuit {
    fn node<R: Rng + ?Sized>(b: &mut CircuitBuilder, depth: usize, rng: &mut R) -> NodeId {
        let vars = 2 * b.m();
        if depth == 0 || rng.gen_bool(0.3) {
            return if rng.gen_bool(0.1) {
                b.constant(rng.gen())
            } else {
                b.var(rng.gen_range(1..=vars)).expect("in range")
            };
        }
        match rng.gen_range(0..3) {
            0 => {
                let c = node(b, depth - 1, rng);
                b.not(c)
            }
            kind => {
                let k = rng.gen_range(1..=3);
                let children = (0..k).map(|_| node(b, depth - 1, rng)).collect();
                if kind == 1 {
                    b.and(children)
                } else {
                    b.or(children)
                }
            }
        }
    }
    let mut b = CircuitBuilder::new(m);
    let out = node(&mut b, depth, rng);
    b.finish(out)
}

fn graph_label(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().map(|(u, v)| format!("{u}-{v}")).collect();
    format!("n={} edges=[{}]", g.vertex_count(), edges.join(","))
}

/// Every graph on `1..=max_n` vertices up to isomorphism, then `samples`
/// random labelled graphs. Each is reduced with `p = 4` and compared with
/// brute-force 3-colourability.
pub fn verify_3col_cos(max_n: usize, samples: usize, seed: u64, exec: Exec) -> Result<Report> {
    let mut graphs = Vec::new();
    for n in 1..=max_n {
        graphs.extend(enumerate_graphs(n)?.members().iter().cloned());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let n = rng.gen_range(1..=SAMPLE_MAX_N);
        graphs.push(random_graph(n, &mut rng));
    }
    let cases = exec.map(&graphs, |g| {
        let result = reduce_3col(g, ReductionMode::Generalized { p: 4 })
            .and_then(|art| decide_cos(&art.instance))
            .map(|got| compare(oracle::is_k_colourable(g, 3), got));
        Case {
            label: graph_label(g),
            outcome: outcome(result),
        }
    });
    Ok(Report {
        suite: "3col-cos",
        cases,
    })
}

/// One 4-Colour-Path instance and its reduction.
#[derive(Debug, Clone)]
pub struct CposCase {
    pub graph: Graph,
    pub alpha: Colouring,
    pub beta: Colouring,
}

/// Every graph on `1..=min(max_n, 3)` vertices with every ordered pair of
/// proper 4-colourings, then `samples` random pairs on random 4-vertex
/// graphs when `max_n >= 4`.
pub fn cpos_cases(max_n: usize, samples: usize, seed: u64) -> Result<Vec<CposCase>> {
    let mut cases = Vec::new();
    for n in 1..=max_n.min(3) {
        for g in enumerate_graphs(n)?.members() {
            let all = oracle::all_proper_colourings(g, 4);
            for a in &all {
                for b in &all {
                    cases.push(CposCase {
                        graph: g.clone(),
                        alpha: a.clone(),
                        beta: b.clone(),
                    });
                }
            }
        }
    }
    if max_n >= 4 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let g = random_graph(4, &mut rng);
            let all = oracle::all_proper_colourings(&g, 4);
            let a = all.choose(&mut rng).expect("4 vertices are 4-colourable").clone();
            let b = all.choose(&mut rng).expect("4 vertices are 4-colourable").clone();
            cases.push(CposCase {
                graph: g,
                alpha: a,
                beta: b,
            });
        }
    }
    Ok(cases)
}

/// [`cpos_cases`] reduced with `p = 5` and compared with reachability in
/// the explicitly built `R_4(G)`. The component search on `G` itself is
/// checked against the same oracle.
pub fn verify_4cp_cpos(max_n: usize, samples: usize, seed: u64, opts: &ReconfigOptions) -> Result<Report> {
    let cases = cpos_cases(max_n, samples, seed)?;
    let inner = ReconfigOptions {
        exec: Exec::Sequential,
        ..*opts
    };
    let cases = opts.exec.map(&cases, |c| {
        let result = (|| {
            let expected = oracle::reachable(&c.graph, 4, &c.alpha, &c.beta);
            let direct = path_exists_with(&c.graph, &c.alpha, &c.beta, &inner)?;
            if direct != expected {
                return Ok(Some(format!(
                    "oracle says {expected}, component search on G says {direct}"
                )));
            }
            let art = reduce_4cp(&c.graph, &c.alpha, &c.beta, ReductionMode::Generalized { p: 5 })?;
            Ok(compare(expected, decide_cpos(&art.instance, &inner)?))
        })();
        Case {
            label: format!(
                "{} alpha={:?} beta={:?}",
                graph_label(&c.graph),
                c.alpha.colours(),
                c.beta.colours()
            ),
            outcome: outcome(result),
        }
    });
    Ok(Report {
        suite: "4cp-cpos",
        cases,
    })
}

/// Circuits over `2m` variables: both constants, the longhand encoding of
/// every graph on `m` vertices, and `samples` random circuits. Each reduced
/// circuit must have `6m` variables and define exactly the explicitly
/// constructed graph.
pub fn verify_s3col_scos(m: usize, samples: usize, seed: u64, exec: Exec) -> Result<Report> {
    if m == 0 {
        return Err(Error::Parameter("m must be at least 1".into()));
    }
    if 3 * m > DEFAULT_MATERIALIZATION_CAP {
        return Err(Error::MaterializationCap {
            m: 3 * m,
            cap: DEFAULT_MATERIALIZATION_CAP,
        });
    }
    let mut circuits = vec![
        ("false".to_string(), Circuit::constant(m, false)),
        ("true".to_string(), Circuit::constant(m, true)),
    ];
    for g in enumerate_graphs(m)?.members() {
        circuits.push((format!("longhand {}", graph_label(g)), encode_longhand(g)?));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        circuits.push((format!("random #{i}"), random_circuit(m, 4, &mut rng)));
    }
    let cases = exec.map(&circuits, |(label, phi)| {
        let result = (|| {
            let red = reduce_succinct(phi)?;
            let out = red.instance.circuit();
            if out.var_count() != 6 * m {
                return Ok(Some(format!("{} variables, expected {}", out.var_count(), 6 * m)));
            }
            let built = out.materialize_with(DEFAULT_MATERIALIZATION_CAP, Exec::Sequential)?;
            let explicit = explicit_succinct_graph(phi, &red.layout, DEFAULT_MATERIALIZATION_CAP)?;
            if built == explicit {
                return Ok(None);
            }
            let bad = (0..built.vertex_count())
                .flat_map(|u| (u + 1..built.vertex_count()).map(move |v| (u, v)))
                .find(|&(u, v)| built.has_edge(u, v) != explicit.has_edge(u, v));
            Ok(Some(format!("adjacency differs at codes {bad:?}")))
        })();
        Case {
            label: label.clone(),
            outcome: outcome(result),
        }
    });
    Ok(Report {
        suite: "s3col-scos",
        cases,
    })
}
