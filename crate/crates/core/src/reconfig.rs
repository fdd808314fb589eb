//! The k-colouring reconfiguration graph: proper k-colourings as nodes,
//! adjacent when they differ on exactly one vertex.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::colouring::{ensure_proper, is_proper, Colouring};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::par::Exec;

/// Default cap on colourings visited by one breadth-first search.
pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, Copy)]
pub struct ReconfigOptions {
    /// Visited-node cap, applied to each component search separately.
    pub budget: usize,
    pub exec: Exec,
}

impl Default for ReconfigOptions {
    fn default() -> Self {
        ReconfigOptions {
            budget: DEFAULT_BUDGET,
            exec: Exec::default(),
        }
    }
}

impl ReconfigOptions {
    pub fn with_budget(budget: usize) -> Self {
        ReconfigOptions {
            budget,
            ..Default::default()
        }
    }
}

/// A walk in the reconfiguration graph: proper colourings, consecutive ones
/// differing on exactly one vertex. May be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconfigPath {
    k: u32,
    steps: Vec<Colouring>,
}

impl ReconfigPath {
    pub fn new(g: &Graph, k: u32, steps: Vec<Colouring>) -> Result<Self> {
        for (i, c) in steps.iter().enumerate() {
            if c.k() != k {
                return Err(Error::InvalidPath(format!("step {i} uses k = {}, expected {k}", c.k())));
            }
            if !is_proper(g, c)? {
                return Err(Error::InvalidPath(format!("step {i} is not proper")));
            }
        }
        for (i, w) in steps.windows(2).enumerate() {
            let diff = w[0].differences(&w[1]).len();
            if diff != 1 {
                return Err(Error::InvalidPath(format!(
                    "steps {i} and {} differ on {diff} vertices",
                    i + 1
                )));
            }
        }
        Ok(ReconfigPath { k, steps })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn steps(&self) -> &[Colouring] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<Colouring> {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// All proper colourings at Hamming distance one from `c`, ordered by vertex
/// then colour.
pub fn recolour_neighbours(g: &Graph, c: &Colouring) -> Result<Vec<Colouring>> {
    ensure_proper(g, c)?;
    let mut out = Vec::new();
    for v in 0..g.vertex_count() {
        for colour in free_colours(g, c.colours(), c.k(), v) {
            out.push(c.recoloured(v, colour));
        }
    }
    Ok(out)
}

fn free_colours<'a>(g: &'a Graph, colours: &'a [u32], k: u32, v: usize) -> impl Iterator<Item = u32> + 'a {
    (1..=k).filter(move |&d| d != colours[v] && g.neighbours(v).iter().all(|&u| colours[u] != d))
}

/// Vertices whose closed neighbourhood already shows all `k` colours.
pub fn frozen_vertices(g: &Graph, c: &Colouring) -> Result<Vec<usize>> {
    ensure_proper(g, c)?;
    Ok((0..g.vertex_count())
        .filter(|&v| free_colours(g, c.colours(), c.k(), v).next().is_none())
        .collect())
}

pub fn path_exists(g: &Graph, alpha: &Colouring, beta: &Colouring) -> Result<bool> {
    path_exists_with(g, alpha, beta, &ReconfigOptions::default())
}

pub fn path_exists_with(g: &Graph, alpha: &Colouring, beta: &Colouring, opts: &ReconfigOptions) -> Result<bool> {
    Ok(find_path(g, alpha, beta, opts)?.is_some())
}

fn check_endpoints(g: &Graph, alpha: &Colouring, beta: &Colouring) -> Result<()> {
    if alpha.k() != beta.k() {
        return Err(Error::Parameter(format!(
            "endpoint palettes differ: {} vs {}",
            alpha.k(),
            beta.k()
        )));
    }
    ensure_proper(g, alpha)?;
    ensure_proper(g, beta)
}

/// A walk from `alpha` to `beta`, if one exists.
///
/// A recolouring step touches one vertex and therefore one component, so the
/// search runs per connected component and the component walks are
/// concatenated. Components on which the endpoints agree are skipped.
pub fn find_path(
    g: &Graph,
    alpha: &Colouring,
    beta: &Colouring,
    opts: &ReconfigOptions,
) -> Result<Option<ReconfigPath>> {
    check_endpoints(g, alpha, beta)?;
    let k = alpha.k();
    if alpha == beta {
        return Ok(Some(ReconfigPath {
            k,
            steps: vec![alpha.clone()],
        }));
    }
    let pending: Vec<Vec<usize>> = g
        .components()
        .into_iter()
        .filter(|comp| comp.iter().any(|&v| alpha.colour(v) != beta.colour(v)))
        .collect();
    let results = opts.exec.map(&pending, |comp| {
        let sub = g.induced_subgraph(comp);
        component_walk(&sub, k, &alpha.restrict(comp), &beta.restrict(comp), opts.budget)
    });
    // any unreachable component settles the answer even if another ran out
    if results.iter().any(|r| matches!(r, Ok(None))) {
        return Ok(None);
    }
    let mut steps = vec![alpha.clone()];
    for (comp, walk) in pending.iter().zip(results) {
        let walk = walk?.expect("checked above");
        for w in walk.windows(2) {
            let changed = w[0].differences(&w[1]);
            debug_assert_eq!(changed.len(), 1);
            let local = changed[0];
            let last = steps.last().unwrap();
            steps.push(last.recoloured(comp[local], w[1].colour(local)));
        }
    }
    debug_assert_eq!(steps.last(), Some(beta));
    Ok(Some(ReconfigPath { k, steps }))
}

/// Base-k encoding of colourings of one component.
struct Codec {
    k: u64,
    powers: Vec<u64>,
}

impl Codec {
    fn new(n: usize, k: u32) -> Result<Self> {
        let mut powers = Vec::with_capacity(n);
        let mut acc = 1u64;
        for _ in 0..n {
            powers.push(acc);
            acc = acc
                .checked_mul(k as u64)
                .ok_or(Error::StateSpaceTooLarge { vertices: n, k })?;
        }
        Ok(Codec { k: k as u64, powers })
    }

    fn encode(&self, colours: &[u32]) -> u64 {
        colours
            .iter()
            .zip(&self.powers)
            .map(|(&c, &p)| (c as u64 - 1) * p)
            .sum()
    }

    fn decode(&self, mut code: u64, out: &mut [u32]) {
        for slot in out.iter_mut() {
            *slot = (code % self.k) as u32 + 1;
            code /= self.k;
        }
    }
}

/// Breadth-first search inside one connected graph. Returns the walk as a
/// list of colourings of `g`.
fn component_walk(
    g: &Graph,
    k: u32,
    alpha: &Colouring,
    beta: &Colouring,
    budget: usize,
) -> Result<Option<Vec<Colouring>>> {
    let codec = Codec::new(g.vertex_count(), k)?;
    let start = codec.encode(alpha.colours());
    let goal = codec.encode(beta.colours());
    let mut parent: HashMap<u64, u64> = HashMap::new();
    parent.insert(start, start);
    let mut queue = VecDeque::from([start]);
    let mut colours = vec![0u32; g.vertex_count()];
    while let Some(code) = queue.pop_front() {
        if code == goal {
            let mut chain = vec![goal];
            let mut cur = goal;
            while cur != start {
                cur = parent[&cur];
                chain.push(cur);
            }
            chain.reverse();
            let walk = chain
                .into_iter()
                .map(|c| {
                    codec.decode(c, &mut colours);
                    Colouring::new(k, colours.clone()).expect("decoded colours in range")
                })
                .collect();
            return Ok(Some(walk));
        }
        codec.decode(code, &mut colours);
        for v in 0..g.vertex_count() {
            let current = colours[v] as u64;
            for d in free_colours(g, &colours, k, v) {
                let next = code - (current - 1) * codec.powers[v] + (d as u64 - 1) * codec.powers[v];
                if !parent.contains_key(&next) {
                    if parent.len() >= budget {
                        return Err(Error::BudgetExhausted { budget });
                    }
                    parent.insert(next, code);
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(None)
}

/// Reachability by plain breadth-first search over whole-graph colourings,
/// without splitting into components. Used as a control for the component
/// search.
pub fn path_exists_whole_graph(g: &Graph, alpha: &Colouring, beta: &Colouring, budget: usize) -> Result<bool> {
    check_endpoints(g, alpha, beta)?;
    if alpha == beta {
        return Ok(true);
    }
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(alpha.colours().to_vec());
    let mut queue = VecDeque::from([alpha.colours().to_vec()]);
    while let Some(cur) = queue.pop_front() {
        for v in 0..g.vertex_count() {
            for d in free_colours(g, &cur, alpha.k(), v).collect::<Vec<_>>() {
                let mut next = cur.clone();
                next[v] = d;
                if next == beta.colours() {
                    return Ok(true);
                }
                if !seen.contains(&next) {
                    if seen.len() >= budget {
                        return Err(Error::BudgetExhausted { budget });
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(false)
}

/// Every colouring reachable from `c`, `c` first, in breadth-first order.
pub fn reachable_colourings(g: &Graph, c: &Colouring, budget: usize) -> Result<Vec<Colouring>> {
    ensure_proper(g, c)?;
    let mut seen: HashSet<Vec<u32>> = HashSet::from([c.colours().to_vec()]);
    let mut order = vec![c.clone()];
    let mut i = 0;
    while i < order.len() {
        let cur = order[i].clone();
        i += 1;
        for v in 0..g.vertex_count() {
            for d in free_colours(g, cur.colours(), c.k(), v).collect::<Vec<_>>() {
                let next = cur.recoloured(v, d);
                if seen.insert(next.colours().to_vec()) {
                    if order.len() >= budget {
                        return Err(Error::BudgetExhausted { budget });
                    }
                    order.push(next);
                }
            }
        }
    }
    Ok(order)
}

/// Outcome of a path check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathCheck {
    Valid,
    Invalid(String),
}

impl PathCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, PathCheck::Valid)
    }
}

pub fn validate_path_streaming<I>(g: &Graph, alpha: &Colouring, beta: &Colouring, stream: I) -> Result<bool>
where
    I: IntoIterator<Item = Result<Colouring>>,
{
    Ok(check_path_streaming(g, alpha, beta, stream)?.is_valid())
}

/// Check that `stream` is a walk from `alpha` to `beta`, holding only the
/// previous and current colouring. Malformed elements surface as `Err`;
/// well-formed sequences that are not such a walk give
/// [`PathCheck::Invalid`].
pub fn check_path_streaming<I>(g: &Graph, alpha: &Colouring, beta: &Colouring, stream: I) -> Result<PathCheck>
where
    I: IntoIterator<Item = Result<Colouring>>,
{
    let mut prev: Option<Colouring> = None;
    for (i, item) in stream.into_iter().enumerate() {
        let cur = item?;
        if cur.k() != alpha.k() || cur.len() != g.vertex_count() {
            return Ok(PathCheck::Invalid(format!(
                "step {i} has shape (n = {}, k = {}), expected (n = {}, k = {})",
                cur.len(),
                cur.k(),
                g.vertex_count(),
                alpha.k()
            )));
        }
        if let Some((u, v)) = crate::colouring::monochromatic_edge(g, &cur)? {
            return Ok(PathCheck::Invalid(format!(
                "step {i} colours edge {u}-{v} with one colour"
            )));
        }
        match &prev {
            None if cur != *alpha => {
                return Ok(PathCheck::Invalid("first colouring is not the start colouring".into()));
            }
            Some(p) => {
                let diff = p.differences(&cur).len();
                if diff != 1 {
                    return Ok(PathCheck::Invalid(format!(
                        "steps {} and {i} differ on {diff} vertices",
                        i - 1
                    )));
                }
            }
            None => {}
        }
        prev = Some(cur);
    }
    Ok(match prev {
        None => PathCheck::Invalid("empty path".into()),
        Some(last) if last != *beta => PathCheck::Invalid("last colouring is not the target colouring".into()),
        Some(_) => PathCheck::Valid,
    })
}

/// A random walk of up to `steps` moves from `c`. Stops early at a colouring
/// with no neighbours.
pub fn random_walk<R: Rng + ?Sized>(g: &Graph, c: &Colouring, steps: usize, rng: &mut R) -> Result<ReconfigPath> {
    ensure_proper(g, c)?;
    let mut walk = vec![c.clone()];
    for _ in 0..steps {
        let options = recolour_neighbours(g, walk.last().unwrap())?;
        match options.choose(rng) {
            Some(next) => walk.push(next.clone()),
            None => break,
        }
    }
    Ok(ReconfigPath { k: c.k(), steps: walk })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::disjoint_union;

    fn col(k: u32, c: &[u32]) -> Colouring {
        Colouring::new(k, c.to_vec()).unwrap()
    }

    #[test]
    fn neighbours_of_rainbow_triangle() {
        assert!(recolour_neighbours(&Graph::complete(3), &col(3, &[1, 2, 3]))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn neighbours_small_cases() {
        assert_eq!(
            recolour_neighbours(&Graph::empty(1), &col(2, &[1])).unwrap(),
            vec![col(2, &[2])]
        );
        let got = recolour_neighbours(&Graph::complete(2), &col(3, &[1, 2])).unwrap();
        assert_eq!(got, vec![col(3, &[3, 2]), col(3, &[1, 3])]);
    }

    #[test]
    fn improper_input_rejected() {
        let err = recolour_neighbours(&Graph::complete(2), &col(3, &[1, 1])).unwrap_err();
        assert!(matches!(err, Error::ImproperColouring { .. }));
        assert!(frozen_vertices(&Graph::complete(2), &col(3, &[2, 2])).is_err());
        assert!(path_exists(&Graph::complete(2), &col(3, &[2, 2]), &col(3, &[1, 2])).is_err());
    }

    #[test]
    fn path_examples() {
        let k2 = Graph::complete(2);
        assert!(path_exists(&k2, &col(3, &[1, 2]), &col(3, &[2, 1])).unwrap());
        let k3 = Graph::complete(3);
        assert!(!path_exists(&k3, &col(3, &[1, 2, 3]), &col(3, &[2, 1, 3])).unwrap());
        let c = col(3, &[1, 2, 3]);
        assert!(path_exists(&k3, &c, &c).unwrap());
    }

    #[test]
    fn frozen_examples() {
        assert_eq!(
            frozen_vertices(&Graph::complete(4), &col(4, &[1, 2, 3, 4])).unwrap(),
            vec![0, 1, 2, 3]
        );
        assert!(frozen_vertices(&Graph::complete(2), &col(3, &[1, 2]))
            .unwrap()
            .is_empty());
        assert_eq!(
            frozen_vertices(&Graph::complete(2), &col(2, &[1, 2])).unwrap(),
            vec![0, 1]
        );
    }

    #[test]
    fn streaming_examples() {
        let k2 = Graph::complete(2);
        let a = col(3, &[1, 2]);
        assert!(validate_path_streaming(&k2, &a, &a, [Ok(a.clone())]).unwrap());
        let b = col(3, &[3, 1]);
        let walk = [col(3, &[1, 2]), col(3, &[3, 2]), col(3, &[3, 1])];
        assert!(validate_path_streaming(&k2, &a, &b, walk.into_iter().map(Ok)).unwrap());
        let jump = [col(3, &[1, 2]), col(3, &[2, 1])];
        assert!(!validate_path_streaming(&k2, &a, &col(3, &[2, 1]), jump.into_iter().map(Ok)).unwrap());
    }

    #[test]
    fn parse_error_is_not_invalid_path() {
        let k2 = Graph::complete(2);
        let a = col(3, &[1, 2]);
        let stream = vec![Ok(a.clone()), Err(Error::parse(3, 1, "bad colour"))];
        assert!(matches!(
            validate_path_streaming(&k2, &a, &a, stream),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn found_path_is_valid_and_spans_components() {
        let (g, _) = disjoint_union(&[&Graph::complete(2), &Graph::path(3)]);
        let a = col(3, &[1, 2, 1, 2, 1]);
        let b = col(3, &[2, 1, 2, 1, 2]);
        let path = find_path(&g, &a, &b, &ReconfigOptions::default()).unwrap().unwrap();
        assert!(validate_path_streaming(&g, &a, &b, path.steps().iter().cloned().map(Ok)).unwrap());
        assert!(ReconfigPath::new(&g, 3, path.into_steps()).is_ok());
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let g = Graph::empty(8);
        let a = Colouring::constant(4, 8, 1).unwrap();
        let b = Colouring::constant(4, 8, 2).unwrap();
        let err = path_exists_whole_graph(&g, &a, &b, 100).unwrap_err();
        assert!(matches!(err, Error::BudgetExhausted { budget: 100 }));
        // split per component, each search is tiny
        assert!(path_exists_with(&g, &a, &b, &ReconfigOptions::with_budget(100)).unwrap());
    }

    #[test]
    fn state_space_overflow() {
        let g = Graph::path(40);
        let a = Colouring::new(5, (0..40).map(|i| 1 + i % 2).collect()).unwrap();
        let b = Colouring::new(5, (0..40).map(|i| 2 - i % 2).collect()).unwrap();
        assert!(matches!(path_exists(&g, &a, &b), Err(Error::StateSpaceTooLarge { .. })));
    }
}
