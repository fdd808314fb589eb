//! Colourings, properness, and the exhaustive k-colourability decision.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Total assignment of colours `1..=k` to vertices `0..n`.
///
/// Properness is not part of the type; see [`is_proper`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Colouring {
    k: u32,
    colours: Vec<u32>,
}

impl Colouring {
    pub fn new(k: u32, colours: Vec<u32>) -> Result<Self> {
        if k == 0 {
            return Err(Error::Parameter("k must be at least 1".into()));
        }
        if let Some(&c) = colours.iter().find(|&&c| c == 0 || c > k) {
            return Err(Error::ColourOutOfRange { colour: c, k });
        }
        Ok(Colouring { k, colours })
    }

    /// Every vertex coloured `colour`.
    pub fn constant(k: u32, n: usize, colour: u32) -> Result<Self> {
        Self::new(k, vec![colour; n])
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    pub fn colour(&self, v: usize) -> u32 {
        self.colours[v]
    }

    pub fn colours(&self) -> &[u32] {
        &self.colours
    }

    /// Same assignment read against a different palette size.
    pub fn with_k(&self, k: u32) -> Result<Self> {
        Self::new(k, self.colours.clone())
    }

    /// Copy with vertex `v` recoloured.
    pub fn recoloured(&self, v: usize, colour: u32) -> Self {
        debug_assert!((1..=self.k).contains(&colour));
        let mut colours = self.colours.clone();
        colours[v] = colour;
        Colouring { k: self.k, colours }
    }

    /// Restriction to `vertices`, in that order.
    pub fn restrict(&self, vertices: &[usize]) -> Self {
        Colouring {
            k: self.k,
            colours: vertices.iter().map(|&v| self.colours[v]).collect(),
        }
    }

    /// Vertices on which `self` and `other` differ.
    pub fn differences(&self, other: &Colouring) -> Vec<usize> {
        self.colours
            .iter()
            .zip(&other.colours)
            .enumerate()
            .filter_map(|(v, (a, b))| (a != b).then_some(v))
            .collect()
    }
}

/// First monochromatic edge, if any.
pub fn monochromatic_edge(g: &Graph, c: &Colouring) -> Result<Option<(usize, usize)>> {
    if c.len() != g.vertex_count() {
        return Err(Error::DomainMismatch {
            expected: g.vertex_count(),
            got: c.len(),
        });
    }
    Ok(g.edges().find(|&(u, v)| c.colour(u) == c.colour(v)))
}

pub fn is_proper(g: &Graph, c: &Colouring) -> Result<bool> {
    Ok(monochromatic_edge(g, c)?.is_none())
}

/// Fails with [`Error::ImproperColouring`] unless `c` is proper on `g`.
pub fn ensure_proper(g: &Graph, c: &Colouring) -> Result<()> {
    match monochromatic_edge(g, c)? {
        Some((u, v)) => Err(Error::ImproperColouring { u, v }),
        None => Ok(()),
    }
}

/// A proper k-colouring of `g`, if one exists.
///
/// Components are solved independently. Within a component the search picks
/// the uncoloured vertex with the fewest remaining colours and only ever opens
/// one fresh colour at a time, so the first vertex always receives colour 1.
pub fn find_k_colouring(g: &Graph, k: u32) -> Option<Colouring> {
    assert!(k >= 1, "k must be at least 1");
    let mut colours = vec![0u32; g.vertex_count()];
    for comp in g.components() {
        let sub = g.induced_subgraph(&comp);
        let local = colour_component(&sub, k)?;
        for (i, &v) in comp.iter().enumerate() {
            colours[v] = local[i];
        }
    }
    let c = Colouring { k, colours };
    debug_assert!(is_proper(g, &c).unwrap());
    Some(c)
}

pub fn is_k_colourable(g: &Graph, k: u32) -> bool {
    find_k_colouring(g, k).is_some()
}

fn colour_component(g: &Graph, k: u32) -> Option<Vec<u32>> {
    let n = g.vertex_count();
    if n as u64 <= k as u64 {
        return Some((1..=n as u32).collect());
    }
    let k = k as usize;
    let mut search = Backtrack {
        g,
        k,
        colour: vec![0; n],
        conflicts: vec![0; n * (k + 1)],
        available: vec![k; n],
    };
    search
        .run(0, 0)
        .then(|| search.colour.iter().map(|&c| c as u32).collect())
}

struct Backtrack<'a> {
    g: &'a Graph,
    k: usize,
    colour: Vec<usize>,
    /// `conflicts[v * (k + 1) + c]`: coloured neighbours of `v` using `c`.
    conflicts: Vec<u32>,
    available: Vec<usize>,
}

impl Backtrack<'_> {
    fn pick(&self) -> Option<usize> {
        (0..self.g.vertex_count())
            .filter(|&v| self.colour[v] == 0)
            .min_by_key(|&v| (self.available[v], usize::MAX - self.g.degree(v), v))
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.colour[v] = c;
        for &u in self.g.neighbours(v) {
            let slot = &mut self.conflicts[u * (self.k + 1) + c];
            if *slot == 0 {
                self.available[u] -= 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.colour[v] = 0;
        for &u in self.g.neighbours(v) {
            let slot = &mut self.conflicts[u * (self.k + 1) + c];
            *slot -= 1;
            if *slot == 0 {
                self.available[u] += 1;
            }
        }
    }

    fn run(&mut self, coloured: usize, max_used: usize) -> bool {
        if coloured == self.g.vertex_count() {
            return true;
        }
        let v = self.pick().expect("uncoloured vertex remains");
        if self.available[v] == 0 {
            return false;
        }
        let limit = self.k.min(max_used + 1);
        for c in 1..=limit {
            if self.conflicts[v * (self.k + 1) + c] != 0 {
                continue;
            }
            self.assign(v, c);
            if self.run(coloured + 1, max_used.max(c)) {
                return true;
            }
            self.unassign(v, c);
        }
        false
    }
}

/// `ceil(log2 n)` for `n >= 1`.
pub fn ceil_log2(n: u64) -> u32 {
    assert!(n >= 1);
    u64::BITS - (n - 1).leading_zeros()
}

/// Smallest `p` with `p * p >= x`.
pub fn ceil_sqrt(x: u64) -> u64 {
    let mut p = 0u64;
    while p * p < x {
        p += 1;
    }
    p
}

/// `ceil(sqrt(log2 n))`, computed exactly. Since `p * p` is an integer,
/// `p * p >= log2 n` holds iff `p * p >= ceil(log2 n)`.
pub fn param_p(n: u64) -> Result<usize> {
    if n < 2 {
        return Err(Error::ParameterUndefined(format!(
            "ceil(sqrt(log2 n)) needs n >= 2, got {n}"
        )));
    }
    Ok(ceil_sqrt(ceil_log2(n) as u64) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(k: u32, c: &[u32]) -> Colouring {
        Colouring::new(k, c.to_vec()).unwrap()
    }

    #[test]
    fn properness() {
        let k2 = Graph::complete(2);
        assert!(is_proper(&k2, &col(2, &[1, 2])).unwrap());
        assert!(!is_proper(&k2, &col(2, &[1, 1])).unwrap());
        assert!(is_proper(&Graph::cycle(5), &col(3, &[1, 2, 1, 2, 3])).unwrap());
    }

    #[test]
    fn domain_and_range_errors() {
        assert!(matches!(
            is_proper(&Graph::complete(3), &col(2, &[1, 2])),
            Err(Error::DomainMismatch { expected: 3, got: 2 })
        ));
        assert!(matches!(
            Colouring::new(2, vec![3]),
            Err(Error::ColourOutOfRange { .. })
        ));
        assert!(Colouring::new(0, vec![]).is_err());
    }

    #[test]
    fn solver_cases() {
        assert!(find_k_colouring(&Graph::cycle(5), 2).is_none());
        let c = find_k_colouring(&Graph::cycle(5), 3).unwrap();
        assert!(is_proper(&Graph::cycle(5), &c).unwrap());
        assert!(find_k_colouring(&Graph::complete(4), 3).is_none());
        assert_eq!(find_k_colouring(&Graph::empty(0), 1).unwrap().len(), 0);
    }

    #[test]
    fn first_vertex_gets_colour_one() {
        let c = find_k_colouring(&Graph::cycle(7), 3).unwrap();
        assert_eq!(c.colour(0), 1);
    }

    #[test]
    fn petersen_is_three_chromatic() {
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        edges.extend((0..5).map(|i| (i, i + 5)));
        edges.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
        let g = Graph::from_edges(10, &edges).unwrap();
        assert!(find_k_colouring(&g, 2).is_none());
        assert!(find_k_colouring(&g, 3).is_some());
    }

    #[test]
    fn param_p_values() {
        assert_eq!(param_p(512).unwrap(), 3);
        assert_eq!(param_p(1024).unwrap(), 4);
        assert_eq!(param_p(2).unwrap(), 1);
        assert_eq!(param_p(513).unwrap(), 4);
        assert_eq!(param_p(600).unwrap(), 4);
        assert!(matches!(param_p(1), Err(Error::ParameterUndefined(_))));
    }

    #[test]
    fn param_p_boundaries_at_powers_of_two() {
        // log2(2^j) = j exactly; one more vertex pushes past it
        for j in 1..=40u32 {
            let n = 1u64 << j;
            assert_eq!(param_p(n).unwrap() as u64, ceil_sqrt(j as u64));
            assert_eq!(param_p(n + 1).unwrap() as u64, ceil_sqrt(j as u64 + 1));
        }
    }
}
