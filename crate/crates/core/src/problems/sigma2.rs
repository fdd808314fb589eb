//! An exists-forall verifier for Colouring-or-Subgraph.
//!
//! The certificate is a `p`-colouring or an ordered graph `H` on at most `p`
//! vertices; the challenge is a tuple of `|V(H)|` vertices of `G`. The
//! instance is a yes-instance iff some certificate passes every challenge.

use crate::colouring::{is_proper, Colouring};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Upper bound on verifier calls for [`sigma2_decide`].
pub const SIGMA2_WORK_LIMIT: u128 = 200_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Colouring(Colouring),
    /// Vertex order is the order of `H`'s indices.
    Forbidden(Graph),
}

/// Colouring certificates ignore the challenge. For `H` the result is true
/// iff the challenge is not an induced copy of `H` in that order; tuples
/// with a repeated vertex are never copies.
pub fn sigma2_verify(g: &Graph, p: usize, cert: &Certificate, challenge: &[usize]) -> Result<bool> {
    match cert {
        Certificate::Colouring(c) => {
            if c.k() as usize != p {
                return Err(Error::MalformedCertificate(format!(
                    "colouring uses k = {}, expected {p}",
                    c.k()
                )));
            }
            if c.len() != g.vertex_count() {
                return Err(Error::MalformedCertificate(format!(
                    "colouring covers {} vertices, graph has {}",
                    c.len(),
                    g.vertex_count()
                )));
            }
            is_proper(g, c)
        }
        Certificate::Forbidden(h) => {
            let l = h.vertex_count();
            if l == 0 || l > p {
                return Err(Error::MalformedCertificate(format!(
                    "H has {l} vertices, expected 1..={p}"
                )));
            }
            if challenge.len() != l {
                return Err(Error::MalformedCertificate(format!(
                    "challenge has {} vertices, H has {l}",
                    challenge.len()
                )));
            }
            if let Some(&v) = challenge.iter().find(|&&v| v >= g.vertex_count()) {
                return Err(Error::MalformedCertificate(format!("challenge vertex {v} not in G")));
            }
            for i in 0..l {
                for j in i + 1..l {
                    let (a, b) = (challenge[i], challenge[j]);
                    if a == b || g.has_edge(a, b) != h.has_edge(i, j) {
                        return Ok(true);
                    }
                }
            }
            Ok(false)
        }
    }
}

/// Odometer over `0..base` digits. Returns false once it wraps.
fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn forall_challenges(g: &Graph, p: usize, cert: &Certificate, l: usize) -> Result<bool> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(true);
    }
    let mut tuple = vec![0usize; l];
    loop {
        if !sigma2_verify(g, p, cert, &tuple)? {
            return Ok(false);
        }
        if !advance(&mut tuple, n) {
            return Ok(true);
        }
    }
}

fn work_estimate(n: usize, p: usize) -> u128 {
    let n = n as u128;
    let mut total = (p as u128).saturating_pow(n as u32);
    for l in 1..=p as u32 {
        let graphs = 1u128.checked_shl(l * (l - 1) / 2).unwrap_or(u128::MAX);
        total = total.saturating_add(graphs.saturating_mul(n.saturating_pow(l)));
    }
    total
}

/// Exhaustive search: every `p`-colouring, then every labelled graph on
/// `1..=p` vertices against every challenge tuple.
pub fn sigma2_decide(g: &Graph, p: usize) -> Result<bool> {
    if p == 0 {
        return Err(Error::Parameter("p must be at least 1".into()));
    }
    if p > 6 {
        return Err(Error::EnumerationCap { p, cap: 6 });
    }
    let n = g.vertex_count();
    let work = work_estimate(n, p);
    if work > SIGMA2_WORK_LIMIT {
        return Err(Error::BudgetExhausted {
            budget: SIGMA2_WORK_LIMIT as usize,
        });
    }
    let mut digits = vec![0usize; n];
    loop {
        let colouring = Colouring::new(p as u32, digits.iter().map(|&d| d as u32 + 1).collect())?;
        if sigma2_verify(g, p, &Certificate::Colouring(colouring), &[])? {
            return Ok(true);
        }
        if !advance(&mut digits, p) {
            break;
        }
    }
    for l in 1..=p {
        let pairs: Vec<(usize, usize)> = (0..l).flat_map(|i| (i + 1..l).map(move |j| (i, j))).collect();
        for mask in 0u64..1 << pairs.len() {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let cert = Certificate::Forbidden(Graph::from_edges(l, &edges)?);
            if forall_challenges(g, p, &cert, l)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
