//! Longhand constructions: graphs placed on one-hot vertex codes, and the
//! circuit surgery used by the succinct reduction.

use super::{Circuit, CircuitBuilder, Gate, NodeId, Side};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Vertex index of the one-hot vector with coordinate `coord` (1-based) set.
pub fn one_hot_code(m: usize, coord: usize) -> u64 {
    assert!((1..=m).contains(&coord));
    1u64 << (m - coord)
}

/// `x_i ∧ y_j ∧ ⋀_{l≠i} ¬x_l ∧ ⋀_{l≠j} ¬y_l` over all `m` coordinates: the
/// ordered pair of one-hot vertices `i`, `j`.
fn pair_term(b: &mut CircuitBuilder, i: usize, j: usize) -> NodeId {
    let m = b.m();
    let mut lits = vec![b.coord(Side::X, i), b.coord(Side::Y, j)];
    lits.extend((1..=m).filter(|&l| l != i).map(|l| b.literal(Side::X, l, false)));
    lits.extend((1..=m).filter(|&l| l != j).map(|l| b.literal(Side::Y, l, false)));
    b.and(lits)
}

/// Negations of coordinates `from + 1 ..= m` on one side.
fn zero_suffix(b: &mut CircuitBuilder, side: Side, from: usize) -> Vec<NodeId> {
    (from + 1..=b.m()).map(|l| b.literal(side, l, false)).collect()
}

/// One-hot vector at `coord` on one side, as a list of literals.
fn one_hot(b: &mut CircuitBuilder, side: Side, coord: usize) -> Vec<NodeId> {
    let m = b.m();
    let mut lits = vec![b.coord(side, coord)];
    lits.extend((1..=m).filter(|&l| l != coord).map(|l| b.literal(side, l, false)));
    lits
}

/// Extend the top-level disjunction of `phi` with the disjuncts produced by
/// `extra`.
fn append_disjuncts(phi: &Circuit, extra: impl FnOnce(&mut CircuitBuilder) -> Vec<NodeId>) -> Circuit {
    let mut b = CircuitBuilder::new(phi.m());
    let out = b.import(phi, |i| i).expect("same variable range");
    let new = extra(&mut b);
    if new.is_empty() {
        return phi.clone();
    }
    let children = match phi.output_gate() {
        Gate::Const(false) => new,
        Gate::Or(_) => match &b.gates[out] {
            Gate::Or(cs) => cs.iter().copied().chain(new).collect(),
            _ => unreachable!("imported output keeps its gate kind"),
        },
        _ => std::iter::once(out).chain(new).collect(),
    };
    let out = b.or(children);
    b.finish(out)
}

/// Place `g` on the one-hot codes of a `2n`-variable DNF circuit, one
/// disjunct per edge direction. Every other code is isolated.
pub fn encode_longhand(g: &Graph) -> Result<Circuit> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::Parameter("longhand encoding needs at least one vertex".into()));
    }
    add_longhand_graph(&Circuit::constant(n, false), 0, g)
}

/// Add longhand disjuncts placing `h` on the one-hot codes at coordinates
/// `offset + 1 ..= offset + |V(h)|`. All other coordinates must be zero.
pub fn add_longhand_graph(phi: &Circuit, offset: usize, h: &Graph) -> Result<Circuit> {
    if offset + h.vertex_count() > phi.m() {
        return Err(Error::Parameter(format!(
            "block at offset {offset} of width {} exceeds m = {}",
            h.vertex_count(),
            phi.m()
        )));
    }
    let mut ordered: Vec<(usize, usize)> = h.edges().flat_map(|(a, b)| [(a, b), (b, a)]).collect();
    ordered.sort_unstable();
    Ok(append_disjuncts(phi, |b| {
        ordered
            .iter()
            .map(|&(a, c)| pair_term(b, offset + a + 1, offset + c + 1))
            .collect()
    }))
}

/// Widen `phi` from `2m` to `2(m + k)` variables. Old vertices become the
/// codes with a zero suffix and keep their adjacency; every code with a
/// nonzero suffix is isolated.
pub fn expand_add_vertices(phi: &Circuit, k: usize) -> Result<Circuit> {
    if k == 0 {
        return Err(Error::Parameter("expansion width k must be at least 1".into()));
    }
    let m = phi.m();
    let mut b = CircuitBuilder::new(m + k);
    let old = b.import(phi, |i| if i <= m { i } else { i + k })?;
    let mut conj = vec![old];
    conj.extend(zero_suffix(&mut b, Side::X, m));
    conj.extend(zero_suffix(&mut b, Side::Y, m));
    let out = b.and(conj);
    Ok(b.finish(out))
}

/// Make the one-hot codes at coordinates `m + 1 ..= m + t` a clique that is
/// adjacent to every original vertex, meaning every code that is zero beyond
/// coordinate `m`.
pub fn add_universal_adjacency_disjuncts(phi: &Circuit, m: usize, t: usize) -> Result<Circuit> {
    if m + t > phi.m() {
        return Err(Error::Parameter(format!(
            "t = {t} exceeds expansion width {} beyond m = {m}",
            phi.m().saturating_sub(m)
        )));
    }
    Ok(append_disjuncts(phi, |b| {
        let mut out = Vec::new();
        for j in m + 1..=m + t {
            let mut to_new = zero_suffix(b, Side::X, m);
            to_new.extend(one_hot(b, Side::Y, j));
            out.push(b.and(to_new));
            let mut from_new = one_hot(b, Side::X, j);
            from_new.extend(zero_suffix(b, Side::Y, m));
            out.push(b.and(from_new));
        }
        for i in m + 1..=m + t {
            for j in (m + 1..=m + t).filter(|&j| j != i) {
                let mut lits = one_hot(b, Side::X, i);
                lits.extend(one_hot(b, Side::Y, j));
                out.push(b.and(lits));
            }
        }
        out
    }))
}
