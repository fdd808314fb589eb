//! Boolean circuits over `2m` variables defining graphs on `2^m` vertices.
//!
//! Variables are numbered `1..=2m`: `x_i` is variable `i` and `y_i` is
//! variable `m + i`. A vertex is a bit vector `(x_1, ..., x_m)` and its index
//! reads `x_1` as the most significant bit.
//!
//! Circuits are stored as a hash-consed gate arena in canonical post-order
//! from the output, so structurally equal subexpressions share one node and
//! two circuits are equal exactly when their expressions are equal.

mod dsl;
mod longhand;

use std::collections::HashMap;

pub use dsl::{parse_circuit, serialize_circuit};
pub use longhand::{
    add_longhand_graph, add_universal_adjacency_disjuncts, encode_longhand, expand_add_vertices, one_hot_code,
};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::par::Exec;

/// Default largest `m` accepted by [`Circuit::materialize`].
pub const DEFAULT_MATERIALIZATION_CAP: usize = 18;

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Gate {
    Const(bool),
    /// 1-based variable index.
    Var(usize),
    Not(NodeId),
    And(Vec<NodeId>),
    Or(Vec<NodeId>),
}

impl Gate {
    fn children(&self) -> &[NodeId] {
        match self {
            Gate::Const(_) | Gate::Var(_) => &[],
            Gate::Not(c) => std::slice::from_ref(c),
            Gate::And(cs) | Gate::Or(cs) => cs,
        }
    }

    fn map_children(&self, f: impl Fn(NodeId) -> NodeId) -> Gate {
        match self {
            Gate::Const(b) => Gate::Const(*b),
            Gate::Var(i) => Gate::Var(*i),
            Gate::Not(c) => Gate::Not(f(*c)),
            Gate::And(cs) => Gate::And(cs.iter().map(|&c| f(c)).collect()),
            Gate::Or(cs) => Gate::Or(cs.iter().map(|&c| f(c)).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    m: usize,
    gates: Vec<Gate>,
    output: NodeId,
}

/// Side of a vertex pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    X,
    Y,
}

/// Incremental, hash-consing circuit construction.
#[derive(Debug, Clone)]
pub struct CircuitBuilder {
    m: usize,
    gates: Vec<Gate>,
    index: HashMap<Gate, NodeId>,
}

impl CircuitBuilder {
    pub fn new(m: usize) -> Self {
        CircuitBuilder {
            m,
            gates: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    fn intern(&mut self, gate: Gate) -> NodeId {
        if let Some(&id) = self.index.get(&gate) {
            return id;
        }
        let id = self.gates.len();
        self.gates.push(gate.clone());
        self.index.insert(gate, id);
        id
    }

    pub fn constant(&mut self, value: bool) -> NodeId {
        self.intern(Gate::Const(value))
    }

    pub fn var(&mut self, index: usize) -> Result<NodeId> {
        if index == 0 || index > 2 * self.m {
            return Err(Error::VarOutOfRange { index, max: 2 * self.m });
        }
        Ok(self.intern(Gate::Var(index)))
    }

    /// Coordinate `coord` (1-based, at most `m`) of one side of the pair.
    pub fn coord(&mut self, side: Side, coord: usize) -> NodeId {
        assert!(
            (1..=self.m).contains(&coord),
            "coordinate {coord} outside 1..={}",
            self.m
        );
        let index = match side {
            Side::X => coord,
            Side::Y => self.m + coord,
        };
        self.intern(Gate::Var(index))
    }

    pub fn not(&mut self, child: NodeId) -> NodeId {
        self.intern(Gate::Not(child))
    }

    /// Conjunction; the empty conjunction is `true`.
    pub fn and(&mut self, children: Vec<NodeId>) -> NodeId {
        if children.is_empty() {
            return self.constant(true);
        }
        self.intern(Gate::And(children))
    }

    /// Disjunction; the empty disjunction is `false`.
    pub fn or(&mut self, children: Vec<NodeId>) -> NodeId {
        if children.is_empty() {
            return self.constant(false);
        }
        self.intern(Gate::Or(children))
    }

    /// Literal for coordinate `coord` of `side`, negated unless `positive`.
    pub fn literal(&mut self, side: Side, coord: usize, positive: bool) -> NodeId {
        let v = self.coord(side, coord);
        if positive {
            v
        } else {
            self.not(v)
        }
    }

    /// Copy `circuit`'s gates in, renaming each variable through `rename`.
    /// Returns the id of the imported output.
    pub fn import(&mut self, circuit: &Circuit, rename: impl Fn(usize) -> usize) -> Result<NodeId> {
        let mut ids = Vec::with_capacity(circuit.gates.len());
        for gate in &circuit.gates {
            let id = match gate {
                Gate::Var(i) => self.var(rename(*i))?,
                other => {
                    let g = other.map_children(|c| ids[c]);
                    self.intern(g)
                }
            };
            ids.push(id);
        }
        Ok(ids[circuit.output])
    }

    /// Canonicalize and freeze with `output` as the designated output.
    pub fn finish(self, output: NodeId) -> Circuit {
        canonicalize(self.m, &self.gates, output)
    }
}

/// Rebuild the gates reachable from `output` in depth-first post-order,
/// children left to right. Children must already precede parents or the
/// caller must have checked acyclicity.
fn canonicalize(m: usize, gates: &[Gate], output: NodeId) -> Circuit {
    let mut builder = CircuitBuilder::new(m);
    let mut new_id: Vec<Option<NodeId>> = vec![None; gates.len()];
    let mut stack = vec![(output, false)];
    while let Some((node, expanded)) = stack.pop() {
        if new_id[node].is_some() {
            continue;
        }
        if expanded {
            let g = gates[node].map_children(|c| new_id[c].expect("child visited"));
            new_id[node] = Some(builder.intern(g));
        } else {
            stack.push((node, true));
            for &c in gates[node].children().iter().rev() {
                if new_id[c].is_none() {
                    stack.push((c, false));
                }
            }
        }
    }
    let output = new_id[output].unwrap();
    Circuit {
        m,
        gates: builder.gates,
        output,
    }
}

impl Circuit {
    pub fn constant(m: usize, value: bool) -> Self {
        let mut b = CircuitBuilder::new(m);
        let out = b.constant(value);
        b.finish(out)
    }

    /// Build from an arbitrary gate list, checking variable ranges, child
    /// references and acyclicity.
    pub fn from_gates(m: usize, gates: Vec<Gate>, output: NodeId) -> Result<Self> {
        if m == 0 {
            return Err(Error::Parameter("circuit needs at least 2 variables".into()));
        }
        let n = gates.len();
        if output >= n {
            return Err(Error::Parameter(format!("output {output} is not a gate")));
        }
        for gate in &gates {
            if let Gate::Var(i) = gate {
                if *i == 0 || *i > 2 * m {
                    return Err(Error::VarOutOfRange { index: *i, max: 2 * m });
                }
            }
            if let Some(&c) = gate.children().iter().find(|&&c| c >= n) {
                return Err(Error::Parameter(format!("child {c} is not a gate")));
            }
        }
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state = vec![0u8; n];
        let mut stack = vec![(output, 0usize)];
        state[output] = 1;
        while let Some(top) = stack.last_mut() {
            let node = top.0;
            let children = gates[node].children();
            if top.1 < children.len() {
                let c = children[top.1];
                top.1 += 1;
                match state[c] {
                    0 => {
                        state[c] = 1;
                        stack.push((c, 0));
                    }
                    1 => return Err(Error::CycleDetected(c)),
                    _ => {}
                }
            } else {
                state[node] = 2;
                stack.pop();
            }
        }
        Ok(canonicalize(m, &gates, output))
    }

    /// Half the number of variables.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn var_count(&self) -> usize {
        2 * self.m
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn output(&self) -> NodeId {
        self.output
    }

    pub fn output_gate(&self) -> &Gate {
        &self.gates[self.output]
    }

    /// Distinct non-variable gates (NOT included) plus references to
    /// variables; an output that is itself a variable counts once.
    pub fn size(&self) -> usize {
        let is_var = |id: NodeId| matches!(self.gates[id], Gate::Var(_));
        let gate_nodes = self.gates.iter().filter(|g| !matches!(g, Gate::Var(_))).count();
        let var_refs: usize = self
            .gates
            .iter()
            .map(|g| g.children().iter().filter(|&&c| is_var(c)).count())
            .sum();
        gate_nodes + var_refs + is_var(self.output) as usize
    }

    /// Node count of the expression written out as a tree, without sharing.
    pub fn tree_size(&self) -> u128 {
        let mut sizes = vec![0u128; self.gates.len()];
        for (id, gate) in self.gates.iter().enumerate() {
            sizes[id] = 1 + gate.children().iter().map(|&c| sizes[c]).sum::<u128>();
        }
        sizes[self.output]
    }

    pub fn eval(&self, assignment: &[bool]) -> Result<bool> {
        if assignment.len() != 2 * self.m {
            return Err(Error::LengthMismatch {
                expected: 2 * self.m,
                got: assignment.len(),
            });
        }
        Ok(self.evaluator().eval_with(|i| assignment[i - 1]))
    }

    pub fn evaluator(&self) -> Evaluator<'_> {
        Evaluator {
            circuit: self,
            values: vec![false; self.gates.len()],
        }
    }

    /// Edge test between two bit-vector vertices: distinct, and the circuit
    /// accepts the pair in at least one order.
    pub fn adjacency(&self, u: &[bool], v: &[bool]) -> Result<bool> {
        for side in [u, v] {
            if side.len() != self.m {
                return Err(Error::LengthMismatch {
                    expected: self.m,
                    got: side.len(),
                });
            }
        }
        if u == v {
            return Ok(false);
        }
        let m = self.m;
        let mut ev = self.evaluator();
        let pair = |a: &[bool], b: &[bool], i: usize| if i <= m { a[i - 1] } else { b[i - m - 1] };
        Ok(ev.eval_with(|i| pair(u, v, i)) || ev.eval_with(|i| pair(v, u, i)))
    }

    /// [`Circuit::adjacency`] on vertex indices. Needs `m < 64`.
    pub fn adjacent(&self, u: u64, v: u64) -> bool {
        self.evaluator().adjacent(u, v)
    }

    pub fn vertex_count(&self) -> u128 {
        1u128 << self.m
    }

    pub fn materialize(&self) -> Result<Graph> {
        self.materialize_with(DEFAULT_MATERIALIZATION_CAP, Exec::default())
    }

    pub fn materialize_with(&self, cap: usize, exec: Exec) -> Result<Graph> {
        if self.m > cap || self.m >= usize::BITS as usize {
            return Err(Error::MaterializationCap { m: self.m, cap });
        }
        let n = 1usize << self.m;
        let rows = exec.map_range(0..n, |u| {
            let mut ev = self.evaluator();
            (0..n)
                .filter(|&v| ev.adjacent(u as u64, v as u64))
                .collect::<Vec<usize>>()
        });
        Ok(Graph::from_adjacency(rows))
    }
}

/// Reusable evaluation scratch space for one circuit.
pub struct Evaluator<'a> {
    circuit: &'a Circuit,
    values: Vec<bool>,
}

impl Evaluator<'_> {
    /// Evaluate with variable `i` (1-based) read from `var`.
    pub fn eval_with(&mut self, var: impl Fn(usize) -> bool) -> bool {
        let values = &mut self.values;
        for (id, gate) in self.circuit.gates.iter().enumerate() {
            values[id] = match gate {
                Gate::Const(b) => *b,
                Gate::Var(i) => var(*i),
                Gate::Not(c) => !values[*c],
                Gate::And(cs) => cs.iter().all(|&c| values[c]),
                Gate::Or(cs) => cs.iter().any(|&c| values[c]),
            };
        }
        values[self.circuit.output]
    }

    /// Evaluate on the pair `(x, y)` given as vertex indices.
    pub fn eval_codes(&mut self, x: u64, y: u64) -> bool {
        let m = self.circuit.m;
        self.eval_with(|i| {
            if i <= m {
                x >> (m - i) & 1 == 1
            } else {
                y >> (2 * m - i) & 1 == 1
            }
        })
    }

    pub fn adjacent(&mut self, u: u64, v: u64) -> bool {
        u != v && (self.eval_codes(u, v) || self.eval_codes(v, u))
    }
}

/// Vertex index of a bit vector, first bit most significant.
pub fn bits_to_code(bits: &[bool]) -> u64 {
    bits.iter().fold(0, |acc, &b| acc << 1 | b as u64)
}

/// Bit vector of length `m` for vertex index `code`.
pub fn code_to_bits(code: u64, m: usize) -> Vec<bool> {
    (0..m).map(|i| code >> (m - 1 - i) & 1 == 1).collect()
}
