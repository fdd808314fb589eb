//! Instance bundles: a one-line header, then the instance body.
//!
//! ```text
//! kind=cos|cpos|scos mode=faithful|generalized p=<int>
//! ```
//!
//! `cos` is followed by a graph, `cpos` by a graph and the colourings
//! `alpha` and `beta`, and `scos` by a circuit in the DSL. For `scos` the
//! `p` field is optional and must match the derived value when present.

use std::collections::HashMap;

use crate::circuit::{parse_circuit, serialize_circuit};
use crate::colouring::Colouring;
use crate::error::{Error, Position, Result};
use crate::graph::Graph;
use crate::io::{read_colouring_block, read_graph_block, write_colouring, write_graph, LineSource};
use crate::problems::{CPoSInstance, CoSInstance, Mode, SCoSInstance};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bundle {
    Cos(CoSInstance),
    Cpos(CPoSInstance),
    Scos(SCoSInstance),
}

impl Bundle {
    pub fn kind(&self) -> &'static str {
        match self {
            Bundle::Cos(_) => "cos",
            Bundle::Cpos(_) => "cpos",
            Bundle::Scos(_) => "scos",
        }
    }
}

fn header_error(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos: Position { line, column: 1 },
        msg: msg.into(),
    }
}

pub fn parse_bundle(text: &str) -> Result<Bundle> {
    let mut src = LineSource::new(text.as_bytes());
    let header = src.require_record("bundle header")?;
    let line = header.line;
    let mut fields = HashMap::new();
    for field in header.text().split(' ') {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| header_error(line, format!("expected `key=value`, found `{field}`")))?;
        if fields.insert(key.to_string(), value.to_string()).is_some() {
            return Err(header_error(line, format!("duplicate header key `{key}`")));
        }
    }
    let get = |key: &str| fields.get(key).map(String::as_str);
    if let Some(extra) = fields.keys().find(|k| !matches!(k.as_str(), "kind" | "mode" | "p")) {
        return Err(header_error(line, format!("unknown header key `{extra}`")));
    }
    let mode: Mode = get("mode")
        .ok_or_else(|| header_error(line, "missing `mode`"))?
        .parse()
        .map_err(|e: Error| header_error(line, e.to_string()))?;
    let p = get("p")
        .map(|v| {
            v.parse::<usize>()
                .map_err(|_| header_error(line, format!("p must be an integer, found `{v}`")))
        })
        .transpose()?;
    let need_p = || p.ok_or_else(|| header_error(line, "missing `p`"));
    match get("kind") {
        Some("cos") => {
            let g = read_graph_block(&mut src)?;
            src.expect_end()?;
            Ok(Bundle::Cos(CoSInstance::new(g, need_p()?, mode)?))
        }
        Some("cpos") => {
            let g = read_graph_block(&mut src)?;
            let alpha = read_colouring_block(&mut src)?;
            let beta = read_colouring_block(&mut src)?;
            src.expect_end()?;
            Ok(Bundle::Cpos(CPoSInstance::new(g, alpha, beta, need_p()?, mode)?))
        }
        Some("scos") => {
            if mode != Mode::Faithful {
                return Err(header_error(
                    line,
                    "scos bundles derive p from m; mode must be faithful",
                ));
            }
            let offset = src.line_no();
            let circuit = parse_circuit(&src.rest()?).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse {
                    pos: Position {
                        line: pos.line + offset,
                        column: pos.column,
                    },
                    msg,
                },
                other => other,
            })?;
            let inst = SCoSInstance::new(circuit);
            if let Some(p) = p {
                let derived = inst.p()?;
                if derived != p {
                    return Err(header_error(
                        line,
                        format!("p = {p} does not match derived p = {derived}"),
                    ));
                }
            }
            Ok(Bundle::Scos(inst))
        }
        Some(other) => Err(header_error(line, format!("unknown kind `{other}`"))),
        None => Err(header_error(line, "missing `kind`")),
    }
}

pub fn write_bundle(bundle: &Bundle) -> String {
    match bundle {
        Bundle::Cos(i) => format!(
            "kind=cos mode={} p={}\n{}",
            i.mode().as_str(),
            i.p(),
            write_graph(i.graph())
        ),
        Bundle::Cpos(i) => format!(
            "kind=cpos mode={} p={}\n{}{}{}",
            i.mode().as_str(),
            i.p(),
            write_graph(i.graph()),
            write_colouring(i.alpha()),
            write_colouring(i.beta())
        ),
        Bundle::Scos(i) => {
            let p = i.p().map(|p| format!(" p={p}")).unwrap_or_default();
            format!("kind=scos mode=faithful{p}\n{}", serialize_circuit(i.circuit()))
        }
    }
}

/// Input to the 4-Colour-Path reduction: a graph and two colourings.
pub fn parse_graph_and_colourings(text: &str) -> Result<(Graph, Colouring, Colouring)> {
    let mut src = LineSource::new(text.as_bytes());
    let g = read_graph_block(&mut src)?;
    let alpha = read_colouring_block(&mut src)?;
    let beta = read_colouring_block(&mut src)?;
    src.expect_end()?;
    Ok((g, alpha, beta))
}
