//! Plain-text file formats.
//!
//! * graph: `n m`, then `m` lines `u v` with `0 <= u < v < n`
//! * colouring: `n k`, then `n` lines `v c` with `1 <= c <= k`
//! * path: `n k t`, then `t` colouring bodies of `n` lines each
//!
//! Blank lines between records are ignored. Errors carry 1-based line and
//! column positions.

use std::io::BufRead;

use crate::colouring::Colouring;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::reconfig::ReconfigPath;

/// Line-numbered source of non-blank lines.
pub struct LineSource<R> {
    reader: R,
    line_no: usize,
    buf: String,
}

/// One non-blank line split into whitespace-separated fields.
pub struct Record {
    pub line: usize,
    fields: Vec<(usize, String)>,
}

impl Record {
    pub fn len(&self) -> usize {
        self.fields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fields.is_empty()
    }

    pub fn text(&self) -> String {
        self.fields
            .iter()
            .map(|(_, f)| f.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn expect_len(&self, n: usize, what: &str) -> Result<()> {
        if self.fields.len() != n {
            let col = self.fields.get(n).map_or(1, |f| f.0);
            return Err(Error::parse(self.line, col, format!("expected {what}")));
        }
        Ok(())
    }

    fn number<T: std::str::FromStr>(&self, i: usize) -> Result<T> {
        let (col, text) = &self.fields[i];
        text.parse().map_err(|_| {
            Error::parse(
                self.line,
                *col,
                format!("expected a non-negative integer, found `{text}`"),
            )
        })
    }

    fn error(&self, i: usize, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.fields.get(i).map_or(1, |f| f.0), msg)
    }
}

impl<R: BufRead> LineSource<R> {
    pub fn new(reader: R) -> Self {
        LineSource {
            reader,
            line_no: 0,
            buf: String::new(),
        }
    }

    /// Lines consumed so far.
    pub fn line_no(&self) -> usize {
        self.line_no
    }

    pub fn next_record(&mut self) -> Result<Option<Record>> {
        loop {
            self.buf.clear();
            if self.reader.read_line(&mut self.buf)? == 0 {
                return Ok(None);
            }
            self.line_no += 1;
            let mut fields = Vec::new();
            let mut start = None;
            for (i, ch) in self.buf.char_indices().chain(std::iter::once((self.buf.len(), ' '))) {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(i),
                    (true, Some(s)) => {
                        fields.push((s + 1, self.buf[s..i].to_string()));
                        start = None;
                    }
                    _ => {}
                }
            }
            if !fields.is_empty() {
                return Ok(Some(Record {
                    line: self.line_no,
                    fields,
                }));
            }
        }
    }

    pub fn require_record(&mut self, what: &str) -> Result<Record> {
        let line = self.line_no + 1;
        self.next_record()?
            .ok_or_else(|| Error::parse(line, 1, format!("unexpected end of input, expected {what}")))
    }

    /// Fail unless only blank lines remain.
    pub fn expect_end(&mut self) -> Result<()> {
        match self.next_record()? {
            None => Ok(()),
            Some(r) => Err(r.error(0, "unexpected trailing input")),
        }
    }

    /// Everything not yet consumed, as text.
    pub fn rest(mut self) -> Result<String> {
        let mut out = String::new();
        self.reader.read_to_string(&mut out)?;
        Ok(out)
    }
}

pub fn read_graph_block<R: BufRead>(src: &mut LineSource<R>) -> Result<Graph> {
    let header = src.require_record("graph header `n m`")?;
    header.expect_len(2, "graph header `n m`")?;
    let n: usize = header.number(0)?;
    let m: usize = header.number(1)?;
    let mut adj = vec![Vec::new(); n];
    for _ in 0..m {
        let r = src.require_record("edge line `u v`")?;
        r.expect_len(2, "edge line `u v`")?;
        let u: usize = r.number(0)?;
        let v: usize = r.number(1)?;
        if u == v {
            return Err(r.error(0, format!("self-loop at {u}")));
        }
        if u > v {
            return Err(r.error(0, format!("edge endpoints must satisfy u < v, got {u} {v}")));
        }
        if v >= n {
            return Err(r.error(1, format!("vertex {v} out of range for n = {n}")));
        }
        if adj[u].contains(&v) {
            return Err(r.error(0, format!("duplicate edge {u} {v}")));
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    Ok(Graph::from_adjacency(adj))
}

fn read_colouring_body<R: BufRead>(src: &mut LineSource<R>, n: usize, k: u32) -> Result<Colouring> {
    let mut colours = vec![0u32; n];
    for _ in 0..n {
        let r = src.require_record("colouring line `v c`")?;
        r.expect_len(2, "colouring line `v c`")?;
        let v: usize = r.number(0)?;
        let c: u32 = r.number(1)?;
        if v >= n {
            return Err(r.error(0, format!("vertex {v} out of range for n = {n}")));
        }
        if c == 0 || c > k {
            return Err(r.error(1, format!("colour {c} outside 1..={k}")));
        }
        if colours[v] != 0 {
            return Err(r.error(0, format!("vertex {v} coloured twice")));
        }
        colours[v] = c;
    }
    Colouring::new(k, colours)
}

pub fn read_colouring_block<R: BufRead>(src: &mut LineSource<R>) -> Result<Colouring> {
    let header = src.require_record("colouring header `n k`")?;
    header.expect_len(2, "colouring header `n k`")?;
    let n: usize = header.number(0)?;
    let k: u32 = header.number(1)?;
    if k == 0 {
        return Err(header.error(1, "k must be at least 1"));
    }
    read_colouring_body(src, n, k)
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut src = LineSource::new(text.as_bytes());
    let g = read_graph_block(&mut src)?;
    src.expect_end()?;
    Ok(g)
}

pub fn parse_colouring(text: &str) -> Result<Colouring> {
    let mut src = LineSource::new(text.as_bytes());
    let c = read_colouring_block(&mut src)?;
    src.expect_end()?;
    Ok(c)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

fn write_colouring_body(c: &Colouring, out: &mut String) {
    for (v, col) in c.colours().iter().enumerate() {
        out.push_str(&format!("{v} {col}\n"));
    }
}

pub fn write_colouring(c: &Colouring) -> String {
    let mut out = format!("{} {}\n", c.len(), c.k());
    write_colouring_body(c, &mut out);
    out
}

pub fn write_path(n: usize, path: &ReconfigPath) -> String {
    let mut out = format!("{n} {} {}\n", path.k(), path.len());
    for step in path.steps() {
        write_colouring_body(step, &mut out);
    }
    out
}

/// Streaming reader for the path format; yields one colouring at a time.
pub struct PathReader<R> {
    src: LineSource<R>,
    n: usize,
    k: u32,
    remaining: usize,
    failed: bool,
}

impl<R: BufRead> PathReader<R> {
    pub fn new(reader: R) -> Result<Self> {
        let mut src = LineSource::new(reader);
        let header = src.require_record("path header `n k t`")?;
        header.expect_len(3, "path header `n k t`")?;
        let n = header.number(0)?;
        let k: u32 = header.number(1)?;
        if k == 0 {
            return Err(header.error(1, "k must be at least 1"));
        }
        let remaining = header.number(2)?;
        Ok(PathReader {
            src,
            n,
            k,
            remaining,
            failed: false,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }
}

impl<R: BufRead> Iterator for PathReader<R> {
    type Item = Result<Colouring>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        if self.remaining == 0 {
            return match self.src.expect_end() {
                Ok(()) => None,
                Err(e) => {
                    self.failed = true;
                    Some(Err(e))
                }
            };
        }
        self.remaining -= 1;
        let item = read_colouring_body(&mut self.src, self.n, self.k);
        self.failed = item.is_err();
        Some(item)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_err_pos(r: Result<impl std::fmt::Debug>) -> (usize, usize) {
        match r {
            Err(Error::Parse { pos, .. }) => (pos.line, pos.column),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn graph_round_trip() {
        let g = Graph::cycle(5);
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        assert_eq!(write_graph(&Graph::path(3)), "3 2\n0 1\n1 2\n");
    }

    #[test]
    fn graph_rejections() {
        assert_eq!(parse_err_pos(parse_graph("3 2\n0 1\n0 1\n")), (3, 1));
        assert_eq!(parse_err_pos(parse_graph("3 1\n1 1\n")), (2, 1));
        assert_eq!(parse_err_pos(parse_graph("3 1\n0 3\n")), (2, 3));
        assert_eq!(parse_err_pos(parse_graph("3 1\n2 1\n")), (2, 1));
        assert_eq!(parse_err_pos(parse_graph("3 2\n0 1\n")), (3, 1));
        assert_eq!(parse_err_pos(parse_graph("3 x\n")), (1, 3));
        assert_eq!(parse_err_pos(parse_graph("2 1\n0 1\n0 1\n")), (3, 1));
    }

    #[test]
    fn colouring_round_trip() {
        let c = Colouring::new(3, vec![1, 3, 2]).unwrap();
        assert_eq!(parse_colouring(&write_colouring(&c)).unwrap(), c);
        // lines may come in any order
        assert_eq!(parse_colouring("2 2\n1 1\n0 2\n").unwrap().colours(), &[2, 1]);
        assert_eq!(parse_err_pos(parse_colouring("2 2\n0 3\n1 1\n")), (2, 3));
        assert_eq!(parse_err_pos(parse_colouring("2 2\n0 1\n0 2\n")), (3, 1));
    }

    #[test]
    fn path_reader_streams() {
        let text = "2 3 3\n0 1\n1 2\n\n0 3\n1 2\n0 3\n1 1\n";
        let reader = PathReader::new(text.as_bytes()).unwrap();
        assert_eq!((reader.vertex_count(), reader.k()), (2, 3));
        let steps: Vec<_> = reader.collect::<Result<_>>().unwrap();
        assert_eq!(steps.len(), 3);
        assert_eq!(steps[2].colours(), &[3, 1]);
    }

    #[test]
    fn path_reader_reports_short_and_long_streams() {
        let short = PathReader::new("1 2 2\n0 1\n".as_bytes()).unwrap();
        let items: Vec<_> = short.collect();
        assert!(items[1].is_err());
        let long = PathReader::new("1 2 1\n0 1\n0 2\n".as_bytes()).unwrap();
        let items: Vec<_> = long.collect();
        assert_eq!(items.len(), 2);
        assert!(items[1].is_err());
    }
}
