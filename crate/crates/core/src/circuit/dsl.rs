//! Text form of circuits: `(vars N) (out EXPR)` with
//! `EXPR ::= (and EXPR*) | (or EXPR*) | (not EXPR) | (var i) | true | false`.

use std::fmt::Write;

use super::{Circuit, CircuitBuilder, Gate, NodeId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Open,
    Close,
    Atom(String),
}

#[derive(Debug, Clone)]
struct Spanned {
    token: Token,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Vec<Spanned> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&ch) = chars.peek() {
        let (l, c) = (line, column);
        match ch {
            '\n' => {
                chars.next();
                line += 1;
                column = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                column += 1;
            }
            '(' | ')' => {
                chars.next();
                column += 1;
                let token = if ch == '(' { Token::Open } else { Token::Close };
                out.push(Spanned {
                    token,
                    line: l,
                    column: c,
                });
            }
            _ => {
                let mut atom = String::new();
                while let Some(&a) = chars.peek() {
                    if a.is_whitespace() || a == '(' || a == ')' {
                        break;
                    }
                    atom.push(a);
                    chars.next();
                    column += 1;
                }
                out.push(Spanned {
                    token: Token::Atom(atom),
                    line: l,
                    column: c,
                });
            }
        }
    }
    out
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn error_here(&self, msg: impl Into<String>) -> Error {
        let (line, column) = self
            .tokens
            .get(self.pos)
            .map(|t| (t.line, t.column))
            .unwrap_or(self.end);
        Error::parse(line, column, msg)
    }

    fn next(&mut self) -> Result<Spanned> {
        let t = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| self.error_here("unexpected end of input"))?;
        self.pos += 1;
        Ok(t)
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|t| &t.token)
    }

    fn expect(&mut self, want: Token) -> Result<()> {
        let here = self.error_here(format!("expected {}", describe(&want)));
        match self.next()? {
            t if t.token == want => Ok(()),
            _ => Err(here),
        }
    }

    fn keyword(&mut self) -> Result<(String, usize, usize)> {
        let here = self.error_here("expected a keyword");
        match self.next()? {
            Spanned {
                token: Token::Atom(a),
                line,
                column,
            } => Ok((a, line, column)),
            _ => Err(here),
        }
    }

    fn integer(&mut self) -> Result<usize> {
        let here = self.error_here("expected a non-negative integer");
        match self.next()?.token {
            Token::Atom(a) => a.parse().map_err(|_| here),
            _ => Err(here),
        }
    }

    fn expr(&mut self, b: &mut CircuitBuilder) -> Result<NodeId> {
        let start = self.next()?;
        match start.token {
            Token::Atom(a) if a == "true" => Ok(b.constant(true)),
            Token::Atom(a) if a == "false" => Ok(b.constant(false)),
            Token::Atom(a) => Err(Error::parse(start.line, start.column, format!("unknown atom `{a}`"))),
            Token::Close => Err(Error::parse(start.line, start.column, "unexpected `)`")),
            Token::Open => {
                let (head, line, column) = self.keyword()?;
                let node = match head.as_str() {
                    "var" => {
                        let i = self.integer()?;
                        b.var(i)?
                    }
                    "not" => {
                        let c = self.expr(b)?;
                        b.not(c)
                    }
                    "and" | "or" => {
                        let mut children = Vec::new();
                        while self.peek() != Some(&Token::Close) {
                            if self.peek().is_none() {
                                return Err(self.error_here("unclosed expression"));
                            }
                            children.push(self.expr(b)?);
                        }
                        if head == "and" {
                            b.and(children)
                        } else {
                            b.or(children)
                        }
                    }
                    other => return Err(Error::parse(line, column, format!("unknown operator `{other}`"))),
                };
                self.expect(Token::Close)?;
                Ok(node)
            }
        }
    }
}

fn describe(t: &Token) -> String {
    match t {
        Token::Open => "`(`".into(),
        Token::Close => "`)`".into(),
        Token::Atom(a) => format!("`{a}`"),
    }
}

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let tokens = lex(text);
    let lines: Vec<&str> = text.split('\n').collect();
    let end = (lines.len(), lines.last().map_or(0, |l| l.chars().count()) + 1);
    let mut p = Parser { tokens, pos: 0, end };

    p.expect(Token::Open)?;
    let (kw, line, column) = p.keyword()?;
    if kw != "vars" {
        return Err(Error::parse(line, column, "expected `vars` header"));
    }
    let vars_at = p.error_here("variable count must be a positive even number");
    let vars = p.integer()?;
    if vars == 0 || vars % 2 != 0 {
        return Err(vars_at);
    }
    p.expect(Token::Close)?;

    p.expect(Token::Open)?;
    let (kw, line, column) = p.keyword()?;
    if kw != "out" {
        return Err(Error::parse(line, column, "expected `out` body"));
    }
    let mut b = CircuitBuilder::new(vars / 2);
    let out = p.expr(&mut b)?;
    p.expect(Token::Close)?;
    if p.pos != p.tokens.len() {
        return Err(p.error_here("trailing input after circuit"));
    }
    Ok(b.finish(out))
}

/// Normalized text: header line, body line, trailing newline.
pub fn serialize_circuit(c: &Circuit) -> String {
    let mut out = format!("(vars {})\n(out ", c.var_count());
    write_expr(c, c.output(), &mut out);
    out.push_str(")\n");
    out
}

fn write_expr(c: &Circuit, id: NodeId, out: &mut String) {
    match &c.gates()[id] {
        Gate::Const(true) => out.push_str("true"),
        Gate::Const(false) => out.push_str("false"),
        Gate::Var(i) => {
            write!(out, "(var {i})").unwrap();
        }
        Gate::Not(ch) => {
            out.push_str("(not ");
            write_expr(c, *ch, out);
            out.push(')');
        }
        Gate::And(cs) | Gate::Or(cs) => {
            out.push_str(if matches!(c.gates()[id], Gate::And(_)) {
                "(and"
            } else {
                "(or"
            });
            for &ch in cs {
                out.push(' ');
                write_expr(c, ch, out);
            }
            out.push(')');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_single_var() {
        let c = parse_circuit("(vars 2) (out (var 1))").unwrap();
        assert_eq!(c.m(), 1);
        assert_eq!(c.output_gate(), &Gate::Var(1));
    }

    #[test]
    fn parse_dnf() {
        let text = "(vars 4) (out (or (and (var 1) (not (var 2)) (var 4) (not (var 3)))))";
        let c = parse_circuit(text).unwrap();
        assert_eq!(c.m(), 2);
        match c.output_gate() {
            Gate::Or(ds) => assert_eq!(ds.len(), 1),
            g => panic!("unexpected output {g:?}"),
        }
        assert!(c.eval(&[true, false, false, true]).unwrap());
        assert!(!c.eval(&[true, false, true, false]).unwrap());
        assert_eq!(
            serialize_circuit(&c),
            format!("(vars 4)\n(out {})\n", &text[14..text.len() - 1])
        );
    }

    #[test]
    fn empty_connectives_normalize() {
        assert_eq!(
            serialize_circuit(&parse_circuit("(vars 2)(out (or))").unwrap()),
            "(vars 2)\n(out false)\n"
        );
        assert_eq!(
            serialize_circuit(&parse_circuit("(vars 2)(out (and))").unwrap()),
            "(vars 2)\n(out true)\n"
        );
    }

    #[test]
    fn errors_carry_positions() {
        match parse_circuit("(vars 2)\n(out (xor (var 1)))") {
            Err(Error::Parse { pos, .. }) => assert_eq!((pos.line, pos.column), (2, 7)),
            other => panic!("{other:?}"),
        }
        match parse_circuit("(vars 2)\n(out (var 1)") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos.line, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_circuit("(vars 3) (out true)"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_circuit("(vars 2) (out (var 3))"),
            Err(Error::VarOutOfRange { index: 3, max: 2 })
        ));
        assert!(matches!(
            parse_circuit("(vars 2) (out true) x"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn whitespace_insensitive() {
        let a = parse_circuit("(vars 2)(out(and(var 1)(not(var 2))))").unwrap();
        let b = parse_circuit("  (vars 2)\n\n (out\n  (and (var 1)\n (not (var 2))))\n").unwrap();
        assert_eq!(a, b);
    }
}
