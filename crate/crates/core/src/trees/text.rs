//! Canonical text form: `(2:(),1:())` is a root with two leaf children,
//! the first attached by a double edge. The same grammar serves d-ary trees,
//! where the label is the child position instead of a multiplicity.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{DAryNode, Link, MultiEdgeTree, Slot, TreeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("expected '{expected}' at byte {at}")]
    Expected { expected: char, at: usize },
    #[error("expected a positive integer label at byte {at}")]
    Label { at: usize },
    #[error("trailing input at byte {at}")]
    Trailing { at: usize },
    #[error(transparent)]
    Invalid(#[from] TreeError),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(c as u8) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::Expected {
                expected: c,
                at: self.pos,
            })
        }
    }

    fn label(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or(ParseError::Label { at: start })
    }

    /// Parses one node generically; `build` turns `(label, child)` pairs into a node.
    fn parse_node<N>(
        &mut self,
        build: &dyn Fn(Vec<(u32, N)>) -> Result<N, TreeError>,
    ) -> Result<N, ParseError> {
        self.expect('(')?;
        let mut pairs = Vec::new();
        if self.peek() != Some(b')') {
            loop {
                let label = self.label()?;
                self.expect(':')?;
                let child = self.parse_node(build)?;
                pairs.push((label, child));
                if self.peek() == Some(b',') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.expect(')')?;
        Ok(build(pairs)?)
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            Err(ParseError::Trailing { at: self.pos })
        }
    }
}

fn parse_with<N>(
    s: &str,
    build: &dyn Fn(Vec<(u32, N)>) -> Result<N, TreeError>,
) -> Result<N, ParseError> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
    };
    let node = p.parse_node(build)?;
    p.finish()?;
    Ok(node)
}

impl FromStr for MultiEdgeTree {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_with(s, &|pairs| MultiEdgeTree::from_pairs(pairs))
    }
}

impl FromStr for DAryNode {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_with(s, &|pairs| DAryNode::from_pairs(pairs))
    }
}

fn write_node<'a, I, N>(f: &mut fmt::Formatter<'_>, pairs: I) -> fmt::Result
where
    I: Iterator<Item = (u32, &'a N)>,
    N: fmt::Display + 'a,
{
    f.write_str("(")?;
    for (i, (label, child)) in pairs.enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{label}:{child}")?;
    }
    f.write_str(")")
}

impl fmt::Display for MultiEdgeTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_node(
            f,
            self.links().iter().map(
                |Link {
                     multiplicity,
                     child,
                 }| (*multiplicity, child),
            ),
        )
    }
}

impl fmt::Display for DAryNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_node(
            f,
            self.slots()
                .iter()
                .map(|Slot { position, child }| (*position, child)),
        )
    }
}

impl fmt::Display for super::DAryMultiEdgeTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.tree().fmt(f)
    }
}

impl fmt::Display for super::DAryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root().fmt(f)
    }
}
