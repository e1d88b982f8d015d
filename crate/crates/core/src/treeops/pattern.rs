//! A Tregex subset.
//!
//! ```text
//! pattern  := node
//! node     := labels relation*
//!           | "(" node ")" relation*
//! labels   := LABEL ("|" LABEL)*          LABEL "__" matches any node
//! relation := "!"? op target
//! op       := "<" | "<<" | ">" | ">>" | "$." | "$,"
//! target   := labels | "(" node ")"
//! ```
//!
//! `A < B` — A immediately dominates B. `A << B` — A dominates B.
//! `A > B` / `A >> B` — the inverses. `A $. B` — B is A's immediate right
//! sister; `A $, B` — immediate left sister. Relations chained after one node
//! all constrain that node, so `A < B << C` means A has a child B and a
//! descendant C. Operators starting with `$` must be separated from the
//! preceding label by whitespace.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::tree::{NodeId, ParseTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("pattern error at offset {offset}: {message}")]
pub struct PatternError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Op {
    Child,
    Descendant,
    Parent,
    Ancestor,
    NextSister,
    PrevSister,
}

impl Op {
    fn symbol(self) -> &'static str {
        match self {
            Op::Child => "<",
            Op::Descendant => "<<",
            Op::Parent => ">",
            Op::Ancestor => ">>",
            Op::NextSister => "$.",
            Op::PrevSister => "$,",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Relation {
    negated: bool,
    op: Op,
    target: PatternNode,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct PatternNode {
    /// Empty means wildcard.
    labels: Vec<String>,
    relations: Vec<Relation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePattern {
    root: PatternNode,
}

const SPECIAL: &[char] = &['(', ')', '|', '<', '>', '!'];

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn fail<T>(&self, message: impl Into<String>) -> Result<T, PatternError> {
        Err(PatternError {
            offset: self.src[..self.pos].chars().count(),
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn label(&mut self) -> Result<String, PatternError> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .find(|c: char| c.is_whitespace() || SPECIAL.contains(&c))
            .unwrap_or(rest.len());
        if len == 0 {
            return self.fail("expected a label");
        }
        self.pos += len;
        Ok(rest[..len].to_string())
    }

    fn labels(&mut self) -> Result<Vec<String>, PatternError> {
        let mut out = vec![self.label()?];
        while self.eat("|") {
            out.push(self.label()?);
        }
        if out.iter().any(|l| l == "__") {
            if out.len() > 1 {
                return self.fail("`__` cannot be part of an alternation");
            }
            out.clear();
        }
        Ok(out)
    }

    fn node(&mut self) -> Result<PatternNode, PatternError> {
        let mut node = if self.eat("(") {
            let inner = self.node()?;
            if !self.eat(")") {
                return self.fail("expected `)`");
            }
            inner
        } else {
            PatternNode {
                labels: self.labels()?,
                relations: Vec::new(),
            }
        };
        while let Some((negated, op)) = self.op()? {
            let target = if self.eat("(") {
                let inner = self.node()?;
                if !self.eat(")") {
                    return self.fail("expected `)`");
                }
                inner
            } else {
                PatternNode {
                    labels: self.labels()?,
                    relations: Vec::new(),
                }
            };
            node.relations.push(Relation {
                negated,
                op,
                target,
            });
        }
        Ok(node)
    }

    fn op(&mut self) -> Result<Option<(bool, Op)>, PatternError> {
        let negated = self.eat("!");
        let op = if self.eat("<<") {
            Op::Descendant
        } else if self.eat("<") {
            Op::Child
        } else if self.eat(">>") {
            Op::Ancestor
        } else if self.eat(">") {
            Op::Parent
        } else if self.eat("$.") {
            Op::NextSister
        } else if self.eat("$,") {
            Op::PrevSister
        } else if negated {
            return self.fail("expected a relation after `!`");
        } else {
            return Ok(None);
        };
        Ok(Some((negated, op)))
    }
}

impl FromStr for TreePattern {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s, pos: 0 };
        let root = p.node()?;
        p.skip_ws();
        if !p.rest().is_empty() {
            return p.fail("unexpected trailing input");
        }
        Ok(TreePattern { root })
    }
}

impl TreePattern {
    pub fn parse(s: &str) -> Result<Self, PatternError> {
        s.parse()
    }

    /// Whether `id` satisfies the pattern as its head node.
    pub fn matches_at(&self, tree: &ParseTree, id: NodeId) -> bool {
        node_matches(tree, id, &self.root)
    }
}

fn node_matches(tree: &ParseTree, id: NodeId, p: &PatternNode) -> bool {
    if !p.labels.is_empty() && !p.labels.iter().any(|l| l == tree.label(id)) {
        return false;
    }
    p.relations.iter().all(|r| {
        let hit = |c: NodeId| node_matches(tree, c, &r.target);
        let found = match r.op {
            Op::Child => tree.children(id).iter().any(|&c| hit(c)),
            Op::Descendant => tree.descendants(id).any(hit),
            Op::Parent => tree.parent(id).is_some_and(hit),
            Op::Ancestor => tree.ancestors(id).any(hit),
            Op::NextSister => tree.next_sibling(id).is_some_and(hit),
            Op::PrevSister => tree.prev_sibling(id).is_some_and(hit),
        };
        found != r.negated
    })
}

/// Ids of nodes satisfying the pattern, in pre-order.
pub fn match_nodes(tree: &ParseTree, pattern: &TreePattern) -> Vec<NodeId> {
    tree.ids().filter(|&i| pattern.matches_at(tree, i)).collect()
}

pub fn match_count(tree: &ParseTree, pattern: &TreePattern) -> usize {
    tree.ids().filter(|&i| pattern.matches_at(tree, i)).count()
}

impl fmt::Display for PatternNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.labels.is_empty() {
            f.write_str("__")?;
        } else {
            f.write_str(&self.labels.join("|"))?;
        }
        for r in &self.relations {
            let neg = if r.negated { "!" } else { "" };
            if r.target.relations.is_empty() {
                write!(f, " {neg}{} {}", r.op.symbol(), r.target)?;
            } else {
                write!(f, " {neg}{} ({})", r.op.symbol(), r.target)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for TreePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}
