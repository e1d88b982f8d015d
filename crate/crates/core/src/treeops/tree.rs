use std::fmt;

use thiserror::Error;

pub type NodeId = usize;

/// A node of a [`ParseTree`]. Terminals are POS nodes carrying the word in
/// `text`; every other node has at least one child.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub label: String,
    pub text: Option<String>,
    pub children: Vec<NodeId>,
    pub parent: Option<NodeId>,
    /// One past the last descendant in pre-order.
    end: NodeId,
}

impl Node {
    pub fn is_terminal(&self) -> bool {
        self.text.is_some()
    }
}

/// Rooted ordered labelled tree stored in pre-order, root at index 0.
///
/// Pre-order storage makes dominance an interval test: `a` dominates `b`
/// iff `a < b < end(a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseTree {
    nodes: Vec<Node>,
    height: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Empty,
    Unclosed,
    UnexpectedClose,
    EmptyNode,
    /// A word appeared outside any node, or next to other children.
    StrayText,
    TrailingInput,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bracket parse error at offset {offset}: {kind:?}")]
pub struct ParseError {
    /// Character (not byte) offset into the input.
    pub offset: usize,
    pub kind: ParseErrorKind,
}

enum Tok<'a> {
    Open,
    Close,
    Atom(&'a str),
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    /// Returns the next token with its byte offset.
    fn next(&mut self) -> Option<(usize, Tok<'a>)> {
        let rest = &self.src[self.pos..];
        let skipped = rest.len() - rest.trim_start().len();
        self.pos += skipped;
        let start = self.pos;
        let rest = &self.src[start..];
        let c = rest.chars().next()?;
        match c {
            '(' => {
                self.pos += 1;
                Some((start, Tok::Open))
            }
            ')' => {
                self.pos += 1;
                Some((start, Tok::Close))
            }
            _ => {
                let len = rest
                    .find(|c: char| c.is_whitespace() || c == '(' || c == ')')
                    .unwrap_or(rest.len());
                self.pos += len;
                Some((start, Tok::Atom(&rest[..len])))
            }
        }
    }

    fn peek_is_atom(&self) -> bool {
        self.src[self.pos..]
            .trim_start()
            .chars()
            .next()
            .is_some_and(|c| c != '(' && c != ')')
    }
}

impl ParseTree {
    pub fn parse(input: &str) -> Result<ParseTree, ParseError> {
        let char_offset = |byte: usize| input[..byte].chars().count();
        let err = |byte: usize, kind| ParseError {
            offset: char_offset(byte),
            kind,
        };

        let mut lexer = Lexer { src: input, pos: 0 };
        let mut nodes: Vec<Node> = Vec::new();
        // (node id, byte offset of its open paren)
        let mut stack: Vec<(NodeId, usize)> = Vec::new();
        let mut done = false;

        while let Some((at, tok)) = lexer.next() {
            if done {
                return Err(err(at, ParseErrorKind::TrailingInput));
            }
            match tok {
                Tok::Open => {
                    let parent = stack.last().map(|&(id, _)| id);
                    if let Some(p) = parent {
                        if nodes[p].text.is_some() {
                            return Err(err(at, ParseErrorKind::StrayText));
                        }
                    }
                    let label = if lexer.peek_is_atom() {
                        match lexer.next() {
                            Some((_, Tok::Atom(a))) => a.to_string(),
                            _ => unreachable!("peeked an atom"),
                        }
                    } else {
                        String::new()
                    };
                    let id = nodes.len();
                    nodes.push(Node {
                        label,
                        text: None,
                        children: Vec::new(),
                        parent,
                        end: id + 1,
                    });
                    if let Some(p) = parent {
                        nodes[p].children.push(id);
                    }
                    stack.push((id, at));
                }
                Tok::Atom(word) => {
                    let Some(&(id, _)) = stack.last() else {
                        return Err(err(at, ParseErrorKind::StrayText));
                    };
                    let node = &mut nodes[id];
                    if node.text.is_some() || !node.children.is_empty() {
                        return Err(err(at, ParseErrorKind::StrayText));
                    }
                    node.text = Some(word.to_string());
                }
                Tok::Close => {
                    let Some((id, open_at)) = stack.pop() else {
                        return Err(err(at, ParseErrorKind::UnexpectedClose));
                    };
                    if nodes[id].text.is_none() && nodes[id].children.is_empty() {
                        return Err(err(open_at, ParseErrorKind::EmptyNode));
                    }
                    nodes[id].end = nodes.len();
                    if stack.is_empty() {
                        done = true;
                    }
                }
            }
        }
        if let Some(&(_, open_at)) = stack.last() {
            return Err(err(open_at, ParseErrorKind::Unclosed));
        }
        if nodes.is_empty() {
            return Err(ParseError {
                offset: 0,
                kind: ParseErrorKind::Empty,
            });
        }
        let mut tree = ParseTree { nodes, height: 0 };
        tree.height = tree.depth_below(0);
        Ok(tree)
    }

    fn depth_below(&self, root: NodeId) -> usize {
        // Iterative to survive pathological nesting.
        let mut best = 0;
        let mut stack = vec![(root, 1usize)];
        while let Some((id, d)) = stack.pop() {
            best = best.max(d);
            stack.extend(self.nodes[id].children.iter().map(|&c| (c, d + 1)));
        }
        best
    }

    pub const ROOT: NodeId = 0;

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn label(&self, id: NodeId) -> &str {
        &self.nodes[id].label
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// Total node count (terminals included).
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes on the longest root-to-terminal path; the root counts as 1 and
    /// words are not nodes.
    pub fn height(&self) -> usize {
        self.height
    }

    pub fn ids(&self) -> std::ops::Range<NodeId> {
        0..self.nodes.len()
    }

    /// Terminal node ids, left to right.
    pub fn terminals(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.ids().filter(|&i| self.nodes[i].is_terminal())
    }

    pub fn leaf_count(&self) -> usize {
        self.terminals().count()
    }

    pub fn words(&self) -> Vec<&str> {
        self.terminals()
            .filter_map(|i| self.nodes[i].text.as_deref())
            .collect()
    }

    /// Proper dominance.
    #[inline]
    pub fn dominates(&self, ancestor: NodeId, descendant: NodeId) -> bool {
        ancestor < descendant && descendant < self.nodes[ancestor].end
    }

    /// Ids of proper descendants, in pre-order.
    pub fn descendants(&self, id: NodeId) -> std::ops::Range<NodeId> {
        id + 1..self.nodes[id].end
    }

    pub fn ancestors(&self, id: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        std::iter::successors(self.nodes[id].parent, move |&p| self.nodes[p].parent)
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.nodes[id].parent
    }

    pub fn children(&self, id: NodeId) -> &[NodeId] {
        &self.nodes[id].children
    }

    fn sibling_offset(&self, id: NodeId, delta: isize) -> Option<NodeId> {
        let p = self.nodes[id].parent?;
        let sibs = &self.nodes[p].children;
        let pos = sibs.iter().position(|&c| c == id)?;
        let target = pos.checked_add_signed(delta)?;
        sibs.get(target).copied()
    }

    pub fn next_sibling(&self, id: NodeId) -> Option<NodeId> {
        self.sibling_offset(id, 1)
    }

    pub fn prev_sibling(&self, id: NodeId) -> Option<NodeId> {
        self.sibling_offset(id, -1)
    }

    /// Terminals dominated by (or equal to) `id`.
    pub fn terminals_under(&self, id: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        (id..self.nodes[id].end).filter(|&i| self.nodes[i].is_terminal())
    }

    /// Canonical rendering: single spaces, no whitespace inside parentheses.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(Self::ROOT, &mut out);
        out
    }

    fn render_into(&self, id: NodeId, out: &mut String) {
        let n = &self.nodes[id];
        out.push('(');
        out.push_str(&n.label);
        if let Some(t) = &n.text {
            out.push(' ');
            out.push_str(t);
        }
        for &c in &n.children {
            out.push(' ');
            self.render_into(c, out);
        }
        out.push(')');
    }
}

impl fmt::Display for ParseTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl std::str::FromStr for ParseTree {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ParseTree::parse(s)
    }
}
