//! Forests, trees and contexts over a finite alphabet, with the canonical
//! text syntax.
//!
//! ```text
//! forest ::= "0" | tree ("+" tree)*
//! tree   ::= symbol [ "(" forest ")" ] | "@"
//! symbol ::= [A-Za-z_][A-Za-z0-9_]* | '"' escaped '"'
//! ```
//!
//! `@` is the hole of a context. Whitespace is insignificant.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Add;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(String);

impl Symbol {
    /// Panics on the empty string; symbols are nonempty tokens.
    pub fn new(name: impl Into<String>) -> Self {
        let name = name.into();
        assert!(!name.is_empty(), "symbols are nonempty");
        Symbol(name)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn is_bare(&self) -> bool {
        let mut chars = self.0.chars();
        match chars.next() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return false,
        }
        chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_bare() {
            return f.write_str(&self.0);
        }
        f.write_str("\"")?;
        for c in self.0.chars() {
            match c {
                '"' => f.write_str("\\\"")?,
                '\\' => f.write_str("\\\\")?,
                '\n' => f.write_str("\\n")?,
                '\t' => f.write_str("\\t")?,
                c if c.is_control() => write!(f, "\\u{{{:x}}}", c as u32)?,
                c => write!(f, "{c}")?,
            }
        }
        f.write_str("\"")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tree {
    pub label: Symbol,
    pub children: Forest,
}

/// An ordered sequence of trees. The empty sequence is the empty forest `0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Forest {
    trees: Vec<Tree>,
}

impl Forest {
    pub fn empty() -> Self {
        Forest { trees: Vec::new() }
    }

    pub fn from_trees(trees: Vec<Tree>) -> Self {
        Forest { trees }
    }

    /// The single-tree forest `label(children)`.
    pub fn node(label: impl Into<Symbol>, children: Forest) -> Self {
        Forest {
            trees: vec![Tree {
                label: label.into(),
                children,
            }],
        }
    }

    pub fn leaf(label: impl Into<Symbol>) -> Self {
        Forest::node(label, Forest::empty())
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn into_trees(self) -> Vec<Tree> {
        self.trees
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.trees.iter().map(|t| 1 + t.children.node_count()).sum()
    }

    pub fn concat(&self, other: &Forest) -> Forest {
        let mut trees = self.trees.clone();
        trees.extend(other.trees.iter().cloned());
        Forest { trees }
    }

    pub fn push_tree(&mut self, tree: Tree) {
        self.trees.push(tree);
    }

    /// Every label occurring in the forest.
    pub fn labels(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels(&self, out: &mut BTreeSet<Symbol>) {
        for t in &self.trees {
            out.insert(t.label.clone());
            t.children.collect_labels(out);
        }
    }
}

impl Add for Forest {
    type Output = Forest;

    fn add(mut self, rhs: Forest) -> Forest {
        self.trees.extend(rhs.trees);
        self
    }
}

impl From<Tree> for Forest {
    fn from(t: Tree) -> Self {
        Forest { trees: vec![t] }
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.trees.is_empty() {
            return f.write_str("0");
        }
        write_trees(f, &self.trees)
    }
}

fn write_trees(f: &mut fmt::Formatter<'_>, trees: &[Tree]) -> fmt::Result {
    for (i, t) in trees.iter().enumerate() {
        if i > 0 {
            f.write_str("+")?;
        }
        write!(f, "{t}")?;
    }
    Ok(())
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)?;
        if !self.children.is_empty() {
            write!(f, "({})", self.children)?;
        }
        Ok(())
    }
}

/// A forest with exactly one hole, at a leaf.
///
/// Stored level by level: `left + spot + right`, where the spot is either
/// the hole itself or a tree whose children form the next level.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Context {
    pub left: Forest,
    pub spot: Spot,
    pub right: Forest,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Spot {
    Hole,
    Node(Symbol, Box<Context>),
}

impl Context {
    /// The vertical identity `@`.
    pub fn hole() -> Self {
        Context {
            left: Forest::empty(),
            spot: Spot::Hole,
            right: Forest::empty(),
        }
    }

    /// `label(@)`.
    pub fn wrap(label: impl Into<Symbol>) -> Self {
        Context {
            left: Forest::empty(),
            spot: Spot::Node(label.into(), Box::new(Context::hole())),
            right: Forest::empty(),
        }
    }

    /// Replace the hole by `f`.
    pub fn apply(&self, f: &Forest) -> Forest {
        let middle = match &self.spot {
            Spot::Hole => f.clone(),
            Spot::Node(a, inner) => Forest::node(a.clone(), inner.apply(f)),
        };
        self.left.concat(&middle).concat(&self.right)
    }

    /// The context `self ∘ inner`: `inner` spliced into this context's hole.
    pub fn compose(&self, inner: &Context) -> Context {
        match &self.spot {
            Spot::Hole => Context {
                left: self.left.concat(&inner.left),
                spot: inner.spot.clone(),
                right: inner.right.concat(&self.right),
            },
            Spot::Node(a, below) => Context {
                left: self.left.clone(),
                spot: Spot::Node(a.clone(), Box::new(below.compose(inner))),
                right: self.right.clone(),
            },
        }
    }

    /// Nodes other than the hole.
    pub fn node_count(&self) -> usize {
        let spot = match &self.spot {
            Spot::Hole => 0,
            Spot::Node(_, inner) => 1 + inner.node_count(),
        };
        self.left.node_count() + spot + self.right.node_count()
    }

    pub fn labels(&self) -> BTreeSet<Symbol> {
        let mut out = self.left.labels();
        out.extend(self.right.labels());
        if let Spot::Node(a, inner) = &self.spot {
            out.insert(a.clone());
            out.extend(inner.labels());
        }
        out
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.left.is_empty() {
            write!(f, "{}+", self.left)?;
        }
        match &self.spot {
            Spot::Hole => f.write_str("@")?,
            Spot::Node(a, inner) => write!(f, "{a}({inner})")?,
        }
        if !self.right.is_empty() {
            write!(f, "+{}", self.right)?;
        }
        Ok(())
    }
}

/// Result of parsing forest text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Forest(Forest),
    Context(Context),
}

impl fmt::Display for Parsed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parsed::Forest(x) => x.fmt(f),
            Parsed::Context(c) => c.fmt(f),
        }
    }
}

/// Parse a forest or context. With `alphabet`, every label must belong to it.
pub fn parse_forest(text: &str, alphabet: Option<&BTreeSet<Symbol>>) -> Result<Parsed> {
    let mut p = Parser {
        src: text,
        pos: 0,
        holes: 0,
    };
    let raw = p.forest()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("trailing input"));
    }
    if let Some(alpha) = alphabet {
        check_labels(&raw, alpha)?;
    }
    match p.holes {
        0 => Ok(Parsed::Forest(raw_to_forest(raw))),
        1 => Ok(Parsed::Context(raw_to_context(raw))),
        n => Err(Error::Hole(format!("{n} holes, expected at most one"))),
    }
}

/// Parse text that must denote a forest (no hole).
pub fn forest(text: &str) -> Result<Forest> {
    match parse_forest(text, None)? {
        Parsed::Forest(f) => Ok(f),
        Parsed::Context(_) => Err(Error::Hole("expected a forest, found a context".into())),
    }
}

/// Parse text that must denote a context (exactly one hole).
pub fn context(text: &str) -> Result<Context> {
    match parse_forest(text, None)? {
        Parsed::Context(c) => Ok(c),
        Parsed::Forest(_) => Err(Error::Hole("expected a context, found no hole".into())),
    }
}

pub fn print_forest(p: &Parsed) -> String {
    p.to_string()
}

#[derive(Debug)]
enum RawLabel {
    Sym(Symbol),
    Hole,
}

#[derive(Debug)]
struct RawTree {
    label: RawLabel,
    children: Vec<RawTree>,
}

fn check_labels(trees: &[RawTree], alpha: &BTreeSet<Symbol>) -> Result<()> {
    for t in trees {
        if let RawLabel::Sym(s) = &t.label {
            if !alpha.contains(s) {
                return Err(Error::UnknownSymbol(s.to_string()));
            }
        }
        check_labels(&t.children, alpha)?;
    }
    Ok(())
}

fn raw_to_forest(trees: Vec<RawTree>) -> Forest {
    Forest::from_trees(
        trees
            .into_iter()
            .map(|t| match t.label {
                RawLabel::Sym(label) => Tree {
                    label,
                    children: raw_to_forest(t.children),
                },
                RawLabel::Hole => unreachable!("hole in hole-free forest"),
            })
            .collect(),
    )
}

fn contains_hole(t: &RawTree) -> bool {
    matches!(t.label, RawLabel::Hole) || t.children.iter().any(contains_hole)
}

fn raw_to_context(mut trees: Vec<RawTree>) -> Context {
    let at = trees
        .iter()
        .position(contains_hole)
        .expect("context has a hole");
    let right = raw_to_forest(trees.split_off(at + 1));
    let spot_tree = trees.pop().expect("hole tree");
    let left = raw_to_forest(trees);
    let spot = match spot_tree.label {
        RawLabel::Hole => Spot::Hole,
        RawLabel::Sym(a) => Spot::Node(a, Box::new(raw_to_context(spot_tree.children))),
    };
    Context { left, spot, right }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    holes: usize,
}

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    /// Also accepts `0` as a summand and an empty forest inside parentheses.
    fn forest(&mut self) -> Result<Vec<RawTree>> {
        let mut trees = Vec::new();
        self.skip_ws();
        if matches!(self.peek(), Some(')')) {
            return Ok(trees);
        }
        loop {
            self.skip_ws();
            if self.peek() == Some('0') {
                self.bump();
            } else {
                trees.push(self.tree()?);
            }
            self.skip_ws();
            if self.peek() == Some('+') {
                self.bump();
            } else {
                return Ok(trees);
            }
        }
    }

    fn tree(&mut self) -> Result<RawTree> {
        let label = match self.peek() {
            Some('@') => {
                self.bump();
                self.holes += 1;
                RawLabel::Hole
            }
            Some('"') => RawLabel::Sym(self.quoted()?),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => RawLabel::Sym(self.bare()),
            Some(c) => return Err(self.err(format!("unexpected `{c}`"))),
            None => return Err(self.err("unexpected end of input")),
        };
        self.skip_ws();
        let mut children = Vec::new();
        if self.peek() == Some('(') {
            let open = self.pos;
            self.bump();
            children = self.forest()?;
            self.skip_ws();
            if self.peek() != Some(')') {
                return Err(self.err(format!("unclosed `(` opened at offset {open}")));
            }
            self.bump();
            if matches!(label, RawLabel::Hole) && !children.is_empty() {
                return Err(Error::Hole(format!("hole at offset {open} is not a leaf")));
            }
        }
        Ok(RawTree { label, children })
    }

    fn bare(&mut self) -> Symbol {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.bump();
        }
        Symbol::new(&self.src[start..self.pos])
    }

    fn quoted(&mut self) -> Result<Symbol> {
        let start = self.pos;
        self.bump();
        let mut out = String::new();
        loop {
            match self.bump() {
                None => return Err(self.err(format!("unterminated quote at offset {start}"))),
                Some('"') => break,
                Some('\\') => match self.bump() {
                    Some('"') => out.push('"'),
                    Some('\\') => out.push('\\'),
                    Some('n') => out.push('\n'),
                    Some('t') => out.push('\t'),
                    Some('u') => out.push(self.unicode_escape()?),
                    _ => return Err(self.err("bad escape")),
                },
                Some(c) => out.push(c),
            }
        }
        if out.is_empty() {
            return Err(self.err("empty symbol"));
        }
        Ok(Symbol::new(out))
    }

    fn unicode_escape(&mut self) -> Result<char> {
        if self.bump() != Some('{') {
            return Err(self.err("expected `{` after \\u"));
        }
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_hexdigit()) {
            self.bump();
        }
        let hex = &self.src[start..self.pos];
        if self.bump() != Some('}') {
            return Err(self.err("expected `}` closing \\u escape"));
        }
        u32::from_str_radix(hex, 16)
            .ok()
            .and_then(char::from_u32)
            .ok_or_else(|| self.err("invalid \\u escape"))
    }
}

/// Parse a single symbol token (bare or quoted), as used in file formats.
pub fn parse_symbol(token: &str) -> Result<Symbol> {
    let mut p = Parser {
        src: token,
        pos: 0,
        holes: 0,
    };
    let sym = match p.peek() {
        Some('"') => p.quoted()?,
        Some(c) if c.is_ascii_alphabetic() || c == '_' => p.bare(),
        _ => return Err(p.err(format!("`{token}` is not a symbol"))),
    };
    if p.pos != token.len() {
        return Err(p.err(format!("`{token}` is not a symbol")));
    }
    Ok(sym)
}

/// Boolean expressions, encoded as forests over `and`, `or`, `not`, `T`, `F`
/// and variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BoolExpr {
    And(Box<BoolExpr>, Box<BoolExpr>),
    Or(Box<BoolExpr>, Box<BoolExpr>),
    Not(Box<BoolExpr>),
    True,
    False,
    Var(Symbol),
}

pub const AND: &str = "and";
pub const OR: &str = "or";
pub const NOT: &str = "not";
pub const TRUE: &str = "T";
pub const FALSE: &str = "F";

impl BoolExpr {
    pub fn var(name: &str) -> Self {
        let sym = Symbol::new(name);
        assert!(
            ![AND, OR, NOT, TRUE, FALSE].contains(&name),
            "variable name collides with a connective"
        );
        BoolExpr::Var(sym)
    }

    pub fn and(l: BoolExpr, r: BoolExpr) -> Self {
        BoolExpr::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: BoolExpr, r: BoolExpr) -> Self {
        BoolExpr::Or(Box::new(l), Box::new(r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: BoolExpr) -> Self {
        BoolExpr::Not(Box::new(e))
    }

    pub fn variables(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Symbol>) {
        match self {
            BoolExpr::And(l, r) | BoolExpr::Or(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            BoolExpr::Not(e) => e.collect_vars(out),
            BoolExpr::Var(x) => {
                out.insert(x.clone());
            }
            BoolExpr::True | BoolExpr::False => {}
        }
    }

    /// Truth value under `assign`; unassigned variables are false.
    pub fn eval(&self, assign: &dyn Fn(&Symbol) -> bool) -> bool {
        match self {
            BoolExpr::And(l, r) => l.eval(assign) && r.eval(assign),
            BoolExpr::Or(l, r) => l.eval(assign) || r.eval(assign),
            BoolExpr::Not(e) => !e.eval(assign),
            BoolExpr::True => true,
            BoolExpr::False => false,
            BoolExpr::Var(x) => assign(x),
        }
    }

    /// Number of `and`/`or`/`not` nodes.
    pub fn connectives(&self) -> usize {
        match self {
            BoolExpr::And(l, r) | BoolExpr::Or(l, r) => 1 + l.connectives() + r.connectives(),
            BoolExpr::Not(e) => 1 + e.connectives(),
            _ => 0,
        }
    }

    pub fn is_satisfiable(&self) -> bool {
        let vars: Vec<Symbol> = self.variables().into_iter().collect();
        (0u64..1 << vars.len()).any(|bits| {
            self.eval(&|x: &Symbol| {
                let i = vars.iter().position(|v| v == x).expect("known var");
                bits >> i & 1 == 1
            })
        })
    }
}

pub fn encode_bool(e: &BoolExpr) -> Forest {
    match e {
        BoolExpr::And(l, r) => Forest::node(AND, encode_bool(l) + encode_bool(r)),
        BoolExpr::Or(l, r) => Forest::node(OR, encode_bool(l) + encode_bool(r)),
        BoolExpr::Not(x) => Forest::node(NOT, encode_bool(x)),
        BoolExpr::True => Forest::leaf(TRUE),
        BoolExpr::False => Forest::leaf(FALSE),
        BoolExpr::Var(x) => Forest::leaf(x.clone()),
    }
}
