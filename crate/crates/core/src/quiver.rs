//! Gentle quivers: data model, parsing, validation and structural predicates.
//!
//! Vertex and arrow identifiers are opaque labels. Internally they are
//! replaced by dense indices assigned in lexicographic order of the labels,
//! so every derived enumeration is deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{QuiverError, SyntaxError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// One step of a walk: an arrow traversed forwards or backwards.
///
/// The derived order compares the arrow first and puts the direct letter
/// before the inverse one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub arrow: ArrowId,
    pub inverse: bool,
}

impl Letter {
    pub fn direct(arrow: ArrowId) -> Self {
        Letter { arrow, inverse: false }
    }

    pub fn inverse_of(arrow: ArrowId) -> Self {
        Letter { arrow, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter { arrow: self.arrow, inverse: !self.inverse }
    }
}

/// Unvalidated quiver data with string labels, as read from a file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuiverData {
    pub vertices: Vec<String>,
    /// `(id, source, target)`
    pub arrows: Vec<(String, String, String)>,
    /// `(first, second)`: the path `second ∘ first` is a relation.
    pub relations: Vec<(String, String)>,
}

/// A violated clause of the gentleness definition (or a malformed reference).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateVertex(String),
    DuplicateArrow(String),
    UnknownVertex { arrow: String, vertex: String },
    UnknownArrow(String),
    NotComposable { first: String, second: String },
    TooManyOutgoing { vertex: String, arrows: Vec<String> },
    TooManyIncoming { vertex: String, arrows: Vec<String> },
    TwoRelationsAfter { arrow: String, continuations: Vec<String> },
    TwoFreeAfter { arrow: String, continuations: Vec<String> },
    TwoRelationsBefore { arrow: String, predecessors: Vec<String> },
    TwoFreeBefore { arrow: String, predecessors: Vec<String> },
    CycleWithoutRelation { arrows: Vec<String> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateVertex(v) => write!(f, "vertex {v} declared twice"),
            Violation::DuplicateArrow(a) => write!(f, "arrow {a} declared twice"),
            Violation::UnknownVertex { arrow, vertex } => {
                write!(f, "arrow {arrow} uses undeclared vertex {vertex}")
            }
            Violation::UnknownArrow(a) => write!(f, "relation uses undeclared arrow {a}"),
            Violation::NotComposable { first, second } => {
                write!(f, "relation {second} {first} is not a path")
            }
            Violation::TooManyOutgoing { vertex, arrows } => {
                write!(f, "vertex {vertex} has more than two outgoing arrows ({})", arrows.join(", "))
            }
            Violation::TooManyIncoming { vertex, arrows } => {
                write!(f, "vertex {vertex} has more than two incoming arrows ({})", arrows.join(", "))
            }
            Violation::TwoRelationsAfter { arrow, continuations } => write!(
                f,
                "two relations starting with {arrow} ({})",
                continuations.join(", ")
            ),
            Violation::TwoFreeAfter { arrow, continuations } => write!(
                f,
                "two relation-free continuations of {arrow} ({})",
                continuations.join(", ")
            ),
            Violation::TwoRelationsBefore { arrow, predecessors } => write!(
                f,
                "two relations ending with {arrow} ({})",
                predecessors.join(", ")
            ),
            Violation::TwoFreeBefore { arrow, predecessors } => write!(
                f,
                "two relation-free predecessors of {arrow} ({})",
                predecessors.join(", ")
            ),
            Violation::CycleWithoutRelation { arrows } => {
                write!(f, "oriented cycle without relation: {}", arrows.join(" "))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuiverFlags {
    pub is_tree: bool,
    pub is_connected: bool,
    pub finite_gldim: bool,
    pub rep_finite: bool,
}

/// A validated, connected gentle quiver.
#[derive(Clone, Debug)]
pub struct GentleQuiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    /// `(first, second)` pairs with `second ∘ first ∈ R`.
    relations: BTreeSet<(ArrowId, ArrowId)>,
    outgoing: Vec<Vec<ArrowId>>,
    incoming: Vec<Vec<ArrowId>>,
    flags: QuiverFlags,
}

impl PartialEq for GentleQuiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.arrows == other.arrows
            && self.relations == other.relations
    }
}

impl Eq for GentleQuiver {}

impl GentleQuiver {
    /// Validates `data` and builds the quiver, computing all flags.
    pub fn from_data(data: &QuiverData) -> Result<Self, QuiverError> {
        let violations = validate_gentle(data);
        if !violations.is_empty() {
            return Err(QuiverError::Validation(violations));
        }
        let mut vertices = data.vertices.clone();
        vertices.sort();
        let vindex: BTreeMap<&str, usize> =
            vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut raw = data.arrows.clone();
        raw.sort();
        let arrows: Vec<Arrow> = raw
            .iter()
            .map(|(name, s, t)| Arrow {
                name: name.clone(),
                source: VertexId(vindex[s.as_str()]),
                target: VertexId(vindex[t.as_str()]),
            })
            .collect();
        let aindex: BTreeMap<&str, usize> =
            arrows.iter().enumerate().map(|(i, a)| (a.name.as_str(), i)).collect();
        let relations = data
            .relations
            .iter()
            .map(|(a, b)| (ArrowId(aindex[a.as_str()]), ArrowId(aindex[b.as_str()])))
            .collect();
        let mut outgoing = vec![Vec::new(); vertices.len()];
        let mut incoming = vec![Vec::new(); vertices.len()];
        for (i, a) in arrows.iter().enumerate() {
            outgoing[a.source.0].push(ArrowId(i));
            incoming[a.target.0].push(ArrowId(i));
        }
        let mut q = GentleQuiver {
            vertices,
            arrows,
            relations,
            outgoing,
            incoming,
            flags: QuiverFlags {
                is_tree: false,
                is_connected: false,
                finite_gldim: false,
                rep_finite: false,
            },
        };
        let connected = q.compute_connected();
        if !connected {
            return Err(QuiverError::NotConnected);
        }
        q.flags = QuiverFlags {
            is_connected: true,
            is_tree: q.arrows.len() + 1 == q.vertices.len(),
            finite_gldim: !q.compute_relation_cycle(),
            rep_finite: q.compute_rep_finite(),
        };
        Ok(q)
    }

    /// Convenience constructor from string slices.
    pub fn build(
        vertices: &[&str],
        arrows: &[(&str, &str, &str)],
        relations: &[(&str, &str)],
    ) -> Result<Self, QuiverError> {
        GentleQuiver::from_data(&QuiverData {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string()))
                .collect(),
            relations: relations.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.0]
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrows[a.0].name
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertices.binary_search_by(|v| v.as_str().cmp(name)).ok().map(VertexId)
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrows.binary_search_by(|a| a.name.as_str().cmp(name)).ok().map(ArrowId)
    }

    pub fn source(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].source
    }

    pub fn target(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].target
    }

    pub fn outgoing(&self, v: VertexId) -> &[ArrowId] {
        &self.outgoing[v.0]
    }

    pub fn incoming(&self, v: VertexId) -> &[ArrowId] {
        &self.incoming[v.0]
    }

    /// Whether `second ∘ first` is one of the relations.
    pub fn is_relation(&self, first: ArrowId, second: ArrowId) -> bool {
        self.relations.contains(&(first, second))
    }

    pub fn relations(&self) -> impl Iterator<Item = (ArrowId, ArrowId)> + '_ {
        self.relations.iter().copied()
    }

    /// The unique arrow continuing `a` without relation, if any.
    pub fn free_successor(&self, a: ArrowId) -> Option<ArrowId> {
        self.outgoing(self.target(a)).iter().copied().find(|&b| !self.is_relation(a, b))
    }

    /// The unique arrow preceding `a` without relation, if any.
    pub fn free_predecessor(&self, a: ArrowId) -> Option<ArrowId> {
        self.incoming(self.source(a)).iter().copied().find(|&b| !self.is_relation(b, a))
    }

    pub fn flags(&self) -> QuiverFlags {
        self.flags
    }

    pub fn is_tree(&self) -> bool {
        self.flags.is_tree
    }

    pub fn has_relation_cycle(&self) -> bool {
        !self.flags.finite_gldim
    }

    pub fn is_representation_finite(&self) -> bool {
        self.flags.rep_finite
    }

    pub fn letter_start(&self, l: Letter) -> VertexId {
        if l.inverse {
            self.target(l.arrow)
        } else {
            self.source(l.arrow)
        }
    }

    pub fn letter_end(&self, l: Letter) -> VertexId {
        if l.inverse {
            self.source(l.arrow)
        } else {
            self.target(l.arrow)
        }
    }

    /// Whether `next` may directly follow `prev` inside a string: the
    /// letters compose, the pair is reduced, and no relation is traversed
    /// in either direction.
    pub fn can_follow(&self, prev: Letter, next: Letter) -> bool {
        if self.letter_end(prev) != self.letter_start(next) {
            return false;
        }
        match (prev.inverse, next.inverse) {
            (false, false) => !self.is_relation(prev.arrow, next.arrow),
            (true, true) => !self.is_relation(next.arrow, prev.arrow),
            _ => prev.arrow != next.arrow,
        }
    }

    /// All letters starting at `v`.
    pub fn letters_from(&self, v: VertexId) -> Vec<Letter> {
        let mut out: Vec<Letter> = self.outgoing(v).iter().map(|&a| Letter::direct(a)).collect();
        out.extend(self.incoming(v).iter().map(|&a| Letter::inverse_of(a)));
        out.sort();
        out
    }

    pub fn all_letters(&self) -> Vec<Letter> {
        self.arrow_ids().flat_map(|a| [Letter::direct(a), Letter::inverse_of(a)]).collect()
    }

    /// Serializes to the quiver file grammar with sorted ids.
    pub fn serialize(&self) -> String {
        let mut out = String::from("vertices:");
        for v in &self.vertices {
            out.push(' ');
            out.push_str(v);
        }
        out.push_str("\narrows:");
        let decls: Vec<String> = self
            .arrows
            .iter()
            .map(|a| format!("{}: {} -> {}", a.name, self.vertices[a.source.0], self.vertices[a.target.0]))
            .collect();
        if !decls.is_empty() {
            out.push(' ');
            out.push_str(&decls.join("; "));
        }
        out.push_str("\nrelations:");
        let mut rels: Vec<(String, String)> = self
            .relations
            .iter()
            .map(|&(a, b)| (self.arrow_name(b).to_string(), self.arrow_name(a).to_string()))
            .collect();
        rels.sort();
        let rels: Vec<String> = rels.into_iter().map(|(b, a)| format!("{b} {a}")).collect();
        if !rels.is_empty() {
            out.push(' ');
            out.push_str(&rels.join("; "));
        }
        out.push('\n');
        out
    }

    pub fn to_data(&self) -> QuiverData {
        QuiverData {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| {
                    (a.name.clone(), self.vertices[a.source.0].clone(), self.vertices[a.target.0].clone())
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|&(a, b)| (self.arrow_name(a).to_string(), self.arrow_name(b).to_string()))
                .collect(),
        }
    }

    fn compute_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            let nbrs = self.outgoing[v]
                .iter()
                .map(|&a| self.target(a))
                .chain(self.incoming[v].iter().map(|&a| self.source(a)));
            for w in nbrs {
                if !seen[w.0] {
                    seen[w.0] = true;
                    stack.push(w.0);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn compute_relation_cycle(&self) -> bool {
        let succ: Vec<Vec<usize>> = self
            .arrow_ids()
            .map(|a| {
                self.outgoing(self.target(a))
                    .iter()
                    .filter(|&&b| self.is_relation(a, b))
                    .map(|b| b.0)
                    .collect()
            })
            .collect();
        find_cycle(&succ).is_some()
    }

    /// A band exists iff the letter-succession graph has a cycle: any cycle
    /// yields arbitrarily long strings, and a string longer than the number
    /// of letters repeats a letter, which closes a cycle.
    fn compute_rep_finite(&self) -> bool {
        let letters = self.all_letters();
        let index = |l: Letter| 2 * l.arrow.0 + usize::from(l.inverse);
        let mut succ = vec![Vec::new(); letters.len()];
        for &l in &letters {
            for m in self.letters_from(self.letter_end(l)) {
                if self.can_follow(l, m) {
                    succ[index(l)].push(index(m));
                }
            }
        }
        find_cycle(&succ).is_none()
    }
}

/// Returns the nodes of some directed cycle, if the graph has one.
fn find_cycle(succ: &[Vec<usize>]) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let n = succ.len();
    let mut mark = vec![Mark::New; n];
    for root in 0..n {
        if mark[root] != Mark::New {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        mark[root] = Mark::Active;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if *i < succ[v].len() {
                let w = succ[v][*i];
                *i += 1;
                match mark[w] {
                    Mark::New => {
                        mark[w] = Mark::Active;
                        stack.push((w, 0));
                    }
                    Mark::Active => {
                        let pos = stack.iter().position(|&(x, _)| x == w).unwrap();
                        return Some(stack[pos..].iter().map(|&(x, _)| x).collect());
                    }
                    Mark::Done => {}
                }
            } else {
                mark[v] = Mark::Done;
                stack.pop();
            }
        }
    }
    None
}

/// Checks every clause of the gentleness definition. Returns an empty list
/// iff the data describes a gentle quiver (connectivity is not a clause and
/// is checked separately).
pub fn validate_gentle(data: &QuiverData) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut vset = BTreeSet::new();
    for v in &data.vertices {
        if !vset.insert(v.as_str()) {
            out.push(Violation::DuplicateVertex(v.clone()));
        }
    }
    let mut arrows: BTreeMap<&str, (&str, &str)> = BTreeMap::new();
    for (a, s, t) in &data.arrows {
        if arrows.insert(a.as_str(), (s.as_str(), t.as_str())).is_some() {
            out.push(Violation::DuplicateArrow(a.clone()));
        }
        for x in [s, t] {
            if !vset.contains(x.as_str()) {
                out.push(Violation::UnknownVertex { arrow: a.clone(), vertex: x.clone() });
            }
        }
    }
    let mut rels: BTreeSet<(&str, &str)> = BTreeSet::new();
    for (a, b) in &data.relations {
        let mut known = true;
        for x in [a, b] {
            if !arrows.contains_key(x.as_str()) {
                out.push(Violation::UnknownArrow(x.clone()));
                known = false;
            }
        }
        if known {
            if arrows[a.as_str()].1 != arrows[b.as_str()].0 {
                out.push(Violation::NotComposable { first: a.clone(), second: b.clone() });
            } else {
                rels.insert((a.as_str(), b.as_str()));
            }
        }
    }
    if !out.is_empty() {
        return out;
    }

    for v in vset.iter().copied() {
        let outs: Vec<String> =
            arrows.iter().filter(|(_, (s, _))| *s == v).map(|(a, _)| a.to_string()).collect();
        let ins: Vec<String> =
            arrows.iter().filter(|(_, (_, t))| *t == v).map(|(a, _)| a.to_string()).collect();
        if outs.len() > 2 {
            out.push(Violation::TooManyOutgoing { vertex: v.to_string(), arrows: outs });
        }
        if ins.len() > 2 {
            out.push(Violation::TooManyIncoming { vertex: v.to_string(), arrows: ins });
        }
    }
    for (&a, &(_, t)) in &arrows {
        let (with, without): (Vec<&str>, Vec<&str>) = arrows
            .iter()
            .filter(|(_, (s, _))| *s == t)
            .map(|(b, _)| *b)
            .partition(|b| rels.contains(&(a, *b)));
        if with.len() > 1 {
            out.push(Violation::TwoRelationsAfter {
                arrow: a.to_string(),
                continuations: with.iter().map(|s| s.to_string()).collect(),
            });
        }
        if without.len() > 1 {
            out.push(Violation::TwoFreeAfter {
                arrow: a.to_string(),
                continuations: without.iter().map(|s| s.to_string()).collect(),
            });
        }
    }
    for (&b, &(s, _)) in &arrows {
        let (with, without): (Vec<&str>, Vec<&str>) = arrows
            .iter()
            .filter(|(_, (_, t))| *t == s)
            .map(|(a, _)| *a)
            .partition(|a| rels.contains(&(*a, b)));
        if with.len() > 1 {
            out.push(Violation::TwoRelationsBefore {
                arrow: b.to_string(),
                predecessors: with.iter().map(|s| s.to_string()).collect(),
            });
        }
        if without.len() > 1 {
            out.push(Violation::TwoFreeBefore {
                arrow: b.to_string(),
                predecessors: without.iter().map(|s| s.to_string()).collect(),
            });
        }
    }
    let names: Vec<&str> = arrows.keys().copied().collect();
    let succ: Vec<Vec<usize>> = names
        .iter()
        .map(|&a| {
            let t = arrows[a].1;
            names
                .iter()
                .enumerate()
                .filter(|(_, &b)| arrows[b].0 == t && !rels.contains(&(a, b)))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    if let Some(cycle) = find_cycle(&succ) {
        out.push(Violation::CycleWithoutRelation {
            arrows: cycle.into_iter().map(|i| names[i].to_string()).collect(),
        });
    }
    out
}

/// Parses the quiver file grammar and validates the result.
pub fn parse_quiver(text: &str) -> Result<GentleQuiver, QuiverError> {
    let data = parse_quiver_data(text)?;
    GentleQuiver::from_data(&data)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Colon,
    Semi,
    Arrow,
    Newline,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::Colon => "':'".into(),
            Tok::Semi => "';'".into(),
            Tok::Arrow => "'->'".into(),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of file".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize, usize)>, SyntaxError> {
    let mut toks = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = match line.find('#') {
            Some(i) => &line[..i],
            None => line,
        };
        let chars: Vec<(usize, char)> = line.char_indices().collect();
        let mut i = 0;
        while i < chars.len() {
            let (_, c) = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if c == ':' {
                toks.push((Tok::Colon, line_no, col));
                i += 1;
            } else if c == ';' {
                toks.push((Tok::Semi, line_no, col));
                i += 1;
            } else if c == '-' && chars.get(i + 1).map(|p| p.1) == Some('>') {
                toks.push((Tok::Arrow, line_no, col));
                i += 2;
            } else {
                let mut j = i;
                while j < chars.len() {
                    let d = chars[j].1;
                    if d.is_whitespace() || d == ':' || d == ';' {
                        break;
                    }
                    if d == '-' && chars.get(j + 1).map(|p| p.1) == Some('>') {
                        break;
                    }
                    j += 1;
                }
                let s: String = chars[i..j].iter().map(|p| p.1).collect();
                if s.contains('>') {
                    return Err(SyntaxError {
                        line: line_no,
                        column: col,
                        expected: "identifier".into(),
                        found: format!("'{s}'"),
                    });
                }
                toks.push((Tok::Ident(s), line_no, col));
                i = j;
            }
        }
        toks.push((Tok::Newline, line_no, line.chars().count() + 1));
    }
    let last = text.lines().count();
    toks.push((Tok::Eof, last + 1, 1));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn err(&self, expected: &str) -> SyntaxError {
        let (tok, line, column) = &self.toks[self.pos];
        SyntaxError { line: *line, column: *column, expected: expected.into(), found: tok.describe() }
    }

    fn skip_newlines(&mut self) {
        while *self.peek() == Tok::Newline {
            self.pos += 1;
        }
    }

    fn ident(&mut self, expected: &str) -> Result<String, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err(expected)),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), SyntaxError> {
        if *self.peek() == tok {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(expected))
        }
    }

    fn header(&mut self, word: &str) -> Result<(), SyntaxError> {
        self.skip_newlines();
        let expected = format!("'{word}:'");
        match self.peek() {
            Tok::Ident(s) if s == word => {
                self.pos += 1;
                self.expect(Tok::Colon, &expected)
            }
            _ => Err(self.err(&expected)),
        }
    }

    fn at_header(&self, word: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == word) && *self.peek_at(1) == Tok::Colon
    }

    fn separator(&mut self) -> Result<(), SyntaxError> {
        match self.peek() {
            Tok::Semi | Tok::Newline => {
                self.pos += 1;
                Ok(())
            }
            Tok::Eof => Ok(()),
            _ => Err(self.err("';' or end of line")),
        }
    }
}

fn parse_quiver_data(text: &str) -> Result<QuiverData, SyntaxError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let mut data = QuiverData::default();

    p.header("vertices")?;
    while let Tok::Ident(_) = p.peek() {
        data.vertices.push(p.ident("vertex identifier")?);
    }
    if data.vertices.is_empty() {
        return Err(p.err("vertex identifier"));
    }
    p.expect(Tok::Newline, "end of line")?;

    p.header("arrows")?;
    loop {
        while matches!(p.peek(), Tok::Newline | Tok::Semi) {
            p.pos += 1;
        }
        if p.at_header("relations") || *p.peek() == Tok::Eof {
            break;
        }
        let name = p.ident("arrow identifier")?;
        p.expect(Tok::Colon, "':'")?;
        let s = p.ident("source vertex")?;
        p.expect(Tok::Arrow, "'->'")?;
        let t = p.ident("target vertex")?;
        p.separator()?;
        data.arrows.push((name, s, t));
    }

    p.header("relations")?;
    loop {
        while matches!(p.peek(), Tok::Newline | Tok::Semi) {
            p.pos += 1;
        }
        if *p.peek() == Tok::Eof {
            break;
        }
        let second = p.ident("arrow identifier")?;
        let first = p.ident("arrow identifier")?;
        p.separator()?;
        data.relations.push((first, second));
    }
    Ok(data)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> GentleQuiver {
        parse_quiver("vertices: 1 2\narrows: a: 1 -> 2\nrelations:").unwrap()
    }

    #[test]
    fn parses_a2() {
        let q = a2();
        assert_eq!(q.num_vertices(), 2);
        assert_eq!(q.num_arrows(), 1);
        assert!(q.is_tree());
        assert!(q.is_representation_finite());
        assert!(!q.has_relation_cycle());
    }

    #[test]
    fn loop_without_relation_is_rejected() {
        let err = parse_quiver("vertices: 1\narrows: a: 1 -> 1\nrelations:").unwrap_err();
        match err {
            QuiverError::Validation(v) => {
                assert!(v.iter().any(|x| matches!(x, Violation::CycleWithoutRelation { .. })))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn double_arrow_example_is_gentle_not_tree() {
        let q = parse_quiver(
            "vertices: 1 2 3\narrows: a1: 1 -> 2; b1: 1 -> 2; a2: 2 -> 3; b2: 2 -> 3\nrelations: a2 b1; b2 a1\n",
        )
        .unwrap();
        assert!(!q.is_tree());
        assert!(!q.has_relation_cycle());
    }

    #[test]
    fn three_outgoing_names_the_vertex() {
        let data = QuiverData {
            vertices: vec!["1".into(), "2".into(), "3".into(), "4".into()],
            arrows: vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "1".into(), "3".into()),
                ("c".into(), "1".into(), "4".into()),
            ],
            relations: vec![],
        };
        let v = validate_gentle(&data);
        assert_eq!(v.len(), 1);
        assert!(matches!(&v[0], Violation::TooManyOutgoing { vertex, .. } if vertex == "1"));
    }

    #[test]
    fn two_relations_starting_with_a() {
        let data = QuiverData {
            vertices: vec!["1".into(), "2".into(), "3".into()],
            arrows: vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "3".into()),
                ("c".into(), "2".into(), "3".into()),
            ],
            relations: vec![("a".into(), "b".into()), ("a".into(), "c".into())],
        };
        let v = validate_gentle(&data);
        assert!(v.iter().any(|x| x.to_string().starts_with("two relations starting with a")));
    }

    #[test]
    fn relation_cycles() {
        let all = parse_quiver(
            "vertices: 1 2 3\narrows: a: 1 -> 2; b: 2 -> 3; c: 3 -> 1\nrelations: b a; c b; a c\n",
        )
        .unwrap();
        assert!(all.has_relation_cycle());
        assert!(all.is_representation_finite());
        let one = parse_quiver("vertices: 1 2 3\narrows: a: 1 -> 2; b: 2 -> 3; c: 3 -> 1\nrelations: b a\n")
            .unwrap();
        assert!(!one.has_relation_cycle());
        assert!(one.is_representation_finite());
    }

    #[test]
    fn kronecker_is_not_rep_finite() {
        let q = parse_quiver("vertices: 1 2\narrows: a: 1 -> 2; b: 1 -> 2\nrelations:").unwrap();
        assert!(!q.is_representation_finite());
        assert!(!q.is_tree());
    }

    #[test]
    fn a3_with_relation_is_rep_finite() {
        let q = parse_quiver("vertices: 1 2 3\narrows: a: 1 -> 2\nb: 2 -> 3\nrelations: b a").unwrap();
        assert!(q.is_representation_finite());
        assert!(q.is_relation(q.arrow_by_name("a").unwrap(), q.arrow_by_name("b").unwrap()));
    }

    #[test]
    fn disconnected_input_is_an_error() {
        let err = parse_quiver("vertices: 1 2\narrows:\nrelations:").unwrap_err();
        assert!(matches!(err, QuiverError::NotConnected));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_quiver("vertices: 1 2\narrows: a 1 -> 2\nrelations:").unwrap_err();
        match err {
            QuiverError::Syntax(e) => {
                assert_eq!(e.line, 2);
                assert_eq!(e.expected, "':'");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn comments_and_multiline_declarations() {
        let q = parse_quiver(
            "# linear A3\nvertices: 1 2 3   # three\narrows:\n  a: 1 -> 2\n  b: 2 -> 3\nrelations:\n  b a\n",
        )
        .unwrap();
        assert_eq!(q.num_arrows(), 2);
        assert_eq!(q.relations().count(), 1);
    }

    #[test]
    fn serialize_roundtrip() {
        let q = parse_quiver("vertices: 3 1 2\narrows: b: 2 -> 3; a: 1 -> 2\nrelations: b a").unwrap();
        let text = q.serialize();
        assert_eq!(text, "vertices: 1 2 3\narrows: a: 1 -> 2; b: 2 -> 3\nrelations: b a\n");
        assert_eq!(parse_quiver(&text).unwrap(), q);
    }
}
