//! Text format for presentations, and DOT export.
//!
//! ```text
//! quiver fig1 {
//!   vertices: 1 2 3;
//!   arrows: alpha: 1 -> 2, beta: 1 -> 2, gamma: 2 -> 3, delta: 2 -> 3;
//!   relations: delta*beta;
//! }
//! ```
//!
//! Path literals read right to left: `delta*beta` is `beta` followed by
//! `delta`, the same order as composition of maps.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::quiver::{validate_presentation, Arrow, MonomialPresentation, Path, Quiver, VertexId, Violation};
use crate::tree::TreeModule;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(usize),
    LBrace,
    RBrace,
    Colon,
    Semi,
    Comma,
    Star,
    Arrow,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(n) => format!("integer {n}"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Star => "`*`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, column };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump(&mut chars);
            }
            continue;
        }
        let tok = if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    s.push(c);
                    bump(&mut chars);
                } else {
                    break;
                }
            }
            Tok::Ident(s)
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() {
                    s.push(c);
                    bump(&mut chars);
                } else {
                    break;
                }
            }
            let n = s.parse().map_err(|_| Error::Syntax {
                line: pos.line,
                column: pos.column,
                expected: vec!["a vertex number that fits in a machine word".into()],
                found: s.clone(),
            })?;
            Tok::Int(n)
        } else {
            bump(&mut chars);
            match c {
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                ':' => Tok::Colon,
                ';' => Tok::Semi,
                ',' => Tok::Comma,
                '*' => Tok::Star,
                '-' if chars.peek() == Some(&'>') => {
                    bump(&mut chars);
                    Tok::Arrow
                }
                other => {
                    return Err(Error::Syntax {
                        line: pos.line,
                        column: pos.column,
                        expected: vec!["a token".into()],
                        found: format!("character `{other}`"),
                    })
                }
            }
        };
        out.push((tok, pos));
    }
    out.push((Tok::Eof, Pos { line, column }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

struct ArrowDecl {
    arrow: Arrow,
    pos: Pos,
}

struct PathLit {
    /// Names as written, leftmost first.
    names: Vec<(String, Pos)>,
    pos: Pos,
}

struct Document {
    name: String,
    vertices: Vec<VertexId>,
    vertices_pos: Pos,
    arrows: Vec<ArrowDecl>,
    relations: Vec<PathLit>,
}

impl Parser {
    fn peek(&self) -> &(Tok, Pos) {
        &self.toks[self.at]
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T> {
        let (tok, pos) = self.peek();
        Err(Error::Syntax {
            line: pos.line,
            column: pos.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: tok.describe(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<Pos> {
        if self.peek().0 == tok {
            Ok(self.next().1)
        } else {
            self.fail(&[&tok.describe()])
        }
    }

    fn keyword(&mut self, word: &str) -> Result<Pos> {
        match self.peek() {
            (Tok::Ident(s), _) if s == word => Ok(self.next().1),
            _ => self.fail(&[&format!("`{word}`")]),
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Pos)> {
        match self.peek().clone() {
            (Tok::Ident(s), pos) => {
                self.next();
                Ok((s, pos))
            }
            _ => self.fail(&[what]),
        }
    }

    fn int(&mut self) -> Result<usize> {
        match self.peek().0 {
            Tok::Int(n) => {
                self.next();
                Ok(n)
            }
            _ => self.fail(&["vertex number"]),
        }
    }

    fn document(&mut self) -> Result<Document> {
        self.keyword("quiver")?;
        let (name, _) = self.ident("quiver name")?;
        self.expect(Tok::LBrace)?;

        let vertices_pos = self.keyword("vertices")?;
        self.expect(Tok::Colon)?;
        let mut vertices = vec![VertexId(self.int()?)];
        while let Tok::Int(n) = self.peek().0 {
            self.next();
            vertices.push(VertexId(n));
        }
        self.expect(Tok::Semi)?;

        self.keyword("arrows")?;
        self.expect(Tok::Colon)?;
        let mut arrows = Vec::new();
        if self.peek().0 != Tok::Semi {
            loop {
                let (name, pos) = self.ident("arrow name")?;
                self.expect(Tok::Colon)?;
                let source = self.int()?;
                self.expect(Tok::Arrow)?;
                let target = self.int()?;
                arrows.push(ArrowDecl {
                    arrow: Arrow::new(name, source, target),
                    pos,
                });
                match self.peek().0 {
                    Tok::Comma => {
                        self.next();
                    }
                    Tok::Semi => break,
                    _ => return self.fail(&["`,`", "`;`"]),
                }
            }
        }
        self.expect(Tok::Semi)?;

        self.keyword("relations")?;
        self.expect(Tok::Colon)?;
        let mut relations = Vec::new();
        if self.peek().0 != Tok::Semi {
            loop {
                let first = self.ident("arrow name")?;
                let pos = first.1;
                let mut names = vec![first];
                while self.peek().0 == Tok::Star {
                    self.next();
                    names.push(self.ident("arrow name")?);
                }
                relations.push(PathLit { names, pos });
                match self.peek().0 {
                    Tok::Comma => {
                        self.next();
                    }
                    Tok::Semi => break,
                    _ => return self.fail(&["`*`", "`,`", "`;`"]),
                }
            }
        }
        self.expect(Tok::Semi)?;
        self.expect(Tok::RBrace)?;
        self.expect(Tok::Eof)?;
        Ok(Document {
            name,
            vertices,
            vertices_pos,
            arrows,
            relations,
        })
    }
}

fn semantic(pos: Pos, message: impl Into<String>) -> Error {
    Error::Semantic {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

/// Parses and validates a presentation.
pub fn parse(text: &str) -> Result<MonomialPresentation> {
    let doc = Parser {
        toks: lex(text)?,
        at: 0,
    }
    .document()?;

    let quiver = Quiver::new(doc.vertices.clone(), doc.arrows.iter().map(|d| d.arrow.clone()).collect());

    // Structural problems with vertices and arrows come first: relation paths
    // cannot be checked against a malformed quiver.
    let structural = validate_presentation(&MonomialPresentation::new(doc.name.clone(), quiver.clone(), vec![]));
    if let Some(v) = structural.violations.first() {
        let pos = match v {
            Violation::DanglingEndpoint { arrow, .. } | Violation::DuplicateArrowName { name: arrow } => doc
                .arrows
                .iter()
                .rev()
                .find(|d| &d.arrow.name == arrow)
                .map_or(doc.vertices_pos, |d| d.pos),
            _ => doc.vertices_pos,
        };
        return Err(semantic(pos, v.to_string()));
    }

    let mut relations = Vec::new();
    let mut relation_pos = Vec::new();
    for lit in &doc.relations {
        let mut ids = Vec::new();
        for (name, pos) in lit.names.iter().rev() {
            let id = quiver
                .arrow_by_name(name)
                .ok_or_else(|| semantic(*pos, format!("unknown arrow `{name}`")))?;
            ids.push(id);
        }
        let text: Vec<&str> = lit.names.iter().map(|(n, _)| n.as_str()).collect();
        let source = quiver.arrow(ids[0]).source;
        let path = Path::new(&quiver, source, ids).map_err(|e| match e {
            Error::ChainMismatch { arrow, expected, found } => semantic(
                lit.pos,
                format!(
                    "chain mismatch in relation `{}`: the path is at vertex {expected} but `{arrow}` starts at vertex {found}",
                    text.join("*")
                ),
            ),
            other => other,
        })?;
        relation_pos.push((path.clone(), lit.pos));
        relations.push(path);
    }

    let p = MonomialPresentation::new(doc.name, quiver, relations);
    let report = validate_presentation(&p);
    if let Some(v) = report.violations.first() {
        let offending = match v {
            Violation::ShortRelation { relation, .. }
            | Violation::DuplicateRelation { relation }
            | Violation::ComparableRelations { factor: relation, .. } => Some(relation),
            _ => None,
        };
        let pos = offending
            .and_then(|text| {
                relation_pos
                    .iter()
                    .find(|(path, _)| &p.relation_text(path) == text)
                    .map(|(_, pos)| *pos)
            })
            .unwrap_or(doc.vertices_pos);
        return Err(semantic(pos, v.to_string()));
    }
    Ok(p)
}

/// Canonical text: sorted vertices, arrows in declaration order, relations
/// in canonical path order.
pub fn render(p: &MonomialPresentation) -> String {
    let q = p.quiver();
    let mut out = String::new();
    let _ = writeln!(out, "quiver {} {{", p.name());
    let vertices: Vec<String> = q.vertices().map(|v| v.to_string()).collect();
    let _ = writeln!(out, "  vertices: {};", vertices.join(" "));
    let arrows: Vec<String> = q
        .arrows()
        .iter()
        .map(|a| format!("{}: {} -> {}", a.name, a.source, a.target))
        .collect();
    if arrows.is_empty() {
        out.push_str("  arrows:;\n");
    } else {
        let _ = writeln!(out, "  arrows: {};", arrows.join(", "));
    }
    let relations: Vec<String> = p.relations().iter().map(|r| p.relation_text(r)).collect();
    if relations.is_empty() {
        out.push_str("  relations:;\n");
    } else {
        let _ = writeln!(out, "  relations: {};", relations.join(", "));
    }
    out.push_str("}\n");
    out
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Anything that can be drawn as a DOT digraph.
pub trait Dot {
    fn to_dot(&self) -> String;
}

impl Dot for MonomialPresentation {
    fn to_dot(&self) -> String {
        quiver_dot(self.name(), self.quiver())
    }
}

impl Dot for Quiver {
    fn to_dot(&self) -> String {
        quiver_dot("Q", self)
    }
}

impl Dot for TreeModule<'_> {
    /// Nodes are labelled `(v, F(v))` and edges `(a, F(a))`.
    fn to_dot(&self) -> String {
        let q = self.presentation().quiver();
        let tree = self.tree();
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", dot_escape(self.title()));
        for v in 0..tree.vertex_count() {
            let label = format!("({}, {})", tree.name(v), self.vertex_image(v));
            let _ = writeln!(out, "  n{v} [label=\"{}\"];", dot_escape(&label));
        }
        for (k, a) in tree.arrows().iter().enumerate() {
            let label = format!("({}, {})", a.name, q.arrow(self.arrow_image(k)).name);
            let _ = writeln!(out, "  n{} -> n{} [label=\"{}\"];", a.source, a.target, dot_escape(&label));
        }
        out.push_str("}\n");
        out
    }
}

fn quiver_dot(name: &str, q: &Quiver) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", dot_escape(name));
    for v in q.vertices() {
        let _ = writeln!(out, "  {v};");
    }
    for a in q.arrows() {
        let _ = writeln!(out, "  {} -> {} [label=\"{}\"];", a.source, a.target, dot_escape(&a.name));
    }
    out.push_str("}\n");
    out
}

pub fn export_dot<T: Dot + ?Sized>(subject: &T) -> String {
    subject.to_dot()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::quiver::{path_basis, ArrowId};
    use crate::tree::{build_projective_tree, build_simple_tree};
    use proptest::prelude::*;

    #[test]
    fn fig1_fixture_parses() {
        let p = parse(fixtures::FIG1).unwrap();
        assert_eq!(p.vertex_count(), 3);
        assert_eq!(p.quiver().arrows().len(), 4);
        assert_eq!(p.relations().len(), 1);
        assert_eq!(p.relation_text(&p.relations()[0]), "delta*beta");
        // beta is applied first
        assert_eq!(p.relations()[0].arrows()[0], ArrowId(1));
    }

    #[test]
    fn chain_mismatch_is_located() {
        let text = fixtures::FIG1.replace("delta*beta", "gamma*gamma");
        match parse(&text) {
            Err(Error::Semantic { line, column, message }) => {
                assert_eq!((line, column), (4, 14));
                assert!(message.contains("chain mismatch"), "{message}");
                assert!(message.contains("vertex 3"), "{message}");
                assert!(message.contains("vertex 2"), "{message}");
            }
            other => panic!("expected semantic error, got {other:?}"),
        }
    }

    #[test]
    fn empty_vertex_clause_is_a_syntax_error() {
        let err = parse("quiver q { vertices: ; arrows:; relations:; }").unwrap_err();
        match err {
            Error::Syntax { line, column, expected, .. } => {
                assert_eq!((line, column), (1, 22));
                assert_eq!(expected, vec!["vertex number".to_string()]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_arrow_and_validation_errors_are_located() {
        let err = parse("quiver q {\n vertices: 1 2;\n arrows: a: 1 -> 2;\n relations: b*a;\n}").unwrap_err();
        assert!(matches!(err, Error::Semantic { line: 4, column: 13, .. }), "{err}");

        let err = parse("quiver q {\n vertices: 1 2;\n arrows: a: 1 -> 3;\n relations:;\n}").unwrap_err();
        assert!(matches!(err, Error::Semantic { line: 3, column: 10, .. }), "{err}");

        let err = parse("quiver q { vertices: 1; arrows: x: 1 -> 1; relations: x*x, x*x*x; }").unwrap_err();
        assert!(err.to_string().contains("is a factor of"), "{err}");

        let err = parse("quiver q { vertices: 1; arrows: x: 1 -> 1; relations: x; }").unwrap_err();
        assert!(err.to_string().contains("length 1"), "{err}");
    }

    #[test]
    fn render_point_and_round_trip_canonical_fixtures() {
        assert_eq!(
            render(&fixtures::point()),
            "quiver point {\n  vertices: 1;\n  arrows:;\n  relations:;\n}\n"
        );
        for text in fixtures::ALL {
            assert_eq!(render(&parse(text).unwrap()), *text);
        }
        let nak2 = render(&fixtures::nak2());
        assert!(nak2.contains("a1: 1 -> 2, a2: 2 -> 1"));
        assert!(nak2.contains("relations: a2*a1, a1*a2;"));
    }

    #[test]
    fn quiver_dot_lists_nodes_and_labelled_edges() {
        let dot = export_dot(&fixtures::fig1());
        assert_eq!(dot.lines().filter(|l| l.trim_end().ends_with(';') && !l.contains("->")).count(), 3);
        assert_eq!(dot.matches("->").count(), 4);
        assert!(dot.contains("2 -> 3 [label=\"delta\"]"));
    }

    #[test]
    fn tree_dot_labels_windings() {
        let p = fixtures::fig1();
        let t1 = build_projective_tree(&p, VertexId(1)).unwrap();
        let dot = export_dot(&t1);
        assert!(dot.contains("n0 [label=\"(*_1, 1)\"]"), "{dot}");
        assert_eq!(dot.matches("[label=\"(").count(), 6 + 5);

        let s = build_simple_tree(&p, VertexId(3)).unwrap();
        let dot = export_dot(&s);
        assert_eq!(dot.matches("label").count(), 1);
    }

    /// Random finite-dimensional presentations on up to three vertices.
    fn presentation() -> impl Strategy<Value = MonomialPresentation> {
        (1usize..4)
            .prop_flat_map(|n| {
                let arrow = (1..=n, 1..=n);
                (Just(n), proptest::collection::vec(arrow, 0..4), proptest::collection::vec((0usize..4, 2usize..4), 0..4))
            })
            .prop_filter_map("needs a valid finite presentation", |(n, ends, rels)| {
                let arrows: Vec<Arrow> = ends
                    .iter()
                    .enumerate()
                    .map(|(k, &(s, t))| Arrow::new(format!("x{k}"), s, t))
                    .collect();
                let q = Quiver::with_vertex_count(n, arrows);
                let mut relations = Vec::new();
                for (start, len) in rels {
                    if q.arrows().is_empty() {
                        break;
                    }
                    let mut ids = vec![ArrowId(start % q.arrows().len())];
                    while ids.len() < len {
                        let at = q.arrow(*ids.last().unwrap()).target;
                        match q.arrows_from(at).next() {
                            Some(a) => ids.push(a),
                            None => break,
                        }
                    }
                    if ids.len() == len {
                        let source = q.arrow(ids[0]).source;
                        relations.push(Path::new(&q, source, ids).unwrap());
                    }
                }
                relations.dedup();
                let p = MonomialPresentation::validated("random", q, relations).ok()?;
                path_basis(&p).ok().map(|_| p)
            })
    }

    proptest! {
        #[test]
        fn parse_inverts_render(p in presentation()) {
            let text = render(&p);
            let back = parse(&text).unwrap();
            prop_assert_eq!(&back, &p);
            prop_assert_eq!(render(&back), text);
        }
    }
}
