//! Text format for triples.
//!
//! ```text
//! # comments run to end of line
//! quiver A {
//!     vertices: 1, 2;
//!     special: 2;
//!     arrows: a: 1 -> 2, b: 2 -> 1;
//!     relations: a*b, b*a;
//! }
//! ```
//!
//! `vertices` is required and nonempty; the other statements are optional
//! and each kind may appear at most once.

use std::collections::BTreeSet;
use std::fmt;

use qsg_core::{Arrow, ArrowId, BoundQuiver, Quiver, SkewedGentleTriple};

/// 1-based position of a token in the input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DslError {
    #[error("{span}: {message}")]
    Parse { span: SourceSpan, message: String },
    #[error("{span}: {source}")]
    Integrity {
        span: SourceSpan,
        source: qsg_core::Error,
    },
}

impl DslError {
    pub fn span(&self) -> SourceSpan {
        match self {
            DslError::Parse { span, .. } | DslError::Integrity { span, .. } => *span,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Colon,
    Semi,
    Comma,
    LBrace,
    RBrace,
    Arrow,
    Star,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Colon => "`:`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Comma => "`,`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Star => "`*`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    is_ident_start(c) || c == '+' || c == '-'
}

/// Whether `s` can be written as a bare identifier.
pub fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if is_ident_start(c))
        && chars.all(is_ident_char)
        && !s.contains("->")
}

fn tokenize(text: &str) -> Result<Vec<(Tok, SourceSpan)>, DslError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let span = |length| SourceSpan { line, column: col, length };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let single = match c {
            ':' => Some(Tok::Colon),
            ';' => Some(Tok::Semi),
            ',' => Some(Tok::Comma),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '*' => Some(Tok::Star),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((tok, span(1)));
            i += 1;
            col += 1;
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push((Tok::Arrow, span(2)));
            i += 2;
            col += 2;
            continue;
        }
        if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                if chars[i] == '-' && chars.get(i + 1) == Some(&'>') {
                    break;
                }
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            out.push((Tok::Ident(word), span(i - start)));
            col += i - start;
            continue;
        }
        return Err(DslError::Parse {
            span: span(1),
            message: format!("unexpected character `{c}`"),
        });
    }
    out.push((Tok::Eof, SourceSpan { line, column: col, length: 1 }));
    Ok(out)
}

type Named = (String, SourceSpan);

#[derive(Default)]
struct Statements {
    vertices: Option<Vec<Named>>,
    special: Option<Vec<Named>>,
    arrows: Option<Vec<(Named, Named, Named)>>,
    relations: Option<Vec<(Named, Named)>>,
}

struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &(Tok, SourceSpan) {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> (Tok, SourceSpan) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T, DslError> {
        let (tok, span) = self.peek();
        Err(DslError::Parse {
            span: *span,
            message: format!("expected {expected}, found {}", tok.describe()),
        })
    }

    fn expect(&mut self, want: Tok) -> Result<SourceSpan, DslError> {
        if self.peek().0 == want {
            Ok(self.bump().1)
        } else {
            self.error(&want.describe())
        }
    }

    fn ident(&mut self, what: &str) -> Result<Named, DslError> {
        match self.peek() {
            (Tok::Ident(_), _) => match self.bump() {
                (Tok::Ident(s), span) => Ok((s, span)),
                _ => unreachable!(),
            },
            _ => self.error(what),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<(), DslError> {
        match self.peek() {
            (Tok::Ident(s), _) if s == word => {
                self.bump();
                Ok(())
            }
            _ => self.error(&format!("`{word}`")),
        }
    }

    /// Comma-separated items up to and including `;`.
    fn items<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T, DslError>) -> Result<Vec<T>, DslError> {
        let mut out = Vec::new();
        if self.peek().0 == Tok::Semi {
            self.bump();
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            match self.peek().0 {
                Tok::Comma => {
                    self.bump();
                }
                Tok::Semi => {
                    self.bump();
                    return Ok(out);
                }
                _ => return self.error("`,` or `;`"),
            }
        }
    }

    fn file(&mut self) -> Result<(Named, Statements), DslError> {
        self.keyword("quiver")?;
        let name = self.ident("quiver name")?;
        self.expect(Tok::LBrace)?;
        let mut st = Statements::default();
        loop {
            let (kind, span) = match self.peek() {
                (Tok::RBrace, _) => break,
                (Tok::Ident(k), span) => (k.clone(), *span),
                _ => return self.error("statement keyword or `}`"),
            };
            let duplicate = match kind.as_str() {
                "vertices" => st.vertices.is_some(),
                "special" => st.special.is_some(),
                "arrows" => st.arrows.is_some(),
                "relations" => st.relations.is_some(),
                _ => return self.error("`vertices`, `special`, `arrows`, `relations` or `}`"),
            };
            if duplicate {
                return Err(DslError::Parse {
                    span,
                    message: format!("duplicate `{kind}` statement"),
                });
            }
            self.bump();
            self.expect(Tok::Colon)?;
            match kind.as_str() {
                "vertices" => {
                    let vs = self.items(|p| p.ident("vertex name"))?;
                    if vs.is_empty() {
                        return Err(DslError::Parse {
                            span,
                            message: "a quiver needs at least one vertex".into(),
                        });
                    }
                    st.vertices = Some(vs);
                }
                "special" => st.special = Some(self.items(|p| p.ident("vertex name"))?),
                "arrows" => {
                    st.arrows = Some(self.items(|p| {
                        let name = p.ident("arrow name")?;
                        p.expect(Tok::Colon)?;
                        let s = p.ident("source vertex")?;
                        p.expect(Tok::Arrow)?;
                        let t = p.ident("target vertex")?;
                        Ok((name, s, t))
                    })?)
                }
                _ => {
                    st.relations = Some(self.items(|p| {
                        let outer = p.ident("arrow name")?;
                        p.expect(Tok::Star)?;
                        let inner = p.ident("arrow name")?;
                        Ok((outer, inner))
                    })?)
                }
            }
        }
        self.expect(Tok::RBrace)?;
        self.expect(Tok::Eof)?;
        if st.vertices.is_none() {
            return Err(DslError::Parse {
                span: name.1,
                message: "missing `vertices` statement".into(),
            });
        }
        Ok((name, st))
    }
}

fn integrity(span: SourceSpan, source: qsg_core::Error) -> DslError {
    DslError::Integrity { span, source }
}

fn build(name: Named, st: Statements) -> Result<SkewedGentleTriple, DslError> {
    use qsg_core::Error as E;
    let vertices = st.vertices.unwrap_or_default();
    let mut vset = BTreeSet::new();
    for (v, span) in &vertices {
        if !vset.insert(v.as_str()) {
            return Err(integrity(*span, E::DuplicateName(v.clone())));
        }
    }

    let arrows = st.arrows.unwrap_or_default();
    let mut aset = BTreeSet::new();
    for ((a, aspan), (s, sspan), (t, tspan)) in &arrows {
        for (end, span) in [(s, sspan), (t, tspan)] {
            if !vset.contains(end.as_str()) {
                let e = E::DanglingEndpoint {
                    arrow: a.clone(),
                    vertex: end.clone(),
                };
                return Err(integrity(*span, e));
            }
        }
        if !aset.insert(a.as_str()) {
            return Err(integrity(*aspan, E::DuplicateName(a.clone())));
        }
    }
    let quiver = Quiver::new(
        vertices.iter().map(|(v, _)| v.clone()),
        arrows.iter().map(|((a, _), (s, _), (t, _))| Arrow::new(a, s, t)),
    )
    .map_err(|e| integrity(name.1, e))?;

    let relations = st.relations.unwrap_or_default();
    let mut rset: BTreeSet<(ArrowId, ArrowId)> = BTreeSet::new();
    for ((o, ospan), (i, ispan)) in &relations {
        let oa = quiver.arrow(o).ok_or_else(|| integrity(*ospan, E::UnknownArrow(o.clone())))?;
        let ia = quiver.arrow(i).ok_or_else(|| integrity(*ispan, E::UnknownArrow(i.clone())))?;
        if ia.target != oa.source {
            let e = E::RelationNotComposable {
                outer: o.clone(),
                inner: i.clone(),
            };
            return Err(integrity(*ospan, e));
        }
        if !rset.insert((o.clone(), i.clone())) {
            let e = E::DuplicateRelation {
                outer: o.clone(),
                inner: i.clone(),
            };
            return Err(integrity(*ospan, e));
        }
    }
    let pair = BoundQuiver::new(quiver, rset).map_err(|e| integrity(name.1, e))?;

    let special = st.special.unwrap_or_default();
    let mut sset = BTreeSet::new();
    for (v, span) in &special {
        if !vset.contains(v.as_str()) {
            return Err(integrity(*span, E::UnknownVertex(v.clone())));
        }
        if !sset.insert(v.as_str()) {
            return Err(integrity(*span, E::DuplicateSpecial(v.clone())));
        }
    }
    SkewedGentleTriple::new(name.0, pair, sset).map_err(|e| integrity(name.1, e))
}

/// Reads a triple exactly as written. Only syntax and references are
/// checked; gentleness is left to the validator.
pub fn parse(text: &str) -> Result<SkewedGentleTriple, DslError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let (name, st) = p.file()?;
    build(name, st)
}

/// Canonical single-line form: all four statements, items sorted.
pub fn serialize(t: &SkewedGentleTriple) -> String {
    let name = if is_ident(t.name()) { t.name() } else { "Q" };
    let q = t.quiver();
    let join = |items: Vec<String>| items.join(", ");
    let vertices = join(q.vertices().iter().cloned().collect());
    let special = join(t.special().iter().cloned().collect());
    let arrows = join(
        q.arrows()
            .map(|a| format!("{}: {} -> {}", a.name, a.source, a.target))
            .collect(),
    );
    let relations = join(t.pair().relations().iter().map(|(o, i)| format!("{o}*{i}")).collect());
    format!("quiver {name} {{ vertices: {vertices}; special: {special}; arrows: {arrows}; relations: {relations}; }}")
}
