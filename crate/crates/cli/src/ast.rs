//! Syntax tree of a document and its canonical printer.

use modelbench::Q;
use num_traits::{One, Signed};
use std::fmt::{self, Write};

/// 1-based line and column of a token.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// A name with its position. Equality ignores the position.
#[derive(Clone, Debug, Eq)]
pub struct Ident {
    pub name: String,
    pub span: Span,
}

impl Ident {
    pub fn new(name: &str) -> Self {
        Ident { name: name.to_string(), span: Span::default() }
    }
}

impl PartialEq for Ident {
    fn eq(&self, o: &Self) -> bool {
        self.name == o.name
    }
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Document {
    pub blocks: Vec<Block>,
}

impl Document {
    pub fn get(&self, name: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.name.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub name: Ident,
    pub body: Body,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    Category(CategoryDef),
    Quiver(QuiverDef),
    Functor(FunctorDef),
    Diagram(DiagramDef),
    Complex(ComplexDef),
    ChainMap(ChainMapDef),
    DgAlg(DgDef),
    DgCat(DgDef),
    Square(SquareDef),
    Command(CommandDef),
}

impl Body {
    pub fn keyword(&self) -> &'static str {
        match self {
            Body::Category(_) => "category",
            Body::Quiver(_) => "quiver",
            Body::Functor(_) => "functor",
            Body::Diagram(_) => "diagram",
            Body::Complex(_) => "complex",
            Body::ChainMap(_) => "chainmap",
            Body::DgAlg(_) => "dgalg",
            Body::DgCat(_) => "dgcat",
            Body::Square(_) => "square",
            Body::Command(_) => "command",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowDecl {
    pub name: Ident,
    pub src: Ident,
    pub tgt: Ident,
}

/// `g*f` is `g ∘ f`; `id(x)` is an identity, `id` alone the unit of an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathExpr {
    Word(Vec<Ident>),
    Identity(Option<Ident>),
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CategoryDef {
    pub objects: Vec<Ident>,
    pub arrows: Vec<ArrowDecl>,
    pub relations: Vec<(PathExpr, PathExpr)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QuiverDef {
    pub vertices: Vec<Ident>,
    pub arrows: Vec<ArrowDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorDef {
    pub source: Ident,
    pub target: Ident,
    pub objects: Vec<(Ident, Ident)>,
    pub arrows: Vec<(Ident, PathExpr)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Discrete,
    Parallel,
    Span,
    Cospan,
}

impl Shape {
    pub fn keyword(self) -> &'static str {
        match self {
            Shape::Discrete => "discrete",
            Shape::Parallel => "parallel",
            Shape::Span => "span",
            Shape::Cospan => "cospan",
        }
    }
}

/// `discrete` lists categories; the other shapes list two functors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramDef {
    pub shape: Shape,
    pub members: Vec<Ident>,
}

pub type MatrixLit = Vec<Vec<Q>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexDef {
    pub lo: i64,
    pub dims: Vec<usize>,
    /// `d n` maps degree `n` to `n + 1`; absent entries are zero.
    pub diffs: Vec<(i64, MatrixLit)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMapDef {
    pub source: Ident,
    pub target: Ident,
    pub components: Vec<(i64, MatrixLit)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenDecl {
    pub name: Ident,
    /// Endpoints, for dg categories.
    pub ends: Option<(Ident, Ident)>,
    pub degree: i64,
    pub weight: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    pub terms: Vec<(Q, PathExpr)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DgDef {
    pub objects: Vec<Ident>,
    pub generators: Vec<GenDecl>,
    pub diffs: Vec<(Ident, Poly)>,
    pub relations: Vec<(Poly, Poly)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareDef {
    pub left: Ident,
    pub right: Ident,
    pub top: Ident,
    pub bottom: Ident,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandDef {
    pub argv: Vec<String>,
}

fn list<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for ArrowDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {}", self.name, self.src, self.tgt)
    }
}

impl fmt::Display for PathExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathExpr::Word(w) => f.write_str(&w.iter().map(|i| i.name.as_str()).collect::<Vec<_>>().join("*")),
            PathExpr::Identity(Some(x)) => write!(f, "id({x})"),
            PathExpr::Identity(None) => f.write_str("id"),
        }
    }
}

pub fn rational(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (c, p)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{} ", rational(&a))?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

fn matrix(m: &MatrixLit) -> String {
    let rows: Vec<String> = m.iter().map(|r| format!("[{}]", r.iter().map(rational).collect::<Vec<_>>().join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

fn quoted(s: &str) -> String {
    let mut out = String::from("\"");
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

impl fmt::Display for GenDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if let Some((s, t)) = &self.ends {
            write!(f, ": {s} -> {t}")?;
        }
        match self.weight {
            Some(w) => write!(f, " [{}, {w}]", self.degree),
            None => write!(f, " [{}]", self.degree),
        }
    }
}

/// Canonical text: one statement per line, four-space indentation, blank
/// lines between blocks, empty sections omitted.
pub fn print(doc: &Document) -> String {
    let mut out = String::new();
    for (k, b) in doc.blocks.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        print_block(&mut out, b).expect("writing to a string");
    }
    out
}

fn print_block(out: &mut String, b: &Block) -> fmt::Result {
    let kw = b.body.keyword();
    match &b.body {
        Body::Functor(d) => writeln!(out, "{kw} {}: {} -> {} {{", b.name, d.source, d.target)?,
        Body::ChainMap(d) => writeln!(out, "{kw} {}: {} -> {} {{", b.name, d.source, d.target)?,
        _ => writeln!(out, "{kw} {} {{", b.name)?,
    }
    let mut stmt = |s: String| writeln!(out, "    {s};");
    match &b.body {
        Body::Category(d) => {
            if !d.objects.is_empty() {
                stmt(format!("objects {}", list(&d.objects)))?;
            }
            if !d.arrows.is_empty() {
                stmt(format!("arrows {}", list(&d.arrows)))?;
            }
            if !d.relations.is_empty() {
                stmt(format!("relations {}", d.relations.iter().map(|(l, r)| format!("{l} = {r}")).collect::<Vec<_>>().join(", ")))?;
            }
        }
        Body::Quiver(d) => {
            if !d.vertices.is_empty() {
                stmt(format!("vertices {}", list(&d.vertices)))?;
            }
            if !d.arrows.is_empty() {
                stmt(format!("arrows {}", list(&d.arrows)))?;
            }
        }
        Body::Functor(d) => {
            if !d.objects.is_empty() {
                stmt(format!("objects {}", d.objects.iter().map(|(a, b)| format!("{a} -> {b}")).collect::<Vec<_>>().join(", ")))?;
            }
            if !d.arrows.is_empty() {
                stmt(format!("arrows {}", d.arrows.iter().map(|(a, b)| format!("{a} -> {b}")).collect::<Vec<_>>().join(", ")))?;
            }
        }
        Body::Diagram(d) => stmt(format!("{} {}", d.shape.keyword(), list(&d.members)))?,
        Body::Complex(d) => {
            stmt(format!("lo {}", d.lo))?;
            stmt(format!("dims {}", list(&d.dims)))?;
            for (n, m) in &d.diffs {
                stmt(format!("d {n} = {}", matrix(m)))?;
            }
        }
        Body::ChainMap(d) => {
            for (n, m) in &d.components {
                stmt(format!("at {n} = {}", matrix(m)))?;
            }
        }
        Body::DgAlg(d) | Body::DgCat(d) => {
            if !d.objects.is_empty() {
                stmt(format!("objects {}", list(&d.objects)))?;
            }
            if !d.generators.is_empty() {
                stmt(format!("generators {}", list(&d.generators)))?;
            }
            for (g, p) in &d.diffs {
                stmt(format!("d {g} = {p}"))?;
            }
            if !d.relations.is_empty() {
                stmt(format!("relations {}", d.relations.iter().map(|(l, r)| format!("{l} = {r}")).collect::<Vec<_>>().join(", ")))?;
            }
        }
        Body::Square(d) => {
            stmt(format!("left {}", d.left))?;
            stmt(format!("right {}", d.right))?;
            stmt(format!("top {}", d.top))?;
            stmt(format!("bottom {}", d.bottom))?;
        }
        Body::Command(d) => stmt(format!("run {}", d.argv.iter().map(|a| quoted(a)).collect::<Vec<_>>().join(", ")))?,
    }
    writeln!(out, "}}")
}
