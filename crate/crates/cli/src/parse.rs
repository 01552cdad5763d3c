//! Lexer and recursive-descent parser for documents.

use crate::ast::*;
use modelbench::{Scalar, Q};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(String),
    Str(String),
    Sym(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(s) => write!(f, "integer `{s}`"),
            Tok::Str(s) => write!(f, "string {s:?}"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub span: Span,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.span, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(" or "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

const SYMBOLS: [&str; 15] = ["->", "..", "{", "}", "[", "]", "(", ")", ";", ":", ",", "=", "+", "-", "*"];

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

pub fn lex(text: &str) -> Result<Vec<(Tok, Span)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, n: usize| {
        for _ in 0..n {
            if chars[*i] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *i += 1;
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, col };
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col, 1);
        } else if c == '#' || (c == '/' && chars.get(i + 1) == Some(&'/')) {
            while i < chars.len() && chars[i] != '\n' {
                advance(&mut i, &mut line, &mut col, 1);
            }
        } else if c == '"' {
            let mut s = String::new();
            advance(&mut i, &mut line, &mut col, 1);
            loop {
                match chars.get(i) {
                    None | Some('\n') => return Err(ParseError { span, message: "unterminated string".into(), expected: vec![] }),
                    Some('"') => {
                        advance(&mut i, &mut line, &mut col, 1);
                        break;
                    }
                    Some('\\') => {
                        let e = match chars.get(i + 1) {
                            Some('n') => '\n',
                            Some(&c) => c,
                            None => '\\',
                        };
                        s.push(e);
                        let n = 2.min(chars.len() - i);
                        advance(&mut i, &mut line, &mut col, n);
                    }
                    Some(&c) => {
                        s.push(c);
                        advance(&mut i, &mut line, &mut col, 1);
                    }
                }
            }
            out.push((Tok::Str(s), span));
        } else if is_name_char(c) {
            let start = i;
            while i < chars.len() && is_name_char(chars[i]) {
                advance(&mut i, &mut line, &mut col, 1);
            }
            if chars[start..i].iter().all(|c| c.is_ascii_digit()) && chars.get(i) == Some(&'.') && chars.get(i + 1).is_some_and(|c| c.is_ascii_digit()) {
                advance(&mut i, &mut line, &mut col, 1);
                while i < chars.len() && chars[i].is_ascii_digit() {
                    advance(&mut i, &mut line, &mut col, 1);
                }
            }
            let word: String = chars[start..i].iter().collect();
            if word.chars().all(|c| c.is_ascii_digit() || c == '.') {
                out.push((Tok::Int(word), span));
            } else {
                out.push((Tok::Ident(word), span));
            }
        } else if let Some(sym) = SYMBOLS.iter().find(|s| s.chars().enumerate().all(|(k, sc)| chars.get(i + k) == Some(&sc))) {
            advance(&mut i, &mut line, &mut col, sym.chars().count());
            out.push((Tok::Sym(sym), span));
        } else if c == '/' {
            advance(&mut i, &mut line, &mut col, 1);
            out.push((Tok::Sym("/"), span));
        } else {
            return Err(ParseError { span, message: format!("unexpected character `{c}`"), expected: vec![] });
        }
    }
    out.push((Tok::Eof, Span { line, col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

type Res<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Res<T> {
        Err(ParseError { span: self.span(), message: format!("unexpected {}", self.peek()), expected: expected.iter().map(|s| s.to_string()).collect() })
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(t) if *t == s)
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Res<()> {
        if self.eat(s) {
            Ok(())
        } else {
            self.fail(&[&format!("`{s}`")])
        }
    }

    fn is_keyword(&self, k: &str) -> bool {
        matches!(self.peek(), Tok::Ident(t) if t == k)
    }

    /// Generator and arrow names: identifiers that are not plain integers.
    fn ident(&mut self) -> Res<Ident> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let (_, span) = self.bump();
                Ok(Ident { name, span })
            }
            _ => self.fail(&["name"]),
        }
    }

    /// Object names may also be integers or `*`.
    fn object(&mut self) -> Res<Ident> {
        match self.peek().clone() {
            Tok::Ident(name) | Tok::Int(name) => {
                let (_, span) = self.bump();
                Ok(Ident { name, span })
            }
            Tok::Sym("*") => {
                let (_, span) = self.bump();
                Ok(Ident { name: "*".into(), span })
            }
            _ => self.fail(&["object name"]),
        }
    }

    fn int(&mut self, what: &str) -> Res<i64> {
        let neg = self.eat("-");
        match self.peek().clone() {
            Tok::Int(s) => {
                let span = self.span();
                self.bump();
                let v: i64 = s.parse().map_err(|_| ParseError { span, message: bad_integer(what, &s), expected: vec![] })?;
                Ok(if neg { -v } else { v })
            }
            _ => self.fail(&[what]),
        }
    }

    fn unsigned(&mut self, what: &str) -> Res<u64> {
        match self.peek().clone() {
            Tok::Int(s) => {
                let span = self.span();
                self.bump();
                s.parse().map_err(|_| ParseError { span, message: bad_integer(what, &s), expected: vec![] })
            }
            _ => self.fail(&[what]),
        }
    }

    fn rational(&mut self) -> Res<Q> {
        let neg = self.eat("-");
        let span = self.span();
        let Tok::Int(n) = self.peek().clone() else { return self.fail(&["number"]) };
        self.bump();
        let mut text = n;
        if self.eat("/") {
            let Tok::Int(d) = self.peek().clone() else { return self.fail(&["denominator"]) };
            if d.chars().all(|c| c == '0') {
                return Err(ParseError { span: self.span(), message: "zero denominator".into(), expected: vec![] });
            }
            self.bump();
            text = format!("{text}/{d}");
        }
        let q = Q::parse(&text).ok_or_else(|| ParseError { span, message: format!("malformed number `{text}`"), expected: vec![] })?;
        Ok(if neg { -q } else { q })
    }

    fn comma_list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Res<T>) -> Res<Vec<T>> {
        let mut out = vec![item(self)?];
        while self.eat(",") {
            out.push(item(self)?);
        }
        Ok(out)
    }

    fn arrow_decl(&mut self) -> Res<ArrowDecl> {
        let name = self.ident()?;
        self.expect(":")?;
        let src = self.object()?;
        self.expect("->")?;
        let tgt = self.object()?;
        Ok(ArrowDecl { name, src, tgt })
    }

    fn path(&mut self) -> Res<PathExpr> {
        if self.is_keyword("id") {
            self.bump();
            if self.eat("(") {
                let x = self.object()?;
                self.expect(")")?;
                return Ok(PathExpr::Identity(Some(x)));
            }
            return Ok(PathExpr::Identity(None));
        }
        let mut w = vec![self.ident()?];
        while self.eat("*") {
            w.push(self.ident()?);
        }
        Ok(PathExpr::Word(w))
    }

    fn term(&mut self) -> Res<(Q, PathExpr)> {
        if matches!(self.peek(), Tok::Int(_)) {
            let c = self.rational()?;
            let starts_path = matches!(self.peek(), Tok::Ident(_)) || self.is_sym("*");
            if starts_path {
                self.eat("*");
                return Ok((c, self.path()?));
            }
            return Ok((c, PathExpr::Identity(None)));
        }
        Ok((Q::from_int(1), self.path()?))
    }

    fn poly(&mut self) -> Res<Poly> {
        if matches!(self.peek(), Tok::Int(s) if s.chars().all(|c| c == '0')) && !matches!(self.peek_at(1), Tok::Ident(_) | Tok::Sym("*") | Tok::Sym("/")) {
            self.bump();
            return Ok(Poly::default());
        }
        let mut terms = Vec::new();
        let mut neg = self.eat("-");
        loop {
            let (c, p) = self.term()?;
            terms.push((if neg { -c } else { c }, p));
            if self.eat("+") {
                neg = false;
            } else if self.eat("-") {
                neg = true;
            } else {
                break;
            }
        }
        Ok(Poly { terms })
    }

    fn matrix(&mut self) -> Res<MatrixLit> {
        self.expect("[")?;
        let mut rows = Vec::new();
        if !self.is_sym("]") {
            rows = self.comma_list(|p| {
                p.expect("[")?;
                let row = if p.is_sym("]") { Vec::new() } else { p.comma_list(|p| p.rational())? };
                p.expect("]")?;
                Ok(row)
            })?;
        }
        self.expect("]")?;
        let width = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != width) {
            return Err(ParseError { span: self.toks[self.pos - 1].1, message: "rows of unequal length".into(), expected: vec![] });
        }
        Ok(rows)
    }

    fn gen_decl(&mut self, with_ends: bool) -> Res<GenDecl> {
        let name = self.ident()?;
        let ends = if with_ends {
            self.expect(":")?;
            let s = self.object()?;
            self.expect("->")?;
            let t = self.object()?;
            Some((s, t))
        } else {
            None
        };
        self.expect("[")?;
        let degree = self.int("integer degree")?;
        let weight = if self.eat(",") {
            let w = self.unsigned("weight")?;
            Some(u32::try_from(w).map_err(|_| ParseError { span: self.toks[self.pos - 1].1, message: "weight out of range".into(), expected: vec![] })?)
        } else {
            None
        };
        self.expect("]")?;
        Ok(GenDecl { name, ends, degree, weight })
    }

    fn statements(&mut self, mut stmt: impl FnMut(&mut Self, &str) -> Res<bool>) -> Res<()> {
        self.expect("{")?;
        while !self.eat("}") {
            let Tok::Ident(kw) = self.peek().clone() else { return self.fail(&["statement", "`}`"]) };
            self.bump();
            if !stmt(self, &kw)? {
                self.pos -= 1;
                return Err(ParseError { span: self.span(), message: format!("unknown statement `{kw}`"), expected: vec![] });
            }
            self.expect(";")?;
        }
        Ok(())
    }

    fn relation_list(&mut self) -> Res<Vec<(PathExpr, PathExpr)>> {
        self.comma_list(|p| {
            let l = p.path()?;
            p.expect("=")?;
            Ok((l, p.path()?))
        })
    }

    fn block(&mut self) -> Res<Block> {
        let kw = match self.peek().clone() {
            Tok::Ident(k) => k,
            _ => return self.fail(&["block keyword"]),
        };
        const KEYWORDS: [&str; 10] = ["category", "quiver", "functor", "diagram", "complex", "chainmap", "dgalg", "dgcat", "square", "command"];
        if !KEYWORDS.contains(&kw.as_str()) {
            return self.fail(&KEYWORDS);
        }
        self.bump();
        let name = self.ident()?;
        let body = match kw.as_str() {
            "category" => {
                let mut d = CategoryDef::default();
                self.statements(|p, s| {
                    match s {
                        "objects" => d.objects.extend(p.comma_list(|p| p.object())?),
                        "arrows" => d.arrows.extend(p.comma_list(|p| p.arrow_decl())?),
                        "relations" => d.relations.extend(p.relation_list()?),
                        _ => return Ok(false),
                    }
                    Ok(true)
                })?;
                Body::Category(d)
            }
            "quiver" => {
                let mut d = QuiverDef::default();
                self.statements(|p, s| {
                    match s {
                        "vertices" => d.vertices.extend(p.comma_list(|p| p.object())?),
                        "arrows" => d.arrows.extend(p.comma_list(|p| p.arrow_decl())?),
                        _ => return Ok(false),
                    }
                    Ok(true)
                })?;
                Body::Quiver(d)
            }
            "functor" | "chainmap" => {
                self.expect(":")?;
                let source = self.ident()?;
                self.expect("->")?;
                let target = self.ident()?;
                if kw == "functor" {
                    let mut d = FunctorDef { source, target, objects: vec![], arrows: vec![] };
                    self.statements(|p, s| {
                        match s {
                            "objects" => d.objects.extend(p.comma_list(|p| {
                                let a = p.object()?;
                                p.expect("->")?;
                                Ok((a, p.object()?))
                            })?),
                            "arrows" => d.arrows.extend(p.comma_list(|p| {
                                let a = p.ident()?;
                                p.expect("->")?;
                                Ok((a, p.path()?))
                            })?),
                            _ => return Ok(false),
                        }
                        Ok(true)
                    })?;
                    Body::Functor(d)
                } else {
                    let mut d = ChainMapDef { source, target, components: vec![] };
                    self.statements(|p, s| {
                        if s != "at" {
                            return Ok(false);
                        }
                        let n = p.int("degree")?;
                        p.expect("=")?;
                        d.components.push((n, p.matrix()?));
                        Ok(true)
                    })?;
                    Body::ChainMap(d)
                }
            }
            "diagram" => {
                let mut d = None;
                self.statements(|p, s| {
                    let shape = match s {
                        "discrete" => Shape::Discrete,
                        "parallel" => Shape::Parallel,
                        "span" => Shape::Span,
                        "cospan" => Shape::Cospan,
                        _ => return Ok(false),
                    };
                    let members = if shape == Shape::Discrete && p.is_sym(";") { vec![] } else { p.comma_list(|p| p.ident())? };
                    d = Some(DiagramDef { shape, members });
                    Ok(true)
                })?;
                match d {
                    Some(d) => Body::Diagram(d),
                    None => return Err(ParseError { span: name.span, message: "diagram without a shape".into(), expected: vec!["discrete, parallel, span or cospan".into()] }),
                }
            }
            "complex" => {
                let mut d = ComplexDef { lo: 0, dims: vec![], diffs: vec![] };
                self.statements(|p, s| {
                    match s {
                        "lo" => d.lo = p.int("lowest degree")?,
                        "dims" => d.dims = p.comma_list(|p| p.unsigned("dimension").map(|v| v as usize))?,
                        "d" => {
                            let n = p.int("degree")?;
                            p.expect("=")?;
                            d.diffs.push((n, p.matrix()?));
                        }
                        _ => return Ok(false),
                    }
                    Ok(true)
                })?;
                Body::Complex(d)
            }
            "dgalg" | "dgcat" => {
                let cat = kw == "dgcat";
                let mut d = DgDef::default();
                self.statements(|p, s| {
                    match s {
                        "objects" if cat => d.objects.extend(p.comma_list(|p| p.object())?),
                        "generators" => d.generators.extend(p.comma_list(|p| p.gen_decl(cat))?),
                        "d" => {
                            let g = p.ident()?;
                            p.expect("=")?;
                            d.diffs.push((g, p.poly()?));
                        }
                        "relations" => d.relations.extend(p.comma_list(|p| {
                            let l = p.poly()?;
                            p.expect("=")?;
                            Ok((l, p.poly()?))
                        })?),
                        _ => return Ok(false),
                    }
                    Ok(true)
                })?;
                if cat {
                    Body::DgCat(d)
                } else {
                    Body::DgAlg(d)
                }
            }
            "square" => {
                let mut parts: [Option<Ident>; 4] = Default::default();
                self.statements(|p, s| {
                    let k = match s {
                        "left" => 0,
                        "right" => 1,
                        "top" => 2,
                        "bottom" => 3,
                        _ => return Ok(false),
                    };
                    parts[k] = Some(p.ident()?);
                    Ok(true)
                })?;
                let [Some(left), Some(right), Some(top), Some(bottom)] = parts else {
                    return Err(ParseError { span: name.span, message: "square needs left, right, top and bottom".into(), expected: vec![] });
                };
                Body::Square(SquareDef { left, right, top, bottom })
            }
            _ => {
                let mut argv = Vec::new();
                self.statements(|p, s| {
                    if s != "run" {
                        return Ok(false);
                    }
                    argv = p.comma_list(|p| match p.peek().clone() {
                        Tok::Str(s) => {
                            p.bump();
                            Ok(s)
                        }
                        _ => p.fail(&["string"]),
                    })?;
                    Ok(true)
                })?;
                Body::Command(CommandDef { argv })
            }
        };
        Ok(Block { name, body })
    }
}

pub fn parse(text: &str) -> Result<Document, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let mut blocks: Vec<Block> = Vec::new();
    while *p.peek() != Tok::Eof {
        let b = p.block()?;
        if let Some(prev) = blocks.iter().find(|c| c.name == b.name) {
            return Err(ParseError { span: b.name.span, message: format!("`{}` is already defined at {}", b.name, prev.name.span), expected: vec![] });
        }
        blocks.push(b);
    }
    Ok(Document { blocks })
}

fn bad_integer(what: &str, text: &str) -> String {
    if text.contains('.') {
        format!("malformed {what} `{text}`")
    } else {
        format!("{what} out of range")
    }
}
