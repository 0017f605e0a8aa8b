//! The spec language, from source text to resolved declarations.
//!
//! ```text
//! # comments run to the end of the line
//! algebra H { basis X:1 Y:1 T:2 U:3; bracket [X,Y] = T; }
//! algebra F free 3 step 2;
//! algebra P = H + H;
//! ideal I in H { span T - U; }
//! operator L on R = (i X)^4 + 1/2 (i X)^2;
//! analyze contract I;
//! ```

use nilcon_core::free::free_nilpotent;
use nilcon_core::scalar::{int, to_f64, Scalar};
use nilcon_core::spectral::SymbolOperator;
use nilcon_core::{LieAlgebra, Subspace};
use num_traits::{ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Syntax,
    Semantic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecError {
    pub kind: ErrorKind,
    pub pos: Pos,
    pub message: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ErrorKind::Syntax => "syntax",
            ErrorKind::Semantic => "semantic",
        };
        write!(f, "{}:{}: {kind} error: {}", self.pos.line, self.pos.col, self.message)
    }
}

impl std::error::Error for SpecError {}

type Result<T> = std::result::Result<T, SpecError>;

fn syntax<T>(pos: Pos, message: impl Into<String>) -> Result<T> {
    Err(SpecError { kind: ErrorKind::Syntax, pos, message: message.into() })
}

fn semantic<T>(pos: Pos, message: impl Into<String>) -> Result<T> {
    Err(SpecError { kind: ErrorKind::Semantic, pos, message: message.into() })
}

// ---------------------------------------------------------------- lexer

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Number(Scalar),
    Punct(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Number(n) => write!(f, "number {n}"),
            Tok::Punct(c) => write!(f, "`{c}`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
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
        let start = i;
        if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let mut text: String = chars[start..i].iter().collect();
            let mut scale = int(1);
            if i + 1 < chars.len() && chars[i] == '.' && chars[i + 1].is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    text.push(chars[i]);
                    scale *= int(10);
                    i += 1;
                }
            } else if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                text.push('/');
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    text.push(chars[i]);
                    i += 1;
                }
            }
            let value = match text.parse::<Scalar>() {
                Ok(v) => v / scale,
                Err(_) => return syntax(pos, format!("malformed number `{text}`")),
            };
            out.push((Tok::Number(value), pos));
        } else if "{}[](),;:=+-*^".contains(c) {
            i += 1;
            out.push((Tok::Punct(c), pos));
        } else {
            return syntax(pos, format!("unexpected character `{c}`"));
        }
        col += i - start;
    }
    out.push((Tok::End, Pos { line, col }));
    Ok(out)
}

// ---------------------------------------------------------------- syntax tree

#[derive(Clone, Debug)]
enum Atom {
    Name(String, Pos),
    Bracket(Box<Expr>, Box<Expr>, Pos),
    Group(Box<Expr>),
}

#[derive(Clone, Debug)]
struct Expr {
    terms: Vec<(Scalar, Atom)>,
}

#[derive(Clone, Debug)]
enum AlgebraDef {
    Table { basis: Vec<(String, u32, Pos)>, brackets: Vec<(String, String, Expr, Pos)> },
    Free { generators: usize, step: usize, weights: Option<Vec<u32>> },
    Sum(Vec<(String, Pos)>),
}

#[derive(Clone, Debug)]
enum Statement {
    Algebra { name: String, pos: Pos, def: AlgebraDef },
    Ideal { name: String, pos: Pos, algebra: (String, Pos), spans: Vec<Expr> },
    Operator { name: String, pos: Pos, algebra: (String, Pos), terms: Vec<(Scalar, Vec<(String, Scalar, Pos)>)> },
    Analyze { kind: String, pos: Pos, target: (String, Pos), options: Vec<(String, Vec<Scalar>, Pos)> },
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T> {
        syntax(self.pos(), format!("expected {wanted}, found {}", self.peek()))
    }

    fn is_punct(&self, c: char) -> bool {
        *self.peek() == Tok::Punct(c)
    }

    fn eat_punct(&mut self, c: char) -> bool {
        let hit = self.is_punct(c);
        if hit {
            self.bump();
        }
        hit
    }

    fn punct(&mut self, c: char) -> Result<()> {
        if self.eat_punct(c) {
            Ok(())
        } else {
            self.unexpected(&format!("`{c}`"))
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        if self.is_keyword(kw) {
            self.bump();
            Ok(())
        } else {
            self.unexpected(&format!("`{kw}`"))
        }
    }

    fn ident(&mut self) -> Result<(String, Pos)> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let p = self.pos();
                self.bump();
                Ok((s, p))
            }
            _ => self.unexpected("a name"),
        }
    }

    fn number(&mut self) -> Result<(Scalar, Pos)> {
        match self.peek().clone() {
            Tok::Number(n) => {
                let p = self.pos();
                self.bump();
                Ok((n, p))
            }
            _ => self.unexpected("a number"),
        }
    }

    fn small_integer(&mut self, what: &str) -> Result<u32> {
        let (n, p) = self.number()?;
        match (n.is_integer(), n.to_integer().to_u32()) {
            (true, Some(k)) => Ok(k),
            _ => syntax(p, format!("{what} must be a non-negative integer")),
        }
    }

    fn document(&mut self) -> Result<Vec<Statement>> {
        let mut out = Vec::new();
        while *self.peek() != Tok::End {
            out.push(self.statement()?);
        }
        Ok(out)
    }

    fn statement(&mut self) -> Result<Statement> {
        let (kw, pos) = self.ident().or_else(|_| self.unexpected("`algebra`, `ideal`, `operator` or `analyze`"))?;
        match kw.as_str() {
            "algebra" => self.algebra(pos),
            "ideal" => self.ideal(pos),
            "operator" => self.operator(pos),
            "analyze" => self.analyze(pos),
            _ => syntax(pos, format!("unknown statement `{kw}`")),
        }
    }

    fn algebra(&mut self, pos: Pos) -> Result<Statement> {
        let (name, _) = self.ident()?;
        let def = if self.eat_punct('{') {
            let (mut basis, mut brackets) = (Vec::new(), Vec::new());
            while !self.eat_punct('}') {
                if self.is_keyword("basis") {
                    self.bump();
                    while !self.eat_punct(';') {
                        let (label, p) = self.ident()?;
                        self.punct(':')?;
                        basis.push((label, self.small_integer("a weight")?, p));
                    }
                } else if self.is_keyword("bracket") {
                    self.bump();
                    let p = self.pos();
                    self.punct('[')?;
                    let (a, _) = self.ident()?;
                    self.punct(',')?;
                    let (b, _) = self.ident()?;
                    self.punct(']')?;
                    self.punct('=')?;
                    let rhs = self.expr()?;
                    self.punct(';')?;
                    brackets.push((a, b, rhs, p));
                } else {
                    return self.unexpected("`basis`, `bracket` or `}`");
                }
            }
            AlgebraDef::Table { basis, brackets }
        } else if self.is_keyword("free") {
            self.bump();
            let generators = self.small_integer("the number of generators")? as usize;
            self.keyword("step")?;
            let step = self.small_integer("the step")? as usize;
            let weights = if self.is_keyword("weights") {
                self.bump();
                let mut w = Vec::new();
                while !self.is_punct(';') {
                    w.push(self.small_integer("a weight")?);
                }
                Some(w)
            } else {
                None
            };
            self.punct(';')?;
            AlgebraDef::Free { generators, step, weights }
        } else if self.eat_punct('=') {
            let mut parts = vec![self.ident()?];
            while self.eat_punct('+') {
                parts.push(self.ident()?);
            }
            self.punct(';')?;
            AlgebraDef::Sum(parts)
        } else {
            return self.unexpected("`{`, `free` or `=`");
        };
        Ok(Statement::Algebra { name, pos, def })
    }

    fn ideal(&mut self, pos: Pos) -> Result<Statement> {
        let (name, _) = self.ident()?;
        self.keyword("in")?;
        let algebra = self.ident()?;
        self.punct('{')?;
        let mut spans = Vec::new();
        while !self.eat_punct('}') {
            self.keyword("span")?;
            spans.push(self.expr()?);
            while self.eat_punct(',') {
                spans.push(self.expr()?);
            }
            self.punct(';')?;
        }
        Ok(Statement::Ideal { name, pos, algebra, spans })
    }

    fn operator(&mut self, pos: Pos) -> Result<Statement> {
        let (name, _) = self.ident()?;
        self.keyword("on")?;
        let algebra = self.ident()?;
        self.punct('=')?;
        let mut terms = Vec::new();
        loop {
            let coeff = match self.peek() {
                Tok::Number(_) => {
                    let (c, _) = self.number()?;
                    self.eat_punct('*');
                    c
                }
                _ => int(1),
            };
            let mut factors = Vec::new();
            while self.is_punct('(') {
                self.bump();
                self.keyword("i")?;
                let (var, p) = self.ident()?;
                self.punct(')')?;
                self.punct('^')?;
                let (e, _) = self.number()?;
                factors.push((var, e, p));
                self.eat_punct('*');
            }
            if factors.is_empty() {
                return self.unexpected("a factor `(i <basis>)^<even>`");
            }
            terms.push((coeff, factors));
            if !self.eat_punct('+') {
                break;
            }
        }
        self.punct(';')?;
        Ok(Statement::Operator { name, pos, algebra, terms })
    }

    fn analyze(&mut self, pos: Pos) -> Result<Statement> {
        let (kind, _) = self.ident()?;
        let target = self.ident()?;
        let mut options = Vec::new();
        while !self.eat_punct(';') {
            let (key, p) = self.ident()?;
            let mut args = Vec::new();
            while let Tok::Number(_) = self.peek() {
                args.push(self.number()?.0);
            }
            if args.is_empty() && matches!(self.peek(), Tok::Ident(_)) && key == "regime" {
                let (word, wp) = self.ident()?;
                options.push((format!("regime:{word}"), args, wp));
                continue;
            }
            options.push((key, args, p));
        }
        Ok(Statement::Analyze { kind, pos, target, options })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        let mut sign = if self.eat_punct('-') {
            int(-1)
        } else {
            self.eat_punct('+');
            int(1)
        };
        loop {
            let coeff = match self.peek() {
                Tok::Number(_) => {
                    let (c, _) = self.number()?;
                    self.eat_punct('*');
                    c
                }
                _ => int(1),
            };
            let atom = self.atom()?;
            terms.push((sign * coeff, atom));
            sign = if self.eat_punct('+') {
                int(1)
            } else if self.eat_punct('-') {
                int(-1)
            } else {
                break;
            };
        }
        Ok(Expr { terms })
    }

    fn atom(&mut self) -> Result<Atom> {
        let p = self.pos();
        if self.eat_punct('[') {
            let a = self.expr()?;
            self.punct(',')?;
            let b = self.expr()?;
            self.punct(']')?;
            Ok(Atom::Bracket(Box::new(a), Box::new(b), p))
        } else if self.eat_punct('(') {
            let e = self.expr()?;
            self.punct(')')?;
            Ok(Atom::Group(Box::new(e)))
        } else if let Tok::Ident(s) = self.peek().clone() {
            self.bump();
            Ok(Atom::Name(s, p))
        } else {
            self.unexpected("a basis name, `[` or `(`")
        }
    }
}

// ---------------------------------------------------------------- resolved document

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    Small,
    Large,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Directive {
    Contract { algebra: String, ideal: Option<String> },
    Frames { algebra: String, ideal: Option<String>, order: u32 },
    Growth { algebra: String, ideal: Option<String>, radii: Vec<f64>, regime: Regime, parameter: f64 },
    Spectral { operator: String, alpha: f64 },
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub directive: Directive,
    /// Canonical one-line rendering, used in reports.
    pub text: String,
    pub pos: Pos,
}

#[derive(Clone, Debug)]
pub struct IdealDecl {
    pub algebra: String,
    pub ideal: Subspace,
}

#[derive(Clone, Debug)]
pub struct OperatorDecl {
    pub algebra: String,
    pub symbol: SymbolOperator,
    pub source: String,
}

/// A parsed and fully resolved spec file.
#[derive(Clone, Debug, Default)]
pub struct SpecDocument {
    pub algebras: BTreeMap<String, LieAlgebra>,
    pub ideals: BTreeMap<String, IdealDecl>,
    pub operators: BTreeMap<String, OperatorDecl>,
    pub analyses: Vec<Analysis>,
}

impl SpecDocument {
    pub fn is_empty(&self) -> bool {
        self.algebras.is_empty() && self.ideals.is_empty() && self.operators.is_empty() && self.analyses.is_empty()
    }
}

pub fn parse(src: &str) -> Result<SpecDocument> {
    let toks = lex(src)?;
    let statements = Parser { toks, at: 0 }.document()?;
    let mut doc = SpecDocument::default();
    for st in statements {
        resolve(&mut doc, st)?;
    }
    Ok(doc)
}

fn declared(doc: &SpecDocument, name: &str) -> bool {
    doc.algebras.contains_key(name) || doc.ideals.contains_key(name) || doc.operators.contains_key(name)
}

fn lookup<'a>(doc: &'a SpecDocument, (name, pos): &(String, Pos)) -> Result<&'a LieAlgebra> {
    match doc.algebras.get(name) {
        Some(a) => Ok(a),
        None => semantic(*pos, format!("unknown algebra `{name}`")),
    }
}

fn eval(alg: &LieAlgebra, e: &Expr, allow_brackets: bool) -> Result<Vec<Scalar>> {
    let mut out = vec![Scalar::zero(); alg.dim()];
    for (c, atom) in &e.terms {
        let v = match atom {
            Atom::Name(n, p) => match alg.labels().iter().position(|l| l == n) {
                Some(k) => {
                    let mut u = vec![Scalar::zero(); alg.dim()];
                    u[k] = int(1);
                    u
                }
                None => return semantic(*p, format!("unknown basis element `{n}`")),
            },
            Atom::Bracket(a, b, p) => {
                if !allow_brackets {
                    return semantic(*p, "brackets cannot appear in structure constants");
                }
                let (x, y) = (eval(alg, a, true)?, eval(alg, b, true)?);
                alg.bracket(&x, &y).map_err(|err| SpecError { kind: ErrorKind::Semantic, pos: *p, message: err.to_string() })?
            }
            Atom::Group(inner) => eval(alg, inner, allow_brackets)?,
        };
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    Ok(out)
}

fn resolve(doc: &mut SpecDocument, st: Statement) -> Result<()> {
    match st {
        Statement::Algebra { name, pos, def } => {
            if declared(doc, &name) {
                return semantic(pos, format!("`{name}` is already declared"));
            }
            let alg = build_algebra(doc, &name, pos, def)?;
            doc.algebras.insert(name, alg);
        }
        Statement::Ideal { name, pos, algebra, spans } => {
            if declared(doc, &name) {
                return semantic(pos, format!("`{name}` is already declared"));
            }
            let alg = lookup(doc, &algebra)?;
            let vectors = spans.iter().map(|e| eval(alg, e, true)).collect::<Result<Vec<_>>>()?;
            let ideal = Subspace::span(alg.dim(), &vectors).expect("vectors have the algebra's dimension");
            if !alg.is_ideal(&ideal) {
                return semantic(pos, format!("the span declared for `{name}` is not an ideal of `{}`", algebra.0));
            }
            doc.ideals.insert(name, IdealDecl { algebra: algebra.0, ideal });
        }
        Statement::Operator { name, pos, algebra, terms } => {
            if declared(doc, &name) {
                return semantic(pos, format!("`{name}` is already declared"));
            }
            let alg = lookup(doc, &algebra)?;
            if !alg.is_abelian() {
                return semantic(algebra.1, format!("operator symbols need an abelian algebra, `{}` is not", algebra.0));
            }
            let weights = match alg.degrees() {
                Ok(d) => d.to_vec(),
                Err(_) => return semantic(algebra.1, format!("`{}` carries no gradation", algebra.0)),
            };
            let mut out = Vec::new();
            let mut source = Vec::new();
            for (c, factors) in &terms {
                let mut exps = vec![0u32; alg.dim()];
                let mut text = if *c == int(1) { String::new() } else { format!("{c} ") };
                for (var, e, p) in factors {
                    let k = match alg.labels().iter().position(|l| l == var) {
                        Some(k) => k,
                        None => return semantic(*p, format!("unknown basis element `{var}`")),
                    };
                    let e = match (e.is_integer(), e.to_integer().to_u32()) {
                        (true, Some(e)) if e % 2 == 0 && e > 0 => e,
                        _ => return semantic(*p, format!("exponent {e} of `{var}` must be a positive even integer")),
                    };
                    exps[k] += e;
                    text.push_str(&format!("(i {var})^{e}"));
                }
                out.push((to_f64(c), exps));
                source.push(text);
            }
            let symbol = SymbolOperator::new(weights, out)
                .map_err(|err| SpecError { kind: ErrorKind::Semantic, pos, message: err.to_string() })?;
            doc.operators.insert(name, OperatorDecl { algebra: algebra.0, symbol, source: source.join(" + ") });
        }
        Statement::Analyze { kind, pos, target, options } => {
            let a = build_analysis(doc, &kind, pos, target, options)?;
            doc.analyses.push(a);
        }
    }
    Ok(())
}

fn build_algebra(doc: &SpecDocument, name: &str, pos: Pos, def: AlgebraDef) -> Result<LieAlgebra> {
    let wrap = |err: nilcon_core::Error| SpecError { kind: ErrorKind::Semantic, pos, message: format!("algebra `{name}`: {err}") };
    match def {
        AlgebraDef::Table { basis, brackets } => {
            if basis.is_empty() {
                return semantic(pos, format!("algebra `{name}` has no basis"));
            }
            for (k, (label, _, p)) in basis.iter().enumerate() {
                if basis[..k].iter().any(|(l, _, _)| l == label) {
                    return semantic(*p, format!("basis element `{label}` is listed twice"));
                }
            }
            let labels: Vec<String> = basis.iter().map(|(l, _, _)| l.clone()).collect();
            let degrees: Vec<u32> = basis.iter().map(|(_, w, _)| *w).collect();
            let scratch = LieAlgebra::abelian(vec![1; labels.len()]).with_labels(labels.clone());
            let mut relations: Vec<(usize, usize, Vec<Scalar>)> = Vec::new();
            for (a, b, rhs, p) in &brackets {
                let index = |l: &String| labels.iter().position(|x| x == l);
                let (i, j) = match (index(a), index(b)) {
                    (Some(i), Some(j)) => (i, j),
                    (None, _) => return semantic(*p, format!("unknown basis element `{a}`")),
                    (_, None) => return semantic(*p, format!("unknown basis element `{b}`")),
                };
                let v = eval(&scratch, rhs, false)?;
                if i == j {
                    if v.iter().all(|c| c.is_zero()) {
                        continue;
                    }
                    return semantic(*p, format!("antisymmetry forces [{a},{a}] = 0"));
                }
                let (i, j, v) = if i < j { (i, j, v) } else { (j, i, v.into_iter().map(|c| -c).collect()) };
                if let Some((_, _, old)) = relations.iter().find(|(x, y, _)| *x == i && *y == j) {
                    if *old != v {
                        return semantic(*p, format!("[{a},{b}] is defined twice with different values"));
                    }
                    continue;
                }
                relations.push((i, j, v));
            }
            Ok(LieAlgebra::graded(degrees, &relations).map_err(wrap)?.with_labels(labels))
        }
        AlgebraDef::Free { generators, step, weights } => {
            let weights = weights.unwrap_or_else(|| vec![1; generators]);
            if weights.len() != generators {
                return semantic(pos, format!("algebra `{name}`: {generators} generators but {} weights", weights.len()));
            }
            Ok(free_nilpotent(&weights, step).map_err(wrap)?.algebra)
        }
        AlgebraDef::Sum(parts) => {
            let mut acc = lookup(doc, &parts[0])?.clone();
            for part in &parts[1..] {
                acc = acc.direct_sum(lookup(doc, part)?).map_err(wrap)?;
            }
            Ok(acc)
        }
    }
}

fn build_analysis(
    doc: &SpecDocument,
    kind: &str,
    pos: Pos,
    target: (String, Pos),
    options: Vec<(String, Vec<Scalar>, Pos)>,
) -> Result<Analysis> {
    let (tname, tpos) = &target;
    let family_target = || -> Result<(String, Option<String>)> {
        if let Some(decl) = doc.ideals.get(tname) {
            Ok((decl.algebra.clone(), Some(tname.clone())))
        } else if doc.algebras.contains_key(tname) {
            Ok((tname.clone(), None))
        } else {
            semantic(*tpos, format!("unknown algebra or ideal `{tname}`"))
        }
    };
    let single = |args: &[Scalar], key: &str, p: Pos| -> Result<Scalar> {
        match args {
            [x] => Ok(x.clone()),
            _ => syntax(p, format!("`{key}` takes exactly one number")),
        }
    };
    let mut text = format!("{kind} {tname}");
    let directive = match kind {
        "contract" => {
            if let Some((k, _, p)) = options.first() {
                return syntax(*p, format!("`contract` takes no option `{k}`"));
            }
            let (algebra, ideal) = family_target()?;
            Directive::Contract { algebra, ideal }
        }
        "vf" => {
            let (algebra, ideal) = family_target()?;
            let mut order = 2;
            for (k, args, p) in &options {
                match k.as_str() {
                    "order" => {
                        let o = single(args, k, *p)?;
                        order = match (o.is_integer(), o.to_integer().to_u32()) {
                            (true, Some(o)) if (1..=4).contains(&o) => o,
                            _ => return semantic(*p, "order must be an integer between 1 and 4"),
                        };
                    }
                    _ => return syntax(*p, format!("`vf` takes no option `{k}`")),
                }
            }
            text.push_str(&format!(" order {order}"));
            Directive::Frames { algebra, ideal, order }
        }
        "growth" => {
            let (algebra, ideal) = family_target()?;
            let (mut radii, mut regime, mut parameter) = (Vec::new(), Regime::Large, 1.0);
            for (k, args, p) in &options {
                match k.as_str() {
                    "radii" => {
                        radii = args.iter().map(to_f64).collect();
                        if radii.len() < 2 || radii.iter().any(|r| *r <= 0.0) {
                            return semantic(*p, "`radii` needs at least two positive numbers");
                        }
                    }
                    "at" => {
                        parameter = to_f64(&single(args, k, *p)?);
                        if parameter <= 0.0 {
                            return semantic(*p, "the family parameter must be positive");
                        }
                    }
                    "regime:small" => regime = Regime::Small,
                    "regime:large" => regime = Regime::Large,
                    _ if k.starts_with("regime:") => return semantic(*p, "regime must be `small` or `large`"),
                    _ => return syntax(*p, format!("`growth` takes no option `{k}`")),
                }
            }
            if radii.is_empty() {
                return semantic(pos, "`growth` needs `radii`");
            }
            let rs: Vec<String> = radii.iter().map(|r| r.to_string()).collect();
            let rg = if regime == Regime::Small { "small" } else { "large" };
            text.push_str(&format!(" radii {} regime {rg} at {parameter}", rs.join(" ")));
            Directive::Growth { algebra, ideal, radii, regime, parameter }
        }
        "spectral" => {
            if !doc.operators.contains_key(tname) {
                return semantic(*tpos, format!("unknown operator `{tname}`"));
            }
            let mut alpha = 0.5;
            for (k, args, p) in &options {
                match k.as_str() {
                    "alpha" => {
                        alpha = to_f64(&single(args, k, *p)?);
                        if !(alpha > 0.0) {
                            return semantic(*p, "alpha must be positive");
                        }
                    }
                    _ => return syntax(*p, format!("`spectral` takes no option `{k}`")),
                }
            }
            text.push_str(&format!(" alpha {alpha}"));
            Directive::Spectral { operator: tname.clone(), alpha }
        }
        _ => return syntax(pos, format!("unknown analysis `{kind}`, expected contract, vf, growth or spectral")),
    };
    Ok(Analysis { directive, text, pos })
}
