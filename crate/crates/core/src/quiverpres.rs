//! Quivers with relations.
//!
//! A presentation is parsed from the bundle text format and turned into a
//! [`PresentedCategory`] by computing path spaces modulo the two-sided relation ideal,
//! truncated at a maximal path length `L`. The build only succeeds when every path of
//! length exactly `L` lies in the relation ideal, which certifies that nothing was lost.
//!
//! Expressions use applicative order: `a*b` means "first `b`, then `a`".
//!
//! ```text
//! [field]
//! rational
//! [vertices]
//! X Y
//! [arrows]
//! ε: X -> X
//! α: X -> Y
//! β: Y -> X
//! [relations]
//! α*β
//! ε*ε + β*α
//! [functor shift]
//! identity
//! [options]
//! max_path_length = 5
//! ```

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::catcore::{CategoryError, CategoryTables, FunctorData, Morphism, ObjId, PresentedCategory};
use crate::exactla::{axpy, is_zero_vec, unit, FieldSpec, LinAlgError, LinMap, Scalar, Subspace};

#[derive(Debug, Error)]
pub enum PresentationError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("relation on line {line} mixes paths of different lengths; only homogeneous relations are supported")]
    Inhomogeneous { line: usize },
    #[error("max_path_length = {length} is too small: the path {witness} does not vanish")]
    TruncationInsufficient { length: usize, witness: String },
    #[error("functor `{name}`: {reason}")]
    Functor { name: String, reason: String },
    #[error(transparent)]
    Category(#[from] CategoryError),
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> PresentationError {
    PresentationError::Syntax { line, col, msg: msg.into() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub from: usize,
    pub to: usize,
}

/// Vertices and arrows; resolves names inside expressions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

/// One summand `coeff · path` of an expression. `path` lists arrow indices in the order
/// they are traversed (so the written `a*b` becomes `[b, a]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Scalar,
    pub source: usize,
    pub target: usize,
    pub path: Vec<usize>,
}

/// A K-linear combination of paths with common endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathExpr {
    pub terms: Vec<Term>,
}

impl PathExpr {
    /// Common `(source, target)` of the terms; `None` for the empty sum.
    pub fn endpoints(&self) -> Option<(usize, usize)> {
        self.terms.first().map(|t| (t.source, t.target))
    }
}

/// Error from the expression parser; `col` is 1-based within the parsed text.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("column {col}: {msg}")]
pub struct ExprError {
    pub col: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    Star,
    Plus,
    Minus,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c == '*' {
            out.push((col, Tok::Star));
            i += 1;
        } else if c == '+' {
            out.push((col, Tok::Plus));
            i += 1;
        } else if c == '-' {
            out.push((col, Tok::Minus));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                i += 1;
            }
            out.push((col, Tok::Number(chars[start..i].iter().collect())));
        } else if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            out.push((col, Tok::Ident(chars[start..i].iter().collect())));
        } else {
            return Err(ExprError { col, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

impl Quiver {
    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Written form of a traversal-ordered path, e.g. `[b, a]` prints as `a*b`.
    pub fn path_label(&self, source: usize, path: &[usize]) -> String {
        if path.is_empty() {
            return format!("id_{}", self.vertices[source]);
        }
        path.iter().rev().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
    }

    /// Parses `coeff * path ± ...`. Factors are scalar literals, arrow names and `id_V`.
    pub fn parse_expr(&self, field: FieldSpec, text: &str) -> Result<PathExpr, ExprError> {
        let toks = tokenize(text)?;
        let end_col = text.chars().count() + 1;
        let mut terms = Vec::new();
        let mut pos = 0;
        if toks.is_empty() {
            return Err(ExprError { col: 1, msg: "empty expression".into() });
        }
        while pos < toks.len() {
            let mut coeff = field.one();
            // signs
            let mut saw_sign = false;
            while let Some((_, t @ (Tok::Plus | Tok::Minus))) = toks.get(pos) {
                if *t == Tok::Minus {
                    coeff = -&coeff;
                }
                saw_sign = true;
                pos += 1;
            }
            if !saw_sign && !terms.is_empty() {
                let col = toks.get(pos).map_or(end_col, |t| t.0);
                return Err(ExprError { col, msg: "expected `+` or `-` between terms".into() });
            }
            let term_col = toks.get(pos).map_or(end_col, |t| t.0);
            let mut written = Vec::new();
            let mut identities = Vec::new();
            let mut is_zero = false;
            loop {
                let Some((col, tok)) = toks.get(pos) else {
                    return Err(ExprError { col: end_col, msg: "expected a factor".into() });
                };
                match tok {
                    Tok::Number(n) => {
                        let s = field
                            .parse_scalar(n)
                            .map_err(|e| ExprError { col: *col, msg: e.to_string() })?;
                        if s.is_zero() {
                            is_zero = true;
                        }
                        coeff = &coeff * &s;
                    }
                    Tok::Ident(name) => {
                        if let Some(a) = self.arrow(name) {
                            written.push((*col, a));
                        } else if let Some(v) = name.strip_prefix("id_").and_then(|v| self.vertex(v)) {
                            identities.push((*col, v));
                        } else {
                            return Err(ExprError { col: *col, msg: format!("unknown arrow `{name}`") });
                        }
                    }
                    _ => return Err(ExprError { col: *col, msg: "expected a factor".into() }),
                }
                pos += 1;
                match toks.get(pos) {
                    Some((_, Tok::Star)) => pos += 1,
                    _ => break,
                }
            }
            written.reverse();
            let path: Vec<usize> = written.iter().map(|&(_, a)| a).collect();
            for w in written.windows(2) {
                let (first, second) = (&self.arrows[w[0].1], &self.arrows[w[1].1]);
                if first.to != second.from {
                    return Err(ExprError {
                        col: w[0].0,
                        msg: format!(
                            "`{}*{}` is not composable: {} ends at {} but {} starts at {}",
                            second.name,
                            first.name,
                            first.name,
                            self.vertices[first.to],
                            second.name,
                            self.vertices[second.from]
                        ),
                    });
                }
            }
            let (source, target) = match (path.first(), path.last()) {
                (Some(&f), Some(&l)) => (self.arrows[f].from, self.arrows[l].to),
                _ => match identities.first() {
                    Some(&(_, v)) => (v, v),
                    None if is_zero => {
                        continue;
                    }
                    None => {
                        return Err(ExprError { col: term_col, msg: "a term needs a path".into() });
                    }
                },
            };
            for &(col, v) in &identities {
                if v != source || v != target {
                    return Err(ExprError {
                        col,
                        msg: format!("id_{} does not fit the path endpoints", self.vertices[v]),
                    });
                }
            }
            if let Some(first) = terms.first() {
                let first: &Term = first;
                if (first.source, first.target) != (source, target) {
                    return Err(ExprError {
                        col: term_col,
                        msg: format!(
                            "term runs {} -> {} but the first term runs {} -> {}",
                            self.vertices[source],
                            self.vertices[target],
                            self.vertices[first.source],
                            self.vertices[first.target]
                        ),
                    });
                }
            }
            if !coeff.is_zero() {
                terms.push(Term { coeff, source, target, path });
            }
        }
        Ok(PathExpr { terms })
    }
}

/// How a functor is specified in a bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorSpec {
    pub name: String,
    pub line: usize,
    pub identity: bool,
    /// `(line, vertex, image)`.
    pub vertex_map: Vec<(usize, usize, usize)>,
    pub arrow_map: Vec<(usize, usize, PathExpr)>,
}

/// A parsed bundle.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub field: FieldSpec,
    pub quiver: Quiver,
    /// `(line, relation)`.
    pub relations: Vec<(usize, PathExpr)>,
    pub max_path_length: usize,
    pub functors: Vec<FunctorSpec>,
    /// Remaining `[options]` entries.
    pub options: BTreeMap<String, String>,
    /// Raw `[ideals]` entries `(line, name, definition)`, interpreted by callers.
    pub ideals: Vec<(usize, String, String)>,
}

struct Section {
    name: String,
    arg: Option<String>,
    line: usize,
    lines: Vec<(usize, usize, String)>,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Column (1-based, in chars) at which `part` starts inside `whole`.
fn col_of(whole: &str, part: &str) -> usize {
    let offset = part.as_ptr() as usize - whole.as_ptr() as usize;
    whole[..offset].chars().count() + 1
}

pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let mut sections: Vec<Section> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let body = strip_comment(raw);
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(inner) = trimmed.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| syntax(line_no, col_of(raw, trimmed), "unterminated section header"))?;
            let mut words = inner.split_whitespace();
            let name = words.next().unwrap_or("").to_string();
            let arg = words.next().map(str::to_string);
            if words.next().is_some() {
                return Err(syntax(line_no, 1, "section header has too many words"));
            }
            match (name.as_str(), &arg) {
                ("field" | "vertices" | "arrows" | "relations" | "options" | "ideals", None) => {}
                ("functor", Some(_)) => {}
                _ => return Err(syntax(line_no, 1, format!("unknown section `[{inner}]`"))),
            }
            sections.push(Section { name, arg, line: line_no, lines: Vec::new() });
            continue;
        }
        let section = sections
            .last_mut()
            .ok_or_else(|| syntax(line_no, 1, "content before the first section header"))?;
        section.lines.push((line_no, col_of(raw, trimmed), trimmed.to_string()));
    }

    let find = |name: &'static str| sections.iter().filter(move |s| s.name == name);

    let mut field = FieldSpec::Rational;
    for s in find("field") {
        for (line, col, text) in &s.lines {
            let words: Vec<&str> = text.split_whitespace().collect();
            field = match words.as_slice() {
                ["rational"] => FieldSpec::Rational,
                ["prime", p] => {
                    let p: u64 = p.parse().map_err(|_| syntax(*line, *col, "expected `prime <p>`"))?;
                    FieldSpec::prime(p).map_err(|e| syntax(*line, *col, e.to_string()))?
                }
                _ => return Err(syntax(*line, *col, "expected `rational` or `prime <p>`")),
            };
        }
    }

    let mut quiver = Quiver::default();
    for s in find("vertices") {
        for (line, _, text) in &s.lines {
            for name in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|w| !w.is_empty()) {
                let col = col_of(text, name);
                if !name.chars().next().is_some_and(is_ident_start) || !name.chars().all(is_ident_char) {
                    return Err(syntax(*line, col, format!("invalid vertex name `{name}`")));
                }
                if quiver.vertex(name).is_some() {
                    return Err(syntax(*line, col, format!("duplicate vertex `{name}`")));
                }
                quiver.vertices.push(name.to_string());
            }
        }
    }

    for s in find("arrows") {
        for (line, col, text) in &s.lines {
            let (name, ends) = text
                .split_once(':')
                .ok_or_else(|| syntax(*line, *col, "expected `name: from -> to`"))?;
            let (from, to) = ends
                .split_once("->")
                .ok_or_else(|| syntax(*line, *col, "expected `name: from -> to`"))?;
            let name = name.trim();
            if name.is_empty()
                || !name.chars().next().is_some_and(is_ident_start)
                || !name.chars().all(is_ident_char)
                || name.starts_with("id_")
            {
                return Err(syntax(*line, *col, format!("invalid arrow name `{name}`")));
            }
            if quiver.arrow(name).is_some() {
                return Err(syntax(*line, *col, format!("duplicate arrow `{name}`")));
            }
            let resolve = |v: &str| {
                quiver
                    .vertex(v.trim())
                    .ok_or_else(|| syntax(*line, col + col_of(text, v) - 1, format!("unknown vertex `{}`", v.trim())))
            };
            let (from, to) = (resolve(from)?, resolve(to)?);
            quiver.arrows.push(Arrow { name: name.to_string(), from, to });
        }
    }

    let lift = |line: usize, col: usize, e: ExprError| syntax(line, col + e.col - 1, e.msg);

    let mut relations = Vec::new();
    for s in find("relations") {
        for (line, col, text) in &s.lines {
            let expr_text = text.strip_suffix("= 0").map(str::trim_end).unwrap_or(text);
            let expr = quiver.parse_expr(field, expr_text).map_err(|e| lift(*line, *col, e))?;
            if expr.terms.is_empty() {
                return Err(syntax(*line, *col, "relation is identically zero"));
            }
            let len = expr.terms[0].path.len();
            if expr.terms.iter().any(|t| t.path.len() != len) {
                return Err(PresentationError::Inhomogeneous { line: *line });
            }
            relations.push((*line, expr));
        }
    }

    let mut functors = Vec::new();
    for s in find("functor") {
        let name = s.arg.clone().expect("functor sections carry a name");
        let mut spec = FunctorSpec {
            name: name.clone(),
            line: s.line,
            identity: false,
            vertex_map: Vec::new(),
            arrow_map: Vec::new(),
        };
        for (line, col, text) in &s.lines {
            if text == "identity" {
                spec.identity = true;
                continue;
            }
            let (lhs, rhs) = text
                .split_once("->")
                .ok_or_else(|| syntax(*line, *col, "expected `X -> Y`, `a -> expr` or `identity`"))?;
            let lhs_name = lhs.trim();
            let rhs_col = col + col_of(text, rhs) - 1;
            if let Some(v) = quiver.vertex(lhs_name) {
                let w = quiver
                    .vertex(rhs.trim())
                    .ok_or_else(|| syntax(*line, rhs_col, format!("unknown vertex `{}`", rhs.trim())))?;
                spec.vertex_map.push((*line, v, w));
            } else if let Some(a) = quiver.arrow(lhs_name) {
                let expr = quiver.parse_expr(field, rhs).map_err(|e| lift(*line, rhs_col, e))?;
                spec.arrow_map.push((*line, a, expr));
            } else {
                return Err(syntax(*line, *col, format!("`{lhs_name}` is neither a vertex nor an arrow")));
            }
        }
        functors.push(spec);
    }

    let mut options = BTreeMap::new();
    let mut max_path_length = None;
    for s in find("options") {
        for (line, col, text) in &s.lines {
            let (k, v) = text
                .split_once('=')
                .ok_or_else(|| syntax(*line, *col, "expected `key = value`"))?;
            let (k, v) = (k.trim(), v.trim());
            if k == "max_path_length" {
                let l: usize = v
                    .parse()
                    .map_err(|_| syntax(*line, col + col_of(text, v) - 1, "expected a positive integer"))?;
                if l == 0 {
                    return Err(syntax(*line, col + col_of(text, v) - 1, "max_path_length must be at least 1"));
                }
                max_path_length = Some(l);
            } else {
                options.insert(k.to_string(), v.to_string());
            }
        }
    }

    let mut ideals = Vec::new();
    for s in find("ideals") {
        for (line, col, text) in &s.lines {
            let (k, v) = text
                .split_once('=')
                .ok_or_else(|| syntax(*line, *col, "expected `name = definition`"))?;
            ideals.push((*line, k.trim().to_string(), v.trim().to_string()));
        }
    }

    if quiver.vertices.is_empty() {
        return Err(syntax(1, 1, "no vertices declared"));
    }
    let max_path_length = max_path_length.unwrap_or_else(|| {
        // without relations any path survives, so only the trivial bound is sound
        if quiver.arrows.is_empty() {
            1
        } else {
            8
        }
    });

    Ok(Presentation { field, quiver, relations, max_path_length, functors, options, ideals })
}

/// A category built from a presentation, together with the data to evaluate expressions.
#[derive(Clone, Debug)]
pub struct BuiltCategory {
    pub category: PresentedCategory,
    pub quiver: Quiver,
    /// Coordinates of each arrow in its Hom space.
    pub arrow_coords: Vec<Vec<Scalar>>,
}

impl BuiltCategory {
    /// Coordinates of an expression in `Hom(source, target)`.
    pub fn evaluate(&self, expr: &PathExpr) -> Option<(ObjId, ObjId, Vec<Scalar>)> {
        let (s, t) = expr.endpoints()?;
        let cat = &self.category;
        let mut total = vec![cat.field().zero(); cat.hom_dim_ind(ObjId(s), ObjId(t))];
        for term in &expr.terms {
            let mut acc = cat.identity_coords(ObjId(term.source));
            let mut here = term.source;
            for &a in &term.path {
                let arrow = &self.quiver.arrows[a];
                acc = cat.compose_coords(ObjId(term.source), ObjId(here), ObjId(arrow.to), &self.arrow_coords[a], &acc);
                here = arrow.to;
            }
            axpy(&mut total, &term.coeff, &acc);
        }
        Some((ObjId(s), ObjId(t), total))
    }

    /// Parses and evaluates an expression as a morphism between indecomposables.
    pub fn morphism(&self, text: &str) -> Result<Morphism, ExprError> {
        let expr = self.quiver.parse_expr(self.category.field(), text)?;
        let (s, t, coords) = self
            .evaluate(&expr)
            .ok_or_else(|| ExprError { col: 1, msg: "cannot infer the endpoints of a zero expression".into() })?;
        Ok(self.category.basic(s, t, coords).expect("evaluated coordinates fit"))
    }
}

type Path = Vec<usize>;

/// Paths grouped by `(source, target, length)`, in canonical order.
fn enumerate_paths(q: &Quiver, max_len: usize) -> HashMap<(usize, usize, usize), Vec<Path>> {
    let mut out: HashMap<(usize, usize, usize), Vec<Path>> = HashMap::new();
    let mut frontier: Vec<(usize, usize, Path)> = (0..q.vertices.len()).map(|v| (v, v, Vec::new())).collect();
    for len in 0..=max_len {
        for (s, t, p) in &frontier {
            out.entry((*s, *t, len)).or_default().push(p.clone());
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for (s, t, p) in &frontier {
            for (ai, a) in q.arrows.iter().enumerate() {
                if a.from == *t {
                    let mut np = p.clone();
                    np.push(ai);
                    next.push((*s, a.to, np));
                }
            }
        }
        frontier = next;
    }
    // lexicographic in written order, arrows ranked by declaration
    for paths in out.values_mut() {
        paths.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    }
    out
}

/// Normal forms for one `(source, target, length)` block.
struct Block {
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    residues: Vec<usize>,
    /// Normal form of each path, as coordinates over `residues`.
    normal: Vec<Vec<Scalar>>,
}

pub fn build_category(p: &Presentation) -> Result<BuiltCategory, PresentationError> {
    let q = &p.quiver;
    let field = p.field;
    let nv = q.vertices.len();
    let max_len = p.max_path_length;
    let paths = enumerate_paths(q, max_len);

    // saturate: u * r * w for every relation r and paths u, w, total length ≤ L
    let mut spans: HashMap<(usize, usize, usize), Vec<Vec<Scalar>>> = HashMap::new();
    let empty: Vec<Path> = Vec::new();
    let block_paths = |s: usize, t: usize, len: usize| paths.get(&(s, t, len)).unwrap_or(&empty);
    let indices: HashMap<(usize, usize, usize), HashMap<&Path, usize>> = paths
        .iter()
        .map(|(k, v)| (*k, v.iter().enumerate().map(|(i, p)| (p, i)).collect()))
        .collect();
    for (_, rel) in &p.relations {
        let (rs, rt) = rel.endpoints().expect("relations are nonempty");
        let rlen = rel.terms[0].path.len();
        if rlen > max_len {
            continue;
        }
        for pre_len in 0..=(max_len - rlen) {
            for post_len in 0..=(max_len - rlen - pre_len) {
                let total = pre_len + rlen + post_len;
                for s in 0..nv {
                    for pre in block_paths(s, rs, pre_len) {
                        for t in 0..nv {
                            let posts = block_paths(rt, t, post_len);
                            if posts.is_empty() {
                                continue;
                            }
                            let key = (s, t, total);
                            let dim = block_paths(s, t, total).len();
                            for post in posts {
                                let mut v = vec![field.zero(); dim];
                                for term in &rel.terms {
                                    let mut full = pre.clone();
                                    full.extend_from_slice(&term.path);
                                    full.extend_from_slice(post);
                                    let i = indices[&key][&full];
                                    v[i] = &v[i] + &term.coeff;
                                }
                                if !is_zero_vec(&v) {
                                    spans.entry(key).or_default().push(v);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    let mut blocks: HashMap<(usize, usize, usize), Block> = HashMap::new();
    for (&key, ps) in &paths {
        let (s, _, len) = key;
        let dim = ps.len();
        let rel = Subspace::canonicalize(field, spans.remove(&key).unwrap_or_default(), dim)
            .expect("relation vectors have block length");
        if len == max_len {
            if rel.dim() < dim {
                let witness = (0..dim)
                    .find(|&i| !rel.contains(&unit(field, dim, i)).expect("dims agree"))
                    .expect("some path survives");
                return Err(PresentationError::TruncationInsufficient {
                    length: max_len,
                    witness: q.path_label(s, &ps[witness]),
                });
            }
            continue;
        }
        let mut span = rel.clone();
        let mut residues = Vec::new();
        for i in 0..dim {
            let e = unit(field, dim, i);
            if !span.contains(&e).expect("dims agree") {
                span = span.extend([e]).expect("dims agree");
                residues.push(i);
            }
        }
        // columns: relation basis, then residue paths; solve each path in that basis
        let mut cols: Vec<Vec<Scalar>> = rel.basis().to_vec();
        cols.extend(residues.iter().map(|&i| unit(field, dim, i)));
        let change = LinMap::from_columns(field, dim, &cols).expect("dims agree");
        let normal = (0..dim)
            .map(|i| {
                let sol = change.solve(&unit(field, dim, i)).expect("dims agree").expect("basis spans");
                sol[rel.dim()..].to_vec()
            })
            .collect();
        let index = ps.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        blocks.insert(key, Block { paths: ps.clone(), index, residues, normal });
    }

    // Hom bases: residue paths by length; offsets of each length block
    let mut hom_basis = vec![Vec::new(); nv * nv];
    let mut offsets: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for s in 0..nv {
        for t in 0..nv {
            let labels = &mut hom_basis[s * nv + t];
            for len in 0..max_len {
                if let Some(b) = blocks.get(&(s, t, len)) {
                    offsets.insert((s, t, len), labels.len());
                    labels.extend(b.residues.iter().map(|&i| q.path_label(s, &b.paths[i])));
                }
            }
        }
    }
    let dims: Vec<usize> = hom_basis.iter().map(Vec::len).collect();
    let dim = |s: usize, t: usize| dims[s * nv + t];

    // residue path (by hom index) for each pair
    let mut residue_paths: Vec<Vec<Path>> = vec![Vec::new(); nv * nv];
    for s in 0..nv {
        for t in 0..nv {
            for len in 0..max_len {
                if let Some(b) = blocks.get(&(s, t, len)) {
                    residue_paths[s * nv + t].extend(b.residues.iter().map(|&i| b.paths[i].clone()));
                }
            }
        }
    }

    let normal_form = |s: usize, t: usize, path: &Path| -> Vec<Scalar> {
        let mut out = vec![field.zero(); dim(s, t)];
        let len = path.len();
        if len >= max_len {
            return out;
        }
        let block = &blocks[&(s, t, len)];
        let off = offsets[&(s, t, len)];
        for (k, c) in block.normal[block.index[path]].iter().enumerate() {
            out[off + k] = c.clone();
        }
        out
    };

    let mut comp = Vec::with_capacity(nv * nv * nv);
    for x in 0..nv {
        for y in 0..nv {
            for z in 0..nv {
                let mut cell = Vec::with_capacity(dim(x, y) * dim(y, z));
                for c in &residue_paths[y * nv + z] {
                    for b in &residue_paths[x * nv + y] {
                        let mut full = b.clone();
                        full.extend_from_slice(c);
                        cell.push(normal_form(x, z, &full));
                    }
                }
                comp.push(cell);
            }
        }
    }

    let identity_index = (0..nv).map(|_| 0).collect();
    let tables = CategoryTables {
        field,
        objects: q.vertices.clone(),
        hom_basis,
        identity_index,
        comp,
    };
    let mut category = PresentedCategory::new(tables)?;
    let arrow_coords = q.arrows.iter().map(|a| normal_form(a.from, a.to, &vec![q.arrow(&a.name).unwrap()])).collect();
    let mut built = BuiltCategory { category: category.clone(), quiver: q.clone(), arrow_coords };

    for (line, rel) in &p.relations {
        let (_, _, v) = built.evaluate(rel).expect("nonempty relation");
        debug_assert!(is_zero_vec(&v), "relation on line {line} survives");
    }

    for spec in &p.functors {
        let f = functor_from_spec(&built, &residue_paths, spec, &p.relations)?;
        category = category.with_functor(f)?;
    }
    built.category = category;
    Ok(built)
}

fn functor_from_spec(
    built: &BuiltCategory,
    residue_paths: &[Vec<Path>],
    spec: &FunctorSpec,
    relations: &[(usize, PathExpr)],
) -> Result<FunctorData, PresentationError> {
    let cat = &built.category;
    let q = &built.quiver;
    let nv = q.vertices.len();
    let err = |reason: String| PresentationError::Functor { name: spec.name.clone(), reason };
    if spec.identity {
        if !spec.vertex_map.is_empty() || !spec.arrow_map.is_empty() {
            return Err(err("`identity` cannot be combined with explicit images".into()));
        }
        return Ok(FunctorData::identity(cat, &spec.name));
    }
    let mut object_map = vec![None; nv];
    for &(line, v, w) in &spec.vertex_map {
        if object_map[v].replace(w).is_some() {
            return Err(err(format!("line {line}: vertex {} mapped twice", q.vertices[v])));
        }
    }
    let object_map: Vec<usize> = object_map
        .iter()
        .enumerate()
        .map(|(v, w)| w.ok_or_else(|| err(format!("no image for vertex {}", q.vertices[v]))))
        .collect::<Result<_, _>>()?;
    let mut arrow_images: Vec<Option<Vec<Scalar>>> = vec![None; q.arrows.len()];
    for (line, a, expr) in &spec.arrow_map {
        let arrow = &q.arrows[*a];
        let (fs, ft) = (object_map[arrow.from], object_map[arrow.to]);
        let coords = match expr.endpoints() {
            None => vec![cat.field().zero(); cat.hom_dim_ind(ObjId(fs), ObjId(ft))],
            Some((s, t)) if (s, t) == (fs, ft) => built.evaluate(expr).expect("nonempty").2,
            Some((s, t)) => {
                return Err(err(format!(
                    "line {line}: image of {} runs {} -> {}, expected {} -> {}",
                    arrow.name, q.vertices[s], q.vertices[t], q.vertices[fs], q.vertices[ft]
                )))
            }
        };
        if arrow_images[*a].replace(coords).is_some() {
            return Err(err(format!("line {line}: arrow {} mapped twice", arrow.name)));
        }
    }
    let arrow_images: Vec<Vec<Scalar>> = arrow_images
        .into_iter()
        .enumerate()
        .map(|(a, img)| img.ok_or_else(|| err(format!("no image for arrow {}", q.arrows[a].name))))
        .collect::<Result<_, _>>()?;

    let image_of_path = |s: usize, path: &[usize]| -> Vec<Scalar> {
        let fs = ObjId(object_map[s]);
        let mut acc = cat.identity_coords(fs);
        let mut here = fs;
        for &a in path {
            let to = ObjId(object_map[q.arrows[a].to]);
            acc = cat.compose_coords(fs, here, to, &arrow_images[a], &acc);
            here = to;
        }
        acc
    };

    for (line, rel) in relations {
        let (s, t) = rel.endpoints().expect("nonempty relation");
        let mut total = vec![cat.field().zero(); cat.hom_dim_ind(ObjId(object_map[s]), ObjId(object_map[t]))];
        for term in &rel.terms {
            axpy(&mut total, &term.coeff, &image_of_path(s, &term.path));
        }
        if !is_zero_vec(&total) {
            return Err(err(format!("does not preserve the relation on line {line}")));
        }
    }

    let mut hom_maps = Vec::with_capacity(nv * nv);
    for s in 0..nv {
        for t in 0..nv {
            let cols: Vec<Vec<Scalar>> = residue_paths[s * nv + t].iter().map(|p| image_of_path(s, p)).collect();
            let rows = cat.hom_dim_ind(ObjId(object_map[s]), ObjId(object_map[t]));
            hom_maps.push(LinMap::from_columns(cat.field(), rows, &cols).expect("dims agree"));
        }
    }
    Ok(FunctorData {
        name: spec.name.clone(),
        object_map: object_map.into_iter().map(ObjId).collect(),
        hom_maps,
    })
}

/// Parses and builds in one step.
pub fn load_bundle_category(text: &str) -> Result<(Presentation, BuiltCategory), PresentationError> {
    let p = parse_presentation(text)?;
    let built = build_category(&p)?;
    Ok((p, built))
}

impl From<LinAlgError> for PresentationError {
    fn from(e: LinAlgError) -> Self {
        PresentationError::Category(CategoryError::LinAlg(e))
    }
}
