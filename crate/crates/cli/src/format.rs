//! Line-oriented text formats for instances and drawings.
//!
//! An instance document is a sequence of statements, one per line. Blank
//! lines and everything after `#` are ignored. Tokens are separated by
//! whitespace; a vertex id is any token without whitespace or `#`.
//!
//! ```text
//! graph
//! levels 3
//! vertex u 1
//! vertex a 2
//! vertex b 2
//! vertex w 3
//! order 2 a b
//! edge u a
//! edge u b
//! edge a w
//! edge b w
//! ```
//!
//! A `partial` section after the graph fixes coordinates (`fix id x`) and
//! marks fixed edges (`hedge u v`). A second `graph` section followed by
//! `shared id…` makes a simultaneous instance. Levels without an `order`
//! line keep the order in which their vertices were declared.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};

use levdraw_core::{
    validate, Drawing, LevelGraph, PartialInstance, SimultaneousInstance, VertexId, ViolationCode,
};

#[derive(Debug, Clone)]
pub enum Instance {
    Graph(LevelGraph),
    Partial(PartialInstance),
    Simultaneous(SimultaneousInstance),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Graph(_) => "graph",
            Instance::Partial(_) => "partial",
            Instance::Simultaneous(_) => "simultaneous",
        }
    }
}

/// A parse or semantic error pinned to a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub code: Option<ViolationCode>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.line, self.column)?;
        if let Some(code) = self.code {
            write!(f, "{code}: ")?;
        }
        f.write_str(&self.message)
    }
}

impl std::error::Error for Diagnostic {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct Loc {
    line: usize,
    column: usize,
}

impl Loc {
    fn error(self, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            line: self.line,
            column: self.column,
            code: None,
            message: message.into(),
        }
    }

    fn violation(self, code: ViolationCode, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            code: Some(code),
            ..self.error(message)
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    loc: Loc,
}

impl Token<'_> {
    fn int<T: std::str::FromStr>(&self, what: &str) -> Result<T, Diagnostic> {
        self.text.parse().map_err(|_| {
            self.loc
                .error(format!("expected {what}, found `{}`", self.text))
        })
    }
}

/// Splits the document into statements, dropping comments and blank lines.
fn statements(text: &str) -> Vec<Vec<Token<'_>>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (j, c) in line
            .char_indices()
            .chain(std::iter::once((line.len(), ' ')))
        {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(j),
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &line[s..j],
                        loc: Loc {
                            line: i + 1,
                            column: line[..s].chars().count() + 1,
                        },
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            out.push(tokens);
        }
    }
    out
}

fn arity(stmt: &[Token], n: usize) -> Result<(), Diagnostic> {
    if stmt.len() == n + 1 {
        return Ok(());
    }
    let at = stmt.get(n + 1).map_or(stmt[0].loc, |t| t.loc);
    Err(at.error(format!(
        "`{}` takes {n} argument{}, found {}",
        stmt[0].text,
        if n == 1 { "" } else { "s" },
        stmt.len() - 1
    )))
}

struct GraphSection {
    header: Loc,
    levels: Option<u32>,
    builder: Option<levdraw_core::LevelGraphBuilder>,
    ids: HashMap<String, VertexId>,
    vertex_loc: HashMap<String, Loc>,
    orders: BTreeMap<u32, Loc>,
    edge_loc: HashMap<String, Loc>,
}

impl GraphSection {
    fn new(header: Loc) -> Self {
        GraphSection {
            header,
            levels: None,
            builder: None,
            ids: HashMap::new(),
            vertex_loc: HashMap::new(),
            orders: BTreeMap::new(),
            edge_loc: HashMap::new(),
        }
    }

    fn lookup(&self, t: &Token) -> Result<VertexId, Diagnostic> {
        self.ids.get(t.text).copied().ok_or_else(|| {
            t.loc.violation(
                ViolationCode::UnknownVertex,
                format!("unknown vertex `{}`", t.text),
            )
        })
    }

    fn builder(&mut self, at: Loc) -> Result<&mut levdraw_core::LevelGraphBuilder, Diagnostic> {
        self.builder
            .as_mut()
            .ok_or_else(|| at.error("`levels` must come first in a graph section"))
    }

    fn statement(&mut self, stmt: &[Token]) -> Result<(), Diagnostic> {
        let key = stmt[0];
        match key.text {
            "levels" => {
                arity(stmt, 1)?;
                if self.levels.is_some() {
                    return Err(key.loc.error("`levels` given twice"));
                }
                let k: u32 = stmt[1].int("a level count")?;
                self.levels = Some(k);
                self.builder = Some(LevelGraph::builder(k));
            }
            "vertex" => {
                arity(stmt, 2)?;
                let level: u32 = stmt[2].int("a level number")?;
                let name = stmt[1].text;
                if let Some(first) = self.vertex_loc.get(name) {
                    return Err(stmt[1].loc.violation(
                        ViolationCode::DuplicateVertex,
                        format!("vertex `{name}` already declared on line {}", first.line),
                    ));
                }
                let id = self.builder(key.loc)?.vertex(name, level);
                self.ids.insert(name.to_string(), id);
                self.vertex_loc.insert(name.to_string(), stmt[1].loc);
            }
            "order" => {
                if stmt.len() < 2 {
                    return Err(key.loc.error("`order` needs a level"));
                }
                let level: u32 = stmt[1].int("a level number")?;
                if level == 0 {
                    return Err(stmt[1]
                        .loc
                        .violation(ViolationCode::LevelOutOfRange, "levels are numbered from 1"));
                }
                if let Some(first) = self.orders.get(&level) {
                    return Err(stmt[1].loc.error(format!(
                        "order of level {level} already given on line {}",
                        first.line
                    )));
                }
                let seq = stmt[2..]
                    .iter()
                    .map(|t| self.lookup(t))
                    .collect::<Result<Vec<_>, _>>()?;
                self.builder(key.loc)?.order(level, seq);
                self.orders.insert(level, stmt[1].loc);
            }
            "edge" => {
                arity(stmt, 2)?;
                let u = self.lookup(&stmt[1])?;
                let v = self.lookup(&stmt[2])?;
                self.builder(key.loc)?.edge(u, v);
                self.edge_loc
                    .entry(format!("{}->{}", stmt[1].text, stmt[2].text))
                    .or_insert(stmt[1].loc);
            }
            other => return Err(key.loc.error(format!("unknown statement `{other}`"))),
        }
        Ok(())
    }

    fn finish(self) -> Result<LevelGraph, Diagnostic> {
        let builder = self
            .builder
            .ok_or_else(|| self.header.error("graph section has no `levels` statement"))?;
        let g = builder.build();
        let report = validate(&g, false);
        if let Some(v) = report.violations.first() {
            let loc = v
                .items
                .iter()
                .find_map(|item| {
                    self.vertex_loc
                        .get(item)
                        .or_else(|| self.edge_loc.get(item))
                })
                .copied()
                .or_else(|| match v.code {
                    ViolationCode::OrderMismatch => self.orders.values().next().copied(),
                    _ => None,
                })
                .unwrap_or(self.header);
            let more = report.violations.len() - 1;
            let mut message = v.message.clone();
            if more > 0 {
                let _ = write!(message, " (and {more} more)");
            }
            return Err(loc.violation(v.code, message));
        }
        Ok(g)
    }
}

enum Section {
    Graph,
    Partial,
    Shared,
}

/// Parses an instance document into a graph, a partial instance, or a
/// simultaneous instance.
pub fn parse_instance(text: &str) -> Result<Instance, Diagnostic> {
    let mut graphs: Vec<GraphSection> = Vec::new();
    let mut fixes: Vec<(Token, i64)> = Vec::new();
    let mut hedges: Vec<(Token, Token)> = Vec::new();
    let mut partial_at: Option<Loc> = None;
    let mut shared: Option<(Loc, Vec<Token>)> = None;
    let mut section = None;

    for stmt in statements(text) {
        let key = stmt[0];
        match key.text {
            "graph" => {
                arity(&stmt, 0)?;
                if partial_at.is_some() {
                    return Err(key.loc.error("a partial instance has exactly one graph"));
                }
                if graphs.len() == 2 {
                    return Err(key.loc.error("at most two graph sections are allowed"));
                }
                graphs.push(GraphSection::new(key.loc));
                section = Some(Section::Graph);
            }
            "partial" => {
                arity(&stmt, 0)?;
                if graphs.len() != 1 || partial_at.is_some() {
                    return Err(key
                        .loc
                        .error("`partial` must follow the only graph section, once"));
                }
                partial_at = Some(key.loc);
                section = Some(Section::Partial);
            }
            "shared" => {
                if graphs.len() != 2 || shared.is_some() {
                    return Err(key
                        .loc
                        .error("`shared` must follow the second graph section, once"));
                }
                shared = Some((key.loc, stmt[1..].to_vec()));
                section = Some(Section::Shared);
            }
            "fix" | "hedge" => {
                if !matches!(section, Some(Section::Partial)) {
                    return Err(key
                        .loc
                        .error(format!("`{}` belongs in a partial section", key.text)));
                }
                arity(&stmt, 2)?;
                if key.text == "fix" {
                    fixes.push((stmt[1], stmt[2].int("an integer coordinate")?));
                } else {
                    hedges.push((stmt[1], stmt[2]));
                }
            }
            _ => match section {
                Some(Section::Graph) => graphs
                    .last_mut()
                    .expect("open graph section")
                    .statement(&stmt)?,
                None => return Err(key.loc.error("a document starts with `graph`")),
                Some(_) => {
                    return Err(key
                        .loc
                        .error(format!("`{}` belongs in a graph section", key.text)))
                }
            },
        }
    }

    if graphs.is_empty() {
        return Err(Loc { line: 1, column: 1 }.error("empty document: expected `graph`"));
    }
    let second = if graphs.len() == 2 {
        graphs.pop()
    } else {
        None
    };
    let first = graphs.pop().expect("one graph section");

    if let Some(second) = second {
        let lookups: Vec<(Token, Loc)> = match &shared {
            Some((at, names)) => names.iter().map(|t| (*t, *at)).collect(),
            None => Vec::new(),
        };
        for (t, _) in &lookups {
            first.lookup(t)?;
            second.lookup(t)?;
        }
        let names: Vec<&str> = lookups.iter().map(|(t, _)| t.text).collect();
        let at = shared.as_ref().map_or(second.header, |s| s.0);
        let (g1, g2) = (first.finish()?, second.finish()?);
        let inst =
            SimultaneousInstance::by_names(g1, g2, &names).map_err(|e| at.error(e.to_string()))?;
        inst.check().map_err(|e| at.error(e.to_string()))?;
        return Ok(Instance::Simultaneous(inst));
    }

    let Some(_) = partial_at else {
        return first.finish().map(Instance::Graph);
    };
    let ids: Vec<(Token, VertexId, i64)> = fixes
        .iter()
        .map(|(t, x)| first.lookup(t).map(|v| (*t, v, *x)))
        .collect::<Result<_, _>>()?;
    let hedge_ids: Vec<(Token, VertexId, VertexId)> = hedges
        .iter()
        .map(|(a, b)| Ok((*a, first.lookup(a)?, first.lookup(b)?)))
        .collect::<Result<_, Diagnostic>>()?;
    let g = first.finish()?;
    let mut inst = PartialInstance::new(g);
    for (t, v, x) in ids {
        if inst.fixed.contains_key(&v) {
            return Err(t.loc.error(format!("vertex `{}` is fixed twice", t.text)));
        }
        inst.fix(v, x);
    }
    for (t, u, v) in hedge_ids {
        if !inst.graph.edges().contains(&(u, v)) {
            return Err(t.loc.error(format!(
                "`{}` is not an edge of the graph",
                inst.graph.edge_label((u, v))
            )));
        }
        if !inst.fixed.contains_key(&u) || !inst.fixed.contains_key(&v) {
            return Err(t.loc.error(format!(
                "both endpoints of fixed edge `{}` must be fixed",
                inst.graph.edge_label((u, v))
            )));
        }
        if inst.h_edges.contains(&(u, v)) {
            return Err(t.loc.error(format!(
                "fixed edge `{}` is listed twice",
                inst.graph.edge_label((u, v))
            )));
        }
        inst.h_edge(u, v);
    }
    Ok(Instance::Partial(inst))
}

fn sorted_names(g: &LevelGraph, vs: impl Iterator<Item = VertexId>) -> Vec<&str> {
    let mut names: Vec<&str> = vs.map(|v| g.name(v)).collect();
    names.sort_unstable();
    names
}

fn sorted_edges<'a>(g: &'a LevelGraph, es: &[(VertexId, VertexId)]) -> Vec<(&'a str, &'a str)> {
    let mut out: Vec<(&str, &str)> = es.iter().map(|&(u, v)| (g.name(u), g.name(v))).collect();
    out.sort_unstable();
    out
}

/// Canonical text of a graph: vertices and edges sorted by name, one
/// `order` line per level.
pub fn emit_graph(g: &LevelGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph\nlevels {}", g.levels());
    let mut vs: Vec<VertexId> = g.vertices().collect();
    vs.sort_by(|&a, &b| g.name(a).cmp(g.name(b)));
    for v in vs {
        let _ = writeln!(out, "vertex {} {}", g.name(v), g.level(v));
    }
    for l in 1..=g.levels() {
        out.push_str(&format!("order {l}"));
        for &v in g.order(l) {
            out.push(' ');
            out.push_str(g.name(v));
        }
        out.push('\n');
    }
    for (u, v) in sorted_edges(g, g.edges()) {
        let _ = writeln!(out, "edge {u} {v}");
    }
    out
}

pub fn emit_instance(inst: &Instance) -> String {
    match inst {
        Instance::Graph(g) => emit_graph(g),
        Instance::Partial(p) => {
            let g = &p.graph;
            let mut out = emit_graph(g);
            out.push_str("partial\n");
            let mut fixed: Vec<(&str, i64)> =
                p.fixed.iter().map(|(&v, &x)| (g.name(v), x)).collect();
            fixed.sort_unstable();
            for (name, x) in fixed {
                let _ = writeln!(out, "fix {name} {x}");
            }
            for (u, v) in sorted_edges(g, &p.h_edges) {
                let _ = writeln!(out, "hedge {u} {v}");
            }
            out
        }
        Instance::Simultaneous(s) => {
            let mut out = emit_graph(&s.first);
            out.push_str(&emit_graph(&s.second));
            if !s.shared.is_empty() {
                out.push_str("shared");
                for name in sorted_names(&s.first, s.shared.iter().map(|p| p.0)) {
                    out.push(' ');
                    out.push_str(name);
                }
                out.push('\n');
            }
            out
        }
    }
}

/// A `drawing` header, then `id level x` per vertex sorted by level and x.
pub fn emit_drawing(g: &LevelGraph, d: &Drawing) -> String {
    emit_labeled_drawing(g, d, None)
}

pub fn emit_labeled_drawing(g: &LevelGraph, d: &Drawing, label: Option<&str>) -> String {
    let mut out = String::from("drawing");
    if let Some(label) = label {
        out.push(' ');
        out.push_str(label);
    }
    out.push('\n');
    let mut rows: Vec<(u32, i64, &str)> = g
        .vertices()
        .map(|v| (g.level(v), d.x(v), g.name(v)))
        .collect();
    rows.sort_unstable();
    for (level, x, name) in rows {
        let _ = writeln!(out, "{name} {level} {x}");
    }
    out
}

/// The `drawing` blocks of a coordinate document, with their labels.
pub fn drawing_blocks(text: &str) -> Result<Vec<(Option<String>, String)>, Diagnostic> {
    let mut blocks: Vec<(Option<String>, String)> = Vec::new();
    for stmt in statements(text) {
        if stmt[0].text == "drawing" {
            let label = (stmt.len() > 1).then(|| {
                stmt[1..]
                    .iter()
                    .map(|t| t.text)
                    .collect::<Vec<_>>()
                    .join(" ")
            });
            blocks.push((label, String::new()));
            continue;
        }
        let Some(block) = blocks.last_mut() else {
            return Err(stmt[0]
                .loc
                .error("coordinates must follow a `drawing` header"));
        };
        // Keep the original line number so diagnostics point into `text`.
        let pad = stmt[0].loc.line - block.1.lines().count() - 1;
        block.1.push_str(&"\n".repeat(pad));
        let line: Vec<&str> = stmt.iter().map(|t| t.text).collect();
        block.1.push_str(&" ".repeat(stmt[0].loc.column - 1));
        block.1.push_str(&line.join(" "));
        block.1.push('\n');
    }
    Ok(blocks)
}

/// Reads one drawing block of `g`. Every vertex needs exactly one row whose
/// level matches the graph.
pub fn parse_drawing(text: &str, g: &LevelGraph) -> Result<Drawing, Diagnostic> {
    let mut x: Vec<Option<i64>> = vec![None; g.vertex_count()];
    let mut header = false;
    for stmt in statements(text) {
        if stmt[0].text == "drawing" {
            if header {
                return Err(stmt[0].loc.error("more than one drawing in the document"));
            }
            header = true;
            continue;
        }
        arity(&stmt, 2).map_err(|_| stmt[0].loc.error("expected `id level x`"))?;
        let v = g.vertex(stmt[0].text).ok_or_else(|| {
            stmt[0].loc.violation(
                ViolationCode::UnknownVertex,
                format!("unknown vertex `{}`", stmt[0].text),
            )
        })?;
        let level: u32 = stmt[1].int("a level number")?;
        if level != g.level(v) {
            return Err(stmt[1].loc.violation(
                ViolationCode::LevelOutOfRange,
                format!(
                    "vertex `{}` is on level {}, not {level}",
                    stmt[0].text,
                    g.level(v)
                ),
            ));
        }
        if x[v.index()].is_some() {
            return Err(stmt[0]
                .loc
                .error(format!("vertex `{}` appears twice", stmt[0].text)));
        }
        x[v.index()] = Some(stmt[2].int("an integer coordinate")?);
    }
    let coords = g
        .vertices()
        .map(|v| {
            x[v.index()].ok_or_else(|| {
                Loc { line: 1, column: 1 }.violation(
                    ViolationCode::MissingCoordinate,
                    format!("no coordinate for vertex `{}`", g.name(v)),
                )
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Drawing::new(coords))
}
