//! Embedded level graphs.
//!
//! A [`LevelGraph`] stores a vertex list, a level per vertex, directed edges
//! and, for every level, the left-to-right order of its vertices. The order
//! is the embedding: two drawings inducing the same orders are equivalent.
//!
//! The struct is allowed to hold inconsistent data (unknown levels, vertices
//! missing from an order, crossing edges) so that [`validate`] can report on
//! it. Every drawing operation validates its input first.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::report::{ValidationReport, ViolationCode};

/// Index of a vertex inside one [`LevelGraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Self {
        VertexId(i as u32)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelGraph {
    levels: u32,
    names: Vec<String>,
    level: Vec<u32>,
    edges: Vec<(VertexId, VertexId)>,
    /// `order[i]` lists the vertices of level `i + 1`, left to right.
    order: Vec<Vec<VertexId>>,
    pos: Vec<Option<usize>>,
    by_name: HashMap<String, VertexId>,
}

impl LevelGraph {
    pub fn builder(levels: u32) -> LevelGraphBuilder {
        LevelGraphBuilder {
            levels,
            names: Vec::new(),
            level: Vec::new(),
            edges: Vec::new(),
            order: HashMap::new(),
        }
    }

    /// Number of levels `k`; vertices live on levels `1..=k`.
    pub fn levels(&self) -> u32 {
        self.levels
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.names.len()).map(VertexId::from_index)
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.by_name.get(name).copied()
    }

    pub fn level(&self, v: VertexId) -> u32 {
        self.level[v.index()]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Left-to-right order of level `level` (1-based). Empty for unknown levels.
    pub fn order(&self, level: u32) -> &[VertexId] {
        if level == 0 {
            return &[];
        }
        self.order
            .get(level as usize - 1)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Position of `v` inside its level's order.
    pub fn position(&self, v: VertexId) -> usize {
        self.pos[v.index()].expect("vertex missing from its level order")
    }

    /// Edge length `level(v) - level(u)`.
    pub fn edge_length(&self, (u, v): (VertexId, VertexId)) -> i64 {
        i64::from(self.level(v)) - i64::from(self.level(u))
    }

    pub fn is_proper(&self) -> bool {
        self.edges.iter().all(|&e| self.edge_length(e) == 1)
    }

    pub fn edge_label(&self, (u, v): (VertexId, VertexId)) -> String {
        format!("{}->{}", self.name(u), self.name(v))
    }

    /// Fails with [`Error::InvalidGraph`] unless the graph is valid and proper.
    pub fn ensure_proper(&self) -> Result<()> {
        let report = validate(self, true);
        if report.ok() {
            Ok(())
        } else {
            Err(Error::InvalidGraph(report))
        }
    }

    pub(crate) fn from_parts(
        levels: u32,
        names: Vec<String>,
        level: Vec<u32>,
        edges: Vec<(VertexId, VertexId)>,
        order: Vec<Vec<VertexId>>,
    ) -> Self {
        let mut pos = vec![None; names.len()];
        for seq in &order {
            for (i, &v) in seq.iter().enumerate() {
                if let Some(p) = pos.get_mut(v.index()) {
                    if p.is_none() {
                        *p = Some(i);
                    }
                }
            }
        }
        let mut by_name = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            by_name.entry(n.clone()).or_insert(VertexId::from_index(i));
        }
        LevelGraph {
            levels,
            names,
            level,
            edges,
            order,
            pos,
            by_name,
        }
    }
}

/// Incremental constructor. Levels without an explicit order use the order
/// in which their vertices were added.
#[derive(Debug, Clone)]
pub struct LevelGraphBuilder {
    levels: u32,
    names: Vec<String>,
    level: Vec<u32>,
    edges: Vec<(VertexId, VertexId)>,
    order: HashMap<u32, Vec<VertexId>>,
}

impl LevelGraphBuilder {
    pub fn vertex(&mut self, name: impl Into<String>, level: u32) -> VertexId {
        let id = VertexId::from_index(self.names.len());
        self.names.push(name.into());
        self.level.push(level);
        id
    }

    pub fn edge(&mut self, u: VertexId, v: VertexId) -> &mut Self {
        self.edges.push((u, v));
        self
    }

    pub fn order(&mut self, level: u32, seq: Vec<VertexId>) -> &mut Self {
        self.order.insert(level, seq);
        self
    }

    pub fn build(self) -> LevelGraph {
        let mut order: Vec<Vec<VertexId>> = (1..=self.levels)
            .map(|l| match self.order.get(&l) {
                Some(seq) => seq.clone(),
                None => (0..self.names.len())
                    .filter(|&i| self.level[i] == l)
                    .map(VertexId::from_index)
                    .collect(),
            })
            .collect();
        // Explicit orders for levels beyond `levels` are kept so that
        // validation can flag them.
        let mut extra: Vec<_> = self
            .order
            .keys()
            .copied()
            .filter(|&l| l == 0 || l > self.levels)
            .collect();
        extra.sort_unstable();
        for l in extra {
            if l > self.levels {
                order.resize(l as usize, Vec::new());
                order[l as usize - 1] = self.order[&l].clone();
            }
        }
        LevelGraph::from_parts(self.levels, self.names, self.level, self.edges, order)
    }
}

/// Checks every structural invariant of an embedded level graph.
///
/// With `require_proper`, edges longer than one level are reported as
/// [`ViolationCode::NonProperEdge`].
pub fn validate(g: &LevelGraph, require_proper: bool) -> ValidationReport {
    let mut report = ValidationReport::new();
    let n = g.vertex_count();

    let mut seen_names = HashSet::new();
    for v in g.vertices() {
        if !seen_names.insert(g.name(v)) {
            report.push(
                ViolationCode::DuplicateVertex,
                format!("vertex name {} is used more than once", g.name(v)),
                vec![g.name(v).to_string()],
            );
        }
        let l = g.level(v);
        if l == 0 || l > g.levels() {
            report.push(
                ViolationCode::LevelOutOfRange,
                format!(
                    "vertex {} is on level {l}, expected 1..={}",
                    g.name(v),
                    g.levels()
                ),
                vec![g.name(v).to_string()],
            );
        }
    }
    if g.levels() == 0 {
        report.push(
            ViolationCode::LevelOutOfRange,
            "graph has no levels",
            vec![],
        );
    }

    // Every vertex exactly once, in the order of its own level.
    let mut occurrences = vec![0usize; n];
    for (i, seq) in g.order.iter().enumerate() {
        let l = i as u32 + 1;
        for &v in seq {
            if v.index() >= n {
                report.push(
                    ViolationCode::UnknownVertex,
                    format!("order of level {l} lists unknown vertex {v}"),
                    vec![v.to_string()],
                );
                continue;
            }
            occurrences[v.index()] += 1;
            if g.level(v) != l {
                report.push(
                    ViolationCode::OrderMismatch,
                    format!(
                        "vertex {} listed on level {l} but lives on level {}",
                        g.name(v),
                        g.level(v)
                    ),
                    vec![g.name(v).to_string()],
                );
            }
        }
    }
    for v in g.vertices() {
        match occurrences[v.index()] {
            1 => {}
            0 => report.push(
                ViolationCode::OrderMismatch,
                format!(
                    "vertex {} missing from the order of level {}",
                    g.name(v),
                    g.level(v)
                ),
                vec![g.name(v).to_string()],
            ),
            c => report.push(
                ViolationCode::DuplicateVertex,
                format!("vertex {} appears {c} times in the level orders", g.name(v)),
                vec![g.name(v).to_string()],
            ),
        }
    }

    let mut seen_edges = HashSet::new();
    let mut edges_ok = true;
    for &(u, v) in g.edges() {
        if u.index() >= n || v.index() >= n {
            report.push(
                ViolationCode::UnknownVertex,
                format!("edge {u}->{v} references an unknown vertex"),
                vec![],
            );
            edges_ok = false;
            continue;
        }
        let label = g.edge_label((u, v));
        if !seen_edges.insert((u, v)) {
            report.push(
                ViolationCode::DuplicateEdge,
                format!("edge {label} is repeated"),
                vec![label.clone()],
            );
        }
        let len = g.edge_length((u, v));
        if len < 1 {
            report.push(
                ViolationCode::EdgeDirection,
                format!("edge {label} does not point to a higher level"),
                vec![label],
            );
            edges_ok = false;
        } else if require_proper && len > 1 {
            report.push(
                ViolationCode::NonProperEdge,
                format!("edge {label} has length {len}"),
                vec![label],
            );
        }
    }

    // Pairwise crossing test among edges spanning the same pair of levels.
    let order_ok = !report.has(ViolationCode::OrderMismatch)
        && !report.has(ViolationCode::DuplicateVertex)
        && !report.has(ViolationCode::UnknownVertex);
    if edges_ok && order_ok {
        let edges = g.edges();
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let (u, w) = edges[i];
                let (v, x) = edges[j];
                if g.level(u) != g.level(v) || g.level(w) != g.level(x) {
                    continue;
                }
                let (pu, pv) = (g.position(u), g.position(v));
                let (pw, px) = (g.position(w), g.position(x));
                if (pu < pv && pw > px) || (pu > pv && pw < px) {
                    report.push(
                        ViolationCode::EmbeddingCrossing,
                        format!(
                            "edges {} and {} cross in the embedding",
                            g.edge_label(edges[i]),
                            g.edge_label(edges[j])
                        ),
                        vec![g.edge_label(edges[i]), g.edge_label(edges[j])],
                    );
                }
            }
        }
    }
    report
}
