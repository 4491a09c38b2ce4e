//! Extending partial drawings and drawing two graphs simultaneously.
//!
//! Both operations add constraint edges to the distance graph. A partial
//! drawing pins every fixed vertex to a reference vertex in both directions.
//! Simultaneous drawing alternates between the two distance graphs, capping
//! the coordinate of a shared vertex in the graph where it lies further right.

use std::collections::{BTreeMap, BTreeSet};

use crate::boundary::AugmentedGraph;
use crate::distance::{
    build_distance_graph, rightmost_drawing, shortest_labeling, DistanceGraph, Labeling,
};
use crate::drawing::{check_lambda_drawing, closing_shift, remove_gaps_except, Coverage, Drawing};
use crate::error::{Error, Result};
use crate::graph::{validate, LevelGraph, VertexId};
use crate::slopes::Slopes;

/// A graph with an immutable drawing of one of its subgraphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialInstance {
    pub graph: LevelGraph,
    /// Fixed x-coordinates; the keys are the vertices of the subgraph.
    pub fixed: BTreeMap<VertexId, i64>,
    /// Edges of the subgraph, each an edge of `graph`.
    pub h_edges: Vec<(VertexId, VertexId)>,
}

impl PartialInstance {
    pub fn new(graph: LevelGraph) -> Self {
        PartialInstance {
            graph,
            fixed: BTreeMap::new(),
            h_edges: Vec::new(),
        }
    }

    pub fn fix(&mut self, v: VertexId, x: i64) -> &mut Self {
        self.fixed.insert(v, x);
        self
    }

    pub fn h_edge(&mut self, u: VertexId, v: VertexId) -> &mut Self {
        self.h_edges.push((u, v));
        self
    }

    /// The subgraph as a level graph of its own, with orders induced by
    /// `graph`, and its vertices in the order of `fixed`.
    pub fn subgraph(&self) -> (LevelGraph, Vec<VertexId>) {
        let g = &self.graph;
        let mut b = LevelGraph::builder(g.levels());
        let mut local = BTreeMap::new();
        let members: Vec<VertexId> = self.fixed.keys().copied().collect();
        for &v in &members {
            local.insert(v, b.vertex(g.name(v), g.level(v)));
        }
        for level in 1..=g.levels() {
            let seq: Vec<VertexId> = g
                .order(level)
                .iter()
                .filter_map(|v| local.get(v).copied())
                .collect();
            b.order(level, seq);
        }
        for &(u, v) in &self.h_edges {
            if let (Some(&a), Some(&c)) = (local.get(&u), local.get(&v)) {
                b.edge(a, c);
            }
        }
        (b.build(), members)
    }

    /// Checks that the subgraph belongs to `graph` and that the fixed
    /// coordinates draw it with λ slopes.
    pub fn check(&self, slopes: Slopes) -> Result<()> {
        let g = &self.graph;
        let n = g.vertex_count();
        if let Some(v) = self.fixed.keys().find(|v| v.index() >= n) {
            return Err(Error::MalformedInstance(format!(
                "fixed vertex {v} is not in the graph"
            )));
        }
        for &(u, v) in &self.h_edges {
            if !g.edges().contains(&(u, v)) {
                return Err(Error::MalformedInstance(format!(
                    "fixed edge {} -> {} is not an edge of the graph",
                    name_or_id(g, u),
                    name_or_id(g, v)
                )));
            }
            if !self.fixed.contains_key(&u) || !self.fixed.contains_key(&v) {
                return Err(Error::MalformedInstance(format!(
                    "fixed edge {} has an endpoint without a coordinate",
                    g.edge_label((u, v))
                )));
            }
        }
        let (h, members) = self.subgraph();
        let d = Drawing::new(members.iter().map(|v| self.fixed[v]).collect());
        let report = check_lambda_drawing(&h, &d, slopes);
        if !report.ok() {
            return Err(Error::MalformedInstance(format!(
                "fixed drawing is not a λ-drawing: {report}"
            )));
        }
        Ok(())
    }

    /// Smallest name on the lowest level that holds a fixed vertex.
    pub fn reference_vertex(&self) -> Option<VertexId> {
        let g = &self.graph;
        self.fixed.keys().copied().min_by(|&a, &b| {
            g.level(a)
                .cmp(&g.level(b))
                .then_with(|| g.name(a).cmp(g.name(b)))
        })
    }

    /// Inclusive column range spanned by the fixed coordinates.
    pub fn fixed_span(&self) -> Option<(i64, i64)> {
        let lo = self.fixed.values().min()?;
        let hi = self.fixed.values().max()?;
        Some((*lo, *hi))
    }
}

fn name_or_id(g: &LevelGraph, v: VertexId) -> String {
    if v.index() < g.vertex_count() {
        g.name(v).to_string()
    } else {
        v.to_string()
    }
}

fn ensure_valid(g: &LevelGraph) -> Result<()> {
    let report = validate(g, true);
    if report.ok() {
        Ok(())
    } else {
        Err(Error::InvalidGraph(report))
    }
}

/// A λ-drawing of the whole graph that restricts to the fixed coordinates
/// exactly, or [`Error::Infeasible`] when no extension exists.
///
/// Gaps outside the fixed span are removed; gaps inside it are part of the
/// given drawing and stay.
pub fn extend_partial(inst: &PartialInstance, slopes: Slopes) -> Result<Drawing> {
    let g = &inst.graph;
    ensure_valid(g)?;
    inst.check(slopes)?;
    let Some(v_ref) = inst.reference_vertex() else {
        return rightmost_drawing(g, slopes);
    };
    let pi_ref = inst.fixed[&v_ref];

    let aug = AugmentedGraph::new(g);
    let mut dg = build_distance_graph(&aug, slopes)?;
    for (&v, &pi) in &inst.fixed {
        if v == v_ref {
            continue;
        }
        let d_v = pi_ref - pi;
        dg.add_constraint(v, v_ref, d_v);
        dg.add_constraint(v_ref, v, -d_v);
    }
    let labeling = shortest_labeling(&dg)?;
    let stripped = aug.strip(&Drawing::new(labeling.x));
    let placed = stripped.translated(pi_ref - stripped.x(v_ref));
    let compact = remove_gaps_except(g, &placed, inst.fixed_span());
    let out = compact.translated(pi_ref - compact.x(v_ref));
    debug_assert!(inst.fixed.iter().all(|(&v, &x)| out.x(v) == x));
    Ok(out)
}

/// Two graphs sharing a subgraph, identified vertex by vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimultaneousInstance {
    pub first: LevelGraph,
    pub second: LevelGraph,
    /// Pairs `(vertex of first, vertex of second)` that are the same vertex.
    pub shared: Vec<(VertexId, VertexId)>,
}

impl SimultaneousInstance {
    pub fn new(first: LevelGraph, second: LevelGraph, shared: Vec<(VertexId, VertexId)>) -> Self {
        SimultaneousInstance {
            first,
            second,
            shared,
        }
    }

    /// Identifies the vertices with the given names in both graphs.
    pub fn by_names<S: AsRef<str>>(
        first: LevelGraph,
        second: LevelGraph,
        names: &[S],
    ) -> Result<Self> {
        let mut shared = Vec::with_capacity(names.len());
        for name in names {
            let name = name.as_ref();
            let (Some(a), Some(b)) = (first.vertex(name), second.vertex(name)) else {
                return Err(Error::MalformedInstance(format!(
                    "shared vertex {name} is missing from a graph"
                )));
            };
            shared.push((a, b));
        }
        Ok(SimultaneousInstance {
            first,
            second,
            shared,
        })
    }

    /// Checks that identified vertices exist, are identified once, sit on
    /// equal levels, and appear in the same relative order in both graphs.
    pub fn check(&self) -> Result<()> {
        let (g1, g2) = (&self.first, &self.second);
        let mut seen1 = BTreeSet::new();
        let mut seen2 = BTreeSet::new();
        for &(a, b) in &self.shared {
            if a.index() >= g1.vertex_count() || b.index() >= g2.vertex_count() {
                return Err(Error::MalformedInstance(format!(
                    "shared pair ({a}, {b}) refers to a missing vertex"
                )));
            }
            if !seen1.insert(a) || !seen2.insert(b) {
                return Err(Error::MalformedInstance(format!(
                    "vertex {} is identified more than once",
                    g1.name(a)
                )));
            }
            if g1.level(a) != g2.level(b) {
                return Err(Error::MalformedInstance(format!(
                    "shared vertex {} lies on level {} in the first graph and {} in the second",
                    g1.name(a),
                    g1.level(a),
                    g2.level(b)
                )));
            }
        }
        let to_second: BTreeMap<VertexId, VertexId> = self.shared.iter().copied().collect();
        let to_first: BTreeMap<VertexId, VertexId> =
            self.shared.iter().map(|&(a, b)| (b, a)).collect();
        for level in 1..=g1.levels().min(g2.levels()) {
            let in1: Vec<VertexId> = g1
                .order(level)
                .iter()
                .filter(|v| to_second.contains_key(v))
                .copied()
                .collect();
            let in2: Vec<VertexId> = g2
                .order(level)
                .iter()
                .filter_map(|v| to_first.get(v).copied())
                .collect();
            if in1 != in2 {
                return Err(Error::MalformedInstance(format!(
                    "embeddings disagree on the shared vertices of level {level}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    First,
    Second,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::First => "first",
            Side::Second => "second",
        }
    }
}

/// One added constraint `x(vertex) <= limit` on graph `side`; the vertex
/// moved from `old` to `new` (pre-strip coordinates, `x(v_R) = 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub iteration: u64,
    pub side: Side,
    pub vertex: String,
    pub limit: i64,
    pub old: i64,
    pub new: i64,
}

#[derive(Debug, Clone)]
pub struct SimultaneousResult {
    /// Final drawings: stripped, joint gaps removed, joint minimum at zero.
    pub first: Drawing,
    pub second: Drawing,
    /// Final labelings of both augmented graphs, agreeing on every shared
    /// vertex and on the right boundary.
    pub labelings: (Labeling, Labeling),
    pub augmented: (AugmentedGraph, AugmentedGraph),
    pub iterations: u64,
    pub bound: u64,
    pub trace: Vec<TraceStep>,
}

/// Simultaneous λ-drawings of two graphs that agree on every shared vertex,
/// or [`Error::Infeasible`] when none exist.
///
/// Every original vertex is also kept within a fixed distance of the shared
/// right boundary. Any pair of simultaneous drawings can be compacted to fit
/// that window, so feasibility is unaffected, and the iteration cannot drift
/// left forever.
pub fn simultaneous(inst: &SimultaneousInstance, slopes: Slopes) -> Result<SimultaneousResult> {
    let (g1, g2) = (&inst.first, &inst.second);
    ensure_valid(g1)?;
    ensure_valid(g2)?;
    inst.check()?;

    let k = g1.levels().max(g2.levels());
    let aug1 = AugmentedGraph::with_levels(g1, k);
    let aug2 = AugmentedGraph::with_levels(g2, k);

    let mut pairs: Vec<(VertexId, VertexId)> = inst.shared.clone();
    pairs.sort_by(|a, b| g1.name(a.0).cmp(g1.name(b.0)));
    pairs.extend(
        aug1.boundary
            .right_path()
            .iter()
            .copied()
            .zip(aug2.boundary.right_path().iter().copied()),
    );

    let union_originals = g1.vertex_count() + g2.vertex_count() - inst.shared.len();
    let window = slopes.compact_width_bound(union_originals) + 2;
    let mut d1 = build_distance_graph(&aug1, slopes)?;
    let mut d2 = build_distance_graph(&aug2, slopes)?;
    add_window(&mut d1, &aug1, window);
    add_window(&mut d2, &aug2, window);

    let union_aug = aug1.graph.vertex_count() + aug2.graph.vertex_count() - pairs.len();
    let n = union_aug as u64;
    let bound = n * slopes.width_factor() as u64 * n.saturating_sub(1);

    let mut x1 = on_side(Side::First, shortest_labeling(&d1))?;
    let mut x2 = on_side(Side::Second, shortest_labeling(&d2))?;
    let mut trace = Vec::new();
    let mut iterations = 0u64;
    while let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| x1.get(a) != x2.get(b)) {
        iterations += 1;
        if iterations > bound {
            return Err(Error::IterationBound { iterations, bound });
        }
        let (lo, hi) = (x1.get(a), x2.get(b));
        let step = if lo < hi {
            d2.add_constraint(aug2.v_right(), b, lo);
            x2 = on_side(Side::Second, shortest_labeling(&d2))?;
            TraceStep {
                iteration: iterations,
                side: Side::Second,
                vertex: aug2.graph.name(b).to_string(),
                limit: lo,
                old: hi,
                new: x2.get(b),
            }
        } else {
            d1.add_constraint(aug1.v_right(), a, hi);
            x1 = on_side(Side::First, shortest_labeling(&d1))?;
            TraceStep {
                iteration: iterations,
                side: Side::First,
                vertex: aug1.graph.name(a).to_string(),
                limit: hi,
                old: lo,
                new: x1.get(a),
            }
        };
        assert!(step.new < step.old, "a constrained vertex must move left");
        trace.push(step);
    }

    let s1 = aug1.strip(&Drawing::new(x1.x.clone()));
    let s2 = aug2.strip(&Drawing::new(x2.x.clone()));
    let mut cov = Coverage::new();
    cov.add_drawing(g1, &s1);
    cov.add_drawing(g2, &s2);
    let runs = cov.gap_runs();
    let close = |d: &Drawing| {
        Drawing::new(
            d.coords()
                .iter()
                .map(|&x| x - closing_shift(&runs, x))
                .collect(),
        )
    };
    let (c1, c2) = (close(&s1), close(&s2));
    let min = c1.min_x().into_iter().chain(c2.min_x()).min().unwrap_or(0);
    let first = c1.translated(-min);
    let second = c2.translated(-min);
    debug_assert!(inst.shared.iter().all(|&(a, b)| first.x(a) == second.x(b)));

    Ok(SimultaneousResult {
        first,
        second,
        labelings: (x1, x2),
        augmented: (aug1, aug2),
        iterations,
        bound,
        trace,
    })
}

fn on_side<T>(side: Side, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Infeasible(mut w) => {
            w.side = Some(side);
            Error::Infeasible(w)
        }
        e => e,
    })
}

/// `x(v) >= x(v_R) - window` for every original vertex.
fn add_window(d: &mut DistanceGraph, aug: &AugmentedGraph, window: i64) {
    for i in 0..aug.boundary.original_count() {
        d.add_constraint(VertexId::from_index(i), aug.v_right(), window);
    }
}
