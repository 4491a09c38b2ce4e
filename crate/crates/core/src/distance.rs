//! The dual distance graph and shortest distance labelings.
//!
//! A labeling `x` satisfies `x(v) <= x(u) + l` for every edge `(u, v)` of
//! length `l`. Read as x-coordinates, labelings with `x(v_R) = 0` are exactly
//! the λ-drawings of the augmented graph, and the shortest distances from
//! `v_R` give the rightmost one.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::boundary::AugmentedGraph;
use crate::drawing::{remove_gaps, Drawing};
use crate::error::{Error, Result};
use crate::extend::Side;
use crate::graph::{LevelGraph, VertexId};
use crate::report::{ValidationReport, ViolationCode};
use crate::slopes::Slopes;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DistanceEdgeKind {
    /// Lower to upper endpoint of a graph edge, length λ − 1.
    SlopeUp,
    /// Upper to lower endpoint of a graph edge, length 0.
    SlopeDown,
    /// Right to left between consecutive vertices of a level, length −1.
    SameLevel,
    /// Added by partial extension and simultaneous drawing.
    Constraint,
}

impl DistanceEdgeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DistanceEdgeKind::SlopeUp => "slope-up",
            DistanceEdgeKind::SlopeDown => "slope-down",
            DistanceEdgeKind::SameLevel => "same-level",
            DistanceEdgeKind::Constraint => "constraint",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DistanceEdge {
    pub tail: VertexId,
    pub head: VertexId,
    pub length: i64,
    pub kind: DistanceEdgeKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceGraph {
    pub vertex_count: usize,
    pub edges: Vec<DistanceEdge>,
    pub source: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    pub x: Vec<i64>,
}

impl Labeling {
    pub fn get(&self, v: VertexId) -> i64 {
        self.x[v.index()]
    }
}

/// A closed walk whose lengths sum to a negative number; certifies that no
/// labeling (and hence no drawing) exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeCycleWitness {
    pub cycle: Vec<DistanceEdge>,
    /// For simultaneous drawings, the graph whose distance graph holds the
    /// cycle.
    pub side: Option<Side>,
}

impl NegativeCycleWitness {
    pub fn total_length(&self) -> i64 {
        self.cycle.iter().map(|e| e.length).sum()
    }

    /// Consecutive edges chain head to tail and the walk returns to its start.
    pub fn is_closed(&self) -> bool {
        let n = self.cycle.len();
        n > 0 && (0..n).all(|i| self.cycle[i].head == self.cycle[(i + 1) % n].tail)
    }

    pub fn describe(&self, g: &LevelGraph) -> String {
        let mut out = String::new();
        for e in &self.cycle {
            let _ = writeln!(
                out,
                "{} -> {} {} {}",
                g.name(e.tail),
                g.name(e.head),
                e.length,
                e.kind.as_str()
            );
        }
        let _ = writeln!(out, "total {}", self.total_length());
        out
    }
}

pub fn build_distance_graph(aug: &AugmentedGraph, slopes: Slopes) -> Result<DistanceGraph> {
    let g = &aug.graph;
    g.ensure_proper()?;
    let mut edges = Vec::with_capacity(2 * g.edge_count() + g.vertex_count());
    for &(u, v) in g.edges() {
        edges.push(DistanceEdge {
            tail: u,
            head: v,
            length: slopes.max_slope(),
            kind: DistanceEdgeKind::SlopeUp,
        });
        edges.push(DistanceEdge {
            tail: v,
            head: u,
            length: 0,
            kind: DistanceEdgeKind::SlopeDown,
        });
    }
    for level in 1..=g.levels() {
        for pair in g.order(level).windows(2) {
            edges.push(DistanceEdge {
                tail: pair[1],
                head: pair[0],
                length: -1,
                kind: DistanceEdgeKind::SameLevel,
            });
        }
    }
    Ok(DistanceGraph {
        vertex_count: g.vertex_count(),
        edges,
        source: aug.v_right(),
    })
}

/// Appends a constraint edge `x(head) <= x(tail) + length`.
pub fn augment_with_constraint(
    d: &DistanceGraph,
    tail: VertexId,
    head: VertexId,
    length: i64,
) -> DistanceGraph {
    let mut out = d.clone();
    out.add_constraint(tail, head, length);
    out
}

impl DistanceGraph {
    pub fn add_constraint(&mut self, tail: VertexId, head: VertexId, length: i64) {
        assert!(tail.index() < self.vertex_count && head.index() < self.vertex_count);
        self.edges.push(DistanceEdge {
            tail,
            head,
            length,
            kind: DistanceEdgeKind::Constraint,
        });
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.tail.index()].push(i);
        }
        adj
    }
}

/// Single-source shortest distances from the distance source.
///
/// Queue-based label correcting. A vertex whose tentative shortest path
/// reaches `n` edges lies behind a negative cycle; the cycle is then
/// recovered by walking predecessor edges.
pub fn shortest_labeling(d: &DistanceGraph) -> Result<Labeling> {
    let n = d.vertex_count;
    let adj = d.adjacency();

    let mut seen = vec![false; n];
    let mut stack = vec![d.source];
    seen[d.source.index()] = true;
    while let Some(u) = stack.pop() {
        for &i in &adj[u.index()] {
            let v = d.edges[i].head;
            if !seen[v.index()] {
                seen[v.index()] = true;
                stack.push(v);
            }
        }
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return Err(Error::Unreachable(VertexId::from_index(v)));
    }

    let mut dist = vec![i64::MAX; n];
    let mut hops = vec![0usize; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut queued = vec![false; n];
    let mut queue = VecDeque::new();
    dist[d.source.index()] = 0;
    queue.push_back(d.source);
    queued[d.source.index()] = true;

    while let Some(u) = queue.pop_front() {
        queued[u.index()] = false;
        let du = dist[u.index()];
        for &i in &adj[u.index()] {
            let e = d.edges[i];
            let cand = du + e.length;
            let v = e.head.index();
            if cand < dist[v] {
                dist[v] = cand;
                pred[v] = Some(i);
                hops[v] = hops[u.index()] + 1;
                if hops[v] >= n {
                    // A tentative path of n edges repeats a vertex; settle it
                    // with full passes, which also yield the witness.
                    return bellman_ford(d, &adj);
                }
                if !queued[v] {
                    queued[v] = true;
                    queue.push_back(e.head);
                }
            }
        }
    }
    Ok(Labeling { x: dist })
}

/// Plain pass-based relaxation. If the n-th pass still relaxes some vertex,
/// walking n predecessor steps back from it lands on a negative cycle.
fn bellman_ford(d: &DistanceGraph, adj: &[Vec<usize>]) -> Result<Labeling> {
    let n = d.vertex_count;
    let mut dist = vec![i64::MAX; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    dist[d.source.index()] = 0;
    let mut last = None;
    for _ in 0..n {
        last = None;
        for u in 0..n {
            if dist[u] == i64::MAX {
                continue;
            }
            for &i in &adj[u] {
                let e = d.edges[i];
                if dist[u] + e.length < dist[e.head.index()] {
                    dist[e.head.index()] = dist[u] + e.length;
                    pred[e.head.index()] = Some(i);
                    last = Some(e.head);
                }
            }
        }
        if last.is_none() {
            return Ok(Labeling { x: dist });
        }
    }
    let start = last.expect("relaxed in the final pass");
    Err(Error::Infeasible(Box::new(extract_cycle(d, &pred, start))))
}

fn extract_cycle(
    d: &DistanceGraph,
    pred: &[Option<usize>],
    start: VertexId,
) -> NegativeCycleWitness {
    let n = d.vertex_count;
    let mut v = start;
    for _ in 0..n {
        v = d.edges[pred[v.index()].expect("relaxed vertex has a predecessor")].tail;
    }
    let anchor = v;
    let mut cycle = Vec::new();
    loop {
        let e = d.edges[pred[v.index()].expect("cycle vertex has a predecessor")];
        cycle.push(e);
        v = e.tail;
        if v == anchor {
            break;
        }
    }
    cycle.reverse();
    let witness = NegativeCycleWitness { cycle, side: None };
    assert!(
        witness.is_closed() && witness.total_length() < 0,
        "predecessor cycle must be negative"
    );
    witness
}

pub fn verify_labeling(d: &DistanceGraph, x: &Labeling) -> ValidationReport {
    let mut report = ValidationReport::new();
    if x.x.len() != d.vertex_count {
        report.push(
            ViolationCode::MissingCoordinate,
            format!(
                "labeling has {} values for {} vertices",
                x.x.len(),
                d.vertex_count
            ),
            vec![],
        );
        return report;
    }
    if x.get(d.source) != 0 {
        report.push(
            ViolationCode::AnchorNotZero,
            format!("source label is {}", x.get(d.source)),
            vec![d.source.to_string()],
        );
    }
    for (i, e) in d.edges.iter().enumerate() {
        if x.get(e.head) > x.get(e.tail) + e.length {
            report.push(
                ViolationCode::ConstraintViolated,
                format!(
                    "edge {i} ({} -> {}, {}) violated: {} > {} + {}",
                    e.tail,
                    e.head,
                    e.kind.as_str(),
                    x.get(e.head),
                    x.get(e.tail),
                    e.length
                ),
                vec![i.to_string()],
            );
        }
    }
    report
}

/// The rightmost drawing of a graph, in both its raw and its final form.
#[derive(Debug, Clone)]
pub struct Rightmost {
    pub augmented: AugmentedGraph,
    /// Shortest distance labeling of the augmented graph (`x(v_R) = 0`).
    pub labeling: Labeling,
    /// Boundaries stripped, gaps removed, minimum x at zero.
    pub drawing: Drawing,
}

pub fn rightmost(g: &LevelGraph, slopes: Slopes) -> Result<Rightmost> {
    g.ensure_proper()?;
    let augmented = AugmentedGraph::new(g);
    let dg = build_distance_graph(&augmented, slopes)?;
    let labeling = shortest_labeling(&dg)?;
    let stripped = augmented.strip(&Drawing::new(labeling.x.clone()));
    let drawing = remove_gaps(g, &stripped).anchored_at_zero();
    debug_assert!(drawing.width() <= slopes.compact_width_bound(g.vertex_count()));
    Ok(Rightmost {
        augmented,
        labeling,
        drawing,
    })
}

/// Compact λ-drawing of `g`, or [`Error::Infeasible`] when none exists.
pub fn rightmost_drawing(g: &LevelGraph, slopes: Slopes) -> Result<Drawing> {
    rightmost(g, slopes).map(|r| r.drawing)
}

/// Deterministic text listing of the distance graph.
pub fn dump_distance_graph(g: &LevelGraph, d: &DistanceGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "distance-graph vertices {} edges {} source {}",
        d.vertex_count,
        d.edges.len(),
        g.name(d.source)
    );
    for e in &d.edges {
        let _ = writeln!(
            out,
            "{} {} {} {}",
            g.name(e.tail),
            g.name(e.head),
            e.length,
            e.kind.as_str()
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::check_lambda_drawing;

    fn diamond() -> LevelGraph {
        let mut b = LevelGraph::builder(3);
        let u = b.vertex("u", 1);
        let a = b.vertex("a", 2);
        let bb = b.vertex("b", 2);
        let w = b.vertex("w", 3);
        b.edge(u, a).edge(u, bb).edge(a, w).edge(bb, w);
        b.build()
    }

    fn fan(out: usize) -> LevelGraph {
        let mut b = LevelGraph::builder(2);
        let u = b.vertex("u", 1);
        for i in 0..out {
            let v = b.vertex(format!("v{i}"), 2);
            b.edge(u, v);
        }
        b.build()
    }

    #[test]
    fn single_edge_three_slopes() {
        let mut b = LevelGraph::builder(2);
        let a = b.vertex("a", 1);
        let c = b.vertex("b", 2);
        b.edge(a, c);
        let aug = AugmentedGraph::new(&b.build());
        let dg = build_distance_graph(&aug, Slopes::new(3).unwrap()).unwrap();
        let up: Vec<_> = dg
            .edges
            .iter()
            .filter(|e| e.kind == DistanceEdgeKind::SlopeUp)
            .collect();
        assert_eq!(up.len(), 3);
        assert!(up.iter().all(|e| e.length == 2));
        assert!(dg
            .edges
            .iter()
            .filter(|e| e.kind == DistanceEdgeKind::SlopeDown)
            .all(|e| e.length == 0));
        assert_eq!(
            dg.edges
                .iter()
                .filter(|e| e.kind == DistanceEdgeKind::SameLevel)
                .count(),
            4
        );
        let x = shortest_labeling(&dg).unwrap();
        assert_eq!(x.get(aug.v_right()), 0);
        assert!(verify_labeling(&dg, &x).ok());
    }

    #[test]
    fn one_slope_forces_vertical() {
        let aug = AugmentedGraph::new(&diamond());
        let dg = build_distance_graph(&aug, Slopes::new(1).unwrap()).unwrap();
        assert!(dg
            .edges
            .iter()
            .filter(|e| e.kind == DistanceEdgeKind::SlopeUp)
            .all(|e| e.length == 0));
        // u has two children on one level; they cannot both sit above it.
        assert!(shortest_labeling(&dg).unwrap_err().is_infeasible());
    }

    #[test]
    fn diamond_rightmost() {
        let g = diamond();
        let s = Slopes::new(2).unwrap();
        let r = rightmost(&g, s).unwrap();
        assert_eq!(r.drawing.coords(), &[0, 0, 1, 1]);
        assert!(check_lambda_drawing(&g, &r.drawing, s).ok());
        let dg = build_distance_graph(&r.augmented, s).unwrap();
        assert!(verify_labeling(&dg, &r.labeling).ok());
    }

    #[test]
    fn fan_infeasible_with_witness() {
        let err = rightmost_drawing(&fan(3), Slopes::new(2).unwrap()).unwrap_err();
        let w = err.witness().unwrap();
        assert!(w.is_closed());
        assert!(w.total_length() < 0);
    }

    #[test]
    fn single_vertex() {
        let mut b = LevelGraph::builder(1);
        b.vertex("v", 1);
        for l in 1..=3 {
            let d = rightmost_drawing(&b.clone().build(), Slopes::new(l).unwrap()).unwrap();
            assert_eq!(d.coords(), &[0]);
        }
    }

    #[test]
    fn labeling_violation_itemized() {
        let aug = AugmentedGraph::new(&fan(2));
        let s = Slopes::new(2).unwrap();
        let dg = build_distance_graph(&aug, s).unwrap();
        let mut x = shortest_labeling(&dg).unwrap();
        // push v0 onto v1
        let v0 = aug.graph.vertex("v0").unwrap();
        let v1 = aug.graph.vertex("v1").unwrap();
        x.x[v0.index()] = x.get(v1);
        let r = verify_labeling(&dg, &x);
        assert_eq!(r.count(ViolationCode::ConstraintViolated), 1);
    }

    #[test]
    fn constraint_forces_equality() {
        let aug = AugmentedGraph::new(&fan(2));
        let s = Slopes::new(3).unwrap();
        let dg = build_distance_graph(&aug, s).unwrap();
        let u = aug.graph.vertex("u").unwrap();
        let v0 = aug.graph.vertex("v0").unwrap();
        let dg = augment_with_constraint(&dg, u, v0, 0);
        let dg = augment_with_constraint(&dg, v0, u, 0);
        assert_eq!(
            dg.edges
                .iter()
                .filter(|e| e.kind == DistanceEdgeKind::Constraint)
                .count(),
            2
        );
        let x = shortest_labeling(&dg).unwrap();
        assert_eq!(x.get(u), x.get(v0));
    }

    #[test]
    fn upper_bound_constraint() {
        let g = diamond();
        let aug = AugmentedGraph::new(&g);
        let s = Slopes::new(3).unwrap();
        let dg = build_distance_graph(&aug, s).unwrap();
        let w = aug.graph.vertex("w").unwrap();
        let free = shortest_labeling(&dg).unwrap().get(w);
        let bound = free - 3;
        let x = shortest_labeling(&augment_with_constraint(&dg, aug.v_right(), w, bound)).unwrap();
        assert!(x.get(w) <= bound);
    }
}
