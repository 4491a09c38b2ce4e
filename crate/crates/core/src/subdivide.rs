//! Proper subdivision of long edges.
//!
//! Drawing with fixed slopes is only solved for proper graphs, so this is a
//! convenience for callers whose input still contains long edges. Dummy
//! vertices are placed into the intermediate level orders either by a
//! caller-supplied hint or by the default rule described on
//! [`default_position`].

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{validate, LevelGraph, VertexId};

/// Maps each subdivided original edge (by index) to the edges that replace it.
pub type SubdivisionMap = BTreeMap<usize, Vec<(VertexId, VertexId)>>;

/// Where to insert the dummy of `edge` on `level`, given the current order
/// of that level and the vertex directly below on the subdivided path.
pub trait PositionHint {
    fn position(
        &self,
        edge: usize,
        level: u32,
        below: VertexId,
        order: &[VertexId],
        g: &Partial,
    ) -> Option<usize>;
}

/// Read-only view of the graph while it is being subdivided.
pub struct Partial<'a> {
    levels: &'a [u32],
    edges: &'a [(VertexId, VertexId)],
    order: &'a [Vec<VertexId>],
    pending: &'a [(VertexId, VertexId)],
}

impl Partial<'_> {
    pub fn level(&self, v: VertexId) -> u32 {
        self.levels[v.index()]
    }

    pub fn position(&self, v: VertexId) -> usize {
        let seq = &self.order[self.level(v) as usize - 1];
        seq.iter()
            .position(|&w| w == v)
            .expect("vertex in its order")
    }

    /// Proper edges arriving at `v` from the level below.
    pub fn in_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let lv = self.level(v);
        self.edges
            .iter()
            .filter(move |&&(a, b)| b == v && self.level(a) + 1 == lv)
            .map(|&(a, _)| a)
    }

    /// Proper edges leaving `v` to the level above.
    pub fn out_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let lv = self.level(v);
        self.edges
            .iter()
            .filter(move |&&(a, b)| a == v && self.level(b) == lv + 1)
            .map(|&(_, b)| b)
    }

    /// Everything reachable from `v` upwards, by level, following both
    /// proper edges and long edges that are not yet subdivided.
    pub fn reach(&self, v: VertexId) -> BTreeMap<u32, BTreeSet<VertexId>> {
        let mut out: BTreeMap<u32, BTreeSet<VertexId>> = BTreeMap::new();
        let mut stack = vec![v];
        while let Some(w) = stack.pop() {
            let long = self.pending.iter().filter(|e| e.0 == w).map(|e| e.1);
            for x in self.out_neighbors(w).chain(long) {
                if out.entry(self.level(x)).or_default().insert(x) {
                    stack.push(x);
                }
            }
        }
        out
    }
}

/// The default rule: immediately left of the first vertex on the level that
/// lies right of the subdivided edge, at the end of the level when there is
/// none. A vertex lies right of the edge if it has an incoming edge from a
/// vertex strictly right of `below`; failing that, if on the lowest level
/// from `head` upwards where both reach something, everything it reaches is
/// at or right of everything `head` reaches, and not all of it is equal.
pub fn default_position(below: VertexId, head: VertexId, order: &[VertexId], g: &Partial) -> usize {
    let below_pos = g.position(below);
    let mut ahead = g.reach(head);
    ahead.entry(g.level(head)).or_default().insert(head);
    order
        .iter()
        .position(|&y| {
            let mut from = g.in_neighbors(y).map(|p| g.position(p).cmp(&below_pos));
            if let Some(c) = from.find(|c| c.is_ne()) {
                return c.is_gt();
            }
            let theirs = g.reach(y);
            for (level, mine) in &ahead {
                let Some(other) = theirs.get(level) else {
                    continue;
                };
                let lo = mine.iter().map(|&v| g.position(v)).min().unwrap_or(0);
                let hi = mine.iter().map(|&v| g.position(v)).max().unwrap_or(0);
                let (olo, ohi) = (
                    other.iter().map(|&v| g.position(v)).min().unwrap_or(0),
                    other.iter().map(|&v| g.position(v)).max().unwrap_or(0),
                );
                if olo >= hi && ohi > lo {
                    return true;
                }
                if ohi <= lo && olo < hi {
                    return false;
                }
            }
            false
        })
        .unwrap_or(order.len())
}

struct DefaultHint;

impl PositionHint for DefaultHint {
    fn position(
        &self,
        _: usize,
        _: u32,
        _: VertexId,
        _: &[VertexId],
        _: &Partial,
    ) -> Option<usize> {
        None
    }
}

pub fn subdivide_long_edges(g: &LevelGraph) -> Result<(LevelGraph, SubdivisionMap)> {
    subdivide_long_edges_with(g, &DefaultHint)
}

/// Replaces every edge of length ℓ ≥ 2 by a path through ℓ − 1 new vertices.
///
/// Fails with [`Error::InvalidGraph`] if the input is not a valid level graph
/// or if the chosen dummy positions introduce a crossing.
pub fn subdivide_long_edges_with(
    g: &LevelGraph,
    hint: &dyn PositionHint,
) -> Result<(LevelGraph, SubdivisionMap)> {
    let report = validate(g, false);
    if !report.ok() {
        return Err(Error::InvalidGraph(report));
    }
    if g.is_proper() {
        return Ok((g.clone(), SubdivisionMap::new()));
    }

    let mut names = g.names().to_vec();
    let mut levels: Vec<u32> = g.vertices().map(|v| g.level(v)).collect();
    let mut order: Vec<Vec<VertexId>> = (1..=g.levels()).map(|l| g.order(l).to_vec()).collect();
    let mut edges: Vec<(VertexId, VertexId)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&e| g.edge_length(e) == 1)
        .collect();
    let mut mapping = SubdivisionMap::new();

    // Long edges are processed bottom-up by their tail level so that the
    // default rule sees the already subdivided edges below.
    let mut long: Vec<usize> = (0..g.edge_count())
        .filter(|&i| g.edge_length(g.edges()[i]) > 1)
        .collect();
    long.sort_by_key(|&i| (g.level(g.edges()[i].0), i));

    let mut pending: Vec<(VertexId, VertexId)> = long.iter().map(|&i| g.edges()[i]).collect();
    for i in long {
        let (u, w) = g.edges()[i];
        pending.remove(0);
        let mut path = Vec::new();
        let mut below = u;
        for l in g.level(u) + 1..g.level(w) {
            let dummy = VertexId::from_index(names.len());
            let mut name = format!("{}~{}~{}", g.name(u), g.name(w), l);
            while g.vertex(&name).is_some() {
                name.push('\'');
            }
            names.push(name);
            levels.push(l);
            let at = {
                let view = Partial {
                    levels: &levels,
                    edges: &edges,
                    order: &order,
                    pending: &pending,
                };
                let seq = &order[l as usize - 1];
                hint.position(i, l, below, seq, &view)
                    .unwrap_or_else(|| default_position(below, w, seq, &view))
                    .min(seq.len())
            };
            order[l as usize - 1].insert(at, dummy);
            edges.push((below, dummy));
            path.push((below, dummy));
            below = dummy;
        }
        edges.push((below, w));
        path.push((below, w));
        mapping.insert(i, path);
    }

    let out = LevelGraph::from_parts(g.levels(), names, levels, edges, order);
    let report = validate(&out, true);
    if !report.ok() {
        return Err(Error::InvalidGraph(report));
    }
    Ok((out, mapping))
}
