//! Left and right boundary paths.
//!
//! The augmented graph keeps the original vertices at their indices and
//! appends the left path (levels `1..=k`) followed by the right path. Edges
//! are the original edges followed by the left and then the right path edges.

use crate::drawing::Drawing;
use crate::graph::{LevelGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryInfo {
    original_count: usize,
    original_edges: usize,
    left: Vec<VertexId>,
    right: Vec<VertexId>,
}

impl BoundaryInfo {
    /// Left boundary vertex per level, bottom to top.
    pub fn left_path(&self) -> &[VertexId] {
        &self.left
    }

    /// Right boundary vertex per level, bottom to top.
    pub fn right_path(&self) -> &[VertexId] {
        &self.right
    }

    /// Level-1 vertex of the right boundary; the normalization anchor.
    pub fn v_right(&self) -> VertexId {
        self.right[0]
    }

    pub fn original_count(&self) -> usize {
        self.original_count
    }

    pub fn original_edge_count(&self) -> usize {
        self.original_edges
    }

    pub fn is_boundary(&self, v: VertexId) -> bool {
        v.index() >= self.original_count
    }
}

/// A proper level graph together with its boundary paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedGraph {
    pub graph: LevelGraph,
    pub boundary: BoundaryInfo,
}

impl AugmentedGraph {
    pub fn new(g: &LevelGraph) -> Self {
        let (graph, boundary) = add_boundaries(g);
        AugmentedGraph { graph, boundary }
    }

    /// Augments with `levels` levels (at least `g.levels()`); used when two
    /// graphs must share a right boundary.
    pub fn with_levels(g: &LevelGraph, levels: u32) -> Self {
        let (graph, boundary) = add_boundaries_with_levels(g, levels);
        AugmentedGraph { graph, boundary }
    }

    pub fn v_right(&self) -> VertexId {
        self.boundary.v_right()
    }

    /// The graph without its boundary paths.
    pub fn original(&self) -> LevelGraph {
        let g = &self.graph;
        let n = self.boundary.original_count;
        LevelGraph::from_parts(
            g.levels(),
            g.names()[..n].to_vec(),
            (0..n).map(|i| g.level(VertexId::from_index(i))).collect(),
            g.edges()[..self.boundary.original_edges].to_vec(),
            (1..=g.levels())
                .map(|l| {
                    let seq = g.order(l);
                    seq[1..seq.len() - 1].to_vec()
                })
                .collect(),
        )
    }

    pub fn strip(&self, d: &Drawing) -> Drawing {
        strip_boundaries(d, &self.boundary)
    }

    /// Extends a drawing of the original graph with vertical boundaries one
    /// unit left and right of everything, then anchors `v_R` at zero.
    pub fn lift_tight(&self, d: &Drawing) -> Drawing {
        let lo = d.min_x().unwrap_or(0);
        let hi = d.max_x().unwrap_or(0);
        let mut x = d.coords().to_vec();
        x.extend(self.boundary.left.iter().map(|_| lo - 1));
        x.extend(self.boundary.right.iter().map(|_| hi + 1));
        let lifted = Drawing::new(x);
        lifted.anchored_at(self.v_right())
    }
}

fn fresh_name(g: &LevelGraph, base: String) -> String {
    let mut name = base;
    while g.vertex(&name).is_some() {
        name.insert(0, '_');
    }
    name
}

/// Adds the boundary paths p_L and p_R, leftmost and rightmost on every level.
pub fn add_boundaries(g: &LevelGraph) -> (LevelGraph, BoundaryInfo) {
    add_boundaries_with_levels(g, g.levels())
}

pub fn add_boundaries_with_levels(g: &LevelGraph, levels: u32) -> (LevelGraph, BoundaryInfo) {
    let k = levels.max(g.levels()).max(1);
    let n = g.vertex_count();
    let mut names: Vec<String> = g.names().to_vec();
    let mut level: Vec<u32> = g.vertices().map(|v| g.level(v)).collect();
    let mut left = Vec::with_capacity(k as usize);
    let mut right = Vec::with_capacity(k as usize);
    for l in 1..=k {
        left.push(VertexId::from_index(names.len()));
        names.push(fresh_name(g, format!("_pL{l}")));
        level.push(l);
    }
    for l in 1..=k {
        right.push(VertexId::from_index(names.len()));
        names.push(fresh_name(g, format!("_pR{l}")));
        level.push(l);
    }
    let mut edges = g.edges().to_vec();
    edges.extend(left.windows(2).map(|w| (w[0], w[1])));
    edges.extend(right.windows(2).map(|w| (w[0], w[1])));
    let order = (1..=k)
        .map(|l| {
            let mut seq = vec![left[l as usize - 1]];
            seq.extend_from_slice(g.order(l));
            seq.push(right[l as usize - 1]);
            seq
        })
        .collect();
    let graph = LevelGraph::from_parts(k, names, level, edges, order);
    let info = BoundaryInfo {
        original_count: n,
        original_edges: g.edge_count(),
        left,
        right,
    };
    (graph, info)
}

/// Restriction of a drawing of the augmented graph to the original vertices.
pub fn strip_boundaries(d: &Drawing, b: &BoundaryInfo) -> Drawing {
    Drawing::new(d.coords()[..b.original_count].to_vec())
}
