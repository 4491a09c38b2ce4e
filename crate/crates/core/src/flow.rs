//! The flow network whose circulations are the λ-drawings of a
//! boundary-augmented proper level graph.
//!
//! Every edge `e` gets a slope arc from the face right of `e` to the face
//! left of it (demand 0, capacity λ − 1) and every pair of consecutive
//! vertices on a level gets a space arc from below to above (demand 1,
//! capacity `max(1, λ−1)(n−1)`). Faces between two consecutive edges of a
//! span form one node together with the space arcs ending below or starting
//! above them. What remains on the right and below is the source `s`, what
//! remains on the left and above is the sink `t`, and an unbounded return
//! arc closes the network.
//!
//! Each arc also records its left and right face as graph vertices so that a
//! drawing `x` converts to the circulation `x(right) − x(left)`.

use std::fmt::Write as _;

use crate::boundary::AugmentedGraph;
use crate::distance;
use crate::drawing::{check_lambda_drawing, remove_gaps, Drawing};
use crate::error::{Error, Result};
use crate::graph::{LevelGraph, VertexId};
use crate::report::{ValidationReport, ViolationCode};
use crate::slopes::Slopes;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

impl NodeId {
    pub const SOURCE: NodeId = NodeId(0);
    pub const SINK: NodeId = NodeId(1);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcKind {
    Slope,
    Space,
    Return,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Capacity {
    Finite(u64),
    Unbounded,
}

impl Capacity {
    pub fn admits(self, flow: u64) -> bool {
        match self {
            Capacity::Finite(c) => flow <= c,
            Capacity::Unbounded => true,
        }
    }
}

/// What an arc is dual to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualRef {
    /// Index into the augmented graph's edge list.
    Edge(usize),
    /// Consecutive vertices on one level, left then right.
    Pair(VertexId, VertexId),
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub tail: NodeId,
    pub head: NodeId,
    pub demand: u64,
    pub capacity: Capacity,
    pub kind: ArcKind,
    pub dual: DualRef,
    /// Graph vertex representing the face left of the arc.
    pub left_face: VertexId,
    /// Graph vertex representing the face right of the arc.
    pub right_face: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeKind {
    Source,
    Sink,
    /// Region between the `index`-th and `index+1`-th edge (left to right)
    /// of the span from `level` to `level + 1`.
    Cell {
        level: u32,
        index: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub kind: NodeKind,
    /// Graph vertices on the boundary of the region this node stands for.
    pub faces: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    pub nodes: Vec<Node>,
    /// Slope arcs in edge order, then space arcs level by level left to
    /// right, then the return arc.
    pub arcs: Vec<Arc>,
    slope_arc: Vec<usize>,
    space_arcs: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Slope arc dual to edge `e` of the augmented graph.
    pub fn slope_arc(&self, e: usize) -> usize {
        self.slope_arc[e]
    }

    /// Space arcs of `level`, left to right.
    pub fn space_arcs(&self, level: u32) -> &[usize] {
        &self.space_arcs[level as usize - 1]
    }

    pub fn count(&self, kind: ArcKind) -> usize {
        self.arcs.iter().filter(|a| a.kind == kind).count()
    }

    pub fn return_arc(&self) -> usize {
        self.arcs.len() - 1
    }
}

/// Integral flow per arc, indexed like [`FlowNetwork::arcs`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circulation {
    pub flow: Vec<u64>,
}

/// Edges of the span `level -> level + 1`, left to right.
fn span_edges(g: &LevelGraph, level: u32) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..g.edge_count())
        .filter(|&i| g.level(g.edges()[i].0) == level)
        .collect();
    idx.sort_by_key(|&i| {
        let (u, w) = g.edges()[i];
        (g.position(u), g.position(w))
    });
    idx
}

pub fn build_flow_network(aug: &AugmentedGraph, slopes: Slopes) -> Result<FlowNetwork> {
    let g = &aug.graph;
    g.ensure_proper()?;
    let k = g.levels();
    let n = g.vertex_count();
    let space_cap = slopes.compact_width_bound(n) as u64;

    let top_row: Vec<VertexId> = g.order(k).to_vec();
    let mut nodes = vec![
        Node {
            kind: NodeKind::Source,
            faces: g
                .order(1)
                .iter()
                .copied()
                .chain(aug.boundary.right_path().iter().copied())
                .collect(),
        },
        Node {
            kind: NodeKind::Sink,
            faces: top_row
                .into_iter()
                .chain(aug.boundary.left_path().iter().copied())
                .collect(),
        },
    ];

    // cell_base[level - 1] = node index of the first cell of that span.
    let mut spans = Vec::with_capacity(k as usize);
    let mut cell_base = Vec::with_capacity(k as usize);
    for level in 1..k {
        let edges = span_edges(g, level);
        cell_base.push(nodes.len());
        for j in 0..edges.len().saturating_sub(1) {
            let (u, w) = g.edges()[edges[j]];
            let (v, x) = g.edges()[edges[j + 1]];
            let mut faces: Vec<VertexId> = g.order(level)[g.position(u)..=g.position(v)].to_vec();
            faces.extend_from_slice(&g.order(level + 1)[g.position(w)..=g.position(x)]);
            nodes.push(Node {
                kind: NodeKind::Cell { level, index: j },
                faces,
            });
        }
        spans.push(edges);
    }

    let mut arcs = Vec::new();
    let mut slope_arc = vec![usize::MAX; g.edge_count()];
    // Slope arcs in edge input order.
    let mut slope_nodes = vec![(NodeId::SOURCE, NodeId::SINK); g.edge_count()];
    for (s, edges) in spans.iter().enumerate() {
        let m = edges.len();
        for (j, &e) in edges.iter().enumerate() {
            let right = if j + 1 < m {
                NodeId((cell_base[s] + j) as u32)
            } else {
                NodeId::SOURCE
            };
            let left = if j > 0 {
                NodeId((cell_base[s] + j - 1) as u32)
            } else {
                NodeId::SINK
            };
            slope_nodes[e] = (right, left);
        }
    }
    for (e, &(u, w)) in g.edges().iter().enumerate() {
        slope_arc[e] = arcs.len();
        arcs.push(Arc {
            tail: slope_nodes[e].0,
            head: slope_nodes[e].1,
            demand: 0,
            capacity: Capacity::Finite(slopes.max_slope() as u64),
            kind: ArcKind::Slope,
            dual: DualRef::Edge(e),
            left_face: u,
            right_face: w,
        });
    }

    // Cell of span `level` whose bottom (or top) range holds the pair
    // starting at position p.
    let cell_for = |level: u32, p: usize, bottom: bool| -> NodeId {
        let edges = &spans[level as usize - 1];
        let j = edges
            .iter()
            .rposition(|&e| {
                let (u, w) = g.edges()[e];
                let end = if bottom { u } else { w };
                g.position(end) <= p
            })
            .expect("boundary edge bounds every span");
        NodeId((cell_base[level as usize - 1] + j) as u32)
    };

    let mut space_arcs = Vec::with_capacity(k as usize);
    for level in 1..=k {
        let mut ids = Vec::new();
        for (p, pair) in g.order(level).windows(2).enumerate() {
            let low = if level == 1 {
                NodeId::SOURCE
            } else {
                cell_for(level - 1, p, false)
            };
            let high = if level == k {
                NodeId::SINK
            } else {
                cell_for(level, p, true)
            };
            ids.push(arcs.len());
            arcs.push(Arc {
                tail: low,
                head: high,
                demand: 1,
                capacity: Capacity::Finite(space_cap),
                kind: ArcKind::Space,
                dual: DualRef::Pair(pair[0], pair[1]),
                left_face: pair[0],
                right_face: pair[1],
            });
        }
        space_arcs.push(ids);
    }

    let left = aug.boundary.left_path();
    let right = aug.boundary.right_path();
    arcs.push(Arc {
        tail: NodeId::SINK,
        head: NodeId::SOURCE,
        demand: 0,
        capacity: Capacity::Unbounded,
        kind: ArcKind::Return,
        dual: DualRef::None,
        left_face: left[0],
        right_face: *right.last().expect("at least one level"),
    });

    Ok(FlowNetwork {
        nodes,
        arcs,
        slope_arc,
        space_arcs,
    })
}

pub fn verify_circulation(net: &FlowNetwork, c: &Circulation) -> ValidationReport {
    let mut report = ValidationReport::new();
    let mut balance = vec![0i128; net.node_count()];
    for (i, arc) in net.arcs.iter().enumerate() {
        let Some(&f) = c.flow.get(i) else {
            report.push(
                ViolationCode::MissingFlow,
                format!("arc {i} has no flow value"),
                vec![i.to_string()],
            );
            continue;
        };
        if f < arc.demand {
            report.push(
                ViolationCode::DemandViolation,
                format!("arc {i} carries {f} below its demand {}", arc.demand),
                vec![i.to_string()],
            );
        }
        if !arc.capacity.admits(f) {
            report.push(
                ViolationCode::CapacityViolation,
                format!("arc {i} carries {f} above its capacity"),
                vec![i.to_string()],
            );
        }
        balance[arc.tail.index()] -= i128::from(f);
        balance[arc.head.index()] += i128::from(f);
    }
    if c.flow.len() > net.arcs.len() {
        report.push(
            ViolationCode::MissingFlow,
            format!("{} flow values for {} arcs", c.flow.len(), net.arcs.len()),
            vec![],
        );
    }
    if !report.has(ViolationCode::MissingFlow) {
        for (node, &b) in balance.iter().enumerate() {
            if b != 0 {
                report.push(
                    ViolationCode::Conservation,
                    format!("node {node} has net inflow {b}"),
                    vec![node.to_string()],
                );
            }
        }
    }
    report
}

/// The dual circulation `x★(a) = x(right face) − x(left face)`.
pub fn drawing_to_circulation(
    aug: &AugmentedGraph,
    net: &FlowNetwork,
    slopes: Slopes,
    d: &Drawing,
) -> Result<Circulation> {
    let report = check_lambda_drawing(&aug.graph, d, slopes);
    if !report.ok() {
        return Err(Error::InvalidDrawing(report));
    }
    let flow = net
        .arcs
        .iter()
        .map(|a| {
            let diff = d.x(a.right_face) - d.x(a.left_face);
            u64::try_from(diff).expect("valid drawings have non-negative duals")
        })
        .collect();
    Ok(Circulation { flow })
}

/// The dual drawing of a circulation, anchored at `x(v_R) = 0`.
///
/// The right boundary is placed bottom-up from its slope arcs, then every
/// level is filled right to left from its space arcs.
pub fn circulation_to_drawing(
    aug: &AugmentedGraph,
    net: &FlowNetwork,
    c: &Circulation,
) -> Result<Drawing> {
    let report = verify_circulation(net, c);
    if !report.ok() {
        return Err(Error::InvalidCirculation(report));
    }
    let g = &aug.graph;
    let mut x = vec![0i64; g.vertex_count()];
    let right = aug.boundary.right_path();
    let right_edges = g.edge_count() - (right.len() - 1);
    for (i, w) in right.windows(2).enumerate() {
        let arc = net.slope_arc(right_edges + i);
        debug_assert_eq!(g.edges()[right_edges + i], (w[0], w[1]));
        x[w[1].index()] = x[w[0].index()] + c.flow[arc] as i64;
    }
    for level in 1..=g.levels() {
        let seq = g.order(level);
        let arcs = net.space_arcs(level);
        for p in (0..seq.len() - 1).rev() {
            x[seq[p].index()] = x[seq[p + 1].index()] - c.flow[arcs[p]] as i64;
        }
    }
    Ok(Drawing::new(x))
}

/// A circulation exists iff a λ-drawing exists; it is read off the rightmost
/// drawing of the distance model. Should that drawing leave more space
/// between two neighbours than a space arc admits, its compaction with
/// boundaries hugging the graph is used instead.
pub fn find_circulation(
    aug: &AugmentedGraph,
    net: &FlowNetwork,
    slopes: Slopes,
) -> Result<Circulation> {
    let dg = distance::build_distance_graph(aug, slopes)?;
    let labels = distance::shortest_labeling(&dg)?;
    let raw = drawing_to_circulation(aug, net, slopes, &Drawing::new(labels.x.clone()))?;
    if verify_circulation(net, &raw).ok() {
        return Ok(raw);
    }
    let original = aug.original();
    let compact = remove_gaps(&original, &aug.strip(&Drawing::new(labels.x)));
    drawing_to_circulation(aug, net, slopes, &aug.lift_tight(&compact))
}

/// Deterministic text listing of the network.
pub fn dump_flow_network(aug: &AugmentedGraph, net: &FlowNetwork) -> String {
    let g = &aug.graph;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "flow-network nodes {} arcs {}",
        net.node_count(),
        net.arcs.len()
    );
    for (i, node) in net.nodes.iter().enumerate() {
        let kind = match &node.kind {
            NodeKind::Source => "source".to_string(),
            NodeKind::Sink => "sink".to_string(),
            NodeKind::Cell { level, index } => format!("cell {level}.{index}"),
        };
        let faces: Vec<&str> = node.faces.iter().map(|&v| g.name(v)).collect();
        let _ = writeln!(out, "node {i} {kind} faces {}", faces.join(","));
    }
    for (i, a) in net.arcs.iter().enumerate() {
        let kind = match a.kind {
            ArcKind::Slope => "slope",
            ArcKind::Space => "space",
            ArcKind::Return => "return",
        };
        let cap = match a.capacity {
            Capacity::Finite(c) => c.to_string(),
            Capacity::Unbounded => "inf".to_string(),
        };
        let dual = match a.dual {
            DualRef::Edge(e) => g.edge_label(g.edges()[e]),
            DualRef::Pair(u, v) => format!("[{},{}]", g.name(u), g.name(v)),
            DualRef::None => "-".to_string(),
        };
        let _ = writeln!(
            out,
            "arc {i} {}->{} demand {} capacity {cap} {kind} {dual}",
            a.tail.0, a.head.0, a.demand
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_edge() -> LevelGraph {
        let mut b = LevelGraph::builder(2);
        let a = b.vertex("a", 1);
        let c = b.vertex("b", 2);
        b.edge(a, c);
        b.build()
    }

    #[test]
    fn single_edge_counts() {
        let aug = AugmentedGraph::new(&single_edge());
        let net = build_flow_network(&aug, Slopes::new(2).unwrap()).unwrap();
        assert_eq!(net.count(ArcKind::Slope), 3);
        assert_eq!(net.count(ArcKind::Space), 4);
        assert_eq!(net.count(ArcKind::Return), 1);
        // source, sink and the two cells of the only span
        assert_eq!(net.node_count(), 4);
    }

    #[test]
    fn one_level_two_vertices() {
        let mut b = LevelGraph::builder(1);
        b.vertex("p", 1);
        b.vertex("q", 1);
        let aug = AugmentedGraph::new(&b.build());
        let net = build_flow_network(&aug, Slopes::new(2).unwrap()).unwrap();
        assert_eq!(net.count(ArcKind::Slope), 0);
        assert_eq!(net.count(ArcKind::Space), 3);
        assert!(net.arcs[..3]
            .iter()
            .all(|a| a.tail == NodeId::SOURCE && a.head == NodeId::SINK));
    }

    #[test]
    fn arc_parameters() {
        let aug = AugmentedGraph::new(&single_edge());
        let s = Slopes::new(3).unwrap();
        let net = build_flow_network(&aug, s).unwrap();
        let n = aug.graph.vertex_count() as u64;
        for a in &net.arcs {
            match a.kind {
                ArcKind::Slope => {
                    assert_eq!(a.demand, 0);
                    assert_eq!(a.capacity, Capacity::Finite(2));
                }
                ArcKind::Space => {
                    assert_eq!(a.demand, 1);
                    assert_eq!(a.capacity, Capacity::Finite(2 * (n - 1)));
                }
                ArcKind::Return => assert_eq!(a.capacity, Capacity::Unbounded),
            }
        }
    }

    #[test]
    fn zero_flow_breaks_space_demands() {
        let aug = AugmentedGraph::new(&single_edge());
        let net = build_flow_network(&aug, Slopes::new(2).unwrap()).unwrap();
        let r = verify_circulation(
            &net,
            &Circulation {
                flow: vec![0; net.arcs.len()],
            },
        );
        assert_eq!(
            r.count(ViolationCode::DemandViolation),
            net.count(ArcKind::Space)
        );
    }

    #[test]
    fn missing_flow_reported() {
        let aug = AugmentedGraph::new(&single_edge());
        let net = build_flow_network(&aug, Slopes::new(2).unwrap()).unwrap();
        let r = verify_circulation(&net, &Circulation { flow: vec![1; 2] });
        assert!(r.has(ViolationCode::MissingFlow));
    }

    #[test]
    fn slope_and_space_flows() {
        let g = single_edge();
        let aug = AugmentedGraph::new(&g);
        let s = Slopes::new(3).unwrap();
        let net = build_flow_network(&aug, s).unwrap();
        // a at 0, b at 2: slope 2; boundaries tight.
        let d = aug.lift_tight(&Drawing::new(vec![0, 2]));
        let c = drawing_to_circulation(&aug, &net, s, &d).unwrap();
        assert_eq!(c.flow[net.slope_arc(0)], 2);
        assert!(verify_circulation(&net, &c).ok());
        // level 1: pL1 at -1, a at 0, pR1 at 3
        let level1 = net.space_arcs(1);
        assert_eq!(c.flow[level1[0]], 1);
        assert_eq!(c.flow[level1[1]], 3);
        let back = circulation_to_drawing(&aug, &net, &c).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.x(aug.v_right()), 0);
    }

    #[test]
    fn single_increment_breaks_two_nodes() {
        let g = single_edge();
        let aug = AugmentedGraph::new(&g);
        let s = Slopes::new(3).unwrap();
        let net = build_flow_network(&aug, s).unwrap();
        let d = aug.lift_tight(&Drawing::new(vec![0, 1]));
        let mut c = drawing_to_circulation(&aug, &net, s, &d).unwrap();
        c.flow[net.slope_arc(0)] += 1;
        let r = verify_circulation(&net, &c);
        assert_eq!(r.count(ViolationCode::Conservation), 2);
        assert!(circulation_to_drawing(&aug, &net, &c).is_err());
    }

    #[test]
    fn rejects_invalid_drawing() {
        let aug = AugmentedGraph::new(&single_edge());
        let s = Slopes::new(2).unwrap();
        let net = build_flow_network(&aug, s).unwrap();
        let d = aug.lift_tight(&Drawing::new(vec![0, 5]));
        assert!(matches!(
            drawing_to_circulation(&aug, &net, s, &d),
            Err(Error::InvalidDrawing(_))
        ));
    }

    #[test]
    fn fan_has_no_circulation() {
        let mut b = LevelGraph::builder(2);
        let u = b.vertex("u", 1);
        for i in 0..3 {
            let v = b.vertex(format!("v{i}"), 2);
            b.edge(u, v);
        }
        let aug = AugmentedGraph::new(&b.build());
        let s = Slopes::new(2).unwrap();
        let net = build_flow_network(&aug, s).unwrap();
        let err = find_circulation(&aug, &net, s).unwrap_err();
        assert!(err.is_infeasible());
    }

    #[test]
    fn boundaries_only_circulation() {
        let g = LevelGraph::builder(2).build();
        let aug = AugmentedGraph::new(&g);
        let s = Slopes::new(2).unwrap();
        let net = build_flow_network(&aug, s).unwrap();
        let c = find_circulation(&aug, &net, s).unwrap();
        assert!(verify_circulation(&net, &c).ok());
    }

    #[test]
    fn dump_is_stable() {
        let aug = AugmentedGraph::new(&single_edge());
        let net = build_flow_network(&aug, Slopes::new(2).unwrap()).unwrap();
        let a = dump_flow_network(&aug, &net);
        assert_eq!(a, dump_flow_network(&aug, &net));
        assert!(a.starts_with("flow-network nodes 4 arcs 8\n"));
    }
}
